use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Space, SpaceExt, WeightFunction};
use std::sync::Arc;

/// What a random function does on identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdMode {
    /// Drawn like every other value.
    Free,
    /// Always `1`: samples from `K[C]`.
    One,
    /// Always `0`.
    Zero,
}

/// Seeded source of random weight functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FunctionSampler {
    pub seed: u64,
    pub samples: usize,
    pub mode: IdMode,
}

impl FunctionSampler {
    pub fn new(seed: u64, samples: usize) -> Self {
        FunctionSampler { seed, samples, mode: IdMode::Free }
    }

    pub fn with_mode(mut self, mode: IdMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Draws every value independently from the algebra's sample pool.
///
/// A quarter of the draws are sparse (each value is zero with probability
/// 3/4), which keeps Boolean stars from saturating immediately.
pub fn random_function<E: Send + Sync + 'static>(
    space: &Arc<Space<E>>,
    rng: &mut ChaCha8Rng,
    mode: IdMode,
) -> WeightFunction<E> {
    let alg = space.algebra();
    let pool = alg.sample_pool();
    let (zero, one) = (alg.zero(), alg.one());
    let sparse = rng.gen_ratio(1, 4);
    let st = space.structure();
    let v = (0..space.len())
        .map(|i| {
            if st.is_identity(i) {
                match mode {
                    IdMode::One => return one,
                    IdMode::Zero => return zero,
                    IdMode::Free => {}
                }
            }
            if sparse && rng.gen_ratio(3, 4) {
                zero
            } else {
                *pool.choose(rng).expect("nonempty pool")
            }
        })
        .collect();
    space.from_values(v)
}
