use std::sync::Arc;

use crate::convolution::{
    conv_add, convolve, random_function, star_recursive, FunctionSampler, IdMode, Space, SpaceExt, WeightFunction,
};
use crate::error::{Error, Result};
use crate::report::{LawResult, Report};
use crate::value_algebra::Capability;

/// `⋁ᵢ fⁱ` with `f⁰ = id₀`, accumulated until the partial join stops
/// growing. In an idempotent algebra one repeated partial join means every
/// later power is already below it.
pub fn power_join_star<E: Send + Sync + 'static>(f: &WeightFunction<E>) -> Result<WeightFunction<E>> {
    let sp = f.space();
    let alg = sp.algebra();
    alg.require(Capability::Finite)?;
    alg.require(Capability::IdempotentAdd)?;
    let carrier = alg.carrier().map(|c| c.len()).unwrap_or(2);
    let limit = carrier * sp.len().max(1) + 1;
    let mut power = sp.id0();
    let mut acc = power.clone();
    for _ in 0..limit {
        power = convolve(&power, f)?.materialise()?;
        let next = conv_add(&acc, &power)?.materialise()?;
        if next.equals(&acc)? {
            return Ok(acc);
        }
        acc = next;
    }
    Err(Error::Domain(format!("power join did not stabilise within {limit} steps")))
}

/// `fⁿ(x) = Σ_{i<n} Σ_{x ∈ y ⊙ z, y ≠ s(x)} fⁱ(s(x)) · f(y) · f^{n-1-i}(z)` on
/// non-identities.
fn power_expansion<E: Send + Sync + 'static>(
    powers: &[WeightFunction<E>],
    f: &WeightFunction<E>,
    n: usize,
    x: usize,
) -> Result<crate::value_algebra::Weight> {
    let sp = f.space();
    let (st, alg) = (sp.structure(), sp.algebra());
    let s = st.src(x);
    let mut acc = alg.zero();
    for &(y, z) in st.decomps(x) {
        if y == s {
            continue;
        }
        for i in 0..n {
            let term = alg.mul(alg.mul(powers[i].try_at(s)?, f.try_at(y)?), powers[n - 1 - i].try_at(z)?);
            acc = alg.add(acc, term);
        }
    }
    Ok(acc)
}

/// Power-join star against the recursive star on sampled functions (plus
/// `0` and `id₀`), and the power expansion identity for `n ≤ 4`.
pub fn verify_quantale_star<E: Send + Sync + 'static>(sp: &Arc<Space<E>>, s: FunctionSampler) -> Result<Report> {
    sp.structure().moebius()?;
    let alg = sp.algebra();
    let mut eq = LawResult::new("quantale-star-agrees", sp.model_name(), alg.name());
    let mut exp = LawResult::new("power-expansion", sp.model_name(), alg.name());
    let mut rng = s.rng();
    let mut fs = vec![("zero".to_string(), sp.zero()), ("id0".to_string(), sp.id0())];
    for k in 0..s.samples {
        fs.push((format!("sample {k}"), random_function(sp, &mut rng, IdMode::Free)));
    }
    let st = sp.structure();
    for (tag, f) in &fs {
        let a = power_join_star(f)?;
        let b = star_recursive(f)?;
        for x in 0..sp.len() {
            let (va, vb) = (a.try_at(x)?, b.try_at(x)?);
            eq.record(va == vb, || {
                format!("({tag}, {}): {} vs {}", st.label(x), alg.format(va), alg.format(vb))
            });
        }
        let mut powers = vec![sp.id0()];
        for n in 1..=4 {
            let next = convolve(&powers[n - 1], f)?.materialise()?;
            powers.push(next);
            for x in (0..sp.len()).filter(|&x| !st.is_identity(x)) {
                let lhs = powers[n].try_at(x)?;
                let rhs = power_expansion(&powers, f, n, x)?;
                exp.record(lhs == rhs, || {
                    format!("({tag}, n={n}, {}): {} vs {}", st.label(x), alg.format(lhs), alg.format(rhs))
                });
            }
        }
    }
    let mut rep = Report::new();
    rep.push(eq.finish());
    rep.push(exp.finish());
    Ok(rep)
}
