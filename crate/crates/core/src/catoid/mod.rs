//! Catoids: sets with a set-valued composition and source/target maps.
//!
//! A model implements [`Catoid`] over a finite, possibly truncated
//! universe. [`Structure`] indexes a model once (decompositions, length,
//! Möbius status) so that convolution can work on integer indices.

mod checks;
mod structure;

pub use checks::{
    check_catoid_axioms, check_moebius, check_saturated_chain, is_functional, is_local,
};
pub use structure::Structure;

use std::collections::{BTreeSet, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};

/// The catoid contract.
///
/// Infinite models (words, shuffles, guarded strings) are cut off at a
/// length bound. `compose` then returns only the results inside the bound,
/// and `escapes` says whether some result was dropped. Every factor of an
/// element in the universe is itself in the universe, so `decompose2` is
/// exact regardless of the bound.
pub trait Catoid: Send + Sync {
    type Elem: Clone + Eq + Hash + Ord + Debug + Send + Sync + 'static;

    fn name(&self) -> String;

    /// All elements, sorted by `Ord`.
    fn universe(&self) -> &[Self::Elem];

    fn compose(&self, y: &Self::Elem, z: &Self::Elem) -> BTreeSet<Self::Elem>;

    fn source(&self, x: &Self::Elem) -> Self::Elem;

    fn target(&self, x: &Self::Elem) -> Self::Elem;

    /// All `(y, z)` with `x ∈ y ⊙ z`, in lexicographic order.
    fn decompose2(&self, x: &Self::Elem) -> Vec<(Self::Elem, Self::Elem)> {
        decompose2_by_inversion(self, x)
    }

    /// True when `y ⊙ z` has results outside the truncated universe.
    fn escapes(&self, _y: &Self::Elem, _z: &Self::Elem) -> bool {
        false
    }

    /// True when the universe is a proper truncation of the model.
    fn is_truncated(&self) -> bool {
        false
    }

    fn label(&self, x: &Self::Elem) -> String {
        format!("{x:?}")
    }

    /// Elements of size at most `bound` (the model's own size measure).
    fn enumerate(&self, _bound: usize) -> Vec<Self::Elem> {
        self.universe().to_vec()
    }

    fn is_identity(&self, x: &Self::Elem) -> bool {
        &self.source(x) == x
    }
}

/// Generic `decompose2`: scan all pairs of the universe.
pub fn decompose2_by_inversion<C: Catoid + ?Sized>(c: &C, x: &C::Elem) -> Vec<(C::Elem, C::Elem)> {
    let u = c.universe();
    let mut out = Vec::new();
    for y in u {
        for z in u {
            if c.compose(y, z).contains(x) {
                out.push((y.clone(), z.clone()));
            }
        }
    }
    out
}

/// All `n`-tuples of non-identities whose iterated composition contains
/// `x`. The empty tuple is the unique 0-decomposition of an identity.
pub fn decompose_n<C: Catoid + ?Sized>(c: &C, x: &C::Elem, n: usize) -> Vec<Vec<C::Elem>> {
    let mut memo = HashMap::new();
    decompose_n_memo(c, x, n, &mut memo).into_iter().collect()
}

type DecompMemo<E> = HashMap<(E, usize), BTreeSet<Vec<E>>>;

fn decompose_n_memo<C: Catoid + ?Sized>(
    c: &C,
    x: &C::Elem,
    n: usize,
    memo: &mut DecompMemo<C::Elem>,
) -> BTreeSet<Vec<C::Elem>> {
    if let Some(v) = memo.get(&(x.clone(), n)) {
        return v.clone();
    }
    let mut out = BTreeSet::new();
    match n {
        0 => {
            if c.is_identity(x) {
                out.insert(Vec::new());
            }
        }
        1 => {
            if !c.is_identity(x) {
                out.insert(vec![x.clone()]);
            }
        }
        _ => {
            for (y, w) in c.decompose2(x) {
                if c.is_identity(&y) {
                    continue;
                }
                for tail in decompose_n_memo(c, &w, n - 1, memo) {
                    let mut t = Vec::with_capacity(n);
                    t.push(y.clone());
                    t.extend(tail);
                    out.insert(t);
                }
            }
        }
    }
    memo.insert((x.clone(), n), out.clone());
    out
}

/// The length `ℓ(x)`: the largest degree of a decomposition of `x`.
///
/// Fails when decompositions of unbounded degree exist, i.e. when the
/// chain `x ∈ y ⊙ w` (with `y` a non-identity) revisits an element.
pub fn length<C: Catoid + ?Sized>(c: &C, x: &C::Elem) -> Result<usize> {
    let mut memo: HashMap<C::Elem, Option<usize>> = HashMap::new();
    length_dfs(c, x, &mut memo)
}

fn length_dfs<C: Catoid + ?Sized>(
    c: &C,
    x: &C::Elem,
    memo: &mut HashMap<C::Elem, Option<usize>>,
) -> Result<usize> {
    match memo.get(x) {
        Some(Some(l)) => return Ok(*l),
        Some(None) => {
            return Err(Error::Moebius(format!(
                "length of {} is unbounded",
                c.label(x)
            )))
        }
        None => {}
    }
    memo.insert(x.clone(), None);
    let mut best = usize::from(!c.is_identity(x));
    for (y, w) in c.decompose2(x) {
        if c.is_identity(&y) {
            continue;
        }
        best = best.max(1 + length_dfs(c, &w, memo)?);
    }
    memo.insert(x.clone(), Some(best));
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catoid_models::{free_monoid, interval_catoid, pair_groupoid, PosetSpec};

    #[test]
    fn word_decompositions() {
        let m = free_monoid(&['a', 'b'], 4);
        let ab = m.word("ab");
        let d = m.decompose2(&ab);
        let labels: Vec<(String, String)> =
            d.iter().map(|(y, z)| (m.label(y), m.label(z))).collect();
        assert_eq!(
            labels,
            vec![
                ("eps".into(), "ab".into()),
                ("a".into(), "b".into()),
                ("ab".into(), "eps".into())
            ]
        );
        assert_eq!(decompose2_by_inversion(&m, &ab), d);
    }

    #[test]
    fn n_decompositions() {
        let m = free_monoid(&['a', 'b', 'c'], 3);
        let eps = m.word("");
        assert_eq!(decompose_n(&m, &eps, 0), vec![Vec::<crate::catoid_models::Word>::new()]);
        let abc = m.word("abc");
        assert_eq!(
            decompose_n(&m, &abc, 3),
            vec![vec![m.word("a"), m.word("b"), m.word("c")]]
        );
        assert!(decompose_n(&m, &m.word("ab"), 3).is_empty());
        assert_eq!(decompose_n(&m, &abc, 2).len(), 2);
    }

    #[test]
    fn lengths() {
        let m = free_monoid(&['a', 'b'], 4);
        assert_eq!(length(&m, &m.word("abab")).unwrap(), 4);
        assert_eq!(length(&m, &m.word("")).unwrap(), 0);
        let p = interval_catoid(&PosetSpec::example()).unwrap();
        assert_eq!(length(&p, &p.interval("a", "c")).unwrap(), 3);
        assert_eq!(length(&p, &p.interval("b", "b")).unwrap(), 0);
        let g = pair_groupoid(&["a", "b"]);
        assert!(matches!(length(&g, &g.pair("a", "a")), Err(Error::Moebius(_))));
    }
}
