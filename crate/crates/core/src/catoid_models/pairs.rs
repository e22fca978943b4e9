use std::collections::BTreeSet;

use crate::catoid::Catoid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair(pub usize, pub usize);

/// The pair groupoid `X × X` with `(a,b) ⊙ (b,c) = {(a,c)}`.
#[derive(Debug, Clone)]
pub struct PairGroupoid {
    names: Vec<String>,
    pairs: Vec<Pair>,
}

pub fn pair_groupoid(xs: &[&str]) -> PairGroupoid {
    let n = xs.len();
    let pairs = (0..n).flat_map(|a| (0..n).map(move |b| Pair(a, b))).collect();
    PairGroupoid {
        names: xs.iter().map(|s| s.to_string()).collect(),
        pairs,
    }
}

impl PairGroupoid {
    pub fn pair(&self, a: &str, b: &str) -> Pair {
        let i = |v: &str| self.names.iter().position(|x| x == v).expect("known point");
        Pair(i(a), i(b))
    }

    pub fn points(&self) -> &[String] {
        &self.names
    }
}

impl Catoid for PairGroupoid {
    type Elem = Pair;

    fn name(&self) -> String {
        "pairs".into()
    }

    fn universe(&self) -> &[Pair] {
        &self.pairs
    }

    fn compose(&self, y: &Pair, z: &Pair) -> BTreeSet<Pair> {
        if y.1 == z.0 {
            BTreeSet::from([Pair(y.0, z.1)])
        } else {
            BTreeSet::new()
        }
    }

    fn source(&self, x: &Pair) -> Pair {
        Pair(x.0, x.0)
    }

    fn target(&self, x: &Pair) -> Pair {
        Pair(x.1, x.1)
    }

    fn decompose2(&self, x: &Pair) -> Vec<(Pair, Pair)> {
        (0..self.names.len())
            .map(|m| (Pair(x.0, m), Pair(m, x.1)))
            .collect()
    }

    fn label(&self, x: &Pair) -> String {
        format!("({},{})", self.names[x.0], self.names[x.1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catoid::decompose2_by_inversion;

    #[test]
    fn pair_composition() {
        let g = pair_groupoid(&["a", "b", "c"]);
        assert_eq!(g.compose(&g.pair("a", "b"), &g.pair("b", "c")), BTreeSet::from([g.pair("a", "c")]));
        assert!(g.compose(&g.pair("a", "b"), &g.pair("c", "a")).is_empty());
        for x in g.universe() {
            assert_eq!(g.decompose2(x), decompose2_by_inversion(&g, x));
        }
        let two = pair_groupoid(&["a", "b"]);
        let ids: Vec<String> = two
            .universe()
            .iter()
            .filter(|x| two.is_identity(x))
            .map(|x| two.label(x))
            .collect();
        assert_eq!(ids, vec!["(a,a)", "(b,b)"]);
    }
}
