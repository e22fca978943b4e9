use std::collections::BTreeSet;

use crate::catoid::Catoid;
use crate::error::{Error, Result};

/// A finite poset given by its vertices and cover pairs `(lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetSpec {
    pub vertices: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl PosetSpec {
    /// Builds a spec; vertices named in covers are added in order of
    /// appearance.
    pub fn new(vertices: &[&str], covers: &[(&str, &str)]) -> Self {
        let mut vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        for (a, b) in covers {
            for v in [a, b] {
                if !vs.iter().any(|x| x == v) {
                    vs.push(v.to_string());
                }
            }
        }
        PosetSpec {
            vertices: vs,
            covers: covers
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        }
    }

    pub fn chain(names: &[&str]) -> Self {
        let covers: Vec<(&str, &str)> = names.windows(2).map(|w| (w[0], w[1])).collect();
        PosetSpec::new(names, &covers)
    }

    /// The five-element poset with covers a<d<e<c and a<b<c. Its interval
    /// `[a,c]` has length 3 while `[a,b]` and `[b,c]` have length 1.
    pub fn example() -> Self {
        PosetSpec::new(
            &["a", "b", "c", "d", "e"],
            &[("a", "d"), ("d", "e"), ("e", "c"), ("a", "b"), ("b", "c")],
        )
    }

    fn index(&self, v: &str) -> Option<usize> {
        self.vertices.iter().position(|x| x == v)
    }

    /// Reflexive-transitive closure of the covers (Warshall).
    pub fn order(&self) -> Result<Vec<Vec<bool>>> {
        let n = self.vertices.len();
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in &self.covers {
            let (Some(i), Some(j)) = (self.index(a), self.index(b)) else {
                return Err(Error::Config(format!("cover {a} < {b} names an unknown vertex")));
            };
            if i == j {
                return Err(Error::Config(format!("cover relation cyclic at {a}")));
            }
            le[i][j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i][k] {
                    for j in 0..n {
                        if le[k][j] {
                            le[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && le[i][j] && le[j][i] {
                    return Err(Error::Config(format!(
                        "cover relation cyclic at {}",
                        self.vertices[i]
                    )));
                }
            }
        }
        Ok(le)
    }
}

/// A closed interval `[lo, hi]`, stored as vertex indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval(pub usize, pub usize);

#[derive(Debug, Clone)]
pub struct IntervalCatoid {
    names: Vec<String>,
    le: Vec<Vec<bool>>,
    intervals: Vec<Interval>,
}

/// The category of closed intervals of a finite poset:
/// `[a,b] ⊙ [b,d] = {[a,d]}`, and empty when the inner endpoints differ.
pub fn interval_catoid(p: &PosetSpec) -> Result<IntervalCatoid> {
    let le = p.order()?;
    let n = p.vertices.len();
    let mut intervals = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if le[a][b] {
                intervals.push(Interval(a, b));
            }
        }
    }
    intervals.sort();
    Ok(IntervalCatoid {
        names: p.vertices.clone(),
        le,
        intervals,
    })
}

impl IntervalCatoid {
    /// `[lo, hi]` by vertex name. Panics on unknown names.
    pub fn interval(&self, lo: &str, hi: &str) -> Interval {
        let i = |v: &str| {
            self.names
                .iter()
                .position(|x| x == v)
                .unwrap_or_else(|| panic!("no vertex {v}"))
        };
        Interval(i(lo), i(hi))
    }

    pub fn vertices(&self) -> &[String] {
        &self.names
    }
}

impl Catoid for IntervalCatoid {
    type Elem = Interval;

    fn name(&self) -> String {
        "poset".into()
    }

    fn universe(&self) -> &[Interval] {
        &self.intervals
    }

    fn compose(&self, y: &Interval, z: &Interval) -> BTreeSet<Interval> {
        if y.1 == z.0 {
            BTreeSet::from([Interval(y.0, z.1)])
        } else {
            BTreeSet::new()
        }
    }

    fn source(&self, x: &Interval) -> Interval {
        Interval(x.0, x.0)
    }

    fn target(&self, x: &Interval) -> Interval {
        Interval(x.1, x.1)
    }

    fn decompose2(&self, x: &Interval) -> Vec<(Interval, Interval)> {
        (0..self.names.len())
            .filter(|&m| self.le[x.0][m] && self.le[m][x.1])
            .map(|m| (Interval(x.0, m), Interval(m, x.1)))
            .collect()
    }

    fn label(&self, x: &Interval) -> String {
        format!("[{},{}]", self.names[x.0], self.names[x.1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catoid::decompose2_by_inversion;

    #[test]
    fn chain_intervals() {
        let c = interval_catoid(&PosetSpec::chain(&["a", "b", "c"])).unwrap();
        let ab = c.interval("a", "b");
        let bc = c.interval("b", "c");
        assert_eq!(c.compose(&ab, &bc), BTreeSet::from([c.interval("a", "c")]));
        assert!(c.compose(&ab, &c.interval("c", "c")).is_empty());
        assert_eq!(c.source(&ab), c.interval("a", "a"));
        let d: Vec<String> = c
            .decompose2(&c.interval("a", "c"))
            .iter()
            .map(|(y, z)| format!("{}{}", c.label(y), c.label(z)))
            .collect();
        assert_eq!(d, vec!["[a,a][a,c]", "[a,b][b,c]", "[a,c][c,c]"]);
    }

    #[test]
    fn midpoints_match_inversion() {
        let p = interval_catoid(&PosetSpec::example()).unwrap();
        for x in p.universe() {
            assert_eq!(p.decompose2(x), decompose2_by_inversion(&p, x));
        }
        assert_eq!(p.universe().len(), 5 + 8);
    }

    #[test]
    fn cyclic_covers_rejected() {
        let e = interval_catoid(&PosetSpec::new(&[], &[("a", "b"), ("b", "a")])).unwrap_err();
        assert!(e.to_string().contains("cover relation cyclic at"), "{e}");
    }
}
