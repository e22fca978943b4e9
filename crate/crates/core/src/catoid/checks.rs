//! Law checkers for catoid models. Each takes the model itself, evaluates
//! `compose` on all pairs of the universe once and works from that table.

use std::collections::{BTreeSet, HashMap};

use super::{Catoid, Structure};
use crate::report::{LawResult, Report};

struct Table<C: Catoid + ?Sized> {
    n: usize,
    index: HashMap<C::Elem, usize>,
    prod: Vec<Vec<Vec<usize>>>,
    esc: Vec<Vec<bool>>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    labels: Vec<String>,
    name: String,
}

impl<C: Catoid + ?Sized> Table<C> {
    fn new(c: &C) -> Self {
        let u = c.universe();
        let n = u.len();
        let index: HashMap<C::Elem, usize> = u.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let pos = |e: &C::Elem| {
            *index
                .get(e)
                .unwrap_or_else(|| panic!("{}: {e:?} lies outside the universe", c.name()))
        };
        let mut prod = vec![vec![Vec::new(); n]; n];
        let mut esc = vec![vec![false; n]; n];
        for (i, y) in u.iter().enumerate() {
            for (j, z) in u.iter().enumerate() {
                prod[i][j] = c.compose(y, z).iter().map(pos).collect();
                esc[i][j] = c.escapes(y, z);
            }
        }
        Table {
            n,
            src: u.iter().map(|x| pos(&c.source(x))).collect(),
            tgt: u.iter().map(|x| pos(&c.target(x))).collect(),
            labels: u.iter().map(|x| c.label(x)).collect(),
            index,
            prod,
            esc,
            name: c.name(),
        }
    }

    fn is_id(&self, i: usize) -> bool {
        self.src[i] == i
    }

    fn l(&self, i: usize) -> &str {
        &self.labels[i]
    }

    fn set(&self, s: &BTreeSet<usize>) -> String {
        let v: Vec<&str> = s.iter().map(|&i| self.l(i)).collect();
        format!("{{{}}}", v.join(","))
    }

    fn law(&self, id: &str) -> LawResult {
        LawResult::new(id, self.name.clone(), "-")
    }

    fn one(i: usize) -> BTreeSet<usize> {
        BTreeSet::from([i])
    }
}

/// Checks associativity, the composability and unit axioms, the basic
/// source/target laws, orthogonality of identities and exactness of
/// `decompose2`. Triples whose products leave a truncated universe are
/// counted as vacuous.
pub fn check_catoid_axioms<C: Catoid + ?Sized>(c: &C) -> Report {
    let t = Table::new(c);
    let n = t.n;
    let mut rep = Report::new();

    let mut assoc = t.law("assoc");
    for y in 0..n {
        let xs: Vec<usize> = (0..n).filter(|&x| !t.prod[x][y].is_empty() || t.esc[x][y]).collect();
        let zs: Vec<usize> = (0..n).filter(|&z| !t.prod[y][z].is_empty() || t.esc[y][z]).collect();
        let xs_set: BTreeSet<usize> = xs.iter().copied().collect();
        let mut triples: Vec<(usize, usize)> = Vec::new();
        for &x in &xs {
            for z in 0..n {
                triples.push((x, z));
            }
        }
        for x in (0..n).filter(|x| !xs_set.contains(x)) {
            for &z in &zs {
                triples.push((x, z));
            }
        }
        for (x, z) in triples {
            let yz = &t.prod[y][z];
            let xy = &t.prod[x][y];
            let escaping = t.esc[x][y]
                || t.esc[y][z]
                || yz.iter().any(|&v| t.esc[x][v])
                || xy.iter().any(|&u| t.esc[u][z]);
            if escaping {
                assoc.vacuous_instance();
                continue;
            }
            let lhs: BTreeSet<usize> = yz.iter().flat_map(|&v| t.prod[x][v].iter().copied()).collect();
            let rhs: BTreeSet<usize> = xy.iter().flat_map(|&u| t.prod[u][z].iter().copied()).collect();
            assoc.record(lhs == rhs, || {
                format!("({},{},{}): {} vs {}", t.l(x), t.l(y), t.l(z), t.set(&lhs), t.set(&rhs))
            });
        }
    }
    rep.push(assoc.finish());

    let mut comp = t.law("composable-match");
    for x in 0..n {
        for y in 0..n {
            if t.prod[x][y].is_empty() {
                continue;
            }
            comp.record(t.tgt[x] == t.src[y], || {
                format!("({},{}): t = {} but s = {}", t.l(x), t.l(y), t.l(t.tgt[x]), t.l(t.src[y]))
            });
        }
    }
    rep.push(comp.finish());

    let mut ul = t.law("unit-left");
    let mut ur = t.law("unit-right");
    for x in 0..n {
        ul.record(t.prod[t.src[x]][x] == [x], || t.l(x).to_string());
        ur.record(t.prod[x][t.tgt[x]] == [x], || t.l(x).to_string());
    }
    rep.push(ul.finish());
    rep.push(ur.finish());

    let mut p1 = t.law("src-tgt-compose");
    let mut p2 = t.law("fix-src-iff-fix-tgt");
    let mut p3 = t.law("endpoint-idempotent");
    for x in 0..n {
        let (s, tg) = (t.src[x], t.tgt[x]);
        p1.record(
            t.src[s] == s && t.tgt[tg] == tg && t.src[tg] == tg && t.tgt[s] == s,
            || t.l(x).to_string(),
        );
        p2.record((s == x) == (tg == x), || t.l(x).to_string());
        p3.record(t.prod[s][s] == [s] && t.prod[tg][tg] == [tg], || t.l(x).to_string());
    }
    rep.push(p1.finish());
    rep.push(p2.finish());
    rep.push(p3.finish());

    let mut p4 = t.law("src-tgt-commute");
    let mut p5 = t.law("src-of-src-product");
    let mut p6 = t.law("src-product-inclusion");
    let mut p7 = t.law("composable-endpoints");
    for x in 0..n {
        for y in 0..n {
            let (sx, ty) = (t.src[x], t.tgt[y]);
            p4.record(t.prod[sx][ty] == t.prod[ty][sx], || format!("({},{})", t.l(x), t.l(y)));

            if t.esc[sx][y] || t.esc[x][t.tgt[y]] {
                p5.vacuous_instance();
            } else {
                // s(s(x) ⊙ y) = s(x) ⊙ s(y) and t(x ⊙ t(y)) = t(x) ⊙ t(y)
                let l1: BTreeSet<usize> = t.prod[sx][y].iter().map(|&w| t.src[w]).collect();
                let r1: BTreeSet<usize> = t.prod[sx][t.src[y]].iter().copied().collect();
                let l2: BTreeSet<usize> = t.prod[x][t.tgt[y]].iter().map(|&w| t.tgt[w]).collect();
                let r2: BTreeSet<usize> = t.prod[t.tgt[x]][t.tgt[y]].iter().copied().collect();
                p5.record(l1 == r1 && l2 == r2, || format!("({},{})", t.l(x), t.l(y)));
            }

            // s(x ⊙ y) ⊆ s(x ⊙ s(y)) and t(x ⊙ y) ⊆ t(t(x) ⊙ y)
            let sxy: BTreeSet<usize> = t.prod[x][y].iter().map(|&w| t.src[w]).collect();
            let sxsy: BTreeSet<usize> = t.prod[x][t.src[y]].iter().map(|&w| t.src[w]).collect();
            let txy: BTreeSet<usize> = t.prod[x][y].iter().map(|&w| t.tgt[w]).collect();
            let ttxy: BTreeSet<usize> = t.prod[t.tgt[x]][y].iter().map(|&w| t.tgt[w]).collect();
            p6.record(sxy.is_subset(&sxsy) && txy.is_subset(&ttxy), || {
                format!("({},{})", t.l(x), t.l(y))
            });

            if !t.prod[x][y].is_empty() {
                p7.record(sxy == Table::<C>::one(sx) && txy == Table::<C>::one(ty), || {
                    format!("({},{})", t.l(x), t.l(y))
                });
            }
        }
    }
    rep.push(p4.finish());
    rep.push(p5.finish());
    rep.push(p6.finish());
    rep.push(p7.finish());

    let mut p8 = t.law("factor-endpoints");
    let mut exact = t.law("decompose2-exact");
    let mut inverse: Vec<BTreeSet<(usize, usize)>> = vec![BTreeSet::new(); n];
    for y in 0..n {
        for z in 0..n {
            for &x in &t.prod[y][z] {
                inverse[x].insert((y, z));
            }
        }
    }
    for (x, e) in c.universe().iter().enumerate() {
        let listed: Vec<(usize, usize)> = c
            .decompose2(e)
            .iter()
            .map(|(y, z)| (t.index[y], t.index[z]))
            .collect();
        let sorted = listed.windows(2).all(|w| w[0] < w[1]);
        let as_set: BTreeSet<(usize, usize)> = listed.iter().copied().collect();
        exact.record(sorted && as_set == inverse[x], || {
            format!("{}: {} listed, {} by inversion", t.l(x), listed.len(), inverse[x].len())
        });
        for &(y, z) in &inverse[x] {
            p8.record(t.src[x] == t.src[y] && t.tgt[x] == t.tgt[z], || {
                format!("{} in {} ⊙ {}", t.l(x), t.l(y), t.l(z))
            });
        }
    }
    rep.push(p8.finish());
    rep.push(exact.finish());

    let mut orth = t.law("identities-orthogonal-idempotent");
    let ids: Vec<usize> = (0..n).filter(|&i| t.is_id(i)).collect();
    for &x in &ids {
        for &y in &ids {
            let expect: &[usize] = if x == y { &[x] } else { &[] };
            orth.record(t.prod[x][y] == expect, || format!("({},{})", t.l(x), t.l(y)));
        }
    }
    rep.push(orth.finish());
    rep
}

/// The three conditions characterising Möbius catoids, plus finiteness of
/// length (their consequence).
pub fn check_moebius<C: Catoid + ?Sized>(c: &C) -> Report {
    let t = Table::new(c);
    let n = t.n;
    let mut rep = Report::new();
    let mut finite = t.law("moebius-1-finitely-2-decomposable");
    let mut ind = t.law("moebius-2-identities-indecomposable");
    let mut canc = t.law("moebius-3-cancellation");
    for (x, e) in c.universe().iter().enumerate() {
        let ds = c.decompose2(e);
        let inside = ds
            .iter()
            .all(|(y, z)| t.index.contains_key(y) && t.index.contains_key(z));
        finite.record(inside, || format!("{}: factor outside the universe", t.l(x)));
        for (y, z) in &ds {
            let (Some(&yi), Some(&zi)) = (t.index.get(y), t.index.get(z)) else {
                continue;
            };
            if t.is_id(x) {
                ind.record(t.is_id(yi) || t.is_id(zi), || {
                    format!("{} in {} ⊙ {}", t.l(x), t.l(yi), t.l(zi))
                });
            }
            if yi == x {
                canc.record(zi == t.tgt[x], || {
                    format!("{} in {} ⊙ {} but t = {}", t.l(x), t.l(x), t.l(zi), t.l(t.tgt[x]))
                });
            }
        }
    }
    rep.push(finite.finish());
    rep.push(ind.finish());
    rep.push(canc.finish());

    let s = Structure::of(c);
    let mut len = t.law("finite-length");
    for x in 0..n {
        match s.length(x) {
            Ok(_) => len.ok(),
            Err(e) => {
                len.violation(e.to_string());
                break;
            }
        }
    }
    rep.push(len.finish());
    rep
}

/// Locality: `t(x) = s(y)` implies `x ⊙ y ≠ ∅`. Pairs whose product leaves
/// a truncated universe count as vacuous.
pub fn is_local<C: Catoid + ?Sized>(c: &C) -> Report {
    let t = Table::new(c);
    let mut r = t.law("local");
    for x in 0..t.n {
        for y in 0..t.n {
            if t.tgt[x] != t.src[y] {
                continue;
            }
            if t.prod[x][y].is_empty() && t.esc[x][y] {
                r.vacuous_instance();
                continue;
            }
            r.record(!t.prod[x][y].is_empty(), || format!("({},{})", t.l(x), t.l(y)));
        }
    }
    let mut rep = Report::new();
    rep.push(r.finish());
    rep
}

/// Functionality: `|x ⊙ y| ≤ 1`.
pub fn is_functional<C: Catoid + ?Sized>(c: &C) -> Report {
    let t = Table::new(c);
    let mut r = t.law("functional");
    for x in 0..t.n {
        for y in 0..t.n {
            let p = &t.prod[x][y];
            r.record(p.len() <= 1, || {
                format!("({},{}): {} results", t.l(x), t.l(y), p.len())
            });
        }
    }
    let mut rep = Report::new();
    rep.push(r.finish());
    rep
}

/// `ℓ(z) = ℓ(x) + ℓ(y)` whenever `z ∈ x ⊙ y`.
pub fn check_saturated_chain<C: Catoid + ?Sized>(c: &C) -> Report {
    let s = Structure::of(c);
    let mut r = LawResult::new("saturated-chain", c.name(), "-");
    match s.max_length() {
        Err(e) => {
            r.violation(e.to_string());
        }
        Ok(_) => {
            for z in 0..s.len() {
                let lz = s.length(z).unwrap();
                for &(x, y) in s.decomps(z) {
                    let (lx, ly) = (s.length(x).unwrap(), s.length(y).unwrap());
                    r.record(lx + ly == lz, || {
                        format!(
                            "({},{}): {}+{} vs {} = l({})",
                            s.label(x),
                            s.label(y),
                            lx,
                            ly,
                            lz,
                            s.label(z)
                        )
                    });
                }
            }
        }
    }
    let mut rep = Report::new();
    rep.push(r.finish());
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catoid_models::*;
    use crate::report::Status;

    /// Wraps a model and redirects the target of one element.
    struct Corrupt<C: Catoid> {
        inner: C,
        victim: C::Elem,
        new_target: C::Elem,
    }

    impl<C: Catoid> Catoid for Corrupt<C> {
        type Elem = C::Elem;
        fn name(&self) -> String {
            format!("corrupt-{}", self.inner.name())
        }
        fn universe(&self) -> &[Self::Elem] {
            self.inner.universe()
        }
        fn compose(&self, y: &Self::Elem, z: &Self::Elem) -> BTreeSet<Self::Elem> {
            self.inner.compose(y, z)
        }
        fn source(&self, x: &Self::Elem) -> Self::Elem {
            self.inner.source(x)
        }
        fn target(&self, x: &Self::Elem) -> Self::Elem {
            if *x == self.victim {
                self.new_target.clone()
            } else {
                self.inner.target(x)
            }
        }
        fn label(&self, x: &Self::Elem) -> String {
            self.inner.label(x)
        }
    }

    #[test]
    fn free_monoid_is_a_catoid() {
        let r = check_catoid_axioms(&free_monoid(&['a', 'b'], 3));
        assert!(r.is_clean(), "{r}");
        assert!(r.get("assoc").unwrap().vacuous > 0);
    }

    #[test]
    fn pair_groupoid_is_a_catoid() {
        let g = pair_groupoid(&["a", "b"]);
        let r = check_catoid_axioms(&g);
        assert!(r.is_clean(), "{r}");
        // 4 elements, so at most 4^3 associativity instances
        assert!(r.get("assoc").unwrap().checked <= 64);
        let m = check_moebius(&g);
        assert_eq!(m.status_of("moebius-2-identities-indecomposable"), Some(Status::Fail));
        assert!(m
            .get("moebius-2-identities-indecomposable")
            .unwrap()
            .witnesses
            .contains(&"(a,a) in (a,b) ⊙ (b,a)".to_string()));
    }

    #[test]
    fn corrupted_target_is_caught() {
        let g = interval_catoid(&PosetSpec::chain(&["a", "b", "c"])).unwrap();
        let victim = g.interval("a", "b");
        let c = Corrupt {
            new_target: g.interval("c", "c"),
            victim,
            inner: g,
        };
        let r = check_catoid_axioms(&c);
        let law = r.get("composable-match").unwrap();
        assert_eq!(law.status, Status::Fail);
        assert!(law.witnesses.iter().any(|w| w.starts_with("([a,b],[b,c])")), "{:?}", law.witnesses);
    }

    #[test]
    fn shuffle_is_not_functional() {
        let s = shuffle_catoid(&['a', 'b'], 3);
        let f = is_functional(&s);
        assert_eq!(f.status_of("functional"), Some(Status::Fail));
        assert!(f.get("functional").unwrap().witnesses.contains(&"(a,b): 2 results".to_string()));
        assert!(check_catoid_axioms(&s).is_clean());
        assert!(check_moebius(&s).is_clean());
    }

    #[test]
    fn path_and_interval_categories_are_local_and_functional() {
        let g = path_catoid(&GraphSpec::example_chain(), 4).unwrap();
        assert!(is_local(&g).is_clean());
        assert!(is_functional(&g).is_clean());
        let p = interval_catoid(&PosetSpec::example()).unwrap();
        assert!(is_local(&p).is_clean());
        assert!(is_functional(&p).is_clean());
    }

    #[test]
    fn saturated_chain() {
        assert!(check_saturated_chain(&free_monoid(&['a', 'b'], 4)).is_clean());
        let p = interval_catoid(&PosetSpec::example()).unwrap();
        let r = check_saturated_chain(&p);
        let w = &r.get("saturated-chain").unwrap().witnesses;
        assert_eq!(w, &vec!["([a,b],[b,c]): 1+1 vs 3 = l([a,c])".to_string()]);
        let gs = guarded_string_catoid(&["t1", "t2"], &["p", "q"], 2);
        assert!(check_saturated_chain(&gs).is_clean());
    }
}
