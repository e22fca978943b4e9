use std::collections::{BTreeSet, HashMap};

use super::NCatoid;
use crate::catoid::{check_catoid_axioms, check_moebius, is_functional, is_local};
use crate::report::{LawResult, Report, Status};

struct DimTable {
    prod: Vec<Vec<Vec<usize>>>,
    esc: Vec<Vec<bool>>,
    src: Vec<usize>,
    tgt: Vec<usize>,
}

struct Tables {
    n: usize,
    labels: Vec<String>,
    dims: Vec<DimTable>,
    name: String,
}

impl Tables {
    fn new<N: NCatoid + ?Sized>(nc: &N) -> Self {
        let u = nc.universe();
        let n = u.len();
        let index: HashMap<&N::Elem, usize> = u.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let pos = |e: &N::Elem| {
            *index
                .get(e)
                .unwrap_or_else(|| panic!("{}: {e:?} lies outside the universe", nc.name()))
        };
        let dims = (0..nc.dims())
            .map(|d| {
                let mut prod = vec![vec![Vec::new(); n]; n];
                let mut esc = vec![vec![false; n]; n];
                for (i, y) in u.iter().enumerate() {
                    for (j, z) in u.iter().enumerate() {
                        prod[i][j] = nc.compose(d, y, z).iter().map(pos).collect();
                        esc[i][j] = nc.escapes(d, y, z);
                    }
                }
                DimTable {
                    prod,
                    esc,
                    src: u.iter().map(|x| pos(&nc.source(d, x))).collect(),
                    tgt: u.iter().map(|x| pos(&nc.target(d, x))).collect(),
                }
            })
            .collect();
        Tables {
            n,
            labels: u.iter().map(|x| nc.label(x)).collect(),
            dims,
            name: nc.name(),
        }
    }

    fn law(&self, id: String) -> LawResult {
        LawResult::new(id, self.name.clone(), "-")
    }

    fn set(&self, s: &BTreeSet<usize>) -> String {
        let v: Vec<&str> = s.iter().map(|&i| self.labels[i].as_str()).collect();
        format!("{{{}}}", v.join(","))
    }

    /// `A ⊙_d B` for sets; `None` when some product leaves the universe.
    fn lift(&self, d: usize, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> Option<BTreeSet<usize>> {
        let t = &self.dims[d];
        let mut out = BTreeSet::new();
        for &x in a {
            for &y in b {
                if t.esc[x][y] {
                    return None;
                }
                out.extend(t.prod[x][y].iter().copied());
            }
        }
        Some(out)
    }

    fn pair(&self, d: usize, x: usize, y: usize) -> Option<BTreeSet<usize>> {
        self.lift(d, &BTreeSet::from([x]), &BTreeSet::from([y]))
    }
}

fn suffixed(rep: Report, dim: usize) -> Report {
    let mut out = Report::new();
    for mut e in rep.entries {
        e.law = format!("{}.{dim}", e.law);
        out.push(e);
    }
    out
}

/// All n-catoid axioms: each dimension is a Möbius catoid, the face maps
/// commute and are lax morphisms across dimensions, and for `i < j` the
/// interchange inclusion, absorption and both closure axioms hold.
/// Locality and functionality per dimension are reported as `INFO` lines.
pub fn check_n_catoid<N: NCatoid + ?Sized>(nc: &N) -> Report {
    let mut rep = Report::new();
    for d in 0..nc.dims() {
        let view = super::Dim { nc, i: d };
        rep.extend(suffixed(check_catoid_axioms(&view), d));
        rep.extend(suffixed(check_moebius(&view), d));
        for r in is_local(&view).entries.into_iter().chain(is_functional(&view).entries) {
            let note = match r.status {
                Status::Pass => "yes".to_string(),
                Status::Skipped => "vacuous".to_string(),
                _ => format!("no: {}", r.witnesses[0]),
            };
            rep.push(LawResult::info(format!("{}.{d}", r.law), r.model, "-", note));
        }
    }

    let t = Tables::new(nc);
    let n = t.n;
    let k = nc.dims();
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let (a, b) = (&t.dims[i], &t.dims[j]);
            let mut comm = t.law(format!("face-commute.{i}.{j}"));
            for x in 0..n {
                comm.record(
                    a.src[b.src[x]] == b.src[a.src[x]]
                        && a.src[b.tgt[x]] == b.tgt[a.src[x]]
                        && a.tgt[b.src[x]] == b.src[a.tgt[x]]
                        && a.tgt[b.tgt[x]] == b.tgt[a.tgt[x]],
                    || t.labels[x].clone(),
                );
            }
            rep.push(comm.finish());

            // s_i(x ⊙_j y) ⊆ s_i(x) ⊙_j s_i(y), and the same for t_i
            let mut lax_s = t.law(format!("src-lax.{i}.{j}"));
            let mut lax_t = t.law(format!("tgt-lax.{i}.{j}"));
            for x in 0..n {
                for y in 0..n {
                    for (law, face) in [(&mut lax_s, &a.src), (&mut lax_t, &a.tgt)] {
                        let lhs: BTreeSet<usize> = b.prod[x][y].iter().map(|&w| face[w]).collect();
                        match t.pair(j, face[x], face[y]) {
                            None => law.vacuous_instance(),
                            Some(rhs) => law.record(lhs.is_subset(&rhs), || {
                                format!(
                                    "({},{}): {} not in {}",
                                    t.labels[x],
                                    t.labels[y],
                                    t.set(&lhs),
                                    t.set(&rhs)
                                )
                            }),
                        }
                    }
                }
            }
            rep.push(lax_s.finish());
            rep.push(lax_t.finish());
        }
    }

    for i in 0..k {
        for j in i + 1..k {
            let (a, b) = (&t.dims[i], &t.dims[j]);
            let mut absorb = t.law(format!("face-absorb.{i}.{j}"));
            let mut filt = t.law(format!("identity-filtration.{i}.{j}"));
            for x in 0..n {
                absorb.record(
                    b.src[a.src[x]] == a.src[x]
                        && b.src[a.tgt[x]] == a.tgt[x]
                        && b.tgt[a.src[x]] == a.src[x]
                        && b.tgt[a.tgt[x]] == a.tgt[x],
                    || t.labels[x].clone(),
                );
                if a.src[x] == x {
                    filt.record(b.src[x] == x, || t.labels[x].clone());
                }
            }
            rep.push(absorb.finish());
            rep.push(filt.finish());

            let mut cl_s = t.law(format!("src-closure.{i}.{j}"));
            let mut cl_t = t.law(format!("tgt-closure.{i}.{j}"));
            for x in 0..n {
                for y in 0..n {
                    for (law, face) in [(&mut cl_s, &b.src), (&mut cl_t, &b.tgt)] {
                        match t.pair(i, face[x], face[y]) {
                            None => law.vacuous_instance(),
                            Some(p) => {
                                let img: BTreeSet<usize> = p.iter().map(|&w| face[w]).collect();
                                law.record(img == p, || {
                                    format!(
                                        "({},{}): {} vs {}",
                                        t.labels[x],
                                        t.labels[y],
                                        t.set(&img),
                                        t.set(&p)
                                    )
                                });
                            }
                        }
                    }
                }
            }
            rep.push(cl_s.finish());
            rep.push(cl_t.finish());

            rep.push(interchange(&t, i, j));
        }
    }
    rep
}

/// `(w ⊙_j x) ⊙_i (y ⊙_j z) ⊆ (w ⊙_i y) ⊙_j (x ⊙_i z)`
fn interchange(t: &Tables, i: usize, j: usize) -> LawResult {
    let n = t.n;
    let (a, b) = (&t.dims[i], &t.dims[j]);
    let mut law = t.law(format!("interchange.{i}.{j}"));
    for w in 0..n {
        for y in 0..n {
            if a.esc[w][y] {
                for _ in 0..n * n {
                    law.vacuous_instance();
                }
                continue;
            }
            let wy: BTreeSet<usize> = a.prod[w][y].iter().copied().collect();
            for x in 0..n {
                let wx: BTreeSet<usize> = b.prod[w][x].iter().copied().collect();
                for z in 0..n {
                    if a.esc[x][z] {
                        law.vacuous_instance();
                        continue;
                    }
                    let xz: BTreeSet<usize> = a.prod[x][z].iter().copied().collect();
                    let Some(rhs) = t.lift(j, &wy, &xz) else {
                        law.vacuous_instance();
                        continue;
                    };
                    let yz: BTreeSet<usize> = b.prod[y][z].iter().copied().collect();
                    let lhs: BTreeSet<usize> = wx
                        .iter()
                        .flat_map(|&u| yz.iter().flat_map(move |&v| a.prod[u][v].iter().copied()))
                        .collect();
                    law.record(lhs.is_subset(&rhs), || {
                        format!(
                            "({},{},{},{}): {} not in {}",
                            t.labels[w],
                            t.labels[x],
                            t.labels[y],
                            t.labels[z],
                            t.set(&lhs),
                            t.set(&rhs)
                        )
                    });
                }
            }
        }
    }
    law.finish()
}

/// [`check_n_catoid`] for a two-dimensional model.
pub fn check_2catoid<N: NCatoid + ?Sized>(nc: &N) -> Report {
    assert_eq!(nc.dims(), 2, "check_2catoid needs a 2-catoid");
    check_n_catoid(nc)
}
