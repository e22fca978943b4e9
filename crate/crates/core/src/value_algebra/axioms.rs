//! Law checks for value algebras, exhaustive on finite carriers and sampled
//! otherwise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Capability, NValueAlgebra, ValueAlgebra, Weight};
use crate::error::{Error, Result};
use crate::report::{LawResult, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxiomClass {
    Semiring,
    Dioid,
    Kleene,
    Conway,
    Modal,
    Interchange,
    NSemiring,
    NKleene,
}

impl AxiomClass {
    pub fn as_str(self) -> &'static str {
        match self {
            AxiomClass::Semiring => "semiring",
            AxiomClass::Dioid => "dioid",
            AxiomClass::Kleene => "kleene",
            AxiomClass::Conway => "conway",
            AxiomClass::Modal => "modal",
            AxiomClass::Interchange => "interchange",
            AxiomClass::NSemiring => "n_semiring",
            AxiomClass::NKleene => "n_kleene",
        }
    }
}

/// Where axiom instances come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampler {
    /// Every tuple over the sample pool (the whole carrier when finite).
    Exhaustive,
    Random { seed: u64, samples: usize },
}

enum Outcome {
    Holds,
    Fails(String),
    Vacuous,
}

struct Ctx<'a> {
    pool: Vec<Weight>,
    sampler: Sampler,
    rng: ChaCha8Rng,
    fmt: &'a ValueAlgebra,
    algebra: String,
    report: Report,
}

impl<'a> Ctx<'a> {
    fn tuples(&mut self, k: usize) -> Vec<Vec<Weight>> {
        match self.sampler {
            Sampler::Exhaustive => {
                let mut out = vec![Vec::new()];
                for _ in 0..k {
                    out = out
                        .into_iter()
                        .flat_map(|t| {
                            self.pool.iter().map(move |&w| {
                                let mut t2 = t.clone();
                                t2.push(w);
                                t2
                            })
                        })
                        .collect();
                }
                out
            }
            Sampler::Random { samples, .. } => {
                if k == 0 {
                    return vec![Vec::new()];
                }
                (0..samples)
                    .map(|_| {
                        (0..k)
                            .map(|_| self.pool[self.rng.gen_range(0..self.pool.len())])
                            .collect()
                    })
                    .collect()
            }
        }
    }

    fn show(&self, t: &[Weight]) -> String {
        let parts: Vec<String> = t.iter().map(|&w| self.fmt.format(w)).collect();
        format!("({})", parts.join(","))
    }

    fn law(&mut self, id: String, k: usize, mut f: impl FnMut(&[Weight]) -> Outcome) {
        let mut r = LawResult::new(id, "-", self.algebra.clone());
        for t in self.tuples(k) {
            match f(&t) {
                Outcome::Holds => r.ok(),
                Outcome::Vacuous => r.vacuous_instance(),
                Outcome::Fails(d) => {
                    let w = if t.is_empty() {
                        d
                    } else {
                        format!("{}: {d}", self.show(&t))
                    };
                    r.violation(w)
                }
            }
        }
        self.report.push(r.finish());
    }

    /// Implication law whose random samples are half free and half built by
    /// `make` to satisfy the antecedent.
    fn implication(
        &mut self,
        id: String,
        make: impl Fn(&[Weight]) -> Vec<Weight>,
        f: impl Fn(&[Weight]) -> Outcome,
    ) {
        let mut r = LawResult::new(id, "-", self.algebra.clone());
        let mut ts = self.tuples(3);
        if matches!(self.sampler, Sampler::Random { .. }) {
            let half = ts.len() / 2;
            for t in ts.iter_mut().take(half) {
                *t = make(t);
            }
        }
        for t in ts {
            match f(&t) {
                Outcome::Holds => r.ok(),
                Outcome::Vacuous => r.vacuous_instance(),
                Outcome::Fails(d) => r.violation(format!("{}: {d}", self.show(&t))),
            }
        }
        self.report.push(r.finish());
    }
}

fn eq_or(a: &ValueAlgebra, lhs: Weight, rhs: Weight) -> Outcome {
    if lhs == rhs {
        Outcome::Holds
    } else {
        Outcome::Fails(format!("{} vs {}", a.format(lhs), a.format(rhs)))
    }
}

fn leq_or(a: &ValueAlgebra, lhs: Weight, rhs: Weight) -> Outcome {
    if a.leq(lhs, rhs) {
        Outcome::Holds
    } else {
        Outcome::Fails(format!("{} not <= {}", a.format(lhs), a.format(rhs)))
    }
}

fn sfx(n: usize, i: usize) -> String {
    if n == 1 {
        String::new()
    } else {
        format!(".{i}")
    }
}

fn additive_laws(c: &mut Ctx, a: &ValueAlgebra, idempotent: bool) {
    c.law("add-assoc".into(), 3, |t| {
        eq_or(a, a.add(a.add(t[0], t[1]), t[2]), a.add(t[0], a.add(t[1], t[2])))
    });
    c.law("add-comm".into(), 2, |t| eq_or(a, a.add(t[0], t[1]), a.add(t[1], t[0])));
    c.law("add-zero".into(), 1, |t| eq_or(a, a.add(a.zero(), t[0]), t[0]));
    if idempotent {
        c.law("add-idem".into(), 1, |t| eq_or(a, a.add(t[0], t[0]), t[0]));
    }
}

fn multiplicative_laws(c: &mut Ctx, a: &ValueAlgebra, s: &str) {
    c.law(format!("mul-assoc{s}"), 3, |t| {
        eq_or(a, a.mul(a.mul(t[0], t[1]), t[2]), a.mul(t[0], a.mul(t[1], t[2])))
    });
    c.law(format!("mul-unit-left{s}"), 1, |t| eq_or(a, a.mul(a.one(), t[0]), t[0]));
    c.law(format!("mul-unit-right{s}"), 1, |t| eq_or(a, a.mul(t[0], a.one()), t[0]));
    c.law(format!("dist-left{s}"), 3, |t| {
        eq_or(
            a,
            a.mul(t[0], a.add(t[1], t[2])),
            a.add(a.mul(t[0], t[1]), a.mul(t[0], t[2])),
        )
    });
    c.law(format!("dist-right{s}"), 3, |t| {
        eq_or(
            a,
            a.mul(a.add(t[0], t[1]), t[2]),
            a.add(a.mul(t[0], t[2]), a.mul(t[1], t[2])),
        )
    });
    c.law(format!("zero-left{s}"), 1, |t| eq_or(a, a.mul(a.zero(), t[0]), a.zero()));
    c.law(format!("zero-right{s}"), 1, |t| eq_or(a, a.mul(t[0], a.zero()), a.zero()));
}

fn star_fix_laws(c: &mut Ctx, a: &ValueAlgebra, s: &str) {
    c.law(format!("star-fix-left{s}"), 1, |t| {
        let st = a.star(t[0]);
        eq_or(a, a.add(a.one(), a.mul(t[0], st)), st)
    });
    c.law(format!("star-fix-right{s}"), 1, |t| {
        let st = a.star(t[0]);
        eq_or(a, a.add(a.one(), a.mul(st, t[0])), st)
    });
}

fn kleene_laws(c: &mut Ctx, a: &ValueAlgebra, s: &str) {
    c.law(format!("star-unfold-left{s}"), 1, |t| {
        let st = a.star(t[0]);
        leq_or(a, a.add(a.one(), a.mul(t[0], st)), st)
    });
    c.law(format!("star-unfold-right{s}"), 1, |t| {
        let st = a.star(t[0]);
        leq_or(a, a.add(a.one(), a.mul(st, t[0])), st)
    });
    star_fix_laws(c, a, s);
    // t = (x, y, z): y + x·z <= z implies x*·y <= z
    c.implication(
        format!("star-ind-left{s}"),
        |t| vec![t[0], t[1], a.mul(a.star(t[0]), t[1])],
        |t| {
            if !a.leq(a.add(t[1], a.mul(t[0], t[2])), t[2]) {
                return Outcome::Vacuous;
            }
            leq_or(a, a.mul(a.star(t[0]), t[1]), t[2])
        },
    );
    // y + z·x <= z implies y·x* <= z
    c.implication(
        format!("star-ind-right{s}"),
        |t| vec![t[0], t[1], a.mul(t[1], a.star(t[0]))],
        |t| {
            if !a.leq(a.add(t[1], a.mul(t[2], t[0])), t[2]) {
                return Outcome::Vacuous;
            }
            leq_or(a, a.mul(t[1], a.star(t[0])), t[2])
        },
    );
}

fn conway_laws(c: &mut Ctx, a: &ValueAlgebra, s: &str) {
    star_fix_laws(c, a, s);
    c.law(format!("sum-star{s}"), 2, |t| {
        let lhs = a.star(a.add(t[0], t[1]));
        let rhs = a.mul(a.star(a.mul(a.star(t[0]), t[1])), a.star(t[0]));
        eq_or(a, lhs, rhs)
    });
    c.law(format!("product-star{s}"), 2, |t| {
        let lhs = a.mul(a.star(a.mul(t[0], t[1])), t[0]);
        let rhs = a.mul(t[0], a.star(a.mul(t[1], t[0])));
        eq_or(a, lhs, rhs)
    });
}

fn modal_laws(c: &mut Ctx, a: &ValueAlgebra, s: &str) {
    c.law(format!("dom-expand{s}"), 1, |t| leq_or(a, t[0], a.mul(a.dom(t[0]), t[0])));
    c.law(format!("dom-local{s}"), 2, |t| {
        eq_or(a, a.dom(a.mul(t[0], a.dom(t[1]))), a.dom(a.mul(t[0], t[1])))
    });
    c.law(format!("dom-sub-one{s}"), 1, |t| leq_or(a, a.dom(t[0]), a.one()));
    c.law(format!("dom-zero{s}"), 0, |_| eq_or(a, a.dom(a.zero()), a.zero()));
    c.law(format!("dom-add{s}"), 2, |t| {
        eq_or(a, a.dom(a.add(t[0], t[1])), a.add(a.dom(t[0]), a.dom(t[1])))
    });
    c.law(format!("cod-expand{s}"), 1, |t| leq_or(a, t[0], a.mul(t[0], a.cod(t[0]))));
    c.law(format!("cod-local{s}"), 2, |t| {
        eq_or(a, a.cod(a.mul(a.cod(t[0]), t[1])), a.cod(a.mul(t[0], t[1])))
    });
    c.law(format!("cod-sub-one{s}"), 1, |t| leq_or(a, a.cod(t[0]), a.one()));
    c.law(format!("cod-zero{s}"), 0, |_| eq_or(a, a.cod(a.zero()), a.zero()));
    c.law(format!("cod-add{s}"), 2, |t| {
        eq_or(a, a.cod(a.add(t[0], t[1])), a.add(a.cod(t[0]), a.cod(t[1])))
    });
    c.law(format!("cod-of-dom{s}"), 1, |t| eq_or(a, a.cod(a.dom(t[0])), a.dom(t[0])));
    c.law(format!("dom-of-cod{s}"), 1, |t| eq_or(a, a.dom(a.cod(t[0])), a.cod(t[0])));
}

fn interchange_law(c: &mut Ctx, ai: &ValueAlgebra, aj: &ValueAlgebra, i: usize, j: usize) {
    // (α ·j β) ·i (γ ·j δ) <= (α ·i γ) ·j (β ·i δ)
    c.law(format!("interchange.{i}.{j}"), 4, |t| {
        let lhs = ai.mul(aj.mul(t[0], t[1]), aj.mul(t[2], t[3]));
        let rhs = aj.mul(ai.mul(t[0], t[2]), ai.mul(t[1], t[3]));
        leq_or(ai, lhs, rhs)
    });
}

fn n_semiring_laws(c: &mut Ctx, alg: &NValueAlgebra) {
    let n = alg.n();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (ai, aj) = (alg.dim(i), alg.dim(j));
            c.law(format!("dom-lax.{i}.{j}"), 2, |t| {
                leq_or(ai, ai.dom(aj.mul(t[0], t[1])), aj.mul(ai.dom(t[0]), ai.dom(t[1])))
            });
            c.law(format!("cod-lax.{i}.{j}"), 2, |t| {
                leq_or(ai, ai.cod(aj.mul(t[0], t[1])), aj.mul(ai.cod(t[0]), ai.cod(t[1])))
            });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let (ai, aj) = (alg.dim(i), alg.dim(j));
            interchange_law(c, ai, aj, i, j);
            c.law(format!("dom-fix.{i}.{j}"), 1, |t| eq_or(ai, aj.dom(ai.dom(t[0])), ai.dom(t[0])));
            c.law(format!("cod-fix.{i}.{j}"), 1, |t| eq_or(ai, aj.cod(ai.cod(t[0])), ai.cod(t[0])));
            c.law(format!("dom-closure.{i}.{j}"), 2, |t| {
                let x = ai.mul(aj.dom(t[0]), aj.dom(t[1]));
                let d = aj.dom(x);
                if d == x {
                    Outcome::Holds
                } else {
                    Outcome::Fails(format!(
                        "d-{j}({}) = {} vs {}",
                        ai.format(x),
                        ai.format(d),
                        ai.format(x)
                    ))
                }
            });
            c.law(format!("cod-closure.{i}.{j}"), 2, |t| {
                let x = ai.mul(aj.cod(t[0]), aj.cod(t[1]));
                let d = aj.cod(x);
                if d == x {
                    Outcome::Holds
                } else {
                    Outcome::Fails(format!(
                        "d+{j}({}) = {} vs {}",
                        ai.format(x),
                        ai.format(d),
                        ai.format(x)
                    ))
                }
            });
        }
    }
}

fn star_domain_laws(c: &mut Ctx, alg: &NValueAlgebra) {
    let n = alg.n();
    for i in 0..n {
        for j in i + 1..n {
            let (ai, aj) = (alg.dim(i), alg.dim(j));
            // d-i(x) ·i y^{*j} <= (d-i(x) ·i y)^{*j}
            c.law(format!("star-dom.{i}.{j}"), 2, |t| {
                let d = ai.dom(t[0]);
                leq_or(ai, ai.mul(d, aj.star(t[1])), aj.star(ai.mul(d, t[1])))
            });
            // the opposite: y^{*j} ·i d+i(x) <= (y ·i d+i(x))^{*j}
            c.law(format!("star-cod.{i}.{j}"), 2, |t| {
                let d = ai.cod(t[0]);
                leq_or(ai, ai.mul(aj.star(t[1]), d), aj.star(ai.mul(t[1], d)))
            });
        }
    }
}

/// Checks the laws of `class` on `alg`. Every violation is recorded.
pub fn check_value_axioms(
    alg: &NValueAlgebra,
    class: AxiomClass,
    sampler: Sampler,
) -> Result<Report> {
    let base = alg.base();
    let n = alg.n();
    let needs_star = matches!(class, AxiomClass::Kleene | AxiomClass::Conway | AxiomClass::NKleene);
    let needs_modal = matches!(class, AxiomClass::Modal | AxiomClass::NSemiring | AxiomClass::NKleene);
    for d in alg.dims() {
        if needs_star {
            d.require(Capability::Star)?;
        }
        if needs_modal {
            d.require(Capability::Modal)?;
        }
    }
    if class == AxiomClass::Interchange && n < 2 {
        return Err(Error::Capability(format!(
            "interchange laws need two dimensions, '{}' has {n}",
            alg.name()
        )));
    }
    let seed = match sampler {
        Sampler::Random { seed, .. } => seed,
        Sampler::Exhaustive => 0,
    };
    let mut c = Ctx {
        pool: base.sample_pool(),
        sampler,
        rng: ChaCha8Rng::seed_from_u64(seed),
        fmt: base,
        algebra: alg.name().to_string(),
        report: Report::new(),
    };
    let idempotent = !matches!(class, AxiomClass::Semiring | AxiomClass::Conway);
    additive_laws(&mut c, base, idempotent);
    for i in 0..n {
        let a = alg.dim(i);
        let s = sfx(n, i);
        multiplicative_laws(&mut c, a, &s);
        match class {
            AxiomClass::Kleene | AxiomClass::NKleene => kleene_laws(&mut c, a, &s),
            AxiomClass::Conway => conway_laws(&mut c, a, &s),
            _ => {}
        }
        if needs_modal {
            modal_laws(&mut c, a, &s);
        }
    }
    match class {
        AxiomClass::Interchange => {
            for i in 0..n {
                for j in i + 1..n {
                    let (ai, aj) = (alg.dim(i), alg.dim(j));
                    interchange_law(&mut c, ai, aj, i, j);
                    c.law(format!("unit-order.{i}.{j}"), 0, |_| leq_or(ai, ai.one(), aj.one()));
                }
            }
        }
        AxiomClass::NSemiring => n_semiring_laws(&mut c, alg),
        AxiomClass::NKleene => {
            n_semiring_laws(&mut c, alg);
            star_domain_laws(&mut c, alg);
        }
        _ => {}
    }
    Ok(c.report)
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;
    use crate::report::Status;

    #[test]
    fn boolean_is_kleene() {
        let r = check_value_axioms(&make_boolean().into(), AxiomClass::Kleene, Sampler::Exhaustive)
            .unwrap();
        assert!(r.is_clean(), "{r}");
        assert!(r.get("star-ind-left").unwrap().vacuous > 0);
    }

    #[test]
    fn tropical_algebras_are_kleene_and_modal() {
        for alg in [make_min_plus(), make_max_plus()] {
            for class in [AxiomClass::Kleene, AxiomClass::Modal, AxiomClass::Conway] {
                let r = check_value_axioms(&alg.clone().into(), class, Sampler::Exhaustive).unwrap();
                assert!(r.is_clean(), "{} {:?}\n{r}", alg.name(), class);
            }
        }
    }

    #[test]
    fn natinf_is_conway_not_dioid() {
        let n: NValueAlgebra = make_nat_inf_conway().into();
        let r = check_value_axioms(&n, AxiomClass::Conway, Sampler::Exhaustive).unwrap();
        assert!(r.is_clean(), "{r}");
        let d = check_value_axioms(&n, AxiomClass::Dioid, Sampler::Exhaustive).unwrap();
        assert_eq!(d.failed_laws(), vec!["add-idem"]);
        assert!(matches!(
            check_value_axioms(&n, AxiomClass::Modal, Sampler::Exhaustive),
            Err(Error::Capability(_))
        ));
    }

    #[test]
    fn random_sampling_hits_antecedents() {
        let r = check_value_axioms(
            &make_min_plus().into(),
            AxiomClass::Kleene,
            Sampler::Random { seed: 3, samples: 200 },
        )
        .unwrap();
        assert!(r.is_clean(), "{r}");
        let l = r.get("star-ind-left").unwrap();
        assert!(l.checked - l.vacuous >= 100);
    }

    #[test]
    fn model_one_closure_failures() {
        let m = load_finite_algebra(INDEPENDENCE_MODEL_1).unwrap();
        let r = check_value_axioms(&m, AxiomClass::NSemiring, Sampler::Exhaustive).unwrap();
        let dc = r.get("dom-closure.0.1").unwrap();
        assert_eq!(dc.status, Status::Fail);
        assert!(dc.witnesses.iter().any(|w| w == "(1_1,1_1): d-1(a) = 1_1 vs a"), "{:?}", dc.witnesses);
    }

    #[test]
    fn no_modal_dioid_breaks_locality() {
        let m = load_finite_algebra(NO_MODAL_DIOID).unwrap();
        let r = check_value_axioms(&m, AxiomClass::Modal, Sampler::Exhaustive).unwrap();
        assert_eq!(r.failed_laws(), vec!["dom-local", "cod-local"]);
        let w = &r.get("dom-local").unwrap().witnesses;
        assert!(w.contains(&"(a,a): 1 vs 0".to_string()), "{w:?}");
    }

    #[test]
    fn printed_order_for_no_modal_dioid_is_not_a_dioid() {
        // With 0 < 1 < a, 1 <= a forces a = a·1 <= a·a = 0.
        let t = "carrier: 0 1 a\norder: 0 < 1 < a\nmul:\n0 0 0\n0 1 a\n0 a 0\none: 1\n";
        let m = load_finite_algebra(t).unwrap();
        let r = check_value_axioms(&m, AxiomClass::Dioid, Sampler::Exhaustive).unwrap();
        assert!(r.failed_laws().contains(&"dist-left"), "{r}");
    }

    #[test]
    fn uniform_boolean_pair_is_n_kleene() {
        let b = NValueAlgebra::uniform(make_boolean(), 2);
        for class in [AxiomClass::Interchange, AxiomClass::NSemiring, AxiomClass::NKleene] {
            let r = check_value_axioms(&b, class, Sampler::Exhaustive).unwrap();
            assert!(r.is_clean(), "{class:?}\n{r}");
        }
    }

    #[test]
    fn interchange_needs_two_dims() {
        assert!(check_value_axioms(&make_boolean().into(), AxiomClass::Interchange, Sampler::Exhaustive).is_err());
    }
}
