//! Law suites for convolution algebras, evaluated pointwise on the
//! universe for seeded random functions.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;

use super::{
    conv_add, convolve, random_function, star_form, star_recursive, test_complement, test_set,
    FunctionSampler, IdMode, Space, SpaceExt, StarForm, WeightFunction,
};
use crate::error::{Error, Result};
use crate::report::{LawResult, Report};
use crate::value_algebra::Capability;

struct Cx<'a, E> {
    sp: &'a Arc<Space<E>>,
}

impl<'a, E: Send + Sync + 'static> Cx<'a, E> {
    fn law(&self, id: &str) -> LawResult {
        LawResult::new(id, self.sp.model_name(), self.sp.algebra().name())
    }

    /// One instance per universe element.
    fn eq(&self, law: &mut LawResult, tag: &str, l: &WeightFunction<E>, r: &WeightFunction<E>) -> Result<()> {
        for x in 0..self.sp.len() {
            let (a, b) = (l.try_at(x)?, r.try_at(x)?);
            law.record(a == b, || self.witness(tag, x, a, b, "vs"));
        }
        Ok(())
    }

    fn le(&self, law: &mut LawResult, tag: &str, l: &WeightFunction<E>, r: &WeightFunction<E>) -> Result<()> {
        let alg = self.sp.algebra();
        for x in 0..self.sp.len() {
            let (a, b) = (l.try_at(x)?, r.try_at(x)?);
            law.record(alg.leq(a, b), || self.witness(tag, x, a, b, "not <="));
        }
        Ok(())
    }

    fn witness(&self, tag: &str, x: usize, a: crate::value_algebra::Weight, b: crate::value_algebra::Weight, rel: &str) -> String {
        let alg = self.sp.algebra();
        format!(
            "({tag}, {}): {} {rel} {}",
            self.sp.structure().label(x),
            alg.format(a),
            alg.format(b)
        )
    }
}

/// Semiring (or dioid) laws of `S^C`: associativity and commutativity of
/// `+`, associativity of `∗`, both distributive laws, annihilation by 0 and
/// the unit `id₀`. `add-idem` is included when the algebra is idempotent.
pub fn check_semiring<E: Send + Sync + 'static>(sp: &Arc<Space<E>>, s: FunctionSampler) -> Result<Report> {
    let cx = Cx { sp };
    let mut rng = s.rng();
    let idem = sp.algebra().flags().idempotent_add;
    let mut laws: Vec<LawResult> = [
        "add-assoc", "add-comm", "add-zero", "add-idem", "mul-assoc", "mul-unit-left", "mul-unit-right",
        "dist-left", "dist-right", "zero-left", "zero-right",
    ]
    .iter()
    .map(|l| cx.law(l))
    .collect();
    let (zero, one) = (sp.zero(), sp.id0());
    for k in 0..s.samples {
        let f = random_function(sp, &mut rng, s.mode);
        let g = random_function(sp, &mut rng, s.mode);
        let h = random_function(sp, &mut rng, s.mode);
        let tag = format!("sample {k}");
        let add = |a: &WeightFunction<E>, b: &WeightFunction<E>| conv_add(a, b);
        let mul = |a: &WeightFunction<E>, b: &WeightFunction<E>| convolve(a, b);
        cx.eq(&mut laws[0], &tag, &add(&add(&f, &g)?, &h)?, &add(&f, &add(&g, &h)?)?)?;
        cx.eq(&mut laws[1], &tag, &add(&f, &g)?, &add(&g, &f)?)?;
        cx.eq(&mut laws[2], &tag, &add(&f, &zero)?, &f)?;
        if idem {
            cx.eq(&mut laws[3], &tag, &add(&f, &f)?, &f)?;
        }
        cx.eq(&mut laws[4], &tag, &mul(&mul(&f, &g)?, &h)?, &mul(&f, &mul(&g, &h)?)?)?;
        cx.eq(&mut laws[5], &tag, &mul(&one, &f)?, &f)?;
        cx.eq(&mut laws[6], &tag, &mul(&f, &one)?, &f)?;
        cx.eq(&mut laws[7], &tag, &mul(&f, &add(&g, &h)?)?, &add(&mul(&f, &g)?, &mul(&f, &h)?)?)?;
        cx.eq(&mut laws[8], &tag, &mul(&add(&f, &g)?, &h)?, &add(&mul(&f, &h)?, &mul(&g, &h)?)?)?;
        cx.eq(&mut laws[9], &tag, &mul(&zero, &f)?, &zero)?;
        cx.eq(&mut laws[10], &tag, &mul(&f, &zero)?, &zero)?;
    }
    let mut rep = Report::new();
    for (i, l) in laws.into_iter().enumerate() {
        if i == 3 && !idem {
            continue;
        }
        rep.push(l.finish());
    }
    Ok(rep)
}

/// Star unfold (as equations) and both star induction laws of `K^C`.
///
/// Induction is checked in the simplified form `f ∗ g ≤ g ⇒ f* ∗ g ≤ g`
/// and its mirror. Half of the samples build `g` so that the antecedent
/// holds (`g = f* ∗ h`, respectively `g = h ∗ f*`); samples whose
/// antecedent fails are counted as vacuous.
pub fn check_kleene<E: Send + Sync + 'static>(sp: &Arc<Space<E>>, s: FunctionSampler) -> Result<Report> {
    sp.algebra().require(Capability::Star)?;
    sp.algebra().require(Capability::IdempotentAdd)?;
    let cx = Cx { sp };
    let mut rng = s.rng();
    let mut ul = cx.law("star-unfold-left");
    let mut ur = cx.law("star-unfold-right");
    let mut il = cx.law("star-ind-left");
    let mut ir = cx.law("star-ind-right");
    let one = sp.id0();
    for k in 0..s.samples {
        let tag = format!("sample {k}");
        let f = random_function(sp, &mut rng, s.mode);
        let fs = star_recursive(&f)?;
        cx.eq(&mut ul, &tag, &conv_add(&one, &convolve(&f, &fs)?)?, &fs)?;
        cx.eq(&mut ur, &tag, &conv_add(&one, &convolve(&fs, &f)?)?, &fs)?;

        let h = random_function(sp, &mut rng, s.mode);
        let built = rng.gen_bool(0.5);
        let g = if built { convolve(&fs, &h)?.materialise()? } else { h.clone() };
        if convolve(&f, &g)?.leq(&g)? {
            cx.le(&mut il, &tag, &convolve(&fs, &g)?, &g)?;
        } else {
            il.vacuous_instance();
        }
        let g = if built { convolve(&h, &fs)?.materialise()? } else { h };
        if convolve(&g, &f)?.leq(&g)? {
            cx.le(&mut ir, &tag, &convolve(&g, &fs)?, &g)?;
        } else {
            ir.vacuous_instance();
        }
    }
    let mut rep = Report::new();
    for l in [ul, ur, il, ir] {
        rep.push(l.finish());
    }
    Ok(rep)
}

/// `star_recursive = star_dual = star_unfolded` pointwise, and also
/// `= star_path` when the sampler draws from `K[C]`.
pub fn check_star_forms<E: Send + Sync + 'static>(sp: &Arc<Space<E>>, s: FunctionSampler) -> Result<Report> {
    let cx = Cx { sp };
    let mut rng = s.rng();
    let mut dual = cx.law("star-dual-agrees");
    let mut unf = cx.law("star-unfolded-agrees");
    let mut path = cx.law("star-path-agrees");
    for k in 0..s.samples {
        let tag = format!("sample {k}");
        let f = random_function(sp, &mut rng, s.mode);
        let r = star_recursive(&f)?;
        cx.eq(&mut dual, &tag, &r, &star_form(&f, StarForm::Dual)?)?;
        cx.eq(&mut unf, &tag, &r, &star_form(&f, StarForm::Unfolded)?)?;
        if s.mode == IdMode::One {
            cx.eq(&mut path, &tag, &r, &star_form(&f, StarForm::Path)?)?;
        }
    }
    let mut rep = Report::new();
    rep.push(dual.finish());
    rep.push(unf.finish());
    if s.mode == IdMode::One {
        rep.push(path.finish());
    }
    Ok(rep)
}

/// The four Conway identities on `S^C`:
/// `id₀ + f ∗ f* = f*`, `id₀ + f* ∗ f = f*`, `(f + g)* = (f* ∗ g)* ∗ f*`
/// and `f ∗ (g ∗ f)* = (f ∗ g)* ∗ f`. Addition need not be idempotent.
pub fn check_conway<E: Send + Sync + 'static>(sp: &Arc<Space<E>>, s: FunctionSampler) -> Result<Report> {
    sp.algebra().require(Capability::Star)?;
    let cx = Cx { sp };
    let mut rng = s.rng();
    let mut laws: Vec<LawResult> = ["conway-unfold-left", "conway-unfold-right", "sum-star", "product-star"]
        .iter()
        .map(|l| cx.law(l))
        .collect();
    let one = sp.id0();
    for k in 0..s.samples {
        let tag = format!("sample {k}");
        let f = random_function(sp, &mut rng, s.mode);
        let g = random_function(sp, &mut rng, s.mode);
        let fs = star_recursive(&f)?;
        cx.eq(&mut laws[0], &tag, &conv_add(&one, &convolve(&f, &fs)?)?, &fs)?;
        cx.eq(&mut laws[1], &tag, &conv_add(&one, &convolve(&fs, &f)?)?, &fs)?;
        let lhs = star_recursive(&conv_add(&f, &g)?)?;
        let rhs = convolve(&star_recursive(&convolve(&fs, &g)?)?, &fs)?;
        cx.eq(&mut laws[2], &tag, &lhs, &rhs)?;
        let lhs = convolve(&f, &star_recursive(&convolve(&g, &f)?)?)?;
        let rhs = convolve(&star_recursive(&convolve(&f, &g)?)?, &f)?;
        cx.eq(&mut laws[3], &tag, &lhs, &rhs)?;
    }
    let mut rep = Report::new();
    for l in laws {
        rep.push(l.finish());
    }
    Ok(rep)
}

/// Subsets of identities beyond this size are not enumerated.
const MAX_TEST_IDENTITIES: usize = 12;

/// The Kleene algebra with tests on `K^C`.
///
/// Every test `χ_P`, `P ⊆ C₀`, is enumerated, and the Boolean algebra laws
/// are checked on all pairs and triples: join is `+`, meet is `∗`,
/// complement is `test_complement`, bounds are `0` and `id₀`. Stars of tests
/// must be `id₀`. For sampled subsets `A, B ⊆ C` the indicator functions
/// must follow the powerset Kleene algebra, computed here directly on sets.
/// Finally, the tests lying in `K[C]` must be exactly `0` and `id₀`.
pub fn check_kat<E: Send + Sync + 'static>(sp: &Arc<Space<E>>, s: FunctionSampler) -> Result<Report> {
    let alg = sp.algebra();
    alg.require(Capability::Star)?;
    alg.require(Capability::IdempotentAdd)?;
    sp.structure().moebius()?;
    let st = sp.structure();
    let ids = st.identities().to_vec();
    if ids.len() > MAX_TEST_IDENTITIES {
        return Err(Error::Config(format!(
            "{} identities: too many tests to enumerate",
            ids.len()
        )));
    }
    let cx = Cx { sp };
    let subsets: Vec<BTreeSet<usize>> = (0u32..1 << ids.len())
        .map(|m| ids.iter().enumerate().filter(|(b, _)| m >> b & 1 == 1).map(|(_, &e)| e).collect())
        .collect();
    let tests: Vec<WeightFunction<E>> = subsets.iter().map(|p| sp.indicator_at(p)).collect();
    let all: BTreeSet<usize> = ids.iter().copied().collect();
    let (zero, one) = (sp.zero(), sp.id0());
    let name = |p: &BTreeSet<usize>| {
        let v: Vec<&str> = p.iter().map(|&i| st.label(i)).collect();
        format!("{{{}}}", v.join(","))
    };

    let mut rep = Report::new();
    let mut closure = cx.law("test-closure");
    let mut join = cx.law("test-join");
    let mut meet = cx.law("test-meet");
    let mut comm = cx.law("test-meet-comm");
    let mut idem = cx.law("test-meet-idem");
    let mut dist = cx.law("test-distributive");
    let mut compl = cx.law("test-complement");
    let mut morgan = cx.law("test-de-morgan");
    let mut bounds = cx.law("test-bounds");
    let mut star = cx.law("test-star");
    for (i, p) in tests.iter().enumerate() {
        let sp_ = &subsets[i];
        let tag = format!("p={}", name(sp_));
        let np = test_complement(p)?;
        cx.eq(&mut compl, &tag, &conv_add(p, &np)?, &one)?;
        cx.eq(&mut compl, &tag, &convolve(p, &np)?, &zero)?;
        cx.eq(&mut compl, &tag, &test_complement(&np)?, p)?;
        let rest: BTreeSet<usize> = all.difference(sp_).copied().collect();
        closure.record(test_set(&np)? == rest, || tag.clone());
        cx.eq(&mut idem, &tag, &convolve(p, p)?, p)?;
        cx.le(&mut bounds, &tag, &zero, p)?;
        cx.le(&mut bounds, &tag, p, &one)?;
        let ps = star_recursive(p)?;
        cx.eq(&mut star, &tag, &ps, &one)?;
        for (j, q) in tests.iter().enumerate() {
            let sq = &subsets[j];
            let tag = format!("p={},q={}", name(sp_), name(sq));
            let union: BTreeSet<usize> = sp_.union(sq).copied().collect();
            let inter: BTreeSet<usize> = sp_.intersection(sq).copied().collect();
            let pq = convolve(p, q)?;
            let padd = conv_add(p, q)?;
            closure.record(test_set(&pq)? == inter && test_set(&padd)? == union, || tag.clone());
            cx.eq(&mut join, &tag, &padd, &tests[index_of(&subsets, &union)])?;
            cx.eq(&mut meet, &tag, &pq, &tests[index_of(&subsets, &inter)])?;
            cx.eq(&mut comm, &tag, &pq, &convolve(q, p)?)?;
            cx.eq(
                &mut morgan,
                &tag,
                &test_complement(&padd)?,
                &convolve(&test_complement(p)?, &test_complement(q)?)?,
            )?;
            for r in &tests {
                let a = convolve(p, &conv_add(q, r)?)?;
                let b = conv_add(&pq, &convolve(p, r)?)?;
                cx.eq(&mut dist, &tag, &a, &b)?;
                let c = conv_add(p, &convolve(q, r)?)?;
                let d = convolve(&padd, &conv_add(p, r)?)?;
                cx.eq(&mut dist, &tag, &c, &d)?;
            }
        }
    }
    for l in [closure, join, meet, comm, idem, dist, compl, morgan, bounds, star] {
        rep.push(l.finish());
    }

    // Indicator functions against the powerset Kleene algebra.
    let mut rng = s.rng();
    let n = sp.len();
    let mut ind_add = cx.law("indicator-add");
    let mut ind_mul = cx.law("indicator-mul");
    let mut ind_star = cx.law("indicator-star");
    for k in 0..s.samples {
        let tag = format!("sample {k}");
        let density = rng.gen_range(0.05..0.5);
        let a: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(density)).collect();
        let b: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(density)).collect();
        let (fa, fb) = (sp.indicator_at(&a), sp.indicator_at(&b));
        let union: BTreeSet<usize> = a.union(&b).copied().collect();
        cx.eq(&mut ind_add, &tag, &conv_add(&fa, &fb)?, &sp.indicator_at(&union))?;
        cx.eq(&mut ind_mul, &tag, &convolve(&fa, &fb)?, &sp.indicator_at(&set_product(sp, &a, &b)))?;
        cx.eq(&mut ind_star, &tag, &star_recursive(&fa)?, &sp.indicator_at(&set_star(sp, &a)))?;
    }
    rep.push(ind_add.finish());
    rep.push(ind_mul.finish());
    rep.push(ind_star.finish());

    let in_kc: Vec<&BTreeSet<usize>> = subsets
        .iter()
        .zip(&tests)
        .filter(|(_, t)| super::is_in_bracket(t).unwrap_or(false))
        .map(|(p, _)| p)
        .collect();
    rep.push(LawResult::info(
        "test-count",
        sp.model_name(),
        alg.name(),
        format!("{} tests over {} identities", tests.len(), ids.len()),
    ));
    let mut kc = cx.law("kc-tests");
    let expected = if all.is_empty() { vec![&all] } else { vec![&subsets[0], &all] };
    kc.record(in_kc == expected, || {
        format!("{} tests in K[C]", in_kc.len())
    });
    kc.note = Some(format!("{} tests in K[C]", in_kc.len()));
    rep.push(kc.finish());
    Ok(rep)
}

fn index_of(subsets: &[BTreeSet<usize>], s: &BTreeSet<usize>) -> usize {
    subsets.iter().position(|p| p == s).expect("closed under set operations")
}

/// `A ⊙ B` restricted to the universe.
fn set_product<E>(sp: &Space<E>, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
    let st = sp.structure();
    let mut out = BTreeSet::new();
    for &y in a {
        for &z in b {
            out.extend(st.compose(y, z).iter().copied());
        }
    }
    out
}

/// `⋃ₙ Aⁿ` with `A⁰ = C₀`, iterated to a fixpoint on the universe.
fn set_star<E>(sp: &Space<E>, a: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut acc: BTreeSet<usize> = sp.structure().identities().iter().copied().collect();
    let mut power = acc.clone();
    loop {
        power = set_product(sp, &power, a);
        let before = acc.len();
        acc.extend(power.iter().copied());
        if acc.len() == before {
            return acc;
        }
    }
}
