//! Domain and codomain on convolution algebras.
//!
//! The summation form lifts `d⁻` and `d⁺` of the value algebra along
//! source and target fibres:
//! `D⁻(f)(e) = Σ_{s(y)=e} d⁻(f(y))` on identities and `0` elsewhere.
//! These sums range over whole fibres, so they need finite valency on the
//! model itself, not just on a truncation of it. The bracket form works on
//! `K[C]`, where `D⁻(f) = D⁺(f)` is `id₀` or `0`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use crate::convolution::{
    conv_add, convolve, is_in_bracket, random_function, FunctionSampler, IdMode, Space, SpaceExt,
    WeightFunction,
};
use crate::error::{Error, Result};
use crate::report::{LawResult, Report};
use crate::value_algebra::{Capability, Weight};

/// Fibre sizes per identity, and whether they are the model's true fibres.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValencyCertificate {
    /// `|{x : s(x) = e}|` per identity label.
    pub out_degree: BTreeMap<String, usize>,
    /// `|{x : t(x) = e}|` per identity label.
    pub in_degree: BTreeMap<String, usize>,
    pub max: usize,
    /// False when the universe is a truncation, so the counts are lower
    /// bounds only.
    pub exact: bool,
}

impl ValencyCertificate {
    pub fn of<E>(sp: &Space<E>) -> Self {
        let st = sp.structure();
        let mut out_degree = BTreeMap::new();
        let mut in_degree = BTreeMap::new();
        let mut max = 0;
        for &e in st.identities() {
            let (o, i) = (st.src_fiber(e).len(), st.tgt_fiber(e).len());
            max = max.max(o).max(i);
            out_degree.insert(st.label(e).to_string(), o);
            in_degree.insert(st.label(e).to_string(), i);
        }
        ValencyCertificate { out_degree, in_degree, max, exact: !st.is_truncated() }
    }
}

/// Checks the preconditions of the summation form.
pub fn certify<E>(sp: &Space<E>) -> Result<ValencyCertificate> {
    sp.algebra().require(Capability::Modal)?;
    let st = sp.structure();
    st.finitely_decomposable()?;
    if !st.is_local() {
        return Err(Error::Domain(format!(
            "{} is not local: {}",
            st.name(),
            st.locality_witness().unwrap_or("?")
        )));
    }
    let cert = ValencyCertificate::of(sp);
    if !cert.exact {
        return Err(Error::Domain(format!(
            "{}: finite valency not certified, the universe is truncated",
            st.name()
        )));
    }
    Ok(cert)
}

fn hat<E: Send + Sync + 'static>(f: &WeightFunction<E>, dom: bool) -> Result<WeightFunction<E>> {
    let sp = f.space().clone();
    certify(&sp)?;
    let f = f.clone();
    let inner = sp.clone();
    Ok(sp.from_fallible_rule(move |x| {
        let st = inner.structure();
        let alg = inner.algebra();
        if !st.is_identity(x) {
            return Ok(alg.zero());
        }
        let fibre = if dom { st.src_fiber(x) } else { st.tgt_fiber(x) };
        let mut acc = alg.zero();
        for &y in fibre {
            let v = f.try_at(y)?;
            acc = alg.add(acc, if dom { alg.dom(v) } else { alg.cod(v) });
        }
        Ok(acc)
    }))
}

/// `D⁻(f)(x) = Σ_{y : s(y) = x} d⁻(f(y))` for `x ∈ C₀`, else `0`.
pub fn dom_hat<E: Send + Sync + 'static>(f: &WeightFunction<E>) -> Result<WeightFunction<E>> {
    hat(f, true)
}

/// `D⁺(f)(x) = Σ_{y : t(y) = x} d⁺(f(y))` for `x ∈ C₀`, else `0`.
pub fn cod_hat<E: Send + Sync + 'static>(f: &WeightFunction<E>) -> Result<WeightFunction<E>> {
    hat(f, false)
}

/// `id₀` when `f ≠ 0`, else `0`. Defined on `K[C]` only.
pub fn dom_bracket<E: Send + Sync + 'static>(f: &WeightFunction<E>) -> Result<WeightFunction<E>> {
    if !is_in_bracket(f)? {
        return Err(Error::Domain("bracket domain needs a function in K[C]".into()));
    }
    Ok(if f.is_zero()? { f.space().zero() } else { f.space().id0() })
}

/// Same as [`dom_bracket`].
pub fn cod_bracket<E: Send + Sync + 'static>(f: &WeightFunction<E>) -> Result<WeightFunction<E>> {
    dom_bracket(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModalVariant {
    Hat,
    Bracket,
}

impl ModalVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            ModalVariant::Hat => "hat",
            ModalVariant::Bracket => "bracket",
        }
    }
}

type Op<E> = fn(&WeightFunction<E>) -> Result<WeightFunction<E>>;

/// The modal semiring axioms on `K^C` (hat) or `K[C]` (bracket), pointwise:
/// `f ≤ D⁻(f) ∗ f`, `D⁻(f ∗ D⁻(g)) = D⁻(f ∗ g)`, `D⁻(f) ≤ id₀`,
/// `D⁻(0) = 0`, `D⁻(f + g) = D⁻(f) + D⁻(g)`, the dual codomain laws, and
/// `D⁺(D⁻(f)) = D⁻(f)`, `D⁻(D⁺(f)) = D⁺(f)`.
///
/// The bracket variant samples from `K[C]` (a tenth of the samples are
/// `0`) and, where the summation form is available too, checks that both
/// forms agree.
pub fn check_modal<E: Send + Sync + 'static>(
    sp: &Arc<Space<E>>,
    variant: ModalVariant,
    s: FunctionSampler,
) -> Result<Report> {
    let (dom, cod): (Op<E>, Op<E>) = match variant {
        ModalVariant::Hat => {
            certify(sp)?;
            (dom_hat, cod_hat)
        }
        ModalVariant::Bracket => {
            sp.algebra().require(Capability::IdempotentAdd)?;
            if !sp.structure().is_local() {
                return Err(Error::Domain(format!("{} is not local", sp.model_name())));
            }
            (dom_bracket, cod_bracket)
        }
    };
    let hat_too = variant == ModalVariant::Bracket && certify(sp).is_ok();
    let mode = if variant == ModalVariant::Bracket { IdMode::One } else { s.mode };
    let alg = sp.algebra();
    let law = |id: &str| LawResult::new(id, sp.model_name(), format!("{}/{}", alg.name(), variant.as_str()));
    let ids = [
        "dom-expand", "dom-local", "dom-sub-one", "dom-zero", "dom-add", "cod-expand", "cod-local",
        "cod-sub-one", "cod-zero", "cod-add", "cod-of-dom", "dom-of-cod", "bracket-agrees-hat",
    ];
    let mut laws: Vec<LawResult> = ids.iter().map(|l| law(l)).collect();
    let (zero, one) = (sp.zero(), sp.id0());
    let mut rng = s.rng();
    let st = sp.structure();

    let pointwise = |law: &mut LawResult, tag: &str, l: &WeightFunction<E>, r: &WeightFunction<E>, le: bool| -> Result<()> {
        for x in 0..sp.len() {
            let (a, b) = (l.try_at(x)?, r.try_at(x)?);
            let ok = if le { alg.leq(a, b) } else { a == b };
            law.record(ok, || {
                format!(
                    "({tag}, {}): {} {} {}",
                    st.label(x),
                    alg.format(a),
                    if le { "not <=" } else { "vs" },
                    alg.format(b)
                )
            });
        }
        Ok(())
    };

    let mut cases = Vec::new();
    for k in 0..s.samples {
        let mut draw = || {
            if mode == IdMode::One && rng.gen_ratio(1, 10) {
                sp.zero()
            } else {
                random_function(sp, &mut rng, mode)
            }
        };
        let f = draw();
        let g = draw();
        cases.push((format!("sample {k}"), f, g));
    }
    if variant == ModalVariant::Hat {
        cases.extend(scaled_delta_pairs(sp));
    }

    for (tag, f, g) in &cases {
        let (tag, f, g) = (tag.as_str(), f, g);
        let (df, dg, cf, cg) = (dom(f)?, dom(g)?, cod(f)?, cod(g)?);
        let fg = convolve(f, g)?;
        pointwise(&mut laws[0], tag, f, &convolve(&df, f)?, true)?;
        pointwise(&mut laws[1], tag, &dom(&convolve(f, &dg)?.materialise()?)?, &dom(&fg.materialise()?)?, false)?;
        pointwise(&mut laws[2], tag, &df, &one, true)?;
        pointwise(&mut laws[3], tag, &dom(&zero)?, &zero, false)?;
        pointwise(&mut laws[4], tag, &dom(&conv_add(f, g)?)?, &conv_add(&df, &dg)?, false)?;
        pointwise(&mut laws[5], tag, f, &convolve(f, &cf)?, true)?;
        pointwise(&mut laws[6], tag, &cod(&convolve(&cf, g)?.materialise()?)?, &cod(&fg.materialise()?)?, false)?;
        pointwise(&mut laws[7], tag, &cf, &one, true)?;
        pointwise(&mut laws[8], tag, &cod(&zero)?, &zero, false)?;
        pointwise(&mut laws[9], tag, &cod(&conv_add(f, g)?)?, &conv_add(&cf, &cg)?, false)?;
        pointwise(&mut laws[10], tag, &cod(&df)?, &df, false)?;
        pointwise(&mut laws[11], tag, &dom(&cf)?, &cf, false)?;
        if hat_too {
            pointwise(&mut laws[12], tag, &df, &dom_hat(f)?, false)?;
            pointwise(&mut laws[12], tag, &cf, &cod_hat(f)?, false)?;
        }
    }
    let mut rep = Report::new();
    for (i, l) in laws.into_iter().enumerate() {
        if i < 12 || hat_too {
            rep.push(l.finish());
        }
    }
    Ok(rep)
}

/// `(w·δ_x, v·δ_y)` for every composable pair `t(x) = s(y)` and nonzero
/// weights `w, v`. Locality failures of the value algebra show up here
/// deterministically.
fn scaled_delta_pairs<E: Send + Sync + 'static>(
    sp: &Arc<Space<E>>,
) -> Vec<(String, WeightFunction<E>, WeightFunction<E>)> {
    let alg = sp.algebra();
    let st = sp.structure();
    let pool: Vec<Weight> = alg.sample_pool().into_iter().filter(|&w| w != alg.zero()).collect();
    let weights: Vec<Weight> = if pool.len() <= 4 {
        pool
    } else {
        let mut w = vec![alg.one()];
        w.extend(pool.into_iter().find(|&v| v != alg.one()));
        w
    };
    let scaled = |x: usize, w: Weight| {
        let mut v = vec![alg.zero(); sp.len()];
        v[x] = w;
        sp.from_values(v)
    };
    let mut out = Vec::new();
    for x in 0..sp.len() {
        for y in st.src_fiber(st.tgt(x)).iter().copied() {
            for &w in &weights {
                for &v in &weights {
                    let tag = format!("{}·{}, {}·{}", alg.format(w), st.label(x), alg.format(v), st.label(y));
                    out.push((tag, scaled(x, w), scaled(y, v)));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catoid_models::{free_monoid, path_catoid, GraphSpec};
    use crate::value_algebra::{load_finite_algebra, make_boolean, make_min_plus, NO_MODAL_DIOID};

    fn dag() -> crate::catoid_models::PathCatoid {
        path_catoid(&GraphSpec::example_dag(), 3).unwrap()
    }

    #[test]
    fn hat_is_the_source_image() {
        let g = dag();
        let sp = Space::new(&g, make_boolean());
        let st = sp.structure();
        let x = st.by_label("[x]").unwrap();
        let d = dom_hat(&sp.delta_at(x)).unwrap();
        assert_eq!(d.support().unwrap(), [st.by_label("(a)").unwrap()].into());
        let c = cod_hat(&sp.delta_at(x)).unwrap();
        assert_eq!(c.support().unwrap(), [st.by_label("(b)").unwrap()].into());
        assert!(dom_hat(&sp.zero()).unwrap().is_zero().unwrap());
    }

    #[test]
    fn truncated_universes_are_rejected() {
        let m = free_monoid(&['a'], 3);
        let sp = Space::new(&m, make_boolean());
        assert!(matches!(dom_hat(&sp.id0()), Err(Error::Domain(_))));
        assert!(dom_bracket(&sp.id0()).unwrap().equals(&sp.id0()).unwrap());
        assert!(dom_bracket(&sp.zero()).unwrap().is_zero().unwrap());
    }

    #[test]
    fn modal_suites() {
        let g = dag();
        for alg in [make_boolean(), make_min_plus()] {
            let sp = Space::new(&g, alg);
            let rep = check_modal(&sp, ModalVariant::Hat, FunctionSampler::new(2, 20)).unwrap();
            assert!(rep.is_clean(), "{rep}");
            let rep = check_modal(&sp, ModalVariant::Bracket, FunctionSampler::new(2, 20)).unwrap();
            assert!(rep.is_clean(), "{rep}");
            assert_eq!(rep.status_of("bracket-agrees-hat"), Some(crate::report::Status::Pass));
        }
        let m = free_monoid(&['a', 'b'], 3);
        let sp = Space::new(&m, make_boolean());
        assert!(check_modal(&sp, ModalVariant::Bracket, FunctionSampler::new(2, 20)).unwrap().is_clean());
    }

    #[test]
    fn dioid_without_domain_breaks_locality() {
        let alg = load_finite_algebra(NO_MODAL_DIOID).unwrap().dim(0).clone();
        let sp = Space::new(&dag(), alg);
        let rep = check_modal(&sp, ModalVariant::Hat, FunctionSampler::new(4, 40)).unwrap();
        let mut bad = rep.failed_laws();
        bad.sort();
        assert_eq!(bad, vec!["cod-local", "dom-local"], "{rep}");
    }
}
