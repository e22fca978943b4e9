use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use super::NCatoid;
use crate::catoid::Structure;
use crate::convolution::{
    check_kleene, check_semiring, conv_add, convolve, random_function, star_recursive, FunctionSampler,
    Space, SpaceExt, WeightFunction,
};
use crate::error::{Error, Result};
use crate::modal_convolution::{certify, check_modal, cod_hat, dom_hat, ModalVariant};
use crate::report::{LawResult, Report};
use crate::value_algebra::{Capability, NValueAlgebra};

/// Per-dimension convolution structure over one function space.
///
/// Dimension `i` has its own [`Space`] (the `i`-th catoid structure paired
/// with the `i`-th value algebra). All spaces share the universe order, so
/// a function from any of them can be used in any dimension.
#[derive(Debug)]
pub struct NBundle<E> {
    spaces: Vec<Arc<Space<E>>>,
    alg: NValueAlgebra,
    name: String,
    modal: bool,
}

/// Two convolution structures on one function space, without domain.
pub type InterchangeConvolution<E> = NBundle<E>;

fn spaces_of<N: NCatoid>(nc: &N, alg: &NValueAlgebra) -> Result<Vec<Arc<Space<N::Elem>>>> {
    if alg.n() != nc.dims() {
        return Err(Error::Mismatch(format!(
            "{} has {} dimensions but '{}' has {}",
            nc.name(),
            nc.dims(),
            alg.name(),
            alg.n()
        )));
    }
    let mut out = Vec::new();
    for i in 0..nc.dims() {
        let st = Structure::of(&nc.dim(i));
        st.moebius().map_err(|e| Error::Moebius(format!("dimension {i}: {e}")))?;
        alg.dim(i)
            .require(Capability::Star)
            .map_err(|e| Error::Capability(format!("dimension {i}: {e}")))?;
        out.push(Space::from_structure(st, alg.dim(i).clone()));
    }
    Ok(out)
}

/// `*₀`, `*₁`, `id₀`, `id₁` and the two stars on `K^C` for a Möbius
/// 2-catoid and an interchange Kleene algebra. Fails when `1₀ ≤ 1₁` does
/// not hold in `K`.
pub fn build_interchange_convolution<N: NCatoid>(tc: &N, k: &NValueAlgebra) -> Result<InterchangeConvolution<N::Elem>> {
    if tc.dims() != 2 {
        return Err(Error::Mismatch(format!("{} is not 2-dimensional", tc.name())));
    }
    let spaces = spaces_of(tc, k)?;
    let (a0, a1) = (k.dim(0), k.dim(1));
    if !a0.leq(a0.one(), a1.one()) {
        return Err(Error::Domain(format!(
            "'{}' violates 1_0 <= 1_1: {} vs {}",
            k.name(),
            a0.format(a0.one()),
            a0.format(a1.one())
        )));
    }
    Ok(NBundle { spaces, alg: k.clone(), name: tc.name(), modal: false })
}

/// The full n-dimensional bundle: per dimension convolution, unit, star and
/// the summation-form domain and codomain. Needs each dimension local,
/// Möbius and of finite valency, and each value algebra modal.
pub fn build_n_convolution<N: NCatoid>(nc: &N, a: &NValueAlgebra) -> Result<NBundle<N::Elem>> {
    let spaces = spaces_of(nc, a)?;
    for (i, sp) in spaces.iter().enumerate() {
        certify(sp).map_err(|e| match e {
            Error::Capability(m) => Error::Capability(format!("dimension {i}: {m}")),
            other => Error::Domain(format!("dimension {i}: {other}")),
        })?;
    }
    Ok(NBundle { spaces, alg: a.clone(), name: nc.name(), modal: true })
}

impl<E: Send + Sync + 'static> NBundle<E> {
    pub fn n(&self) -> usize {
        self.spaces.len()
    }

    pub fn space(&self, i: usize) -> &Arc<Space<E>> {
        &self.spaces[i]
    }

    pub fn algebra(&self) -> &NValueAlgebra {
        &self.alg
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    fn home(&self, i: usize, f: &WeightFunction<E>) -> WeightFunction<E> {
        if Arc::ptr_eq(f.space(), &self.spaces[i]) {
            f.clone()
        } else {
            f.rehome(&self.spaces[i])
        }
    }

    pub fn zero(&self) -> WeightFunction<E> {
        self.spaces[0].zero()
    }

    /// The unit of `*_i`.
    pub fn id(&self, i: usize) -> WeightFunction<E> {
        self.spaces[i].id0()
    }

    pub fn add(&self, f: &WeightFunction<E>, g: &WeightFunction<E>) -> Result<WeightFunction<E>> {
        conv_add(&self.home(0, f), &self.home(0, g))
    }

    pub fn conv(&self, i: usize, f: &WeightFunction<E>, g: &WeightFunction<E>) -> Result<WeightFunction<E>> {
        convolve(&self.home(i, f), &self.home(i, g))
    }

    pub fn star(&self, i: usize, f: &WeightFunction<E>) -> Result<WeightFunction<E>> {
        star_recursive(&self.home(i, f))
    }

    pub fn dom(&self, i: usize, f: &WeightFunction<E>) -> Result<WeightFunction<E>> {
        self.need_modal()?;
        dom_hat(&self.home(i, f))
    }

    pub fn cod(&self, i: usize, f: &WeightFunction<E>) -> Result<WeightFunction<E>> {
        self.need_modal()?;
        cod_hat(&self.home(i, f))
    }

    fn need_modal(&self) -> Result<()> {
        if self.modal {
            Ok(())
        } else {
            Err(Error::Capability(format!("bundle over {} has no domain/codomain", self.name)))
        }
    }

    fn law(&self, id: String) -> LawResult {
        LawResult::new(id, self.name.clone(), self.alg.name())
    }

    fn random(&self, rng: &mut ChaCha8Rng, s: FunctionSampler) -> WeightFunction<E> {
        random_function(&self.spaces[0], rng, s.mode)
    }

    /// Small fixed functions: zero, the units and every `δ_x`.
    fn basis(&self) -> Vec<WeightFunction<E>> {
        let mut v = vec![self.zero()];
        v.extend((0..self.n()).map(|i| self.id(i)));
        v.extend((0..self.spaces[0].len()).map(|x| self.spaces[0].delta_at(x)));
        v
    }

    fn eq(&self, law: &mut LawResult, tag: &str, l: &WeightFunction<E>, r: &WeightFunction<E>) -> Result<()> {
        self.cmp(law, tag, l, r, false)
    }

    fn le(&self, law: &mut LawResult, tag: &str, l: &WeightFunction<E>, r: &WeightFunction<E>) -> Result<()> {
        self.cmp(law, tag, l, r, true)
    }

    fn cmp(&self, law: &mut LawResult, tag: &str, l: &WeightFunction<E>, r: &WeightFunction<E>, le: bool) -> Result<()> {
        let alg = self.alg.base();
        let st = self.spaces[0].structure();
        for x in 0..st.len() {
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

/// `(f *₁ g) *₀ (h *₁ k) ≤ (f *₀ h) *₁ (g *₀ k)` for sampled quadruples,
/// and `id₀ ≤ id₁`, pointwise. Works on any bundle of dimension ≥ 2, for
/// every pair `i < j`.
pub fn check_interchange<E: Send + Sync + 'static>(b: &NBundle<E>, s: FunctionSampler) -> Result<Report> {
    let mut rep = Report::new();
    let mut rng = s.rng();
    for i in 0..b.n() {
        for j in i + 1..b.n() {
            let mut ic = b.law(format!("interchange.{i}.{j}"));
            let mut uo = b.law(format!("unit-order.{i}.{j}"));
            b.le(&mut uo, "units", &b.id(i), &b.id(j))?;
            for k in 0..s.samples {
                let tag = format!("sample {k}");
                let (f, g, h, q) = (b.random(&mut rng, s), b.random(&mut rng, s), b.random(&mut rng, s), b.random(&mut rng, s));
                let lhs = b.conv(i, &b.conv(j, &f, &g)?, &b.conv(j, &h, &q)?)?;
                let rhs = b.conv(j, &b.conv(i, &f, &h)?, &b.conv(i, &g, &q)?)?;
                b.le(&mut ic, &tag, &lhs, &rhs)?;
            }
            rep.push(ic.finish());
            rep.push(uo.finish());
        }
    }
    Ok(rep)
}

/// The n-semiring and n-Kleene axioms on the bundle.
///
/// Per dimension `i`: the semiring, modal and Kleene suites (laws suffixed
/// `.i`) and the second domain lemma `(D⁻ᵢ(f) *ᵢ g)(x) = D⁻ᵢ(f)(sᵢ(x)) ·ᵢ g(x)`.
/// For `i ≠ j`: lax functoriality of `D⁻ᵢ`, `D⁺ᵢ` over `*_j` and the first
/// domain lemma `D⁻ᵢ(f)(x) ≤ D⁻ᵢ(f)(x) ·_j D⁻ᵢ(f)(x)`. For `i < j`:
/// interchange, unit order, `D⁻_j ∘ D⁻ᵢ = D⁻ᵢ` and its dual, both closure
/// axioms and both star-domain axioms
/// `D⁻ᵢ(f) *ᵢ g^{*j} ≤ (D⁻ᵢ(f) *ᵢ g)^{*j}` and
/// `g^{*j} *ᵢ D⁺ᵢ(f) ≤ (g *ᵢ D⁺ᵢ(f))^{*j}`.
///
/// Two-argument laws run over every pair of basis functions (zero, units,
/// all `δ_x`) and over `s.samples` random pairs.
pub fn check_n_axioms<E: Send + Sync + 'static>(b: &NBundle<E>, s: FunctionSampler) -> Result<Report> {
    b.need_modal()?;
    let mut rep = Report::new();
    for i in 0..b.n() {
        let sp = b.space(i);
        rep.extend(suffixed(check_semiring(sp, s)?, i));
        rep.extend(suffixed(check_modal(sp, ModalVariant::Hat, s)?, i));
        rep.extend(suffixed(check_kleene(sp, s)?, i));
    }

    let mut rng = s.rng();
    let basis = b.basis();
    let mut pairs: Vec<(String, WeightFunction<E>, WeightFunction<E>)> = Vec::new();
    for (p, f) in basis.iter().enumerate() {
        for (q, g) in basis.iter().enumerate() {
            pairs.push((format!("basis {p},{q}"), f.clone(), g.clone()));
        }
    }
    for k in 0..s.samples {
        pairs.push((format!("sample {k}"), b.random(&mut rng, s), b.random(&mut rng, s)));
    }

    let n = b.n();
    let alg = &b.alg;
    for i in 0..n {
        let st = b.space(i).structure();
        let mut dom2 = b.law(format!("dom-2.{i}"));
        for (tag, f, g) in &pairs {
            let df = b.dom(i, f)?;
            let lhs = b.conv(i, &df, g)?;
            let ai = alg.dim(i);
            let rhs = b.space(0).from_fallible_rule({
                let (df, g) = (df.clone(), g.clone());
                let src: Vec<usize> = (0..st.len()).map(|x| st.src(x)).collect();
                let ai = ai.clone();
                move |x| Ok(ai.mul(df.try_at(src[x])?, g.try_at(x)?))
            });
            b.eq(&mut dom2, tag, &lhs, &rhs)?;
        }
        rep.push(dom2.finish());

        for j in 0..n {
            if i == j {
                continue;
            }
            let mut lax_d = b.law(format!("dom-lax.{i}.{j}"));
            let mut lax_c = b.law(format!("cod-lax.{i}.{j}"));
            let mut dom1 = b.law(format!("dom-1.{i}.{j}"));
            let aj = alg.dim(j).clone();
            for (tag, f, g) in &pairs {
                let fg = b.conv(j, f, g)?;
                b.le(&mut lax_d, tag, &b.dom(i, &fg)?, &b.conv(j, &b.dom(i, f)?, &b.dom(i, g)?)?)?;
                b.le(&mut lax_c, tag, &b.cod(i, &fg)?, &b.conv(j, &b.cod(i, f)?, &b.cod(i, g)?)?)?;
                let df = b.dom(i, f)?;
                let sq = {
                    let (df, aj) = (df.clone(), aj.clone());
                    b.space(0).from_fallible_rule(move |x| {
                        let v = df.try_at(x)?;
                        Ok(aj.mul(v, v))
                    })
                };
                b.le(&mut dom1, tag, &df, &sq)?;
            }
            rep.push(lax_d.finish());
            rep.push(lax_c.finish());
            rep.push(dom1.finish());
        }

        for j in i + 1..n {
            let mut dfix = b.law(format!("dom-fix.{i}.{j}"));
            let mut cfix = b.law(format!("cod-fix.{i}.{j}"));
            let mut dcl = b.law(format!("dom-closure.{i}.{j}"));
            let mut ccl = b.law(format!("cod-closure.{i}.{j}"));
            let mut sd = b.law(format!("star-dom.{i}.{j}"));
            let mut sc = b.law(format!("star-cod.{i}.{j}"));
            for (tag, f, g) in &pairs {
                let (dif, cif) = (b.dom(i, f)?, b.cod(i, f)?);
                b.eq(&mut dfix, tag, &b.dom(j, &dif)?, &dif)?;
                b.eq(&mut cfix, tag, &b.cod(j, &cif)?, &cif)?;
                let p = b.conv(i, &b.dom(j, f)?, &b.dom(j, g)?)?;
                b.eq(&mut dcl, tag, &b.dom(j, &p)?, &p)?;
                let p = b.conv(i, &b.cod(j, f)?, &b.cod(j, g)?)?;
                b.eq(&mut ccl, tag, &b.cod(j, &p)?, &p)?;
                let lhs = b.conv(i, &dif, &b.star(j, g)?)?;
                let rhs = b.star(j, &b.conv(i, &dif, g)?)?;
                b.le(&mut sd, tag, &lhs, &rhs)?;
                let lhs = b.conv(i, &b.star(j, g)?, &cif)?;
                let rhs = b.star(j, &b.conv(i, g, &cif)?)?;
                b.le(&mut sc, tag, &lhs, &rhs)?;
            }
            for l in [dfix, cfix, dcl, ccl, sd, sc] {
                rep.push(l.finish());
            }
        }
    }
    rep.extend(check_interchange(b, s)?);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catoid_models::{globe_2category, shuffle_concat_2catoid, GlobeSpec};
    use crate::value_algebra::{make_boolean, make_min_plus};

    fn boolean2() -> NValueAlgebra {
        NValueAlgebra::uniform(make_boolean(), 2)
    }

    #[test]
    fn shuffle_concat_interchange() {
        let sc = shuffle_concat_2catoid(&['a', 'b'], 3);
        let ic = build_interchange_convolution(&sc, &boolean2()).unwrap();
        let rep = check_interchange(&ic, FunctionSampler::new(9, 20)).unwrap();
        assert!(rep.is_clean(), "{rep}");
        assert!(build_n_convolution(&sc, &boolean2()).is_err());
        assert!(check_n_axioms(&ic, FunctionSampler::new(1, 1)).is_err());
    }

    #[test]
    fn star_zero_is_language_star() {
        let sc = shuffle_concat_2catoid(&['a', 'b'], 3);
        let ic = build_interchange_convolution(&sc, &boolean2()).unwrap();
        let st = ic.space(0).structure();
        let a = st.by_label("a").unwrap();
        let s = ic.star(0, &ic.space(0).delta_at(a)).unwrap();
        let sup: Vec<&str> = s.support().unwrap().into_iter().map(|i| st.label(i)).collect();
        assert_eq!(sup, vec!["eps", "a", "aa", "aaa"]);
    }

    #[test]
    fn globe_bundle_is_clean() {
        let g = globe_2category(&GlobeSpec::example()).unwrap();
        let b = build_n_convolution(&g, &boolean2()).unwrap();
        let rep = check_n_axioms(&b, FunctionSampler::new(3, 10)).unwrap();
        assert!(rep.is_clean(), "{rep}");
        assert!(rep.get("dom-closure.0.1").unwrap().checked > 0);
    }

    #[test]
    fn tropical_globe_bundle_is_clean() {
        let g = globe_2category(&GlobeSpec::example()).unwrap();
        let b = build_n_convolution(&g, &NValueAlgebra::uniform(make_min_plus(), 2)).unwrap();
        let rep = check_n_axioms(&b, FunctionSampler::new(5, 5)).unwrap();
        assert!(rep.is_clean(), "{rep}");
    }
}
