//! The convolution algebra `K^C` of functions from a catoid into a value
//! algebra.
//!
//! A [`Space`] fixes the catoid (indexed once as a [`Structure`]) and the
//! value algebra. [`WeightFunction`]s over a space are lazy: each value is
//! computed on first use and cached per element, so a star built from a
//! convolution of stars only evaluates what is asked for.
//!
//! Equality of functions always means equality on the enumerated universe.

mod checks;
mod sample;

pub use checks::{check_conway, check_kat, check_kleene, check_semiring, check_star_forms};
pub use sample::{random_function, FunctionSampler, IdMode};

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::catoid::{Catoid, Structure};
use crate::error::{Error, Result};
use crate::value_algebra::{Capability, ValueAlgebra, Weight};

/// A catoid universe together with a value algebra.
pub struct Space<E> {
    st: Structure<E>,
    alg: ValueAlgebra,
}

impl<E> fmt::Debug for Space<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Space({} / {})", self.st.name(), self.alg.name())
    }
}

impl<E: Clone + Eq + std::hash::Hash + Ord + fmt::Debug> Space<E> {
    pub fn new<C: Catoid<Elem = E> + ?Sized>(c: &C, alg: ValueAlgebra) -> Arc<Self> {
        Arc::new(Space { st: Structure::of(c), alg })
    }
}

impl<E> Space<E> {
    pub fn from_structure(st: Structure<E>, alg: ValueAlgebra) -> Arc<Self> {
        Arc::new(Space { st, alg })
    }

    pub fn structure(&self) -> &Structure<E> {
        &self.st
    }

    pub fn algebra(&self) -> &ValueAlgebra {
        &self.alg
    }

    pub fn len(&self) -> usize {
        self.st.len()
    }

    pub fn is_empty(&self) -> bool {
        self.st.is_empty()
    }

    pub fn model_name(&self) -> &str {
        self.st.name()
    }
}

/// Constructors. They take `&Arc<Space>` because every function keeps its
/// space alive.
#[allow(clippy::wrong_self_convention)]
pub trait SpaceExt<E> {
    fn zero(&self) -> WeightFunction<E>;
    /// `x ↦ [x ∈ C₀]`, the convolution unit.
    fn id0(&self) -> WeightFunction<E>;
    /// `x ↦ [x = y]`, with `y` given by index.
    fn delta_at(&self, y: usize) -> WeightFunction<E>;
    /// `χ_A`, with `A` given by indices.
    fn indicator_at(&self, a: &BTreeSet<usize>) -> WeightFunction<E>;
    fn from_values(&self, v: Vec<Weight>) -> WeightFunction<E>;
    fn from_index_rule(&self, rule: impl Fn(usize) -> Weight + Send + Sync + 'static) -> WeightFunction<E>;
    /// A lazy rule that may fail, e.g. because it reads a star.
    fn from_fallible_rule(&self, rule: impl Fn(usize) -> Result<Weight> + Send + Sync + 'static) -> WeightFunction<E>;
}

impl<E: Send + Sync + 'static> SpaceExt<E> for Arc<Space<E>> {
    fn zero(&self) -> WeightFunction<E> {
        let z = self.alg.zero();
        self.from_values(vec![z; self.len()])
    }

    fn id0(&self) -> WeightFunction<E> {
        let (z, o) = (self.alg.zero(), self.alg.one());
        self.from_values((0..self.len()).map(|i| if self.st.is_identity(i) { o } else { z }).collect())
    }

    fn delta_at(&self, y: usize) -> WeightFunction<E> {
        self.indicator_at(&BTreeSet::from([y]))
    }

    fn indicator_at(&self, a: &BTreeSet<usize>) -> WeightFunction<E> {
        let (z, o) = (self.alg.zero(), self.alg.one());
        self.from_values((0..self.len()).map(|i| if a.contains(&i) { o } else { z }).collect())
    }

    fn from_values(&self, v: Vec<Weight>) -> WeightFunction<E> {
        assert_eq!(v.len(), self.len(), "value table does not match the universe");
        WeightFunction::with_rule(self.clone(), Rule::Values(v))
    }

    fn from_index_rule(&self, rule: impl Fn(usize) -> Weight + Send + Sync + 'static) -> WeightFunction<E> {
        WeightFunction::with_rule(self.clone(), Rule::Map(Arc::new(move |i| Ok(rule(i)))))
    }

    fn from_fallible_rule(&self, rule: impl Fn(usize) -> Result<Weight> + Send + Sync + 'static) -> WeightFunction<E> {
        WeightFunction::with_rule(self.clone(), Rule::Map(Arc::new(rule)))
    }
}

impl<E: Clone + Eq + std::hash::Hash + Send + Sync + 'static> Space<E> {
    /// `x ↦ [x = y]`.
    pub fn delta(self: &Arc<Self>, y: &E) -> Result<WeightFunction<E>> {
        Ok(self.delta_at(self.st.position(y)?))
    }

    /// `χ_A`.
    pub fn indicator<'a>(self: &Arc<Self>, a: impl IntoIterator<Item = &'a E>) -> Result<WeightFunction<E>>
    where
        E: 'a,
    {
        let set = a.into_iter().map(|e| self.st.position(e)).collect::<Result<BTreeSet<_>>>()?;
        Ok(self.indicator_at(&set))
    }

    /// The function that is `w` at the listed elements and zero elsewhere.
    pub fn from_pairs<'a>(self: &Arc<Self>, pairs: impl IntoIterator<Item = (&'a E, Weight)>) -> Result<WeightFunction<E>>
    where
        E: 'a,
    {
        let mut v = vec![self.alg.zero(); self.len()];
        for (e, w) in pairs {
            v[self.st.position(e)?] = w;
        }
        Ok(self.from_values(v))
    }

    /// A function given by a rule on elements, evaluated lazily.
    pub fn from_rule(self: &Arc<Self>, rule: impl Fn(&E) -> Weight + Send + Sync + 'static) -> WeightFunction<E> {
        let sp = self.clone();
        WeightFunction::with_rule(self.clone(), Rule::Map(Arc::new(move |i| Ok(rule(sp.st.elem(i))))))
    }
}

/// How a star is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StarForm {
    /// `f*(x) = f(s(x))* · Σ_{y ≠ s(x)} f(y) · f*(z)`
    Recursive,
    /// `f*(x) = (Σ_{z ≠ t(x)} f*(y) · f(z)) · f(t(x))*`
    Dual,
    /// The sum over all non-identity decompositions, read off directly.
    Unfolded,
    /// The recursive form for `f ∈ K[C]`, where `f(s(x))* = 1`.
    Path,
}

impl StarForm {
    pub fn as_str(self) -> &'static str {
        match self {
            StarForm::Recursive => "recursive",
            StarForm::Dual => "dual",
            StarForm::Unfolded => "unfolded",
            StarForm::Path => "path",
        }
    }
}

type MapFn = Arc<dyn Fn(usize) -> Result<Weight> + Send + Sync>;

enum Rule<E> {
    Values(Vec<Weight>),
    Map(MapFn),
    Add(WeightFunction<E>, WeightFunction<E>),
    Conv(WeightFunction<E>, WeightFunction<E>),
    Star(WeightFunction<E>, StarForm, usize),
}

struct Node<E> {
    rule: Rule<E>,
    cache: Vec<OnceLock<Weight>>,
}

/// A total function from the universe into the value algebra.
pub struct WeightFunction<E> {
    space: Arc<Space<E>>,
    node: Arc<Node<E>>,
}

impl<E> Clone for WeightFunction<E> {
    fn clone(&self) -> Self {
        WeightFunction { space: self.space.clone(), node: self.node.clone() }
    }
}

impl<E> fmt::Debug for WeightFunction<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alg = &self.space.alg;
        let vals: Vec<String> = (0..self.space.len())
            .map(|i| match self.try_at(i) {
                Ok(w) => format!("{}:{}", self.space.st.label(i), alg.format(w)),
                Err(_) => format!("{}:?", self.space.st.label(i)),
            })
            .collect();
        write!(f, "{{{}}}", vals.join(", "))
    }
}

impl<E> WeightFunction<E> {
    fn with_rule(space: Arc<Space<E>>, rule: Rule<E>) -> Self {
        let n = if matches!(rule, Rule::Values(_)) { 0 } else { space.len() };
        let cache = (0..n).map(|_| OnceLock::new()).collect();
        WeightFunction { space, node: Arc::new(Node { rule, cache }) }
    }

    pub fn space(&self) -> &Arc<Space<E>> {
        &self.space
    }

    fn alg(&self) -> &ValueAlgebra {
        &self.space.alg
    }

    /// The value at the element with index `i`.
    pub fn try_at(&self, i: usize) -> Result<Weight> {
        self.eval(i, 0)
    }

    /// Like [`try_at`](Self::try_at), panicking on a model error.
    pub fn at(&self, i: usize) -> Weight {
        self.try_at(i).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn values(&self) -> Result<Vec<Weight>> {
        (0..self.space.len()).map(|i| self.try_at(i)).collect()
    }

    /// Pointwise equality on the universe.
    pub fn equals(&self, other: &WeightFunction<E>) -> Result<bool> {
        for i in 0..self.space.len() {
            if self.try_at(i)? != other.try_at(i)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Pointwise order on the universe.
    pub fn leq(&self, other: &WeightFunction<E>) -> Result<bool> {
        for i in 0..self.space.len() {
            if !self.alg().leq(self.try_at(i)?, other.try_at(i)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn support(&self) -> Result<BTreeSet<usize>> {
        let z = self.alg().zero();
        let mut s = BTreeSet::new();
        for i in 0..self.space.len() {
            if self.try_at(i)? != z {
                s.insert(i);
            }
        }
        Ok(s)
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.support()?.is_empty())
    }

    /// Evaluates every value once, so later reads are lookups.
    pub fn materialise(&self) -> Result<WeightFunction<E>>
    where
        E: Send + Sync + 'static,
    {
        Ok(self.space.from_values(self.values()?))
    }

    /// The same values viewed over another space with the same universe.
    pub fn rehome(&self, space: &Arc<Space<E>>) -> WeightFunction<E>
    where
        E: Send + Sync + 'static,
    {
        assert_eq!(space.len(), self.space.len(), "universes differ");
        let f = self.clone();
        WeightFunction::with_rule(space.clone(), Rule::Map(Arc::new(move |i| f.try_at(i))))
    }

    pub fn add(&self, g: &WeightFunction<E>) -> WeightFunction<E> {
        conv_add(self, g).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn conv(&self, g: &WeightFunction<E>) -> WeightFunction<E> {
        convolve(self, g).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn star(&self) -> WeightFunction<E> {
        star_recursive(self).unwrap_or_else(|e| panic!("{e}"))
    }

    fn eval(&self, i: usize, depth: usize) -> Result<Weight> {
        let node = &*self.node;
        if let Rule::Values(v) = &node.rule {
            return Ok(v[i]);
        }
        if let Some(&w) = node.cache[i].get() {
            return Ok(w);
        }
        let alg = self.alg();
        let st = &self.space.st;
        let w = match &node.rule {
            Rule::Values(_) => unreachable!(),
            Rule::Map(m) => m(i)?,
            Rule::Add(f, g) => alg.add(f.try_at(i)?, g.try_at(i)?),
            Rule::Conv(f, g) => {
                let mut acc = alg.zero();
                for &(y, z) in st.decomps(i) {
                    acc = alg.add(acc, alg.mul(f.try_at(y)?, g.try_at(z)?));
                }
                acc
            }
            Rule::Star(f, form, cap) => {
                if depth > *cap {
                    return Err(Error::Moebius(format!(
                        "star recursion at {} exceeds the length bound {}",
                        st.label(i),
                        cap
                    )));
                }
                self.star_at(f, *form, i, depth)?
            }
        };
        let _ = node.cache[i].set(w);
        Ok(w)
    }

    fn star_at(&self, f: &WeightFunction<E>, form: StarForm, x: usize, depth: usize) -> Result<Weight> {
        let alg = self.alg();
        let st = &self.space.st;
        if st.is_identity(x) {
            return Ok(match form {
                StarForm::Path => alg.one(),
                _ => alg.star(f.try_at(x)?),
            });
        }
        let (s, t) = (st.src(x), st.tgt(x));
        match form {
            StarForm::Recursive | StarForm::Path => {
                let mut acc = alg.zero();
                for &(y, z) in st.decomps(x) {
                    if y != s {
                        acc = alg.add(acc, alg.mul(f.try_at(y)?, self.eval(z, depth + 1)?));
                    }
                }
                Ok(if form == StarForm::Path { acc } else { alg.mul(alg.star(f.try_at(s)?), acc) })
            }
            StarForm::Dual => {
                let mut acc = alg.zero();
                for &(y, z) in st.decomps(x) {
                    if z != t {
                        acc = alg.add(acc, alg.mul(self.eval(y, depth + 1)?, f.try_at(z)?));
                    }
                }
                Ok(alg.mul(acc, alg.star(f.try_at(t)?)))
            }
            StarForm::Unfolded => {
                let mut acc = alg.zero();
                for i in 1..=st.length(x)? {
                    for tuple in st.decompose_n(x, i) {
                        let mut term = alg.one();
                        for &xk in &tuple {
                            term = alg.mul(term, alg.star(f.try_at(st.src(xk))?));
                            term = alg.mul(term, f.try_at(xk)?);
                        }
                        let last = *tuple.last().expect("i >= 1");
                        term = alg.mul(term, alg.star(f.try_at(st.tgt(last))?));
                        acc = alg.add(acc, term);
                    }
                }
                Ok(acc)
            }
        }
    }
}

fn same_space<E>(f: &WeightFunction<E>, g: &WeightFunction<E>) -> Result<()> {
    if Arc::ptr_eq(&f.space, &g.space) {
        Ok(())
    } else {
        Err(Error::Mismatch(format!(
            "functions live over different spaces ({:?} and {:?})",
            f.space, g.space
        )))
    }
}

/// `(f + g)(x) = f(x) + g(x)`.
pub fn conv_add<E>(f: &WeightFunction<E>, g: &WeightFunction<E>) -> Result<WeightFunction<E>> {
    same_space(f, g)?;
    Ok(WeightFunction::with_rule(f.space.clone(), Rule::Add(f.clone(), g.clone())))
}

/// `(f ∗ g)(x) = Σ_{x ∈ y ⊙ z} f(y) · g(z)`, summed in `decompose2` order.
pub fn convolve<E>(f: &WeightFunction<E>, g: &WeightFunction<E>) -> Result<WeightFunction<E>> {
    same_space(f, g)?;
    f.space.st.finitely_decomposable()?;
    Ok(WeightFunction::with_rule(f.space.clone(), Rule::Conv(f.clone(), g.clone())))
}

fn star_with<E>(f: &WeightFunction<E>, form: StarForm) -> Result<WeightFunction<E>> {
    let sp = &f.space;
    sp.alg.require(Capability::Star)?;
    sp.st.moebius()?;
    let cap = sp.st.max_length()? + 1;
    Ok(WeightFunction::with_rule(sp.clone(), Rule::Star(f.clone(), form, cap)))
}

/// The star by recursion on length: `f*(e) = f(e)*` on identities and
/// `f*(x) = f(s(x))* · Σ_{x ∈ y ⊙ z, y ≠ s(x)} f(y) · f*(z)` otherwise.
pub fn star_recursive<E>(f: &WeightFunction<E>) -> Result<WeightFunction<E>> {
    star_with(f, StarForm::Recursive)
}

/// The mirror-image recursion, peeling factors off the right.
pub fn star_dual<E>(f: &WeightFunction<E>) -> Result<WeightFunction<E>> {
    star_with(f, StarForm::Dual)
}

/// The closed sum over all decompositions `x ∈ x₁ ⋯ xᵢ` into non-identities,
/// each term `f(s(x₁))* f(x₁) f(s(x₂))* ⋯ f(xᵢ) f(t(xᵢ))*`.
///
/// Each tuple is counted once, whatever the number of ways it composes to
/// `x`. It therefore matches the recursive forms when addition is
/// idempotent or the catoid is functional, but can undercount otherwise
/// (shuffles with `ℕ ∪ {∞}` weights, for instance).
///
/// Exponential in length. Used as an oracle for the recursive forms.
pub fn star_unfolded<E>(f: &WeightFunction<E>) -> Result<WeightFunction<E>> {
    star_with(f, StarForm::Unfolded)
}

/// The star on `K[C]`: `f*(e) = 1` and `f*(x) = Σ_{y ≠ s(x)} f(y) · f*(z)`.
pub fn star_path<E>(f: &WeightFunction<E>) -> Result<WeightFunction<E>> {
    if !is_in_bracket(f)? {
        return Err(Error::Domain("star_path needs a function in K[C]".into()));
    }
    star_with(f, StarForm::Path)
}

pub fn star_form<E>(f: &WeightFunction<E>, form: StarForm) -> Result<WeightFunction<E>> {
    match form {
        StarForm::Path => star_path(f),
        _ => star_with(f, form),
    }
}

/// True when `f` is zero or maps every identity to 1.
pub fn is_in_bracket<E>(f: &WeightFunction<E>) -> Result<bool> {
    if f.is_zero()? {
        return Ok(true);
    }
    let one = f.alg().one();
    for &e in f.space.st.identities() {
        if f.try_at(e)? != one {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The identities `P` on which a test `χ_P` is 1. Errors unless `p` is
/// 0/1-valued and vanishes off `C₀`.
pub fn test_set<E>(p: &WeightFunction<E>) -> Result<BTreeSet<usize>> {
    let alg = p.alg();
    let (z, o) = (alg.zero(), alg.one());
    let st = &p.space.st;
    let mut set = BTreeSet::new();
    for i in 0..st.len() {
        let w = p.try_at(i)?;
        if w == z {
            continue;
        }
        if w != o || !st.is_identity(i) {
            return Err(Error::Domain(format!(
                "not a test: value {} at {}",
                alg.format(w),
                st.label(i)
            )));
        }
        set.insert(i);
    }
    Ok(set)
}

/// `χ_P ↦ χ_{C₀ − P}`.
pub fn test_complement<E: Send + Sync + 'static>(p: &WeightFunction<E>) -> Result<WeightFunction<E>> {
    let set = test_set(p)?;
    let rest: BTreeSet<usize> = p.space.st.identities().iter().copied().filter(|e| !set.contains(e)).collect();
    Ok(p.space.indicator_at(&rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catoid_models::{free_monoid, guarded_string_catoid, path_catoid, GraphSpec};
    use crate::value_algebra::{make_boolean, make_min_plus};

    #[test]
    fn convolution_of_letters() {
        let m = free_monoid(&['a'], 3);
        let sp = Space::new(&m, make_min_plus());
        let f = sp.from_pairs([(&m.word("a"), Weight::Int(4))]).unwrap();
        let aa = sp.structure().by_label("aa").unwrap();
        // splits (ε,aa), (a,a), (aa,ε); only (a,a) is finite
        assert_eq!(f.conv(&f).at(aa), Weight::Int(8));
        let g = sp.id0().conv(&f);
        assert!(g.equals(&f).unwrap());
    }

    #[test]
    fn path_star_sums_the_single_decomposition() {
        let g = path_catoid(&GraphSpec::example_chain(), 4).unwrap();
        let sp = Space::new(&g, make_min_plus());
        let f = sp.from_rule(|p: &crate::catoid_models::Path| match p.edges.as_slice() {
            [] => Weight::Int(0),
            [0] => Weight::Int(2),
            [1] => Weight::Int(3),
            _ => Weight::Inf,
        });
        let xy = sp.structure().by_label("[x,y]").unwrap();
        for form in [StarForm::Recursive, StarForm::Dual, StarForm::Unfolded, StarForm::Path] {
            assert_eq!(star_form(&f, form).unwrap().at(xy), Weight::Int(5), "{form:?}");
        }
    }

    #[test]
    fn zero_star_is_unit_and_brackets() {
        let g = guarded_string_catoid(&["t1", "t2"], &["p"], 2);
        let sp = Space::new(&g, make_boolean());
        let z = sp.zero();
        assert!(star_dual(&z).unwrap().equals(&sp.id0()).unwrap());
        assert!(is_in_bracket(&z).unwrap());
        assert!(is_in_bracket(&sp.id0()).unwrap());
        let x = sp.structure().by_label("t1.p.t2").unwrap();
        assert!(!is_in_bracket(&sp.delta_at(x)).unwrap());
        assert!(star_path(&sp.delta_at(x)).is_err());
    }

    #[test]
    fn complements() {
        let g = guarded_string_catoid(&["t1", "t2"], &["p"], 1);
        let sp = Space::new(&g, make_boolean());
        assert!(test_complement(&sp.id0()).unwrap().is_zero().unwrap());
        assert!(test_complement(&sp.zero()).unwrap().equals(&sp.id0()).unwrap());
        let t1 = sp.structure().by_label("t1").unwrap();
        let t2 = sp.structure().by_label("t2").unwrap();
        let c = test_complement(&sp.delta_at(t1)).unwrap();
        assert_eq!(c.support().unwrap(), BTreeSet::from([t2]));
        let x = sp.structure().by_label("t1.p.t2").unwrap();
        assert!(test_complement(&sp.delta_at(x)).is_err());
    }

    #[test]
    fn unfolded_form_counts_tuples_once() {
        // a ⧢ b ⧢ a reaches aba along 5 chains but from only 3 tuples
        let sh = crate::catoid_models::shuffle_catoid(&['a', 'b'], 3);
        let sp = Space::new(&sh, crate::value_algebra::make_nat_inf_conway());
        let st = sp.structure();
        let one = sp.algebra().one();
        let f = sp.from_index_rule(move |i| if i == 1 || i == 2 { one } else { Weight::Int(0) });
        let aba = st.by_label("aba").unwrap();
        assert_eq!((st.label(1), st.label(2)), ("a", "b"));
        assert_eq!(star_recursive(&f).unwrap().at(aba), Weight::Int(5));
        assert_eq!(star_dual(&f).unwrap().at(aba), Weight::Int(5));
        assert_eq!(star_unfolded(&f).unwrap().at(aba), Weight::Int(3));
        let b = Space::new(&sh, make_boolean());
        let g = b.from_index_rule(|i| Weight::Bool(i == 1 || i == 2));
        assert!(star_recursive(&g).unwrap().equals(&star_unfolded(&g).unwrap()).unwrap());
    }

    #[test]
    fn spaces_do_not_mix() {
        let m = free_monoid(&['a'], 2);
        let a = Space::new(&m, make_boolean());
        let b = Space::new(&m, make_boolean());
        assert!(matches!(conv_add(&a.id0(), &b.id0()), Err(Error::Mismatch(_))));
    }

    #[test]
    fn pair_groupoid_has_no_star() {
        let g = crate::catoid_models::pair_groupoid(&["a", "b"]);
        let sp = Space::new(&g, make_boolean());
        let e = star_recursive(&sp.id0()).unwrap_err().to_string();
        assert!(e.starts_with("model fails Möbius condition (2): identity decomposable"), "{e}");
        assert!(convolve(&sp.id0(), &sp.id0()).is_ok());
    }
}
