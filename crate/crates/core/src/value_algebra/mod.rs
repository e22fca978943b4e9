//! Value algebras: the coefficient structures that weight functions take
//! values in.
//!
//! A [`ValueAlgebra`] bundles addition, multiplication and their units with
//! optional star and domain/codomain maps. Capabilities are visible through
//! [`Flags`], and operations that need a missing capability report it via
//! [`ValueAlgebra::require`].
//!
//! ```
//! use catoid_kleene::value_algebra::{make_min_plus, Weight};
//!
//! let t = make_min_plus();
//! assert_eq!(t.add(Weight::Int(3), Weight::Int(5)), Weight::Int(3));
//! assert_eq!(t.mul(Weight::Int(3), Weight::Inf), Weight::Inf);
//! assert_eq!(t.star(Weight::Int(7)), Weight::Int(0));
//! ```

mod axioms;
mod finite;

pub use axioms::{check_value_axioms, AxiomClass, Sampler};
pub use finite::{
    load_finite_algebra, parse_tables, FiniteTables, INDEPENDENCE_MODEL_1, INDEPENDENCE_MODEL_2, NO_MODAL_DIOID,
    THREE_CHAIN,
};

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A single coefficient. Which variants occur depends on the algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Weight {
    Bool(bool),
    Int(i64),
    /// `+∞` (zero of min-plus, absorbing top of ℕ∪{∞}).
    Inf,
    /// `−∞` (zero of max-plus).
    NegInf,
    /// Index into the carrier of a finite algebra.
    Elem(u16),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Capability {
    Star,
    Modal,
    Finite,
    IdempotentAdd,
}

impl fmt::Display for Capability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Capability::Star => "star",
            Capability::Modal => "domain/codomain",
            Capability::Finite => "finite carrier",
            Capability::IdempotentAdd => "idempotent addition",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flags {
    pub idempotent_add: bool,
    pub commutative_mul: bool,
    pub has_star: bool,
    pub has_modal: bool,
    pub is_finite: bool,
}

#[derive(Clone)]
enum Kind {
    Boolean,
    MinPlus,
    MaxPlus,
    NatInf,
    Finite { tables: Arc<FiniteTables>, dim: usize },
}

/// An operations bundle over one carrier. Immutable and cheap to clone.
#[derive(Clone)]
pub struct ValueAlgebra {
    kind: Kind,
    name: String,
}

impl fmt::Debug for ValueAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ValueAlgebra({})", self.name)
    }
}

/// The Boolean Kleene algebra `{0,1}` with `max`, `min` and constant star 1.
pub fn make_boolean() -> ValueAlgebra {
    ValueAlgebra {
        kind: Kind::Boolean,
        name: "boolean".into(),
    }
}

/// Non-negative integers with `∞`: `min`, `+`, zero `∞`, one `0`, star `0`.
pub fn make_min_plus() -> ValueAlgebra {
    ValueAlgebra {
        kind: Kind::MinPlus,
        name: "minplus".into(),
    }
}

/// Non-positive integers with `−∞`: `max`, `+`, zero `−∞`, one `0`, star `0`.
pub fn make_max_plus() -> ValueAlgebra {
    ValueAlgebra {
        kind: Kind::MaxPlus,
        name: "maxplus".into(),
    }
}

/// ℕ∪{∞} with ordinary `+` and `×`. Not idempotent. `0* = 1`, `a* = ∞`
/// for `a ≥ 1`.
pub fn make_nat_inf_conway() -> ValueAlgebra {
    ValueAlgebra {
        kind: Kind::NatInf,
        name: "natinf".into(),
    }
}

/// Looks up a stock algebra by its CLI name.
pub fn by_name(name: &str) -> Result<ValueAlgebra> {
    match name {
        "boolean" => Ok(make_boolean()),
        "minplus" => Ok(make_min_plus()),
        "maxplus" => Ok(make_max_plus()),
        "natinf" => Ok(make_nat_inf_conway()),
        other => Err(Error::Config(format!("unknown algebra '{other}'"))),
    }
}

fn sat_add(a: i64, b: i64) -> i64 {
    a.saturating_add(b)
}

impl ValueAlgebra {
    pub(crate) fn finite(tables: Arc<FiniteTables>, dim: usize, name: String) -> Self {
        ValueAlgebra {
            kind: Kind::Finite { tables, dim },
            name,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Returns a copy under a different display name.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        ValueAlgebra {
            kind: self.kind.clone(),
            name: name.into(),
        }
    }

    pub fn tables(&self) -> Option<(&FiniteTables, usize)> {
        match &self.kind {
            Kind::Finite { tables, dim } => Some((tables, *dim)),
            _ => None,
        }
    }

    fn idx(w: Weight) -> usize {
        match w {
            Weight::Elem(i) => i as usize,
            other => panic!("finite algebra given non-element weight {other:?}"),
        }
    }

    pub fn zero(&self) -> Weight {
        match &self.kind {
            Kind::Boolean => Weight::Bool(false),
            Kind::MinPlus => Weight::Inf,
            Kind::MaxPlus => Weight::NegInf,
            Kind::NatInf => Weight::Int(0),
            Kind::Finite { tables, .. } => Weight::Elem(tables.zero),
        }
    }

    pub fn one(&self) -> Weight {
        match &self.kind {
            Kind::Boolean => Weight::Bool(true),
            Kind::MinPlus | Kind::MaxPlus => Weight::Int(0),
            Kind::NatInf => Weight::Int(1),
            Kind::Finite { tables, dim } => Weight::Elem(tables.dims[*dim].one),
        }
    }

    pub fn add(&self, a: Weight, b: Weight) -> Weight {
        use Weight::*;
        match &self.kind {
            Kind::Boolean => match (a, b) {
                (Bool(x), Bool(y)) => Bool(x || y),
                _ => panic!("boolean add on {a:?}, {b:?}"),
            },
            Kind::MinPlus => match (a, b) {
                (Inf, x) | (x, Inf) => x,
                (Int(x), Int(y)) => Int(x.min(y)),
                _ => panic!("min-plus add on {a:?}, {b:?}"),
            },
            Kind::MaxPlus => match (a, b) {
                (NegInf, x) | (x, NegInf) => x,
                (Int(x), Int(y)) => Int(x.max(y)),
                _ => panic!("max-plus add on {a:?}, {b:?}"),
            },
            Kind::NatInf => match (a, b) {
                (Inf, _) | (_, Inf) => Inf,
                (Int(x), Int(y)) => Int(sat_add(x, y)),
                _ => panic!("natinf add on {a:?}, {b:?}"),
            },
            Kind::Finite { tables, .. } => Elem(tables.add[Self::idx(a)][Self::idx(b)]),
        }
    }

    pub fn mul(&self, a: Weight, b: Weight) -> Weight {
        use Weight::*;
        match &self.kind {
            Kind::Boolean => match (a, b) {
                (Bool(x), Bool(y)) => Bool(x && y),
                _ => panic!("boolean mul on {a:?}, {b:?}"),
            },
            Kind::MinPlus => match (a, b) {
                (Inf, _) | (_, Inf) => Inf,
                (Int(x), Int(y)) => Int(sat_add(x, y)),
                _ => panic!("min-plus mul on {a:?}, {b:?}"),
            },
            Kind::MaxPlus => match (a, b) {
                (NegInf, _) | (_, NegInf) => NegInf,
                (Int(x), Int(y)) => Int(sat_add(x, y)),
                _ => panic!("max-plus mul on {a:?}, {b:?}"),
            },
            Kind::NatInf => match (a, b) {
                (Int(0), _) | (_, Int(0)) => Int(0),
                (Inf, _) | (_, Inf) => Inf,
                (Int(x), Int(y)) => Int(x.saturating_mul(y)),
                _ => panic!("natinf mul on {a:?}, {b:?}"),
            },
            Kind::Finite { tables, dim } => {
                Elem(tables.dims[*dim].mul[Self::idx(a)][Self::idx(b)])
            }
        }
    }

    /// Sum of an iterator, starting from zero.
    pub fn sum<I: IntoIterator<Item = Weight>>(&self, it: I) -> Weight {
        it.into_iter().fold(self.zero(), |acc, w| self.add(acc, w))
    }

    /// Product left to right, starting from one.
    pub fn product<I: IntoIterator<Item = Weight>>(&self, it: I) -> Weight {
        it.into_iter().fold(self.one(), |acc, w| self.mul(acc, w))
    }

    /// The natural order. For idempotent algebras this is `a + b = b`; for
    /// ℕ∪{∞} it is the usual numeric order.
    pub fn leq(&self, a: Weight, b: Weight) -> bool {
        match &self.kind {
            Kind::NatInf => match (a, b) {
                (_, Weight::Inf) => true,
                (Weight::Inf, _) => false,
                (Weight::Int(x), Weight::Int(y)) => x <= y,
                _ => false,
            },
            _ => self.add(a, b) == b,
        }
    }

    pub fn flags(&self) -> Flags {
        match &self.kind {
            Kind::Boolean => Flags {
                idempotent_add: true,
                commutative_mul: true,
                has_star: true,
                has_modal: true,
                is_finite: true,
            },
            Kind::MinPlus | Kind::MaxPlus => Flags {
                idempotent_add: true,
                commutative_mul: true,
                has_star: true,
                has_modal: true,
                is_finite: false,
            },
            Kind::NatInf => Flags {
                idempotent_add: false,
                commutative_mul: true,
                has_star: true,
                has_modal: false,
                is_finite: false,
            },
            Kind::Finite { tables, dim } => {
                let d = &tables.dims[*dim];
                let n = tables.names.len();
                let commutative = (0..n).all(|i| (0..n).all(|j| d.mul[i][j] == d.mul[j][i]));
                Flags {
                    idempotent_add: tables.idempotent,
                    commutative_mul: commutative,
                    has_star: d.star.is_some() || tables.idempotent,
                    has_modal: d.dom.is_some() && d.cod.is_some(),
                    is_finite: true,
                }
            }
        }
    }

    /// Errors unless the algebra provides `cap`.
    pub fn require(&self, cap: Capability) -> Result<()> {
        let f = self.flags();
        let ok = match cap {
            Capability::Star => f.has_star,
            Capability::Modal => f.has_modal && f.idempotent_add,
            Capability::Finite => f.is_finite,
            Capability::IdempotentAdd => f.idempotent_add,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Capability(format!(
                "algebra '{}' has no {}",
                self.name, cap
            )))
        }
    }

    /// Kleene star. Panics if the algebra has none; check with
    /// [`require`](Self::require) first.
    pub fn star(&self, a: Weight) -> Weight {
        match &self.kind {
            Kind::Boolean => Weight::Bool(true),
            Kind::MinPlus | Kind::MaxPlus => Weight::Int(0),
            Kind::NatInf => match a {
                Weight::Int(0) => Weight::Int(1),
                _ => Weight::Inf,
            },
            Kind::Finite { tables, dim } => match &tables.dims[*dim].star {
                Some(row) => Weight::Elem(row[Self::idx(a)]),
                None => quantale_star(self, a)
                    .unwrap_or_else(|e| panic!("algebra '{}': {e}", self.name)),
            },
        }
    }

    /// Domain map `d⁻`. Panics without modal structure.
    pub fn dom(&self, a: Weight) -> Weight {
        self.modal(a, true)
    }

    /// Codomain map `d⁺`. Panics without modal structure.
    pub fn cod(&self, a: Weight) -> Weight {
        self.modal(a, false)
    }

    fn modal(&self, a: Weight, dom: bool) -> Weight {
        match &self.kind {
            Kind::Boolean => a,
            Kind::MinPlus | Kind::MaxPlus => {
                if a == self.zero() {
                    a
                } else {
                    Weight::Int(0)
                }
            }
            Kind::NatInf => panic!("natinf has no domain/codomain"),
            Kind::Finite { tables, dim } => {
                let d = &tables.dims[*dim];
                let row = if dom { &d.dom } else { &d.cod };
                match row {
                    Some(r) => Weight::Elem(r[Self::idx(a)]),
                    None => panic!("algebra '{}' has no domain/codomain", self.name),
                }
            }
        }
    }

    /// Every weight, when the carrier is finite.
    pub fn carrier(&self) -> Option<Vec<Weight>> {
        match &self.kind {
            Kind::Boolean => Some(vec![Weight::Bool(false), Weight::Bool(true)]),
            Kind::Finite { tables, .. } => Some(
                (0..tables.names.len())
                    .map(|i| Weight::Elem(i as u16))
                    .collect(),
            ),
            _ => None,
        }
    }

    /// A finite pool of weights used for sampling. Equal to the carrier for
    /// finite algebras.
    pub fn sample_pool(&self) -> Vec<Weight> {
        if let Some(c) = self.carrier() {
            return c;
        }
        match &self.kind {
            Kind::MinPlus => (0..=9).map(Weight::Int).chain([Weight::Inf]).collect(),
            Kind::MaxPlus => std::iter::once(Weight::Int(0))
                .chain((1..=9).map(|i| Weight::Int(-i)))
                .chain([Weight::NegInf])
                .collect(),
            Kind::NatInf => (0..=5).map(Weight::Int).chain([Weight::Inf]).collect(),
            _ => unreachable!(),
        }
    }

    pub fn format(&self, w: Weight) -> String {
        match (&self.kind, w) {
            (_, Weight::Bool(b)) => if b { "1" } else { "0" }.to_string(),
            (_, Weight::Int(i)) => i.to_string(),
            (_, Weight::Inf) => "inf".to_string(),
            (_, Weight::NegInf) => "-inf".to_string(),
            (Kind::Finite { tables, .. }, Weight::Elem(i)) => tables.names[i as usize].clone(),
            (_, Weight::Elem(i)) => format!("#{i}"),
        }
    }

    /// Parses a weight token in this algebra's notation.
    pub fn parse(&self, token: &str) -> Result<Weight> {
        let bad = || Error::Domain(format!("'{token}' is not a weight of '{}'", self.name));
        match &self.kind {
            Kind::Boolean => match token {
                "0" | "false" => Ok(Weight::Bool(false)),
                "1" | "true" => Ok(Weight::Bool(true)),
                _ => Err(bad()),
            },
            Kind::MinPlus | Kind::NatInf => match token {
                "inf" | "∞" => Ok(Weight::Inf),
                t => match t.parse::<i64>() {
                    Ok(v) if v >= 0 => Ok(Weight::Int(v)),
                    _ => Err(bad()),
                },
            },
            Kind::MaxPlus => match token {
                "-inf" | "−∞" => Ok(Weight::NegInf),
                t => match t.parse::<i64>() {
                    Ok(v) if v <= 0 => Ok(Weight::Int(v)),
                    _ => Err(bad()),
                },
            },
            Kind::Finite { tables, .. } => tables.lookup(token).map(Weight::Elem).ok_or_else(bad),
        }
    }

    /// True when the two bundles share one additive structure on the
    /// sample pool.
    pub fn same_additive(&self, other: &ValueAlgebra) -> bool {
        let pool = self.sample_pool();
        pool == other.sample_pool()
            && self.zero() == other.zero()
            && pool
                .iter()
                .all(|&a| pool.iter().all(|&b| self.add(a, b) == other.add(a, b)))
    }
}

/// Join of all powers `a⁰ + a¹ + a² + …` in a finite idempotent algebra.
///
/// The pair (partial join, current power) ranges over a finite set, so the
/// iteration stops once that pair repeats.
pub fn quantale_star(alg: &ValueAlgebra, a: Weight) -> Result<Weight> {
    alg.require(Capability::Finite)?;
    alg.require(Capability::IdempotentAdd)?;
    let mut power = alg.one();
    let mut acc = power;
    let mut seen = std::collections::HashSet::new();
    while seen.insert((acc, power)) {
        power = alg.mul(power, a);
        acc = alg.add(acc, power);
    }
    Ok(acc)
}

/// A stack of value algebras indexed by dimension, sharing addition and zero.
#[derive(Clone, Debug)]
pub struct NValueAlgebra {
    dims: Vec<ValueAlgebra>,
    name: String,
}

impl NValueAlgebra {
    pub fn new(dims: Vec<ValueAlgebra>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Config("an n-algebra needs at least one dimension".into()));
        }
        for (i, d) in dims.iter().enumerate().skip(1) {
            if !dims[0].same_additive(d) {
                return Err(Error::Mismatch(format!(
                    "dimension {i} does not share the additive structure of dimension 0"
                )));
            }
        }
        let name = dims[0].name().to_string();
        Ok(NValueAlgebra { dims, name })
    }

    /// `n` copies of one algebra.
    pub fn uniform(alg: ValueAlgebra, n: usize) -> Self {
        let name = if n == 1 {
            alg.name().to_string()
        } else {
            format!("{}^{}", alg.name(), n)
        };
        NValueAlgebra {
            dims: vec![alg; n.max(1)],
            name,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self, i: usize) -> &ValueAlgebra {
        &self.dims[i]
    }

    pub fn dims(&self) -> &[ValueAlgebra] {
        &self.dims
    }

    /// The shared additive structure (dimension 0's view).
    pub fn base(&self) -> &ValueAlgebra {
        &self.dims[0]
    }
}

impl From<ValueAlgebra> for NValueAlgebra {
    fn from(a: ValueAlgebra) -> Self {
        NValueAlgebra::uniform(a, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Weight::*;

    #[test]
    fn boolean_ops() {
        let b = make_boolean();
        assert_eq!(b.star(Bool(false)), Bool(true));
        assert_eq!(b.add(Bool(true), Bool(true)), Bool(true));
        assert_eq!(b.mul(Bool(true), Bool(false)), Bool(false));
        assert_eq!(b.dom(Bool(true)), Bool(true));
    }

    #[test]
    fn tropical_ops() {
        let t = make_min_plus();
        assert_eq!(t.add(Int(3), Int(5)), Int(3));
        assert_eq!(t.mul(Int(3), Inf), Inf);
        assert_eq!(t.star(Int(7)), Int(0));
        assert_eq!(t.dom(Int(4)), Int(0));
        assert_eq!(t.dom(Inf), Inf);
        let m = make_max_plus();
        assert_eq!(m.add(Int(-3), Int(-5)), Int(-3));
        assert_eq!(m.star(Int(-4)), Int(0));
        assert_eq!(m.mul(Int(-2), Int(-3)), Int(-5));
    }

    #[test]
    fn natinf_ops() {
        let n = make_nat_inf_conway();
        assert_eq!(n.star(Int(0)), Int(1));
        assert_eq!(n.star(Int(2)), Inf);
        assert_eq!(n.add(Int(2), Int(2)), Int(4));
        assert_eq!(n.mul(Int(0), Inf), Int(0));
        assert_eq!(n.mul(Int(3), Inf), Inf);
        assert!(!n.flags().idempotent_add);
        assert!(n.require(Capability::Modal).is_err());
    }

    #[test]
    fn natinf_star_of_two_diverges() {
        // Partial sums of 2^i exceed every bound, so the only fixpoint is ∞.
        let n = make_nat_inf_conway();
        let mut acc = 0i64;
        let mut p = 1i64;
        for _ in 0..40 {
            acc += p;
            p *= 2;
        }
        assert!(acc > 1 << 39);
        assert_eq!(n.star(Int(2)), Inf);
    }

    #[test]
    fn quantale_star_boolean() {
        let b = make_boolean();
        assert_eq!(quantale_star(&b, Bool(true)).unwrap(), Bool(true));
        assert_eq!(quantale_star(&b, Bool(false)).unwrap(), Bool(true));
        assert!(quantale_star(&make_min_plus(), Int(1)).is_err());
        assert!(quantale_star(&make_nat_inf_conway(), Int(1)).is_err());
    }

    #[test]
    fn parse_and_format_round_trip() {
        for alg in [make_boolean(), make_min_plus(), make_max_plus(), make_nat_inf_conway()] {
            for w in alg.sample_pool() {
                assert_eq!(alg.parse(&alg.format(w)).unwrap(), w);
            }
        }
        assert!(make_min_plus().parse("-3").is_err());
        assert!(make_max_plus().parse("3").is_err());
    }

    #[test]
    fn uniform_dims_share_addition() {
        let n = NValueAlgebra::uniform(make_boolean(), 2);
        assert_eq!(n.n(), 2);
        assert!(NValueAlgebra::new(vec![make_boolean(), make_min_plus()]).is_err());
    }
}
