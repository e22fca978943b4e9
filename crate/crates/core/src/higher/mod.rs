//! Higher catoids and their convolution algebras.
//!
//! An [`NCatoid`] stacks `n` catoid structures on one universe. [`Dim`]
//! views one dimension as an ordinary [`Catoid`], so every
//! one-dimensional tool applies per dimension. [`check_n_catoid`] tests
//! the interaction axioms; [`NBundle`] carries the per-dimension
//! convolution operators and [`check_n_axioms`] tests the n-semiring and
//! n-Kleene laws on them.

mod axioms;
mod bundle;


pub use axioms::{check_2catoid, check_n_catoid};
pub use bundle::{
    build_interchange_convolution, build_n_convolution, check_interchange, check_n_axioms,
    InterchangeConvolution, NBundle,
};

use std::collections::BTreeSet;
use std::fmt::Debug;
use std::hash::Hash;

use crate::catoid::{decompose2_by_inversion, Catoid};

/// `n` catoid structures `(⊙ᵢ, sᵢ, tᵢ)` over a shared universe.
pub trait NCatoid: Send + Sync {
    type Elem: Clone + Eq + Hash + Ord + Debug + Send + Sync + 'static;

    fn name(&self) -> String;

    fn dims(&self) -> usize;

    /// All elements, sorted.
    fn universe(&self) -> &[Self::Elem];

    fn compose(&self, dim: usize, y: &Self::Elem, z: &Self::Elem) -> BTreeSet<Self::Elem>;

    fn source(&self, dim: usize, x: &Self::Elem) -> Self::Elem;

    fn target(&self, dim: usize, x: &Self::Elem) -> Self::Elem;

    fn decompose2(&self, dim: usize, x: &Self::Elem) -> Vec<(Self::Elem, Self::Elem)> {
        decompose2_by_inversion(&Dim { nc: self, i: dim }, x)
    }

    fn escapes(&self, _dim: usize, _y: &Self::Elem, _z: &Self::Elem) -> bool {
        false
    }

    fn is_truncated(&self) -> bool {
        false
    }

    fn label(&self, x: &Self::Elem) -> String {
        format!("{x:?}")
    }

    fn dim(&self, i: usize) -> Dim<'_, Self>
    where
        Self: Sized,
    {
        assert!(i < self.dims(), "dimension {i} out of range");
        Dim { nc: self, i }
    }
}

/// One dimension of an [`NCatoid`] as a plain catoid.
#[derive(Debug)]
pub struct Dim<'a, N: ?Sized> {
    nc: &'a N,
    i: usize,
}

impl<N: NCatoid + ?Sized> Dim<'_, N> {
    pub fn index(&self) -> usize {
        self.i
    }
}

impl<N: NCatoid + ?Sized> Catoid for Dim<'_, N> {
    type Elem = N::Elem;

    fn name(&self) -> String {
        format!("{}.{}", self.nc.name(), self.i)
    }

    fn universe(&self) -> &[N::Elem] {
        self.nc.universe()
    }

    fn compose(&self, y: &N::Elem, z: &N::Elem) -> BTreeSet<N::Elem> {
        self.nc.compose(self.i, y, z)
    }

    fn source(&self, x: &N::Elem) -> N::Elem {
        self.nc.source(self.i, x)
    }

    fn target(&self, x: &N::Elem) -> N::Elem {
        self.nc.target(self.i, x)
    }

    fn decompose2(&self, x: &N::Elem) -> Vec<(N::Elem, N::Elem)> {
        self.nc.decompose2(self.i, x)
    }

    fn escapes(&self, y: &N::Elem, z: &N::Elem) -> bool {
        self.nc.escapes(self.i, y, z)
    }

    fn is_truncated(&self) -> bool {
        self.nc.is_truncated()
    }

    fn label(&self, x: &N::Elem) -> String {
        self.nc.label(x)
    }
}
