//! Convolution algebras over catoids.
//!
//! Functions from a catoid into a value algebra form a semiring under
//! pointwise addition and convolution. When the catoid is Möbius (every
//! element has finitely many decompositions and identities are
//! indecomposable) the Kleene star lifts as well, by recursion on length.
//!
//! Rough map of the crate:
//!
//! - [`value_algebra`]: coefficient semirings, dioids, Kleene and Conway
//!   algebras, modal and n-dimensional tabulated algebras.
//! - [`catoid`]: the catoid contract, decompositions, length and the Möbius
//!   checks.
//! - [`catoid_models`]: words, shuffles, intervals, pairs, paths, guarded
//!   strings and two 2-dimensional models.
//! - [`convolution`], [`modal_convolution`], [`higher`]: the function
//!   algebras themselves.
//! - [`axiom_lab`]: verification campaigns.
//! - [`pathtool`]: matrix star and the command line driver.

// Index loops read better than iterator chains in the table and matrix code.
#![allow(clippy::needless_range_loop)]

pub mod axiom_lab;
pub mod catoid;
pub mod catoid_models;
pub mod convolution;
pub mod error;
pub mod higher;
pub mod modal_convolution;
pub mod pathtool;
pub mod report;
pub mod value_algebra;

pub use error::{Error, Result};
pub use report::{LawResult, Report, Status};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/stars.md")]
mod book_stars {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/paths.md")]
mod book_paths {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/independence.md")]
mod book_independence {}
