//! Concrete catoids: words under concatenation and shuffle, poset
//! intervals, pair groupoids, graph paths, guarded strings, and two
//! 2-dimensional models.
//!
//! Pomset models and graph-join 2-categories are not provided.

mod guarded;
mod pairs;
mod paths;
mod poset;
mod two;
mod words;

pub use guarded::{guarded_string_catoid, GuardedCatoid, GuardedString};
pub use pairs::{pair_groupoid, Pair, PairGroupoid};
pub use paths::{path_catoid, EdgeSpec, GraphSpec, Path, PathCatoid};
pub use poset::{interval_catoid, Interval, IntervalCatoid, PosetSpec};
pub use two::{globe_2category, shuffle_concat_2catoid, Globe, GlobeCatoid, GlobeSpec, ShuffleConcat};
pub use words::{free_monoid, shuffle, shuffle_catoid, FreeMonoid, ShuffleCatoid, Word};
