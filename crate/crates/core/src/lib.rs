//! Exact invariants of finite sets of points in a product of two projective
//! spaces over the rationals.
//!
//! The library computes bigraded Hilbert functions and their borders,
//! minimal generators of vanishing ideals, Kähler differents and the Hilbert
//! functions of Kähler differential modules, separators and point degrees,
//! and the structural predicates (arithmetically Cohen-Macaulay,
//! Cayley-Bacharach, complete intersection, and the cross-point closure
//! property of a configuration). All arithmetic is exact; no floating point
//! is used anywhere.

pub mod bipoly;
pub mod classify;
pub mod exactlin;
pub mod fixtures;
pub mod hilbert;
pub mod idealgen;
pub mod kdiff;
pub mod pointset;
pub mod separators;

/// Arbitrary-precision rational scalar used throughout.
pub type Rat = num::BigRational;

pub use bipoly::{Bidegree, BiPoly, Var};
pub use classify::Classification;
pub use exactlin::QMatrix;
pub use hilbert::HFTable;
pub use idealgen::{SpanKind, SpanSet};
pub use kdiff::KDiff;
pub use pointset::{Point, PointSet};
pub use separators::DegreeSet;
