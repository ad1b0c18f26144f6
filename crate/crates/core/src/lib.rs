//! Exact polyhedral toolkit for cones of metrics, weighted quasi-metrics,
//! hypermetrics, cuts and oriented cuts.
//!
//! Everything here is exact: coordinates are arbitrary precision rationals
//! or primitive integer vectors, never floats. The crate is `no_std` (with
//! `alloc`) when built without the default `std` feature; the `parallel`
//! feature fans the double-description pair step out over rayon.
//!
//! Point labels follow one convention throughout: the ground set is
//! `V = {1..n}`, and cones "on n+1 points" add the distinguished point `0`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod error;
pub mod exactvec;
pub mod facetlab;
pub mod generators;
pub mod linalg;
pub mod polyhedra;
pub mod symmetry;

pub use error::{Error, Result};
pub use exactvec::{ArcVector, PairVector, PointSet, QnVector};
pub use num_bigint::BigInt;

/// Exact rational number. Always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// Integer coordinate vector; cone generators and facet normals are stored
/// as primitive vectors of this type.
pub type IntVec = alloc::vec::Vec<BigInt>;
