//! Monodromy invariants of isolated plane-curve singularities, computed from
//! weighted resolution dual graphs.
//!
//! The input is a dual graph of a log resolution: vertices are exceptional
//! curves weighted by self-intersection (and genus), edges are their
//! intersections, and arrows are branches of the strict transform. From that
//! combinatorial datum the crate
//!
//! * solves exactly for the multiplicities and discrepancies of the
//!   exceptional curves and for ample divisor coefficients ([`decorate`]),
//! * refines the graph by blowups until it is m-separating ([`separate`]),
//! * computes the topology of the cyclic covers over the open strata and
//!   their Borel-Moore homology ranks ([`cover`]),
//! * assembles the first page of the spectral sequence converging to the
//!   fixed-point Floer homology of the monodromy iterates, with
//!   Conley-Zehnder gradings and action keys ([`page`], [`feasibility`]),
//! * derives the classical invariants: Lefschetz numbers, the monodromy zeta
//!   function, the Milnor number and the multiplicity ([`invariants`]),
//! * and verifies numerically the rotation-number dynamics of the radius-zero
//!   monodromy that back the fixed-point statements ([`dynamics`]).
//!
//! All combinatorial computations are exact (arbitrary-precision rationals);
//! only the [`dynamics`] module uses floating point, with explicit
//! tolerances.

pub mod cover;
pub mod decorate;
pub mod dynamics;
pub mod error;
pub mod feasibility;
pub mod germ;
pub mod graph;
pub mod invariants;
pub mod linalg;
pub mod page;
pub mod separate;

pub use decorate::Decoration;
pub use error::Error;
pub use graph::{Arrow, DualGraph, Vertex, VertexId};

/// Exact rational scalar used by the combinatorial modules.
pub type Rat = num_rational::BigRational;

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;

/// The exact rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// The exact integer `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}
