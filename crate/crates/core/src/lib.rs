//! Exact invariants of complex line arrangements in CP².
//!
//! The pipeline runs from a list of integer line coefficients to the
//! intersection lattice, the Orlik–Solomon algebra and its resonance,
//! multinets, a presentation of the fundamental group of the projective
//! complement, twisted homology at finite-order characters, the monodromy
//! of the Milnor fiber, and boundary-manifold invariants. Everything is
//! computed with exact integer, rational, finite-field or cyclotomic
//! arithmetic.

pub mod arrangement;
pub mod boundary;
pub mod cyclo;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod jumploci;
pub mod linalg;
pub mod milnor;
pub mod multinet;
pub mod osalgebra;
pub mod pi1;
pub mod report;
pub mod snf;

pub use arrangement::{build_lattice, Arrangement, ArrangementInput, Flat2, IntersectionLattice, ProjLine};
pub use error::{Error, Result};
pub use field::{Field, Fp};

/// Arbitrary-precision integers used for exact coordinates and matrix entries.
pub type Integer = num_bigint::BigInt;
/// Arbitrary-precision rationals, the characteristic-zero scalar field.
pub type Rational = num_rational::BigRational;
