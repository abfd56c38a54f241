//! Hilbert functions of zero-dimensional schemes in the plane and in
//! P1xP1, and dimensions of secant varieties of tangential varieties of
//! Segre-Veronese surfaces.
//!
//! All computations are exact ranks over a prime field. A scheme is turned
//! into a matrix of linear functionals on forms of a fixed degree
//! ([`schemes::condition_matrix`]); its rank is the Hilbert function value.
//! [`idealcalc`] provides an independent route through ideal generators, and
//! the remaining modules build the checks on top of these two.

pub mod error;
pub mod ffla;
pub mod hilbert;
pub mod horace;
pub mod idealcalc;
pub mod sampling;
pub mod schemes;
pub mod secant;
pub mod suite;
pub mod transfer;

pub use error::{Error, Result};
pub use ffla::{Degree, DenseMatrix, FieldElement, MonomialBasis, PolyVec, PrimeField, DEFAULT_PRIME};
pub use sampling::MonteCarlo;
pub use schemes::{Ambient, BiPoint, PlanePoint, SchemeComponent, SchemeSpec, TangentPair};
