//! Symbolic engine for the affine Hecke algebra, its graded version over the
//! completed polynomial ring, the Lusztig morphisms between them, and a
//! verifier for the square formed by the Koszul-type involutions on one side
//! and the Fourier involution on the other.

pub mod affine_hecke;
pub mod error;
mod fault;
pub mod formal_series;
pub mod graded_hecke;
pub mod lattice_algebra;
pub mod lusztig;
pub mod root_datum;
pub mod verifier;

pub use error::{Error, Result};
#[cfg(feature = "fault-injection")]
pub use fault::Fault;
