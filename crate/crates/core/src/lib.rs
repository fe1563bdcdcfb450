//! Assisted unambiguous discrimination of nonorthogonal states, together
//! with the quantum correlations (discord on either side, PPT entanglement
//! test) of the joint system–ancilla state the protocol produces.

pub mod cli;
pub mod correlations;
pub mod discrimination;
pub mod ensembles;
pub mod error;
pub mod matrixcore;
pub mod separability;
pub mod tolerances;

pub use error::{Error, Result};
pub use matrixcore::{ComplexMatrix, DensityMatrix, Spectrum, Subsystem, C64};
pub use tolerances::Tolerances;
