//! Exact toolkit for the spectra of lattice polytopes.
//!
//! Everything is computed over arbitrary-precision rationals: Newton
//! functions, Ehrhart delta vectors, polar polytopes, face fans and their
//! box points, geometric/algebraic spectra, smooth resolutions of complete
//! 2D fans, the stacky stringy E-function and the invariant `muhat`, plus
//! verifiers for the variance identity, the generalized Noether formula
//! and the Hertling inequality.

pub mod error;
pub mod fan;
pub mod linalg;
pub mod poly;
pub mod polytope;
pub mod rational;
pub mod report;
pub mod resolution;
pub mod spectrum;

pub use error::Error;
pub use rational::Rational;
