//! Finite-rank approximations of one-dimensional quantum operators.
//!
//! A [`basis::BasisSet`] realizes an orthonormal family χ_1..χ_N; operators are
//! projected onto it as [`operators::OperatorMatrix`], rendered back to coordinate
//! space as kernels K(r, s) = Σ χ_i(r) M_ij χ_j(s), and diagonalized.

pub mod acceptance;
pub mod basis;
pub mod error;
pub mod feshbach;
pub mod grid;
pub mod hermite;
pub mod kernels;
pub mod operators;
pub mod oracle;
pub mod quadrature;
pub mod spectral;

pub use basis::{BasisSet, BasisSpec, Family, OrthoMethod, Parity};
pub use error::{Error, Result};
pub use grid::Axis;
pub use operators::{OperatorKind, OperatorMatrix, PotentialSpec};
pub use spectral::Spectrum;
