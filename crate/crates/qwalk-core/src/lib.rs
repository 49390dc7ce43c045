//! Spectral theory and simulation of one-dimensional quantum walks U = SC
//! with coins that approach two (possibly different) limits at ±∞.
//!
//! The crate computes the C(2)-coin parametrization and its degeneracy
//! cases, the symbol Û(k) with closed-form eigenpairs and group velocities,
//! the essential spectrum as arcs on the unit circle, threshold sets and the
//! ρ̃ asymptotics behind the Mourre estimate, finite-ring diagonalization
//! for edge/defect studies, grid-discretized conjugate-operator identities,
//! and exact sparse evolution of compactly supported states.

pub mod angle;
pub mod coin;
pub mod config;
pub mod error;
pub mod finite;
pub mod kgrid;
pub mod lattice;
pub mod mat2;
pub mod spectra;
pub mod symbol;

pub use error::{Error, Result};
