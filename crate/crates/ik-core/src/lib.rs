//! Solver toolkit for the Izergin-Korepin open spin chain with generic
//! non-diagonal boundary reflections.
//!
//! The crate is organized bottom-up:
//!
//! - [`lax`]: the R-matrix, the boundary K-matrices and the algebraic
//!   identities they satisfy (Yang-Baxter, unitarity, crossing, reflection
//!   equations), together with the scalar functions entering the transfer
//!   matrix functional relations.
//! - [`spectrum`]: single-row monodromies, open/periodic transfer matrices,
//!   the Hamiltonian (built two independent ways) and dense exact
//!   diagonalization at small chain length, including per-state transfer
//!   matrix eigenvalue curves.
//! - [`trigpoly`]: Laurent polynomials in `w = exp(u/2)` used to fit sampled
//!   eigenvalue curves and extract their roots via companion matrices.
//! - [`zeroes`]: the zeroes parameterization of transfer matrix eigenvalues,
//!   the homogeneous Bethe ansatz equations for the zeroes, a damped Newton
//!   solver, ground state seeding and classification of zero patterns into
//!   the six boundary regimes.
//! - [`thermo`]: thermodynamic-limit quantities: Fourier-space zero
//!   densities, periodic bulk energy, regime-dispatched surface energies and
//!   boundary excitation energies, all as certified truncated series.

pub mod error;
pub mod lax;
mod matrix;
pub mod params;
pub mod spectrum;
pub mod taylor;
pub mod thermo;
pub mod trigpoly;
pub mod zeroes;

pub use error::Error;
pub use params::{ModelParams, Regime};

/// Shorthand used throughout the crate.
pub type C64 = num_complex::Complex64;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
