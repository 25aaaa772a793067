//! Numerical laboratory for the thin obstacle (Signorini) problem.
//!
//! The library solves the discretized variational inequality
//!
//! ```text
//!   minimize ∫ |∇u|²   subject to  u ≥ 0 on the thin space {x_n = 0},
//!                                  u = g on the outer boundary,
//! ```
//!
//! on a uniform half-domain lattice with even reflection across the thin
//! space, and provides the diagnostic machinery used in free-boundary
//! analysis: the closed-form homogeneous profiles ψ_λ, Almgren-type
//! frequency functionals H_μ, D, φ, truncated frequency φ_γ, Monneau-type
//! running maxima, blow-up profile fitting (the A functional), contact-set
//! and flatness measurements, dyadic decay scans, and empirical
//! verification suites for the structural inequalities satisfied by
//! differences of solutions.
//!
//! Modules map onto the pipeline:
//!
//! * [`geometry`] — lattice, interpolation, sphere/ball quadrature, snapshots;
//! * [`profiles`] — ψ_λ families, normalization constants, the 2D
//!   classification oracle and the 2D slit-harmonic basis;
//! * [`solver`] — projected SOR for the discrete complementarity system;
//! * [`frequency`] — frequency-type functionals and monotonicity reports;
//! * [`blowup`] — contact sets, profile fits, flatness and decay scans;
//! * [`estimates`] — measured-constant verification suites;
//! * [`acceptance`] — the end-to-end acceptance checks run by the CLI and
//!   the integration test suite.

pub mod acceptance;
pub mod blowup;
pub mod error;
pub mod estimates;
pub mod frequency;
pub mod geometry;
pub mod profiles;
pub mod solver;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
