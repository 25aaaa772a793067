//! Uniform lattice over the computational half-domain, thin-space indexing,
//! interpolation and sphere/ball quadrature.
//!
//! The domain is the box `[-R, R]^{n-1} x [0, R]` with even-reflection
//! semantics across the thin space `{x_n = 0}`: every field exposed here
//! evaluates at `(x', -x_n)` exactly as at `(x', x_n)`. The reflection is
//! implicit — only the half-domain is stored.

mod field;
mod grid;
mod quad;
mod snapshot;

pub use field::{AnalyticField, FieldDifference, GridFunction, LinearCombination, ScalarField};
pub use grid::{Grid, NodeClass, Point};
pub use quad::{
    ball_energy, ball_energy_with, ball_l2_sq, gauss_legendre_nodes, sample_sphere, shell_l2_sq,
    sphere_directions, QuadSpec, SphericalSample,
};
pub use snapshot::{read_snapshot, write_snapshot};
