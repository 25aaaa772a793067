//! Projected successive over-relaxation for the discretized thin obstacle
//! problem: minimize the discrete Dirichlet energy over the half-domain box
//! subject to `u ≥ 0` at thin nodes and Dirichlet data on the outer boundary.
//!
//! Discretization: second-order 5/7-point Laplacian; thin-node stencils use
//! the even ghost reflection (the value at `x_n = -h` equals the value at
//! `x_n = +h`), which makes the discrete operator the exact gradient of the
//! half-domain energy with half-weighted thin tangential edges.
//!
//! The solver normalizes by the boundary sup-norm internally, so residuals,
//! tolerances, and complementarity-report entries are all in units of the
//! normalized solution: `tol = 1e-10` means the scaled fixed-point residual
//! `max |P(target) - u| / h²` drops below `1e-10`.

use std::sync::Arc;

use crate::geometry::{Grid, GridFunction, NodeClass, Point, ScalarField};
use crate::profiles::{spine_from_angle, Homogeneity, Profile};
use crate::{Error, Result};

/// Prescription of outer-boundary values with provenance.
pub struct BoundaryData {
    provenance: String,
    eval: Box<dyn Fn(Point) -> f64 + Send + Sync>,
}

impl BoundaryData {
    pub fn new(provenance: impl Into<String>, eval: impl Fn(Point) -> f64 + Send + Sync + 'static) -> Self {
        BoundaryData {
            provenance: provenance.into(),
            eval: Box::new(eval),
        }
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn value(&self, x: Point) -> f64 {
        (self.eval)(x)
    }
}

/// Boundary-data kinds understood by the experiment runner.
#[derive(Debug, Clone)]
pub enum BoundaryKind {
    /// Trace of `τ ψ_λ` with the given spine angle.
    Profile {
        lambda: Homogeneity,
        tau: f64,
        spine_angle: f64,
    },
    /// Trace of `τ (ψ_λ + ε ψ_λ')` with a shared spine; both homogeneities in
    /// 3/2 + 2ℕ and λ' > λ, so the sum is an exact solution.
    PerturbedProfile {
        lambda: Homogeneity,
        lambda2: Homogeneity,
        tau: f64,
        epsilon: f64,
        spine_angle: f64,
    },
    /// `offset + |x'|² - (n-1) x_n²`: a harmonic function whose thin trace has
    /// a local minimum at the origin. `offset = 0` produces an even-frequency
    /// contact point at the minimum; `offset > 0` keeps the trace strictly
    /// positive so the constraint never binds.
    HarmonicMin { offset: f64 },
}

/// Build boundary data of one of the named kinds, validating thin-trace
/// nonnegativity for the perturbed construction over `[0, diameter]`.
pub fn make_boundary_data(n: usize, kind: BoundaryKind, half_width: f64) -> Result<BoundaryData> {
    match kind {
        BoundaryKind::Profile {
            lambda,
            tau,
            spine_angle,
        } => {
            let p = Profile::from_angle(n, lambda, tau, spine_angle)?;
            Ok(BoundaryData::new("profile", move |x| p.value(x)))
        }
        BoundaryKind::PerturbedProfile {
            lambda,
            lambda2,
            tau,
            epsilon,
            spine_angle,
        } => {
            if lambda.twice() % 4 != 3 || lambda2.twice() % 4 != 3 || lambda2 <= lambda {
                return Err(Error::NotSolutionHomogeneity(lambda2.value()));
            }
            let spine = spine_from_angle(n, spine_angle)?;
            let p1 = Profile::new(n, lambda, tau, spine)?;
            let p2 = Profile::new(n, lambda2, tau * epsilon.abs(), spine)?;
            let sign = epsilon.signum();
            // thin trace must stay nonnegative out to the box diameter
            let reach = half_width * (n as f64).sqrt();
            let mut min_trace = f64::INFINITY;
            for k in 0..=4096 {
                let t = reach * k as f64 / 4096.0;
                let thin = [t * spine[0], t * spine[1], t * spine[2]];
                let v = p1.trace(thin) + sign * p2.trace(thin);
                min_trace = min_trace.min(v);
            }
            if min_trace < -1e-12 * (1.0 + tau) {
                return Err(Error::NegativeThinTrace(min_trace));
            }
            Ok(BoundaryData::new("perturbed-profile", move |x| {
                p1.value(x) + sign * p2.value(x)
            }))
        }
        BoundaryKind::HarmonicMin { offset } => {
            if offset < 0.0 {
                return Err(Error::NegativeThinTrace(offset));
            }
            Ok(BoundaryData::new("harmonic-min", move |x: Point| {
                let tang: f64 = x[..n - 1].iter().map(|c| c * c).sum();
                offset + tang - (n - 1) as f64 * x[n - 1] * x[n - 1]
            }))
        }
    }
}

/// How the PSOR iteration is seeded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitStrategy {
    /// Unconstrained harmonic solve, clipped at thin nodes. Reduces sweep
    /// counts substantially for profile-like data.
    ClippedHarmonic,
    Zeros,
}

#[derive(Debug, Clone, Copy)]
pub struct SolveParams {
    /// Relaxation factor in (0, 2); defaults to 1.9 for n = 2, 1.7 for n = 3.
    pub omega: Option<f64>,
    /// Convergence tolerance on the scaled fixed-point residual; defaults to
    /// 1e-10 for n = 2, 1e-8 for n = 3.
    pub tol: Option<f64>,
    pub max_iter: usize,
    pub init: InitStrategy,
    /// Check the energy monotonicity invariant every this many sweeps
    /// (0 disables).
    pub energy_check_every: usize,
}

impl Default for SolveParams {
    fn default() -> Self {
        SolveParams {
            omega: None,
            tol: None,
            max_iter: 100_000,
            init: InitStrategy::ClippedHarmonic,
            energy_check_every: 1,
        }
    }
}

/// Near-optimal SOR relaxation factor for this lattice.
pub fn suggested_omega(grid: &Grid) -> f64 {
    let s = (std::f64::consts::PI * grid.spacing() / (2.0 * grid.half_width())).sin();
    2.0 / (1.0 + s)
}

/// A converged (or flagged) solve of the discrete thin obstacle problem.
#[derive(Debug, Clone)]
pub struct Solution {
    u: GridFunction,
    pub iterations: usize,
    pub residual: f64,
    pub converged: bool,
    pub omega: f64,
    pub tol: f64,
    /// Boundary sup-norm used for internal normalization.
    pub data_scale: f64,
    pub energy_monotone: bool,
    pub worst_energy_uptick: f64,
    pub provenance: String,
}

impl Solution {
    pub fn field(&self) -> &GridFunction {
        &self.u
    }

    pub fn grid(&self) -> &Arc<Grid> {
        self.u.grid()
    }

    pub fn into_field(self) -> GridFunction {
        self.u
    }

    /// Default contact tolerance: thin nodes with `u <= zero_tol` count as
    /// contact. Projection writes exact zeros, so a small multiple of the
    /// solver tolerance suffices.
    pub fn default_zero_tol(&self) -> f64 {
        10.0 * self.tol * self.grid().spacing().powi(2) * self.data_scale + 1e-300
    }

    pub fn is_contact(&self, flat: usize, zero_tol: f64) -> bool {
        self.grid().class(flat) == NodeClass::Thin && self.u.values()[flat] <= zero_tol
    }

    /// Wrap a non-converged result into an error.
    pub fn require_converged(self) -> Result<Solution> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NotConverged {
                residual: self.residual,
                iterations: self.iterations,
            })
        }
    }
}

/// Discrete KKT violations of a converged solve, all in the scaled residual
/// units of the solver (see module docs).
#[derive(Debug, Clone, Copy)]
pub struct ComplementarityReport {
    /// max(0, -min u) over thin nodes; exactly zero by projection.
    pub max_thin_negativity: f64,
    /// Positive part of the thin-node discrete Laplacian, `(target - u)_+ / h²`.
    pub max_thin_positive_laplacian: f64,
    /// `max u |target - u| / h²` over thin nodes.
    pub max_complementarity: f64,
    /// `max |target - u| / h²` over interior (non-thin) nodes.
    pub max_interior_residual: f64,
}

impl ComplementarityReport {
    pub fn max_violation(&self) -> f64 {
        self.max_thin_negativity
            .max(self.max_thin_positive_laplacian)
            .max(self.max_complementarity)
            .max(self.max_interior_residual)
    }

    pub fn to_key_values(&self) -> Vec<(String, f64)> {
        vec![
            ("max_thin_negativity".into(), self.max_thin_negativity),
            (
                "max_thin_positive_laplacian".into(),
                self.max_thin_positive_laplacian,
            ),
            ("max_complementarity".into(), self.max_complementarity),
            ("max_interior_residual".into(), self.max_interior_residual),
        ]
    }
}

struct StencilScan {
    fixed_point_residual: f64,
    report: ComplementarityReport,
}

/// Reflected 5/7-point neighbor sum at a non-boundary node.
fn neighbor_sum(grid: &Grid, u: &[f64], flat: usize, idx: [usize; 3]) -> f64 {
    let n = grid.dim();
    let strides = grid.strides();
    let mut nb = 0.0;
    for a in 0..n - 1 {
        nb += u[flat - strides[a]] + u[flat + strides[a]];
    }
    let sn = strides[n - 1];
    if idx[n - 1] == 0 {
        nb += 2.0 * u[flat + sn];
    } else {
        nb += u[flat - sn] + u[flat + sn];
    }
    nb
}

/// Discrete Laplacian `(Σ neighbors - 2n u) / h²` with the even ghost
/// reflection at thin nodes. Valid at non-boundary nodes of any grid field.
pub fn discrete_laplacian(f: &GridFunction, flat: usize) -> f64 {
    let grid = f.grid();
    let idx = grid.multi_index(flat);
    let nb = neighbor_sum(grid, f.values(), flat, idx);
    let n = grid.dim();
    (nb - 2.0 * n as f64 * f.values()[flat]) / grid.spacing().powi(2)
}

fn frozen_scan(grid: &Grid, u: &[f64]) -> StencilScan {
    let n = grid.dim();
    let inv2n = 1.0 / (2.0 * n as f64);
    let h2 = grid.spacing() * grid.spacing();
    let mut resid = 0.0f64;
    let mut neg = 0.0f64;
    let mut thin_pos = 0.0f64;
    let mut compl = 0.0f64;
    let mut interior = 0.0f64;
    for flat in 0..grid.node_count() {
        let class = grid.class(flat);
        if class == NodeClass::OuterBoundary {
            continue;
        }
        let idx = grid.multi_index(flat);
        let target = neighbor_sum(grid, u, flat, idx) * inv2n;
        let v = u[flat];
        match class {
            NodeClass::Thin => {
                neg = neg.max(-v);
                resid = resid.max((target.max(0.0) - v).abs() / h2);
                thin_pos = thin_pos.max((target - v).max(0.0) / h2);
                compl = compl.max(v * (target - v).abs() / h2);
            }
            _ => {
                let r = (target - v).abs() / h2;
                resid = resid.max(r);
                interior = interior.max(r);
            }
        }
    }
    StencilScan {
        fixed_point_residual: resid,
        report: ComplementarityReport {
            max_thin_negativity: neg.max(0.0),
            max_thin_positive_laplacian: thin_pos,
            max_complementarity: compl,
            max_interior_residual: interior,
        },
    }
}

/// Discrete half-domain Dirichlet energy (thin tangential edges half-weighted).
fn energy(grid: &Grid, u: &[f64]) -> f64 {
    let n = grid.dim();
    let dims = grid.dims();
    let strides = grid.strides();
    let mut e = 0.0;
    for flat in 0..grid.node_count() {
        let idx = grid.multi_index(flat);
        let on_plane = idx[n - 1] == 0;
        for a in 0..n {
            if idx[a] + 1 < dims[a] {
                let d = u[flat + strides[a]] - u[flat];
                let w = if on_plane && a != n - 1 { 0.5 } else { 1.0 };
                e += w * d * d;
            }
        }
    }
    e
}

struct SweepConfig {
    omega: f64,
    project: bool,
}

/// One lexicographic Gauss–Seidel sweep; returns the largest projected
/// fixed-point update `|P(target) - u_old|` observed.
fn sweep(grid: &Grid, u: &mut [f64], fixed: &[bool], cfg: &SweepConfig) -> f64 {
    let n = grid.dim();
    let dims = grid.dims();
    let strides = grid.strides();
    let inv2n = 1.0 / (2.0 * n as f64);
    let omega = cfg.omega;
    let mut max_delta = 0.0f64;

    let nx = dims[0];
    let ny = dims[1];
    let nz = dims[2];
    let sy = strides[1];
    let sz = strides[2];

    if n == 2 {
        for iy in 0..ny - 1 {
            let row = iy * sy;
            for ix in 1..nx - 1 {
                let i = row + ix;
                if fixed[i] {
                    continue;
                }
                let nb = u[i - 1]
                    + u[i + 1]
                    + if iy == 0 {
                        2.0 * u[i + sy]
                    } else {
                        u[i - sy] + u[i + sy]
                    };
                let target = nb * inv2n;
                let v = u[i];
                let projected = if cfg.project && iy == 0 {
                    target.max(0.0)
                } else {
                    target
                };
                max_delta = max_delta.max((projected - v).abs());
                let mut new = v + omega * (target - v);
                if cfg.project && iy == 0 && new < 0.0 {
                    new = 0.0;
                }
                u[i] = new;
            }
        }
    } else {
        for iz in 0..nz - 1 {
            for iy in 1..ny - 1 {
                let row = iz * sz + iy * sy;
                for ix in 1..nx - 1 {
                    let i = row + ix;
                    if fixed[i] {
                        continue;
                    }
                    let nb = u[i - 1]
                        + u[i + 1]
                        + u[i - sy]
                        + u[i + sy]
                        + if iz == 0 {
                            2.0 * u[i + sz]
                        } else {
                            u[i - sz] + u[i + sz]
                        };
                    let target = nb * inv2n;
                    let v = u[i];
                    let projected = if cfg.project && iz == 0 {
                        target.max(0.0)
                    } else {
                        target
                    };
                    max_delta = max_delta.max((projected - v).abs());
                    let mut new = v + omega * (target - v);
                    if cfg.project && iz == 0 && new < 0.0 {
                        new = 0.0;
                    }
                    u[i] = new;
                }
            }
        }
    }
    max_delta
}

fn default_omega(n: usize) -> f64 {
    if n == 2 {
        1.9
    } else {
        1.7
    }
}

fn default_tol(n: usize) -> f64 {
    if n == 2 {
        1e-10
    } else {
        1e-8
    }
}

/// Solve the discrete thin obstacle problem.
///
/// Returns a flagged (never silent) non-converged state when `max_iter` is
/// exhausted.
pub fn solve(grid: &Arc<Grid>, data: &BoundaryData, params: &SolveParams) -> Result<Solution> {
    let n = grid.dim();
    let omega = params.omega.unwrap_or_else(|| default_omega(n));
    if !(omega > 0.0 && omega < 2.0) {
        return Err(Error::InvalidRelaxation(omega));
    }
    let tol = params.tol.unwrap_or_else(|| default_tol(n));
    let h2 = grid.spacing() * grid.spacing();

    let count = grid.node_count();
    let mut fixed = vec![false; count];
    let mut u = vec![0.0f64; count];
    let mut scale = 0.0f64;
    let mut thin_boundary_min = f64::INFINITY;
    for flat in 0..count {
        if grid.class(flat) == NodeClass::OuterBoundary {
            let x = grid.coords(flat);
            let g = data.value(x);
            if !g.is_finite() {
                return Err(Error::NonFiniteField);
            }
            fixed[flat] = true;
            u[flat] = g;
            scale = scale.max(g.abs());
            if grid.multi_index(flat)[n - 1] == 0 {
                thin_boundary_min = thin_boundary_min.min(g);
            }
        }
    }
    if scale == 0.0 {
        scale = 1.0;
    }
    if thin_boundary_min < -1e-12 * scale {
        return Err(Error::NegativeThinTrace(thin_boundary_min));
    }
    for v in u.iter_mut() {
        *v /= scale;
    }

    if params.init == InitStrategy::ClippedHarmonic {
        let cfg = SweepConfig {
            omega,
            project: false,
        };
        let init_budget = params.max_iter;
        for _ in 0..init_budget {
            if sweep(grid, &mut u, &fixed, &cfg) <= 100.0 * tol * h2 {
                break;
            }
        }
        for flat in 0..count {
            if !fixed[flat] && grid.class(flat) == NodeClass::Thin && u[flat] < 0.0 {
                u[flat] = 0.0;
            }
        }
    }

    let cfg = SweepConfig {
        omega,
        project: true,
    };
    let mut iterations = 0;
    let mut converged = false;
    let mut residual = f64::INFINITY;
    let mut energy_monotone = true;
    let mut worst_uptick = 0.0f64;
    let mut prev_energy = energy(grid, &u);
    let mut last_report = None;

    while iterations < params.max_iter {
        let delta = sweep(grid, &mut u, &fixed, &cfg);
        iterations += 1;
        if params.energy_check_every > 0 && iterations % params.energy_check_every == 0 {
            let e = energy(grid, &u);
            let uptick = e - prev_energy;
            if uptick > 1e-12 * (1.0 + prev_energy.abs()) {
                energy_monotone = false;
                worst_uptick = worst_uptick.max(uptick);
            }
            prev_energy = e;
        }
        if delta <= tol * h2 {
            let scan = frozen_scan(grid, &u);
            residual = scan.fixed_point_residual;
            last_report = Some(scan.report);
            if residual <= tol {
                converged = true;
                break;
            }
        }
    }
    if last_report.is_none() {
        let scan = frozen_scan(grid, &u);
        residual = scan.fixed_point_residual;
    }

    let values: Vec<f64> = u.iter().map(|v| v * scale).collect();
    Ok(Solution {
        u: GridFunction::from_values(grid.clone(), values)?,
        iterations,
        residual,
        converged,
        omega,
        tol,
        data_scale: scale,
        energy_monotone,
        worst_energy_uptick: worst_uptick,
        provenance: data.provenance.clone(),
    })
}

/// Complementarity (KKT) report of a solve, in scaled residual units.
pub fn kkt_report(s: &Solution) -> ComplementarityReport {
    let grid = s.grid();
    let scaled: Vec<f64> = s.u.values().iter().map(|v| v / s.data_scale).collect();
    frozen_scan(grid, &scaled).report
}

/// Node sets that a linear solve holds at zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PinSet {
    /// Plain harmonic solve with the given boundary data.
    None,
    /// Thin nodes with `x_{n-1} ≤ 0` pinned to zero: the discrete slit
    /// (linearized) problem.
    SlitHalfLine,
}

/// Unconstrained SOR solve of the discrete Laplace equation, optionally with
/// a pinned slit. Errors on non-convergence.
pub fn solve_linear(
    grid: &Arc<Grid>,
    data: &BoundaryData,
    pin: PinSet,
    params: &SolveParams,
) -> Result<GridFunction> {
    let n = grid.dim();
    let omega = params.omega.unwrap_or_else(|| default_omega(n));
    if !(omega > 0.0 && omega < 2.0) {
        return Err(Error::InvalidRelaxation(omega));
    }
    let tol = params.tol.unwrap_or_else(|| default_tol(n));
    let h2 = grid.spacing() * grid.spacing();
    let count = grid.node_count();
    let mut fixed = vec![false; count];
    let mut u = vec![0.0f64; count];
    for flat in 0..count {
        let x = grid.coords(flat);
        match grid.class(flat) {
            NodeClass::OuterBoundary => {
                fixed[flat] = true;
                u[flat] = data.value(x);
            }
            NodeClass::Thin if pin == PinSet::SlitHalfLine && x[n - 2] <= 1e-12 => {
                fixed[flat] = true;
                u[flat] = 0.0;
            }
            _ => {}
        }
    }
    let cfg = SweepConfig {
        omega,
        project: false,
    };
    let mut iterations = 0;
    loop {
        let delta = sweep(grid, &mut u, &fixed, &cfg);
        iterations += 1;
        if delta <= tol * h2 {
            break;
        }
        if iterations >= params.max_iter {
            return Err(Error::NotConverged {
                residual: delta / h2,
                iterations,
            });
        }
    }
    GridFunction::from_values(grid.clone(), u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::normalization_constant;

    fn h(twice: u32) -> Homogeneity {
        Homogeneity::new(twice).unwrap()
    }

    fn quick_params(grid: &Grid, tol: f64) -> SolveParams {
        SolveParams {
            omega: Some(suggested_omega(grid)),
            tol: Some(tol),
            ..SolveParams::default()
        }
    }

    #[test]
    fn psi_one_data_reproduces_exact_discrete_solution() {
        // -a |x_n| satisfies the reflected complementarity system exactly
        let grid = Grid::new(2, 65, 2.0).unwrap();
        let data = make_boundary_data(
            2,
            BoundaryKind::Profile {
                lambda: h(2),
                tau: 1.0,
                spine_angle: 0.0,
            },
            2.0,
        )
        .unwrap();
        let s = solve(&grid, &data, &quick_params(&grid, 1e-12))
            .unwrap()
            .require_converged()
            .unwrap();
        let a = normalization_constant(2, h(2)).unwrap();
        let mut sup = 0.0f64;
        for flat in 0..grid.node_count() {
            let x = grid.coords(flat);
            sup = sup.max((s.field().values()[flat] + a * x[1].abs()).abs());
        }
        assert!(sup < 1e-11, "sup error {sup}");
        // all thin nodes in contact
        let zt = s.default_zero_tol();
        for flat in grid.thin_plane_nodes() {
            if grid.class(flat) == NodeClass::Thin {
                assert!(s.is_contact(flat, zt));
            }
        }
        let rep = kkt_report(&s);
        assert_eq!(rep.max_thin_negativity, 0.0);
        assert!(rep.max_violation() <= 1e-11);
        assert!(s.energy_monotone, "uptick {}", s.worst_energy_uptick);
    }

    #[test]
    fn strictly_positive_harmonic_case_is_unconstrained() {
        let grid = Grid::new(2, 65, 2.0).unwrap();
        let data = make_boundary_data(2, BoundaryKind::HarmonicMin { offset: 1.0 }, 2.0).unwrap();
        let s = solve(&grid, &data, &quick_params(&grid, 1e-11))
            .unwrap()
            .require_converged()
            .unwrap();
        // contact empty and solution equals the unconstrained harmonic solve
        let zt = s.default_zero_tol();
        for flat in grid.thin_plane_nodes() {
            if grid.class(flat) == NodeClass::Thin {
                assert!(!s.is_contact(flat, zt));
            }
        }
        let lin = solve_linear(&grid, &data, PinSet::None, &quick_params(&grid, 1e-11)).unwrap();
        let diff: f64 = s
            .field()
            .values()
            .iter()
            .zip(lin.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(diff < 5e-9, "diff {diff}");
    }

    #[test]
    fn solutions_from_different_initial_guesses_agree() {
        let grid = Grid::new(2, 65, 2.0).unwrap();
        let data = make_boundary_data(
            2,
            BoundaryKind::Profile {
                lambda: h(3),
                tau: 1.0,
                spine_angle: 0.0,
            },
            2.0,
        )
        .unwrap();
        let tol = 1e-11;
        let mut p1 = quick_params(&grid, tol);
        p1.init = InitStrategy::ClippedHarmonic;
        let mut p2 = quick_params(&grid, tol);
        p2.init = InitStrategy::Zeros;
        let s1 = solve(&grid, &data, &p1).unwrap().require_converged().unwrap();
        let s2 = solve(&grid, &data, &p2).unwrap().require_converged().unwrap();
        let diff: f64 = s1
            .field()
            .values()
            .iter()
            .zip(s2.field().values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(diff <= 10.0 * tol * s1.data_scale * 1e4, "diff {diff}");
    }

    #[test]
    fn perturbed_profile_validates_trace() {
        // large negative ε drives the thin trace negative
        let bad = make_boundary_data(
            2,
            BoundaryKind::PerturbedProfile {
                lambda: h(3),
                lambda2: h(7),
                tau: 1.0,
                epsilon: -1.5,
                spine_angle: 0.0,
            },
            2.0,
        );
        assert!(matches!(bad, Err(Error::NegativeThinTrace(_))));
        // non-admissible second homogeneity
        let bad = make_boundary_data(
            2,
            BoundaryKind::PerturbedProfile {
                lambda: h(3),
                lambda2: h(5),
                tau: 1.0,
                epsilon: 0.05,
                spine_angle: 0.0,
            },
            2.0,
        );
        assert!(bad.is_err());
        assert!(make_boundary_data(
            2,
            BoundaryKind::PerturbedProfile {
                lambda: h(3),
                lambda2: h(7),
                tau: 1.0,
                epsilon: 0.05,
                spine_angle: 0.0,
            },
            2.0,
        )
        .is_ok());
    }

    #[test]
    fn non_convergence_is_flagged_not_silent() {
        let grid = Grid::new(2, 33, 2.0).unwrap();
        let data = make_boundary_data(
            2,
            BoundaryKind::Profile {
                lambda: h(3),
                tau: 1.0,
                spine_angle: 0.0,
            },
            2.0,
        )
        .unwrap();
        let params = SolveParams {
            max_iter: 1,
            init: InitStrategy::Zeros,
            ..quick_params(&grid, 1e-12)
        };
        let s = solve(&grid, &data, &params).unwrap();
        assert!(!s.converged);
        assert!(matches!(
            s.require_converged(),
            Err(Error::NotConverged { .. })
        ));
    }

    #[test]
    fn slit_solve_vanishes_on_half_line() {
        let grid = Grid::new(2, 65, 2.0).unwrap();
        let elem = crate::profiles::slit_basis_2d(h(1)).unwrap();
        let data = BoundaryData::new("slit", move |x| elem.value(x));
        let w = solve_linear(&grid, &data, PinSet::SlitHalfLine, &quick_params(&grid, 1e-11))
            .unwrap();
        for flat in grid.thin_plane_nodes() {
            let x = grid.coords(flat);
            if x[0] <= 0.0 {
                assert_eq!(w.values()[flat], 0.0);
            }
        }
    }
}
