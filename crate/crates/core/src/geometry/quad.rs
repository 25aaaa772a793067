use std::f64::consts::PI;

use super::field::ScalarField;
use super::grid::Point;
use crate::{Error, Result};

/// Interpolated trace of a field on a sphere, with quadrature weights.
///
/// Weights sum to the surface measure of the unit sphere (2π for n = 2,
/// 4π for n = 3); integrals of the sampled field over `∂B_r` in the
/// `H_μ` convention are obtained from these unit-sphere samples directly.
#[derive(Debug, Clone)]
pub struct SphericalSample {
    pub center: Point,
    pub radius: f64,
    pub dim: usize,
    /// (unit direction, quadrature weight, field value at center + r*dir)
    pub entries: Vec<(Point, f64, f64)>,
}

impl SphericalSample {
    /// ∫_{∂B_1} g(σ) dσ for the sampled values.
    pub fn integrate(&self) -> f64 {
        self.entries.iter().map(|(_, w, v)| w * v).sum()
    }

    /// ∫_{∂B_1} g(σ)² dσ.
    pub fn integrate_sq(&self) -> f64 {
        self.entries.iter().map(|(_, w, v)| w * v * v).sum()
    }

    /// ∫_{∂B_1} g(σ) q(σ) dσ against an analytic function of the direction.
    pub fn integrate_against(&self, q: impl Fn(Point) -> f64) -> f64 {
        self.entries.iter().map(|(d, w, v)| w * v * q(*d)).sum()
    }

    pub fn weight_sum(&self) -> f64 {
        self.entries.iter().map(|(_, w, _)| w).sum()
    }
}

/// Quadrature resolution for solid (ball/shell) integrals.
#[derive(Debug, Clone, Copy)]
pub struct QuadSpec {
    /// Gauss–Legendre nodes in the radial direction.
    pub radial: usize,
    /// Angular node count passed to [`sphere_directions`].
    pub angular: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            radial: 48,
            angular: 512,
        }
    }
}

/// Gauss–Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre polynomial.
pub fn gauss_legendre_nodes(k: usize) -> Vec<(f64, f64)> {
    gauss_legendre(k)
}

pub(crate) fn gauss_legendre(k: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        // Chebyshev-like initial guess
        let mut x = (PI * (i as f64 + 0.75) / (k as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_k and P_k' by recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for j in 2..=k {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            dp = k as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((x, w));
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

/// Unit directions and weights.
///
/// * `n = 2`: `m` uniform midpoint angles θ_j = 2π(j+1/2)/m. Exact for
///   trigonometric polynomials of degree < m and, in particular, for products
///   of the even-reflected homogeneous traces (whose pairwise products are
///   trigonometric polynomials).
/// * `n = 3`: product rule, Gauss–Legendre in the polar cosine split at the
///   equator (reflected fields kink there) times uniform azimuth; at least
///   `m` nodes in total.
pub fn sphere_directions(n: usize, m: usize) -> Result<Vec<(Point, f64)>> {
    if m < 64 {
        return Err(Error::TooFewAngularNodes(m));
    }
    match n {
        2 => {
            let w = 2.0 * PI / m as f64;
            Ok((0..m)
                .map(|j| {
                    let th = w * (j as f64 + 0.5);
                    ([th.cos(), th.sin(), 0.0], w)
                })
                .collect())
        }
        3 => {
            // 2p polar nodes (p per hemisphere) x 2p azimuths >= m
            let p = (((m as f64) / 4.0).sqrt().ceil() as usize).max(4);
            let gl = gauss_legendre(p);
            let azi = 2 * p;
            let wa = 2.0 * PI / azi as f64;
            let mut out = Vec::with_capacity(2 * p * azi);
            for hemi in [-1.0, 1.0] {
                for &(t, wt) in &gl {
                    // map [-1,1] -> [0,1] then to the hemisphere
                    let mu = hemi * 0.5 * (t + 1.0);
                    let s = (1.0 - mu * mu).max(0.0).sqrt();
                    for j in 0..azi {
                        let ph = wa * (j as f64 + 0.5);
                        out.push(([s * ph.cos(), s * ph.sin(), mu], 0.5 * wt * wa));
                    }
                }
            }
            Ok(out)
        }
        _ => Err(Error::UnsupportedDimension(n)),
    }
}

fn check_ball(f: &dyn ScalarField, center: Point, r: f64) -> Result<()> {
    let floor = f.resolution_floor();
    if floor > 0.0 && r < floor - 1e-12 {
        return Err(Error::RadiusBelowFloor { radius: r, floor });
    }
    if !f.supports_ball(center, r) {
        return Err(Error::BallOutsideDomain {
            cx: center[0],
            cy: center[1],
            cz: center[2],
            radius: r,
        });
    }
    Ok(())
}

/// Sample a field on `∂B_r(center)`.
pub fn sample_sphere(
    f: &dyn ScalarField,
    center: Point,
    r: f64,
    m: usize,
) -> Result<SphericalSample> {
    check_ball(f, center, r)?;
    let dirs = sphere_directions(f.dim(), m)?;
    let entries = dirs
        .into_iter()
        .map(|(d, w)| {
            let x = [
                center[0] + r * d[0],
                center[1] + r * d[1],
                center[2] + r * d[2],
            ];
            (d, w, f.value(x))
        })
        .collect();
    Ok(SphericalSample {
        center,
        radius: r,
        dim: f.dim(),
        entries,
    })
}

/// ∫_{B_r(center)} g(x) dx via radial Gauss–Legendre times the angular rule,
/// where `g` is given on sphere points as `g(s, x)` with `s` the radius.
fn ball_integral(
    f: &dyn ScalarField,
    center: Point,
    r_lo: f64,
    r_hi: f64,
    spec: QuadSpec,
    g: impl Fn(&dyn ScalarField, Point) -> f64,
) -> Result<f64> {
    check_ball(f, center, r_hi)?;
    let n = f.dim();
    let dirs = sphere_directions(n, spec.angular)?;
    let gl = gauss_legendre(spec.radial);
    let mid = 0.5 * (r_hi + r_lo);
    let half = 0.5 * (r_hi - r_lo);
    let mut total = 0.0;
    for &(t, wt) in &gl {
        let s = mid + half * t;
        let mut ang = 0.0;
        for (d, w, _) in dirs.iter().map(|(d, w)| (d, w, ())) {
            let x = [
                center[0] + s * d[0],
                center[1] + s * d[1],
                center[2] + s * d[2],
            ];
            ang += w * g(f, x);
        }
        total += wt * half * s.powi(n as i32 - 1) * ang;
    }
    Ok(total)
}

/// ∫_{B_r(center)} f² dx.
pub fn ball_l2_sq(f: &dyn ScalarField, center: Point, r: f64, spec: QuadSpec) -> Result<f64> {
    ball_integral(f, center, 0.0, r, spec, |f, x| {
        let v = f.value(x);
        v * v
    })
}

/// ∫_{B_r2 \ B_r1} f² dx.
pub fn shell_l2_sq(
    f: &dyn ScalarField,
    center: Point,
    r1: f64,
    r2: f64,
    spec: QuadSpec,
) -> Result<f64> {
    ball_integral(f, center, r1, r2, spec, |f, x| {
        let v = f.value(x);
        v * v
    })
}

/// Scaled Dirichlet energy `r^{2-n} ∫_{B_r(center)} |∇f|² dx`.
///
/// Consistent with `∇(f(r·)) = r (∇f)(r·)`: this equals `∫_{B_1} |∇f_r|²`.
pub fn ball_energy(f: &dyn ScalarField, center: Point, r: f64) -> Result<f64> {
    ball_energy_with(f, center, r, QuadSpec::default())
}

pub fn ball_energy_with(
    f: &dyn ScalarField,
    center: Point,
    r: f64,
    spec: QuadSpec,
) -> Result<f64> {
    let n = f.dim();
    let raw = ball_integral(f, center, 0.0, r, spec, |f, x| {
        let g = f.gradient(x);
        g[0] * g[0] + g[1] * g[1] + g[2] * g[2]
    })?;
    Ok(r.powi(2 - n as i32) * raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{AnalyticField, Grid, GridFunction};

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let gl = gauss_legendre(16);
        let sum: f64 = gl.iter().map(|(_, w)| w).sum();
        assert!((sum - 2.0).abs() < 1e-14);
        // ∫_{-1}^{1} x^8 = 2/9
        let v: f64 = gl.iter().map(|(x, w)| w * x.powi(8)).sum();
        assert!((v - 2.0 / 9.0).abs() < 1e-13);
    }

    #[test]
    fn constant_field_integrates_to_surface_measure() {
        let one2 = AnalyticField::new(2, |_| 1.0);
        let s = sample_sphere(&one2, [0.1, 0.2, 0.0], 0.5, 128).unwrap();
        assert!((s.integrate() - 2.0 * PI).abs() < 1e-12);
        assert!((s.weight_sum() - 2.0 * PI).abs() < 1e-12);

        let one3 = AnalyticField::new(3, |_| 1.0);
        let s = sample_sphere(&one3, [0.0, 0.0, 0.3], 0.4, 256).unwrap();
        assert!((s.integrate() - 4.0 * PI).abs() / (4.0 * PI) < 1e-12);
    }

    #[test]
    fn odd_field_integrates_to_zero() {
        let f = AnalyticField::new(2, |x| x[0]);
        let s = sample_sphere(&f, [0.0, 0.0, 0.0], 1.0, 256).unwrap();
        assert!(s.integrate().abs() < 1e-13);
    }

    #[test]
    fn quadrature_exactness_low_degree_harmonics() {
        // degree <= 2 spherical harmonics on analytic (non-interpolated) fields
        let m = 256;
        let h2 = AnalyticField::new(2, |x| x[0] * x[0] - x[1] * x[1]);
        let s = sample_sphere(&h2, [0.0; 3], 1.0, m).unwrap();
        assert!(s.integrate().abs() < 1e-10);

        let h3 = AnalyticField::new(3, |x| x[0] * x[1]);
        let s = sample_sphere(&h3, [0.0; 3], 1.0, m).unwrap();
        assert!(s.integrate().abs() < 1e-10);
        let h3b = AnalyticField::new(3, |x| 3.0 * x[2] * x[2] - 1.0);
        let s = sample_sphere(&h3b, [0.0; 3], 1.0, m).unwrap();
        assert!(s.integrate().abs() < 1e-10);
    }

    #[test]
    fn sphere_floor_and_domain_checks() {
        let grid = Grid::new(2, 33, 2.0).unwrap();
        let h = grid.spacing();
        let f = GridFunction::zeros(grid);
        assert!(matches!(
            sample_sphere(&f, [0.0; 3], 2.0 * h, 128),
            Err(Error::RadiusBelowFloor { .. })
        ));
        assert!(matches!(
            sample_sphere(&f, [1.9, 0.0, 0.0], 0.5, 128),
            Err(Error::BallOutsideDomain { .. })
        ));
    }

    #[test]
    fn ball_energy_of_linear_field_is_area() {
        // |∇x_1|² = 1, so the scaled energy at r over B_r (n = 2) is π r².
        let grid = Grid::new(2, 129, 2.0).unwrap();
        let f = GridFunction::from_fn(grid, |x| x[0]);
        let e = ball_energy(&f, [0.0; 3], 1.0).unwrap();
        assert!((e - PI).abs() < 1e-10, "e = {e}");
        let c = GridFunction::from_fn(Grid::new(2, 33, 2.0).unwrap(), |_| 3.25);
        assert!(ball_energy(&c, [0.0; 3], 1.0).unwrap().abs() < 1e-14);
    }

    #[test]
    fn ball_energy_monotone_in_radius() {
        let grid = Grid::new(2, 65, 2.0).unwrap();
        let f = GridFunction::from_fn(grid, |x| (2.0 * x[0]).sin() + x[1] * x[1]);
        let mut prev = 0.0;
        for k in 1..=6 {
            let r = 0.25 * k as f64;
            // undo the r^{2-n} scale to compare raw Dirichlet integrals
            let e = ball_energy(&f, [0.0; 3], r).unwrap() * r.powi(f.dim() as i32 - 2);
            assert!(e >= prev - 1e-12);
            prev = e;
        }
    }
}
