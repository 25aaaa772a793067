//! Closed-form homogeneous 2D model solutions ψ_λ, their normalization and
//! Laplacian constants, the 2D classification oracle, and the 2D
//! slit-harmonic basis of the linearized problem.
//!
//! In polar form `x + i|y| = ρ e^{iθ}` with `θ ∈ [0, π]` the three families
//! read
//!
//! ```text
//!   ψ_λ(x, y) = a ρ^λ cos(λθ)    λ half-integer,
//!   ψ_λ(x, y) = -a ρ^λ sin(λθ)   λ odd,
//!   ψ_λ(x, y) = a ρ^λ cos(λθ)    λ even,
//! ```
//!
//! always evaluated at `|y|`, so the branch cut `{y < 0, x = 0}` of the
//! square root is never touched. The constant `a = a(n, λ) > 0` normalizes
//! `‖ψ_λ‖_{L²(∂B_1)} = 1` in the ambient dimension: constants are computed
//! numerically once and cached, never hard-coded.
//!
//! Thin traces are evaluated exactly: `a (x)_+^λ` for half-integers, `0` for
//! odd λ, `a |x|^λ` for even λ.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{OnceLock, RwLock};

use crate::geometry::{sphere_directions, Point, ScalarField, SphericalSample};
use crate::{Error, Result};

/// Admissible homogeneity, stored as `2λ` to keep the half-integer lattice
/// exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Homogeneity {
    twice: u32,
}

/// Branch of the ψ_λ definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// λ ∈ 1/2 + ℕ; trace `a (x)_+^λ`.
    HalfOdd,
    /// λ ∈ 1 + 2ℕ; trace 0.
    OddInteger,
    /// λ ∈ 2ℕ, λ ≥ 2; trace `a |x|^λ`.
    EvenInteger,
}

impl Homogeneity {
    pub fn new(twice: u32) -> Result<Homogeneity> {
        if twice == 0 {
            return Err(Error::InadmissibleHomogeneity(0.0));
        }
        Ok(Homogeneity { twice })
    }

    pub fn from_f64(lambda: f64) -> Result<Homogeneity> {
        let twice = (2.0 * lambda).round();
        if !(lambda > 0.0) || (2.0 * lambda - twice).abs() > 1e-9 {
            return Err(Error::InadmissibleHomogeneity(lambda));
        }
        Homogeneity::new(twice as u32)
    }

    pub fn twice(&self) -> u32 {
        self.twice
    }

    pub fn value(&self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn family(&self) -> Family {
        if self.twice % 2 == 1 {
            Family::HalfOdd
        } else if self.twice % 4 == 2 {
            Family::OddInteger
        } else {
            Family::EvenInteger
        }
    }

    /// Homogeneities of nonzero 2D solutions: integers and 3/2 + 2ℕ.
    pub fn is_solution(&self) -> bool {
        self.twice % 2 == 0 || self.twice % 4 == 3
    }

    /// Homogeneities of the 2D slit harmonics: 1/2 + ℕ.
    pub fn is_slit(&self) -> bool {
        self.twice % 2 == 1
    }

    /// λ - 1, when still admissible.
    pub fn minus_one(&self) -> Option<Homogeneity> {
        (self.twice > 2).then(|| Homogeneity {
            twice: self.twice - 2,
        })
    }
}

impl std::fmt::Display for Homogeneity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Unnormalized ψ_λ. Off the thin space this is the polar form; on it, the
/// exact trace.
pub fn psi_raw(lambda: Homogeneity, x: f64, y: f64) -> f64 {
    let ay = y.abs();
    let lv = lambda.value();
    if ay == 0.0 {
        return match lambda.family() {
            Family::HalfOdd => {
                if x > 0.0 {
                    x.powf(lv)
                } else {
                    0.0
                }
            }
            Family::OddInteger => 0.0,
            Family::EvenInteger => x.abs().powf(lv),
        };
    }
    let rho = x.hypot(ay);
    let theta = ay.atan2(x);
    let amp = rho.powf(lv);
    match lambda.family() {
        Family::HalfOdd | Family::EvenInteger => amp * (lv * theta).cos(),
        Family::OddInteger => -amp * (lv * theta).sin(),
    }
}

/// Gradient of the unnormalized ψ_λ in the closed upper half-plane, from the
/// derivative of the complex power; the `y < 0` side follows by reflection.
pub fn psi_raw_gradient(lambda: Homogeneity, x: f64, y: f64) -> (f64, f64) {
    let ay = y.abs();
    let lv = lambda.value();
    let rho = x.hypot(ay);
    if rho == 0.0 {
        return (0.0, 0.0);
    }
    let theta = ay.atan2(x);
    let amp = lv * rho.powf(lv - 1.0);
    let (gx, gy) = match lambda.family() {
        Family::HalfOdd | Family::EvenInteger => (
            amp * ((lv - 1.0) * theta).cos(),
            -amp * ((lv - 1.0) * theta).sin(),
        ),
        Family::OddInteger => (
            -amp * ((lv - 1.0) * theta).sin(),
            -amp * ((lv - 1.0) * theta).cos(),
        ),
    };
    if y < 0.0 {
        (gx, -gy)
    } else {
        (gx, gy)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum ConstKind {
    Norm,
    LaplacianC,
    DerivativeB,
}

fn cache() -> &'static RwLock<HashMap<(ConstKind, usize, u32), f64>> {
    static CACHE: OnceLock<RwLock<HashMap<(ConstKind, usize, u32), f64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn cached(kind: ConstKind, n: usize, lambda: Homogeneity, compute: impl Fn() -> f64) -> f64 {
    let key = (kind, n, lambda.twice());
    if let Some(v) = cache().read().unwrap().get(&key) {
        return *v;
    }
    let v = compute();
    cache().write().unwrap().insert(key, v);
    v
}

/// `‖ψ_λ^{raw}‖²_{L²(∂B_1 ⊂ ℝⁿ)}`.
///
/// For n = 3 the profile depends only on `(x_1, x_3)`, so the sphere integral
/// factorizes exactly into the circle integral times
/// `2 ∫_0^{π/2} sin^{2λ+1}φ dφ` (polar slicing along the invariant axis);
/// both one-dimensional integrals are smooth and evaluated to near machine
/// precision.
fn norm_sq_raw(n: usize, lambda: Homogeneity, circle_nodes: usize, radial_nodes: usize) -> f64 {
    let dirs = sphere_directions(2, circle_nodes).expect("internal quadrature");
    let circle: f64 = dirs
        .iter()
        .map(|(d, w)| {
            let v = psi_raw(lambda, d[0], d[1]);
            w * v * v
        })
        .sum();
    match n {
        2 => circle,
        _ => {
            let half_pi = PI / 2.0;
            let p = 2.0 * lambda.value() + 1.0;
            let mut radial = 0.0;
            for (t, w) in gauss_legendre_unit(radial_nodes) {
                let phi = half_pi * t;
                radial += half_pi * w * phi.sin().powf(p);
            }
            2.0 * circle * radial
        }
    }
}

/// Gauss–Legendre nodes and weights mapped to [0, 1].
fn gauss_legendre_unit(k: usize) -> Vec<(f64, f64)> {
    crate::geometry::gauss_legendre_nodes(k)
        .into_iter()
        .map(|(x, w)| (0.5 * (x + 1.0), 0.5 * w))
        .collect()
}

/// Normalization constant `a(n, λ)` with `‖a ψ_λ^{raw}‖_{L²(∂B_1)} = 1`.
pub fn normalization_constant(n: usize, lambda: Homogeneity) -> Result<f64> {
    if n != 2 && n != 3 {
        return Err(Error::UnsupportedDimension(n));
    }
    Ok(cached(ConstKind::Norm, n, lambda, || {
        1.0 / norm_sq_raw(n, lambda, 4096, 256).sqrt()
    }))
}

/// Normalized ψ_λ at a 2D point, in the `L²(∂B_1 ⊂ ℝⁿ)` normalization.
pub fn psi_value(n: usize, lambda: Homogeneity, x: f64, y: f64) -> Result<f64> {
    Ok(normalization_constant(n, lambda)? * psi_raw(lambda, x, y))
}

/// Normalized ψ_λ in the plane (`n = 2`).
pub fn psi(lambda: Homogeneity, x: f64, y: f64) -> Result<f64> {
    psi_value(2, lambda, x, y)
}

/// Laplacian constant `c(n, λ) ≥ 0` of the surface density table, computed
/// from the one-sided normal derivative `2 ∂_y ψ_λ(·, 0+)`.
pub fn laplacian_constant(n: usize, lambda: Homogeneity) -> Result<f64> {
    if n != 2 && n != 3 {
        return Err(Error::UnsupportedDimension(n));
    }
    if lambda.family() == Family::EvenInteger {
        return Ok(0.0);
    }
    let a = normalization_constant(n, lambda)?;
    Ok(cached(ConstKind::LaplacianC, n, lambda, || {
        let x0 = match lambda.family() {
            Family::HalfOdd => -1.0,
            _ => 1.0,
        };
        // 5-point one-sided derivative in y at (x0, 0+)
        let d = 1e-3;
        let f = |k: f64| a * psi_raw(lambda, x0, k * d);
        let dpsi = (-25.0 * f(0.0) + 48.0 * f(1.0) - 36.0 * f(2.0) + 16.0 * f(3.0) - 3.0 * f(4.0))
            / (12.0 * d);
        (2.0 * dpsi).abs()
    }))
}

/// Derivative constant `b(n, λ) > 0` in `∂_x ψ_λ = b ψ_{λ-1}`, defined for
/// half-integers λ ≥ 3/2; fitted once at a reference point.
pub fn derivative_constant(n: usize, lambda: Homogeneity) -> Result<f64> {
    if lambda.family() != Family::HalfOdd || lambda.twice() < 3 {
        return Err(Error::InadmissibleHomogeneity(lambda.value()));
    }
    let prev = lambda.minus_one().expect("twice >= 3");
    let a_hi = normalization_constant(n, lambda)?;
    let a_lo = normalization_constant(n, prev)?;
    Ok(cached(ConstKind::DerivativeB, n, lambda, || {
        let (x, y) = (0.31, 0.67);
        let (gx, _) = psi_raw_gradient(lambda, x, y);
        a_hi * gx / (a_lo * psi_raw(prev, x, y))
    }))
}

/// Signed surface density of `Δ(τ ψ_λ ∘ S)` at the thin-space point `x'`,
/// where the rotation `S` is represented by the spine `e` (density is a
/// function of `e · x'`).
pub fn laplacian_density(
    n: usize,
    lambda: Homogeneity,
    tau: f64,
    spine: Point,
    x_thin: Point,
) -> Result<f64> {
    let c = laplacian_constant(n, lambda)?;
    let t: f64 = (0..n - 1).map(|a| spine[a] * x_thin[a]).sum();
    let lv = lambda.value();
    Ok(match lambda.family() {
        Family::EvenInteger => 0.0,
        Family::OddInteger => -c * tau * t.abs().powf(lv - 1.0),
        Family::HalfOdd => {
            let neg_part = (-t).max(0.0);
            let magnitude = c * tau * neg_part.powf(lv - 1.0);
            if lambda.twice() % 4 == 3 {
                -magnitude
            } else {
                // λ ∈ 1/2 + 2ℕ: the density is nonnegative, which is exactly
                // why these homogeneities are not solutions.
                magnitude
            }
        }
    })
}

/// A homogeneous 2D model `τ ψ_λ(e · x', x_n)`, constant along thin
/// directions orthogonal to the spine.
#[derive(Debug, Clone)]
pub struct Profile {
    n: usize,
    lambda: Homogeneity,
    tau: f64,
    spine: Point,
    norm: f64,
}

impl Profile {
    pub fn new(n: usize, lambda: Homogeneity, tau: f64, spine: Point) -> Result<Profile> {
        if n != 2 && n != 3 {
            return Err(Error::UnsupportedDimension(n));
        }
        if !lambda.is_solution() {
            return Err(Error::NotSolutionHomogeneity(lambda.value()));
        }
        let mut e = spine;
        for c in e.iter_mut().skip(n - 1) {
            if c.abs() > 1e-12 {
                return Err(Error::InvalidSpine);
            }
            *c = 0.0;
        }
        let len = (e[0] * e[0] + e[1] * e[1]).sqrt();
        if (len - 1.0).abs() > 1e-9 || !tau.is_finite() || tau < 0.0 {
            return Err(Error::InvalidSpine);
        }
        e[0] /= len;
        e[1] /= len;
        let norm = normalization_constant(n, lambda)?;
        Ok(Profile {
            n,
            lambda,
            tau,
            spine: e,
            norm,
        })
    }

    /// Spine from an angle in the thin space (`n = 2` snaps to ±e₁).
    pub fn from_angle(n: usize, lambda: Homogeneity, tau: f64, angle: f64) -> Result<Profile> {
        let spine = spine_from_angle(n, angle)?;
        Profile::new(n, lambda, tau, spine)
    }

    pub fn lambda(&self) -> Homogeneity {
        self.lambda
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn spine(&self) -> Point {
        self.spine
    }

    /// Thin-space trace at `x'`.
    pub fn trace(&self, x_thin: Point) -> f64 {
        let t: f64 = (0..self.n - 1).map(|a| self.spine[a] * x_thin[a]).sum();
        self.tau * self.norm * psi_raw(self.lambda, t, 0.0)
    }

    /// Surface density of the distributional Laplacian at a thin point.
    pub fn surface_density(&self, x_thin: Point) -> Result<f64> {
        laplacian_density(self.n, self.lambda, self.tau, self.spine, x_thin)
    }
}

impl ScalarField for Profile {
    fn dim(&self) -> usize {
        self.n
    }

    fn value(&self, x: Point) -> f64 {
        let t: f64 = (0..self.n - 1).map(|a| self.spine[a] * x[a]).sum();
        self.tau * self.norm * psi_raw(self.lambda, t, x[self.n - 1])
    }

    fn gradient(&self, x: Point) -> Point {
        let t: f64 = (0..self.n - 1).map(|a| self.spine[a] * x[a]).sum();
        let (gx, gy) = psi_raw_gradient(self.lambda, t, x[self.n - 1]);
        let scale = self.tau * self.norm;
        let mut g = [0.0; 3];
        for a in 0..self.n - 1 {
            g[a] = scale * gx * self.spine[a];
        }
        g[self.n - 1] = scale * gy;
        g
    }
}

/// Unit spine from an in-plane angle; for `n = 2` the thin space is a line,
/// so the angle must point along ±e₁.
pub fn spine_from_angle(n: usize, angle: f64) -> Result<Point> {
    match n {
        2 => {
            let c = angle.cos();
            if angle.sin().abs() > 1e-9 {
                return Err(Error::InvalidSpine);
            }
            Ok([c.signum(), 0.0, 0.0])
        }
        3 => Ok([angle.cos(), angle.sin(), 0.0]),
        _ => Err(Error::UnsupportedDimension(n)),
    }
}

/// One element of the 2D slit-harmonic basis: ψ_λ' with λ' ∈ 1/2 + ℕ,
/// vanishing on `{x ≤ 0, y = 0}` and unit-normalized on the circle.
#[derive(Debug, Clone, Copy)]
pub struct SlitBasisElement {
    lambda: Homogeneity,
    norm: f64,
}

impl SlitBasisElement {
    pub fn lambda(&self) -> Homogeneity {
        self.lambda
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.norm * psi_raw(self.lambda, x, y)
    }
}

impl ScalarField for SlitBasisElement {
    fn dim(&self) -> usize {
        2
    }

    fn value(&self, x: Point) -> f64 {
        self.eval(x[0], x[1])
    }

    fn gradient(&self, x: Point) -> Point {
        let (gx, gy) = psi_raw_gradient(self.lambda, x[0], x[1]);
        [self.norm * gx, self.norm * gy, 0.0]
    }
}

/// The 2D slit basis member of homogeneity λ' ∈ 1/2 + ℕ (each eigenspace is
/// one-dimensional in the plane).
pub fn slit_basis_2d(lambda: Homogeneity) -> Result<SlitBasisElement> {
    if !lambda.is_slit() {
        return Err(Error::NotSlitHomogeneity(lambda.value()));
    }
    Ok(SlitBasisElement {
        lambda,
        norm: normalization_constant(2, lambda)?,
    })
}

/// The `n = 3` slit member `ψ_λ(x_{n-1}, x_n)`, unit-normalized on `∂B_1 ⊂ ℝ³`.
pub fn slit_member_psi_3d(lambda: Homogeneity) -> Result<impl ScalarField> {
    if !lambda.is_slit() {
        return Err(Error::NotSlitHomogeneity(lambda.value()));
    }
    let norm = normalization_constant(3, lambda)?;
    Ok(crate::geometry::AnalyticField::new(3, move |x: Point| {
        norm * psi_raw(lambda, x[1], x[2])
    }))
}

/// The `n = 3` slit member `x_i ψ_{λ-1}(x_{n-1}, x_n)` (unnormalized);
/// only `i = 1` exists for `n = 3`.
pub fn slit_member_xpsi_3d(lambda: Homogeneity) -> Result<impl ScalarField> {
    let prev = lambda
        .minus_one()
        .ok_or(Error::NotSlitHomogeneity(lambda.value()))?;
    if !lambda.is_slit() {
        return Err(Error::NotSlitHomogeneity(lambda.value()));
    }
    Ok(crate::geometry::AnalyticField::new(3, move |x: Point| {
        x[0] * psi_raw(prev, x[1], x[2])
    }))
}

/// Result of the 2D circle-profile classification.
#[derive(Debug, Clone, PartialEq)]
pub enum Classification {
    /// The profile matches `τ ψ_λ(s x, y)` with spine sign `s`.
    Profile {
        lambda: Homogeneity,
        tau: f64,
        spine_sign: f64,
        residual: f64,
    },
    /// No admissible homogeneous solution matches within the residual gate.
    Rejected { best_residual: f64 },
}

/// Classify a circle profile `θ ↦ u(cos θ, sin θ)` against the dictionary of
/// homogeneous 2D solutions with λ ≤ `cap`, by least squares over (λ, τ ≥ 0,
/// spine direction). Rejects when the best residual exceeds `1e-6 ‖profile‖`.
pub fn classify_2d(
    profile: impl Fn(f64) -> f64,
    samples: usize,
    cap: Homogeneity,
) -> Result<Classification> {
    if samples < 256 {
        return Err(Error::TooFewProfileSamples(samples));
    }
    let m = samples;
    let w = 2.0 * PI / m as f64;
    let values: Vec<f64> = (0..m).map(|j| profile(w * (j as f64 + 0.5))).collect();
    if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteProfile);
    }
    let norm_sq: f64 = values.iter().map(|v| w * v * v).sum();
    let norm = norm_sq.sqrt();
    // evenness about the thin axis: midpoint angles pair j <-> m-1-j
    let mut asym = 0.0f64;
    for j in 0..m / 2 {
        asym = asym.max((values[j] - values[m - 1 - j]).abs());
    }
    if asym > 1e-8 * (1.0 + norm) {
        return Err(Error::ProfileNotEven(asym));
    }

    let mut best: Option<(Homogeneity, f64, f64, f64)> = None;
    for twice in 1..=cap.twice() {
        let lambda = Homogeneity::new(twice)?;
        if !lambda.is_solution() {
            continue;
        }
        let spines: &[f64] = if lambda.family() == Family::HalfOdd {
            &[1.0, -1.0]
        } else {
            &[1.0]
        };
        let a = normalization_constant(2, lambda)?;
        for &s in spines {
            let model: Vec<f64> = (0..m)
                .map(|j| {
                    let th = w * (j as f64 + 0.5);
                    a * psi_raw(lambda, s * th.cos(), th.sin())
                })
                .collect();
            let ip: f64 = values.iter().zip(&model).map(|(v, q)| w * v * q).sum();
            let mm: f64 = model.iter().map(|q| w * q * q).sum();
            let tau = (ip / mm).max(0.0);
            let res_sq: f64 = values
                .iter()
                .zip(&model)
                .map(|(v, q)| {
                    let d = v - tau * q;
                    w * d * d
                })
                .sum();
            let res = res_sq.max(0.0).sqrt();
            if best.map_or(true, |(_, _, _, r)| res < r) {
                best = Some((lambda, tau, s, res));
            }
        }
    }
    let (lambda, tau, spine_sign, residual) = best.expect("non-empty dictionary");
    if residual <= 1e-6 * norm {
        Ok(Classification::Profile {
            lambda,
            tau,
            spine_sign,
            residual,
        })
    } else {
        Ok(Classification::Rejected {
            best_residual: residual,
        })
    }
}

/// Coefficients `c_λ = ∫_{∂B_1} w ψ_λ` of a circle sample against the 2D slit
/// basis, for λ ∈ {1/2, 3/2, ..., up_to}.
pub fn project_slit(
    sample: &SphericalSample,
    up_to: Homogeneity,
) -> Result<Vec<(Homogeneity, f64)>> {
    if sample.dim != 2 {
        return Err(Error::SlitBasisUnsupported(sample.dim));
    }
    let mut out = Vec::new();
    let mut twice = 1;
    while twice <= up_to.twice() {
        let lambda = Homogeneity::new(twice)?;
        let elem = slit_basis_2d(lambda)?;
        let c = sample.integrate_against(|d| elem.eval(d[0], d[1]));
        out.push((lambda, c));
        twice += 2;
    }
    Ok(out)
}
