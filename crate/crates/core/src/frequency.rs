//! Frequency-type functionals and their monotonicity diagnostics.
//!
//! With `w_r(x) := w(rx)` the functionals are
//!
//! ```text
//!   H_μ(r, w) = r^{-2μ} ∫_{∂B_1} w_r²          (H_0 written H)
//!   D(r, w)   = ∫_{B_1} |∇w_r|² = r^{2-n} ∫_{B_r} |∇w|²
//!   φ(r, w)   = D(r, w) / H_0(r, w)
//!   φ_γ(r, w) = (D + γ r^{2γ}) / (H_0 + r^{2γ})
//!   g_γ(r, w) = ‖w_r‖²_{L²(B_2\B_1)} / (H_0 + r^{2γ})
//!   H̃_μ(r, w) = max_{s ∈ [1,2]} H_μ(sr, w)
//! ```
//!
//! Derivatives in `r` are never formed symbolically: monotonicity is asserted
//! on sampled curves with explicit allowances budgeted against the grid
//! spacing.

use crate::geometry::{
    ball_energy_with, sample_sphere, shell_l2_sq, Point, QuadSpec, ScalarField,
};
use crate::solver::Solution;
use crate::{Error, Result};

/// Quadrature and content request for a frequency curve.
#[derive(Debug, Clone)]
pub struct CurveRequest {
    /// Strictly increasing radii, each at least the field's 4h floor.
    pub radii: Vec<f64>,
    /// Exponents μ for which `H_μ` columns are produced.
    pub mu: Vec<f64>,
    /// Truncation orders γ for which `φ_γ` and `g_γ` columns are produced.
    pub gamma: Vec<f64>,
    /// Angular nodes for sphere quadrature.
    pub angular: usize,
    /// Radial × angular rule for ball/shell integrals.
    pub quad: QuadSpec,
}

impl CurveRequest {
    pub fn new(radii: Vec<f64>) -> CurveRequest {
        CurveRequest {
            radii,
            mu: Vec::new(),
            gamma: Vec::new(),
            angular: 1024,
            quad: QuadSpec::default(),
        }
    }

    /// Dyadic radii `r_max, r_max/2, ...` down to `r_min`, ascending.
    pub fn dyadic(r_min: f64, r_max: f64) -> Vec<f64> {
        let mut radii = Vec::new();
        let mut r = r_max;
        while r >= r_min - 1e-12 {
            radii.push(r);
            r *= 0.5;
        }
        radii.reverse();
        radii
    }

    /// `count` log-spaced radii in `[r_min, r_max]`, ascending.
    pub fn log_spaced(r_min: f64, r_max: f64, count: usize) -> Vec<f64> {
        (0..count)
            .map(|i| {
                let t = i as f64 / (count - 1).max(1) as f64;
                r_min * (r_max / r_min).powf(t)
            })
            .collect()
    }
}

/// Sampled map `r ↦ (H_0, D, φ, H_μ, φ_γ, g_γ)` at one center.
#[derive(Debug, Clone)]
pub struct FrequencyCurve {
    pub center: Point,
    pub spacing: f64,
    pub radii: Vec<f64>,
    pub h0: Vec<f64>,
    pub d: Vec<f64>,
    /// `None` where `H_0` underflows the 1e-300 guard.
    pub phi: Vec<Option<f64>>,
    pub h_mu: Vec<(f64, Vec<f64>)>,
    pub phi_gamma: Vec<(f64, Vec<f64>)>,
    pub g_gamma: Vec<(f64, Vec<f64>)>,
}

impl FrequencyCurve {
    pub fn phi_values(&self) -> Vec<f64> {
        self.phi.iter().map(|p| p.unwrap_or(f64::NAN)).collect()
    }

    pub fn phi_gamma_values(&self, gamma: f64) -> Option<&[f64]> {
        self.phi_gamma
            .iter()
            .find(|(g, _)| *g == gamma)
            .map(|(_, v)| v.as_slice())
    }

    /// CSV body: header plus one row per radius.
    pub fn to_csv(&self) -> String {
        let mut header = String::from("r,H0,D,phi");
        for (mu, _) in &self.h_mu {
            header.push_str(&format!(",H_mu_{mu}"));
        }
        for (g, _) in &self.phi_gamma {
            header.push_str(&format!(",phi_gamma_{g}"));
        }
        for (g, _) in &self.g_gamma {
            header.push_str(&format!(",g_gamma_{g}"));
        }
        let mut out = header;
        out.push('\n');
        for (i, r) in self.radii.iter().enumerate() {
            out.push_str(&format!("{r:.12e},{:.12e},{:.12e}", self.h0[i], self.d[i]));
            match self.phi[i] {
                Some(p) => out.push_str(&format!(",{p:.12e}")),
                None => out.push_str(","),
            }
            for (_, v) in &self.h_mu {
                out.push_str(&format!(",{:.12e}", v[i]));
            }
            for (_, v) in &self.phi_gamma {
                out.push_str(&format!(",{:.12e}", v[i]));
            }
            for (_, v) in &self.g_gamma {
                out.push_str(&format!(",{:.12e}", v[i]));
            }
            out.push('\n');
        }
        out
    }
}

const H0_GUARD: f64 = 1e-300;

/// Evaluate the frequency functionals of `f` centered at `center`.
pub fn frequency_curve(
    f: &dyn ScalarField,
    center: Point,
    req: &CurveRequest,
) -> Result<FrequencyCurve> {
    if req.radii.len() < 1 {
        return Err(Error::TooFewRadii(0));
    }
    let n = f.dim();
    let mut h0 = Vec::with_capacity(req.radii.len());
    let mut d = Vec::with_capacity(req.radii.len());
    let mut phi = Vec::with_capacity(req.radii.len());
    let mut shell = Vec::with_capacity(req.radii.len());
    let need_shell = !req.gamma.is_empty();
    let mut prev = 0.0;
    for &r in &req.radii {
        if r <= prev {
            return Err(Error::RadiusBelowFloor {
                radius: r,
                floor: prev,
            });
        }
        prev = r;
        let sample = sample_sphere(f, center, r, req.angular)?;
        let h = sample.integrate_sq();
        let dr = ball_energy_with(f, center, r, req.quad)?;
        h0.push(h);
        d.push(dr);
        phi.push((h > H0_GUARD).then(|| dr / h));
        if need_shell {
            let raw = shell_l2_sq(f, center, r, 2.0 * r, req.quad)?;
            shell.push(raw * r.powi(-(n as i32)));
        }
    }
    let h_mu = req
        .mu
        .iter()
        .map(|&mu| {
            let col = req
                .radii
                .iter()
                .zip(&h0)
                .map(|(r, h)| r.powf(-2.0 * mu) * h)
                .collect();
            (mu, col)
        })
        .collect();
    let phi_gamma = req
        .gamma
        .iter()
        .map(|&g| {
            let col = req
                .radii
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let t = r.powf(2.0 * g);
                    (d[i] + g * t) / (h0[i] + t)
                })
                .collect();
            (g, col)
        })
        .collect();
    let g_gamma = req
        .gamma
        .iter()
        .map(|&g| {
            let col = req
                .radii
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let t = r.powf(2.0 * g);
                    shell[i] / (h0[i] + t)
                })
                .collect();
            (g, col)
        })
        .collect();
    Ok(FrequencyCurve {
        center,
        spacing: f.resolution_floor() / 4.0,
        radii: req.radii.clone(),
        h0,
        d,
        phi,
        h_mu,
        phi_gamma,
        g_gamma,
    })
}

/// `H_μ(r, f)` at a single radius.
pub fn h_mu(f: &dyn ScalarField, center: Point, mu: f64, r: f64, angular: usize) -> Result<f64> {
    let sample = sample_sphere(f, center, r, angular)?;
    Ok(r.powf(-2.0 * mu) * sample.integrate_sq())
}

/// Monneau-type running maximum `H̃_μ(r) = max_{s ∈ [1,2]} H_μ(sr)`, by a
/// uniform scan (at least 33 points) with two rounds of 3-point parabolic
/// refinement.
pub fn monneau_max(
    f: &dyn ScalarField,
    center: Point,
    mu: f64,
    r: f64,
    s_samples: usize,
) -> Result<f64> {
    let m = s_samples.max(33);
    let eval = |s: f64| h_mu(f, center, mu, s * r, 512);
    let mut best_v = f64::NEG_INFINITY;
    let mut best_i = 0;
    let mut values = Vec::with_capacity(m);
    for i in 0..m {
        let s = 1.0 + i as f64 / (m - 1) as f64;
        let v = eval(s)?;
        if v > best_v {
            best_v = v;
            best_i = i;
        }
        values.push(v);
    }
    // interior maximum: refine with parabolic steps
    if best_i > 0 && best_i + 1 < m {
        let step0 = 1.0 / (m - 1) as f64;
        let mut s_mid = 1.0 + best_i as f64 * step0;
        let mut v = (values[best_i - 1], values[best_i], values[best_i + 1]);
        let mut step = step0;
        for _ in 0..2 {
            let denom = v.0 - 2.0 * v.1 + v.2;
            if denom.abs() < 1e-300 {
                break;
            }
            let offset = 0.5 * (v.0 - v.2) / denom * step;
            let s_new = (s_mid + offset).clamp(1.0, 2.0);
            let v_new = eval(s_new)?;
            best_v = best_v.max(v_new);
            step *= 0.5;
            s_mid = s_new;
            let lo = eval((s_mid - step).max(1.0))?;
            let hi = eval((s_mid + step).min(2.0))?;
            best_v = best_v.max(lo).max(hi);
            v = (lo, v_new, hi);
        }
    }
    Ok(best_v)
}

/// Result of a sampled monotonicity check.
#[derive(Debug, Clone)]
pub struct MonotonicityReport {
    pub functional: String,
    /// Largest relative drop between consecutive samples (0 when monotone).
    pub worst_dip: f64,
    pub at_index: Option<usize>,
    pub allowance: f64,
    pub pass: bool,
}

/// Check a sampled curve for monotone nondecrease within `allowance`:
/// the dip at `i` is `max(0, (v_i - v_{i+1}) / max(|v_i|, floor))`.
pub fn check_monotone(
    functional: impl Into<String>,
    values: &[f64],
    allowance: f64,
) -> Result<MonotonicityReport> {
    if values.len() < 3 {
        return Err(Error::TooFewRadii(values.len()));
    }
    let floor = 1e-30;
    let mut worst = 0.0f64;
    let mut at = None;
    for i in 0..values.len() - 1 {
        let dip = (values[i] - values[i + 1]) / values[i].abs().max(floor);
        if dip > worst {
            worst = dip;
            at = Some(i);
        }
    }
    Ok(MonotonicityReport {
        functional: functional.into(),
        worst_dip: worst.max(0.0),
        at_index: at,
        allowance,
        pass: worst.max(0.0) <= allowance,
    })
}

/// Two-sided bound report for the truncated boundary mass
/// `(H(R) + R^{2γ}) / (H(r) + r^{2γ})` against the power laws
/// `(R/r)^{2λ̄+δ}` (above, fitted C₂) and `(R/r)^{2λ*}` (below, fitted C₃).
#[derive(Debug, Clone)]
pub struct HRatioReport {
    pub lambda_bar: f64,
    pub lambda_star: f64,
    pub gamma: f64,
    pub delta: f64,
    /// Smallest constant making the upper bound hold on all sampled pairs.
    pub c2: f64,
    /// Largest constant making the lower bound hold on all sampled pairs.
    pub c3: f64,
}

pub fn h_ratio_bounds(
    curve: &FrequencyCurve,
    lambda_bar: f64,
    lambda_star: f64,
    gamma: f64,
    delta: f64,
) -> Result<HRatioReport> {
    if curve.radii.len() < 3 {
        return Err(Error::TooFewRadii(curve.radii.len()));
    }
    let trunc: Vec<f64> = curve
        .radii
        .iter()
        .zip(&curve.h0)
        .map(|(r, h)| h + r.powf(2.0 * gamma))
        .collect();
    let mut c2 = 0.0f64;
    let mut c3 = f64::INFINITY;
    for i in 0..curve.radii.len() {
        for j in i + 1..curve.radii.len() {
            let ratio = trunc[j] / trunc[i];
            let scale = curve.radii[j] / curve.radii[i];
            c2 = c2.max(ratio / scale.powf(2.0 * lambda_bar + delta));
            c3 = c3.min(ratio / scale.powf(2.0 * lambda_star));
        }
    }
    Ok(HRatioReport {
        lambda_bar,
        lambda_star,
        gamma,
        delta,
        c2,
        c3,
    })
}

/// Frequency estimate at a center: φ at the smallest reliable radius plus a
/// linear-in-r extrapolation from the three smallest radii.
#[derive(Debug, Clone, Copy)]
pub struct FrequencyEstimate {
    pub estimate: f64,
    pub window: (f64, f64),
    pub samples: [(f64, f64); 3],
}

impl FrequencyEstimate {
    pub fn half_width(&self) -> f64 {
        0.5 * (self.window.1 - self.window.0)
    }

    pub fn contains(&self, lambda: f64) -> bool {
        lambda >= self.window.0 && lambda <= self.window.1
    }
}

/// Estimate the frequency of `f` at `center` from radii
/// `r_base · {1, 1.5, 2}`.
pub fn estimate_frequency(
    f: &dyn ScalarField,
    center: Point,
    r_base: f64,
) -> Result<FrequencyEstimate> {
    let radii = vec![r_base, 1.5 * r_base, 2.0 * r_base];
    let curve = frequency_curve(f, center, &CurveRequest::new(radii))?;
    let mut pts = [(0.0, 0.0); 3];
    for i in 0..3 {
        let p = curve.phi[i].ok_or(Error::NotContactPoint(center[0], center[1], center[2]))?;
        pts[i] = (curve.radii[i], p);
    }
    // least-squares line through the three samples; φ is monotone so the
    // intercept corrects the first-order bias of φ(r_min)
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = 3.0 * sxx - sx * sx;
    let slope = (3.0 * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / 3.0;
    let fit_res = pts
        .iter()
        .map(|(r, p)| (p - (intercept + slope * r)).abs())
        .fold(0.0, f64::max);
    let spread = fit_res + (pts[0].1 - intercept).abs();
    Ok(FrequencyEstimate {
        estimate: intercept,
        window: (intercept - spread, intercept + spread),
        samples: pts,
    })
}

/// Frequency estimate at a contact point of a solve; errors when `x0` is not
/// in the contact set.
pub fn solution_frequency(s: &Solution, x0: Point, r_base: Option<f64>) -> Result<FrequencyEstimate> {
    let grid = s.grid();
    let n = grid.dim();
    if x0[n - 1].abs() > 1e-12 || s.field().value(x0) > s.default_zero_tol() {
        return Err(Error::NotContactPoint(x0[0], x0[1], x0[2]));
    }
    let base = r_base.unwrap_or(8.0 * grid.spacing());
    estimate_frequency(s.field(), x0, base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::AnalyticField;
    use crate::profiles::{Homogeneity, Profile};

    fn h(twice: u32) -> Homogeneity {
        Homogeneity::new(twice).unwrap()
    }

    fn profile(n: usize, twice: u32) -> Profile {
        Profile::new(n, h(twice), 1.0, [1.0, 0.0, 0.0]).unwrap()
    }

    #[test]
    fn phi_of_homogeneous_solution_is_lambda() {
        // D = λ H_0 for λ-homogeneous solutions
        for twice in [2u32, 3, 4, 7] {
            let p = profile(2, twice);
            let req = CurveRequest::new(CurveRequest::dyadic(1.0 / 16.0, 0.5));
            let curve = frequency_curve(&p, [0.0; 3], &req).unwrap();
            for phi in curve.phi_values() {
                assert!(
                    (phi - h(twice).value()).abs() < 0.02 * h(twice).value(),
                    "twice={twice}: phi={phi}"
                );
            }
        }
    }

    #[test]
    fn h_mu_at_lambda_is_one() {
        let p = profile(2, 3);
        let mut req = CurveRequest::new(vec![0.1, 0.25, 0.5]);
        req.mu = vec![1.5];
        let curve = frequency_curve(&p, [0.0; 3], &req).unwrap();
        for v in &curve.h_mu[0].1 {
            assert!((v - 1.0).abs() < 0.02, "H_mu = {v}");
        }
        // and H_0(0.5, ψ_{3/2}) = 0.5³ — closed form from homogeneity and the
        // unit normalization, cross-checked by dense quadrature
        let idx = 2;
        assert!((curve.h0[idx] - 0.125).abs() < 1e-10 * 0.125);
    }

    #[test]
    fn truncated_frequency_of_zero_field_is_gamma() {
        let z = AnalyticField::new(2, |_| 0.0);
        let mut req = CurveRequest::new(vec![0.1, 0.2, 0.4]);
        req.gamma = vec![2.0];
        let curve = frequency_curve(&z, [0.0; 3], &req).unwrap();
        for v in curve.phi_gamma_values(2.0).unwrap() {
            assert_eq!(*v, 2.0);
        }
        // φ is guarded where H_0 vanishes
        assert!(curve.phi.iter().all(|p| p.is_none()));
    }

    #[test]
    fn scaling_identity() {
        // curve of f(s·) at radius r equals curve of f at s r
        let p = profile(2, 3);
        let s = 0.7;
        let scaled = AnalyticField::new(2, move |x| p.value([s * x[0], s * x[1], 0.0]));
        let p2 = profile(2, 3);
        let radii = vec![0.2, 0.3, 0.4];
        let c1 = frequency_curve(&scaled, [0.0; 3], &CurveRequest::new(radii.clone())).unwrap();
        let shifted: Vec<f64> = radii.iter().map(|r| r * s).collect();
        let c2 = frequency_curve(&p2, [0.0; 3], &CurveRequest::new(shifted)).unwrap();
        for i in 0..3 {
            // H_0 picks up no scale factor; D and φ likewise
            assert!((c1.h0[i] - c2.h0[i]).abs() <= 1e-3 * c2.h0[i].abs());
            assert!((c1.d[i] - c2.d[i]).abs() <= 1e-3 * c2.d[i].abs());
        }
    }

    #[test]
    fn monneau_max_of_homogeneous_profiles() {
        let p = profile(2, 3); // λ = 3/2
        let r = 0.25;
        // μ < λ: H_μ(s r) increasing in s, max at s = 2
        let mu = 1.0;
        let v = monneau_max(&p, [0.0; 3], mu, r, 33).unwrap();
        let expected = (2.0 * r).powf(2.0 * (1.5 - mu));
        assert!((v - expected).abs() < 1e-6 * expected, "{v} vs {expected}");
        // μ > λ: decreasing, max at s = 1
        let mu = 2.0;
        let v = monneau_max(&p, [0.0; 3], mu, r, 33).unwrap();
        let expected = r.powf(2.0 * (1.5 - mu));
        assert!((v - expected).abs() < 1e-6 * expected);
    }

    #[test]
    fn check_monotone_examples() {
        let r = check_monotone("phi", &[1.0, 1.1, 1.3], 0.005).unwrap();
        assert_eq!(r.worst_dip, 0.0);
        assert!(r.pass);
        let r = check_monotone("phi", &[1.0, 0.997, 1.3], 0.005).unwrap();
        assert!((r.worst_dip - 0.003).abs() < 1e-12);
        assert!(r.pass);
        let r = check_monotone("phi", &[1.0, 0.9, 1.3], 0.005).unwrap();
        assert!(!r.pass);
        assert_eq!(r.at_index, Some(0));
        assert!(check_monotone("phi", &[1.0, 2.0], 0.01).is_err());
    }

    #[test]
    fn h_ratio_bounds_on_power_law() {
        let p = profile(2, 3);
        let mut req = CurveRequest::new(CurveRequest::log_spaced(1.0 / 32.0, 0.25, 12));
        req.gamma = vec![4.0];
        let curve = frequency_curve(&p, [0.0; 3], &req).unwrap();
        let rep = h_ratio_bounds(&curve, 1.5, 1.5, 4.0, 0.1).unwrap();
        assert!((rep.c2 - 1.0).abs() < 0.1, "c2 = {}", rep.c2);
        assert!((rep.c3 - 1.0).abs() < 0.1, "c3 = {}", rep.c3);
        // zero field: ratio is exactly (R/r)^{2γ}
        let z = AnalyticField::new(2, |_| 0.0);
        let mut req = CurveRequest::new(vec![0.1, 0.2, 0.4]);
        req.gamma = vec![2.0];
        let curve = frequency_curve(&z, [0.0; 3], &req).unwrap();
        let rep = h_ratio_bounds(&curve, 2.0, 2.0, 2.0, 1e-9).unwrap();
        assert!((rep.c2 - 1.0).abs() < 1e-6);
        assert!((rep.c3 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn estimate_frequency_on_analytic_profiles() {
        for twice in [2u32, 3, 4, 7] {
            let p = profile(2, twice);
            let est = estimate_frequency(&p, [0.0; 3], 1.0 / 16.0).unwrap();
            assert!(
                (est.estimate - h(twice).value()).abs() < 0.01,
                "twice={twice}: {est:?}"
            );
        }
    }
}
