//! Rescaling and blow-up analysis: contact-set extraction, best-profile
//! fitting (the A functional), the flatness predicate, dyadic decay scans,
//! good-scale density, and the combinatorial sequence lemma.

use std::f64::consts::PI;

use crate::frequency::estimate_frequency;
use crate::geometry::{sample_sphere, NodeClass, Point, ScalarField};
use crate::profiles::{normalization_constant, psi_raw, Homogeneity};
use crate::solver::Solution;
use crate::{Error, Result};

/// Thin nodes in contact (`u = 0` within tolerance) and the free-boundary
/// subset (contact nodes with a non-contact thin neighbor).
#[derive(Debug, Clone)]
pub struct ContactSet {
    pub nodes: Vec<usize>,
    pub free_boundary: Vec<usize>,
}

impl ContactSet {
    pub fn node_points(&self, s: &Solution) -> Vec<Point> {
        self.nodes.iter().map(|&i| s.grid().coords(i)).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Extract the contact set of a converged solve. Deterministic for a fixed
/// tolerance.
pub fn contact_set(s: &Solution, zero_tol: f64) -> ContactSet {
    let grid = s.grid();
    let n = grid.dim();
    let strides = grid.strides();
    let values = s.field().values();
    let mut nodes = Vec::new();
    for flat in grid.thin_plane_nodes() {
        if grid.class(flat) == NodeClass::Thin && values[flat] <= zero_tol {
            nodes.push(flat);
        }
    }
    let mut free_boundary = Vec::new();
    for &flat in &nodes {
        let mut boundary = false;
        for a in 0..n - 1 {
            for nb in [flat - strides[a], flat + strides[a]] {
                if values[nb] > zero_tol {
                    boundary = true;
                }
            }
        }
        if boundary {
            free_boundary.push(flat);
        }
    }
    ContactSet {
        nodes,
        free_boundary,
    }
}

/// Best 2D-profile approximation of the rescaled field on one sphere.
#[derive(Debug, Clone, Copy)]
pub struct ProfileFit {
    pub radius: f64,
    pub lambda: Homogeneity,
    /// Best nonnegative amplitude (closed-form least squares given the spine).
    pub tau: f64,
    /// Best spine direction in the thin space.
    pub spine: Point,
    /// `A = min ‖(u - τψ_λ∘S)(r·)‖_{L²(∂B_1)}`.
    pub distance: f64,
    /// `A / ‖u(x₀ + r·)‖_{L²(∂B_1)}`.
    pub normalized: f64,
}

/// Fit `τ ψ_λ` with optimal spine to the rescaled field at radius `r`:
/// the sphere trace is scanned over spine angles (two candidates for n = 2,
/// a 1° grid with parabolic refinement for n = 3), τ in closed form per spine.
pub fn fit_profile(
    f: &dyn ScalarField,
    center: Point,
    r: f64,
    lambda: Homogeneity,
    angular: usize,
) -> Result<ProfileFit> {
    if !lambda.is_solution() {
        return Err(Error::NotSolutionHomogeneity(lambda.value()));
    }
    let floor = f.resolution_floor();
    if floor > 0.0 && r < 2.0 * floor - 1e-12 {
        return Err(Error::RadiusBelowFloor {
            radius: r,
            floor: 2.0 * floor,
        });
    }
    let n = f.dim();
    let sample = sample_sphere(f, center, r, angular)?;
    let total_sq = sample.integrate_sq();
    if total_sq <= 0.0 {
        return Err(Error::ZeroBoundaryMass);
    }
    let a = normalization_constant(n, lambda)?;

    // inner product of the trace with the unit profile of spine angle α,
    // together with the quadrature norm of that profile
    let ip_for = |e: [f64; 2]| -> (f64, f64) {
        let mut ip = 0.0;
        let mut qn = 0.0;
        for (d, w, v) in &sample.entries {
            let t = e[0] * d[0] + if n == 3 { e[1] * d[1] } else { 0.0 };
            let q = a * psi_raw(lambda, t, d[n - 1]);
            ip += w * v * q;
            qn += w * q * q;
        }
        (ip, qn)
    };

    let (best_e, ip, qn) = if n == 2 {
        let cands = [[1.0, 0.0], [-1.0, 0.0]];
        let mut best = ([1.0, 0.0], f64::NEG_INFINITY, 1.0);
        for e in cands {
            let (ip, qn) = ip_for(e);
            if ip > best.1 {
                best = (e, ip, qn);
            }
        }
        best
    } else {
        let coarse = 360;
        let mut best_alpha = 0.0;
        let mut best_ip = f64::NEG_INFINITY;
        for k in 0..coarse {
            let alpha = 2.0 * PI * k as f64 / coarse as f64;
            let (ip, _) = ip_for([alpha.cos(), alpha.sin()]);
            if ip > best_ip {
                best_ip = ip;
                best_alpha = alpha;
            }
        }
        // parabolic refinement of the inner-product maximum; iterated until
        // the spine is resolved far below the fit tolerances
        let mut step = 2.0 * PI / coarse as f64;
        let mut alpha = best_alpha;
        for _ in 0..24 {
            let lo = ip_for([(alpha - step).cos(), (alpha - step).sin()]).0;
            let hi = ip_for([(alpha + step).cos(), (alpha + step).sin()]).0;
            let denom = lo - 2.0 * best_ip + hi;
            if denom < 0.0 {
                let offset = (0.5 * (lo - hi) / denom * step).clamp(-step, step);
                let cand = alpha + offset;
                let v = ip_for([cand.cos(), cand.sin()]).0;
                if v >= best_ip {
                    best_ip = v;
                    alpha = cand;
                }
            }
            step *= 0.5;
            if step < 1e-10 {
                break;
            }
        }
        let e = [alpha.cos(), alpha.sin()];
        let (ip, qn) = ip_for(e);
        (e, ip, qn)
    };

    let r_lam = r.powf(lambda.value());
    let coeff = (ip / qn).max(0.0);
    let tau = coeff / r_lam;
    // residual computed explicitly for numerical safety near A = 0
    let mut res_sq = 0.0;
    for (d, w, v) in &sample.entries {
        let t = best_e[0] * d[0] + if n == 3 { best_e[1] * d[1] } else { 0.0 };
        let q = coeff * a * psi_raw(lambda, t, d[n - 1]);
        res_sq += w * (v - q) * (v - q);
    }
    let distance = res_sq.max(0.0).sqrt();
    Ok(ProfileFit {
        radius: r,
        lambda,
        tau,
        spine: [best_e[0], best_e[1], 0.0],
        distance,
        normalized: distance / total_sq.sqrt(),
    })
}

/// Flatness predicate: the given frequency-λ points inside `B_{r/2}(center)`
/// lie within `ε r` of a linear space of dimension ≤ n-3 through the center.
///
/// For n = 3 the space is the center itself; for n = 2 no such space exists,
/// so the predicate requires the point set to be empty apart from the center.
/// The check is exhaustive over the finite node set.
pub fn flatness(points: &[Point], center: Point, r: f64, eps: f64, n: usize) -> bool {
    debug_assert!(eps > 0.0 && eps < 0.5);
    for p in points {
        let d2: f64 = (0..3).map(|a| (p[a] - center[a]) * (p[a] - center[a])).sum();
        let d = d2.sqrt();
        if d <= 1e-12 || d > 0.5 * r {
            continue;
        }
        match n {
            2 => return false,
            _ => {
                if d > eps * r {
                    return false;
                }
            }
        }
    }
    true
}

/// Extract frequency-λ points among contact candidates: a candidate belongs
/// when its trace is below `trace_tol` and its frequency estimate is within
/// `member_tol` of λ. Candidates whose estimate cannot be computed are
/// skipped and counted.
pub fn lambda_points(
    f: &dyn ScalarField,
    lambda: Homogeneity,
    candidates: &[Point],
    est_r_base: f64,
    trace_tol: f64,
    member_tol: f64,
) -> (Vec<Point>, usize) {
    let mut points = Vec::new();
    let mut skipped = 0;
    for &c in candidates {
        if f.value(c).abs() > trace_tol {
            continue;
        }
        match estimate_frequency(f, c, est_r_base) {
            Ok(est) => {
                if (est.estimate - lambda.value()).abs() <= member_tol {
                    points.push(c);
                }
            }
            Err(_) => skipped += 1,
        }
    }
    (points, skipped)
}

/// Candidate thin-lattice points around a center (used to probe analytic
/// fields; solves use their contact sets instead).
pub fn thin_candidate_lattice(n: usize, center: Point, extent: f64, step: f64) -> Vec<Point> {
    let k = (extent / step).round() as i64;
    let mut out = Vec::new();
    match n {
        2 => {
            for i in -k..=k {
                out.push([center[0] + i as f64 * step, 0.0, 0.0]);
            }
        }
        _ => {
            for i in -k..=k {
                for j in -k..=k {
                    out.push([
                        center[0] + i as f64 * step,
                        center[1] + j as f64 * step,
                        0.0,
                    ]);
                }
            }
        }
    }
    out
}

/// Degenerate-scan classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanStatus {
    Ok,
    /// The residual is at round-off level; exponents are not meaningful.
    ResidualNearZero,
    /// The requested dyadic range was truncated by the radius accuracy floor.
    BelowAccuracyFloor,
}

#[derive(Debug, Clone, Copy)]
pub struct DecayScale {
    pub k: usize,
    pub r: f64,
    pub a: f64,
    pub a_normalized: f64,
    pub tau: f64,
    /// log₂ decay of the normalized residual to the next scale.
    pub exponent: Option<f64>,
    /// log₂ decay of the raw residual to the next scale.
    pub raw_exponent: Option<f64>,
    pub flat: bool,
    /// Strong alternative: raw exponent ≥ λ + σ.
    pub good: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct DecayScan {
    pub center: Point,
    pub lambda: Homogeneity,
    pub sigma: f64,
    pub gamma_weak: f64,
    pub eps_flat: f64,
    pub scales: Vec<DecayScale>,
    pub status: ScanStatus,
    /// Fraction of good scales among measured exponents.
    pub good_density: f64,
    /// Running minimum of the prefix averages of the good flags.
    pub prefix_average_min: f64,
    pub lambda_points: Vec<Point>,
    pub skipped_candidates: usize,
}

impl DecayScan {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,r,A,A_normalized,exponent,flat_flag,good_flag\n");
        for s in &self.scales {
            out.push_str(&format!(
                "{},{:.12e},{:.12e},{:.12e},{},{},{}\n",
                s.k,
                s.r,
                s.a,
                s.a_normalized,
                s.exponent.map_or(String::new(), |e| format!("{e:.12e}")),
                s.flat as u8,
                s.good.map_or(String::new(), |g| (g as u8).to_string()),
            ));
        }
        out
    }

    pub fn summary_json(&self) -> String {
        format!(
            "{{\"status\": \"{:?}\", \"p\": {:.6}, \"prefix_average_min\": {:.6}, \"lambda_points\": {}, \"sigma\": {}, \"gamma\": {}, \"eps\": {}}}",
            self.status,
            self.good_density,
            self.prefix_average_min,
            self.lambda_points.len(),
            self.sigma,
            self.gamma_weak,
            self.eps_flat,
        )
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DecayParams {
    /// Largest scale.
    pub r0: f64,
    /// Number of halvings below `r0`.
    pub k_max: usize,
    /// Flatness tolerance ε ∈ (0, 1/2).
    pub eps_flat: f64,
    /// Strong-decay margin σ.
    pub sigma: f64,
    /// Weak-decay margin γ (echoed into reports).
    pub gamma_weak: f64,
    pub angular: usize,
    /// Gate on |frequency estimate - λ| at the scan center.
    pub freq_gate: f64,
    /// Membership tolerance for frequency-λ point extraction.
    pub member_tol: f64,
    /// Base radius of frequency estimates.
    pub est_r_base: f64,
    /// Contact gate on |trace| for candidate points.
    pub trace_tol: f64,
}

impl DecayParams {
    pub fn new(r0: f64, k_max: usize, est_r_base: f64) -> DecayParams {
        DecayParams {
            r0,
            k_max,
            eps_flat: 0.05,
            sigma: 0.5,
            gamma_weak: 0.45,
            angular: 1024,
            freq_gate: 0.15,
            member_tol: 0.1,
            est_r_base,
            trace_tol: 1e-9,
        }
    }
}

const NEAR_ZERO_NORMALIZED: f64 = 1e-9;

/// Per-dyadic-scale record of A values, flatness flags and decay exponents.
///
/// The `good` flag marks scales satisfying the strong alternative of the
/// decay dichotomy (`A(r/2) ≤ (1/2)^{λ+σ} A(r)`, i.e. raw exponent ≥ λ + σ);
/// the `exponent` column is the decay of the normalized residual, which for
/// the strong alternative sits near `raw - λ`.
pub fn decay_scan(
    f: &dyn ScalarField,
    center: Point,
    lambda: Homogeneity,
    candidates: &[Point],
    params: &DecayParams,
) -> Result<DecayScan> {
    let est = estimate_frequency(f, center, params.est_r_base)?;
    if (est.estimate - lambda.value()).abs() > params.freq_gate {
        return Err(Error::FrequencyMismatch {
            estimate: est.estimate,
            lambda: lambda.value(),
            tol: params.freq_gate,
        });
    }
    let n = f.dim();
    let floor = 2.0 * f.resolution_floor();
    let mut radii = Vec::new();
    for k in 0..=params.k_max {
        let r = params.r0 * 0.5f64.powi(k as i32);
        if floor > 0.0 && r < floor - 1e-12 {
            break;
        }
        radii.push((k, r));
    }
    if radii.len() < 2 {
        return Err(Error::TooFewScales(radii.len()));
    }
    let truncated = radii.len() < params.k_max + 1;

    let near: Vec<Point> = candidates
        .iter()
        .copied()
        .filter(|c| {
            let d2: f64 = (0..3).map(|a| (c[a] - center[a]) * (c[a] - center[a])).sum();
            d2.sqrt() <= 0.5 * params.r0 + 1e-12
        })
        .collect();
    let (points, skipped) = lambda_points(
        f,
        lambda,
        &near,
        params.est_r_base,
        params.trace_tol,
        params.member_tol,
    );

    let mut scales = Vec::with_capacity(radii.len());
    for &(k, r) in &radii {
        let fit = fit_profile(f, center, r, lambda, params.angular)?;
        let flat = flatness(&points, center, r, params.eps_flat, n);
        scales.push(DecayScale {
            k,
            r,
            a: fit.distance,
            a_normalized: fit.normalized,
            tau: fit.tau,
            exponent: None,
            raw_exponent: None,
            flat,
            good: None,
        });
    }

    let max_norm = scales
        .iter()
        .map(|s| s.a_normalized)
        .fold(0.0f64, f64::max);
    let status = if max_norm < NEAR_ZERO_NORMALIZED {
        ScanStatus::ResidualNearZero
    } else if truncated {
        ScanStatus::BelowAccuracyFloor
    } else {
        ScanStatus::Ok
    };

    let mut goods = Vec::new();
    if status != ScanStatus::ResidualNearZero {
        for i in 0..scales.len() - 1 {
            let (a0, a1) = (scales[i].a, scales[i + 1].a);
            let (n0, n1) = (scales[i].a_normalized, scales[i + 1].a_normalized);
            if a1 > 0.0 && n1 > 0.0 {
                let raw = (a0 / a1).log2();
                scales[i].exponent = Some((n0 / n1).log2());
                scales[i].raw_exponent = Some(raw);
                let good = raw >= lambda.value() + params.sigma;
                scales[i].good = Some(good);
                goods.push(good);
            }
        }
    }
    let good_density = if goods.is_empty() {
        0.0
    } else {
        goods.iter().filter(|g| **g).count() as f64 / goods.len() as f64
    };
    let mut prefix_min = if goods.is_empty() { 0.0 } else { f64::INFINITY };
    let mut acc = 0usize;
    for (i, g) in goods.iter().enumerate() {
        acc += *g as usize;
        prefix_min = prefix_min.min(acc as f64 / (i + 1) as f64);
    }

    Ok(DecayScan {
        center,
        lambda,
        sigma: params.sigma,
        gamma_weak: params.gamma_weak,
        eps_flat: params.eps_flat,
        scales,
        status,
        good_density,
        prefix_average_min: if prefix_min.is_finite() { prefix_min } else { 0.0 },
        lambda_points: points,
        skipped_candidates: skipped,
    })
}

/// Smallest `n ≥ m` such that every window average
/// `(a_n + ... + a_{n+j})/(j+1)` within the sequence's extent is ≥ p.
pub fn sequence_witness(a: &[bool], p: f64, m: usize) -> Option<usize> {
    let len = a.len();
    let prefix: Vec<u32> = std::iter::once(0)
        .chain(a.iter().scan(0u32, |acc, &b| {
            *acc += b as u32;
            Some(*acc)
        }))
        .collect();
    'outer: for n in m..len {
        for j in 0..len - n {
            let sum = (prefix[n + j + 1] - prefix[n]) as f64;
            if sum < p * (j + 1) as f64 {
                continue 'outer;
            }
        }
        return Some(n);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::LinearCombination;
    use crate::profiles::Profile;

    fn h(twice: u32) -> Homogeneity {
        Homogeneity::new(twice).unwrap()
    }

    #[test]
    fn fit_recovers_exact_profile() {
        let p = Profile::new(2, h(3), 1.0, [1.0, 0.0, 0.0]).unwrap();
        let fit = fit_profile(&p, [0.0; 3], 0.5, h(3), 1024).unwrap();
        assert!((fit.tau - 1.0).abs() < 1e-10);
        assert!(fit.normalized < 1e-10);
        assert_eq!(fit.spine[0], 1.0);
        // mirrored spine is recovered
        let p = Profile::new(2, h(3), 0.7, [-1.0, 0.0, 0.0]).unwrap();
        let fit = fit_profile(&p, [0.0; 3], 0.5, h(3), 1024).unwrap();
        assert!((fit.tau - 0.7).abs() < 1e-10);
        assert_eq!(fit.spine[0], -1.0);
    }

    #[test]
    fn fit_residual_of_perturbation_scales_like_higher_power() {
        // u = ψ_{3/2} + ε ψ_{7/2}: the residual is exactly ε ψ_{7/2}, so the
        // raw A obeys A(r) = ε r^{7/2}
        let eps = 0.05;
        let p1 = Profile::new(2, h(3), 1.0, [1.0, 0.0, 0.0]).unwrap();
        let p2 = Profile::new(2, h(7), 1.0, [1.0, 0.0, 0.0]).unwrap();
        let u = LinearCombination {
            terms: vec![(1.0, &p1 as &dyn ScalarField), (eps, &p2)],
        };
        let mut prev: Option<f64> = None;
        for &r in &[0.5, 0.25, 0.125] {
            let fit = fit_profile(&u, [0.0; 3], r, h(3), 2048).unwrap();
            let predicted = eps * r.powf(3.5);
            assert!(
                (fit.distance - predicted).abs() < 1e-6 * predicted,
                "r={r}: {} vs {predicted}",
                fit.distance
            );
            if let Some(pa) = prev {
                let raw_exp = (pa / fit.distance).log2();
                assert!((raw_exp - 3.5).abs() < 1e-3);
            }
            prev = Some(fit.distance);
        }
    }

    #[test]
    fn fit_is_rotation_equivariant_n3() {
        // argmin equivariance: the sphere rule is not rotation-invariant, so
        // the quadrature must be fine enough to resolve the 1e-8 window
        let alpha = 0.83f64;
        let p = Profile::new(3, h(3), 1.0, [alpha.cos(), alpha.sin(), 0.0]).unwrap();
        let base = Profile::new(3, h(3), 1.0, [1.0, 0.0, 0.0]).unwrap();
        let f0 = fit_profile(&base, [0.0; 3], 0.5, h(3), 32768).unwrap();
        let f1 = fit_profile(&p, [0.0; 3], 0.5, h(3), 32768).unwrap();
        let rec = f1.spine[1].atan2(f1.spine[0]);
        assert!((rec - alpha).abs() < 1e-6, "angle {rec} vs {alpha}");
        assert!((f1.distance - f0.distance).abs() <= 1e-8 * (1.0 + f0.distance));
    }

    #[test]
    fn flatness_examples() {
        let c = [0.0; 3];
        // single point: trivially flat for n = 3
        assert!(flatness(&[c], c, 0.4, 0.05, 3));
        // a segment of length r/4 through the center is not ε-flat for small ε
        let seg: Vec<Point> = (0..20)
            .map(|i| [(i as f64 / 19.0 - 0.5) * 0.25, 0.0, 0.0])
            .collect();
        assert!(!flatness(&seg, c, 1.0, 0.01, 3));
        // for n = 2 any second point violates the predicate
        assert!(flatness(&[c], c, 0.4, 0.05, 2));
        assert!(!flatness(&[c, [0.1, 0.0, 0.0]], c, 0.4, 0.05, 2));
    }

    #[test]
    fn decay_scan_on_constructed_exact_solution() {
        let eps = 0.05;
        let p1 = Profile::new(2, h(3), 1.0, [1.0, 0.0, 0.0]).unwrap();
        let p2 = Profile::new(2, h(7), 1.0, [1.0, 0.0, 0.0]).unwrap();
        let u = LinearCombination {
            terms: vec![(1.0, &p1 as &dyn ScalarField), (eps, &p2)],
        };
        let candidates = thin_candidate_lattice(2, [0.0; 3], 0.3, 1.0 / 32.0);
        let params = DecayParams::new(0.5, 4, 1.0 / 16.0);
        let scan = decay_scan(&u, [0.0; 3], h(3), &candidates, &params).unwrap();
        assert_eq!(scan.status, ScanStatus::Ok);
        for s in &scan.scales {
            if let Some(e) = s.exponent {
                assert!((e - 2.0).abs() < 0.2, "exponent {e}");
            }
            if let Some(raw) = s.raw_exponent {
                // weak-decay sanity: raw exponents clear λ - γ easily
                assert!(raw >= 1.5 - scan.gamma_weak);
            }
        }
        // every scale is a good scale at σ = 0.5
        assert_eq!(scan.good_density, 1.0);
        assert_eq!(scan.prefix_average_min, 1.0);
        // the only frequency-3/2 point near the center is the origin
        assert!(scan
            .lambda_points
            .iter()
            .any(|p| p[0].abs() < 1e-12));
    }

    #[test]
    fn decay_scan_degenerate_on_pure_profile() {
        let p = Profile::new(2, h(3), 1.0, [1.0, 0.0, 0.0]).unwrap();
        let candidates = thin_candidate_lattice(2, [0.0; 3], 0.2, 1.0 / 16.0);
        let params = DecayParams::new(0.5, 3, 1.0 / 16.0);
        let scan = decay_scan(&p, [0.0; 3], h(3), &candidates, &params).unwrap();
        assert_eq!(scan.status, ScanStatus::ResidualNearZero);
        assert!(scan.scales.iter().all(|s| s.exponent.is_none()));
    }

    #[test]
    fn decay_scan_rejects_wrong_lambda() {
        let p = Profile::new(2, h(3), 1.0, [1.0, 0.0, 0.0]).unwrap();
        let params = DecayParams::new(0.5, 3, 1.0 / 16.0);
        let res = decay_scan(&p, [0.0; 3], h(4), &[], &params);
        assert!(matches!(res, Err(Error::FrequencyMismatch { .. })));
    }

    #[test]
    fn a_is_monotone_in_radius_for_certified_residuals() {
        // residual ε ψ_{7/2}: subharmonic square, so A is nondecreasing
        let eps = 0.05;
        let p1 = Profile::new(2, h(3), 1.0, [1.0, 0.0, 0.0]).unwrap();
        let p2 = Profile::new(2, h(7), 1.0, [1.0, 0.0, 0.0]).unwrap();
        let u = LinearCombination {
            terms: vec![(1.0, &p1 as &dyn ScalarField), (eps, &p2)],
        };
        let mut prev = 0.0;
        for &r in &[0.1, 0.2, 0.3, 0.4, 0.5] {
            let fit = fit_profile(&u, [0.0; 3], r, h(3), 1024).unwrap();
            assert!(fit.distance >= prev * (1.0 - 1e-2));
            prev = fit.distance;
        }
    }

    #[test]
    fn sequence_witness_examples() {
        let ones = vec![true; 12];
        assert_eq!(sequence_witness(&ones, 0.9, 3), Some(3));
        let alternating: Vec<bool> = (0..12).map(|i| i % 2 == 0).collect();
        assert_eq!(sequence_witness(&alternating, 0.6, 0), None);
    }

    #[test]
    fn sequence_witness_agrees_with_brute_force() {
        // exhaustive over all 0/1 sequences of length <= 10 here; the
        // acceptance suite extends this to length 14
        fn oracle(a: &[bool], p: f64, m: usize) -> Option<usize> {
            (m..a.len()).find(|&n| {
                (0..a.len() - n).all(|j| {
                    let sum: f64 = a[n..=n + j].iter().map(|&b| b as u8 as f64).sum();
                    sum / (j + 1) as f64 >= p
                })
            })
        }
        for len in 0..=10usize {
            for bits in 0..(1u32 << len) {
                let a: Vec<bool> = (0..len).map(|i| bits >> i & 1 == 1).collect();
                for p in [0.31, 0.57, 0.93] {
                    for m in [0usize, 2, 5] {
                        assert_eq!(sequence_witness(&a, p, m), oracle(&a, p, m));
                    }
                }
            }
        }
    }
}
