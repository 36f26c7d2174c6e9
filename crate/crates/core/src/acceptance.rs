//! End-to-end verification suite.
//!
//! Twelve independent checks, each pinning one pillar of the certification
//! at a stated tolerance:
//!
//! 1.  the lower bound, the Hermite oracle, and the duality upper bound
//!     sandwich each other across a grid of target points,
//! 2.  the oracle tracks the `(1+y)^{1/2} e^{−παy²}` law within a fixed
//!     band, and
//! 3.  the same data rejects the inflated polynomial exponent,
//! 4.  the weighted kernels reproduce point evaluation on random
//!     polynomials,
//! 5.  the localized test function has unit mass, vanishing moments, and
//!     the advertised flatness order,
//! 6.  the closed Bessel form of the Legendre transform matches direct
//!     quadrature,
//! 7.  the summability mean commutes with the transform,
//! 8.  high-frequency cosines resist low-degree approximation but yield to
//!     high-degree approximation,
//! 9.  the Gaussian-weighted norm identity balances its convolution and
//!     series sides,
//! 10. the power-weight bounds follow both the pointwise-decay and the
//!     factorial-growth laws,
//! 11. the radial machinery in dimension three stays on the Gaussian scale
//!     and obeys its error-scaling law, and
//! 12. the oracle truncation is monotone and settles under doubling.
//!
//! Every check is a function returning a [`CriterionReport`]; [`run_all`]
//! executes them in order.  The CLI `verify` subcommand prints one line per
//! report and exits nonzero when any check fails; the `acceptance`
//! integration-test target asserts each report individually.  All checks
//! are deterministic — randomness is drawn from fixed seeds and no line
//! depends on wall-clock time — so two runs produce byte-identical output.

use std::f64::consts::{PI, SQRT_2};
use std::sync::OnceLock;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use statrs::function::gamma::ln_gamma;

use crate::dualbound::{
    build_phi, moment_upper_bound, phi_hat, phi_hat_deficit, MomentParams, MomentRegime,
};
use crate::extremizer::{
    best_approx_error_cos, cos_norm_squared, radial_best_approx, radial_lower_bound,
    vallee_poussin_mean, vemuri_norm_identity, RadialProblem,
};
use crate::kernel::{integrate_against_weight, kernel_eval, min_norm_polynomial, WeightSpec};
use crate::oracle::{asymptotic_sweep, build_gram, SweepRow};
use crate::quadrature::{gauss_legendre, integrate};
use crate::special::{fourier_legendre_kernel, legendre_p, normalized_legendre};

/// Outcome of a single acceptance check.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    /// Position in the suite, 1-based.
    pub id: usize,
    /// What the check verifies, in words.
    pub name: &'static str,
    /// Whether every asserted inequality held.
    pub passed: bool,
    /// The measured quantities next to their thresholds.
    pub detail: String,
}

impl CriterionReport {
    /// The one-line summary the CLI prints: verdict, number, name, detail.
    pub fn line(&self) -> String {
        format!(
            "[{}] {:02} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )
    }
}

fn report(id: usize, name: &'static str, passed: bool, detail: String) -> CriterionReport {
    CriterionReport {
        id,
        name,
        passed,
        detail,
    }
}

fn error_report(id: usize, name: &'static str, context: &str, message: String) -> CriterionReport {
    report(id, name, false, format!("{context}: {message}"))
}

/// The shared sweep grid `y ∈ {4, 4.5, …, 8}` for checks 1–3.
fn sweep_grid() -> Vec<f64> {
    (0..=8).map(|i| 4.0 + 0.5 * i as f64).collect()
}

/// Sweep data shared by checks 1–3, computed once per process: one Gram
/// factorization, one calibrated dilation, nine rows.
fn shared_sweep() -> &'static Result<Vec<SweepRow>, String> {
    static ROWS: OnceLock<Result<Vec<SweepRow>, String>> = OnceLock::new();
    ROWS.get_or_init(|| asymptotic_sweep(0.5, &sweep_grid()).map_err(|e| e.to_string()))
}

/// Check 1 — sandwich certification at `d = 1`, `p = q = 2`, `α = 0.5`:
/// on `y ∈ {4, 4.5, …, 8}`, the constructed lower bound never exceeds
/// `√2 ×` the Hermite oracle, and the oracle never exceeds `√2 ×` the
/// duality upper bound.  (The `√2` is the exact gap between the
/// sum-of-norms functional and its quadrature-sum relative, so both
/// inequalities are parameter-free.)
pub fn sandwich_certification() -> CriterionReport {
    let name = "sandwich of lower bound, oracle, upper bound";
    let rows = match shared_sweep() {
        Err(e) => return error_report(1, name, "sweep", e.clone()),
        Ok(rows) => rows,
    };
    let mut flagged = 0usize;
    let mut worst_lower = f64::NEG_INFINITY;
    let mut worst_upper = f64::NEG_INFINITY;
    for row in rows {
        if row.note.is_some() {
            flagged += 1;
            continue;
        }
        worst_lower = worst_lower.max(row.lower_bound / (SQRT_2 * row.oracle_value));
        worst_upper = worst_upper.max(row.oracle_value / (SQRT_2 * row.upper_bound));
    }
    let passed = flagged == 0 && worst_lower <= 1.0 && worst_upper <= 1.0;
    report(
        1,
        name,
        passed,
        format!(
            "max lower/(sqrt2*oracle) = {worst_lower:.6} and max oracle/(sqrt2*upper) = \
             {worst_upper:.6} over {} rows (both need <= 1); {flagged} rows unavailable",
            rows.len()
        ),
    )
}

/// Check 2 — asymptotic flatness: over the same grid, the compensated
/// oracle `U₂(y)·e^{παy²}/(1+y)^{1/2}` varies by at most a factor 3.
pub fn asymptotic_flatness() -> CriterionReport {
    let name = "oracle flatness against the Gaussian law";
    let rows = match shared_sweep() {
        Err(e) => return error_report(2, name, "sweep", e.clone()),
        Ok(rows) => rows,
    };
    let ratios: Vec<f64> = rows.iter().map(|r| r.ratio_oracle).collect();
    let max = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let spread = max / min;
    report(
        2,
        name,
        spread.is_finite() && spread <= 3.0,
        format!(
            "compensated oracle spans [{min:.6}, {max:.6}], spread {spread:.4} (needs <= 3)"
        ),
    )
}

/// Check 3 — sharpness of the polynomial exponent: compensating the oracle
/// with the inflated power `(1+y)^{1/2+0.5}` instead must send it to zero —
/// monotonically over the grid, and by at least a factor 2 from `y = 4` to
/// `y = 8`.
pub fn sharpness_direction() -> CriterionReport {
    let name = "decline under the inflated weight exponent";
    let rows = match shared_sweep() {
        Err(e) => return error_report(3, name, "sweep", e.clone()),
        Ok(rows) => rows,
    };
    // ratio_oracle already divides by (1+y)^{1/2}; one more √(1+y) gives
    // the inflated exponent 1/2 + 0.5.
    let ratios: Vec<f64> = rows
        .iter()
        .map(|r| r.ratio_oracle / (1.0 + r.y).sqrt())
        .collect();
    let monotone = ratios.windows(2).all(|w| w[1] < w[0]);
    let decline = ratios.first().unwrap() / ratios.last().unwrap();
    report(
        3,
        name,
        monotone && decline >= 2.0,
        format!(
            "inflated-exponent ratio fell {decline:.4}x from y = 4 to y = 8 (needs >= 2x); \
             monotone decrease: {monotone}"
        ),
    )
}

/// Check 4 — reproducing formula: for the nine weights `|x − s|^{2m}` with
/// `m ∈ {0, 1, 2.5}` and `s ∈ {0, 0.5, 3}`, the degree-20 kernel satisfies
/// `|∫ K Q w − Q(0)| ≤ 1e−8 · ‖Q‖_∞` on 100 random polynomials of degree
/// at most 20.
pub fn reproducing_formula() -> CriterionReport {
    let name = "kernel reproduces random polynomials";
    let m0 = 20usize;
    let mut rng = StdRng::seed_from_u64(2024);
    // 100 random polynomials in the Legendre basis, degree <= 20, with a
    // grid estimate of each sup norm on [-1, 1].
    let polys: Vec<Vec<f64>> = (0..100)
        .map(|_| (0..=m0).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    let eval = |coeffs: &[f64], x: f64| -> f64 {
        coeffs
            .iter()
            .enumerate()
            .map(|(j, &c)| c * legendre_p(j, x))
            .sum()
    };
    let sups: Vec<f64> = polys
        .iter()
        .map(|c| {
            (0..=400)
                .map(|i| eval(c, -1.0 + i as f64 / 200.0).abs())
                .fold(0.0f64, f64::max)
        })
        .collect();
    let mut worst = 0.0f64;
    let mut cases = 0usize;
    for &m in &[0.0f64, 1.0, 2.5] {
        for &shift in &[0.0f64, 0.5, 3.0] {
            let weight = match WeightSpec::new(m, shift, 2.0, 1) {
                Ok(w) => w,
                Err(e) => return error_report(4, name, "weight", e.to_string()),
            };
            let spec = match min_norm_polynomial(&weight, m0, 2.0, 1e-12) {
                Ok(s) => s,
                Err(e) => return error_report(4, name, "kernel construction", e.to_string()),
            };
            for (coeffs, &sup) in polys.iter().zip(&sups) {
                let integral = integrate_against_weight(&weight, m0, |t| {
                    kernel_eval(&spec, t) * eval(coeffs, t)
                });
                worst = worst.max((integral - eval(coeffs, 0.0)).abs() / sup);
                cases += 1;
            }
        }
    }
    report(
        4,
        name,
        worst <= 1e-8,
        format!("worst |integral - Q(0)|/supQ = {worst:.3e} over {cases} cases (needs <= 1e-8)"),
    )
}

/// Check 5 — localized test function: for flatness orders `m0 ∈ {2, 5, 10}`
/// (weight parameter `m = 1`, support half-width `0.7`), the transform is 1
/// at the origin to `1e−8`, the moments `1 … m0−1` vanish to `1e−8`, and
/// the log–log slope of `|1 − φ̂|` near zero equals `m0` within `±0.1`.
pub fn test_function_properties() -> CriterionReport {
    let name = "test function mass, moments, flatness order";
    let delta = 0.7f64;
    let mut worst_mass = 0.0f64;
    let mut worst_moment = 0.0f64;
    let mut worst_slope = 0.0f64;
    for &m0 in &[2usize, 5, 10] {
        let spec = match build_phi(delta, 1.0, m0, 2.0, 1) {
            Ok(s) => s,
            Err(e) => return error_report(5, name, "construction", e.to_string()),
        };
        let at_zero = match phi_hat(&spec, &[0.0]) {
            Ok(v) => v,
            Err(e) => return error_report(5, name, "transform", e.to_string()),
        };
        worst_mass = worst_mass.max((at_zero.re - 1.0).abs().max(at_zero.im.abs()));
        // The factor is a polynomial of degree m0 + 1 on the support, so a
        // fixed Gauss rule integrates phi(x)·x^j exactly.
        let rule = match gauss_legendre(m0 + 12, -delta, delta) {
            Ok(r) => r,
            Err(e) => return error_report(5, name, "quadrature rule", e.to_string()),
        };
        for j in 1..m0 {
            let moment = rule.apply(|x| spec.eval(&[x]) * x.powi(j as i32));
            worst_moment = worst_moment.max(moment.abs());
        }
        let deficit = |xi: f64| phi_hat_deficit(&spec, &[xi]).map(|v| v.norm());
        let (u1, u2) = match (deficit(1e-3), deficit(2e-3)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                return error_report(5, name, "deficit", e.to_string())
            }
        };
        let slope = (u2 / u1).ln() / 2f64.ln();
        worst_slope = worst_slope.max((slope - m0 as f64).abs());
    }
    let passed = worst_mass <= 1e-8 && worst_moment <= 1e-8 && worst_slope <= 0.1;
    report(
        5,
        name,
        passed,
        format!(
            "max |phi_hat(0) - 1| = {worst_mass:.3e}, max low moment = {worst_moment:.3e} \
             (both need <= 1e-8), max slope deviation = {worst_slope:.3e} (needs <= 0.1)"
        ),
    )
}

/// Check 6 — Bessel form of the Legendre transform: the closed form agrees
/// with direct quadrature to `1e−9` for orders `k ≤ 20` on a 200-point
/// frequency grid spanning `|ξ| ≤ 50`.
pub fn bessel_transform_identity() -> CriterionReport {
    let name = "closed Bessel transform against quadrature";
    let half = 1.0 / (2.0 * PI);
    let mut worst = 0.0f64;
    for k in 0..=20usize {
        for i in 0..200usize {
            let xi = -50.0 + 100.0 * i as f64 / 199.0;
            let direct = match integrate(
                |x| normalized_legendre(k, x) * (2.0 * PI * xi * x).cos(),
                -half,
                half,
                1e-12,
            ) {
                Ok(v) => v,
                Err(e) => return error_report(6, name, "quadrature", e.to_string()),
            };
            worst = worst.max((direct - fourier_legendre_kernel(k, xi)).abs());
        }
    }
    report(
        6,
        name,
        worst <= 1e-9,
        format!("max |closed - quadrature| = {worst:.3e} over 21 orders x 200 frequencies (needs <= 1e-9)"),
    )
}

/// Check 7 — commutation: damping coefficients and transforming (closed
/// Bessel form) agrees with transforming the damped polynomial by direct
/// quadrature, to `1e−8`, on random even expansions with mean orders
/// `n ∈ {3, 6, 10}`.
pub fn mean_transform_commutation() -> CriterionReport {
    let name = "summability mean commutes with the transform";
    let half = 1.0 / (2.0 * PI);
    let mut rng = StdRng::seed_from_u64(41);
    let mut worst = 0.0f64;
    for &n in &[3usize, 6, 10] {
        let coeffs: Vec<f64> = (0..2 * n + 3).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let damped = match vallee_poussin_mean(&coeffs, n) {
            Ok(d) => d,
            Err(e) => return error_report(7, name, "mean", e.to_string()),
        };
        for _ in 0..8 {
            let x: f64 = rng.gen_range(0.0..30.0);
            let closed: f64 = damped
                .iter()
                .enumerate()
                .map(|(k, &c)| c * fourier_legendre_kernel(k, x))
                .sum();
            let direct = match integrate(
                |xi| {
                    let poly: f64 = damped
                        .iter()
                        .enumerate()
                        .map(|(k, &c)| c * normalized_legendre(k, xi))
                        .sum();
                    poly * (2.0 * PI * xi * x).cos()
                },
                -half,
                half,
                1e-12,
            ) {
                Ok(v) => v,
                Err(e) => return error_report(7, name, "quadrature", e.to_string()),
            };
            worst = worst.max((closed - direct).abs());
        }
    }
    report(
        7,
        name,
        worst <= 1e-8,
        format!("max commutation defect = {worst:.3e} over n in {{3, 6, 10}} (needs <= 1e-8)"),
    )
}

/// Check 8 — cosine inapproximability: the relative best-approximation
/// error of the frequency-`D` cosine stays at least `0.5` at degree
/// `⌊0.05·D⌋` for `D ∈ {20, 50, 100}`, yet falls below `1e−3` at degree
/// `⌈3·D⌉` for `D = 20`.
pub fn cosine_inapproximability() -> CriterionReport {
    let name = "cosine resists low degrees, yields to high degrees";
    let mut min_ratio = f64::INFINITY;
    for &freq in &[20.0f64, 50.0, 100.0] {
        let degree = (0.05 * freq).floor() as usize;
        let err = match best_approx_error_cos(freq, degree) {
            Ok(e) => e,
            Err(e) => return error_report(8, name, "low degree", e.to_string()),
        };
        min_ratio = min_ratio.min(err / cos_norm_squared(freq).sqrt());
    }
    let high = match best_approx_error_cos(20.0, 60) {
        Ok(e) => e,
        Err(e) => return error_report(8, name, "high degree", e.to_string()),
    };
    let high_ratio = high / cos_norm_squared(20.0).sqrt();
    report(
        8,
        name,
        min_ratio >= 0.5 && high_ratio <= 1e-3,
        format!(
            "min relative error at degree 0.05D = {min_ratio:.4} (needs >= 0.5); relative \
             error at degree 3D = {high_ratio:.3e} (needs <= 1e-3)"
        ),
    )
}

/// Check 9 — Gaussian-weighted norm identity: the convolution side and the
/// series side agree within `1e−6` relatively for the box profile and for
/// ten random even-Legendre profiles on `[−1/2, 1/2]`.
pub fn gaussian_norm_identity() -> CriterionReport {
    let name = "weighted norm identity, convolution vs series";
    let mut worst = 0.0f64;
    match vemuri_norm_identity(&[1.0], 0.5) {
        Ok((lhs, rhs)) => worst = worst.max((lhs / rhs - 1.0).abs()),
        Err(e) => return error_report(9, name, "box profile", e.to_string()),
    }
    let mut rng = StdRng::seed_from_u64(17);
    for case in 0..10 {
        // Random even profile: coefficients on even Legendre degrees only.
        let top = rng.gen_range(2..=5usize);
        let mut coeffs = vec![0.0f64; 2 * top - 1];
        for slot in coeffs.iter_mut().step_by(2) {
            *slot = rng.gen_range(-1.0..1.0);
        }
        match vemuri_norm_identity(&coeffs, 0.5) {
            Ok((lhs, rhs)) => worst = worst.max((lhs / rhs - 1.0).abs()),
            Err(e) => {
                return error_report(9, name, "random profile", format!("case {case}: {e}"))
            }
        }
    }
    report(
        9,
        name,
        worst <= 1e-6,
        format!("max |lhs/rhs - 1| = {worst:.3e} over 11 profiles (needs <= 1e-6)"),
    )
}

/// Check 10 — power-weight bounds: in the pointwise regime (`m = n = 3`,
/// `p = q = 2`, `d = 1`) the compensated bound `value·y^{m−1/p}` stays in a
/// factor-5 band over `y ∈ [2, 20]`; in the factorial regime the implied
/// growth constants `(value·√(m!))^{1/m}` stay within `±20%` of a fitted
/// constant across `m ∈ {2, …, 12}`.
pub fn power_weight_bounds() -> CriterionReport {
    let name = "power-weight bounds in both regimes";
    let params = match MomentParams::new(3.0, 3.0, 2.0, 2.0, 1, 0.5) {
        Ok(p) => p,
        Err(e) => return error_report(10, name, "parameters", e.to_string()),
    };
    let mut ratios = Vec::new();
    for &y in &[2.0f64, 3.0, 4.5, 6.5, 9.5, 14.0, 20.0] {
        match moment_upper_bound(y, &params, MomentRegime::Pointwise) {
            Ok(bound) => ratios.push(bound.value * y.powf(3.0 - 0.5)),
            Err(e) => return error_report(10, name, "pointwise regime", e.to_string()),
        }
    }
    let max = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let spread = max / min;

    let mut logs = Vec::new();
    for m in 2..=12usize {
        let mf = m as f64;
        let params = match MomentParams::new(mf, mf, 2.0, 2.0, 1, 0.25) {
            Ok(p) => p,
            Err(e) => return error_report(10, name, "factorial parameters", e.to_string()),
        };
        match moment_upper_bound(0.0, &params, MomentRegime::Factorial) {
            Ok(bound) => logs.push((mf, bound.value.ln() + 0.5 * ln_gamma(mf + 1.0))),
            Err(e) => return error_report(10, name, "factorial regime", e.to_string()),
        }
    }
    // Through-origin least squares of ln(value·√(m!)) = m·ln C, then the
    // per-order drift of the implied constants around the fit.
    let sxy: f64 = logs.iter().map(|(m, v)| m * v).sum();
    let sxx: f64 = logs.iter().map(|(m, _)| m * m).sum();
    let ln_c = sxy / sxx;
    let drift = logs
        .iter()
        .map(|(m, v)| ((v / m - ln_c).exp() - 1.0).abs())
        .fold(0.0f64, f64::max);
    let passed = spread.is_finite() && spread <= 5.0 && drift <= 0.2;
    report(
        10,
        name,
        passed,
        format!(
            "pointwise band spread = {spread:.4} (needs <= 5); factorial constant drift = \
             {:.2}% around C = {:.4} (needs <= 20%)",
            100.0 * drift,
            ln_c.exp()
        ),
    )
}

/// Check 11 — radial machinery at `d = 3`, `α = 0.5`: the compensated lower
/// bound `value·e^{παy²}(1+y)^{1/2}` stays above a fixed positive floor over
/// `y ∈ {6, 8, 10}`, and the compensated projection error `Ẽ_N·y` (degree
/// `⌊0.05y⌋`, unit support) stays in a factor-4 band over `y ∈ {20, 40, 80}`.
pub fn radial_certification() -> CriterionReport {
    let name = "radial bounds and error scaling in dimension three";
    let mut compensated = Vec::new();
    for &y in &[6.0f64, 8.0, 10.0] {
        match radial_lower_bound(3, y, 0.5, 0.05, 0.05) {
            Ok(bound) => compensated.push(bound * (PI * 0.5 * y * y).exp() * (1.0 + y).sqrt()),
            Err(e) => return error_report(11, name, "lower bound", e.to_string()),
        }
    }
    let floor = compensated.iter().cloned().fold(f64::INFINITY, f64::min);

    let mut band = Vec::new();
    for &y in &[20.0f64, 40.0, 80.0] {
        let prob = RadialProblem {
            d: 3,
            y,
            support: 1.0,
            degree: (0.05 * y).floor() as usize,
        };
        match radial_best_approx(&prob) {
            // Compensation Ẽ_N·y^{(d−1)/2}/M^{1/2} with d = 3, M = 1.
            Ok(err) => band.push(err * y),
            Err(e) => return error_report(11, name, "projection error", e.to_string()),
        }
    }
    let max = band.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = band.iter().cloned().fold(f64::INFINITY, f64::min);
    let spread = max / min;
    // "Bounded below by a positive constant" made concrete: an order of
    // magnitude under the measured floor ~1e-2.
    let passed = floor >= 1e-3 && spread.is_finite() && spread <= 4.0;
    report(
        11,
        name,
        passed,
        format!(
            "compensated lower-bound floor = {floor:.3e} (needs >= 1e-3); error-scaling \
             spread = {spread:.4} (needs <= 4)"
        ),
    )
}

/// Check 12 — oracle convergence: along the truncation ladder
/// `nMax ∈ {32, 64, 128, 256, 512}` (`α = 0.5`), the oracle value is
/// monotone nondecreasing at every `y ∈ {4, …, 8}` and its relative change
/// over the final doubling is below `1e−6`.
pub fn oracle_convergence() -> CriterionReport {
    let name = "oracle truncation monotone and settled by 512";
    let ladder = [32usize, 64, 128, 256, 512];
    let targets = [4.0f64, 5.0, 6.0, 7.0, 8.0];
    let mut values = vec![Vec::new(); targets.len()];
    for &n in &ladder {
        let gram = match build_gram(0.5, n) {
            Ok(g) => g,
            Err(e) => return error_report(12, name, "factorization", e.to_string()),
        };
        for (slot, &y) in values.iter_mut().zip(&targets) {
            slot.push(gram.sharp_constant_at(y));
        }
    }
    let mut monotone = true;
    let mut worst_change = 0.0f64;
    for ladder_values in &values {
        monotone &= ladder_values
            .windows(2)
            .all(|w| w[1] >= w[0] * (1.0 - 1e-12));
        let last = ladder_values[ladder_values.len() - 1];
        let prev = ladder_values[ladder_values.len() - 2];
        worst_change = worst_change.max((last - prev).abs() / last);
    }
    report(
        12,
        name,
        monotone && worst_change < 1e-6,
        format!(
            "monotone along the ladder: {monotone}; worst relative change over the final \
             doubling = {worst_change:.3e} (needs < 1e-6)"
        ),
    )
}

/// Runs the whole suite in order.
pub fn run_all() -> Vec<CriterionReport> {
    vec![
        sandwich_certification(),
        asymptotic_flatness(),
        sharpness_direction(),
        reproducing_formula(),
        test_function_properties(),
        bessel_transform_identity(),
        mean_transform_commutation(),
        cosine_inapproximability(),
        gaussian_norm_identity(),
        power_weight_bounds(),
        radial_certification(),
        oracle_convergence(),
    ]
}
