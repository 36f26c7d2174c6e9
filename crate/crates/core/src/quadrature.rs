//! Deterministic numerical integration.
//!
//! Three layers, used throughout the crate:
//!
//! * [`gauss_legendre`] — classical Gauss–Legendre rules on a finite
//!   interval, exact for polynomials of degree `≤ 2n − 1`;
//! * [`integrate`] — an adaptive composite integrator on a finite interval
//!   with a per-panel error estimate;
//! * [`integrate_gaussian_line`] — whole-line integration for integrands
//!   with a known Gaussian decay rate, by certified truncation to a finite
//!   interval.
//!
//! A fourth, more specialised rule, [`gauss_hermite_modified`], integrates
//! `∫ F(u) du` for `F(u) = f(u) e^{−u²}` with `f` of moderate growth; it is
//! the quadrature behind the Hermite–Gram oracle.  Its weights are produced
//! directly in the *modified* form `w_i e^{u_i²}` (Christoffel numbers of
//! the orthonormal Hermite functions), which stays in range for thousands of
//! nodes where the classical weights `w_i ~ e^{−u_i²}` would underflow.

use crate::special::legendre_p_with_derivative;
use crate::{Error, Result};

/// A quadrature rule on a finite interval: `∫_a^b f ≈ Σ w_i f(x_i)`.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    /// Abscissas, in strictly increasing order, all inside `(a, b)`.
    pub nodes: Vec<f64>,
    /// Strictly positive weights; they sum to `b − a`.
    pub weights: Vec<f64>,
    /// The interval `(a, b)` the rule integrates over.
    pub interval: (f64, f64),
}

impl QuadratureRule {
    /// Applies the rule to `f`.
    pub fn apply(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Rescales a rule on `[−1, 1]` to `[a, b]`.
    fn scaled_to(&self, a: f64, b: f64) -> QuadratureRule {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        QuadratureRule {
            nodes: self.nodes.iter().map(|&x| mid + half * x).collect(),
            weights: self.weights.iter().map(|&w| half * w).collect(),
            interval: (a, b),
        }
    }
}

/// Builds the `n`-point Gauss–Legendre rule on `[a, b]`.
///
/// Nodes are the roots of the Legendre polynomial `P_n`, found by Newton
/// iteration from Chebyshev-type initial guesses (converged to `1e−14` and
/// then polished once more); the weight at a root `x` is
/// `2 / ((1 − x²) P_n′(x)²)`, mapped affinely to `[a, b]`.  The computed
/// rule is exactly symmetric about the midpoint.
///
/// Errors: `n = 0` or `a ≥ b` is an invalid argument.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::invalid("gauss_legendre: node count n must be >= 1"));
    }
    if !(a < b) {
        return Err(Error::invalid(
            "gauss_legendre: interval must satisfy a < b",
        ));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n / 2;
    for i in 0..half {
        // Initial guess for the i-th largest root of P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut deriv = 0.0;
        for _ in 0..100 {
            let (p, dp) = legendre_p_with_derivative(n, x);
            deriv = dp;
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-14 {
                // One extra polishing step after the tolerance is met.
                let (p2, dp2) = legendre_p_with_derivative(n, x);
                x -= p2 / dp2;
                deriv = dp2;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * deriv * deriv);
        // Mirror: the roots of P_n come in ± pairs.
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        // The middle node of an odd rule is exactly 0.
        let (_, dp) = legendre_p_with_derivative(n, 0.0);
        nodes[half] = 0.0;
        weights[half] = 2.0 / (dp * dp);
    }
    let reference = QuadratureRule {
        nodes,
        weights,
        interval: (-1.0, 1.0),
    };
    Ok(if a == -1.0 && b == 1.0 {
        reference
    } else {
        reference.scaled_to(a, b)
    })
}

/// Number of panels the adaptive integrator may create before giving up.
const MAX_PANELS: usize = 1 << 16;

/// Adaptive integration of `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Each panel is estimated with 10- and 20-point Gauss–Legendre rules; the
/// difference is the error estimate.  A panel is accepted when its estimate
/// is below its proportional share `tol · len / (b − a)`, otherwise it is
/// bisected, up to `2^16` panels in total.  Degenerate intervals (`a = b`)
/// integrate to zero.
///
/// Errors: `a > b` or `tol ≤ 0` is an invalid argument; exceeding the panel
/// budget is an accuracy failure carrying the best estimate (accepted panels
/// plus current estimates of the unresolved ones) and an error estimate.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::invalid("integrate: tolerance must be positive"));
    }
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return Err(Error::invalid("integrate: interval must satisfy a <= b"));
    }
    let coarse = gauss_legendre(10, -1.0, 1.0)?;
    let fine = gauss_legendre(20, -1.0, 1.0)?;
    let eval = |f: &mut F, lo: f64, hi: f64| -> (f64, f64) {
        let c = coarse.scaled_to(lo, hi).apply(&mut *f);
        let d = fine.scaled_to(lo, hi).apply(&mut *f);
        (c, d)
    };
    // Work stack of panels (lo, hi, coarse value, fine value).
    let (c0, d0) = eval(&mut f, a, b);
    let mut stack = vec![(a, b, c0, d0)];
    let mut panels = 1usize;
    let mut sum = 0.0;
    let mut err = 0.0;
    while let Some((lo, hi, coarse_val, fine_val)) = stack.pop() {
        let e = (fine_val - coarse_val).abs();
        let width = hi - lo;
        // A panel narrower than a few ulps cannot be refined further.
        let at_resolution = width <= 4.0 * f64::EPSILON * lo.abs().max(hi.abs()).max(1.0);
        if e <= tol * width / (b - a) || at_resolution {
            sum += fine_val;
            err += e;
            continue;
        }
        if panels >= MAX_PANELS {
            let mut best = sum + fine_val;
            let mut err_total = err + e;
            for &(_, _, c, d) in &stack {
                best += d;
                err_total += (d - c).abs();
            }
            return Err(Error::AccuracyFailure {
                message: format!(
                    "integrate: panel budget {MAX_PANELS} exhausted on [{a:e}, {b:e}]"
                ),
                best,
                error_estimate: err_total,
            });
        }
        let mid = 0.5 * (lo + hi);
        let (cl, dl) = eval(&mut f, lo, mid);
        let (cr, dr) = eval(&mut f, mid, hi);
        stack.push((lo, mid, cl, dl));
        stack.push((mid, hi, cr, dr));
        panels += 1;
    }
    Ok(sum)
}

/// Integrates `f` over the whole real line, given that
/// `|f(x)| ≤ (1 + |x|)^64 e^{−decay_rate · π x²}` eventually.
///
/// The line is truncated to `[−R, R]` with `R` the smallest radius at which
/// the envelope `e^{−decay_rate·πR²}(1 + R)^{64}` falls below `tol / 10`,
/// so the discarded tails are negligible against the tolerance; the finite
/// part then goes to [`integrate`] with the remaining budget.
///
/// Errors: `decay_rate ≤ 0` or `tol ≤ 0` is an invalid argument.
pub fn integrate_gaussian_line<F: FnMut(f64) -> f64>(
    f: F,
    decay_rate: f64,
    tol: f64,
) -> Result<f64> {
    if !(decay_rate > 0.0) {
        return Err(Error::invalid(
            "integrate_gaussian_line: decay_rate must be positive",
        ));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid(
            "integrate_gaussian_line: tolerance must be positive",
        ));
    }
    // log of the envelope minus log of the target; roots of g bracket R.
    let g = |r: f64| -decay_rate * std::f64::consts::PI * r * r + 64.0 * (1.0 + r).ln()
        - (tol / 10.0).ln();
    let mut hi = 1.0;
    while g(hi) > 0.0 {
        hi *= 2.0;
        if hi > 1e9 {
            break; // envelope argument pathological; integrate a huge box anyway
        }
    }
    let mut lo = hi / 2.0;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let radius = hi.max(1.0);
    integrate(f, -radius, radius, 0.9 * tol)
}

/// Gauss–Hermite nodes and modified weights for `∫_{−∞}^{∞} F(u) du` with
/// `F(u) = f(u) e^{−u²}`: the rule is `Σ ṽ_i F(u_i)`, exact when `f` is a
/// polynomial of degree `≤ 2n − 1`.
///
/// Nodes are eigenvalues of the Jacobi matrix (diagonal 0, off-diagonal
/// `√(k/2)`), isolated by Sturm bisection and polished by Newton steps on
/// the Hermite function `h̄_n`; the modified weight is the Christoffel
/// number `ṽ_i = 1 / Σ_{k<n} h̄_k(u_i)²` of the orthonormal Hermite
/// functions, an `O(1)` quantity even when the classical weight underflows.
/// Node/weight pairs are exactly symmetric under `u ↦ −u`.
pub(crate) fn gauss_hermite_modified(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "gauss_hermite_modified: need n >= 1");
    let mut nodes = vec![0.0; n];
    // Off-diagonal entries b_k = sqrt(k/2), k = 1..n−1.
    let b2: Vec<f64> = (1..n).map(|k| k as f64 / 2.0).collect();
    // Sturm count: number of eigenvalues strictly below x.
    let count_below = |x: f64| -> usize {
        let mut negatives = 0usize;
        let mut d = -x;
        if d < 0.0 {
            negatives += 1;
        }
        for &bsq in &b2 {
            let mut prev = d;
            if prev.abs() < 1e-300 {
                prev = if prev < 0.0 { -1e-300 } else { 1e-300 };
            }
            d = -x - bsq / prev;
            if d < 0.0 {
                negatives += 1;
            }
        }
        negatives
    };
    let bound = (2.0 * n as f64 + 1.0).sqrt() + 2.0;
    // Compute the upper half (indices ≥ n/2); mirror for the rest.
    for i in n / 2..n {
        let mut lo = -bound;
        let mut hi = bound;
        // Bisection: the i-th smallest eigenvalue has count_below ≤ i on its
        // left and ≥ i+1 on its right.
        for _ in 0..70 {
            let mid = 0.5 * (lo + hi);
            if count_below(mid) <= i {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut u = 0.5 * (lo + hi);
        // Newton polish on h̄_n using scale-free ratios.
        for _ in 0..4 {
            let seq = hermite_weight_sequence(n + 1, u);
            let (sign_n, ln_n) = seq[n];
            let (sign_nm1, ln_nm1) = seq[n - 1];
            // h̄_n'(u) = −u h̄_n(u) + √(2n) h̄_{n−1}(u)
            let ratio = sign_n * sign_nm1 * (ln_n - ln_nm1).exp();
            let dratio = -u * ratio + (2.0 * n as f64).sqrt();
            if dratio == 0.0 || !ratio.is_finite() {
                break;
            }
            let step = ratio / dratio;
            u -= step;
            if step.abs() < 1e-15 * (1.0 + u.abs()) {
                break;
            }
        }
        nodes[i] = u;
        nodes[n - 1 - i] = -u;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    let weights: Vec<f64> = nodes
        .iter()
        .map(|&u| {
            let seq = hermite_weight_sequence(n, u);
            let s: f64 = seq.iter().map(|&(_, ln)| (2.0 * ln).exp()).sum();
            1.0 / s
        })
        .collect();
    (nodes, weights)
}

/// Values `(sign, ln|h̄_k(u)|)` of the orthonormal Hermite functions
/// (weight `e^{−u²}`: `h̄_0 = π^{−1/4} e^{−u²/2}`,
/// `h̄_{k+1} = u√(2/(k+1)) h̄_k − √(k/(k+1)) h̄_{k−1}`) for `k < len`,
/// by a scaled recurrence immune to underflow of the Gaussian prefactor.
fn hermite_weight_sequence(len: usize, u: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(len);
    // Mantissa pair (prev, cur) sharing the running log-scale ln_s.
    let mut ln_s = -0.5 * u * u - 0.25 * std::f64::consts::PI.ln();
    let mut prev = 0.0f64;
    let mut cur = 1.0f64;
    for k in 0..len {
        out.push(if cur == 0.0 {
            (0.0, f64::NEG_INFINITY)
        } else {
            (cur.signum(), cur.abs().ln() + ln_s)
        });
        if k + 1 == len {
            break;
        }
        let kf = k as f64;
        let next = u * (2.0 / (kf + 1.0)).sqrt() * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        let mag = cur.abs().max(prev.abs());
        if mag > 1e120 || (mag > 0.0 && mag < 1e-120) {
            prev /= mag;
            cur /= mag;
            ln_s += mag.ln();
        }
    }
    out
}
