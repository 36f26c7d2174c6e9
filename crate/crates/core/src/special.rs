//! Special functions used by the bounds and the oracle.
//!
//! * Legendre polynomials `P_m` and the orthonormal even family
//!   `P̃_{2k}(x) = (−1)^k √((4k+1)π) · P_{2k}(2πx)` on `[−1/(2π), 1/(2π)]`;
//! * Bessel functions `J_ν` for `ν ≥ 0` (power series in the safe region,
//!   downward Miller recurrences elsewhere for half-integer and integer
//!   orders);
//! * the Fourier–Legendre kernel
//!   `j_k(ξ) = √((4k+1)/(2|ξ|)) J_{2k+1/2}(|ξ|)`, which is the Fourier
//!   transform of `P̃_{2k}` restricted to its interval;
//! * Hermite functions `h_n` in the `e^{−πx²}` convention, eigenfunctions
//!   of the Fourier transform with eigenvalue `(−i)^n`;
//! * the radial Fourier kernel `L(z) = 2π J_{(d−2)/2}(2πz) / z^{(d−2)/2}`
//!   with `L(0) = ω_{d−1}`, the surface measure of the unit sphere.

use crate::{Error, Result};
use std::f64::consts::PI;

/// Legendre polynomial `P_m(x)` by the three-term recurrence
/// `(k+1) P_{k+1} = (2k+1) x P_k − k P_{k−1}`.
pub fn legendre_p(m: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if m == 0 {
        return prev;
    }
    let mut cur = x;
    for k in 1..m {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `(P_n(x), P_n′(x))` for the Newton iteration behind Gauss–Legendre
/// nodes; the derivative uses `P_n′ = n (x P_n − P_{n−1}) / (x² − 1)`,
/// valid away from `x = ±1` (all Legendre roots are interior).
pub(crate) fn legendre_p_with_derivative(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut prev = 1.0;
    let mut cur = x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    let deriv = n as f64 * (x * cur - prev) / (x * x - 1.0);
    (cur, deriv)
}

/// Orthonormal even Legendre function
/// `P̃_{2k}(x) = (−1)^k √((4k+1)π) · P_{2k}(2πx)`.
///
/// The family is orthonormal in `L²(−1/(2π), 1/(2π))`; the sign `(−1)^k`
/// makes its Fourier transform the *positive* kernel
/// [`fourier_legendre_kernel`].
pub fn normalized_legendre(k: usize, x: f64) -> f64 {
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    sign * ((4.0 * k as f64 + 1.0) * PI).sqrt() * legendre_p(2 * k, 2.0 * PI * x)
}

/// Bessel function `J_ν(x)` for `ν ≥ 0`, `x ≥ 0`.
///
/// Strategy: the power series where its terms decrease essentially from the
/// start (`x ≤ 12` or `x² ≤ 4(ν+1)`), so cancellation stays bounded;
/// otherwise a downward Miller recurrence, normalized against closed-form
/// values (`J_{1/2}, J_{3/2}`) for half-integer order and against the even
/// Neumann sum `J_0 + 2ΣJ_{2k} = 1` for integer order.  Large-argument
/// evaluation at other fractional orders is not provided.
///
/// Errors: `x < 0` or `ν < 0` is an invalid argument, as is a large `x`
/// combined with an unsupported fractional order.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::invalid("bessel_j: argument x must be >= 0"));
    }
    if nu < 0.0 {
        return Err(Error::invalid("bessel_j: order nu must be >= 0"));
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    if x <= 12.0 || x * x <= 4.0 * (nu + 1.0) {
        return Ok(bessel_series(nu, x));
    }
    let half_index = (nu - 0.5).round();
    if (nu - 0.5 - half_index).abs() < 1e-12 && half_index >= 0.0 {
        return Ok(bessel_miller_half_integer(half_index as usize, x));
    }
    if (nu - nu.round()).abs() < 1e-12 {
        return Ok(bessel_miller_integer(nu.round() as usize, x));
    }
    Err(Error::invalid(
        "bessel_j: large arguments are supported for integer and half-integer orders only",
    ))
}

/// Power series `J_ν(x) = Σ_m (−1)^m (x/2)^{2m+ν} / (m! Γ(m+ν+1))`,
/// accurate while the terms decrease essentially from the start.
pub(crate) fn bessel_series(nu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    // Leading term via logs; underflow to 0 is correct for tiny x, large ν.
    let ln_t0 = nu * half.ln() - statrs::function::gamma::ln_gamma(nu + 1.0);
    let mut term = ln_t0.exp();
    let mut sum = term;
    let x2 = half * half;
    for m in 0..400 {
        let mf = m as f64;
        term *= -x2 / ((mf + 1.0) * (mf + nu + 1.0));
        sum += term;
        if term.abs() <= f64::EPSILON * sum.abs().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    sum
}

/// `J_{k+1/2}(x)` by downward (Miller) recurrence started well above
/// `max(ν, x)`, normalized against whichever of the closed forms
/// `J_{1/2} = √(2/(πx)) sin x`, `J_{3/2} = √(2/(πx)) (sin x / x − cos x)`
/// is larger in magnitude (one of the two is always well away from zero).
pub(crate) fn bessel_miller_half_integer(k: usize, x: f64) -> f64 {
    let start = (k as f64 + 0.5).max(x);
    let top = (start + 40.0 + 0.5 * start.sqrt()).ceil() as usize;
    let mut above = 0.0f64; // trial value at order j + 3/2
    let mut cur = 1e-280f64; // trial value at order j + 1/2, j = top
    // Recorded trial values at orders k+1/2, 3/2, 1/2, kept on the same
    // scale as the running pair across rescalings.
    let mut recorded = [0.0f64; 3];
    for j in (0..top).rev() {
        // J_{ν−1} = (2ν/x) J_ν − J_{ν+1} with ν = j + 3/2.
        let next = (2.0 * (j as f64 + 1.5) / x) * cur - above;
        above = cur;
        cur = next;
        if cur.abs() > 1e260 {
            above *= 1e-260;
            cur *= 1e-260;
            for r in &mut recorded {
                *r *= 1e-260;
            }
        }
        if j == k {
            recorded[0] = cur;
        }
        if j == 1 {
            recorded[1] = cur;
        }
        if j == 0 {
            recorded[2] = cur;
        }
    }
    let envelope = (2.0 / (PI * x)).sqrt();
    let closed_half = envelope * x.sin();
    let closed_three_half = envelope * (x.sin() / x - x.cos());
    // Normalize on the pivot with the larger closed-form magnitude.
    let (closed, trial) = if closed_half.abs() >= closed_three_half.abs() {
        (closed_half, recorded[2])
    } else {
        (closed_three_half, recorded[1])
    };
    recorded[0] * closed / trial
}

/// `J_n(x)` for integer `n` by downward (Miller) recurrence, normalized
/// with the Neumann sum `J_0(x) + 2 Σ_{k≥1} J_{2k}(x) = 1`.
pub(crate) fn bessel_miller_integer(n: usize, x: f64) -> f64 {
    let start = (n as f64).max(x);
    let mut top = (start + 40.0 + 0.5 * start.sqrt()).ceil() as usize;
    if top % 2 == 1 {
        top += 1;
    }
    let mut above = 0.0f64;
    let mut cur = 1e-280f64;
    let mut at_n = 0.0f64;
    let mut even_sum = cur; // top is even, so the seed belongs to the sum
    for j in (0..top).rev() {
        // J_{ν−1} = (2ν/x) J_ν − J_{ν+1} with ν = j + 1.
        let next = (2.0 * (j as f64 + 1.0) / x) * cur - above;
        above = cur;
        cur = next;
        if cur.abs() > 1e260 {
            above *= 1e-260;
            cur *= 1e-260;
            at_n *= 1e-260;
            even_sum *= 1e-260;
        }
        if j == n {
            at_n = cur;
        }
        if j % 2 == 0 {
            even_sum += cur;
        }
    }
    // even_sum = J̃_0 + Σ_{k≥1} J̃_{2k}; the sum rule needs J̃_0 + 2 Σ J̃_{2k},
    // and cur holds J̃_0 after the loop.
    let norm = 2.0 * even_sum - cur;
    at_n / norm
}

/// Fourier–Legendre kernel `j_k(ξ) = √((4k+1)/(2|ξ|)) J_{2k+1/2}(|ξ|)`,
/// the Fourier transform of [`normalized_legendre`] `P̃_{2k}` (restricted to
/// `[−1/(2π), 1/(2π)]`), evaluated with the limiting values
/// `j_0(0) = 1/√π`, `j_k(0) = 0` for `k ≥ 1`.
pub fn fourier_legendre_kernel(k: usize, xi: f64) -> f64 {
    let ax = xi.abs();
    if ax == 0.0 {
        return if k == 0 { 1.0 / PI.sqrt() } else { 0.0 };
    }
    let j = bessel_j(2.0 * k as f64 + 0.5, ax)
        .expect("half-integer order and non-negative argument are always supported");
    ((4.0 * k as f64 + 1.0) / (2.0 * ax)).sqrt() * j
}

/// Hermite function `h_n(x)` in the `e^{−πx²}` convention:
/// `h_0(x) = 2^{1/4} e^{−πx²}`,
/// `h_{n+1}(x) = √(4π/(n+1)) x h_n(x) − √(n/(n+1)) h_{n−1}(x)`.
///
/// The family is orthonormal in `L²(ℝ)` and satisfies `ĥ_n = (−i)^n h_n`.
/// Direct evaluation is adequate for moderate `n` and `|x|`; the Gram
/// oracle uses the log-scaled sequence instead when the Gaussian prefactor
/// would underflow.
pub fn hermite_function(n: usize, x: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = 2f64.powf(0.25) * (-PI * x * x).exp();
    for k in 0..n {
        let kf = k as f64;
        let next = (4.0 * PI / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Values `(sign, ln|h_j(x)|)` for `j < len`, by the same recurrence as
/// [`hermite_function`] but carried as mantissa–logarithm pairs, so the
/// sequence stays meaningful when `e^{−πx²}` underflows and the later
/// polynomial growth would otherwise start from a flushed zero.
pub(crate) fn hermite_sequence_log(len: usize, x: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(len);
    let mut ln_s = -PI * x * x + 0.25 * 2f64.ln();
    let mut prev = 0.0f64;
    let mut cur = 1.0f64;
    for j in 0..len {
        out.push(if cur == 0.0 {
            (0.0, f64::NEG_INFINITY)
        } else {
            (cur.signum(), cur.abs().ln() + ln_s)
        });
        if j + 1 == len {
            break;
        }
        let jf = j as f64;
        let next = (4.0 * PI / (jf + 1.0)).sqrt() * x * cur - (jf / (jf + 1.0)).sqrt() * prev;
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

/// Surface measure `ω_{d−1} = 2 π^{d/2} / Γ(d/2)` of the unit sphere in ℝ^d.
pub fn sphere_surface_measure(d: usize) -> f64 {
    2.0 * PI.powf(d as f64 / 2.0) / statrs::function::gamma::gamma(d as f64 / 2.0)
}

/// Exponentially scaled modified Bessel function `e^{−x} I₀(x)`, `x ≥ 0`.
///
/// The scaled form is what Gaussian convolutions of radial functions in the
/// plane need: `e^{−a(s²+t²)} I₀(2ast) = e^{−a(s−t)²} · [e^{−x} I₀(x)]`,
/// and the left-hand side would overflow long before the right does.
///
/// The power series (all terms positive, no cancellation) is used up to
/// `x = 50`; beyond that the asymptotic expansion
/// `e^{−x} I₀(x) ~ (2πx)^{−1/2} Σ_k t_k`, `t_0 = 1`,
/// `t_{k+1} = t_k (2k+1)²/(8x(k+1))`, summed to its smallest term, is
/// accurate to well below 1e−13.
pub(crate) fn scaled_bessel_i0(x: f64) -> f64 {
    debug_assert!(x >= 0.0, "scaled_bessel_i0: negative argument");
    if x <= 50.0 {
        let x2 = 0.25 * x * x;
        let mut term = 1.0f64;
        let mut sum = 1.0f64;
        for m in 0..200 {
            let mf = m as f64 + 1.0;
            term *= x2 / (mf * mf);
            sum += term;
            if term <= f64::EPSILON * sum {
                break;
            }
        }
        sum * (-x).exp()
    } else {
        let mut term = 1.0f64;
        let mut sum = 1.0f64;
        for k in 0..40 {
            let kf = k as f64;
            let next = term * (2.0 * kf + 1.0) * (2.0 * kf + 1.0) / (8.0 * x * (kf + 1.0));
            if next >= term || next <= f64::EPSILON * sum {
                if next < term {
                    sum += next;
                }
                break;
            }
            term = next;
            sum += term;
        }
        sum / (2.0 * PI * x).sqrt()
    }
}

/// Radial Fourier kernel `L(z) = 2π J_{(d−2)/2}(2πz) / z^{(d−2)/2}`, the
/// profile through which the `d`-dimensional Fourier transform acts on
/// radial functions: `ĝ(r) = ∫_0^∞ g(s) L(rs) s^{d−1} ds`.
///
/// Closed forms are used in low dimensions — `2 cos(2πz)` for `d = 1`,
/// `2π J_0(2πz)` for `d = 2`, `2 sin(2πz)/z` for `d = 3` — and the series
/// `L(z) = 2π Σ_m (−1)^m π^{2m+ν} z^{2m} / (m! Γ(m+ν+1))`, `ν = (d−2)/2`,
/// near `z = 0` in general; `L(0) = ω_{d−1}`.
///
/// Errors: `d < 1` or `z < 0` is an invalid argument.
pub fn radial_kernel_l(d: usize, z: f64) -> Result<f64> {
    if d < 1 {
        return Err(Error::invalid("radial_kernel_l: dimension d must be >= 1"));
    }
    if z < 0.0 {
        return Err(Error::invalid("radial_kernel_l: argument z must be >= 0"));
    }
    match d {
        1 => Ok(2.0 * (2.0 * PI * z).cos()),
        3 => {
            let t = 2.0 * PI * z;
            if t < 1e-4 {
                // 2 sin(t)/z = 4π(1 − t²/6 + t⁴/120 − …)
                Ok(4.0 * PI * (1.0 - t * t / 6.0 + t.powi(4) / 120.0))
            } else {
                Ok(2.0 * t.sin() / z)
            }
        }
        2 => Ok(2.0 * PI * bessel_j(0.0, 2.0 * PI * z)?),
        _ => {
            let nu = (d as f64 - 2.0) / 2.0;
            if z < 0.1 {
                let mut term =
                    2.0 * PI.powf(nu + 1.0) / statrs::function::gamma::gamma(nu + 1.0);
                let mut sum = term;
                let z2 = (PI * z) * (PI * z);
                for m in 0..60 {
                    let mf = m as f64;
                    term *= -z2 / ((mf + 1.0) * (mf + nu + 1.0));
                    sum += term;
                    if term.abs() <= f64::EPSILON * sum.abs() {
                        break;
                    }
                }
                Ok(sum)
            } else {
                Ok(2.0 * PI * bessel_j(nu, 2.0 * PI * z)? / z.powf(nu))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate, integrate_gaussian_line};
    use approx::assert_abs_diff_eq;

    #[test]
    fn legendre_low_degrees_closed_form() {
        assert_eq!(legendre_p(0, 0.7), 1.0);
        // P_2(x) = (3x² − 1)/2, so P_2(0.5) = −1/8.
        assert_abs_diff_eq!(legendre_p(2, 0.5), -0.125, epsilon = 1e-15);
        // P_6(x) = (231x⁶ − 315x⁴ + 105x² − 5)/16, expanded from the
        // Rodrigues formula.
        let x: f64 = 0.3;
        let p6 = (231.0 * x.powi(6) - 315.0 * x.powi(4) + 105.0 * x * x - 5.0) / 16.0;
        assert_abs_diff_eq!(legendre_p(6, 0.3), p6, epsilon = 1e-14);
    }

    // Bonnet recurrence consistency at high degree.
    #[test]
    fn legendre_recurrence_consistency() {
        for &x in &[-0.95, -0.4, 0.0, 0.33, 0.87] {
            for m in 1..200usize {
                let mf = m as f64;
                let lhs = (mf + 1.0) * legendre_p(m + 1, x);
                let rhs = (2.0 * mf + 1.0) * x * legendre_p(m, x) - mf * legendre_p(m - 1, x);
                assert!(
                    (lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()),
                    "Bonnet identity off at m = {m}, x = {x}"
                );
            }
        }
    }

    #[test]
    fn normalized_legendre_constant_and_parity() {
        // P̃_0 = √π.
        assert_abs_diff_eq!(normalized_legendre(0, 0.123), PI.sqrt(), epsilon = 1e-14);
        for k in 0..6 {
            for &x in &[0.01, 0.07, 0.14] {
                assert_abs_diff_eq!(
                    normalized_legendre(k, x),
                    normalized_legendre(k, -x),
                    epsilon = 1e-12
                );
            }
        }
    }

    // Orthonormality on [−1/(2π), 1/(2π)] by quadrature.
    #[test]
    fn normalized_legendre_orthonormal() {
        let half = 1.0 / (2.0 * PI);
        for j in 0..=6usize {
            for k in j..=6usize {
                let value = integrate(
                    |x| normalized_legendre(j, x) * normalized_legendre(k, x),
                    -half,
                    half,
                    1e-13,
                )
                .unwrap();
                let exact = if j == k { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(value, exact, epsilon = 1e-11);
            }
        }
    }

    // J_{1/2}(x) = √(2/(πx)) sin x, so J_{1/2}(π/2) = 2/π.
    #[test]
    fn bessel_half_at_pi_over_two() {
        let value = bessel_j(0.5, PI / 2.0).unwrap();
        assert_abs_diff_eq!(value, 2.0 / PI, epsilon = 1e-13);
    }

    #[test]
    fn bessel_at_zero_argument() {
        assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(2.5, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn bessel_rejects_negative_argument_or_order() {
        assert!(matches!(bessel_j(0.5, -1.0), Err(Error::InvalidArgument(_))));
        assert!(matches!(bessel_j(-0.5, 1.0), Err(Error::InvalidArgument(_))));
    }

    // Series and downward recurrence agree where both are accurate, e.g.
    // ν = 5/2, x = 10; the series loses roughly e^x · ε absolutely, so the
    // overlap window is kept at x ≤ 16.
    #[test]
    fn bessel_series_and_miller_agree() {
        let series = bessel_series(2.5, 10.0);
        let miller = bessel_miller_half_integer(2, 10.0);
        assert!(
            (series - miller).abs() <= 1e-11 * series.abs().max(1.0),
            "series {series} vs recurrence {miller}"
        );
        for k in 0..=10usize {
            for &x in &[13.0, 14.0, 16.0] {
                let s = bessel_series(k as f64 + 0.5, x);
                let m = bessel_miller_half_integer(k, x);
                assert!(
                    (s - m).abs() <= 1e-9,
                    "half-integer mismatch at k = {k}, x = {x}: {s} vs {m}"
                );
            }
        }
    }

    // Closed forms from the sin/cos ladder match bessel_j for ν ≤ 21/2; the
    // upward ladder is stable while x stays at or above the order.
    #[test]
    fn bessel_half_integer_closed_forms() {
        let closed = |k: usize, x: f64| -> f64 {
            let envelope = (2.0 / (PI * x)).sqrt();
            let mut below = envelope * x.cos(); // J_{−1/2}
            let mut cur = envelope * x.sin(); // J_{1/2}
            for j in 0..k {
                let next = (2.0 * (j as f64 + 0.5) / x) * cur - below;
                below = cur;
                cur = next;
            }
            cur
        };
        for k in 0..=10usize {
            for &x in &[1.0, 2.5, 5.0, 7.5, 10.0, 14.0, 25.0] {
                if x < k as f64 + 0.5 {
                    continue; // the ladder loses accuracy once the order exceeds x
                }
                let reference = closed(k, x);
                let value = bessel_j(k as f64 + 0.5, x).unwrap();
                assert!(
                    (value - reference).abs() <= 1e-10 * reference.abs().max(1.0),
                    "k = {k}, x = {x}: {value} vs {reference}"
                );
            }
        }
    }

    // Integer orders against the integral representation
    // J_n(x) = (1/π) ∫_0^π cos(nθ − x sin θ) dθ.
    #[test]
    fn bessel_integer_matches_integral_representation() {
        for n in 0..=4usize {
            for &x in &[13.0, 30.0, 60.0] {
                let by_integral = integrate(
                    |theta| (n as f64 * theta - x * theta.sin()).cos(),
                    0.0,
                    PI,
                    1e-12,
                )
                .unwrap()
                    / PI;
                let value = bessel_j(n as f64, x).unwrap();
                assert!(
                    (value - by_integral).abs() <= 1e-10,
                    "n = {n}, x = {x}: {value} vs integral {by_integral}"
                );
            }
        }
    }

    // j_0(ξ) = sin(ξ)/(√π ξ); j_k(0) = 0 for k ≥ 1; evenness.
    #[test]
    fn fourier_legendre_kernel_closed_forms() {
        for &xi in &[0.3f64, 1.0, 4.0, 17.0] {
            let expected = xi.sin() / (PI.sqrt() * xi);
            assert_abs_diff_eq!(fourier_legendre_kernel(0, xi), expected, epsilon = 1e-13);
            assert_abs_diff_eq!(
                fourier_legendre_kernel(0, -xi),
                expected,
                epsilon = 1e-13
            );
        }
        assert_abs_diff_eq!(
            fourier_legendre_kernel(0, 0.0),
            1.0 / PI.sqrt(),
            epsilon = 1e-15
        );
        assert_eq!(fourier_legendre_kernel(1, 0.0), 0.0);
        for k in 1..6 {
            assert_eq!(
                fourier_legendre_kernel(k, 2.2),
                fourier_legendre_kernel(k, -2.2)
            );
        }
    }

    // j_k(ξ) = ∫ P̃_{2k}(x) e^{−2πiξx} dx over [−1/(2π), 1/(2π)]; the
    // imaginary part vanishes by parity, so the real part carries it all.
    #[test]
    fn fourier_legendre_kernel_matches_quadrature() {
        let half = 1.0 / (2.0 * PI);
        for k in 0..=6usize {
            for &xi in &[0.0, 0.7, 3.0, 11.0, 29.0] {
                let by_quadrature = integrate(
                    |x| normalized_legendre(k, x) * (2.0 * PI * xi * x).cos(),
                    -half,
                    half,
                    1e-12,
                )
                .unwrap();
                let direct = fourier_legendre_kernel(k, xi);
                assert!(
                    (by_quadrature - direct).abs() <= 1e-9,
                    "k = {k}, xi = {xi}: {direct} vs quadrature {by_quadrature}"
                );
            }
        }
    }

    #[test]
    fn hermite_ground_state() {
        for &x in &[0.0, 0.4, -1.3] {
            assert_abs_diff_eq!(
                hermite_function(0, x),
                2f64.powf(0.25) * (-PI * x * x).exp(),
                epsilon = 1e-15
            );
        }
    }

    // Orthonormality: ∫ h_m h_n = δ_{mn}, checked for a spread of pairs up
    // to n = 60.  Decay rate 1 (not 2) keeps the truncation radius beyond
    // the classical turning point of h_60.
    #[test]
    fn hermite_orthonormality() {
        let pairs = [(0, 0), (1, 1), (7, 7), (20, 20), (60, 60), (0, 2), (3, 5), (10, 40)];
        for &(m, n) in &pairs {
            let value = integrate_gaussian_line(
                |x| hermite_function(m, x) * hermite_function(n, x),
                1.0,
                1e-12,
            )
            .unwrap();
            let exact = if m == n { 1.0 } else { 0.0 };
            assert_abs_diff_eq!(value, exact, epsilon = 1e-11);
        }
    }

    // Fourier eigenrelation: ∫ h_n(x) e^{−2πixξ} dx = (−i)^n h_n(ξ).
    #[test]
    fn hermite_fourier_eigenrelation() {
        for &n in &[0usize, 1, 2, 3, 6, 11, 20] {
            for &xi in &[0.0, 0.5, 1.7, 3.2, 5.0] {
                let real = integrate_gaussian_line(
                    |x| hermite_function(n, x) * (2.0 * PI * x * xi).cos(),
                    1.0,
                    1e-11,
                )
                .unwrap();
                let imag = integrate_gaussian_line(
                    |x| -hermite_function(n, x) * (2.0 * PI * x * xi).sin(),
                    1.0,
                    1e-11,
                )
                .unwrap();
                let target = hermite_function(n, xi);
                let (re_exact, im_exact) = match n % 4 {
                    0 => (target, 0.0),
                    1 => (0.0, -target),
                    2 => (-target, 0.0),
                    _ => (0.0, target),
                };
                assert_abs_diff_eq!(real, re_exact, epsilon = 1e-8);
                assert_abs_diff_eq!(imag, im_exact, epsilon = 1e-8);
            }
        }
    }

    // The log-scaled sequence matches direct evaluation in range, and stays
    // finite far out of range.
    #[test]
    fn hermite_sequence_log_matches_direct() {
        for &x in &[0.0, 0.7, -2.2, 4.0] {
            let seq = hermite_sequence_log(40, x);
            for (n, &(sign, ln_abs)) in seq.iter().enumerate() {
                let direct = hermite_function(n, x);
                let reconstructed = sign * ln_abs.exp();
                assert!(
                    (reconstructed - direct).abs() <= 1e-12 * direct.abs().max(1e-12),
                    "n = {n}, x = {x}: {reconstructed} vs {direct}"
                );
            }
        }
        let far = hermite_sequence_log(100, 30.0);
        for &(sign, ln_abs) in &far {
            assert!(sign.abs() <= 1.0);
            assert!(ln_abs.is_finite() || sign == 0.0);
        }
        // ln|h_0(30)| = ln 2^{1/4} − π·900, far below the underflow line.
        assert_abs_diff_eq!(
            far[0].1,
            0.25 * 2f64.ln() - PI * 900.0,
            epsilon = 1e-9 * PI * 900.0
        );
    }

    #[test]
    fn radial_kernel_low_dimensions() {
        for &z in &[0.0, 0.2, 1.0, 3.7] {
            assert_abs_diff_eq!(
                radial_kernel_l(1, z).unwrap(),
                2.0 * (2.0 * PI * z).cos(),
                epsilon = 1e-13
            );
        }
        // L(0) = ω_{d−1}: 2 for d = 1, 2π for d = 2, 4π for d = 3.
        assert_abs_diff_eq!(radial_kernel_l(1, 0.0).unwrap(), 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(radial_kernel_l(2, 0.0).unwrap(), 2.0 * PI, epsilon = 1e-13);
        assert_abs_diff_eq!(radial_kernel_l(3, 0.0).unwrap(), 4.0 * PI, epsilon = 1e-12);
        assert!(matches!(radial_kernel_l(0, 1.0), Err(Error::InvalidArgument(_))));
        assert!(matches!(radial_kernel_l(3, -0.1), Err(Error::InvalidArgument(_))));
    }

    // In d = 3 the kernel is 2π times the sphere average of the plane wave:
    // 2π ∫_{−1}^{1} cos(2πzu) du = 2 sin(2πz)/z.
    #[test]
    fn radial_kernel_d3_matches_sphere_average() {
        for &z in &[0.05, 0.5, 2.0, 9.0, 20.0] {
            let average = integrate(|u| (2.0 * PI * z * u).cos(), -1.0, 1.0, 1e-12).unwrap();
            let expected = 2.0 * PI * average;
            assert!(
                (radial_kernel_l(3, z).unwrap() - expected).abs() <= 1e-9,
                "z = {z}"
            );
        }
    }

    #[test]
    fn sphere_surface_measures() {
        assert_abs_diff_eq!(sphere_surface_measure(1), 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(sphere_surface_measure(2), 2.0 * PI, epsilon = 1e-13);
        assert_abs_diff_eq!(sphere_surface_measure(3), 4.0 * PI, epsilon = 1e-13);
    }

    // e^{−x} I₀(x) against the integral representation
    // I₀(x) = (1/π) ∫_0^π e^{x cos θ} dθ, folded into scaled form so the
    // reference integrand e^{x(cos θ − 1)} stays in [0, 1] for every x.
    #[test]
    fn scaled_i0_matches_integral_representation() {
        for &x in &[0.0, 0.3, 5.0, 30.0, 49.0, 51.0, 200.0, 2000.0] {
            let reference =
                integrate(|t| (x * (t.cos() - 1.0)).exp(), 0.0, PI, 1e-13).unwrap() / PI;
            let got = scaled_bessel_i0(x);
            assert!(
                (got - reference).abs() <= 1e-12 * reference.max(1e-12),
                "x = {x}: got {got}, reference {reference}"
            );
        }
    }
}
