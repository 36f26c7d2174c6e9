//! End-to-end acceptance target: one test per suite check, each printing
//! the check's one-line report (with its wall time appended, for local
//! inspection only) and asserting the verdict.

use std::time::Instant;

use fourier_uncertainty::acceptance::{self, CriterionReport};

fn run(check: fn() -> CriterionReport) {
    let start = Instant::now();
    let report = check();
    let line = report.line();
    println!("{line} [{:.1} s]", start.elapsed().as_secs_f64());
    assert!(report.passed, "{line}");
}

#[test]
fn certifies_sandwich_between_bounds() {
    run(acceptance::sandwich_certification);
}

#[test]
fn oracle_tracks_the_gaussian_law() {
    run(acceptance::asymptotic_flatness);
}

#[test]
fn inflated_weight_exponent_declines() {
    run(acceptance::sharpness_direction);
}

#[test]
fn kernel_reproduces_random_polynomials() {
    run(acceptance::reproducing_formula);
}

#[test]
fn test_function_is_flat_and_localized() {
    run(acceptance::test_function_properties);
}

#[test]
fn legendre_transform_matches_quadrature() {
    run(acceptance::bessel_transform_identity);
}

#[test]
fn summability_mean_commutes_with_transform() {
    run(acceptance::mean_transform_commutation);
}

#[test]
fn cosine_resists_low_degree_approximation() {
    run(acceptance::cosine_inapproximability);
}

#[test]
fn gaussian_weighted_norm_identity_holds() {
    run(acceptance::gaussian_norm_identity);
}

#[test]
fn power_weight_bounds_follow_both_regimes() {
    run(acceptance::power_weight_bounds);
}

#[test]
fn radial_bounds_hold_in_dimension_three() {
    run(acceptance::radial_certification);
}

#[test]
fn oracle_truncation_converges() {
    run(acceptance::oracle_convergence);
}
