//! Case-table checks for the Hermite–Weber combinations: the finite-radius
//! ratio contract of the leading forms in both sectors, the degenerate-λ
//! polynomial forms, and the defining equation over a random parameter cloud.

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::f64::consts::PI;

use twistreg::specfun::recip_gamma;
use twistreg::weber::{
    recessive_plus_coefficients, weber_case_value, weber_combo_leading, weber_combo_stable,
    weber_w, weber_w_second, Direction, WeberCaseId, WeberSector,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn unit_disc(rng: &mut StdRng) -> Complex64 {
    loop {
        let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if z.norm() <= 1.0 {
            return z;
        }
    }
}

/// Ratio of the true combination to the leading form at the two radii of the
/// `1 + O(1/R)` contract (25% at 8, 13% at 16).
fn ratio_check(
    lambda: Complex64,
    c1: Complex64,
    c2: Complex64,
    sector: WeberSector,
    dir: Direction,
) {
    let case = weber_combo_leading(lambda, c1, c2, sector, dir).unwrap();
    let phi = match sector {
        WeberSector::RealAxis => 0.0,
        WeberSector::Diagonal => PI / 4.0,
    };
    for (r, tol) in [(8.0_f64, 0.25), (16.0, 0.13)] {
        let z = dir.sign() * r * c(phi.cos(), phi.sin());
        let (exact, _) = weber_combo_stable(lambda, c1, c2, z).unwrap();
        let predicted = weber_case_value(&case, z).unwrap();
        let ratio = exact / predicted;
        assert!(
            (ratio - 1.0).norm() <= tol,
            "{:?} {dir:?} at R = {r}: ratio = {ratio}",
            case.case_id
        );
    }
}

#[test]
fn real_axis_cases() {
    // Generic growing branch.
    let lambda = c(0.3, -0.4);
    for dir in [Direction::Plus, Direction::Minus] {
        ratio_check(lambda, c(1.0, 0.0), c(0.4, 0.2), WeberSector::RealAxis, dir);
    }
    // Recessive towards +, growing towards −.
    let (c1, c2) = recessive_plus_coefficients(lambda, c(1.3, 0.7));
    for dir in [Direction::Plus, Direction::Minus] {
        ratio_check(lambda, c1, c2, WeberSector::RealAxis, dir);
    }
    // Mirror combination (recessive towards −).
    let g1m = recip_gamma((1.0 - lambda) / 4.0);
    let g3m = recip_gamma((3.0 - lambda) / 4.0);
    let cc = c(0.9, -0.2);
    for dir in [Direction::Plus, Direction::Minus] {
        ratio_check(lambda, cc * g3m, 2.0 * cc * g1m, WeberSector::RealAxis, dir);
    }
}

#[test]
fn diagonal_cases() {
    let lambda = c(0.25, 0.6);
    // Generic two-branch combination.
    for dir in [Direction::Plus, Direction::Minus] {
        ratio_check(lambda, c(1.0, 0.0), c(0.5, -0.3), WeberSector::Diagonal, dir);
    }
    // The e^{+z²/2}-pure combination towards +.
    let g1p = recip_gamma((1.0 + lambda) / 4.0);
    let g3p = recip_gamma((3.0 + lambda) / 4.0);
    let cc = c(1.1, 0.2);
    let pair = (cc * g3p, 2.0 * c(0.0, 1.0) * cc * g1p);
    let case =
        weber_combo_leading(lambda, pair.0, pair.1, WeberSector::Diagonal, Direction::Plus)
            .unwrap();
    assert_eq!(case.case_id, WeberCaseId::DiagDominantPlus);
    for dir in [Direction::Plus, Direction::Minus] {
        ratio_check(lambda, pair.0, pair.1, WeberSector::Diagonal, dir);
    }
    // The e^{−z²/2}-pure combination towards +.
    let (r1, r2) = recessive_plus_coefficients(lambda, c(0.8, 0.0));
    let case =
        weber_combo_leading(lambda, r1, r2, WeberSector::Diagonal, Direction::Plus).unwrap();
    assert_eq!(case.case_id, WeberCaseId::DiagRecessivePlus);
    for dir in [Direction::Plus, Direction::Minus] {
        ratio_check(lambda, r1, r2, WeberSector::Diagonal, dir);
    }
}

#[test]
fn degenerate_lattice_polynomials() {
    // λ = 1 + 4n: Gaussian × even polynomial, exact at any radius.
    for n in 0..2u32 {
        let lambda = c(1.0 + 4.0 * n as f64, 0.0);
        let case = weber_combo_leading(
            lambda,
            c(1.0, 0.0),
            c(0.0, 0.0),
            WeberSector::RealAxis,
            Direction::Plus,
        )
        .unwrap();
        assert_eq!(case.case_id, WeberCaseId::RealPolyEven);
        assert_eq!(case.polynomial_degree, Some(2 * n));
        // The leading monomial already matches the true combination to
        // O(z^{−2}) relative; compare against the series at moderate z.
        let z = c(2.5, 0.0);
        let (w1, _) = weber_w(lambda, z).unwrap();
        let led = weber_case_value(&case, z).unwrap();
        let rel = ((w1 - led) / w1).norm();
        assert!(rel <= 0.2, "n = {n}: rel = {rel}");
    }
    // λ = 3 + 4n: odd polynomial from pure w₂.
    let lambda = c(3.0, 0.0);
    let case = weber_combo_leading(
        lambda,
        c(0.0, 0.0),
        c(1.0, 0.0),
        WeberSector::RealAxis,
        Direction::Plus,
    )
    .unwrap();
    assert_eq!(case.case_id, WeberCaseId::RealPolyOdd);
    assert_eq!(case.polynomial_degree, Some(1));
    // w₂ = z e^{−z²/2} exactly at λ = 3; the degree-1 leading form is exact.
    let z = c(1.7, 0.4);
    let (_, w2) = weber_w(lambda, z).unwrap();
    let led = weber_case_value(&case, z).unwrap();
    assert!((w2 - led).norm() <= 1e-9 * w2.norm());
}

#[test]
fn hermite_weber_equation_residual_cloud() {
    // w″ − (z² − λ)w = 0 via termwise-differentiated series, 100 random λ,
    // |z| ≤ 3.
    let mut rng = StdRng::seed_from_u64(0x208);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let lambda = 4.0 * unit_disc(&mut rng);
        let z = 3.0 * unit_disc(&mut rng);
        let (w1, w2) = weber_w(lambda, z).unwrap();
        let (w1pp, w2pp) = weber_w_second(lambda, z).unwrap();
        let factor = z * z - lambda;
        worst = worst.max((w1pp - factor * w1).norm() / (1.0 + w1pp.norm()));
        worst = worst.max((w2pp - factor * w2).norm() / (1.0 + w2pp.norm()));
    }
    assert!(worst <= 1e-8, "worst equation residual {worst:.3e}");
}
