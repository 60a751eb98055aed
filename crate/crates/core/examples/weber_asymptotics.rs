//! Hermite–Weber fundamental solutions: Wronskian, the Θ-combination
//! identities, and the leading-form case table for c₁w₁ + c₂w₂.
//!
//! Run with `cargo run --example weber_asymptotics`.

use num_complex::Complex64;
use twistreg::weber::{
    recessive_plus_coefficients, weber_case_value, weber_combo_leading, weber_combo_stable,
    weber_theta_identity_residual, weber_w, weber_wronskian, Direction, ThetaIdentity,
    WeberSector,
};

fn main() {
    let c = Complex64::new;
    let lambda = c(0.0, 1.0);

    let z = c(1.3, -0.4);
    let (w1, w2) = weber_w(lambda, z).unwrap();
    println!("w₁({z}) = {w1}");
    println!("w₂({z}) = {w2}");
    println!("Wronskian − 1 = {:.3e}", (weber_wronskian(lambda, z).unwrap() - c(1.0, 0.0)).norm());

    for which in [
        ThetaIdentity::Recessive803,
        ThetaIdentity::Dominant804,
        ThetaIdentity::W1From788,
        ThetaIdentity::W2From789,
    ] {
        let r = weber_theta_identity_residual(lambda, z, which).unwrap();
        println!("identity {which:?}: residual {r:.3e}");
    }

    // Case matching: the Γ-tuned recessive combination against the generic one.
    let (c1, c2) = recessive_plus_coefficients(lambda, c(1.0, 0.0));
    let case = weber_combo_leading(lambda, c1, c2, WeberSector::RealAxis, Direction::Plus).unwrap();
    println!(
        "tuned pair matches {:?}: e^{{{:+}z²}} · z^{}  with prefactor {}",
        case.case_id, case.exp_sign, case.power, case.prefactor
    );

    // Finite-radius ratio against the leading form (1 + O(1/R) contract).
    for r in [8.0_f64, 16.0] {
        let z = c(r, 0.0);
        let (exact, _) = weber_combo_stable(lambda, c1, c2, z).unwrap();
        let predicted = weber_case_value(&case, z).unwrap();
        println!(
            "R = {r}: |combination / leading form| = {:.4}",
            (exact / predicted).norm()
        );
    }

    let generic = weber_combo_leading(
        lambda,
        c(1.0, 0.0),
        c(0.0, 0.0),
        WeberSector::RealAxis,
        Direction::Plus,
    )
    .unwrap();
    println!(
        "pure w₁ matches {:?}: growing branch with power {}",
        generic.case_id, generic.power
    );
}
