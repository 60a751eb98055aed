//! The special-function engine: Kummer Φ, the recessive combination Θ, and
//! Airy Ai/Bi, each through its series route and its sector-restricted
//! asymptotic route.
//!
//! Run with `cargo run --example special_functions`.

use num_complex::Complex64;
use twistreg::specfun::{
    airy_ai, airy_asym, airy_bi, gamma, phi_asym, phi_series, theta, theta_asym, AiryKind,
    AirySector,
};

fn main() {
    let c = Complex64::new;

    println!("Γ(1/2)        = {}", gamma(c(0.5, 0.0)).unwrap());
    println!("Φ(1, 2; 1)    = {}  (= e − 1)", phi_series(c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)).unwrap());
    println!("Θ(0; 3+i)     = {}  (≡ 1)", theta(c(0.0, 0.0), c(3.0, 1.0)).unwrap());
    println!("Θ(−1/2; 2−i)  = {}  (≡ z)", theta(c(-0.5, 0.0), c(2.0, -1.0)).unwrap());
    println!("Ai(0)         = {}", airy_ai(c(0.0, 0.0)));
    println!("Bi(1)         = {}", airy_bi(c(1.0, 0.0)));

    // Series vs asymptotics at an overlap radius.
    let p = c(0.25, 0.0);
    let q = c(0.5, 0.0);
    let z = c(20.0, 0.0);
    let series = phi_series(p, q, z).unwrap();
    let asym = phi_asym(p, q, z, 6, 0.1).unwrap();
    println!(
        "Φ(1/4, 1/2; 20): series {series:.6e}, N = 6 asymptotics {:.6e} \
         (rel diff {:.2e}, estimated remainder {:.2e})",
        asym.value,
        (asym.value - series).norm() / series.norm(),
        asym.est_remainder / series.norm(),
    );

    let t_exact = theta(p, c(12.0, 0.0)).unwrap();
    let t_asym = theta_asym(p, c(12.0, 0.0), 3, 0.1).unwrap();
    println!(
        "Θ(1/4; 12): evaluation {t_exact:.6e}, N = 3 asymptotics {:.6e} (rel {:.2e})",
        t_asym.value,
        (t_asym.value - t_exact).norm() / t_exact.norm()
    );

    // Leading Airy forms in both sectors.
    let right = airy_asym(AiryKind::Ai, c(9.0, 0.0), AirySector::Right, 0.1).unwrap();
    println!(
        "Ai(9): exact {:.6e}, leading right-sector form {:.6e}",
        airy_ai(c(9.0, 0.0)),
        right.value
    );
    let left = airy_asym(AiryKind::Ai, c(-9.0, 0.0), AirySector::Left, 0.1).unwrap();
    println!(
        "Ai(−9): exact {:.6e}, leading left-sector form {:.6e}",
        airy_ai(c(-9.0, 0.0)),
        left.value
    );
    // Outside the Bi right sector the asymptotic route refuses.
    assert!(airy_asym(AiryKind::Bi, c(-5.0, 0.1), AirySector::Right, 0.1).is_err());
}
