//! The intertwining transform on a grid: round-trip through the inverse and
//! the operator identities 𝒯[M_x] = −αD_y + βM_x, 𝒯[D_x] = −γD_x + δM_y.
//!
//! Run with `cargo run --release --example transform_roundtrip`.

use num_complex::Complex64;
use twistreg::operators::TwistedFrame;
use twistreg::verify::{intertwine_dx_check, intertwine_mx_check, transform_roundtrip_check};

fn main() {
    let c = Complex64::new;
    let frame = TwistedFrame::twisted_laplacian();
    let gaussian = |x: f64, y: f64| c((-0.5 * (x * x + y * y)).exp(), 0.0);
    let dx_gaussian = |x: f64, y: f64| c(0.0, 1.0) * x * gaussian(x, y);

    let rt = transform_roundtrip_check("gaussian", &gaussian, &frame, 10.0, 256).unwrap();
    println!("round-trip 𝒯⁻¹𝒯 relative L² error: {:.3e}", rt.residual);

    let mx = intertwine_mx_check("gaussian", &gaussian, &frame, 10.0, 256).unwrap();
    println!("𝒯(x·u) vs (−αD_y + βM_x)𝒯u:       {:.3e}", mx.residual);

    let dx = intertwine_dx_check("gaussian", &gaussian, &dx_gaussian, &frame, 10.0, 256).unwrap();
    println!("𝒯(D_x u) vs (−γD_x + δM_y)𝒯u:      {:.3e}", dx.residual);

    assert!(rt.passed && mx.passed && dx.passed);
}
