//! The full (Kohn–Nirenberg) symbol of a twisted operator, constant along a
//! two-dimensional plane — which is why twisted operators are never globally
//! hypo-elliptic.

use num_complex::Complex64;

use super::{CoeffTable, TwistedFrame};
use crate::{c64, Result};

fn binom(n: u32, k: u32) -> f64 {
    let mut acc = 1.0;
    for j in 0..k {
        acc = acc * (n - j) as f64 / (j + 1) as f64;
    }
    acc
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Symbol of the twisted operator at `(x, y; ξ, η)`:
/// `Σ_{j+k≤2} (−1)^{j+k} a_kj Σ_{n≤min(j,k)} (iαδ)^n C(j,n) C(k,n) n!
/// (αη−βx)^{j−n} (γξ−δy)^{k−n}`.
pub fn twisted_symbol(
    table: &CoeffTable,
    frame: &TwistedFrame,
    x: f64,
    y: f64,
    xi: f64,
    eta: f64,
) -> Result<Complex64> {
    frame.validate()?;
    let u = frame.alpha * eta - frame.beta * x;
    let v = frame.gamma * xi - frame.delta * y;
    let iad = c64(0.0, frame.alpha * frame.delta);
    let coeffs: [(u32, u32, Complex64); 6] = [
        (2, 0, table.a20),
        (1, 1, table.a11),
        (0, 2, table.a02),
        (1, 0, table.a10),
        (0, 1, table.a01),
        (0, 0, table.a00),
    ];
    let mut total = c64(0.0, 0.0);
    for &(k, j, a) in &coeffs {
        if a.norm() == 0.0 {
            continue;
        }
        let sign = if (j + k) % 2 == 0 { 1.0 } else { -1.0 };
        let mut inner = c64(0.0, 0.0);
        for n in 0..=j.min(k) {
            let mut term = c64(1.0, 0.0);
            for _ in 0..n {
                term *= iad;
            }
            term *= binom(j, n) * binom(k, n) * factorial(n);
            term *= u.powi((j - n) as i32) * v.powi((k - n) as i32);
            inner += term;
        }
        total += sign * a * inner;
    }
    Ok(total)
}

/// A point of the plane `{αη = βx, γξ = δy}` parametrized by `(s, t)`:
/// `(x, y, ξ, η) = (αs, γt, δt, βs)`.
pub fn plane_point(frame: &TwistedFrame, s: f64, t: f64) -> (f64, f64, f64, f64) {
    (
        frame.alpha * s,
        frame.gamma * t,
        frame.delta * t,
        frame.beta * s,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::CoeffTable;

    #[test]
    fn twisted_laplacian_vanishes_on_plane() {
        let frame = TwistedFrame::twisted_laplacian();
        let table = CoeffTable::harmonic_oscillator(c64(0.0, 0.0));
        for &(s, t) in &[(0.0, 0.0), (1.3, -0.7), (-2.0, 4.0)] {
            let (x, y, xi, eta) = plane_point(&frame, s, t);
            let v = twisted_symbol(&table, &frame, x, y, xi, eta).unwrap();
            assert!(v.norm() < 1e-12, "(s, t) = ({s}, {t}): {v}");
        }
    }

    #[test]
    fn twisted_laplacian_off_plane() {
        // (x, y, ξ, η) = (0, 0, 1, 0) with the standard frame: (γξ)² = 1.
        let frame = TwistedFrame::twisted_laplacian();
        let table = CoeffTable::harmonic_oscillator(c64(0.0, 0.0));
        let v = twisted_symbol(&table, &frame, 0.0, 0.0, 1.0, 0.0).unwrap();
        assert!((v - c64(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn mixed_term_constant_on_plane() {
        // Pure a11 term: only the n = j = k = 1 contribution survives on the
        // plane, giving the constant iαδ.
        let frame = TwistedFrame::new(2.0, 1.0, 1.0, 1.0).unwrap();
        let table = CoeffTable::new(
            c64(0.0, 0.0),
            c64(1.0, 0.0),
            c64(0.0, 0.0),
            c64(0.0, 0.0),
            c64(0.0, 0.0),
            c64(0.0, 0.0),
        );
        let (x, y, xi, eta) = plane_point(&frame, 0.9, -1.4);
        let v = twisted_symbol(&table, &frame, x, y, xi, eta).unwrap();
        let expect = c64(0.0, frame.alpha * frame.delta);
        assert!((v - expect).norm() < 1e-13, "{v} vs {expect}");
    }
}
