//! Principal-branch conventions: the argument `Arg z ∈ (−π, π]`, the sign
//! corrector `σ(z) ∈ {±1}` with `Arg(−z) = Arg z + σ(z)π`, and the principal
//! power `z^λ = exp(λ log|z| + iλ Arg z)`.
//!
//! The argument uses the half-angle arctangent form rather than a
//! two-argument arctangent, so the closure of `(−π, π]` on the negative real
//! axis agrees exactly with `σ`. Inputs with `|Im z| ≤ 1e−300` are treated as
//! exactly real so that subnormal noise cannot flip `σ`.

use num_complex::Complex64;

use crate::{Error, Result};

/// Imaginary parts at or below this magnitude are collapsed to zero before
/// branch decisions.
pub const IM_AXIS_TOL: f64 = 1e-300;

/// Principal argument of a nonzero complex number, in `(−π, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrincipalArg {
    value: f64,
}

impl PrincipalArg {
    pub fn new(z: Complex64) -> Result<Self> {
        arg_principal(z).map(|value| Self { value })
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.value
    }
}

#[inline]
fn clean(z: Complex64) -> Complex64 {
    if z.im.abs() <= IM_AXIS_TOL {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}

/// Principal branch of the argument:
/// `2 arctan(Im z / (Re z + |z|))` when `Im z ≠ 0` or `Re z > 0`, and `π` on
/// the negative real axis.
///
/// In the left half-plane the denominator `Re z + |z|` cancels; the
/// algebraically identical form `(|z| − Re z)/Im z` of the same half-angle
/// tangent is used there, keeping the reflection identity tight near the cut.
pub fn arg_principal(z: Complex64) -> Result<f64> {
    let z = clean(z);
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::Domain("Arg(0) is undefined".into()));
    }
    if z.im == 0.0 {
        return Ok(if z.re > 0.0 { 0.0 } else { std::f64::consts::PI });
    }
    let half_tangent = if z.re >= 0.0 {
        z.im / (z.re + z.norm())
    } else {
        (z.norm() - z.re) / z.im
    };
    Ok(2.0 * half_tangent.atan())
}

/// Sign corrector: `+1` when `Arg z ≤ 0`, `−1` when `Arg z > 0`, so that
/// `Arg(−z) = Arg z + σ(z)π` holds exactly.
pub fn sigma(z: Complex64) -> Result<i32> {
    let a = arg_principal(z)?;
    Ok(if a <= 0.0 { 1 } else { -1 })
}

/// Principal power `z^λ = exp(λ log|z| + iλ Arg z)`.
///
/// `0^λ` is `0` for `Re λ > 0` and a domain error otherwise. For real `p`
/// with `|p| < 1` the identity `Arg(z^p) = p Arg z` holds, and consequently
/// `(z^p)^λ = z^{λp}`.
pub fn cpow(z: Complex64, lambda: Complex64) -> Result<Complex64> {
    let z = clean(z);
    if z.re == 0.0 && z.im == 0.0 {
        if lambda.re > 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        return Err(Error::Domain("0^λ with Re λ ≤ 0".into()));
    }
    if lambda.im == 0.0 && lambda.re == 1.0 {
        return Ok(z);
    }
    let log_z = Complex64::new(z.norm().ln(), arg_principal(z)?);
    Ok((lambda * log_z).exp())
}

/// Real power of a real base through the same principal branch.
#[inline]
pub fn cpow_real(x: f64, p: f64) -> Result<Complex64> {
    cpow(Complex64::new(x, 0.0), Complex64::new(p, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use std::f64::consts::PI;

    #[test]
    fn arg_on_axes() {
        assert_eq!(arg_principal(c64(-4.0, 0.0)).unwrap(), PI);
        assert!((arg_principal(c64(0.0, 1.0)).unwrap() - PI / 2.0).abs() < 1e-15);
        assert_eq!(arg_principal(c64(1.0, 0.0)).unwrap(), 0.0);
        assert!(arg_principal(c64(0.0, 0.0)).is_err());
    }

    #[test]
    fn arg_reconstructs_input() {
        let zs = [
            c64(3.0, 4.0),
            c64(-2.0, 0.5),
            c64(-2.0, -0.5),
            c64(0.0, -7.0),
            c64(1e-8, -1.0),
        ];
        for &z in &zs {
            let a = arg_principal(z).unwrap();
            let back = c64(z.norm() * a.cos(), z.norm() * a.sin());
            assert!((back - z).norm() <= 1e-14 * z.norm(), "z = {z}");
        }
    }

    #[test]
    fn sigma_cases() {
        assert_eq!(sigma(c64(4.0, 0.0)).unwrap(), 1);
        assert_eq!(sigma(c64(-4.0, 0.0)).unwrap(), -1);
        assert_eq!(sigma(c64(0.0, -1.0)).unwrap(), 1);
        assert_eq!(sigma(c64(0.0, 1.0)).unwrap(), -1);
    }

    #[test]
    fn sigma_reflection_identity() {
        let zs = [
            c64(2.0, 3.0),
            c64(-2.0, 3.0),
            c64(-2.0, -3.0),
            c64(2.0, -3.0),
            c64(5.0, 0.0),
            c64(-5.0, 0.0),
            c64(0.0, 2.0),
            c64(0.0, -2.0),
        ];
        for &z in &zs {
            let lhs = arg_principal(-z).unwrap();
            let rhs = arg_principal(z).unwrap() + sigma(z).unwrap() as f64 * PI;
            assert!((lhs - rhs).abs() <= 1e-14, "z = {z}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn cpow_values() {
        // (−4)^{1/2} = 2i, (−4)^{−3/2} = i/8.
        let r = cpow(c64(-4.0, 0.0), c64(0.5, 0.0)).unwrap();
        assert!((r - c64(0.0, 2.0)).norm() < 1e-14);
        let r = cpow(c64(-4.0, 0.0), c64(-1.5, 0.0)).unwrap();
        assert!((r - c64(0.0, 0.125)).norm() < 1e-15);
        let z = c64(1.3, -0.7);
        assert_eq!(cpow(z, c64(1.0, 0.0)).unwrap(), z);
        assert_eq!(cpow(c64(0.0, 0.0), c64(2.0, 0.5)).unwrap(), c64(0.0, 0.0));
        assert!(cpow(c64(0.0, 0.0), c64(-1.0, 0.0)).is_err());
    }

    #[test]
    fn negative_x_half_powers() {
        // For x < 0: x^{1/2} = i|x|^{1/2} and x^{3/2} = −i|x|^{3/2}.
        let x = -2.3_f64;
        let h = cpow_real(x, 0.5).unwrap();
        assert!((h - c64(0.0, x.abs().sqrt())).norm() < 1e-14);
        let t = cpow_real(x, 1.5).unwrap();
        assert!((t - c64(0.0, -x.abs().powf(1.5))).norm() < 1e-13);
    }
}
