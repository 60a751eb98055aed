//! The function `Θ(p; z)`: the Gamma-weighted combination of Kummer functions
//! that is recessive (`Θ ~ z^{−2p}`) in the right half-plane.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::{gamma, pochhammer, recip_gamma};
use super::phi::{phi_stable, phi_via_integral};
use super::AsymptoticEval;
use crate::branchcut::{arg_principal, cpow};
use crate::quadrature::integrate_power_exp;
use crate::{c64, Error, Result};

/// Largest `Re(z²)` for which the defining `Φ`-combination is evaluated
/// directly; beyond it the recessive value drowns in the `e^{Re z²}`-sized
/// summands and the integral representation takes over.
const COMBINATION_CANCEL_LIMIT: f64 = 6.0;

/// `Θ(p; z) = √π { Φ(p, 1/2; z²)/Γ(p + 1/2) − 2z Φ(p + 1/2, 3/2; z²)/Γ(p) }`.
///
/// Entire in both `p` and `z`; the `1/Γ` weights are evaluated through the
/// entire reciprocal so nonpositive-integer parameters degenerate cleanly to
/// polynomials.
///
/// The series combination loses `e^{E}` digits where `E` is the partial-sum
/// overhang: `|z²|` in the right wedge with `Re z > 0` (the pieces are
/// `e^{Re z²}`-sized and the recessive value cancels them), and
/// `|z²| − |Re z²|` elsewhere. `Θ`'s own integral representation takes over
/// throughout the open right half-plane; elsewhere the `Φ` pieces reroute
/// through their finite-interval integral representation on their own.
pub fn theta(p: Complex64, z: Complex64) -> Result<Complex64> {
    let z2 = z * z;
    let overhang = if z.re > 0.0 && z2.re > 0.0 {
        z2.norm()
    } else {
        z2.norm() - z2.re.abs()
    };
    if z.re > 0.0 && overhang > COMBINATION_CANCEL_LIMIT {
        return theta_integral(p, z);
    }
    // The Γ-weights amplify absolute errors by up to e^{π|Im p|}, so the
    // combination is held to a tighter overhang than generic Φ use; beyond it
    // the Φ pieces go through their finite-interval integral representation.
    let (phi_a, phi_b) = if overhang > COMBINATION_CANCEL_LIMIT {
        (
            phi_via_integral(p, c64(0.5, 0.0), z2)?,
            phi_via_integral(p + 0.5, c64(1.5, 0.0), z2)?,
        )
    } else {
        (
            phi_stable(p, c64(0.5, 0.0), z2)?,
            phi_stable(p + 0.5, c64(1.5, 0.0), z2)?,
        )
    };
    let a = phi_a * recip_gamma(p + 0.5);
    let b = phi_b * recip_gamma(p);
    Ok(PI.sqrt() * (a - 2.0 * z * b))
}

/// Pick the rotation `θ ∈ {0, ±π/2}` whose sector `|Arg z + θ/2| < π/4`
/// contains `z`, preferring the one with the fastest integrand decay.
fn rotation_for(z: Complex64) -> Result<f64> {
    let arg = arg_principal(z)?;
    if arg.abs() >= std::f64::consts::FRAC_PI_2 {
        return Err(Error::Domain(format!(
            "integral representation needs |Arg z| < π/2, got {arg}"
        )));
    }
    if arg.abs() < std::f64::consts::FRAC_PI_8 {
        Ok(0.0)
    } else if arg > 0.0 {
        Ok(-std::f64::consts::FRAC_PI_2)
    } else {
        Ok(std::f64::consts::FRAC_PI_2)
    }
}

/// `Θ(p; z)` from the integral representation
/// `Θ(p; z) = (e^{ipθ}/Γ(p)) ∫_0^∞ t^{p−1} (1 + e^{iθ}t)^{−(p+1/2)}
/// e^{−e^{iθ} z² t} dt`, valid for `|Arg z + θ/2| < π/4`. Parameters with
/// `Re p ≤ 1/4` are lifted through the three-term recurrence first.
pub fn theta_integral(p: Complex64, z: Complex64) -> Result<Complex64> {
    if p.re <= 0.25 {
        // Θ(p) = (2p + 3/2 + z²) Θ(p+1) − (p+1)(p+3/2) Θ(p+2)
        let a = theta_integral(p + 1.0, z)?;
        let b = theta_integral(p + 2.0, z)?;
        return Ok((2.0 * p + 1.5 + z * z) * a - (p + 1.0) * (p + 1.5) * b);
    }
    let th = rotation_for(z)?;
    let rot = c64(0.0, th).exp();
    let s = rot * z * z;
    let expo = -(p + 0.5);
    let value = integrate_power_exp(p, s, &mut |t| (1.0 + rot * t).powc(expo), 1e-13, 1e-20)?;
    Ok((c64(0.0, 1.0) * p * th).exp() / gamma(p)? * value)
}

/// `dΘ/dz` from the differentiated integral representation, with the same
/// recurrence lifting.
pub fn theta_prime_integral(p: Complex64, z: Complex64) -> Result<Complex64> {
    if p.re <= 0.25 {
        // Θ′(p) = 2z Θ(p+1) + (2p + 3/2 + z²) Θ′(p+1) − (p+1)(p+3/2) Θ′(p+2)
        let a = theta_integral(p + 1.0, z)?;
        let ap = theta_prime_integral(p + 1.0, z)?;
        let bp = theta_prime_integral(p + 2.0, z)?;
        return Ok(2.0 * z * a + (2.0 * p + 1.5 + z * z) * ap - (p + 1.0) * (p + 1.5) * bp);
    }
    let th = rotation_for(z)?;
    let rot = c64(0.0, th).exp();
    let s = rot * z * z;
    let expo = -(p + 0.5);
    // d/dz e^{−e^{iθ} z² t} = −2 e^{iθ} z t e^{−e^{iθ} z² t}: absorb one power
    // of t by shifting p → p + 1.
    let value =
        integrate_power_exp(p + 1.0, s, &mut |t| (1.0 + rot * t).powc(expo), 1e-13, 1e-20)?;
    Ok(-2.0 * rot * z * (c64(0.0, 1.0) * p * th).exp() / gamma(p)? * value)
}

/// Truncated asymptotic expansion
/// `Θ(p; z) ≈ z^{−2p} Σ_{k≤N} (−1)^k (p)_k (p + 1/2)_k z^{−2k} / k!`,
/// valid for `|Arg z| ≤ π/2 − ε`.
pub fn theta_asym(p: Complex64, z: Complex64, n: usize, eps: f64) -> Result<AsymptoticEval> {
    let sector_ok = arg_principal(z)?.abs() <= std::f64::consts::FRAC_PI_2 - eps;
    let prefactor = cpow(z, -2.0 * p)?;
    let z2inv = 1.0 / (z * z);
    let mut sum = c64(0.0, 0.0);
    let mut kfact = 1.0;
    for k in 0..=n as u32 {
        if k > 0 {
            kfact *= k as f64;
        }
        let term = pochhammer(p, k) * pochhammer(p + 0.5, k) / kfact;
        let mut zk = c64(1.0, 0.0);
        for _ in 0..k {
            zk *= -z2inv;
        }
        sum += term * zk;
    }
    let k1 = n as u32 + 1;
    let next = pochhammer(p, k1) * pochhammer(p + 0.5, k1) / (kfact * k1 as f64);
    let mut zk1 = c64(1.0, 0.0);
    for _ in 0..k1 {
        zk1 *= z2inv;
    }
    Ok(AsymptoticEval {
        value: prefactor * sum,
        terms_used: n,
        sector_ok,
        est_remainder: (prefactor * next * zk1).norm(),
        degenerate: false,
    })
}

/// Scaled residual of the three-term recurrence
/// `Θ(p; z) = (2p + 3/2 + z²) Θ(p+1; z) − (p+1)(p+3/2) Θ(p+2; z)`.
pub fn theta_recurrence_residual(p: Complex64, z: Complex64) -> Result<f64> {
    let lhs = theta(p, z)?;
    let rhs = (2.0 * p + 1.5 + z * z) * theta(p + 1.0, z)?
        - (p + 1.0) * (p + 1.5) * theta(p + 2.0, z)?;
    Ok((lhs - rhs).norm() / (1.0 + lhs.norm()))
}

/// Closed polynomial form of `Θ(−n; z)` (degree `2n`).
pub fn theta_poly_int(n: u32, z: Complex64) -> Complex64 {
    let mut sum = c64(0.0, 0.0);
    let mut kfact = 1.0;
    for k in 0..=n {
        if k > 0 {
            kfact *= k as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let coeff = sign / kfact
            * pochhammer(c64(-(n as f64), 0.0), k)
            * pochhammer(c64(0.5 - n as f64, 0.0), k);
        let mut zp = c64(1.0, 0.0);
        for _ in 0..(2 * n - 2 * k) {
            zp *= z;
        }
        sum += coeff * zp;
    }
    sum
}

/// Closed polynomial form of `Θ(−1/2 − n; z)` (degree `2n + 1`).
pub fn theta_poly_half(n: u32, z: Complex64) -> Complex64 {
    let mut sum = c64(0.0, 0.0);
    let mut kfact = 1.0;
    for k in 0..=n {
        if k > 0 {
            kfact *= k as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let coeff = sign / kfact
            * pochhammer(c64(-(n as f64), 0.0), k)
            * pochhammer(c64(-0.5 - n as f64, 0.0), k);
        let mut zp = c64(1.0, 0.0);
        for _ in 0..(2 * n + 1 - 2 * k) {
            zp *= z;
        }
        sum += coeff * zp;
    }
    sum
}
