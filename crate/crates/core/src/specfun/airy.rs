//! Airy functions `Ai`, `Bi` on the whole complex plane, plus the
//! sector-restricted leading asymptotic forms used by the solution-asymptotics
//! machinery.
//!
//! The power series alone cannot cover the plane in doubles: its partial sums
//! reach `e^{(2/3)|z|^{3/2}}` while `Ai` decays like `e^{−(2/3)z^{3/2}}`, so
//! towards the recessive direction the rounding floor is `ε·e^{(4/3)|z|^{3/2}}`.
//! Evaluation therefore switches between three routes: the series where its
//! cancellation exponent is small, a non-oscillatory integral representation
//! in the recessive sector, and the full large-`|z|` expansions elsewhere.
//! `Bi` in the recessive sector goes through the connection formula
//! `Bi(z) = e^{iπ/6} Ai(z e^{2πi/3}) + e^{−iπ/6} Ai(z e^{−2πi/3})`.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{AsymptoticEval, SERIES_MAX_TERMS, SERIES_TOL};
use crate::branchcut::{arg_principal, cpow};
use crate::quadrature::{cauchy_derivative, integrate_power_exp};
use crate::{c64, Error, Result};

/// Which Airy function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AiryKind {
    Ai,
    Bi,
}

/// Which asymptotic regime: `Right` uses powers of `z`, `Left` powers of `−z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AirySector {
    Right,
    Left,
}

// 3^{-2/3} / Γ(2/3) and 3^{-4/3} / Γ(4/3).
const F0: f64 = 0.355_028_053_887_817_2;
const H0: f64 = 0.258_819_403_792_806_8;
// 1 / (√π 48^{1/6} Γ(5/6)), the prefactor of the integral representation.
const GST_NORM: f64 = 0.26218399708832325;
// Largest series cancellation exponent |ζ| + Re ζ accepted for the series.
const SERIES_COND_LIMIT: f64 = 12.0;
// |ζ| beyond which the full asymptotic expansions reach ~1e−12.
const ASYM_ZETA_MIN: f64 = 14.0;

struct AirySums {
    s0: Complex64, // Σ z^{3k} / (3^{2k+2/3} k! Γ(k+2/3))
    s1: Complex64, // Σ z^{3k} / (3^{2k+4/3} k! Γ(k+4/3))
    d0: Complex64, // d/dz of the first sum
    d1: Complex64, // d/dz of (z · second sum)
}

fn airy_sums(z: Complex64) -> AirySums {
    let z3 = z * z * z;
    let mut f = c64(F0, 0.0);
    let mut h = c64(H0, 0.0);
    let mut s0 = f;
    let mut s1 = h;
    let mut fd = c64(0.0, 0.0);
    let mut d0 = c64(0.0, 0.0);
    let mut d1 = h; // (3·0 + 1) h_0
    for k in 0..SERIES_MAX_TERMS {
        let kf = k as f64;
        let f_next = f * z3 / (9.0 * (kf + 1.0) * (kf + 2.0 / 3.0));
        let h_next = h * z3 / (9.0 * (kf + 1.0) * (kf + 4.0 / 3.0));
        // fd_{k+1} = 3(k+1) z^{3k+2} / (3^{2k+2+2/3} (k+1)! Γ(k+1+2/3))
        fd = if k == 0 {
            z * z / (3.0_f64.powf(5.0 / 3.0) * GAMMA_53)
        } else {
            fd * z3 / (9.0 * kf * (kf + 2.0 / 3.0))
        };
        let gd_next = h_next * (3.0 * (kf + 1.0) + 1.0);
        s0 += f_next;
        s1 += h_next;
        d0 += fd;
        d1 += gd_next;
        let small = |t: Complex64, s: Complex64| t.norm() <= SERIES_TOL * (1.0 + s.norm());
        f = f_next;
        h = h_next;
        if small(f, s0) && small(h, s1) && small(fd, d0) && small(gd_next, d1) {
            break;
        }
    }
    AirySums { s0, s1, d0, d1 }
}

// Γ(5/3) = (2/3) Γ(2/3)
const GAMMA_53: f64 = 0.902_745_292_950_933_6;

fn zeta_of(z: Complex64) -> Complex64 {
    // (2/3) z^{3/2}; z = 0 maps to 0.
    if z.norm() == 0.0 {
        c64(0.0, 0.0)
    } else {
        2.0 / 3.0 * cpow(z, c64(1.5, 0.0)).expect("z != 0")
    }
}

/// Series cancellation exponent `|ζ| + Re ζ`; `ε · e^{cond}` bounds the
/// relative accuracy the power series can reach at `z`.
fn series_cond(z: Complex64) -> f64 {
    let zeta = zeta_of(z);
    zeta.norm() + zeta.re
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Route {
    Series,
    /// Integral representation; recessive sector with moderate `|ζ|`.
    GstQuad,
    /// One-component expansion `e^{−ζ} Σ (−1)^k u_k ζ^{−k}`; the only
    /// component `Ai` has before the Stokes line `|Arg z| = 2π/3`.
    SingleExp,
    /// Two-component oscillatory form, past the Stokes line. Using it below
    /// `2π/3` would inject a spurious second exponential of relative size
    /// `e^{2 Re ζ}` — order one near the anti-Stokes ray `|Arg z| = π/3`.
    Compound,
}

fn route_for(z: Complex64) -> Route {
    if series_cond(z) <= SERIES_COND_LIMIT {
        return Route::Series;
    }
    let zeta = zeta_of(z);
    let arg = z.arg().abs();
    if arg >= 2.0 * PI / 3.0 {
        return Route::Compound;
    }
    if zeta.norm() >= ASYM_ZETA_MIN {
        Route::SingleExp
    } else if zeta.re > 0.0 {
        Route::GstQuad
    } else {
        // cond ≤ |ζ| < 14 here, so the series is still usable (its rounding
        // floor is ε e^{cond} ≈ 1e−9 at worst).
        Route::Series
    }
}

// u_k coefficients of the standard expansions: u_0 = 1,
// u_{k+1} = u_k (6k+1)(6k+5) / (72(k+1)); v_k = u_k (6k+1)/(1−6k).
fn asym_sum_u(zeta: Complex64, alternating: bool) -> Complex64 {
    let zinv = 1.0 / zeta;
    let sign = if alternating { -1.0 } else { 1.0 };
    let mut u = c64(1.0, 0.0);
    let mut sum = u;
    let mut last = f64::INFINITY;
    for k in 0..60u32 {
        let kf = k as f64;
        u = u * (6.0 * kf + 1.0) * (6.0 * kf + 5.0) / (72.0 * (kf + 1.0)) * sign * zinv;
        if u.norm() >= last {
            break;
        }
        last = u.norm();
        sum += u;
        if u.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

fn asym_sum_v(zeta: Complex64, alternating: bool) -> Complex64 {
    let zinv = 1.0 / zeta;
    let sign = if alternating { -1.0 } else { 1.0 };
    let mut u = c64(1.0, 0.0);
    let mut sum = u; // v_0 = 1
    let mut last = f64::INFINITY;
    let mut pow = c64(1.0, 0.0);
    for k in 0..60u32 {
        let kf = k as f64;
        u = u * (6.0 * kf + 1.0) * (6.0 * kf + 5.0) / (72.0 * (kf + 1.0));
        pow = pow * sign * zinv;
        let v = u * (6.0 * (kf + 1.0) + 1.0) / (1.0 - 6.0 * (kf + 1.0));
        let term = v * pow;
        if term.norm() >= last {
            break;
        }
        last = term.norm();
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

// P/Q split of the u (resp. v) series used by the oscillatory-zone forms.
fn asym_pq(xi: Complex64, use_v: bool) -> (Complex64, Complex64) {
    let x2 = 1.0 / (xi * xi);
    let mut p = c64(1.0, 0.0);
    let mut q = c64(0.0, 0.0);
    let mut pow = c64(1.0, 0.0); // ξ^{−2⌊k/2⌋} with alternating sign folded in
    let mut last = f64::INFINITY;
    let mut u = c64(1.0, 0.0);
    for k in 1..60u32 {
        let kf = (k - 1) as f64;
        u = u * (6.0 * kf + 1.0) * (6.0 * kf + 5.0) / (72.0 * (kf + 1.0));
        let coef = if use_v {
            u * (6.0 * k as f64 + 1.0) / (1.0 - 6.0 * k as f64)
        } else {
            u
        };
        let term = if k % 2 == 1 {
            // odd index: contributes to Q with sign (−1)^{(k−1)/2}
            let s = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            s * coef * pow / xi
        } else {
            pow *= x2;
            let s = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            s * coef * pow
        };
        if term.norm() >= last {
            break;
        }
        last = term.norm();
        if k % 2 == 1 {
            q += term;
        } else {
            p += term;
        }
        if term.norm() <= 1e-17 * (p.norm() + q.norm()) {
            break;
        }
    }
    (p, q)
}

fn gst_ai(z: Complex64) -> Result<Complex64> {
    // Ai(z) = a(s) ∫_0^∞ t^{−1/6} (2 + t/s)^{−1/6} e^{−t} dt,
    // a(s) = s^{−1/6} e^{−s} / (√π 48^{1/6} Γ(5/6)), s = (2/3) z^{3/2};
    // non-oscillatory for Re s > 0.
    let s = zeta_of(z);
    let integral = integrate_power_exp(
        c64(5.0 / 6.0, 0.0),
        c64(1.0, 0.0),
        &mut |t| (2.0 + t / s).powc(c64(-1.0 / 6.0, 0.0)),
        1e-13,
        1e-18,
    )?;
    Ok(GST_NORM * cpow(s, c64(-1.0 / 6.0, 0.0))? * (-s).exp() * integral)
}

fn ai_value(z: Complex64) -> Result<Complex64> {
    match route_for(z) {
        Route::Series => {
            let s = airy_sums(z);
            Ok(s.s0 - z * s.s1)
        }
        Route::GstQuad => gst_ai(z),
        Route::SingleExp => {
            let zeta = zeta_of(z);
            Ok(cpow(z, c64(-0.25, 0.0))? / (2.0 * PI.sqrt())
                * (-zeta).exp()
                * asym_sum_u(zeta, true))
        }
        Route::Compound => {
            let xi = zeta_of(-z);
            let (p, q) = asym_pq(xi, false);
            let phase = xi + PI / 4.0;
            Ok(cpow(-z, c64(-0.25, 0.0))? / PI.sqrt() * (phase.sin() * p - phase.cos() * q))
        }
    }
}

fn bi_value(z: Complex64) -> Result<Complex64> {
    match route_for(z) {
        Route::Series => {
            let s = airy_sums(z);
            Ok(3.0_f64.sqrt() * (s.s0 + z * s.s1))
        }
        Route::GstQuad | Route::SingleExp => {
            // Connection: both rotated arguments leave the single-component
            // sector of Bi.
            let rot = c64(0.0, 2.0 * PI / 3.0).exp();
            let w_plus = z * rot;
            let w_minus = z * rot.conj();
            Ok(c64(0.0, PI / 6.0).exp() * ai_value(w_plus)?
                + c64(0.0, -PI / 6.0).exp() * ai_value(w_minus)?)
        }
        Route::Compound => {
            let xi = zeta_of(-z);
            let (p, q) = asym_pq(xi, false);
            let phase = xi + PI / 4.0;
            Ok(cpow(-z, c64(-0.25, 0.0))? / PI.sqrt() * (phase.cos() * p + phase.sin() * q))
        }
    }
}

fn ai_prime_value(z: Complex64) -> Result<Complex64> {
    match route_for(z) {
        Route::Series => {
            let s = airy_sums(z);
            Ok(s.d0 - s.d1)
        }
        Route::GstQuad => cauchy_derivative(&mut |w| ai_value(w), z, 0.5, 32),
        Route::SingleExp => {
            let zeta = zeta_of(z);
            Ok(-cpow(z, c64(0.25, 0.0))? / (2.0 * PI.sqrt())
                * (-zeta).exp()
                * asym_sum_v(zeta, true))
        }
        Route::Compound => {
            let xi = zeta_of(-z);
            let (p, q) = asym_pq(xi, true);
            let phase = xi + PI / 4.0;
            Ok(-cpow(-z, c64(0.25, 0.0))? / PI.sqrt() * (phase.cos() * p + phase.sin() * q))
        }
    }
}

fn bi_prime_value(z: Complex64) -> Result<Complex64> {
    match route_for(z) {
        Route::Series => {
            let s = airy_sums(z);
            Ok(3.0_f64.sqrt() * (s.d0 + s.d1))
        }
        Route::GstQuad | Route::SingleExp => {
            let rot = c64(0.0, 2.0 * PI / 3.0).exp();
            Ok(c64(0.0, 5.0 * PI / 6.0).exp() * ai_prime_value(z * rot)?
                + c64(0.0, -5.0 * PI / 6.0).exp() * ai_prime_value(z * rot.conj())?)
        }
        Route::Compound => {
            let xi = zeta_of(-z);
            let (p, q) = asym_pq(xi, true);
            let phase = xi + PI / 4.0;
            Ok(cpow(-z, c64(0.25, 0.0))? / PI.sqrt() * (phase.sin() * p - phase.cos() * q))
        }
    }
}

/// `Ai(z)`: power series where well-conditioned, integral representation in
/// the recessive sector, full asymptotic expansions beyond.
pub fn airy_ai(z: Complex64) -> Complex64 {
    ai_value(z).expect("Airy evaluation cannot fail off the hybrid boundaries")
}

/// `Bi(z)`; see [`airy_ai`] for the evaluation strategy.
pub fn airy_bi(z: Complex64) -> Complex64 {
    bi_value(z).expect("Airy evaluation cannot fail off the hybrid boundaries")
}

/// `Ai′(z)`.
pub fn airy_ai_prime(z: Complex64) -> Complex64 {
    ai_prime_value(z).expect("Airy evaluation cannot fail off the hybrid boundaries")
}

/// `Bi′(z)`.
pub fn airy_bi_prime(z: Complex64) -> Complex64 {
    bi_prime_value(z).expect("Airy evaluation cannot fail off the hybrid boundaries")
}

/// Leading asymptotic form of `Ai` or `Bi` in the requested sector.
///
/// Right sector (powers of `z`, `ζ = (2/3) z^{3/2}`):
/// `Ai ≈ z^{−1/4} e^{−ζ} / (2√π)` for `|Arg z| ≤ π − ε`;
/// `Bi ≈ (e^{iπ/4} z^{−1/4} / √(2π)) { (1−i) e^{ζ} + (1+i)/2 · e^{−ζ} }` for
/// `−π/3 + ε ≤ Arg z ≤ π/3 + ε`.
///
/// Left sector (powers of `−z`, `ξ = (2/3)(−z)^{3/2}`, `|Arg(−z)| ≤ 2π/3 − ε`):
/// `Ai ≈ ((−z)^{−1/4} / (2√(2π))) { (1−i) e^{iξ} + (1+i) e^{−iξ} }`;
/// `Bi ≈ ((−z)^{−1/4} / (2√(2π))) { (1+i) e^{iξ} + (1−i) e^{−iξ} }`.
pub fn airy_asym(
    which: AiryKind,
    z: Complex64,
    regime: AirySector,
    eps: f64,
) -> Result<AsymptoticEval> {
    let arg = arg_principal(z)?;
    match regime {
        AirySector::Right => {
            match which {
                AiryKind::Ai => {
                    if arg.abs() > PI - eps {
                        return Err(Error::Sector(format!(
                            "Ai right-sector needs |Arg z| ≤ π − ε, got Arg z = {arg}"
                        )));
                    }
                }
                AiryKind::Bi => {
                    if arg < -PI / 3.0 + eps || arg > PI / 3.0 + eps {
                        return Err(Error::Sector(format!(
                            "Bi right-sector needs −π/3 + ε ≤ Arg z ≤ π/3 + ε, got Arg z = {arg}"
                        )));
                    }
                }
            }
            let zeta = 2.0 / 3.0 * cpow(z, c64(1.5, 0.0))?;
            let quarter = cpow(z, c64(-0.25, 0.0))?;
            let value = match which {
                AiryKind::Ai => quarter / (2.0 * PI.sqrt()) * (-zeta).exp(),
                AiryKind::Bi => {
                    let rot = c64(0.0, PI / 4.0).exp();
                    rot * quarter / (2.0 * PI).sqrt()
                        * (c64(1.0, -1.0) * zeta.exp() + c64(0.5, 0.5) * (-zeta).exp())
                }
            };
            Ok(remaindered(value, z))
        }
        AirySector::Left => {
            let arg_m = arg_principal(-z)?;
            if arg_m.abs() > 2.0 * PI / 3.0 - eps {
                return Err(Error::Sector(format!(
                    "left-sector needs |Arg(−z)| ≤ 2π/3 − ε, got Arg(−z) = {arg_m}"
                )));
            }
            let xi = 2.0 / 3.0 * cpow(-z, c64(1.5, 0.0))?;
            let quarter = cpow(-z, c64(-0.25, 0.0))?;
            let (cp, cm) = match which {
                AiryKind::Ai => (c64(1.0, -1.0), c64(1.0, 1.0)),
                AiryKind::Bi => (c64(1.0, 1.0), c64(1.0, -1.0)),
            };
            let value = quarter / (2.0 * (2.0 * PI).sqrt())
                * (cp * (c64(0.0, 1.0) * xi).exp() + cm * (c64(0.0, -1.0) * xi).exp());
            Ok(remaindered(value, z))
        }
    }
}

fn remaindered(value: Complex64, z: Complex64) -> AsymptoticEval {
    // First correction of either expansion is ~ (5/48) |z|^{−3/2}.
    AsymptoticEval {
        value,
        terms_used: 0,
        sector_ok: true,
        est_remainder: value.norm() * 5.0 / 48.0 * z.norm().powf(-1.5),
        degenerate: false,
    }
}
