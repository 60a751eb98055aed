//! Hermite–Weber fundamental solutions `w₁`, `w₂` of `w″ − (z² − λ)w = 0`,
//! their `Θ`-combination identities, and the case table for the leading
//! asymptotic behaviour of `c₁w₁ + c₂w₂` in the real-axis sector
//! (`|Arg(±z)| ≤ π/4 − ε`) and the diagonal sector (`|Arg(±z) − π/4| ≤ ε`).

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::branchcut::{arg_principal, cpow};
use crate::specfun::phi::{phi_stable, series_cancellation_exponent};
use crate::specfun::{recip_gamma, theta, theta_integral, theta_prime_integral};
use crate::{c64, Error, Result};

/// Largest series cancellation exponent `|z²| − |Re z²|` accepted before the
/// evaluation reroutes through the `Θ` integral representation.
const SERIES_SAFE_EXP: f64 = 14.0;

/// Tolerance for testing whether a Gamma-weighted coefficient combination
/// vanishes, relative to the scale of its summands.
pub const COMBO_VANISH_TOL: f64 = 1e-10;
/// Tolerance for matching `λ` against the odd-integer lattice.
pub const LATTICE_TOL: f64 = 1e-9;

/// `w₁ = e^{−z²/2} Φ((1−λ)/4, 1/2; z²)` and
/// `w₂ = e^{−z²/2} z Φ((3−λ)/4, 3/2; z²)`.
///
/// For `z²` far from both real axes the series combination carries partial
/// sums `e^{|z²| − |Re z²|}` above the value, so evaluation reroutes through
/// the `Θ` integral representation (which covers exactly those directions).
pub fn weber_w(lambda: Complex64, z: Complex64) -> Result<(Complex64, Complex64)> {
    if series_cancellation_exponent(z * z) > SERIES_SAFE_EXP {
        let (w1, _) = weber_combo_stable(lambda, c64(1.0, 0.0), c64(0.0, 0.0), z)?;
        let (w2, _) = weber_combo_stable(lambda, c64(0.0, 0.0), c64(1.0, 0.0), z)?;
        return Ok((w1, w2));
    }
    let z2 = z * z;
    let gauss = (-0.5 * z2).exp();
    let w1 = gauss * phi_stable((1.0 - lambda) / 4.0, c64(0.5, 0.0), z2)?;
    let w2 = gauss * z * phi_stable((3.0 - lambda) / 4.0, c64(1.5, 0.0), z2)?;
    Ok((w1, w2))
}

/// Termwise-differentiated `(w₁′, w₂′)`, with the same stability rerouting.
pub fn weber_w_prime(lambda: Complex64, z: Complex64) -> Result<(Complex64, Complex64)> {
    if series_cancellation_exponent(z * z) > SERIES_SAFE_EXP {
        let (_, w1p) = weber_combo_stable(lambda, c64(1.0, 0.0), c64(0.0, 0.0), z)?;
        let (_, w2p) = weber_combo_stable(lambda, c64(0.0, 0.0), c64(1.0, 0.0), z)?;
        return Ok((w1p, w2p));
    }
    series_w_prime(lambda, z)
}

fn series_w_prime(lambda: Complex64, z: Complex64) -> Result<(Complex64, Complex64)> {
    let z2 = z * z;
    let gauss = (-0.5 * z2).exp();
    let p = (1.0 - lambda) / 4.0;
    let r = (3.0 - lambda) / 4.0;
    let phi1 = phi_stable(p, c64(0.5, 0.0), z2)?;
    let phi1d = phi_stable(p + 1.0, c64(1.5, 0.0), z2)?;
    let phi2 = phi_stable(r, c64(1.5, 0.0), z2)?;
    let phi2d = phi_stable(r + 1.0, c64(2.5, 0.0), z2)?;
    // d/dz [e^{−z²/2} Φ(p, 1/2; z²)] : dΦ/dζ = (p/q) Φ(p+1, q+1; ζ), ζ = z².
    let w1p = gauss * (-z * phi1 + 4.0 * p * z * phi1d);
    // d/dz [e^{−z²/2} z Φ(r, 3/2; z²)]
    let w2p = gauss * ((1.0 - z2) * phi2 + 4.0 / 3.0 * r * z2 * phi2d);
    Ok((w1p, w2p))
}

/// Stable `(value, d/dz)` of the combination `c₁w₁ + c₂w₂`.
///
/// Beyond the series budget the combination is assembled at the coefficient
/// level from the `Θ` decompositions:
/// `c₁w₁ + c₂w₂ = A e^{−z²/2} Θ((1−λ)/4; sz) + B e^{+z²/2} Θ((1+λ)/4; −siz)`
/// with `A = √π e^{−i(1+λ)π/4} (i c₁/Γ((1+λ)/4) − s c₂/(2Γ((3+λ)/4)))` and
/// `B = √π e^{−i(1+λ)π/4} (c₁/Γ((1−λ)/4) + s c₂/(2Γ((3−λ)/4)))`, so a
/// recessive-tuned pair cancels in `A`/`B` at coefficient scale instead of
/// between `e^{±z²/2}`-sized values. Coefficients within `1e−10` of zero
/// relative to their summands are snapped to zero (the case tables are
/// mutually exclusive only in exact arithmetic).
pub fn weber_combo_stable(
    lambda: Complex64,
    c1: Complex64,
    c2: Complex64,
    z: Complex64,
) -> Result<(Complex64, Complex64)> {
    let z2 = z * z;
    let cancel = series_cancellation_exponent(z2);
    if cancel <= SERIES_SAFE_EXP && z2.re.abs() <= SERIES_SAFE_EXP {
        let (w1, w2) = weber_w(lambda, z)?;
        let (w1p, w2p) = series_w_prime(lambda, z)?;
        return Ok((c1 * w1 + c2 * w2, c1 * w1p + c2 * w2p));
    }
    let phi = arg_principal(z)?;
    let fp2 = std::f64::consts::FRAC_PI_2;
    if (phi > -fp2 && phi < 0.0) || phi > fp2 && phi < PI {
        // Schwarz reflection into the handled quadrants: the coefficients of
        // the basis are real-rational in λ.
        let (v, d) = weber_combo_stable(lambda.conj(), c1.conj(), c2.conj(), z.conj())?;
        return Ok((v.conj(), d.conj()));
    }
    let s = if (0.0..=fp2).contains(&phi) { 1.0 } else { -1.0 };
    let i = c64(0.0, 1.0);
    let pm = (1.0 - lambda) / 4.0;
    let pp = (1.0 + lambda) / 4.0;
    let g1m = recip_gamma(pm);
    let g1p = recip_gamma(pp);
    let g3m = recip_gamma((3.0 - lambda) / 4.0);
    let g3p = recip_gamma((3.0 + lambda) / 4.0);
    let phase = (-i * (1.0 + lambda) * PI / 4.0).exp();
    let sqrt_pi = PI.sqrt();
    let snap = |v: Complex64, scale: f64| {
        if v.norm() <= COMBO_VANISH_TOL * scale {
            c64(0.0, 0.0)
        } else {
            v
        }
    };
    let a = sqrt_pi
        * phase
        * snap(
            i * c1 * g1p - s * 0.5 * c2 * g3p,
            (c1 * g1p).norm() + (0.5 * c2 * g3p).norm(),
        );
    let b = sqrt_pi
        * phase
        * snap(
            c1 * g1m + s * 0.5 * c2 * g3m,
            (c1 * g1m).norm() + (0.5 * c2 * g3m).norm(),
        );
    // Near the axes one Θ argument approaches its sector boundary, where the
    // integral trades decay for oscillation and converges impractically
    // slowly. The term carrying that Θ is then the dominant one (its
    // exponential carries `e^{+|Re z²|/2}`), so whenever its coefficient
    // survives the snap the plain series is relatively accurate instead.
    const THETA_ARG_MARGIN: f64 = 0.3;
    let phi_m = arg_principal(s * z)?; // ∈ [0, π/2]
    let theta_m_slow = phi_m > fp2 - THETA_ARG_MARGIN;
    let theta_p_slow = phi_m < THETA_ARG_MARGIN;
    if (b.norm() > 0.0 && theta_p_slow) || (a.norm() > 0.0 && theta_m_slow) {
        if cancel > 25.0 {
            return Err(Error::Accuracy(format!(
                "Hermite–Weber combination not evaluable at z = {z}: series \
                 cancellation e^{{{cancel:.1}}} with the Θ route on its sector boundary"
            )));
        }
        let (w1, w2) = weber_w_series_only(lambda, z)?;
        let (w1p, w2p) = series_w_prime(lambda, z)?;
        return Ok((c1 * w1 + c2 * w2, c1 * w1p + c2 * w2p));
    }
    let gm = (-0.5 * z2).exp();
    let gp = (0.5 * z2).exp();
    let mut value = c64(0.0, 0.0);
    let mut deriv = c64(0.0, 0.0);
    if a.norm() > 0.0 {
        let zm = s * z;
        let tm = theta_integral(pm, zm)?;
        let tmd = s * theta_prime_integral(pm, zm)?;
        value += a * gm * tm;
        deriv += a * gm * (tmd - z * tm);
    }
    if b.norm() > 0.0 {
        let zp = -s * i * z;
        let tp = theta_integral(pp, zp)?;
        let tpd = -s * i * theta_prime_integral(pp, zp)?;
        value += b * gp * tp;
        deriv += b * gp * (tpd + z * tp);
    }
    Ok((value, deriv))
}

fn weber_w_series_only(lambda: Complex64, z: Complex64) -> Result<(Complex64, Complex64)> {
    let z2 = z * z;
    let gauss = (-0.5 * z2).exp();
    let w1 = gauss * phi_stable((1.0 - lambda) / 4.0, c64(0.5, 0.0), z2)?;
    let w2 = gauss * z * phi_stable((3.0 - lambda) / 4.0, c64(1.5, 0.0), z2)?;
    Ok((w1, w2))
}

/// Second derivatives from the same series, for residual checks of the
/// defining equation.
pub fn weber_w_second(lambda: Complex64, z: Complex64) -> Result<(Complex64, Complex64)> {
    let z2 = z * z;
    let gauss = (-0.5 * z2).exp();
    let p = (1.0 - lambda) / 4.0;
    let r = (3.0 - lambda) / 4.0;
    let phi1 = phi_stable(p, c64(0.5, 0.0), z2)?;
    let phi1d = phi_stable(p + 1.0, c64(1.5, 0.0), z2)?;
    let phi1dd = phi_stable(p + 2.0, c64(2.5, 0.0), z2)?;
    let phi2 = phi_stable(r, c64(1.5, 0.0), z2)?;
    let phi2d = phi_stable(r + 1.0, c64(2.5, 0.0), z2)?;
    let phi2dd = phi_stable(r + 2.0, c64(3.5, 0.0), z2)?;
    // g₁(z) = Φ(p, 1/2; z²): g₁′ = 4pz Φ⁺, g₁″ = 4p Φ⁺ + (16/3) p(p+1) z² Φ⁺⁺.
    let g1 = phi1;
    let g1p = 4.0 * p * z * phi1d;
    let g1pp = 4.0 * p * phi1d + 16.0 / 3.0 * p * (p + 1.0) * z2 * phi1dd;
    // g₂(z) = z Φ(r, 3/2; z²): g₂′ = Φ₂ + (4/3) r z² Φ₂⁺,
    // g₂″ = 4rz Φ₂⁺ + (16/15) r(r+1) z³ Φ₂⁺⁺.
    let g2 = z * phi2;
    let g2p = phi2 + 4.0 / 3.0 * r * z2 * phi2d;
    let g2pp = 4.0 * r * z * phi2d + 16.0 / 15.0 * r * (r + 1.0) * z * z2 * phi2dd;
    // w = e^{−z²/2} g ⇒ w″ = e^{−z²/2} (g″ − 2z g′ + (z² − 1) g).
    let w1pp = gauss * (g1pp - 2.0 * z * g1p + (z2 - 1.0) * g1);
    let w2pp = gauss * (g2pp - 2.0 * z * g2p + (z2 - 1.0) * g2);
    Ok((w1pp, w2pp))
}

/// Wronskian `w₁ w₂′ − w₁′ w₂`; identically `1`.
pub fn weber_wronskian(lambda: Complex64, z: Complex64) -> Result<Complex64> {
    let (w1, w2) = weber_w(lambda, z)?;
    let (w1p, w2p) = weber_w_prime(lambda, z)?;
    Ok(w1 * w2p - w1p * w2)
}

/// Which `Θ`-combination identity to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaIdentity {
    /// `w₁/Γ((3−λ)/4) ∓ 2w₂/Γ((1−λ)/4) = (e^{−z²/2}/√π) Θ((1−λ)/4; ±z)`
    Recessive803,
    /// `w₁/Γ((3+λ)/4) ± 2i w₂/Γ((1+λ)/4) = (e^{z²/2}/√π) Θ((1+λ)/4; ∓iz)`
    Dominant804,
    /// `w₁` reconstructed from both `Θ` branches
    W1From788,
    /// `w₂` reconstructed from both `Θ` branches
    W2From789,
}

impl ThetaIdentity {
    pub fn from_tag(tag: u32) -> Result<Self> {
        match tag {
            803 => Ok(Self::Recessive803),
            804 => Ok(Self::Dominant804),
            788 => Ok(Self::W1From788),
            789 => Ok(Self::W2From789),
            other => Err(Error::Domain(format!("unknown identity tag {other}"))),
        }
    }
}

/// Scaled residual of the selected identity, maximised over its two sign
/// branches.
pub fn weber_theta_identity_residual(
    lambda: Complex64,
    z: Complex64,
    which: ThetaIdentity,
) -> Result<f64> {
    let (w1, w2) = weber_w(lambda, z)?;
    let g3m = recip_gamma((3.0 - lambda) / 4.0);
    let g1m = recip_gamma((1.0 - lambda) / 4.0);
    let g3p = recip_gamma((3.0 + lambda) / 4.0);
    let g1p = recip_gamma((1.0 + lambda) / 4.0);
    let z2 = z * z;
    let i = c64(0.0, 1.0);
    let sqrt_pi = PI.sqrt();
    let mut worst: f64 = 0.0;
    for &s in &[1.0, -1.0] {
        // s = +1 takes the top sign of each display.
        let (lhs, rhs) = match which {
            ThetaIdentity::Recessive803 => (
                w1 * g3m - s * 2.0 * w2 * g1m,
                (-0.5 * z2).exp() / sqrt_pi * theta((1.0 - lambda) / 4.0, s * z)?,
            ),
            ThetaIdentity::Dominant804 => (
                w1 * g3p + s * 2.0 * i * w2 * g1p,
                (0.5 * z2).exp() / sqrt_pi * theta((1.0 + lambda) / 4.0, -s * i * z)?,
            ),
            ThetaIdentity::W1From788 => {
                let phase = (-i * (1.0 + lambda) * PI / 4.0).exp();
                let rhs = sqrt_pi
                    * phase
                    * (i * (-0.5 * z2).exp() * g1p * theta((1.0 - lambda) / 4.0, s * z)?
                        + (0.5 * z2).exp() * g1m * theta((1.0 + lambda) / 4.0, -s * i * z)?);
                (w1, rhs)
            }
            ThetaIdentity::W2From789 => {
                let phase = (-i * (1.0 + lambda) * PI / 4.0).exp();
                let rhs = -s * sqrt_pi / 2.0
                    * phase
                    * ((-0.5 * z2).exp() * g3p * theta((1.0 - lambda) / 4.0, s * z)?
                        - (0.5 * z2).exp() * g3m * theta((1.0 + lambda) / 4.0, -s * i * z)?);
                (w2, rhs)
            }
        };
        let scale = 1.0 + lhs.norm().max(rhs.norm());
        worst = worst.max((lhs - rhs).norm() / scale);
    }
    Ok(worst)
}

/// Residual of the Gamma identity
/// `1/(Γ((1−λ)/4)Γ((3+λ)/4)) ± i/(Γ((1+λ)/4)Γ((3−λ)/4)) = e^{±i(1+λ)π/4}/π`,
/// maximised over the sign.
pub fn gamma_quarter_identity_residual(lambda: Complex64) -> f64 {
    let g3m = recip_gamma((3.0 - lambda) / 4.0);
    let g1m = recip_gamma((1.0 - lambda) / 4.0);
    let g3p = recip_gamma((3.0 + lambda) / 4.0);
    let g1p = recip_gamma((1.0 + lambda) / 4.0);
    let i = c64(0.0, 1.0);
    let mut worst: f64 = 0.0;
    for &s in &[1.0, -1.0] {
        let lhs = g1m * g3p + s * i * g1p * g3m;
        let rhs = (s * i * (1.0 + lambda) * PI / 4.0).exp() / PI;
        worst = worst.max((lhs - rhs).norm() / (1.0 + rhs.norm()));
    }
    worst
}

/// Sector of the asymptotic case tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeberSector {
    /// `|Arg(±z)| ≤ π/4 − ε`
    RealAxis,
    /// `|Arg(±z) − π/4| ≤ ε`
    Diagonal,
}

/// Direction of `|z| → ∞` within the sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Plus,
    Minus,
}

impl Direction {
    #[inline]
    pub fn sign(self) -> f64 {
        match self {
            Direction::Plus => 1.0,
            Direction::Minus => -1.0,
        }
    }
}

/// Case labels of the two asymptotic tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeberCaseId {
    /// Real-axis generic: growing `e^{+z²/2}` branch survives.
    RealGeneric,
    /// Real-axis recessive towards `+`: the `Γ`-tuned decaying combination.
    RealRecessivePlus,
    /// Real-axis recessive towards `−`.
    RealRecessiveMinus,
    /// `λ = 1 + 4n`: Gaussian × even polynomial (degree `2n`).
    RealPolyEven,
    /// `λ = 3 + 4n`: Gaussian × odd polynomial (degree `2n + 1`).
    RealPolyOdd,
    /// Diagonal generic: both neutral-modulus branches present.
    DiagGeneric,
    /// Diagonal, `e^{+z²/2}`-pure combination towards `+`.
    DiagDominantPlus,
    /// Diagonal, `e^{+z²/2}`-pure combination towards `−`.
    DiagDominantMinus,
    /// `λ = −(1 + 4n)`: `e^{+z²/2}` × even polynomial.
    DiagGrowingPolyEven,
    /// `λ = −(3 + 4n)`: `e^{+z²/2}` × odd polynomial.
    DiagGrowingPolyOdd,
    /// Diagonal, `e^{−z²/2}`-pure combination towards `+`.
    DiagRecessivePlus,
    /// Diagonal, `e^{−z²/2}`-pure combination towards `−`.
    DiagRecessiveMinus,
    /// `λ = 1 + 4n` on the diagonal.
    DiagPolyEven,
    /// `λ = 3 + 4n` on the diagonal.
    DiagPolyOdd,
}

/// Rotation applied to `z` inside the power of a leading term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerBase {
    Z,
    NegZ,
    IZ,
    NegIZ,
}

impl PowerBase {
    #[inline]
    pub fn rotation(self) -> Complex64 {
        match self {
            PowerBase::Z => c64(1.0, 0.0),
            PowerBase::NegZ => c64(-1.0, 0.0),
            PowerBase::IZ => c64(0.0, 1.0),
            PowerBase::NegIZ => c64(0.0, -1.0),
        }
    }
}

/// One term `prefactor · e^{exp_sign · z²} · (base(z))^{power}` of a leading
/// asymptotic form.
#[derive(Debug, Clone, Copy)]
pub struct WeberTerm {
    pub prefactor: Complex64,
    /// Coefficient of `z²` in the exponential: `+1/2` or `−1/2`.
    pub exp_sign: f64,
    pub power: Complex64,
    pub base: PowerBase,
}

impl WeberTerm {
    /// Evaluate the term at a concrete `z` (leading monomial only).
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let base = self.base.rotation() * z;
        Ok(self.prefactor * (self.exp_sign * z * z).exp() * cpow(base, self.power)?)
    }
}

/// Matched leading asymptotic form of `c₁w₁ + c₂w₂` along one direction.
#[derive(Debug, Clone)]
pub struct WeberCase {
    pub case_id: WeberCaseId,
    /// Prefactor of the dominant term.
    pub prefactor: Complex64,
    /// Exponent sign of the dominant term: `±1/2` in front of `z²`.
    pub exp_sign: f64,
    /// Power of the dominant term.
    pub power: Complex64,
    /// Set in the degenerate-`λ` polynomial cases.
    pub polynomial_degree: Option<u32>,
    /// All terms of the leading form (two in the mixed diagonal cases).
    pub terms: Vec<WeberTerm>,
}

struct GammaWeights {
    g1m: Complex64,
    g3m: Complex64,
    g1p: Complex64,
    g3p: Complex64,
}

fn weights(lambda: Complex64) -> GammaWeights {
    GammaWeights {
        g1m: recip_gamma((1.0 - lambda) / 4.0),
        g3m: recip_gamma((3.0 - lambda) / 4.0),
        g1p: recip_gamma((1.0 + lambda) / 4.0),
        g3p: recip_gamma((3.0 + lambda) / 4.0),
    }
}

/// `λ` against the lattice `s·(1 + 2n)`, `n ∈ Z_+`, `s ∈ {+1, −1}`;
/// returns `(n, odd_family)` with `odd_family = false` for `s(1+4n)` and
/// `true` for `s(3+4n)`.
fn lattice_match(lambda: Complex64, sign: f64, tol: f64) -> Option<(u32, bool)> {
    if lambda.im.abs() > tol {
        return None;
    }
    let v = sign * lambda.re;
    if v < 1.0 - tol {
        return None;
    }
    let m = (v - 1.0) / 2.0;
    let n2 = m.round();
    if (m - n2).abs() * 2.0 > tol {
        return None;
    }
    let k = n2 as u32; // λ = s(1 + 2k)
    Some((k / 2, k % 2 == 1))
}

/// Match `(λ, c₁, c₂)` against the case table of the requested sector and
/// return the leading asymptotic form along `direction`.
///
/// Matching precedence: degenerate `λ` lattice first, then the vanishing
/// Gamma-weighted combinations, then the generic case. Simultaneous
/// vanishing hits within tolerance surface as an ambiguity error.
pub fn weber_combo_leading(
    lambda: Complex64,
    c1: Complex64,
    c2: Complex64,
    sector: WeberSector,
    direction: Direction,
) -> Result<WeberCase> {
    let scale = c1.norm() + c2.norm();
    if scale == 0.0 {
        return Err(Error::Domain("need |c1| + |c2| > 0".into()));
    }
    let w = weights(lambda);
    let i = c64(0.0, 1.0);
    let sqrt_pi = PI.sqrt();
    let dirs = direction.sign();

    // Vanishing combinations and their scales.
    let d_plus = c1 * w.g1m + 0.5 * c2 * w.g3m;
    let d_minus = c1 * w.g1m - 0.5 * c2 * w.g3m;
    let d_scale = (c1 * w.g1m).norm() + (0.5 * c2 * w.g3m).norm();
    let e_plus = i * c1 * w.g1p - 0.5 * c2 * w.g3p;
    let e_minus = i * c1 * w.g1p + 0.5 * c2 * w.g3p;
    let e_scale = (c1 * w.g1p).norm() + (0.5 * c2 * w.g3p).norm();
    let vanish = |v: Complex64, s: f64| s > 0.0 && v.norm() <= COMBO_VANISH_TOL * s;

    match sector {
        WeberSector::RealAxis => {
            if let Some((n, odd)) = lattice_match(lambda, 1.0, LATTICE_TOL) {
                if !odd && c2.norm() <= COMBO_VANISH_TOL * scale {
                    // λ = 1 + 4n, pure w₁: Gaussian × even polynomial.
                    let c = c1 / w.g3m;
                    let term = WeberTerm {
                        prefactor: c / sqrt_pi,
                        exp_sign: -0.5,
                        power: c64(2.0 * n as f64, 0.0),
                        base: PowerBase::Z,
                    };
                    return Ok(single(WeberCaseId::RealPolyEven, term, Some(2 * n)));
                }
                if odd && c1.norm() <= COMBO_VANISH_TOL * scale {
                    // λ = 3 + 4n, pure w₂: Gaussian × odd polynomial.
                    let c = -c2 / (2.0 * w.g1m);
                    let term = WeberTerm {
                        prefactor: c / sqrt_pi,
                        exp_sign: -0.5,
                        power: c64(2.0 * n as f64 + 1.0, 0.0),
                        base: PowerBase::Z,
                    };
                    return Ok(single(WeberCaseId::RealPolyOdd, term, Some(2 * n + 1)));
                }
            }
            let hit_p = vanish(d_plus, d_scale);
            let hit_m = vanish(d_minus, d_scale);
            if hit_p && hit_m {
                return Err(Error::Ambiguous(vec![
                    "real-axis recessive (+)".into(),
                    "real-axis recessive (−)".into(),
                ]));
            }
            if hit_p {
                let c = c1 / w.g3m;
                let term = match direction {
                    Direction::Plus => WeberTerm {
                        prefactor: c / sqrt_pi,
                        exp_sign: -0.5,
                        power: -(1.0 - lambda) / 2.0,
                        base: PowerBase::Z,
                    },
                    Direction::Minus => WeberTerm {
                        prefactor: 2.0 * sqrt_pi * c * w.g1m * w.g3m,
                        exp_sign: 0.5,
                        power: -(1.0 + lambda) / 2.0,
                        base: PowerBase::NegZ,
                    },
                };
                return Ok(single(WeberCaseId::RealRecessivePlus, term, None));
            }
            if hit_m {
                let c = c1 / w.g3m;
                let term = match direction {
                    Direction::Plus => WeberTerm {
                        prefactor: 2.0 * sqrt_pi * c * w.g1m * w.g3m,
                        exp_sign: 0.5,
                        power: -(1.0 + lambda) / 2.0,
                        base: PowerBase::Z,
                    },
                    Direction::Minus => WeberTerm {
                        prefactor: c / sqrt_pi,
                        exp_sign: -0.5,
                        power: -(1.0 - lambda) / 2.0,
                        base: PowerBase::NegZ,
                    },
                };
                return Ok(single(WeberCaseId::RealRecessiveMinus, term, None));
            }
            let d = if dirs > 0.0 { d_plus } else { d_minus };
            let term = WeberTerm {
                prefactor: sqrt_pi * d,
                exp_sign: 0.5,
                power: -(1.0 + lambda) / 2.0,
                base: if dirs > 0.0 { PowerBase::Z } else { PowerBase::NegZ },
            };
            Ok(single(WeberCaseId::RealGeneric, term, None))
        }
        WeberSector::Diagonal => {
            if let Some((n, odd)) = lattice_match(lambda, -1.0, LATTICE_TOL) {
                // λ = −(1+4n) or −(3+4n): pure e^{+z²/2} polynomial combos.
                if !odd && c2.norm() <= COMBO_VANISH_TOL * scale {
                    let c = c1 / w.g3p;
                    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                    let term = WeberTerm {
                        prefactor: sign * c / sqrt_pi,
                        exp_sign: 0.5,
                        power: c64(2.0 * n as f64, 0.0),
                        base: PowerBase::Z,
                    };
                    return Ok(single(WeberCaseId::DiagGrowingPolyEven, term, Some(2 * n)));
                }
                if odd && c1.norm() <= COMBO_VANISH_TOL * scale {
                    let c = c2 / (2.0 * i * w.g1p);
                    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                    let term = WeberTerm {
                        prefactor: -i * sign * c / sqrt_pi,
                        exp_sign: 0.5,
                        power: c64(2.0 * n as f64 + 1.0, 0.0),
                        base: PowerBase::Z,
                    };
                    return Ok(single(WeberCaseId::DiagGrowingPolyOdd, term, Some(2 * n + 1)));
                }
            }
            if let Some((n, odd)) = lattice_match(lambda, 1.0, LATTICE_TOL) {
                if !odd && c2.norm() <= COMBO_VANISH_TOL * scale {
                    let c = c1 / w.g3m;
                    let term = WeberTerm {
                        prefactor: c / sqrt_pi,
                        exp_sign: -0.5,
                        power: c64(2.0 * n as f64, 0.0),
                        base: PowerBase::Z,
                    };
                    return Ok(single(WeberCaseId::DiagPolyEven, term, Some(2 * n)));
                }
                if odd && c1.norm() <= COMBO_VANISH_TOL * scale {
                    let c = -c2 / (2.0 * w.g1m);
                    let term = WeberTerm {
                        prefactor: c / sqrt_pi,
                        exp_sign: -0.5,
                        power: c64(2.0 * n as f64 + 1.0, 0.0),
                        base: PowerBase::Z,
                    };
                    return Ok(single(WeberCaseId::DiagPolyOdd, term, Some(2 * n + 1)));
                }
            }
            let phase = (-i * (1.0 + lambda) * PI / 4.0).exp();
            let phase2 = (-i * (1.0 + lambda) * PI / 2.0).exp();
            let hits = [
                vanish(e_plus, e_scale),
                vanish(e_minus, e_scale),
                vanish(d_plus, d_scale),
                vanish(d_minus, d_scale),
            ];
            if hits.iter().filter(|&&h| h).count() > 1 {
                let names = ["dominant (+)", "dominant (−)", "recessive (+)", "recessive (−)"];
                return Err(Error::Ambiguous(
                    hits.iter()
                        .zip(names)
                        .filter(|(h, _)| **h)
                        .map(|(_, n)| format!("diagonal {n}"))
                        .collect(),
                ));
            }
            if hits[0] {
                // c₁ = c/Γ((3+λ)/4), c₂ = 2ic/Γ((1+λ)/4): e^{+z²/2}-pure at +.
                let c = c1 / w.g3p;
                let terms = match direction {
                    Direction::Plus => vec![WeberTerm {
                        prefactor: c / sqrt_pi,
                        exp_sign: 0.5,
                        power: -(1.0 + lambda) / 2.0,
                        base: PowerBase::NegIZ,
                    }],
                    Direction::Minus => vec![
                        WeberTerm {
                            prefactor: 2.0 * i * sqrt_pi * phase * c * w.g1p * w.g3p,
                            exp_sign: -0.5,
                            power: -(1.0 - lambda) / 2.0,
                            base: PowerBase::NegZ,
                        },
                        WeberTerm {
                            prefactor: c / sqrt_pi * phase2,
                            exp_sign: 0.5,
                            power: -(1.0 + lambda) / 2.0,
                            base: PowerBase::IZ,
                        },
                    ],
                };
                return Ok(multi(WeberCaseId::DiagDominantPlus, terms, None));
            }
            if hits[1] {
                let c = c1 / w.g3p;
                let terms = match direction {
                    Direction::Plus => vec![
                        WeberTerm {
                            prefactor: 2.0 * i * sqrt_pi * phase * c * w.g1p * w.g3p,
                            exp_sign: -0.5,
                            power: -(1.0 - lambda) / 2.0,
                            base: PowerBase::Z,
                        },
                        WeberTerm {
                            prefactor: c / sqrt_pi * phase2,
                            exp_sign: 0.5,
                            power: -(1.0 + lambda) / 2.0,
                            base: PowerBase::NegIZ,
                        },
                    ],
                    Direction::Minus => vec![WeberTerm {
                        prefactor: c / sqrt_pi,
                        exp_sign: 0.5,
                        power: -(1.0 + lambda) / 2.0,
                        base: PowerBase::IZ,
                    }],
                };
                return Ok(multi(WeberCaseId::DiagDominantMinus, terms, None));
            }
            if hits[2] {
                let c = c1 / w.g3m;
                let terms = match direction {
                    Direction::Plus => vec![WeberTerm {
                        prefactor: c / sqrt_pi,
                        exp_sign: -0.5,
                        power: -(1.0 - lambda) / 2.0,
                        base: PowerBase::Z,
                    }],
                    Direction::Minus => vec![
                        WeberTerm {
                            prefactor: -c / sqrt_pi * phase2,
                            exp_sign: -0.5,
                            power: -(1.0 - lambda) / 2.0,
                            base: PowerBase::NegZ,
                        },
                        WeberTerm {
                            prefactor: 2.0 * sqrt_pi * phase * c * w.g1m * w.g3m,
                            exp_sign: 0.5,
                            power: -(1.0 + lambda) / 2.0,
                            base: PowerBase::IZ,
                        },
                    ],
                };
                return Ok(multi(WeberCaseId::DiagRecessivePlus, terms, None));
            }
            if hits[3] {
                let c = c1 / w.g3m;
                let terms = match direction {
                    Direction::Plus => vec![
                        WeberTerm {
                            prefactor: -c / sqrt_pi * phase2,
                            exp_sign: -0.5,
                            power: -(1.0 - lambda) / 2.0,
                            base: PowerBase::Z,
                        },
                        WeberTerm {
                            prefactor: 2.0 * sqrt_pi * phase * c * w.g1m * w.g3m,
                            exp_sign: 0.5,
                            power: -(1.0 + lambda) / 2.0,
                            base: PowerBase::NegIZ,
                        },
                    ],
                    Direction::Minus => vec![WeberTerm {
                        prefactor: c / sqrt_pi,
                        exp_sign: -0.5,
                        power: -(1.0 - lambda) / 2.0,
                        base: PowerBase::NegZ,
                    }],
                };
                return Ok(multi(WeberCaseId::DiagRecessiveMinus, terms, None));
            }
            // Generic diagonal case: both branches.
            let (e, d, base_rec, base_dom) = match direction {
                Direction::Plus => (e_plus, d_plus, PowerBase::Z, PowerBase::NegIZ),
                Direction::Minus => (e_minus, d_minus, PowerBase::NegZ, PowerBase::IZ),
            };
            let terms = vec![
                WeberTerm {
                    prefactor: sqrt_pi * phase * e,
                    exp_sign: -0.5,
                    power: -(1.0 - lambda) / 2.0,
                    base: base_rec,
                },
                WeberTerm {
                    prefactor: sqrt_pi * phase * d,
                    exp_sign: 0.5,
                    power: -(1.0 + lambda) / 2.0,
                    base: base_dom,
                },
            ];
            Ok(multi(WeberCaseId::DiagGeneric, terms, None))
        }
    }
}

fn single(case_id: WeberCaseId, term: WeberTerm, degree: Option<u32>) -> WeberCase {
    WeberCase {
        case_id,
        prefactor: term.prefactor,
        exp_sign: term.exp_sign,
        power: term.power,
        polynomial_degree: degree,
        terms: vec![term],
    }
}

fn multi(case_id: WeberCaseId, terms: Vec<WeberTerm>, degree: Option<u32>) -> WeberCase {
    // Dominant term: larger exponential envelope wins; on the diagonal both
    // envelopes are neutral and the larger power real part wins.
    let lead = terms
        .iter()
        .enumerate()
        .max_by(|(_, a), (_, b)| {
            (a.exp_sign, a.power.re)
                .partial_cmp(&(b.exp_sign, b.power.re))
                .unwrap()
        })
        .map(|(i, _)| i)
        .unwrap_or(0);
    let t = terms[lead];
    WeberCase {
        case_id,
        prefactor: t.prefactor,
        exp_sign: t.exp_sign,
        power: t.power,
        polynomial_degree: degree,
        terms,
    }
}

/// Evaluate the full leading form (sum of its terms) at `z`.
pub fn weber_case_value(case: &WeberCase, z: Complex64) -> Result<Complex64> {
    let mut acc = c64(0.0, 0.0);
    for t in &case.terms {
        acc += t.eval(z)?;
    }
    Ok(acc)
}

/// The tuned coefficients `(c₁, c₂) = (c/Γ((3−λ)/4), −2c/Γ((1−λ)/4))` that
/// produce the recessive combination towards `+` on the real axis.
pub fn recessive_plus_coefficients(lambda: Complex64, c: Complex64) -> (Complex64, Complex64) {
    let w = weights(lambda);
    (c * w.g3m, -2.0 * c * w.g1m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma;

    #[test]
    fn values_and_derivatives_at_origin() {
        let lambda = c64(0.7, -1.1);
        let (w1, w2) = weber_w(lambda, c64(0.0, 0.0)).unwrap();
        assert!((w1 - c64(1.0, 0.0)).norm() < 1e-15);
        assert!(w2.norm() < 1e-15);
        let (w1p, w2p) = weber_w_prime(lambda, c64(0.0, 0.0)).unwrap();
        assert!(w1p.norm() < 1e-15);
        assert!((w2p - c64(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn lambda_one_pure_gaussian() {
        let z = c64(1.3, -0.4);
        let (w1, _) = weber_w(c64(1.0, 0.0), z).unwrap();
        let expect = (-0.5 * z * z).exp();
        assert!((w1 - expect).norm() < 1e-14 * expect.norm());
        let (_, w2) = weber_w(c64(3.0, 0.0), z).unwrap();
        let expect = z * (-0.5 * z * z).exp();
        assert!((w2 - expect).norm() < 1e-14 * expect.norm());
    }

    #[test]
    fn wronskian_constant_one() {
        for &(l, z) in &[
            (c64(0.0, 0.0), c64(0.0, 0.0)),
            (c64(2.0, 1.0), c64(1.3, 0.0)),
            (c64(1.0, 0.0), c64(0.0, -2.0)),
            (c64(-0.7, 0.4), c64(0.9, 1.8)),
        ] {
            let w = weber_wronskian(l, z).unwrap();
            assert!((w - c64(1.0, 0.0)).norm() <= 1e-9, "λ = {l}, z = {z}: W = {w}");
        }
    }

    #[test]
    fn satisfies_hermite_weber_equation() {
        let lambda = c64(1.4, -0.8);
        let z = c64(0.8, 0.6);
        let (w1, w2) = weber_w(lambda, z).unwrap();
        let (w1pp, w2pp) = weber_w_second(lambda, z).unwrap();
        let factor = z * z - lambda;
        assert!((w1pp - factor * w1).norm() <= 1e-10 * (1.0 + w1pp.norm()));
        assert!((w2pp - factor * w2).norm() <= 1e-10 * (1.0 + w2pp.norm()));
    }

    #[test]
    fn theta_identities_small_arguments() {
        assert!(
            weber_theta_identity_residual(c64(1.0, 0.0), c64(0.7, 0.0), ThetaIdentity::Recessive803)
                .unwrap()
                <= 1e-10
        );
        assert!(
            weber_theta_identity_residual(c64(0.0, 1.0), c64(1.0, -0.5), ThetaIdentity::Dominant804)
                .unwrap()
                <= 1e-9
        );
        assert!(
            weber_theta_identity_residual(c64(0.0, 0.0), c64(0.0, 0.0), ThetaIdentity::W1From788)
                .unwrap()
                <= 1e-12
        );
        assert!(
            weber_theta_identity_residual(c64(0.4, 0.2), c64(0.5, 0.3), ThetaIdentity::W2From789)
                .unwrap()
                <= 1e-9
        );
    }

    #[test]
    fn gamma_identity_residual_small() {
        for &l in &[c64(0.0, 0.0), c64(1.7, 2.3), c64(-0.4, -3.0), c64(4.0, 0.0)] {
            assert!(gamma_quarter_identity_residual(l) <= 1e-12, "λ = {l}");
        }
    }

    #[test]
    fn case_matching_examples() {
        // λ = 1, (1, 0): even polynomial of degree 0, prefactor 1/√π · √π = 1.
        let case = weber_combo_leading(
            c64(1.0, 0.0),
            c64(1.0, 0.0),
            c64(0.0, 0.0),
            WeberSector::RealAxis,
            Direction::Plus,
        )
        .unwrap();
        assert_eq!(case.case_id, WeberCaseId::RealPolyEven);
        assert_eq!(case.polynomial_degree, Some(0));
        assert!((case.prefactor - c64(1.0, 0.0)).norm() < 1e-12);
        assert_eq!(case.exp_sign, -0.5);

        // λ = 0, (1, 0): generic growing branch, prefactor √π/Γ(1/4).
        let case = weber_combo_leading(
            c64(0.0, 0.0),
            c64(1.0, 0.0),
            c64(0.0, 0.0),
            WeberSector::RealAxis,
            Direction::Plus,
        )
        .unwrap();
        assert_eq!(case.case_id, WeberCaseId::RealGeneric);
        assert_eq!(case.exp_sign, 0.5);
        let expect = PI.sqrt() / gamma(c64(0.25, 0.0)).unwrap();
        assert!((case.prefactor - expect).norm() < 1e-12 * expect.norm());
        assert!((case.power - c64(-0.5, 0.0)).norm() < 1e-14);

        // λ = i with the Γ-tuned recessive pair.
        let lambda = c64(0.0, 1.0);
        let (c1, c2) = recessive_plus_coefficients(lambda, c64(1.0, 0.0));
        let case =
            weber_combo_leading(lambda, c1, c2, WeberSector::RealAxis, Direction::Plus).unwrap();
        assert_eq!(case.case_id, WeberCaseId::RealRecessivePlus);
        assert_eq!(case.exp_sign, -0.5);
        let expect = c64(1.0, 0.0) / PI.sqrt();
        assert!((case.prefactor - expect).norm() < 1e-12);
        assert!((case.power - (-(1.0 - lambda) / 2.0)).norm() < 1e-14);
    }

    #[test]
    fn zero_coefficients_rejected() {
        assert!(weber_combo_leading(
            c64(0.0, 0.0),
            c64(0.0, 0.0),
            c64(0.0, 0.0),
            WeberSector::RealAxis,
            Direction::Plus
        )
        .is_err());
    }

    #[test]
    fn diagonal_generic_has_two_terms() {
        let case = weber_combo_leading(
            c64(0.25, 0.0),
            c64(1.0, 0.0),
            c64(1.0, 0.0),
            WeberSector::Diagonal,
            Direction::Plus,
        )
        .unwrap();
        assert_eq!(case.case_id, WeberCaseId::DiagGeneric);
        assert_eq!(case.terms.len(), 2);
    }
}
