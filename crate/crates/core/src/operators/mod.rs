//! Twisted operators, sources, Weyl symbols, symplectic shifts, the
//! discriminants `Δ₂, Δ₁, Δ₀` with the spectral parameter `λ`, and the
//! branch-resolved roots `Ξ±` / phase functions `Σ±` of the shifted symbol.

mod solution;
mod twisted;

pub use solution::{
    eval_solution, eval_solution_with_deriv, explicit_solve_degenerate, solution_basis,
    SolutionBasis,
};
pub use twisted::{plane_point, twisted_symbol};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::branchcut::{cpow, cpow_real, sigma};
use crate::{c64, Error, Result};

/// Relative tolerance used for the discriminant case split and the frame
/// checks.
pub const ZERO_TOL: f64 = 1e-12;

/// The real frame `(α, β, γ, δ)` with `αδ − βγ = 1` and `βδ ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwistedFrame {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl TwistedFrame {
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<Self> {
        let f = Self {
            alpha,
            beta,
            gamma,
            delta,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        let det = self.alpha * self.delta - self.beta * self.gamma;
        if (det - 1.0).abs() > ZERO_TOL {
            return Err(Error::Frame(format!("αδ − βγ = {det}, expected 1")));
        }
        if (self.beta * self.delta).abs() <= ZERO_TOL {
            return Err(Error::Frame("βδ = 0".into()));
        }
        Ok(())
    }

    /// The frame turning the harmonic oscillator into the twisted Laplacian.
    pub fn twisted_laplacian() -> Self {
        Self {
            alpha: -1.0,
            beta: -0.5,
            gamma: 1.0,
            delta: -0.5,
        }
    }
}

/// Complex coefficients `a_kj` of `Σ_{j+k≤2} a_kj M^j D^k` (or of the twisted
/// operator built on the same table). The first index counts `D`-powers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffTable {
    pub a20: Complex64,
    pub a11: Complex64,
    pub a02: Complex64,
    pub a10: Complex64,
    pub a01: Complex64,
    pub a00: Complex64,
}

impl CoeffTable {
    pub fn new(
        a20: Complex64,
        a11: Complex64,
        a02: Complex64,
        a10: Complex64,
        a01: Complex64,
        a00: Complex64,
    ) -> Self {
        Self {
            a20,
            a11,
            a02,
            a10,
            a01,
            a00,
        }
    }

    /// Constant-coefficient table `a20 D² + a10 D + a00`.
    pub fn constant_coefficient(a20: Complex64, a10: Complex64, a00: Complex64) -> Self {
        Self::new(a20, c64(0.0, 0.0), c64(0.0, 0.0), a10, c64(0.0, 0.0), a00)
    }

    /// `D² + M² + a00` (harmonic oscillator plus a constant).
    pub fn harmonic_oscillator(a00: Complex64) -> Self {
        Self::new(
            c64(1.0, 0.0),
            c64(0.0, 0.0),
            c64(1.0, 0.0),
            c64(0.0, 0.0),
            c64(0.0, 0.0),
            a00,
        )
    }

    /// Order-2 requirement of the classifier: `|a20| + |a11| + |a02| > 0`.
    pub fn order2(&self) -> Result<()> {
        if self.a20.norm() + self.a11.norm() + self.a02.norm() <= 0.0 {
            return Err(Error::Order(
                "top-order coefficients all vanish: |a20| + |a11| + |a02| = 0".into(),
            ));
        }
        Ok(())
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self::new(
            c * self.a20,
            c * self.a11,
            c * self.a02,
            c * self.a10,
            c * self.a01,
            c * self.a00,
        )
    }
}

/// The source of a twisted operator: the same coefficient table, reinterpreted
/// as the ordinary differential operator `Σ a_kj M^j D^k` on the line.
pub fn source_of(table: &CoeffTable, frame: &TwistedFrame) -> Result<CoeffTable> {
    frame.validate()?;
    Ok(*table)
}

/// Weyl-symbol coefficients of a second-order operator, plus the shear `θ`
/// already applied. The symbol is
/// `b(x, ξ) = b20 ξ² + b11 xξ + b02 x² + b10 ξ + b01 x + b00 + (i/2) b11`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylSymbol {
    pub b20: Complex64,
    pub b11: Complex64,
    pub b02: Complex64,
    pub b10: Complex64,
    pub b01: Complex64,
    pub b00: Complex64,
    pub theta: f64,
}

impl WeylSymbol {
    /// The full constant term `b00 + (i/2) b11`.
    #[inline]
    pub fn full_const(&self) -> Complex64 {
        self.b00 + c64(0.0, 0.5) * self.b11
    }

    /// Largest coefficient magnitude; the relative scale of zero tests.
    pub fn scale(&self) -> f64 {
        [self.b20, self.b11, self.b02, self.b10, self.b01, self.b00]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Value of the full Weyl symbol at `(x, ξ)`.
    pub fn at(&self, x: Complex64, xi: Complex64) -> Complex64 {
        self.b20 * xi * xi
            + (self.b11 * x + self.b10) * xi
            + self.b02 * x * x
            + self.b01 * x
            + self.full_const()
    }

    pub fn conjugated(&self) -> Self {
        Self {
            b20: self.b20.conj(),
            b11: self.b11.conj(),
            b02: self.b02.conj(),
            b10: self.b10.conj(),
            b01: self.b01.conj(),
            b00: self.b00.conj(),
            theta: self.theta,
        }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            b20: c * self.b20,
            b11: c * self.b11,
            b02: c * self.b02,
            b10: c * self.b10,
            b01: c * self.b01,
            b00: c * self.b00,
            theta: self.theta,
        }
    }
}

/// Weyl symbol of the source operator; `b_kj = a_kj` with the `(i/2) b11`
/// correction carried separately in [`WeylSymbol::full_const`].
pub fn weyl_symbol(s: &CoeffTable) -> WeylSymbol {
    WeylSymbol {
        b20: s.a20,
        b11: s.a11,
        b02: s.a02,
        b10: s.a10,
        b01: s.a01,
        b00: s.a00,
        theta: 0.0,
    }
}

/// Compose the full symbol with the shear `χ(x, ξ) = (x + θξ, ξ)`.
///
/// The quadratic block maps to `(b20 + θb11 + θ²b02, b11 + 2θb02, b02)`, the
/// linear block to `(b10 + θb01, b01)`, and the full constant is preserved;
/// the stored `b00` absorbs the change of the `(i/2) b11` correction.
pub fn symplectic_shift(b: &WeylSymbol, theta: f64) -> WeylSymbol {
    let full = b.full_const();
    let new_b11 = b.b11 + 2.0 * theta * b.b02;
    WeylSymbol {
        b20: b.b20 + theta * b.b11 + theta * theta * b.b02,
        b11: new_b11,
        b02: b.b02,
        b10: b.b10 + theta * b.b01,
        b01: b.b01,
        b00: full - c64(0.0, 0.5) * new_b11,
        theta: b.theta + theta,
    }
}

/// Smallest `θ ∈ {0, 1, 2}` making the leading coefficient of the shifted
/// symbol nonzero. A nonzero quadratic in `θ` has at most two roots, so one
/// of the three integers always works.
pub fn choose_theta(b: &WeylSymbol) -> Result<f64> {
    let scale = b.b20.norm() + b.b11.norm() + b.b02.norm();
    if scale <= 0.0 {
        return Err(Error::Order("quadratic part of the symbol vanishes".into()));
    }
    for theta in [0.0, 1.0, 2.0] {
        let lead = b.b20 + theta * b.b11 + theta * theta * b.b02;
        if lead.norm() > ZERO_TOL * scale {
            return Ok(theta);
        }
    }
    Err(Error::Order(
        "no θ in {0, 1, 2} gives a nonzero leading coefficient".into(),
    ))
}

/// Discriminant case of the shifted symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeltaCase {
    /// `Δ₂ ≠ 0`: Hermite–Weber solutions.
    D2Nonzero,
    /// `Δ₂ = 0 ≠ Δ₁`: Airy solutions.
    D1Nonzero,
    /// `Δ₂ = Δ₁ = 0`: exponential / linear solutions.
    AllZeroQuad,
}

/// `Δ₂ = b11² − 4 b20 b02`, `Δ₁ = 2 b11 b10 − 4 b20 b01`,
/// `Δ₀ = b10² − 4 b20 b00 − 2i b20 b11`, plus the spectral parameter
/// `λ = (1/8)(−Δ₂/b20²)^{−3/2}(Δ₁² − 4Δ₂Δ₀)/b20⁴` defined when `Δ₂ ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discriminants {
    pub d2: Complex64,
    pub d1: Complex64,
    pub d0: Complex64,
    pub lambda: Option<Complex64>,
    pub case: DeltaCase,
}

/// Compute the discriminants of a shifted symbol (`b20 ≠ 0` required).
pub fn discriminants(b: &WeylSymbol) -> Result<Discriminants> {
    let scale = b.scale();
    if b.b20.norm() <= ZERO_TOL * scale.max(1.0) {
        return Err(Error::ShiftRequired);
    }
    let d2 = b.b11 * b.b11 - 4.0 * b.b20 * b.b02;
    let d1 = 2.0 * b.b11 * b.b10 - 4.0 * b.b20 * b.b01;
    let d0 = b.b10 * b.b10 - 4.0 * b.b20 * b.full_const();
    let tol = ZERO_TOL * scale.powi(2).max(1.0);
    let case = if d2.norm() > tol {
        DeltaCase::D2Nonzero
    } else if d1.norm() > tol {
        DeltaCase::D1Nonzero
    } else {
        DeltaCase::AllZeroQuad
    };
    let lambda = if case == DeltaCase::D2Nonzero {
        let b20_2 = b.b20 * b.b20;
        let ratio = cpow(-d2 / b20_2, c64(-1.5, 0.0))?;
        Some(0.125 * ratio * (d1 * d1 - 4.0 * d2 * d0) / (b20_2 * b20_2))
    } else {
        None
    };
    Ok(Discriminants {
        d2,
        d1,
        d0,
        lambda,
        case,
    })
}

/// Root label for `Ξ±` and `Σ±`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Root {
    Plus,
    Minus,
}

impl Root {
    #[inline]
    pub fn sign(self) -> f64 {
        match self {
            Root::Plus => 1.0,
            Root::Minus => -1.0,
        }
    }
}

/// The branch datum `σ(w)·w^{1/2}` entering every `Ξ`/`Σ` case; the limit
/// value `0` is returned at `w = 0`, where `σ` alone is undefined but the
/// product is not.
pub fn signed_root(w: Complex64) -> Result<Complex64> {
    if w.norm() == 0.0 {
        return Ok(c64(0.0, 0.0));
    }
    Ok(sigma(w)? as f64 * cpow(w, c64(0.5, 0.0))?)
}

/// Branch-resolved complex roots `Ξ±(x)` of the shifted Weyl symbol,
/// evaluated pointwise; fractional powers go through the principal branch
/// factor by factor.
pub fn xi_pm(b: &WeylSymbol, d: &Discriminants, x: f64) -> Result<(Complex64, Complex64)> {
    let linear = b.b11 / b.b20 * x + b.b10 / b.b20;
    let b20_2 = b.b20 * b.b20;
    let branch = match d.case {
        DeltaCase::D2Nonzero => {
            if x == 0.0 {
                return Err(Error::Domain(
                    "Ξ± branch form needs x ≠ 0 in the Δ₂ ≠ 0 case".into(),
                ));
            }
            let inner = 1.0 + d.d1 / (d.d2 * x) + d.d0 / (d.d2 * x * x);
            signed_root(d.d2 / b20_2)? * x * cpow(inner, c64(0.5, 0.0))?
        }
        DeltaCase::D1Nonzero => {
            if x == 0.0 {
                return Err(Error::Domain(
                    "Ξ± branch form needs x ≠ 0 in the Δ₂ = 0 ≠ Δ₁ case".into(),
                ));
            }
            let inner = 1.0 + d.d0 / (d.d1 * x);
            signed_root(d.d1 / b20_2)? * cpow_real(x, 0.5)? * cpow(inner, c64(0.5, 0.0))?
        }
        DeltaCase::AllZeroQuad => signed_root(d.d0 / b20_2)?,
    };
    let xi_plus = -0.5 * (linear + branch);
    let xi_minus = -0.5 * (linear - branch);
    Ok((xi_plus, xi_minus))
}

/// Phase functions `Σ±(x)`; polynomial in the `Δ₂ ≠ 0` and degenerate cases,
/// fractional powers factor by factor otherwise.
pub fn sigma_pm(b: &WeylSymbol, d: &Discriminants, x: f64) -> Result<(Complex64, Complex64)> {
    let quad = b.b11 / b.b20 * x * x + 2.0 * b.b10 / b.b20 * x;
    let b20_2 = b.b20 * b.b20;
    let branch = match d.case {
        DeltaCase::D2Nonzero => {
            // x²(1 + Δ₁/(2Δ₂x))² = (x + Δ₁/(2Δ₂))², safe at x = 0.
            let shifted = x + d.d1 / (2.0 * d.d2);
            signed_root(d.d2 / b20_2)? * shifted * shifted
        }
        DeltaCase::D1Nonzero => {
            if x == 0.0 {
                return Err(Error::Domain(
                    "Σ± needs x ≠ 0 in the Δ₂ = 0 ≠ Δ₁ case".into(),
                ));
            }
            let inner = 1.0 + d.d0 / (d.d1 * x);
            4.0 / 3.0
                * signed_root(d.d1 / b20_2)?
                * cpow_real(x, 1.5)?
                * cpow(inner, c64(1.5, 0.0))?
        }
        DeltaCase::AllZeroQuad => 2.0 * signed_root(d.d0 / b20_2)? * x,
    };
    let sigma_plus = -0.25 * (quad + branch);
    let sigma_minus = -0.25 * (quad - branch);
    Ok((sigma_plus, sigma_minus))
}

/// Derivatives `Σ±′(x)` in the two cases where they are elementary (the
/// Airy case differentiates the basis directly instead).
pub fn sigma_pm_deriv(b: &WeylSymbol, d: &Discriminants, x: f64) -> Result<(Complex64, Complex64)> {
    let lin = 2.0 * b.b11 / b.b20 * x + 2.0 * b.b10 / b.b20;
    let b20_2 = b.b20 * b.b20;
    let branch = match d.case {
        DeltaCase::AllZeroQuad => 2.0 * signed_root(d.d0 / b20_2)?,
        DeltaCase::D2Nonzero => {
            2.0 * signed_root(d.d2 / b20_2)? * (x + d.d1 / (2.0 * d.d2))
        }
        DeltaCase::D1Nonzero => {
            return Err(Error::Case(
                "Σ±′ is not provided in the Airy case".into(),
            ))
        }
    };
    Ok((-0.25 * (lin + branch), -0.25 * (lin - branch)))
}
