//! Analytic solution bases of `Bu = 0` for the three discriminant cases, and
//! the explicit solution of the fully degenerate case.

use num_complex::Complex64;

use super::{sigma_pm, DeltaCase, Discriminants, WeylSymbol, ZERO_TOL};
use crate::branchcut::cpow;
use crate::quadrature::integrate;
use crate::specfun::{airy_ai, airy_ai_prime, airy_bi, airy_bi_prime};
use crate::weber::weber_combo_stable;
use crate::{c64, Error, Result};

/// Case-resolved parametrization of the two independent analytic solutions
/// `u₁`, `u₂` of `Bu = 0`. Immutable after construction.
#[derive(Debug, Clone)]
pub enum SolutionBasis {
    /// `Δ₂ ≠ 0`: `u_j = e^{−ih(x)} w_j(μ(x + s))` with
    /// `μ = (−Δ₂/4b20²)^{1/4}`, `s = Δ₁/(2Δ₂)`.
    HermiteWeber {
        b: WeylSymbol,
        d: Discriminants,
        mu: Complex64,
        shift: Complex64,
        lambda: Complex64,
    },
    /// `Δ₂ = 0 ≠ Δ₁`: `u₁ = e^{−ih} Ai(ν(x + s))`, `u₂` with `Bi`,
    /// `ν = (−Δ₁/4b20²)^{1/3}`, `s = Δ₀/Δ₁`.
    Airy {
        b: WeylSymbol,
        d: Discriminants,
        nu: Complex64,
        shift: Complex64,
    },
    /// `Δ₂ = Δ₁ = 0`: `u = c₁ e^{iΣ−} + c₂ e^{iΣ+}`, degenerating to
    /// `(c₁ + c₂ x) e^{iΣ}` when also `Δ₀ = 0`.
    Exponential {
        b: WeylSymbol,
        d: Discriminants,
        linear: bool,
    },
}

impl SolutionBasis {
    pub fn symbol(&self) -> &WeylSymbol {
        match self {
            SolutionBasis::HermiteWeber { b, .. } => b,
            SolutionBasis::Airy { b, .. } => b,
            SolutionBasis::Exponential { b, .. } => b,
        }
    }

    pub fn discriminants(&self) -> &Discriminants {
        match self {
            SolutionBasis::HermiteWeber { d, .. } => d,
            SolutionBasis::Airy { d, .. } => d,
            SolutionBasis::Exponential { d, .. } => d,
        }
    }
}

/// Gaussian exponent `h(x) = (b11 x² + 2 b10 x)/(4 b20)` of the prefactor
/// `e^{−i h(x)}` common to all cases.
fn gaussian_exponent(b: &WeylSymbol, x: f64) -> Complex64 {
    (b.b11 * x * x + 2.0 * b.b10 * x) / (4.0 * b.b20)
}

fn gaussian_exponent_deriv(b: &WeylSymbol, x: f64) -> Complex64 {
    (b.b11 * x + b.b10) / (2.0 * b.b20)
}

/// Build the case-appropriate solution basis of `Bu = 0` (`b20 ≠ 0`).
pub fn solution_basis(b: &WeylSymbol) -> Result<SolutionBasis> {
    let d = super::discriminants(b)?;
    let b20_2 = b.b20 * b.b20;
    match d.case {
        DeltaCase::D2Nonzero => Ok(SolutionBasis::HermiteWeber {
            b: *b,
            d,
            mu: cpow(-d.d2 / (4.0 * b20_2), c64(0.25, 0.0))?,
            shift: d.d1 / (2.0 * d.d2),
            lambda: d.lambda.expect("λ defined when Δ₂ ≠ 0"),
        }),
        DeltaCase::D1Nonzero => Ok(SolutionBasis::Airy {
            b: *b,
            d,
            nu: cpow(-d.d1 / (4.0 * b20_2), c64(1.0 / 3.0, 0.0))?,
            shift: d.d0 / d.d1,
        }),
        DeltaCase::AllZeroQuad => {
            let linear = d.d0.norm() <= ZERO_TOL * b.scale().powi(2).max(1.0);
            Ok(SolutionBasis::Exponential { b: *b, d, linear })
        }
    }
}

/// `c₁u₁(x) + c₂u₂(x)`.
pub fn eval_solution(
    basis: &SolutionBasis,
    c1: Complex64,
    c2: Complex64,
    x: f64,
) -> Result<Complex64> {
    eval_solution_with_deriv(basis, c1, c2, x).map(|(u, _)| u)
}

/// `(u, u′)` at `x` for `u = c₁u₁ + c₂u₂`, differentiating the basis
/// analytically (series/`Θ`-route derivatives, not finite differences).
pub fn eval_solution_with_deriv(
    basis: &SolutionBasis,
    c1: Complex64,
    c2: Complex64,
    x: f64,
) -> Result<(Complex64, Complex64)> {
    let b = basis.symbol();
    let h = gaussian_exponent(b, x);
    let hp = gaussian_exponent_deriv(b, x);
    let i = c64(0.0, 1.0);
    let gauss = (-i * h).exp();
    match basis {
        SolutionBasis::HermiteWeber {
            mu, shift, lambda, ..
        } => {
            let z = mu * (x + shift);
            let (w, wp) = weber_combo_stable(*lambda, c1, c2, z)?;
            Ok((gauss * w, gauss * (-i * hp * w + mu * wp)))
        }
        SolutionBasis::Airy { nu, shift, .. } => {
            let z = nu * (x + shift);
            let v = c1 * airy_ai(z) + c2 * airy_bi(z);
            let vp = c1 * airy_ai_prime(z) + c2 * airy_bi_prime(z);
            Ok((gauss * v, gauss * (-i * hp * v + nu * vp)))
        }
        SolutionBasis::Exponential { b, d, linear } => {
            let (sp, sm) = sigma_pm(b, d, x)?;
            let (dsp, dsm) = super::sigma_pm_deriv(b, d, x)?;
            if *linear {
                // Σ+ = Σ− when Δ₀ = 0.
                let e = (i * sp).exp();
                let u = (c1 + c2 * x) * e;
                let up = (c2 + (c1 + c2 * x) * i * dsp) * e;
                Ok((u, up))
            } else {
                let ep = (i * sp).exp();
                let em = (i * sm).exp();
                let u = c1 * em + c2 * ep;
                let up = c1 * i * dsm * em + c2 * i * dsp * ep;
                Ok((u, up))
            }
        }
    }
}

/// Explicit solution of `Bu = f` in the fully degenerate case
/// `Δ₂ = Δ₁ = Δ₀ = 0`:
/// `u(x) = −e^{−ih(x)} { (1/b20) ∫₀ˣ (x−t) e^{ih(t)} f(t) dt + c₀x + c₁ }`,
/// sampled on `grid` with the integral done by adaptive quadrature.
pub fn explicit_solve_degenerate(
    b: &WeylSymbol,
    f: &dyn Fn(f64) -> Complex64,
    c0: Complex64,
    c1: Complex64,
    grid: &[f64],
) -> Result<Vec<Complex64>> {
    let d = super::discriminants(b)?;
    let scale = b.scale().powi(2).max(1.0);
    if d.case != DeltaCase::AllZeroQuad || d.d0.norm() > ZERO_TOL * scale {
        return Err(Error::Case(format!(
            "explicit solve needs Δ₂ = Δ₁ = Δ₀ = 0, got case {:?} with |Δ₀| = {:.3e}",
            d.case,
            d.d0.norm()
        )));
    }
    let i = c64(0.0, 1.0);
    let mut out = Vec::with_capacity(grid.len());
    for &x in grid {
        let mut integrand = |t: f64| (x - t) * (i * gaussian_exponent(b, t)).exp() * f(t);
        let integral = if x >= 0.0 {
            integrate(&mut integrand, 0.0, x.max(1e-300), 1e-11, 1e-13)?
        } else {
            -integrate(&mut integrand, x, 0.0, 1e-11, 1e-13)?
        };
        let u = -(-i * gaussian_exponent(b, x)).exp() * (integral / b.b20 + c0 * x + c1);
        out.push(u);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{weyl_symbol, CoeffTable};

    #[test]
    fn harmonic_oscillator_basis() {
        let b = weyl_symbol(&CoeffTable::harmonic_oscillator(c64(0.0, 0.0)));
        let basis = solution_basis(&b).unwrap();
        match &basis {
            SolutionBasis::HermiteWeber { mu, shift, lambda, .. } => {
                assert!((mu - c64(1.0, 0.0)).norm() < 1e-14);
                assert!(shift.norm() < 1e-14);
                assert!(lambda.norm() < 1e-14);
            }
            other => panic!("wrong case: {other:?}"),
        }
        let (u, up) = eval_solution_with_deriv(&basis, c64(1.0, 0.0), c64(0.0, 0.0), 0.0).unwrap();
        assert!((u - c64(1.0, 0.0)).norm() < 1e-14);
        assert!(up.norm() < 1e-14);
        // u₁ = e^{−x²/2} Φ(1/4, 1/2; x²) at λ = 0.
        let (u, _) = eval_solution_with_deriv(&basis, c64(1.0, 0.0), c64(0.0, 0.0), 1.3).unwrap();
        assert!(u.im.abs() < 1e-14 && u.re > 0.0);
    }

    #[test]
    fn airy_argument_rotation() {
        // D² − M: argument factor is the principal cube root of −1.
        let b = weyl_symbol(&CoeffTable::new(
            c64(1.0, 0.0),
            c64(0.0, 0.0),
            c64(0.0, 0.0),
            c64(0.0, 0.0),
            c64(-1.0, 0.0),
            c64(0.0, 0.0),
        ));
        let basis = solution_basis(&b).unwrap();
        match &basis {
            SolutionBasis::Airy { nu, shift, .. } => {
                let expect = cpow(c64(-1.0, 0.0), c64(1.0 / 3.0, 0.0)).unwrap();
                assert!((nu - expect).norm() < 1e-14);
                assert!(shift.norm() < 1e-14);
            }
            other => panic!("wrong case: {other:?}"),
        }
    }

    #[test]
    fn exponential_case_values() {
        // D² + 1: u = c₁ e^{x} + c₂ e^{−x}; at x = 0 with (1, 1) the value is 2.
        let b = weyl_symbol(&CoeffTable::constant_coefficient(
            c64(1.0, 0.0),
            c64(0.0, 0.0),
            c64(1.0, 0.0),
        ));
        let basis = solution_basis(&b).unwrap();
        let u = eval_solution(&basis, c64(1.0, 0.0), c64(1.0, 0.0), 0.0).unwrap();
        assert!((u - c64(2.0, 0.0)).norm() < 1e-14);
        let u = eval_solution(&basis, c64(1.0, 0.0), c64(0.0, 0.0), 1.0).unwrap();
        assert!((u - c64(1.0_f64.exp(), 0.0)).norm() < 1e-13);
        // Zero combination vanishes everywhere.
        let u = eval_solution(&basis, c64(0.0, 0.0), c64(0.0, 0.0), 0.77).unwrap();
        assert_eq!(u, c64(0.0, 0.0));
    }

    #[test]
    fn degenerate_explicit_solution() {
        // b = D²: f = 0, c₀ = 1, c₁ = 0 gives u = −x; f = 1 gives −x²/2.
        let b = weyl_symbol(&CoeffTable::constant_coefficient(
            c64(1.0, 0.0),
            c64(0.0, 0.0),
            c64(0.0, 0.0),
        ));
        let grid: Vec<f64> = (0..21).map(|k| -2.0 + 0.2 * k as f64).collect();
        let zero = |_: f64| c64(0.0, 0.0);
        let u = explicit_solve_degenerate(&b, &zero, c64(1.0, 0.0), c64(0.0, 0.0), &grid).unwrap();
        for (x, v) in grid.iter().zip(&u) {
            assert!((v - c64(-x, 0.0)).norm() < 1e-12, "x = {x}");
        }
        let one = |_: f64| c64(1.0, 0.0);
        let u = explicit_solve_degenerate(&b, &one, c64(0.0, 0.0), c64(0.0, 0.0), &grid).unwrap();
        for (x, v) in grid.iter().zip(&u) {
            assert!((v - c64(-x * x / 2.0, 0.0)).norm() < 1e-10, "x = {x}: {v}");
        }
    }

    #[test]
    fn degenerate_needs_right_case() {
        let b = weyl_symbol(&CoeffTable::harmonic_oscillator(c64(0.0, 0.0)));
        let zero = |_: f64| c64(0.0, 0.0);
        assert!(matches!(
            explicit_solve_degenerate(&b, &zero, c64(0.0, 0.0), c64(0.0, 0.0), &[0.0]),
            Err(Error::Case(_))
        ));
    }

    #[test]
    fn degenerate_envelope_without_forcing() {
        // Nontrivial Gaussian-phase coefficients: with f = 0, c₀ = 0, c₁ = 1
        // the solution is −e^{−ih(x)} and |u| = e^{−Im h}.
        let b20 = c64(1.0, 0.0);
        let b11 = c64(0.0, 1.0);
        let b10 = c64(1.0, 0.5);
        let b = WeylSymbol {
            b20,
            b11,
            b02: b11 * b11 / (4.0 * b20),
            b10,
            b01: b11 * b10 / (2.0 * b20),
            b00: (b10 * b10 - c64(0.0, 2.0) * b20 * b11) / (4.0 * b20),
            theta: 0.0,
        };
        let d = crate::operators::discriminants(&b).unwrap();
        assert_eq!(d.case, DeltaCase::AllZeroQuad);
        assert!(d.d0.norm() < 1e-12);
        let zero = |_: f64| c64(0.0, 0.0);
        let grid = [0.5, 1.0, -1.5];
        let u = explicit_solve_degenerate(&b, &zero, c64(0.0, 0.0), c64(1.0, 0.0), &grid).unwrap();
        for (x, v) in grid.iter().zip(&u) {
            let h = (b11 * x * x + 2.0 * b10 * x) / (4.0 * b20);
            let expect = ((c64(0.0, -1.0)) * h).exp().norm();
            assert!((v.norm() - expect).abs() < 1e-12 * expect, "x = {x}");
        }
    }
}
