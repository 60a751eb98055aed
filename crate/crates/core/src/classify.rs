//! The decision engine: growth signatures of `Im(xΞ±)` at each end, the
//! Schwartz trichotomy of `e^{ixΞ±}`, global regularity of the source, and
//! regularity of the twisted operator.
//!
//! A source `B` is globally regular iff both `e^{ixΞ±}` lie in
//! `S ∪ (C^∞ \ S′)`, and regular-and-injective iff additionally one of three
//! conditions holds: both roots escape `S′`; or `Ξ−` escapes while `Ξ+` is
//! Schwartz with `Δ₂ ≠ 0` and `λ` off the odd-positive lattice; or the same
//! pattern with `Δ₂ = 0`. The twisted operator is globally regular exactly
//! when its source is regular and injective.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::operators::{
    choose_theta, discriminants, signed_root, source_of, symplectic_shift, weyl_symbol, CoeffTable,
    DeltaCase, Discriminants, Root, TwistedFrame, WeylSymbol,
};
use crate::{c64, Result};

/// Default relative zero-test for imaginary parts of growth coefficients.
pub const TOL_ZERO: f64 = 1e-12;
/// Default tolerance for `λ` against the odd-positive lattice.
pub const TOL_LAMBDA: f64 = 1e-9;

/// Which end of the real line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum End {
    Plus,
    Minus,
}

/// Leading terms of `x Ξ(x)` at one end: pairs `(exponent, coefficient)` with
/// strictly decreasing exponents in `{2, 3/2, 1, 1/2}`. Coefficients are the
/// effective ones after the branch correction at that end, so that
/// `x Ξ(x) ≈ Σ cᵢ |x|^{eᵢ}`.
#[derive(Debug, Clone)]
pub struct GrowthSignature {
    pub end: End,
    pub terms: Vec<(f64, Complex64)>,
}

/// Limit behaviour of `Im(xΞ)` at one end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndBehavior {
    PlusInf,
    MinusInf,
    Bounded,
}

/// The Schwartz trichotomy of `e^{ixΞ}` (note `|e^{ixΞ}| = e^{−Im(xΞ)}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SchwartzClass {
    /// Rapid decay at both ends.
    InS,
    /// Temperate but not rapidly decaying.
    InSprimeNotS,
    /// Super-polynomial growth at some end.
    NotInSprime,
}

/// Leading terms of `x Ξ_root(x)` at `end`, with the branch corrections for
/// the negative end applied: `x^{3/2} ↦ −i|x|^{3/2}`, `x^{1/2} ↦ i|x|^{1/2}`,
/// `x ↦ −|x|`, `x² ↦ |x|²`.
pub fn growth_signature(
    b: &WeylSymbol,
    d: &Discriminants,
    root: Root,
    end: End,
) -> Result<GrowthSignature> {
    let s = root.sign();
    let b20_2 = b.b20 * b.b20;
    let raw: Vec<(f64, Complex64)> = match d.case {
        DeltaCase::D2Nonzero => {
            let r = signed_root(d.d2 / b20_2)?;
            vec![
                (2.0, -0.5 * (b.b11 / b.b20 + s * r)),
                (1.0, -0.5 * (b.b10 / b.b20 + s * 0.5 * r * d.d1 / d.d2)),
            ]
        }
        DeltaCase::D1Nonzero => {
            let r = signed_root(d.d1 / b20_2)?;
            vec![
                (2.0, -0.5 * b.b11 / b.b20),
                (1.5, -s * 0.5 * r),
                (1.0, -0.5 * b.b10 / b.b20),
                (0.5, -s * 0.25 * r * d.d0 / d.d1),
            ]
        }
        DeltaCase::AllZeroQuad => {
            let r = signed_root(d.d0 / b20_2)?;
            vec![
                (2.0, -0.5 * b.b11 / b.b20),
                (1.0, -0.5 * (b.b10 / b.b20 + s * r)),
            ]
        }
    };
    let terms = raw
        .into_iter()
        .map(|(e, c)| {
            let corrected = match end {
                End::Plus => c,
                End::Minus => {
                    if e == 2.0 {
                        c
                    } else if e == 1.0 {
                        -c
                    } else if e == 1.5 {
                        c * c64(0.0, -1.0)
                    } else {
                        c * c64(0.0, 1.0)
                    }
                }
            };
            (e, corrected)
        })
        .collect();
    Ok(GrowthSignature { end, terms })
}

/// Decide the limit of `Im(xΞ)` from the first imaginary part that clears the
/// tolerance, scanning in decreasing exponent order. Coefficients within a
/// factor 10 of the threshold (on either side) are reported as borderline.
pub fn end_behavior(sig: &GrowthSignature, tol: f64) -> (EndBehavior, Vec<String>) {
    let scale = sig
        .terms
        .iter()
        .map(|(_, c)| c.norm())
        .fold(1.0_f64, f64::max);
    let mut warnings = Vec::new();
    for &(e, c) in &sig.terms {
        let im = c.im;
        let rel = im.abs() / scale;
        if rel > 0.1 * tol && rel <= 10.0 * tol {
            warnings.push(format!(
                "borderline imaginary part {im:.3e} on the |x|^{e} term (scale {scale:.3e})"
            ));
        }
        if rel > tol {
            return (
                if im > 0.0 {
                    EndBehavior::PlusInf
                } else {
                    EndBehavior::MinusInf
                },
                warnings,
            );
        }
    }
    (EndBehavior::Bounded, warnings)
}

/// Combined Schwartz class of `e^{ixΞ_root}` from both end behaviours.
pub fn schwartz_class(
    b: &WeylSymbol,
    d: &Discriminants,
    root: Root,
    tol: f64,
) -> Result<(SchwartzClass, [EndBehavior; 2], Vec<String>)> {
    let sig_p = growth_signature(b, d, root, End::Plus)?;
    let sig_m = growth_signature(b, d, root, End::Minus)?;
    let (bp, mut wp) = end_behavior(&sig_p, tol);
    let (bm, wm) = end_behavior(&sig_m, tol);
    wp.extend(wm);
    let class = if bp == EndBehavior::MinusInf || bm == EndBehavior::MinusInf {
        SchwartzClass::NotInSprime
    } else if bp == EndBehavior::PlusInf && bm == EndBehavior::PlusInf {
        SchwartzClass::InS
    } else {
        // Bounded at both ends, or decaying at one end and bounded at the
        // other: polynomially bounded modulus, not Schwartz.
        SchwartzClass::InSprimeNotS
    };
    Ok((class, [bp, bm], wp))
}

/// `λ` against the lattice `{1 + 2n : n ∈ Z_+}`.
pub fn lambda_is_odd_positive(lambda: Complex64, tol: f64) -> bool {
    if lambda.im.abs() > tol {
        return false;
    }
    let re = lambda.re;
    if re < 1.0 - tol {
        return false;
    }
    let m = (re - 1.0) / 2.0;
    (m - m.round()).abs() * 2.0 <= tol
}

/// Tolerances of the classifier, overridable from the CLI.
#[derive(Debug, Clone, Copy)]
pub struct ClassifyTols {
    pub zero: f64,
    pub lambda: f64,
}

impl Default for ClassifyTols {
    fn default() -> Self {
        Self {
            zero: TOL_ZERO,
            lambda: TOL_LAMBDA,
        }
    }
}

/// Per-root classification result.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootReport {
    pub root: Root,
    pub class: SchwartzClass,
    /// End behaviours at `+∞` and `−∞`.
    pub ends: [EndBehavior; 2],
}

/// Classification of a source operator through its shifted Weyl symbol.
#[derive(Debug, Clone)]
pub struct SourceClassification {
    pub discriminants: Discriminants,
    pub roots: [RootReport; 2],
    pub lambda_odd_positive: bool,
    /// Which of the three regular-and-injective conditions matched.
    pub matched_condition: Option<u32>,
    pub regular: bool,
    /// `None` when indeterminate (anomalous mirrored pattern).
    pub injective: Option<bool>,
    pub warnings: Vec<String>,
}

/// Classify the source with symbol `b` (`b20 ≠ 0`): global regularity via the
/// Schwartz trichotomy of both roots, injectivity via the matched condition.
pub fn classify_source(b: &WeylSymbol, tols: &ClassifyTols) -> Result<SourceClassification> {
    let d = discriminants(b)?;
    let (class_p, ends_p, mut warnings) = schwartz_class(b, &d, Root::Plus, tols.zero)?;
    let (class_m, ends_m, wm) = schwartz_class(b, &d, Root::Minus, tols.zero)?;
    warnings.extend(wm);

    let lambda_odd = d
        .lambda
        .map(|l| {
            let hit = lambda_is_odd_positive(l, tols.lambda);
            let near = lambda_is_odd_positive(l, 10.0 * tols.lambda);
            if near != lambda_is_odd_positive(l, 0.1 * tols.lambda) {
                warnings.push(format!("λ = {l} is borderline against the odd lattice"));
            }
            hit
        })
        .unwrap_or(false);

    let ok = |c: SchwartzClass| matches!(c, SchwartzClass::InS | SchwartzClass::NotInSprime);
    let regular = ok(class_p) && ok(class_m);

    let cond_832 =
        class_p == SchwartzClass::NotInSprime && class_m == SchwartzClass::NotInSprime;
    let schwartz_split =
        class_m == SchwartzClass::NotInSprime && class_p == SchwartzClass::InS;
    let cond_833 = schwartz_split && d.case == DeltaCase::D2Nonzero && !lambda_odd;
    let cond_834 = schwartz_split && d.case != DeltaCase::D2Nonzero;
    let matched_condition = if cond_832 {
        Some(832)
    } else if cond_833 {
        Some(833)
    } else if cond_834 {
        Some(834)
    } else {
        None
    };

    let mirrored =
        class_p == SchwartzClass::NotInSprime && class_m == SchwartzClass::InS;
    let injective = if mirrored {
        warnings.push(
            "anomaly: mirrored Schwartz pattern (Ξ+ ∉ S′, Ξ− ∈ S); verdict withheld".into(),
        );
        None
    } else if regular {
        Some(matched_condition.is_some())
    } else {
        None
    };

    Ok(SourceClassification {
        discriminants: d,
        roots: [
            RootReport {
                root: Root::Plus,
                class: class_p,
                ends: ends_p,
            },
            RootReport {
                root: Root::Minus,
                class: class_m,
                ends: ends_m,
            },
        ],
        lambda_odd_positive: lambda_odd,
        matched_condition,
        regular,
        injective,
        warnings,
    })
}

/// Full verdict for a twisted operator (or a bare source when no frame is
/// involved).
#[derive(Debug, Clone)]
pub struct Verdict {
    pub theta_used: f64,
    pub symbol: WeylSymbol,
    pub discriminants: Discriminants,
    pub roots: [RootReport; 2],
    pub lambda_odd_positive: bool,
    pub matched_condition: Option<u32>,
    pub source_regular: bool,
    pub source_injective: Option<bool>,
    pub twisted_regular: bool,
    pub warnings: Vec<String>,
}

/// Classify a twisted operator: source → Weyl symbol → shear (chosen or
/// caller-provided `θ`) → discriminants → Schwartz trichotomy. The twisted
/// operator is globally regular exactly when a matched condition exists.
pub fn classify_twisted(
    table: &CoeffTable,
    frame: &TwistedFrame,
    theta: Option<f64>,
    tols: &ClassifyTols,
) -> Result<Verdict> {
    table.order2()?;
    let source = source_of(table, frame)?;
    classify_source_table(&source, theta, tols)
}

/// Classify a bare source table (no frame): shear, then decide.
pub fn classify_source_table(
    table: &CoeffTable,
    theta: Option<f64>,
    tols: &ClassifyTols,
) -> Result<Verdict> {
    table.order2()?;
    let b0 = weyl_symbol(table);
    let theta_used = match theta {
        Some(t) => t,
        None => choose_theta(&b0)?,
    };
    let b = symplectic_shift(&b0, theta_used);
    let sc = classify_source(&b, tols)?;
    Ok(Verdict {
        theta_used,
        symbol: b,
        discriminants: sc.discriminants,
        roots: sc.roots.clone(),
        lambda_odd_positive: sc.lambda_odd_positive,
        matched_condition: sc.matched_condition,
        source_regular: sc.regular,
        source_injective: sc.injective,
        twisted_regular: sc.matched_condition.is_some(),
        warnings: sc.warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn default_tols() -> ClassifyTols {
        ClassifyTols::default()
    }

    fn ho(shift: f64) -> WeylSymbol {
        weyl_symbol(&CoeffTable::harmonic_oscillator(c64(shift, 0.0)))
    }

    fn constant(a00: Complex64) -> WeylSymbol {
        weyl_symbol(&CoeffTable::constant_coefficient(
            c64(1.0, 0.0),
            c64(0.0, 0.0),
            a00,
        ))
    }

    #[test]
    fn harmonic_oscillator_signature() {
        let b = ho(0.0);
        let d = discriminants(&b).unwrap();
        let sig = growth_signature(&b, &d, Root::Plus, End::Plus).unwrap();
        assert_eq!(sig.terms.len(), 2);
        assert!((sig.terms[0].1 - c64(0.0, 1.0)).norm() < 1e-14);
        assert!(sig.terms[1].1.norm() < 1e-14);
    }

    #[test]
    fn b2_signature() {
        let b2 = weyl_symbol(&CoeffTable::new(
            c64(1.0, 0.0),
            c64(0.0, 0.0),
            c64(-1.0, 0.0),
            c64(0.0, 1.0),
            c64(0.0, 0.0),
            c64(0.0, 0.0),
        ));
        let d = discriminants(&b2).unwrap();
        let sig = growth_signature(&b2, &d, Root::Plus, End::Plus).unwrap();
        assert!((sig.terms[0].1 - c64(-1.0, 0.0)).norm() < 1e-14);
        assert!((sig.terms[1].1 - c64(0.0, -0.5)).norm() < 1e-14);
        let (beh, _) = end_behavior(&sig, TOL_ZERO);
        assert_eq!(beh, EndBehavior::MinusInf);
    }

    #[test]
    fn airy_case_branch_correction() {
        // D² − M: root −, end −: the |x|^{3/2} coefficient becomes −i.
        let b = weyl_symbol(&CoeffTable::new(
            c64(1.0, 0.0),
            c64(0.0, 0.0),
            c64(0.0, 0.0),
            c64(0.0, 0.0),
            c64(-1.0, 0.0),
            c64(0.0, 0.0),
        ));
        let d = discriminants(&b).unwrap();
        let sig = growth_signature(&b, &d, Root::Minus, End::Minus).unwrap();
        let three_half = sig.terms.iter().find(|(e, _)| *e == 1.5).unwrap();
        assert!((three_half.1 - c64(0.0, -1.0)).norm() < 1e-14, "{:?}", sig.terms);
    }

    #[test]
    fn end_behavior_cases() {
        let sig = GrowthSignature {
            end: End::Plus,
            terms: vec![(2.0, c64(0.0, 1.0))],
        };
        assert_eq!(end_behavior(&sig, TOL_ZERO).0, EndBehavior::PlusInf);
        let sig = GrowthSignature {
            end: End::Plus,
            terms: vec![(2.0, c64(-1.0, 0.0)), (1.0, c64(0.0, -0.5))],
        };
        assert_eq!(end_behavior(&sig, TOL_ZERO).0, EndBehavior::MinusInf);
        let sig = GrowthSignature {
            end: End::Plus,
            terms: vec![(2.0, c64(3.0, 0.0)), (1.0, c64(-5.0, 0.0))],
        };
        assert_eq!(end_behavior(&sig, TOL_ZERO).0, EndBehavior::Bounded);
    }

    #[test]
    fn schwartz_classes_of_reference_operators() {
        let tol = TOL_ZERO;
        let b = ho(0.0);
        let d = discriminants(&b).unwrap();
        let (cp, _, _) = schwartz_class(&b, &d, Root::Plus, tol).unwrap();
        let (cm, _, _) = schwartz_class(&b, &d, Root::Minus, tol).unwrap();
        assert_eq!(cp, SchwartzClass::InS);
        assert_eq!(cm, SchwartzClass::NotInSprime);

        let b = constant(c64(-1.0, 0.0)); // D² − 1
        let d = discriminants(&b).unwrap();
        for root in [Root::Plus, Root::Minus] {
            let (c, _, _) = schwartz_class(&b, &d, root, tol).unwrap();
            assert_eq!(c, SchwartzClass::InSprimeNotS);
        }

        let b = constant(c64(1.0, 0.0)); // D² + 1
        let d = discriminants(&b).unwrap();
        for root in [Root::Plus, Root::Minus] {
            let (c, _, _) = schwartz_class(&b, &d, root, tol).unwrap();
            assert_eq!(c, SchwartzClass::NotInSprime);
        }
    }

    #[test]
    fn classify_reference_sources() {
        let tols = default_tols();
        // Harmonic oscillator: regular, injective via 833 (λ = 0).
        let sc = classify_source(&ho(0.0), &tols).unwrap();
        assert!(sc.regular);
        assert_eq!(sc.injective, Some(true));
        assert_eq!(sc.matched_condition, Some(833));

        // D² + M² − 1: λ = 1 odd ⇒ regular but not injective.
        let sc = classify_source(&ho(-1.0), &tols).unwrap();
        assert!(sc.regular);
        assert_eq!(sc.injective, Some(false));
        assert_eq!(sc.matched_condition, None);
        assert!(sc.lambda_odd_positive);

        // D² − 1: not regular.
        let sc = classify_source(&constant(c64(-1.0, 0.0)), &tols).unwrap();
        assert!(!sc.regular);
        assert_eq!(sc.injective, None);

        // D² + 1: regular and injective via 832.
        let sc = classify_source(&constant(c64(1.0, 0.0)), &tols).unwrap();
        assert!(sc.regular);
        assert_eq!(sc.matched_condition, Some(832));

        // D² − M + i: the Δ₂ = 0 split — the x^{1/2} term decides at +∞ and
        // the branch-corrected x^{3/2} term at −∞; regular and injective
        // through the third condition.
        let airy_plus_i = weyl_symbol(&CoeffTable::new(
            c64(1.0, 0.0),
            c64(0.0, 0.0),
            c64(0.0, 0.0),
            c64(0.0, 0.0),
            c64(-1.0, 0.0),
            c64(0.0, 1.0),
        ));
        let sc = classify_source(&airy_plus_i, &tols).unwrap();
        assert!(sc.regular);
        assert_eq!(sc.injective, Some(true));
        assert_eq!(sc.matched_condition, Some(834));
    }

    #[test]
    fn eigenvalue_family() {
        let tols = default_tols();
        for &(mu, injective) in &[
            (0.0, true),
            (0.5, true),
            (1.0, false),
            (2.0, true),
            (3.0, false),
            (4.2, true),
            (5.0, false),
        ] {
            let sc = classify_source(&ho(-mu), &tols).unwrap();
            assert!(sc.regular, "μ = {mu}");
            assert_eq!(sc.injective, Some(injective), "μ = {mu}");
        }
    }

    #[test]
    fn twisted_pipeline() {
        let tols = default_tols();
        let frame = TwistedFrame::twisted_laplacian();
        let v = classify_twisted(
            &CoeffTable::harmonic_oscillator(c64(0.0, 0.0)),
            &frame,
            None,
            &tols,
        )
        .unwrap();
        assert!(v.twisted_regular);
        assert_eq!(v.matched_condition, Some(833));
        assert_eq!(v.theta_used, 0.0);

        // Twist of D² + M² − 1: not regular (source not injective).
        let v = classify_twisted(
            &CoeffTable::harmonic_oscillator(c64(-1.0, 0.0)),
            &frame,
            None,
            &tols,
        )
        .unwrap();
        assert!(!v.twisted_regular);
        assert!(v.source_regular);
    }

    #[test]
    fn lambda_lattice() {
        assert!(lambda_is_odd_positive(c64(3.0, 0.0), TOL_LAMBDA));
        assert!(!lambda_is_odd_positive(c64(0.0, 0.0), TOL_LAMBDA));
        assert!(!lambda_is_odd_positive(c64(0.0, 0.25), TOL_LAMBDA));
        assert!(lambda_is_odd_positive(c64(7.0 + 1e-10, 0.0), TOL_LAMBDA));
        assert!(!lambda_is_odd_positive(c64(2.0, 0.0), TOL_LAMBDA));
        assert!(!lambda_is_odd_positive(c64(-1.0, 0.0), TOL_LAMBDA));
    }

    #[test]
    fn adjoint_consistency() {
        // Conjugating all symbol coefficients preserves the regularity flag.
        let tols = default_tols();
        let samples = [
            ho(0.0),
            ho(-1.0),
            constant(c64(1.0, 0.0)),
            constant(c64(-1.0, 0.0)),
            weyl_symbol(&CoeffTable::new(
                c64(1.0, 0.3),
                c64(0.2, -0.8),
                c64(-0.5, 0.1),
                c64(0.0, 1.0),
                c64(0.4, 0.4),
                c64(-0.2, 0.6),
            )),
        ];
        for b in &samples {
            let a = classify_source(b, &tols).unwrap();
            let c = classify_source(&b.conjugated(), &tols).unwrap();
            assert_eq!(a.regular, c.regular, "b = {b:?}");
        }
    }

    #[test]
    fn scale_invariance() {
        let tols = default_tols();
        let table = CoeffTable::new(
            c64(0.8, -0.1),
            c64(0.3, 0.6),
            c64(-0.4, 0.2),
            c64(0.1, 0.9),
            c64(0.7, -0.3),
            c64(-0.6, 0.5),
        );
        let base = classify_source_table(&table, None, &tols).unwrap();
        for &c in &[c64(2.0, 0.0), c64(0.0, 1.5), c64(-0.7, 0.4)] {
            let scaled = classify_source_table(&table.scaled(c), None, &tols).unwrap();
            assert_eq!(base.twisted_regular, scaled.twisted_regular);
            assert_eq!(base.matched_condition, scaled.matched_condition);
            if let (Some(l1), Some(l2)) =
                (base.discriminants.lambda, scaled.discriminants.lambda)
            {
                assert!((l1 - l2).norm() <= 1e-10 * (1.0 + l1.norm()));
            }
        }
    }
}
