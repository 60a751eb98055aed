//! Numerical verification harness: every identity, representation, and
//! asymptotic used by the classifier is cross-checked against an independent
//! route (quadrature, adaptive ODE integration, or grid transforms).
//!
//! Each check produces a [`CheckReport`]; the default suite is deterministic
//! given its seed and runs at desk scale.

pub mod asym;
pub mod ode;
pub mod quad;
pub mod transform;

pub use asym::solution_asym_check;
pub use ode::{integrate_dopri5, integrate_weber_ray, ode_cross_check, source_ode_rhs};
pub use quad::{quad_beta_invariance, quad_laplace, tail_remainder, theta_representation_check};
pub use transform::{
    intertwine_dx_check, intertwine_mx_check, spectral_d, transform_forward, transform_inverse,
    transform_roundtrip_check, Grid2,
};

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::operators::{
    discriminants, solution_basis, weyl_symbol, CoeffTable, DeltaCase, TwistedFrame, WeylSymbol,
};
use crate::{c64, Result};

/// Outcome of one verification check: `passed ⟺ residual ≤ tolerance`.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub warnings: Vec<String>,
    pub metadata: serde_json::Value,
}

impl CheckReport {
    pub fn new(name: String, residual: f64, tolerance: f64, metadata: serde_json::Value) -> Self {
        Self {
            name,
            residual,
            tolerance,
            passed: residual.is_finite() && residual <= tolerance,
            warnings: Vec::new(),
            metadata,
        }
    }
}

fn unit_disc(rng: &mut StdRng) -> Complex64 {
    loop {
        let z = c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if z.norm() <= 1.0 {
            return z;
        }
    }
}

/// Draw a random shifted symbol in the requested discriminant case:
/// coefficients uniform in the unit disc, re-drawn until the case tolerance
/// and desk-scale growth bounds are met. The degenerate cases are built by
/// solving the vanishing conditions exactly.
pub fn random_symbol(case: DeltaCase, rng: &mut StdRng) -> WeylSymbol {
    loop {
        let b20 = unit_disc(rng);
        if b20.norm() < 0.3 {
            continue;
        }
        let b11 = unit_disc(rng);
        let b10 = unit_disc(rng);
        let b00 = unit_disc(rng);
        let (b02, b01) = match case {
            DeltaCase::D2Nonzero => (unit_disc(rng), unit_disc(rng)),
            DeltaCase::D1Nonzero => (b11 * b11 / (4.0 * b20), unit_disc(rng)),
            DeltaCase::AllZeroQuad => (b11 * b11 / (4.0 * b20), b11 * b10 / (2.0 * b20)),
        };
        let b = WeylSymbol {
            b20,
            b11,
            b02,
            b10,
            b01,
            b00,
            theta: 0.0,
        };
        let Ok(d) = discriminants(&b) else {
            continue;
        };
        if d.case != case {
            continue;
        }
        match case {
            DeltaCase::D2Nonzero => {
                if d.d2.norm() < 0.05 || (d.d1 / d.d2).norm() > 4.0 {
                    continue;
                }
            }
            DeltaCase::D1Nonzero => {
                if d.d1.norm() < 0.05 || (d.d0 / d.d1).norm() > 4.0 {
                    continue;
                }
            }
            DeltaCase::AllZeroQuad => {
                if d.d0.norm() > 0.0 && d.d0.norm() < 0.05 {
                    continue;
                }
            }
        }
        // Desk-scale growth guard: the phase functions must stay within the
        // exponent budget on [−6, 6].
        let b20_2 = (b.b20 * b.b20).norm();
        let growth = 9.0 * (b.b11 / b.b20).norm()
            + 6.0 * (b.b10 / b.b20).norm()
            + match case {
                DeltaCase::D2Nonzero => {
                    (d.d2.norm() / b20_2).sqrt() * (6.0 + (d.d1 / (2.0 * d.d2)).norm()).powi(2)
                        / 4.0
                }
                DeltaCase::D1Nonzero => {
                    (d.d1.norm() / b20_2).sqrt() * (6.0_f64 + (d.d0 / d.d1).norm()).powf(1.5) / 3.0
                }
                DeltaCase::AllZeroQuad => (d.d0.norm() / b20_2).sqrt() * 3.0,
            };
        if growth > 60.0 {
            continue;
        }
        return b;
    }
}

/// Random coefficient pair with `|c₁| + |c₂| ≥ 0.2`.
pub fn random_combo(rng: &mut StdRng) -> (Complex64, Complex64) {
    loop {
        let c1 = unit_disc(rng);
        let c2 = unit_disc(rng);
        if c1.norm() + c2.norm() >= 0.2 {
            return (c1, c2);
        }
    }
}

fn gaussian(x: f64, y: f64) -> Complex64 {
    c64((-0.5 * (x * x + y * y)).exp(), 0.0)
}

fn hermite_x(x: f64, y: f64) -> Complex64 {
    c64(x * (-0.5 * (x * x + y * y)).exp(), 0.0)
}

/// ODE cross-check over `n_ops` random operators of one case; reports the
/// worst relative deviation.
pub fn ode_suite_check(case: DeltaCase, n_ops: usize, seed: u64) -> Result<CheckReport> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..n_ops {
        let b = random_symbol(case, &mut rng);
        let (c1, c2) = random_combo(&mut rng);
        let basis = solution_basis(&b)?;
        let dev = ode_cross_check(&basis, c1, c2, (-6.0, 6.0), 1e-10)?;
        worst = worst.max(dev);
    }
    Ok(CheckReport::new(
        format!("ode/{}", case_slug(case)),
        worst,
        1e-6,
        serde_json::json!({"operators": n_ops, "seed": seed}),
    ))
}

fn case_slug(case: DeltaCase) -> &'static str {
    match case {
        DeltaCase::D2Nonzero => "hermite-weber",
        DeltaCase::D1Nonzero => "airy",
        DeltaCase::AllZeroQuad => "degenerate",
    }
}

/// The regression operators exercised by the asymptotic-ratio checks.
fn regression_symbols() -> Vec<(String, WeylSymbol, Complex64, Complex64)> {
    let ho = weyl_symbol(&CoeffTable::harmonic_oscillator(c64(0.0, 0.0)));
    let b2 = weyl_symbol(&CoeffTable::new(
        c64(1.0, 0.0),
        c64(0.0, 0.0),
        c64(-1.0, 0.0),
        c64(0.0, 1.0),
        c64(0.0, 0.0),
        c64(0.0, 0.0),
    ));
    let airy = weyl_symbol(&CoeffTable::new(
        c64(1.0, 0.0),
        c64(0.0, 0.0),
        c64(0.0, 0.0),
        c64(0.0, 0.0),
        c64(-1.0, 0.0),
        c64(0.0, 0.0),
    ));
    let d2p1 = weyl_symbol(&CoeffTable::constant_coefficient(
        c64(1.0, 0.0),
        c64(0.0, 0.0),
        c64(1.0, 0.0),
    ));
    let (rc1, rc2) = crate::weber::recessive_plus_coefficients(c64(0.0, 0.0), c64(1.0, 0.0));
    vec![
        ("harmonic-growing".into(), ho, c64(1.0, 0.0), c64(0.0, 0.0)),
        ("harmonic-recessive".into(), ho, rc1, rc2),
        ("b2-generic".into(), b2, c64(1.0, 0.0), c64(1.0, 0.0)),
        ("airy-ai".into(), airy, c64(1.0, 0.0), c64(0.0, 0.0)),
        ("airy-mixed".into(), airy, c64(0.3, 0.0), c64(1.0, 0.0)),
        ("exponential".into(), d2p1, c64(1.0, 0.0), c64(0.5, 0.5)),
    ]
}

/// Asymptotic-ratio checks for the regression operators at one radius.
pub fn asym_suite_check(r: f64) -> Result<CheckReport> {
    let mut worst: f64 = 0.0;
    let mut tolerance: f64 = if r >= 15.0 { 0.13 } else { 0.25 };
    let mut details = Vec::new();
    for (name, b, c1, c2) in regression_symbols() {
        let rep = solution_asym_check(&b, c1, c2, r)?;
        worst = worst.max(rep.residual);
        tolerance = tolerance.max(rep.tolerance);
        details.push(serde_json::json!({"op": name, "residual": rep.residual}));
    }
    Ok(CheckReport::new(
        format!("asym/solution-ratio-r{r}"),
        worst,
        tolerance,
        serde_json::Value::Array(details),
    ))
}

/// Run the named checks of the default suite. `filter` keeps checks whose
/// name starts with the given prefix (empty keeps all); `jobs` fans the
/// independent checks over that many threads; reports come back ordered by
/// name regardless of scheduling.
pub fn run_suite(filter: &str, seed: u64, jobs: usize, n_ode_ops: usize) -> Vec<CheckReport> {
    type Job = Box<dyn FnOnce() -> Result<CheckReport> + Send>;
    let frame = TwistedFrame::twisted_laplacian();
    let mut tasks: Vec<(String, Job)> = Vec::new();
    for case in [
        DeltaCase::D2Nonzero,
        DeltaCase::D1Nonzero,
        DeltaCase::AllZeroQuad,
    ] {
        tasks.push((
            format!("ode/{}", case_slug(case)),
            Box::new(move || ode_suite_check(case, n_ode_ops, seed)),
        ));
    }
    for r in [8.0, 16.0] {
        tasks.push((
            format!("asym/solution-ratio-r{r}"),
            Box::new(move || asym_suite_check(r)),
        ));
    }
    tasks.push((
        "quad/beta-invariance".into(),
        Box::new(|| {
            let samples = [
                (c64(1.0, 0.0), c64(1.0, 0.0), 0.0),
                (c64(0.5, 0.0), c64(0.5, 0.0), 0.0),
                (c64(1.0, 1.0 / 3.0), c64(2.0, 0.0), std::f64::consts::PI / 5.0),
                (c64(0.8, -0.4), c64(1.3, 0.2), -0.7),
            ];
            let mut worst = 0.0_f64;
            for &(p, q, th) in &samples {
                worst = worst.max(quad_beta_invariance(p, q, th)?.residual);
            }
            Ok(CheckReport::new(
                "quad/beta-invariance".into(),
                worst,
                1e-8,
                serde_json::json!({"samples": samples.len()}),
            ))
        }),
    ));
    tasks.push((
        "quad/laplace".into(),
        Box::new(|| {
            let samples = [
                (c64(1.0, 0.0), c64(1.0, 0.0)),
                (c64(0.5, 0.0), c64(2.0, 1.0)),
                (c64(1.7, 0.6), c64(0.9, -2.0)),
            ];
            let mut worst = 0.0_f64;
            for &(p, z) in &samples {
                worst = worst.max(quad_laplace(p, z)?.residual);
            }
            Ok(CheckReport::new(
                "quad/laplace".into(),
                worst,
                1e-9,
                serde_json::json!({"samples": samples.len()}),
            ))
        }),
    ));
    tasks.push((
        "quad/laplace-tail".into(),
        Box::new(|| tail_remainder(c64(0.75, 0.0), 0.0, 0.3)),
    ));
    tasks.push((
        "theta/integral-representation".into(),
        Box::new(theta_representation_check),
    ));
    tasks.push((
        "transform/roundtrip-gaussian".into(),
        Box::new(move || transform_roundtrip_check("gaussian", &gaussian, &frame, 10.0, 256)),
    ));
    tasks.push((
        "transform/roundtrip-hermite".into(),
        Box::new(move || transform_roundtrip_check("hermite", &hermite_x, &frame, 10.0, 256)),
    ));
    tasks.push((
        "transform/intertwine-mx-gaussian".into(),
        Box::new(move || intertwine_mx_check("gaussian", &gaussian, &frame, 10.0, 256)),
    ));
    tasks.push((
        "transform/intertwine-mx-hermite".into(),
        Box::new(move || intertwine_mx_check("hermite", &hermite_x, &frame, 10.0, 256)),
    ));
    tasks.push((
        "transform/intertwine-dx-gaussian".into(),
        Box::new(move || {
            intertwine_dx_check(
                "gaussian",
                &gaussian,
                &|x, y| c64(0.0, 1.0) * x * gaussian(x, y),
                &frame,
                10.0,
                256,
            )
        }),
    ));
    tasks.push((
        "transform/intertwine-dx-hermite".into(),
        Box::new(move || {
            // D_x (x e^{−r²/2}) = −i (1 − x²) e^{−r²/2}
            intertwine_dx_check(
                "hermite",
                &hermite_x,
                &|x, y| c64(0.0, -1.0) * (1.0 - x * x) * gaussian(x, y),
                &frame,
                10.0,
                256,
            )
        }),
    ));

    let selected: Vec<(String, Job)> = tasks
        .into_iter()
        .filter(|(name, _)| filter.is_empty() || name.starts_with(filter))
        .collect();

    let mut reports: Vec<CheckReport> = if jobs <= 1 {
        selected
            .into_iter()
            .map(|(name, job)| run_one(name, job))
            .collect()
    } else {
        let queue = std::sync::Mutex::new(selected.into_iter().collect::<Vec<_>>());
        let results = std::sync::Mutex::new(Vec::new());
        std::thread::scope(|scope| {
            for _ in 0..jobs {
                scope.spawn(|| loop {
                    let task = queue.lock().unwrap().pop();
                    let Some((name, job)) = task else { break };
                    let report = run_one(name, job);
                    results.lock().unwrap().push(report);
                });
            }
        });
        results.into_inner().unwrap()
    };
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    reports
}

fn run_one(name: String, job: Box<dyn FnOnce() -> Result<CheckReport> + Send>) -> CheckReport {
    match job() {
        Ok(report) => report,
        Err(e) => CheckReport {
            name,
            residual: f64::INFINITY,
            tolerance: 0.0,
            passed: false,
            warnings: vec![format!("check failed to run: {e}")],
            metadata: serde_json::Value::Null,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_symbols_land_in_case() {
        let mut rng = StdRng::seed_from_u64(7);
        for case in [
            DeltaCase::D2Nonzero,
            DeltaCase::D1Nonzero,
            DeltaCase::AllZeroQuad,
        ] {
            for _ in 0..20 {
                let b = random_symbol(case, &mut rng);
                let d = discriminants(&b).unwrap();
                assert_eq!(d.case, case);
            }
        }
    }

    #[test]
    fn small_ode_suite() {
        for case in [
            DeltaCase::D2Nonzero,
            DeltaCase::D1Nonzero,
            DeltaCase::AllZeroQuad,
        ] {
            let rep = ode_suite_check(case, 5, 42).unwrap();
            assert!(rep.passed, "{}: residual {:.3e}", rep.name, rep.residual);
        }
    }
}
