//! Adaptive embedded Runge–Kutta (Dormand–Prince 5(4)) integration of complex
//! second-order equations, and the analytic-basis cross-check for `Bu = 0`.

use num_complex::Complex64;

use crate::operators::{eval_solution_with_deriv, SolutionBasis, WeylSymbol};
use crate::{c64, Error, Result};

type State = [Complex64; 2];

// Dormand–Prince 5(4) tableau.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const C: [f64; 6] = [0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// One accepted sample of the trajectory.
pub struct Sample {
    pub t: f64,
    pub y: State,
}

/// Integrate `y' = f(t, y)` from `t0` to `t1` (either direction), recording
/// every accepted step. Fails with a stiffness diagnostic when the step
/// collapses or the step budget runs out.
pub fn integrate_dopri5(
    f: &dyn Fn(f64, &State) -> State,
    t0: f64,
    t1: f64,
    y0: State,
    rtol: f64,
    atol: f64,
) -> Result<Vec<Sample>> {
    let dir = if t1 >= t0 { 1.0 } else { -1.0 };
    let span = (t1 - t0).abs();
    if span == 0.0 {
        return Ok(vec![Sample { t: t0, y: y0 }]);
    }
    let mut t = t0;
    let mut y = y0;
    let mut h = (span / 100.0).clamp(1e-6, 0.1) * dir;
    let mut out = vec![Sample { t, y }];
    let mut k1 = f(t, &y);
    let max_steps = 2_000_000usize;
    for _ in 0..max_steps {
        if (t - t1).abs() <= 1e-14 * span.max(1.0) {
            return Ok(out);
        }
        if (h.abs()) > (t1 - t).abs() {
            h = t1 - t;
        }
        // Stage evaluations.
        let mut k = [k1, [c64(0.0, 0.0); 2], [c64(0.0, 0.0); 2], [c64(0.0, 0.0); 2], [c64(0.0, 0.0); 2], [c64(0.0, 0.0); 2], [c64(0.0, 0.0); 2]];
        for s in 0..6 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s + 1) {
                let a = A[s][j];
                if a != 0.0 {
                    ys[0] += h * a * kj[0];
                    ys[1] += h * a * kj[1];
                }
            }
            k[s + 1] = f(t + C[s] * h, &ys);
        }
        let mut y5 = y;
        let mut y4 = y;
        for (j, kj) in k.iter().enumerate() {
            if B5[j] != 0.0 {
                y5[0] += h * B5[j] * kj[0];
                y5[1] += h * B5[j] * kj[1];
            }
            if B4[j] != 0.0 {
                y4[0] += h * B4[j] * kj[0];
                y4[1] += h * B4[j] * kj[1];
            }
        }
        // Error norm against the mixed tolerance.
        let mut err: f64 = 0.0;
        for i in 0..2 {
            let scale = atol + rtol * y[i].norm().max(y5[i].norm());
            err = err.max((y5[i] - y4[i]).norm() / scale);
        }
        if err <= 1.0 {
            t += h;
            y = y5;
            k1 = k[6]; // FSAL
            out.push(Sample { t, y });
        }
        let factor = if err > 0.0 {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        h *= factor;
        if h.abs() < 1e-13 * span.max(1.0) {
            return Err(Error::Stiffness(format!(
                "step collapsed to {h:.3e} at t = {t:.6} (error {err:.3e})"
            )));
        }
    }
    Err(Error::Stiffness(format!(
        "step budget exhausted at t = {t:.6} targeting {t1}"
    )))
}

/// Right-hand side of `Bu = 0` as a first-order system:
/// `u″ = [−i(b11 x + b10) u′ + (b02 x² + b01 x + b00) u] / b20`.
pub fn source_ode_rhs(b: &WeylSymbol) -> impl Fn(f64, &State) -> State + '_ {
    move |x: f64, y: &State| {
        let i = c64(0.0, 1.0);
        let upp = (-i * (b.b11 * x + b.b10) * y[1]
            + (b.b02 * x * x + b.b01 * x + b.b00) * y[0])
            / b.b20;
        [y[1], upp]
    }
}

/// Integrate `Bu = 0` outward from `x = 0` over `interval` with initial data
/// taken from the analytic basis, and report the largest deviation from the
/// analytic solution relative to the largest analytic value seen.
pub fn ode_cross_check(
    basis: &SolutionBasis,
    c1: Complex64,
    c2: Complex64,
    interval: (f64, f64),
    rtol: f64,
) -> Result<f64> {
    let b = basis.symbol();
    let rhs = source_ode_rhs(b);
    let (u0, up0) = eval_solution_with_deriv(basis, c1, c2, 0.0)?;
    let mut sup_dev: f64 = 0.0;
    let mut sup_val: f64 = 0.0;
    for target in [interval.1, interval.0] {
        if target == 0.0 {
            continue;
        }
        let samples = integrate_dopri5(&rhs, 0.0, target, [u0, up0], rtol, 1e-12)?;
        // Comparing at every accepted step is wasteful when the analytic side
        // routes through quadrature; ~200 points per direction decide the sup
        // just as well.
        let stride = (samples.len() / 200).max(1);
        for s in samples.iter().step_by(stride).chain(samples.last()) {
            let exact = crate::operators::eval_solution(basis, c1, c2, s.t)?;
            sup_dev = sup_dev.max((s.y[0] - exact).norm());
            sup_val = sup_val.max(exact.norm());
        }
    }
    Ok(sup_dev / sup_val.max(1e-280))
}

/// Integrate the Hermite–Weber equation `w″ = (z² − λ)w` along the ray
/// `z = t e^{iφ}` from `0` to `t_end`, starting from `w(0)`, `w′(0)`.
/// Used as an independent evaluation route on oscillatory rays.
pub fn integrate_weber_ray(
    lambda: Complex64,
    phi: f64,
    t_end: f64,
    w0: Complex64,
    wp0: Complex64,
    rtol: f64,
) -> Result<(Complex64, Complex64)> {
    let rot = c64(0.0, phi).exp();
    let rhs = move |t: f64, y: &State| {
        let z = rot * t;
        [y[1], rot * rot * (z * z - lambda) * y[0]]
    };
    // State carries W(t) = w(te^{iφ}) and W′(t) = e^{iφ} w′.
    let samples = integrate_dopri5(&rhs, 0.0, t_end, [w0, rot * wp0], rtol, 1e-13)?;
    let last = samples.last().expect("at least the initial sample");
    Ok((last.y[0], last.y[1] / rot))
}
