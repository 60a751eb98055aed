//! Complex special functions: Gamma and Pochhammer, the Kummer confluent
//! hypergeometric function `Φ(p, q; z)`, the recessive combination
//! `Θ(p; z)`, and the Airy functions `Ai`, `Bi`.
//!
//! Each transcendental function comes in two routes: a convergent power
//! series, and an asymptotic expansion valid in a strict subsector of
//! `|Arg z| < π/2` (for `Φ` and `Θ`) or the cited Airy sectors. Asymptotic
//! results carry their sector flag and a remainder estimate so callers can
//! judge trust.

mod airy;
mod gamma;
pub(crate) mod phi;
mod theta;

pub use airy::{airy_ai, airy_ai_prime, airy_asym, airy_bi, airy_bi_prime, AiryKind, AirySector};
pub use gamma::{gamma, pochhammer, recip_gamma};
pub use phi::{
    kummer_check, phi_asym, phi_deriv, phi_recurrence_p_residual, phi_recurrence_q_residual,
    phi_series,
};
pub use theta::{
    theta, theta_asym, theta_integral, theta_poly_half, theta_poly_int, theta_prime_integral,
    theta_recurrence_residual,
};

use num_complex::Complex64;

/// Relative term tolerance for all series in this module.
pub const SERIES_TOL: f64 = 1e-16;
/// Hard cap on series terms.
pub const SERIES_MAX_TERMS: usize = 2000;
/// Default strict-interior margin (radians) for sector checks.
pub const SECTOR_EPS_DEFAULT: f64 = 0.1;
/// `|z|` below which the series route is preferred over asymptotics.
pub const SWITCH_RADIUS: f64 = 25.0;
/// Default truncation order for the asymptotic route beyond the switch radius.
pub const ASYM_N_DEFAULT: usize = 6;

/// Outcome of an asymptotic evaluation.
#[derive(Debug, Clone, Copy)]
pub struct AsymptoticEval {
    /// Value of the truncated expansion including all prefactors.
    pub value: Complex64,
    /// Number of retained terms minus one (the truncation order `N`).
    pub terms_used: usize,
    /// Whether the argument satisfied the cited sector condition.
    pub sector_ok: bool,
    /// Magnitude of the first omitted term, prefactors included.
    pub est_remainder: f64,
    /// Set when a vanishing `1/Γ` prefactor collapsed the expansion to zero.
    pub degenerate: bool,
}
