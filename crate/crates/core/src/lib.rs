//! Global-regularity classification of second-order twisted differential
//! operators on `R^2`.
//!
//! A twisted operator is a polynomial in the non-commuting fields
//! `α D_y − β M_x` and `γ D_x − δ M_y` (with `αδ − βγ = 1`, `βδ ≠ 0`). Each
//! such operator corresponds to an ordinary differential operator
//! `Σ a_kj M^j D^k` on the line, its *source*, and the twisted operator is
//! globally regular (maps `Au ∈ S ⇒ u ∈ S`) exactly when the source is
//! globally regular and one-to-one. That last property is decided from the
//! branch-resolved complex roots of the source's Weyl symbol.
//!
//! The crate is organised around that pipeline:
//!
//! * [`branchcut`] — principal-branch argument, the sign corrector `σ`, and
//!   principal complex powers. Every other module routes powers through here.
//! * [`specfun`] — complex Gamma, Kummer `Φ`, the recessive combination `Θ`,
//!   and Airy `Ai`/`Bi`, each with a convergent series route and a
//!   sector-restricted asymptotic route.
//! * [`weber`] — Hermite–Weber fundamental solutions `w₁`, `w₂`, their
//!   `Θ`-combination identities, and the case table for the leading
//!   asymptotic form of `c₁w₁ + c₂w₂` in the real-axis and diagonal sectors.
//! * [`operators`] — frames, coefficient tables, Weyl symbols, symplectic
//!   shifts, the discriminants `Δ₂, Δ₁, Δ₀` and spectral parameter `λ`, the
//!   roots `Ξ±` and phases `Σ±`, and the analytic solution bases for all
//!   three discriminant cases.
//! * [`classify`] — growth signatures of `Im(xΞ±)` at each end, the Schwartz
//!   trichotomy, and the regularity / injectivity verdicts.
//! * [`verify`] — a numerical harness cross-checking every identity and
//!   asymptotic against quadrature, ODE integration, and grid transforms.
//! * [`cli`] — the JSON operator document format and the `classify`,
//!   `specfun`, `solve`, `verify` subcommands of the `twistreg` binary.
//!
//! See the crate examples (`cargo run --example classify_twisted_laplacian`,
//! etc.) for one runnable entry point per capability.

pub mod branchcut;
pub mod classify;
pub mod cli;
pub mod operators;
pub(crate) mod quadrature;
pub mod specfun;
pub mod verify;
pub mod weber;

use num_complex::Complex64;
use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input outside a function's domain (zero argument of `Arg`, fractional
    /// power at `x = 0`, empty coefficient pair, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation requested within tolerance of a Gamma pole; carries the
    /// index `n ≥ 0` of the nearest pole `−n`.
    #[error("gamma pole: argument within tolerance of -{0}")]
    GammaPole(u32),

    /// A series failed to reach the requested tolerance within the term cap.
    #[error("accuracy error: {0}")]
    Accuracy(String),

    /// Argument outside the sector in which an asymptotic expansion is valid.
    #[error("sector violation: {0}")]
    Sector(String),

    /// Case matching could not single out one asymptotic case.
    #[error("ambiguous case match: candidates {0:?}")]
    Ambiguous(Vec<String>),

    /// Frame does not satisfy `αδ − βγ = 1`, `βδ ≠ 0`.
    #[error("invalid frame: {0}")]
    Frame(String),

    /// Operator violates the order-2 requirement `|a20|+|a11|+|a02| > 0`.
    #[error("order error: {0}")]
    Order(String),

    /// `b20 = 0`; a symplectic shift is required before this operation.
    #[error("shift required: leading Weyl coefficient b20 vanishes")]
    ShiftRequired,

    /// Operation invoked on the wrong discriminant case.
    #[error("case error: {0}")]
    Case(String),

    /// Adaptive ODE integration failed to advance.
    #[error("stiffness error: {0}")]
    Stiffness(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Convenience constructor used throughout: `z(re, im)`.
#[inline]
pub(crate) fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
