//! Classify the twisted Laplacian end to end: source, Weyl symbol,
//! discriminants, Schwartz classes of the roots, and the final verdict.
//!
//! Run with `cargo run --example classify_twisted_laplacian`.

use num_complex::Complex64;
use twistreg::classify::{classify_twisted, ClassifyTols};
use twistreg::operators::{CoeffTable, TwistedFrame};

fn main() {
    let c = Complex64::new;
    // (D_x + y/2)² + (D_y − x/2)² corresponds to the table of D² + M² under
    // the frame (−1, −1/2, 1, −1/2).
    let table = CoeffTable::harmonic_oscillator(c(0.0, 0.0));
    let frame = TwistedFrame::twisted_laplacian();

    let verdict = classify_twisted(&table, &frame, None, &ClassifyTols::default()).unwrap();

    println!("θ used: {}", verdict.theta_used);
    println!(
        "Δ₂ = {}, Δ₁ = {}, Δ₀ = {}",
        verdict.discriminants.d2, verdict.discriminants.d1, verdict.discriminants.d0
    );
    println!("λ = {:?}", verdict.discriminants.lambda);
    for r in &verdict.roots {
        println!(
            "root {:?}: class {:?}, ends {:?}",
            r.root, r.class, r.ends
        );
    }
    println!("matched condition: {:?}", verdict.matched_condition);
    println!("source regular:    {}", verdict.source_regular);
    println!("source injective:  {:?}", verdict.source_injective);
    println!("twisted regular:   {}", verdict.twisted_regular);
    assert!(verdict.twisted_regular);
}
