//! Sample a solution of Bu = 0 together with its predicted asymptotic
//! envelope, as the `solve` subcommand does (CSV on standard output).
//!
//! Run with `cargo run --example solution_profile`.

use num_complex::Complex64;
use twistreg::cli::{cmd_solve, OperatorDocument};

const HARMONIC: &str = r#"{
  "kind": "source",
  "coefficients": {
    "a20": [1.0, 0.0], "a11": [0.0, 0.0], "a02": [1.0, 0.0],
    "a10": [0.0, 0.0], "a01": [0.0, 0.0], "a00": [0.0, 0.0]
  }
}"#;

fn main() {
    let c = Complex64::new;
    let doc = OperatorDocument::from_json(HARMONIC).unwrap();
    let csv = cmd_solve(&doc, c(1.0, 0.0), c(0.0, 0.0), (-8.0, 8.0, 0.5)).unwrap();
    print!("{csv}");

    // The envelope tracks |u| in the tails.
    for line in csv.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let x: f64 = f[0].parse().unwrap();
        if x.abs() >= 6.0 {
            let abs_u: f64 = f[3].parse().unwrap();
            let env: f64 = f[4].parse().unwrap();
            assert!(
                (abs_u / env - 1.0).abs() < 0.25,
                "x = {x}: |u| = {abs_u:e} vs envelope {env:e}"
            );
        }
    }
    eprintln!("envelope within 25% of |u| for |x| ≥ 6");
}
