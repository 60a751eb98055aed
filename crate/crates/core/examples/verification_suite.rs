//! Run the default verification suite (a reduced operator count keeps the
//! example quick) and print one JSON line per check.
//!
//! Run with `cargo run --release --example verification_suite`.

fn main() {
    let reports = twistreg::verify::run_suite("", 20240601, 4, 10);
    let mut all = true;
    for r in &reports {
        println!("{}", serde_json::to_string(r).unwrap());
        all &= r.passed;
    }
    eprintln!(
        "{} checks, {}",
        reports.len(),
        if all { "all passed" } else { "FAILURES present" }
    );
    assert!(all);
}
