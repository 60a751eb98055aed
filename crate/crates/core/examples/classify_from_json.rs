//! Load an operator document from its JSON schema and print the report the
//! `classify` subcommand would emit.
//!
//! Run with `cargo run --example classify_from_json`.

use twistreg::cli::{cmd_classify, verdict_to_json, OperatorDocument};

const B2_AS_TWISTED: &str = r#"{
  "kind": "twisted",
  "coefficients": {
    "a20": [1.0, 0.0],
    "a11": [0.0, 0.0],
    "a02": [-1.0, 0.0],
    "a10": [0.0, 1.0],
    "a01": [0.0, 0.0],
    "a00": [0.0, 0.0]
  },
  "frame": {"alpha": 2.0, "beta": 1.0, "gamma": 1.0, "delta": 1.0}
}"#;

fn main() {
    let doc = OperatorDocument::from_json(B2_AS_TWISTED).unwrap();
    let (report, exit_code) = cmd_classify(&doc, None).unwrap();
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    println!("exit code: {exit_code}");

    // The same verdict is reachable programmatically.
    let verdict = twistreg::classify::classify_twisted(
        &doc.table(),
        &doc.parsed_frame().unwrap().unwrap(),
        None,
        &doc.tols(),
    )
    .unwrap();
    assert_eq!(report, verdict_to_json(&verdict));
    assert_eq!(verdict.matched_condition, Some(832));
}
