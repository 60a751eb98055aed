//! Operator documents, report serialisation, and the `classify`, `specfun`,
//! `solve`, `verify` subcommands behind the `twistreg` binary.
//!
//! Complex numbers appear in JSON as two-element arrays `[re, im]`. The
//! operator schema requires `"kind"` (`"twisted"` or `"source"`) and
//! `"coefficients"` with all six keys `a20, a11, a02, a10, a01, a00`;
//! `"frame"` is required exactly when the kind is `"twisted"`.
//!
//! Exit codes: `0` verdict/pass, `1` input error, `2` anomaly warning,
//! `3` internal check failure.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::io::Write;

use crate::branchcut::cpow;
use crate::classify::{classify_source_table, classify_twisted, ClassifyTols, Verdict};
use crate::operators::{
    sigma_pm, solution_basis, CoeffTable, DeltaCase, SolutionBasis, TwistedFrame,
};
use crate::specfun::{
    airy_ai, airy_asym, airy_bi, phi_asym, phi_series, theta, theta_asym, AiryKind, AirySector,
    ASYM_N_DEFAULT, SECTOR_EPS_DEFAULT, SWITCH_RADIUS,
};
use crate::weber::{weber_combo_leading, Direction, WeberSector};
use crate::{c64, Error, Result};

/// Operator document as stored on disk.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct OperatorDocument {
    pub kind: OperatorKind,
    pub coefficients: CoefficientsDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frame: Option<FrameDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub options: Option<OptionsDoc>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    Twisted,
    Source,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CoefficientsDoc {
    pub a20: [f64; 2],
    pub a11: [f64; 2],
    pub a02: [f64; 2],
    pub a10: [f64; 2],
    pub a01: [f64; 2],
    pub a00: [f64; 2],
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FrameDoc {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Default)]
#[serde(deny_unknown_fields)]
pub struct OptionsDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol_zero: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol_lambda: Option<f64>,
}

impl OperatorDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: OperatorDocument = serde_json::from_str(text)
            .map_err(|e| Error::Domain(format!("malformed operator document: {e}")))?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialises")
    }

    pub fn validate(&self) -> Result<()> {
        match (self.kind, &self.frame) {
            (OperatorKind::Twisted, None) => {
                return Err(Error::Domain(
                    "kind \"twisted\" requires a \"frame\"".into(),
                ))
            }
            (OperatorKind::Source, Some(_)) => {
                return Err(Error::Domain(
                    "kind \"source\" must not carry a \"frame\"".into(),
                ))
            }
            _ => {}
        }
        if let Some(f) = &self.frame {
            self.parsed_frame_from(f)?;
        }
        Ok(())
    }

    pub fn table(&self) -> CoeffTable {
        let c = &self.coefficients;
        let x = |v: [f64; 2]| c64(v[0], v[1]);
        CoeffTable::new(x(c.a20), x(c.a11), x(c.a02), x(c.a10), x(c.a01), x(c.a00))
    }

    fn parsed_frame_from(&self, f: &FrameDoc) -> Result<TwistedFrame> {
        TwistedFrame::new(f.alpha, f.beta, f.gamma, f.delta)
    }

    pub fn parsed_frame(&self) -> Result<Option<TwistedFrame>> {
        self.frame
            .as_ref()
            .map(|f| self.parsed_frame_from(f))
            .transpose()
    }

    pub fn tols(&self) -> ClassifyTols {
        let mut t = ClassifyTols::default();
        if let Some(o) = &self.options {
            if let Some(z) = o.tol_zero {
                t.zero = z;
            }
            if let Some(l) = o.tol_lambda {
                t.lambda = l;
            }
        }
        t
    }
}

fn pair(z: Complex64) -> serde_json::Value {
    serde_json::json!([z.re, z.im])
}

/// Classification report as emitted on standard output.
pub fn verdict_to_json(v: &Verdict) -> serde_json::Value {
    serde_json::json!({
        "theta_used": v.theta_used,
        "b_coefficients": {
            "b20": pair(v.symbol.b20),
            "b11": pair(v.symbol.b11),
            "b02": pair(v.symbol.b02),
            "b10": pair(v.symbol.b10),
            "b01": pair(v.symbol.b01),
            "b00": pair(v.symbol.b00),
        },
        "deltas": {
            "d2": pair(v.discriminants.d2),
            "d1": pair(v.discriminants.d1),
            "d0": pair(v.discriminants.d0),
        },
        "lambda": v.discriminants.lambda.map(pair),
        "lambda_odd_positive": v.lambda_odd_positive,
        "roots": v.roots.iter().map(|r| serde_json::json!({
            "root": match r.root { crate::operators::Root::Plus => "+", crate::operators::Root::Minus => "-" },
            "class": format!("{:?}", r.class),
            "end_behaviors": [format!("{:?}", r.ends[0]), format!("{:?}", r.ends[1])],
        })).collect::<Vec<_>>(),
        "matched_condition": v.matched_condition,
        "source_regular": v.source_regular,
        "source_injective": v.source_injective,
        "twisted_regular": v.twisted_regular,
        "warnings": v.warnings,
    })
}

/// Run `classify` on a document; returns the report and the exit code.
pub fn cmd_classify(doc: &OperatorDocument, theta_flag: Option<f64>) -> Result<(serde_json::Value, i32)> {
    let tols = doc.tols();
    let theta = theta_flag.or(doc.options.as_ref().and_then(|o| o.theta));
    let verdict = match doc.kind {
        OperatorKind::Twisted => {
            let frame = doc.parsed_frame()?.expect("validated");
            classify_twisted(&doc.table(), &frame, theta, &tols)?
        }
        OperatorKind::Source => classify_source_table(&doc.table(), theta, &tols)?,
    };
    let has_anomaly = verdict.warnings.iter().any(|w| w.contains("anomaly"));
    Ok((verdict_to_json(&verdict), if has_anomaly { 2 } else { 0 }))
}

/// `specfun` evaluation result.
pub fn cmd_specfun(
    func: &str,
    p: Complex64,
    q: Complex64,
    z: Complex64,
    which: Option<&str>,
    asym: Option<usize>,
    eps: f64,
) -> Result<serde_json::Value> {
    let auto_asym = z.norm() > SWITCH_RADIUS;
    match func {
        "phi" => {
            if let Some(n) = asym.or(if auto_asym { Some(ASYM_N_DEFAULT) } else { None }) {
                let e = phi_asym(p, q, z, n, eps)?;
                if asym.is_some() && !e.sector_ok {
                    return Err(Error::Sector(format!(
                        "Φ asymptotics need |Arg z| ≤ π/2 − ε, got Arg z = {}",
                        z.arg()
                    )));
                }
                Ok(serde_json::json!({
                    "value": pair(e.value), "route": "asymptotic",
                    "est_remainder": e.est_remainder, "sector_ok": e.sector_ok,
                    "terms_used": e.terms_used,
                }))
            } else {
                let v = phi_series(p, q, z)?;
                Ok(serde_json::json!({"value": pair(v), "route": "series"}))
            }
        }
        "theta" => {
            if let Some(n) = asym.or(if auto_asym { Some(ASYM_N_DEFAULT) } else { None }) {
                let e = theta_asym(p, z, n, eps)?;
                if asym.is_some() && !e.sector_ok {
                    return Err(Error::Sector(format!(
                        "Θ asymptotics need |Arg z| ≤ π/2 − ε, got Arg z = {}",
                        z.arg()
                    )));
                }
                Ok(serde_json::json!({
                    "value": pair(e.value), "route": "asymptotic",
                    "est_remainder": e.est_remainder, "sector_ok": e.sector_ok,
                    "terms_used": e.terms_used,
                }))
            } else {
                let v = theta(p, z)?;
                Ok(serde_json::json!({"value": pair(v), "route": "series"}))
            }
        }
        "airy" => {
            let kind = match which.unwrap_or("ai") {
                "ai" => AiryKind::Ai,
                "bi" => AiryKind::Bi,
                other => return Err(Error::Domain(format!("unknown Airy kind {other}"))),
            };
            if asym.is_some() {
                // Regime from the argument: powers of z in the recessive
                // sector, powers of −z beyond.
                let regime = if z.arg().abs() <= std::f64::consts::PI / 3.0 {
                    AirySector::Right
                } else {
                    AirySector::Left
                };
                let e = airy_asym(kind, z, regime, eps)?;
                Ok(serde_json::json!({
                    "value": pair(e.value), "route": "asymptotic",
                    "est_remainder": e.est_remainder,
                    "regime": match regime { AirySector::Right => "right", AirySector::Left => "left" },
                }))
            } else {
                let v = match kind {
                    AiryKind::Ai => airy_ai(z),
                    AiryKind::Bi => airy_bi(z),
                };
                Ok(serde_json::json!({"value": pair(v), "route": "series"}))
            }
        }
        other => Err(Error::Domain(format!("unknown function {other}"))),
    }
}

/// `|c₁u₁ + c₂u₂|` envelope prediction at `x`: sum of the moduli of the
/// matched leading terms. `None` when the branch forms are singular (`x = 0`
/// in the fractional-power cases).
fn envelope_at(
    basis: &SolutionBasis,
    c1: Complex64,
    c2: Complex64,
    x: f64,
) -> Result<Option<f64>> {
    let b = basis.symbol();
    let d = basis.discriminants();
    if x == 0.0 && d.case == DeltaCase::D1Nonzero {
        return Ok(None);
    }
    let (sp, sm) = match sigma_pm(b, d, x) {
        Ok(v) => v,
        Err(Error::Domain(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let ep = (-sp.im).exp();
    let em = (-sm.im).exp();
    match d.case {
        DeltaCase::D2Nonzero => {
            let lambda = d.lambda.expect("Δ₂ ≠ 0");
            let mu = match basis {
                SolutionBasis::HermiteWeber { mu, .. } => *mu,
                _ => unreachable!(),
            };
            let arg = crate::branchcut::arg_principal(d.d2 / (b.b20 * b.b20))?;
            let sector = if arg.abs() <= 1e-9 {
                WeberSector::Diagonal
            } else {
                WeberSector::RealAxis
            };
            let dir = if x >= 0.0 { Direction::Plus } else { Direction::Minus };
            let case = weber_combo_leading(lambda, c1, c2, sector, dir)?;
            let mut env = 0.0;
            for t in &case.terms {
                let consts = cpow(t.base.rotation() * dir.sign() * mu, t.power)?;
                // |x|^{power} is singular at the origin except in the
                // polynomial cases; that row gets NA.
                let radial = match cpow(c64(x.abs(), 0.0), t.power) {
                    Ok(v) => v,
                    Err(Error::Domain(_)) => return Ok(None),
                    Err(e) => return Err(e),
                };
                let phase = if t.exp_sign > 0.0 { em } else { ep };
                env += (t.prefactor * consts * radial).norm() * phase;
            }
            Ok(Some(env))
        }
        DeltaCase::D1Nonzero => {
            let scale = cpow(-d.d1 / (4.0 * b.b20 * b.b20), c64(-1.0 / 12.0, 0.0))?.norm()
                * x.abs().powf(-0.25);
            let i = c64(0.0, 1.0);
            let sqrt_pi = std::f64::consts::PI.sqrt();
            let env = if x >= 0.0 {
                scale / (2.0 * sqrt_pi)
                    * ((2.0 * c2).norm() * em + (c1 + i * c2).norm() * ep)
            } else {
                scale / (2.0 * (2.0 * std::f64::consts::PI).sqrt())
                    * (((1.0 - i) * c1 + (1.0 + i) * c2).norm() * ep
                        + ((1.0 + i) * c1 + (1.0 - i) * c2).norm() * em)
            };
            Ok(Some(env))
        }
        DeltaCase::AllZeroQuad => Ok(Some(c1.norm() * em + c2.norm() * ep)),
    }
}

/// `solve`: sample `c₁u₁ + c₂u₂` and its envelope on a uniform grid, as CSV
/// (`x, re_u, im_u, abs_u, envelope`, LF line endings).
pub fn cmd_solve(
    doc: &OperatorDocument,
    c1: Complex64,
    c2: Complex64,
    grid: (f64, f64, f64),
) -> Result<String> {
    let table = doc.table();
    table.order2()?;
    let b0 = crate::operators::weyl_symbol(&table);
    let theta_used = match doc.options.as_ref().and_then(|o| o.theta) {
        Some(t) => t,
        None => crate::operators::choose_theta(&b0)?,
    };
    let b = crate::operators::symplectic_shift(&b0, theta_used);
    let basis = solution_basis(&b)?;
    let (a, end, step) = grid;
    if step <= 0.0 || end < a {
        return Err(Error::Domain("grid must be a:b:step with step > 0".into()));
    }
    let mut out = String::from("x,re_u,im_u,abs_u,envelope\n");
    let n = ((end - a) / step).round() as usize;
    for k in 0..=n {
        let x = a + k as f64 * step;
        let u = crate::operators::eval_solution(&basis, c1, c2, x)?;
        let env = envelope_at(&basis, c1, c2, x)?;
        let env_txt = match env {
            Some(e) => format!("{e:e}"),
            None => "NA".into(),
        };
        out.push_str(&format!(
            "{x:e},{:e},{:e},{:e},{env_txt}\n",
            u.re,
            u.im,
            u.norm()
        ));
    }
    Ok(out)
}

fn parse_complex(text: &str) -> Result<Complex64> {
    let parts: Vec<&str> = text.split(',').collect();
    let err = || Error::Domain(format!("cannot parse complex number from {text:?}"));
    match parts.as_slice() {
        [re] => Ok(c64(re.trim().parse().map_err(|_| err())?, 0.0)),
        [re, im] => Ok(c64(
            re.trim().parse().map_err(|_| err())?,
            im.trim().parse().map_err(|_| err())?,
        )),
        _ => Err(err()),
    }
}

fn parse_grid(text: &str) -> Result<(f64, f64, f64)> {
    let parts: Vec<&str> = text.split(':').collect();
    let err = || Error::Domain(format!("cannot parse grid {text:?}; expected a:b:step"));
    if parts.len() != 3 {
        return Err(err());
    }
    Ok((
        parts[0].trim().parse().map_err(|_| err())?,
        parts[1].trim().parse().map_err(|_| err())?,
        parts[2].trim().parse().map_err(|_| err())?,
    ))
}

struct Flags {
    positional: Vec<String>,
    named: std::collections::BTreeMap<String, String>,
}

fn parse_flags(args: &[String]) -> Result<Flags> {
    let mut positional = Vec::new();
    let mut named = std::collections::BTreeMap::new();
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if let Some(name) = a.strip_prefix("--") {
            let value = it
                .next()
                .ok_or_else(|| Error::Domain(format!("flag --{name} needs a value")))?;
            named.insert(name.to_string(), value.clone());
        } else {
            positional.push(a.clone());
        }
    }
    Ok(Flags { positional, named })
}

const USAGE: &str = "usage:
  twistreg classify <operator.json> [--theta T] [--tol-zero X] [--tol-lambda Y]
  twistreg specfun phi|theta|airy --z re,im [--p re,im] [--q re,im] [--which ai|bi] [--asym N] [--eps E]
  twistreg solve <operator.json> --c1 re,im --c2 re,im --grid a:b:step [--out file.csv]
  twistreg verify [--suite prefix] [--seed N] [--jobs K] [--ops N]";

/// Entry point of the binary; returns the process exit code.
pub fn run(args: &[String]) -> i32 {
    match run_inner(args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn run_inner(args: &[String]) -> Result<i32> {
    let Some((cmd, rest)) = args.split_first() else {
        eprintln!("{USAGE}");
        return Ok(1);
    };
    let flags = parse_flags(rest)?;
    match cmd.as_str() {
        "classify" => {
            let path = flags
                .positional
                .first()
                .ok_or_else(|| Error::Domain("classify needs an operator document path".into()))?;
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Domain(format!("cannot read {path}: {e}")))?;
            let mut doc = OperatorDocument::from_json(&text)?;
            if let Some(v) = flags.named.get("tol-zero") {
                let opts = doc.options.get_or_insert_with(Default::default);
                opts.tol_zero = Some(v.parse().map_err(|_| Error::Domain("bad --tol-zero".into()))?);
            }
            if let Some(v) = flags.named.get("tol-lambda") {
                let opts = doc.options.get_or_insert_with(Default::default);
                opts.tol_lambda =
                    Some(v.parse().map_err(|_| Error::Domain("bad --tol-lambda".into()))?);
            }
            let theta = flags
                .named
                .get("theta")
                .map(|v| v.parse::<f64>().map_err(|_| Error::Domain("bad --theta".into())))
                .transpose()?;
            let (report, code) = cmd_classify(&doc, theta)?;
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(code)
        }
        "specfun" => {
            let func = flags
                .positional
                .first()
                .ok_or_else(|| Error::Domain("specfun needs a function name".into()))?;
            let get = |k: &str, d: Complex64| -> Result<Complex64> {
                flags.named.get(k).map(|v| parse_complex(v)).unwrap_or(Ok(d))
            };
            let p = get("p", c64(0.0, 0.0))?;
            let q = get("q", c64(1.0, 0.0))?;
            let z = get("z", c64(0.0, 0.0))?;
            let asym = flags
                .named
                .get("asym")
                .map(|v| v.parse::<usize>().map_err(|_| Error::Domain("bad --asym".into())))
                .transpose()?;
            let eps = flags
                .named
                .get("eps")
                .map(|v| v.parse::<f64>().map_err(|_| Error::Domain("bad --eps".into())))
                .transpose()?
                .unwrap_or(SECTOR_EPS_DEFAULT);
            let report = cmd_specfun(
                func,
                p,
                q,
                z,
                flags.named.get("which").map(String::as_str),
                asym,
                eps,
            )?;
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(0)
        }
        "solve" => {
            let path = flags
                .positional
                .first()
                .ok_or_else(|| Error::Domain("solve needs an operator document path".into()))?;
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Domain(format!("cannot read {path}: {e}")))?;
            let doc = OperatorDocument::from_json(&text)?;
            let c1 = parse_complex(
                flags
                    .named
                    .get("c1")
                    .ok_or_else(|| Error::Domain("solve needs --c1".into()))?,
            )?;
            let c2 = parse_complex(
                flags
                    .named
                    .get("c2")
                    .ok_or_else(|| Error::Domain("solve needs --c2".into()))?,
            )?;
            let grid = parse_grid(
                flags
                    .named
                    .get("grid")
                    .ok_or_else(|| Error::Domain("solve needs --grid".into()))?,
            )?;
            let csv = cmd_solve(&doc, c1, c2, grid)?;
            match flags.named.get("out") {
                Some(path) => {
                    let mut f = std::fs::File::create(path)
                        .map_err(|e| Error::Domain(format!("cannot write {path}: {e}")))?;
                    f.write_all(csv.as_bytes())
                        .map_err(|e| Error::Domain(format!("write failed: {e}")))?;
                }
                None => print!("{csv}"),
            }
            Ok(0)
        }
        "verify" => {
            let suite = flags.named.get("suite").cloned().unwrap_or_default();
            let seed = flags
                .named
                .get("seed")
                .map(|v| v.parse::<u64>().map_err(|_| Error::Domain("bad --seed".into())))
                .transpose()?
                .unwrap_or(20240601);
            let jobs = flags
                .named
                .get("jobs")
                .map(|v| v.parse::<usize>().map_err(|_| Error::Domain("bad --jobs".into())))
                .transpose()?
                .unwrap_or(1);
            let ops = flags
                .named
                .get("ops")
                .map(|v| v.parse::<usize>().map_err(|_| Error::Domain("bad --ops".into())))
                .transpose()?
                .unwrap_or(50);
            let reports = crate::verify::run_suite(&suite, seed, jobs, ops);
            let mut all_pass = true;
            for r in &reports {
                println!("{}", serde_json::to_string(r).unwrap());
                all_pass &= r.passed;
            }
            Ok(if all_pass { 0 } else { 3 })
        }
        other => {
            eprintln!("unknown subcommand {other}\n{USAGE}");
            Ok(1)
        }
    }
}
