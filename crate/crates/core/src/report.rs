//! JSON reports shared by the command-line front end and its tests.
//!
//! Every report carries `"schema": "pwrot/1"`.

use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{bound_report, BoundCase, DEFAULT_DEPTH};
use crate::diophantine::{cf_expand_trusted, drift_lhs};
use crate::dynamics::PeriodicOrbit;
use crate::error::Result;
use crate::map::PiecewiseRotation;
use crate::presets;
use crate::rational::CertificateReport;

pub const SCHEMA: &str = "pwrot/1";

pub fn classify_json(t: &PiecewiseRotation, tolerance: Option<f64>) -> Value {
    let c = match tolerance {
        Some(tol) => t.classify(tol),
        None => t.classification(),
    };
    json!({
        "schema": SCHEMA,
        "classification": c.kind,
        "delta": c.delta,
        "norm": t.triple_norm(),
        "tolerance": c.tolerance_used,
        "strip_width": c.strip_width,
    })
}

/// Flat bound report; fields that do not apply to the case are `null`.
pub fn bound_json(t: &PiecewiseRotation, depth: usize, shift: bool) -> Result<Value> {
    let r = bound_report(t, depth, shift)?;
    let (case, l0, q_l0, p, q, xbar) = match r.case {
        BoundCase::Irrational { l0, q_l0 } => ("irrational", json!(l0), json!(q_l0), json!(null), json!(null), json!(null)),
        BoundCase::Rational { p, q, xbar } => ("rational", json!(null), json!(null), json!(p), json!(q), json!(xbar)),
    };
    Ok(json!({
        "schema": SCHEMA,
        "delta": r.classification.delta,
        "norm": r.norm,
        "classification": r.classification.kind,
        "case": case,
        "l0": l0,
        "q_l0": q_l0,
        "p": p,
        "q": q,
        "xbar": xbar,
        "M": r.m,
        "M_shifted": r.origin_shift.as_ref().map(|s| s.m_shifted),
    }))
}

pub fn islands_json(found: &[PeriodicOrbit]) -> Value {
    Value::Array(
        found
            .iter()
            .map(|o| {
                json!({
                    "word": crate::dynamics::format_word(&o.word),
                    "z": [o.z_u.re, o.z_u.im],
                    "weight": o.weight,
                })
            })
            .collect(),
    )
}

pub fn certificate_json(r: &CertificateReport) -> Value {
    json!({
        "schema": SCHEMA,
        "passed": r.passed,
        "min_gain": r.min_gain,
        "worst_sample": r.worst_sample,
        "blocks_used": r.blocks_used,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub computed: Value,
    pub tolerance: Option<f64>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifySuiteResult {
    pub schema: &'static str,
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerifySuiteResult {
    fn new(suite: &str, checks: Vec<Check>) -> Self {
        VerifySuiteResult {
            schema: SCHEMA,
            suite: suite.into(),
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}

fn interval(name: &str, lo: f64, hi: f64, lo_open: bool, hi_open: bool, x: f64) -> Check {
    let above = if lo_open { x > lo } else { x >= lo };
    let below = if hi_open { x < hi } else { x <= hi };
    Check {
        name: name.into(),
        expected: json!(format!(
            "{}{lo}, {hi}{}",
            if lo_open { "(" } else { "[" },
            if hi_open { ")" } else { "]" }
        )),
        computed: json!(x),
        tolerance: None,
        passed: above && below,
    }
}

fn near(name: &str, want: f64, x: f64, abs_tol: f64) -> Check {
    Check {
        name: name.into(),
        expected: json!(want),
        computed: json!(x),
        tolerance: Some(abs_tol),
        passed: (x - want).abs() <= abs_tol,
    }
}

fn exact(name: &str, want: Value, got: Value) -> Check {
    Check {
        name: name.into(),
        passed: want == got,
        expected: want,
        computed: got,
        tolerance: None,
    }
}

pub const SUITES: [&str; 2] = ["irrational-example", "rational-example"];

/// Replay a worked example. Unknown names are a precondition error.
pub fn verify_suite(name: &str) -> Result<VerifySuiteResult> {
    match name {
        "irrational-example" => irrational_suite(),
        "rational-example" => rational_suite(),
        _ => Err(crate::Error::PreconditionViolated(format!(
            "unknown suite {name:?}; expected one of {SUITES:?}"
        ))),
    }
}

fn irrational_suite() -> Result<VerifySuiteResult> {
    let t = presets::irrational_example();
    let conv = cf_expand_trusted(t.angle(), 10)?;
    let r = bound_report(&t, DEFAULT_DEPTH, true)?;
    let sel = r.selection.clone().expect("irrational report has a selection");
    let shift = r.origin_shift.clone().expect("shift requested");
    let norm = r.norm;
    let abs_delta = r.classification.delta.abs();
    let checks = vec![
        interval("delta", -0.14, -0.13, true, true, r.classification.delta),
        interval("norm", 2.68, 2.69, true, false, norm),
        exact(
            "convergent denominators",
            json!([1, 2, 3, 14, 17, 82, 99, 478, 577, 2786]),
            json!(conv.q),
        ),
        exact(
            "convergent numerators",
            json!([0, 1, 1, 5, 6, 29, 35, 169, 204, 985]),
            json!(conv.p),
        ),
        exact("l0", json!(8), json!(sel.l0)),
        interval("drift lhs at q_8", f64::NEG_INFINITY, 0.0383, true, true, sel.lhs_at_l0),
        interval(
            "drift lhs at q_7",
            0.0460 * (1.0 - 1e-3),
            f64::INFINITY,
            true,
            true,
            drift_lhs(norm, abs_delta, conv.q[7]),
        ),
        interval("M", 571100.0, 571283.0, false, false, r.m),
        near("shift point imaginary part", 0.275, shift.p_point.im, 1e-3),
        near("shift point real part", 0.0, shift.p_point.re, 1e-3),
        near("shifted norm", 2.249, shift.norm_shifted, 0.005),
        interval("M_shifted", f64::NEG_INFINITY, r.m, true, true, shift.m_shifted),
    ];
    Ok(VerifySuiteResult::new("irrational-example", checks))
}

fn rational_suite() -> Result<VerifySuiteResult> {
    let t = presets::rational_example();
    let r = bound_report(&t, DEFAULT_DEPTH, false)?;
    let m = r.m;
    let checks = vec![
        interval("delta", -0.13112, -0.13111, true, true, r.classification.delta),
        Check {
            name: "M (relative)".into(),
            expected: json!(120968.0),
            computed: json!(m),
            tolerance: Some(5e-4),
            passed: ((m - 120968.0) / 120968.0).abs() <= 5e-4,
        },
    ];
    Ok(VerifySuiteResult::new("rational-example", checks))
}
