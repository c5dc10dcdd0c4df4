//! Check records and reports, with text and JSON rendering.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::value::RawValue;

use crate::conventions::{self, ConventionLedger};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

/// How a record's measured quantity is judged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// `residual < tolerance`.
    Within,
    /// `value > tolerance` (negative controls, nondegeneracy).
    Exceeds,
    /// Recorded only.
    Record,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub check: String,
    pub anchor: String,
    pub point: Option<Vec<f64>>,
    pub value: f64,
    pub expected: Option<f64>,
    pub residual: f64,
    pub tolerance: f64,
    pub criterion: Criterion,
    pub status: Status,
}

impl CheckRecord {
    /// A residual that must stay below `tolerance`.
    pub fn residual(check: &str, anchor: &str, point: Option<&[f64]>, residual: f64, tolerance: f64) -> Self {
        let mut r = CheckRecord {
            check: check.into(),
            anchor: anchor.into(),
            point: point.map(<[f64]>::to_vec),
            value: residual,
            expected: Some(0.0),
            residual,
            tolerance,
            criterion: Criterion::Within,
            status: Status::Fail,
        };
        r.judge();
        r
    }

    /// A measured value compared with an expected one.
    pub fn value(check: &str, anchor: &str, point: Option<&[f64]>, value: f64, expected: f64, tolerance: f64) -> Self {
        let mut r = Self::residual(check, anchor, point, (value - expected).abs(), tolerance);
        r.value = value;
        r.expected = Some(expected);
        r
    }

    /// A value that must strictly exceed `bound`.
    pub fn exceeds(check: &str, anchor: &str, point: Option<&[f64]>, value: f64, bound: f64) -> Self {
        let mut r = CheckRecord {
            check: check.into(),
            anchor: anchor.into(),
            point: point.map(<[f64]>::to_vec),
            value,
            expected: None,
            residual: value,
            tolerance: bound,
            criterion: Criterion::Exceeds,
            status: Status::Fail,
        };
        r.judge();
        r
    }

    pub fn info(check: &str, anchor: &str, point: Option<&[f64]>, value: f64) -> Self {
        CheckRecord {
            check: check.into(),
            anchor: anchor.into(),
            point: point.map(<[f64]>::to_vec),
            value,
            expected: None,
            residual: f64::NAN,
            tolerance: f64::NAN,
            criterion: Criterion::Record,
            status: Status::Info,
        }
    }

    /// A clause that could not be evaluated.
    pub fn failed(check: &str, anchor: &str, point: Option<&[f64]>, tolerance: f64) -> Self {
        let mut r = Self::residual(check, anchor, point, f64::NAN, tolerance);
        r.value = f64::NAN;
        r
    }

    fn judge(&mut self) {
        self.status = match self.criterion {
            Criterion::Within if self.residual < self.tolerance => Status::Pass,
            Criterion::Exceeds if self.value > self.tolerance => Status::Pass,
            Criterion::Record => Status::Info,
            _ => Status::Fail,
        };
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub info: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub manifold: String,
    pub records: Vec<CheckRecord>,
    pub conventions: ConventionLedger,
    pub loosened_to: Option<f64>,
}

impl Report {
    pub fn new(manifold: impl Into<String>) -> Self {
        Report {
            manifold: manifold.into(),
            records: Vec::new(),
            conventions: conventions::ledger(),
            loosened_to: None,
        }
    }

    pub fn push(&mut self, r: CheckRecord) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn summary(&self) -> Summary {
        let count = |s| self.records.iter().filter(|r| r.status == s).count();
        Summary {
            total: self.records.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            info: count(Status::Info),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.records.iter().all(CheckRecord::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    /// Records whose check name matches `check` exactly.
    pub fn find<'a>(&'a self, check: &'a str) -> impl Iterator<Item = &'a CheckRecord> + 'a {
        self.records.iter().filter(move |r| r.check == check)
    }

    /// Raises every residual tolerance to at least `tol` and re-judges.
    /// Lower bounds of negative controls are left alone.
    pub fn loosen(&mut self, tol: f64) {
        for r in &mut self.records {
            if r.criterion == Criterion::Within && tol > r.tolerance {
                r.tolerance = tol;
                r.judge();
            }
        }
        self.loosened_to = Some(tol);
    }

    pub fn to_json(&self) -> String {
        let doc = JsonReport {
            manifold: &self.manifold,
            conventions: &self.conventions,
            tolerance_override: self.loosened_to.map(num),
            summary: self.summary(),
            records: self.records.iter().map(JsonRecord::from).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let s = self.summary();
        let _ = writeln!(out, "manifold: {}", self.manifold);
        let _ = writeln!(out, "conventions: {}", self.conventions.one_line());
        if let Some(t) = self.loosened_to {
            let _ = writeln!(out, "tolerance override: {t:e}");
        }
        for r in &self.records {
            let status = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
            };
            let at = r
                .point
                .as_ref()
                .map(|p| format!(" at {}", fmt_point(p)))
                .unwrap_or_default();
            let detail = match (r.criterion, r.expected) {
                (Criterion::Record, _) => format!("value {:.12e}", r.value),
                (Criterion::Exceeds, _) => format!("value {:.6e} > {:.1e}", r.value, r.tolerance),
                (Criterion::Within, Some(e)) if e != 0.0 || r.value != r.residual => format!(
                    "value {:.12e} expected {e} residual {:.3e} tol {:.0e}",
                    r.value, r.residual, r.tolerance
                ),
                _ => format!("residual {:.3e} tol {:.0e}", r.residual, r.tolerance),
            };
            let _ = writeln!(out, "[{status}] {} ({}){at}: {detail}", r.check, r.anchor);
        }
        let _ = writeln!(
            out,
            "summary: {} checks, {} passed, {} failed, {} info",
            s.total, s.passed, s.failed, s.info
        );
        out
    }
}

fn fmt_point(p: &[f64]) -> String {
    let parts: Vec<String> = p.iter().map(|v| format!("{v:.4}")).collect();
    format!("({})", parts.join(", "))
}

/// 17 significant digits; non-finite values become `null`.
pub(crate) fn num(v: f64) -> Box<RawValue> {
    let s = if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".to_string()
    };
    RawValue::from_string(s).expect("valid JSON number")
}

#[derive(Serialize)]
struct JsonReport<'a> {
    manifold: &'a str,
    conventions: &'a ConventionLedger,
    tolerance_override: Option<Box<RawValue>>,
    summary: Summary,
    records: Vec<JsonRecord<'a>>,
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    check: &'a str,
    anchor: &'a str,
    point: Option<Vec<Box<RawValue>>>,
    value: Box<RawValue>,
    expected: Option<Box<RawValue>>,
    residual: Box<RawValue>,
    tolerance: Box<RawValue>,
    criterion: Criterion,
    status: Status,
}

impl<'a> From<&'a CheckRecord> for JsonRecord<'a> {
    fn from(r: &'a CheckRecord) -> Self {
        JsonRecord {
            check: &r.check,
            anchor: &r.anchor,
            point: r.point.as_ref().map(|p| p.iter().copied().map(num).collect()),
            value: num(r.value),
            expected: r.expected.map(num),
            residual: num(r.residual),
            tolerance: num(r.tolerance),
            criterion: r.criterion,
            status: r.status,
        }
    }
}
