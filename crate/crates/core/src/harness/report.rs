//! Report types, canonical JSON rendering and the CSV view derived from it.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bounds::{BoundResult, Status, TheoremId};
use crate::segment::PhiSegment;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DrawParams {
    pub p: f64,
    pub q: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceError {
    pub kind: String,
    pub message: String,
}

/// One theorem evaluated on one sampled instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub corpus_id: String,
    pub draw: usize,
    pub theorem: TheoremId,
    pub segment: PhiSegment,
    pub params: DrawParams,
    pub result: Option<BoundResult>,
    pub error: Option<InstanceError>,
}

impl InstanceRecord {
    pub fn status(&self) -> Option<Status> {
        self.result.as_ref().map(|r| r.status)
    }

    /// Status name, or `error:<kind>`.
    pub fn label(&self) -> String {
        match (&self.result, &self.error) {
            (Some(r), _) => r.status.name().to_string(),
            (None, Some(e)) => format!("error:{}", e.kind),
            (None, None) => "error:unknown".to_string(),
        }
    }

    fn sort_key(&self) -> (&str, TheoremId, usize) {
        (&self.corpus_id, self.theorem, self.draw)
    }
}

pub fn sort_records(records: &mut [InstanceRecord]) {
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub version: String,
    pub mode: String,
    pub target: Option<String>,
    pub seed: u64,
    pub tol: f64,
    pub grid: usize,
    pub bound_slack: f64,
    pub hypothesis_slack: f64,
    pub corpus: Vec<String>,
    pub theorems: Vec<TheoremId>,
    pub draws: usize,
    /// Theorem evaluations performed (equals the result count for suites).
    pub evaluated: usize,
    /// Evaluations with status `violated_with_hypothesis`.
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    /// Per status name or `error:<kind>`; sums to `total`.
    pub counts: BTreeMap<String, usize>,
    /// Largest sharpness among `holds` results, per theorem.
    pub worst_sharpness: BTreeMap<String, f64>,
}

impl Summary {
    pub fn of(records: &[InstanceRecord]) -> Self {
        let mut s = Summary { total: records.len(), ..Summary::default() };
        for r in records {
            *s.counts.entry(r.label()).or_default() += 1;
            if let Some(res) = &r.result {
                if let (Status::Holds, Some(sh)) = (res.status, res.sharpness) {
                    let e = s.worst_sharpness.entry(r.theorem.name().to_string()).or_insert(sh);
                    *e = e.max(sh);
                }
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub metadata: Metadata,
    pub results: Vec<InstanceRecord>,
    pub summary: Summary,
}

impl SuiteReport {
    /// 2 when a certified hypothesis met a violated bound, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.metadata.violations > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn canonical_json(&self) -> String {
        canonical_json(&self.to_value())
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn csv(&self) -> String {
        csv_from_value(&self.to_value())
    }
}

fn number(n: &serde_json::Number) -> String {
    if let Some(i) = n.as_i64() {
        i.to_string()
    } else if let Some(u) = n.as_u64() {
        u.to_string()
    } else {
        format!("{:.16e}", n.as_f64().expect("finite float"))
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |out: &mut String, n: usize| out.extend(std::iter::repeat_n("  ", n));
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => out.push_str(&number(n)),
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                pad(out, indent + 1);
                write_value(out, item, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            // serde_json's default map is a BTreeMap, so keys come out sorted
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                pad(out, indent + 1);
                let _ = write!(out, "{}: ", Value::String(k.clone()));
                write_value(out, item, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push('}');
        }
    }
}

/// Sorted keys, two-space indent, floats with 17 significant digits.
pub fn canonical_json(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

pub const CSV_COLUMNS: [&str; 13] =
    ["corpus_id", "draw", "theorem", "a", "b", "phi", "p", "q", "lhs", "rhs", "margin", "sharpness", "status"];

fn cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::Number(n)) => number(n),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}

/// One CSV row per result, read off the serialized report.
pub fn csv_from_value(report: &Value) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS).expect("in-memory write");
    let empty = Vec::new();
    let results = report.get("results").and_then(Value::as_array).unwrap_or(&empty);
    for r in results {
        let res = r.get("result").filter(|v| !v.is_null());
        let status = match (res, r.get("error").filter(|v| !v.is_null())) {
            (Some(res), _) => cell(res.get("status")),
            (None, Some(e)) => format!("error:{}", cell(e.get("kind"))),
            (None, None) => "error:unknown".to_string(),
        };
        let from_res = |k: &str| cell(res.and_then(|x| x.get(k)));
        let row = [
            cell(r.get("corpus_id")),
            cell(r.get("draw")),
            cell(r.get("theorem")),
            cell(r.pointer("/segment/a")),
            cell(r.pointer("/segment/b")),
            cell(r.pointer("/segment/phi")),
            cell(r.pointer("/params/p")),
            cell(r.pointer("/params/q")),
            from_res("lhs"),
            from_res("rhs"),
            from_res("margin"),
            from_res("sharpness"),
            status,
        ];
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}
