//! Versioned JSON documents for traces and construction reports.
//!
//! Floats are written in shortest round-trip form (at most 17 significant
//! digits), so `load_json(emit_json(t)) == t` holds bit for bit.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{FoldTrace, VerificationReport};
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u64 = 1;

/// Summary of one construction run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub construction: String,
    pub results: BTreeMap<String, f64>,
    /// Simultaneous folds the sufficient bound allows.
    pub fold_budget: usize,
    /// Simultaneous folds actually used.
    pub fold_width: usize,
    /// Total fold lines, counted sequentially.
    pub fold_count: usize,
    pub verification: VerificationReport,
}

/// Top-level document: a trace, a report, or both.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonDocument {
    pub version: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<ConstructionReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceBody>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceBody {
    pub fold_width: usize,
    #[serde(flatten)]
    pub trace: FoldTrace,
}

impl JsonDocument {
    pub fn new(report: Option<ConstructionReport>, trace: Option<&FoldTrace>) -> Self {
        Self {
            version: SCHEMA_VERSION,
            report,
            trace: trace.map(|t| TraceBody {
                fold_width: t.fold_width(),
                trace: t.clone(),
            }),
        }
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut out = serde_json::to_vec_pretty(self)?;
        out.push(b'\n');
        Ok(out)
    }
}

/// Serializes a bare trace document.
pub fn emit_json(trace: &FoldTrace) -> Result<Vec<u8>> {
    JsonDocument::new(None, Some(trace)).to_bytes()
}

/// Parses a trace document, rejecting missing or unknown schema versions.
pub fn load_json(bytes: &[u8]) -> Result<FoldTrace> {
    let value: Value = serde_json::from_slice(bytes)?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Schema("document is not a JSON object".into()))?;
    let version = obj
        .get("version")
        .ok_or_else(|| Error::Schema("missing \"version\"".into()))?
        .as_u64()
        .ok_or_else(|| Error::Schema("\"version\" is not an unsigned integer".into()))?;
    if version != SCHEMA_VERSION {
        return Err(Error::Schema(format!("unknown schema version {version}")));
    }
    let doc: JsonDocument = serde_json::from_value(value)?;
    let body = doc
        .trace
        .ok_or_else(|| Error::Schema("document carries no \"trace\"".into()))?;
    if body.fold_width != body.trace.fold_width() {
        return Err(Error::Schema(format!(
            "declared fold_width {} but steps have width {}",
            body.fold_width,
            body.trace.fold_width()
        )));
    }
    Ok(body.trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Line, Point};
    use crate::trace::{FoldStep, StepKind};

    fn sample() -> FoldTrace {
        let mut t = FoldTrace::with_frame();
        t.given_point("P", Point::new(0.1, 1.0 / 3.0));
        t.push(
            FoldStep::new(StepKind::Axiom { op: 5 })
                .fold("f", Line::new(0.3, 0.7, -0.123_456_789_012_345_67).unwrap())
                .point("X", Point::new(std::f64::consts::PI, -1e-300))
                .on("P", "f")
                .maps_line("f", "x-axis", "x-axis"),
        );
        t
    }

    #[test]
    fn round_trip_is_lossless() {
        let t = sample();
        let bytes = emit_json(&t).unwrap();
        assert_eq!(load_json(&bytes).unwrap(), t);
    }

    #[test]
    fn version_is_required() {
        let bytes = br#"{"trace":{"fold_width":0,"inputs":{"points":[],"lines":[]},"steps":[]}}"#;
        assert!(matches!(load_json(bytes), Err(Error::Schema(_))));
        let bytes = br#"{"version":2,"trace":{"fold_width":0,"inputs":{"points":[],"lines":[]},"steps":[]}}"#;
        assert!(matches!(load_json(bytes), Err(Error::Schema(_))));
    }

    #[test]
    fn hand_written_op3_fixture() {
        let fixture = br#"{
          "version": 1,
          "trace": {
            "fold_width": 1,
            "inputs": {"points": [], "lines": [{"name": "r", "a": 0.0, "b": 1.0, "c": -3.0}]},
            "steps": [{
              "kind": {"type": "axiom", "op": 3},
              "folds": [{"name": "f", "a": 0.0, "b": 1.0, "c": -3.0}],
              "constraints": [{"type": "line_maps_to_line", "fold": "f", "from": "r", "to": "r"}],
              "derived_points": [{"name": "R1", "x": 0.0, "y": 3.0}],
              "derived_lines": []
            }]
          }
        }"#;
        let t = load_json(fixture).unwrap();
        assert_eq!(t.fold_width(), 1);
        let report = crate::trace::verify(&t, &crate::geom::Tolerance::default()).unwrap();
        assert!(report.ok);
    }

    #[test]
    fn mismatched_width_is_rejected() {
        let t = sample();
        let mut v: Value = serde_json::from_slice(&emit_json(&t).unwrap()).unwrap();
        v["trace"]["fold_width"] = Value::from(4);
        let bytes = serde_json::to_vec(&v).unwrap();
        assert!(matches!(load_json(&bytes), Err(Error::Schema(_))));
    }
}
