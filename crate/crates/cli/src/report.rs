use std::io::Write;
use std::time::Instant;

use fusion_core::{FusionError, Shift};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::Format;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One checked claim instance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub claim: String,
    pub anchor: String,
    pub inputs: Value,
    pub expected: Value,
    pub got: Value,
    pub shift: Option<Value>,
    pub status: Status,
    pub ms: u64,
    /// Set when the computation itself hit an internal inconsistency.
    #[serde(skip)]
    pub integrity: bool,
}

pub fn shift_json(s: &Shift) -> Value {
    json!({ "dk": s.dk, "dq": s.dq, "slope": s.slope })
}

impl Report {
    pub fn new(claim: impl Into<String>, anchor: impl Into<String>, inputs: Value) -> Self {
        Report {
            claim: claim.into(),
            anchor: anchor.into(),
            inputs,
            expected: Value::Null,
            got: Value::Null,
            shift: None,
            status: Status::Skipped,
            ms: 0,
            integrity: false,
        }
    }

    pub fn check(mut self, expected: Value, got: Value, ok: bool) -> Self {
        self.expected = expected;
        self.got = got;
        self.status = if ok { Status::Pass } else { Status::Fail };
        self
    }

    /// Pass iff expected == got.
    pub fn compare(self, expected: Value, got: Value) -> Self {
        let ok = expected == got;
        self.check(expected, got, ok)
    }

    pub fn shift(mut self, s: Option<&Shift>) -> Self {
        self.shift = s.map(shift_json);
        self
    }

    /// Hypothesis and index errors mean the claim does not apply; anything
    /// else is a failure.
    pub fn error(mut self, e: &FusionError) -> Self {
        match e {
            FusionError::Hypothesis(_) | FusionError::BadIndex(_) | FusionError::NonPositive(_) => {
                self.status = Status::Skipped;
                self.got = json!({ "skipped": e.to_string() });
            }
            _ => {
                self.status = Status::Fail;
                self.got = json!({ "error": e.to_string() });
                self.integrity = e.is_integrity();
            }
        }
        self
    }

    /// Run `f`, recording its wall time.
    pub fn timed(self, f: impl FnOnce(Self) -> fusion_core::Result<Self>) -> Self {
        let start = Instant::now();
        let fallback = self.clone();
        let mut r = match f(self) {
            Ok(r) => r,
            Err(e) => fallback.error(&e),
        };
        r.ms = start.elapsed().as_millis() as u64;
        r
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub integrity: usize,
}

pub fn tally(reports: &[Report]) -> Tally {
    let mut t = Tally::default();
    for r in reports {
        match r.status {
            Status::Pass => t.pass += 1,
            Status::Fail => t.fail += 1,
            Status::Skipped => t.skipped += 1,
        }
        if r.integrity {
            t.integrity += 1;
        }
    }
    t
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn clip(s: &str, width: usize) -> String {
    if s.chars().count() <= width {
        s.to_string()
    } else {
        let mut t: String = s.chars().take(width - 3).collect();
        t.push_str("...");
        t
    }
}

pub fn write_reports(out: &mut dyn Write, reports: &[Report], format: Format) -> std::io::Result<()> {
    match format {
        Format::Json => {
            for r in reports {
                writeln!(out, "{}", serde_json::to_string(r).expect("reports serialize"))?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["claim", "anchor", "status", "inputs", "expected", "got", "shift", "ms"])?;
            for r in reports {
                let status = serde_json::to_value(r.status).expect("status serializes");
                w.write_record([
                    r.claim.clone(),
                    r.anchor.clone(),
                    compact(&status),
                    r.inputs.to_string(),
                    compact(&r.expected),
                    compact(&r.got),
                    r.shift.as_ref().map(Value::to_string).unwrap_or_default(),
                    r.ms.to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Table => {
            let cw = reports.iter().map(|r| r.claim.len()).max().unwrap_or(5).min(48);
            let aw = reports.iter().map(|r| r.anchor.len()).max().unwrap_or(6).min(36);
            writeln!(out, "{:<7} {:<cw$} {:<aw$} {:>6}  details", "status", "claim", "anchor", "ms")?;
            for r in reports {
                let status = match r.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Skipped => "skip",
                };
                let mut detail = format!("got {}", compact(&r.got));
                if r.status != Status::Pass {
                    detail = format!("expected {}; {detail}", compact(&r.expected));
                }
                if let Some(s) = &r.shift {
                    detail.push_str(&format!("; shift {s}"));
                }
                writeln!(
                    out,
                    "{status:<7} {:<cw$} {:<aw$} {:>6}  {}",
                    clip(&r.claim, cw),
                    clip(&r.anchor, aw),
                    r.ms,
                    clip(&detail, 160)
                )?;
            }
            let t = tally(reports);
            writeln!(out, "{} pass, {} fail, {} skipped", t.pass, t.fail, t.skipped)?;
        }
    }
    Ok(())
}

/// The report stream with timing removed, for run-to-run comparison.
pub fn without_timing(reports: &[Report]) -> Vec<Value> {
    reports
        .iter()
        .map(|r| {
            let mut v = serde_json::to_value(r).expect("reports serialize");
            v.as_object_mut().expect("object").remove("ms");
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_map_to_status() {
        let base = Report::new("c", "Eq. (first)", json!({}));
        let skipped = base.clone().error(&FusionError::Hypothesis("no".into()));
        assert_eq!(skipped.status, Status::Skipped);
        let broken = base.clone().error(&FusionError::integrity("bad"));
        assert_eq!((broken.status, broken.integrity), (Status::Fail, true));
        let t = tally(&[skipped, broken, base.compare(json!(1), json!(1))]);
        assert_eq!((t.pass, t.fail, t.skipped, t.integrity), (1, 1, 1, 1));
    }

    #[test]
    fn json_has_the_fixed_fields() {
        let r = Report::new("c", "Eq. (first)", json!({ "a": [2, 3] })).compare(json!(2), json!(2));
        let mut out = Vec::new();
        write_reports(&mut out, std::slice::from_ref(&r), Format::Json).unwrap();
        let v: Value = serde_json::from_slice(&out).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["anchor", "claim", "expected", "got", "inputs", "ms", "shift", "status"]);
        assert_eq!(v["status"], "pass");
        assert!(without_timing(&[r])[0].get("ms").is_none());
    }
}
