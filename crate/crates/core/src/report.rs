//! Check results and their text and JSON renderings.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One row of a verification report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub params: Map<String, Value>,
    pub status: Status,
    pub detail: String,
    pub residual: Option<f64>,
    pub duration_ms: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// `key=value` pairs in key order.
    pub fn params_label(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={}", compact(v)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Canonical order: check name, then parameters, numbers compared numerically.
fn compare(a: &CheckResult, b: &CheckResult) -> Ordering {
    a.check.cmp(&b.check).then_with(|| {
        let mut ai = a.params.iter();
        let mut bi = b.params.iter();
        loop {
            match (ai.next(), bi.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ka, va)), Some((kb, vb))) => {
                    let o = ka.cmp(kb).then_with(|| compare_values(va, vb));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
            }
        }
    })
}

fn compare_values(a: &Value, b: &Value) -> Ordering {
    match (a.as_f64(), b.as_f64()) {
        (Some(x), Some(y)) => x.total_cmp(&y),
        _ => a.to_string().cmp(&b.to_string()),
    }
}

/// Builder for a single check: records parameters and timing.
pub struct CheckBuilder {
    check: String,
    params: Map<String, Value>,
    start: Instant,
}

impl CheckBuilder {
    pub fn new(check: &str) -> Self {
        Self {
            check: check.to_string(),
            params: Map::new(),
            start: Instant::now(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn finish(
        self,
        passed: bool,
        detail: impl Into<String>,
        residual: Option<f64>,
    ) -> CheckResult {
        CheckResult {
            check: self.check,
            params: self.params,
            status: if passed { Status::Pass } else { Status::Fail },
            detail: detail.into(),
            residual: residual.filter(|r| r.is_finite()),
            duration_ms: self.start.elapsed().as_secs_f64() * 1e3,
        }
    }

    /// Tolerance check on a single residual.
    pub fn within(self, residual: f64, tolerance: f64, detail: impl Into<String>) -> CheckResult {
        self.param("tolerance", tolerance)
            .finish(residual < tolerance, detail, Some(residual))
    }

    pub fn error(self, err: impl std::fmt::Display) -> CheckResult {
        self.finish(false, format!("error: {err}"), None)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VerificationReport {
    pub results: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn new(mut results: Vec<CheckResult>) -> Self {
        results.sort_by(compare);
        Self { results }
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.results.extend(other.results);
        self.results.sort_by(compare);
    }

    pub fn all_passed(&self) -> bool {
        self.results.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let status = if r.passed() { "PASS" } else { "FAIL" };
            let residual = r
                .residual
                .map_or_else(|| "-".to_string(), |x| format!("{x:.3e}"));
            let _ = writeln!(
                out,
                "{status}  {:<30} {:<18} residual={residual:<10} {:>9.1} ms  {}",
                r.check,
                r.params_label(),
                r.duration_ms,
                r.detail
            );
        }
        let failed = self.failures().count();
        let _ = writeln!(
            out,
            "{} checks, {} passed, {} failed",
            self.results.len(),
            self.results.len() - failed,
            failed
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(check: &str, p: u64) -> CheckResult {
        CheckBuilder::new(check)
            .param("p", p)
            .finish(true, "", Some(0.0))
    }

    #[test]
    fn canonical_order_is_numeric_in_params() {
        let r = VerificationReport::new(vec![row("b", 11), row("a", 3), row("b", 3), row("b", 5)]);
        let order: Vec<_> = r
            .results
            .iter()
            .map(|x| (x.check.as_str(), x.params_label()))
            .collect();
        assert_eq!(
            order,
            [
                ("a", "p=3".into()),
                ("b", "p=3".into()),
                ("b", "p=5".into()),
                ("b", "p=11".into())
            ]
        );
    }

    #[test]
    fn json_schema_keys() {
        let r = VerificationReport::new(vec![CheckBuilder::new("x").error("boom")]);
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        let obj = v.as_array().unwrap()[0].as_object().unwrap();
        let keys: Vec<_> = obj.keys().cloned().collect();
        assert_eq!(
            keys,
            [
                "check",
                "detail",
                "duration_ms",
                "params",
                "residual",
                "status"
            ]
        );
        assert_eq!(obj["status"], "fail");
        assert!(obj["residual"].is_null());
    }

    #[test]
    fn non_finite_residual_becomes_null() {
        let r = CheckBuilder::new("x").finish(false, "", Some(f64::NAN));
        assert_eq!(r.residual, None);
    }
}
