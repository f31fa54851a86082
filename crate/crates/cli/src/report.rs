//! The versioned report written to standard output.

use kummer_core::check::{Check, Report, Status};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const REPORT_SCHEMA: &str = "kummer-report/1";

#[derive(Debug, Clone, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct CliReport {
    pub schema: &'static str,
    pub tool: Tool,
    pub command: String,
    pub scenario_digest: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub payload: Value,
}

pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl CliReport {
    /// Checks are sorted by name; `requested` keeps only the named ones.
    pub fn new(command: &str, scenario_digest: String, report: Report, payload: Value) -> CliReport {
        let mut checks = report.checks;
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        CliReport {
            schema: REPORT_SCHEMA,
            tool: Tool { name: "kummer", version: env!("CARGO_PKG_VERSION") },
            command: command.to_string(),
            scenario_digest,
            passed: !checks.iter().any(Check::failed),
            checks,
            payload,
        }
    }

    pub fn summary(&self) -> String {
        let count = |s: Status| self.checks.iter().filter(|c| c.status == s).count();
        let mut out = format!(
            "kummer {}: {} passed, {} failed, {} skipped",
            self.command,
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Skipped)
        );
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => continue,
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            out.push_str(&format!("\n  {tag} {}", c.name));
            if !c.detail.is_empty() {
                out.push_str(&format!(": {}", c.detail));
            }
        }
        out
    }
}

/// Restricts `report` to `requested`, failing on unknown names and duplicates.
pub fn select(report: Report, requested: Option<&[String]>) -> Result<Report, String> {
    let Some(names) = requested else { return Ok(report) };
    let mut checks = Vec::new();
    for name in names {
        if checks.iter().any(|c: &Check| &c.name == name) {
            return Err(format!("check {name:?} requested twice"));
        }
        match report.get(name) {
            Some(c) => checks.push(c.clone()),
            None => {
                let known: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
                return Err(format!("unknown check {name:?}; available: {}", known.join(", ")));
            }
        }
    }
    Ok(Report { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_hex_sha256() {
        assert_eq!(digest(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn selection() {
        let r = Report { checks: vec![Check::new("b", true, ""), Check::new("a", false, "")] };
        assert_eq!(select(r.clone(), Some(&["b".into()])).unwrap().checks.len(), 1);
        assert!(select(r.clone(), Some(&["c".into()])).is_err());
        assert!(select(r.clone(), Some(&["b".into(), "b".into()])).is_err());
        let out = CliReport::new("x", String::new(), r, Value::Null);
        assert_eq!(out.checks[0].name, "a");
        assert!(!out.passed);
    }
}
