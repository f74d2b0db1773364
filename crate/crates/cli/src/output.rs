use std::collections::BTreeMap;
use std::fmt::Write;

use gammawald::report::{Counts, Finding, Report};
use serde::Serialize;
use serde_json::Value;

use crate::Params;

#[derive(Debug, Serialize)]
pub struct InputInfo {
    pub path: String,
    pub sha256: String,
}

/// Everything a run emits. Contains no timings, so the JSON form is a pure
/// function of input, parameters and seed.
#[derive(Debug, Serialize)]
pub struct CliReport {
    pub command: String,
    pub input: InputInfo,
    pub parameters: Params,
    pub outcome: &'static str,
    pub counts: BTreeMap<String, Counts>,
    pub findings: Vec<Finding>,
    pub notes: Vec<String>,
    pub results: BTreeMap<String, Value>,
}

impl CliReport {
    pub fn new(command: &str, input: InputInfo, parameters: Params, report: Report, results: BTreeMap<String, Value>) -> Self {
        let outcome = if report.is_clean() { "clean" } else { "findings" };
        Self {
            command: command.to_string(),
            input,
            parameters,
            outcome,
            counts: report.counts,
            findings: report.findings,
            notes: report.notes,
            results,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.outcome == "clean"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} (sha256 {})", self.command, self.input.path, &self.input.sha256[..16]);
        let p = &self.parameters;
        let _ = writeln!(
            s,
            "  max-len {}  max-dim {}  budget {}  max-morphisms {}  seed {}",
            p.max_len, p.max_dim, p.budget, p.max_morphisms, p.seed
        );
        if !self.results.is_empty() {
            s.push_str("results\n");
            for (k, v) in &self.results {
                let _ = writeln!(s, "  {k}: {}", render_value(v));
            }
        }
        if !self.counts.is_empty() {
            let width = self.counts.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            s.push_str("checks\n");
            for (k, c) in &self.counts {
                let pad = width - k.chars().count();
                let _ = writeln!(
                    s,
                    "  {k}{:pad$}  checked {:>7}  passed {:>7}  skipped {:>6}  failed {:>5}",
                    "", c.checked, c.passed, c.skipped, c.failed
                );
            }
        }
        for f in &self.findings {
            let _ = writeln!(s, "FINDING [{}] {}: {}\n    witness: {}", f.section, f.kind, f.instance, f.witness);
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        let _ = writeln!(s, "outcome: {}", self.outcome);
        s
    }
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(map) if map.contains_key("display") => render_value(&map["display"]),
        Value::Object(map) => {
            let parts: Vec<String> = map.iter().map(|(k, v)| format!("{k}={}", render_value(v))).collect();
            parts.join(", ")
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(render_value).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

/// Renames every section of `r` to `prefix.section`.
pub fn prefixed(prefix: &str, r: Report) -> Report {
    let mut out = Report::new();
    out.counts = r.counts.into_iter().map(|(k, c)| (format!("{prefix}.{k}"), c)).collect();
    out.findings = r
        .findings
        .into_iter()
        .map(|f| Finding { section: format!("{prefix}.{}", f.section), ..f })
        .collect();
    out.notes = r.notes;
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefixing_renames_sections_and_findings() {
        let mut r = Report::new();
        r.pass("a");
        r.fail("b", "k", "i".into(), "w".into());
        let p = prefixed("x", r);
        assert_eq!(p.counts.keys().collect::<Vec<_>>(), ["x.a", "x.b"]);
        assert_eq!(p.findings[0].section, "x.b");
    }

    #[test]
    fn nested_values_render_flat() {
        let v = serde_json::json!({"L2": {"display": "ℤ/2", "rank": 0}, "L3": "0"});
        assert_eq!(render_value(&v), "L2=ℤ/2, L3=0");
    }
}
