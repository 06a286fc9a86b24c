//! Rendering of suite reports as text tables and machine-readable JSON.

use crate::axioms::SuiteReport;
use crate::structure::ValidationReport;

/// Plain-text table, one row per axiom. Content is identical across
/// worker counts.
pub fn render_text(report: &SuiteReport) -> String {
    let mut out = format!("suite {}\n", report.suite);
    let idw = report.rows.iter().map(|r| r.id.len()).max().unwrap_or(4).max(4);
    out.push_str(&format!("  {:<idw$}  {:<6}  {:>8}  anchor\n", "id", "status", "checks"));
    for r in &report.rows {
        let status = if r.passed { "pass" } else { "FAIL" };
        out.push_str(&format!(
            "  {:<idw$}  {:<6}  {:>8}  {}\n",
            r.id, status, r.assignments, r.anchor
        ));
        if let Some(w) = &r.witness {
            out.push_str(&format!("  {:idw$}  witness: {}\n", "", w));
        }
    }
    out
}

/// JSON document with stable row ids.
pub fn render_json(report: &SuiteReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn render_validation_json(report: &ValidationReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{SuiteReport, SuiteRow};

    #[test]
    fn empty_suite_renders_header_only() {
        let rep = SuiteReport { suite: "empty".into(), rows: vec![] };
        let text = render_text(&rep);
        assert_eq!(text.lines().count(), 2);
        assert!(text.contains("suite empty"));
    }

    #[test]
    fn json_round_trips_through_the_schema() {
        let rep = SuiteReport {
            suite: "demo".into(),
            rows: vec![SuiteRow {
                id: "A4.1.unit".into(),
                anchor: "twist on the unit is the identity".into(),
                passed: false,
                assignments: 3,
                witness: Some("assignment (s): lhs ... rhs ...".into()),
            }],
        };
        let json = render_json(&rep);
        let back: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(back["suite"], "demo");
        assert_eq!(back["rows"][0]["id"], "A4.1.unit");
        assert_eq!(back["rows"][0]["passed"], false);
        assert!(back["rows"][0]["witness"].as_str().unwrap().contains("assignment"));
    }
}
