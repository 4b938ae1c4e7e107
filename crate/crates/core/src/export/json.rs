use serde::Serialize;

use crate::analysis::{Analyses, CoverageMatrix, Hint, Metrics};
use crate::diagnostic::Diagnostic;
use crate::model::Model;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize)]
struct Report<'a> {
    schema_version: &'static str,
    model: &'a Model,
    diagnostics: &'a [Diagnostic],
    coverage: &'a CoverageMatrix,
    hints: &'a [Hint],
    metrics: &'a Metrics,
}

/// The model and its analysis bundle as one pretty-printed JSON document.
/// Keys appear in a fixed order and ratios are plain decimal numbers.
pub fn report_json(model: &Model, analyses: &Analyses) -> String {
    let report = Report {
        schema_version: SCHEMA_VERSION,
        model,
        diagnostics: &analyses.diagnostics,
        coverage: &analyses.coverage,
        hints: &analyses.hints,
        metrics: &analyses.metrics,
    };
    let mut out = serde_json::to_string_pretty(&report).expect("report types serialize infallibly");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn empty_model_sections() {
        let model = Model::new();
        let text = report_json(&model, &Analyses::run(&model));
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schema_version"], "1");
        for section in ["diagnostics", "hints"] {
            assert_eq!(v[section], Value::Array(vec![]));
        }
        assert_eq!(v["coverage"]["rows"], Value::Array(vec![]));
        assert_eq!(v["model"]["losses"], Value::Array(vec![]));
        assert_eq!(v["metrics"]["coverage"]["ratio"], 1.0);
        assert_eq!(v["metrics"]["chain"]["hazards_with_uca"], 1.0);
        let keys: Vec<&str> = text
            .lines()
            .filter(|l| l.starts_with("  \""))
            .map(|l| l.trim().split('"').nth(1).unwrap())
            .collect();
        assert_eq!(keys, ["schema_version", "model", "diagnostics", "coverage", "hints", "metrics"]);
    }
}
