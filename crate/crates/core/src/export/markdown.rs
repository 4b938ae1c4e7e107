use std::fmt::Write;

use crate::analysis::{trace_loss, Analyses, Cell};
use crate::model::{ElementClass, Model};

/// Escapes text for a table cell.
fn cell(text: &str) -> String {
    text.replace('\\', "\\\\").replace('|', "\\|").replace(['\n', '\r'], " ")
}

fn table_row(out: &mut String, cells: &[String]) {
    writeln!(out, "| {} |", cells.join(" | ")).unwrap();
}

fn table_header(out: &mut String, headers: &[&str]) {
    table_row(out, &headers.iter().map(|h| h.to_string()).collect::<Vec<_>>());
    table_row(out, &vec!["---".to_string(); headers.len()]);
}

/// Human-readable report: losses, hazards, boundaries, coverage,
/// diagnostics, hints and per-loss traces.
pub fn report_markdown(model: &Model, analyses: &Analyses) -> String {
    let mut out = String::new();
    match &model.name {
        Some(name) => writeln!(out, "# Hazard analysis: {}", cell(name)).unwrap(),
        None => out.push_str("# Hazard analysis\n"),
    }

    out.push_str("\n## Losses\n\n");
    if model.losses.is_empty() {
        out.push_str("None.\n");
    } else {
        table_header(&mut out, &["ID", "Loss", "Category"]);
        for l in &model.losses {
            table_row(&mut out, &[l.id.to_string(), cell(&l.description), l.category.to_string()]);
        }
    }

    out.push_str("\n## Hazards\n\n");
    if model.hazards.is_empty() {
        out.push_str("None.\n");
    } else {
        let mut headers = vec!["ID", "Hazard", "Boundary"];
        headers.extend(model.losses.iter().map(|l| l.id.as_str()));
        table_header(&mut out, &headers);
        for h in &model.hazards {
            let mut row = vec![h.id.to_string(), cell(&h.description), h.boundary.to_string()];
            row.extend(
                model
                    .losses
                    .iter()
                    .map(|l| if h.leads_to.contains(&l.id) { "✓".to_string() } else { String::new() }),
            );
            table_row(&mut out, &row);
        }
    }

    out.push_str("\n## System boundaries\n\n");
    if model.boundaries.is_empty() {
        out.push_str("None.\n");
    } else {
        table_header(&mut out, &["ID", "Name", "Stage", "Nodes"]);
        for b in &model.boundaries {
            let nodes: Vec<&str> = b.includes.iter().map(|n| n.as_str()).collect();
            table_row(
                &mut out,
                &[
                    b.id.to_string(),
                    cell(&b.name),
                    b.stage.map(|s| s.to_string()).unwrap_or_default(),
                    nodes.join(", "),
                ],
            );
        }
    }

    out.push_str("\n## Coverage\n\n");
    let matrix = &analyses.coverage;
    if matrix.rows.is_empty() {
        out.push_str("No control actions.\n");
    } else {
        let mut headers = vec!["Controller", "Action"];
        headers.extend(matrix.columns.iter().map(|g| g.as_str()));
        table_header(&mut out, &headers);
        for row in &matrix.rows {
            let mut cells = vec![row.controller.to_string(), format!("{} ({})", row.action, cell(&row.label))];
            cells.extend(row.cells.iter().map(|c| match c {
                Cell::Covered { ucas } => {
                    let ids: Vec<&str> = ucas.iter().map(|u| u.as_str()).collect();
                    format!("✓ {}", ids.join(", "))
                }
                Cell::Waived { .. } => "waived".to_string(),
                Cell::Gap => "GAP".to_string(),
            }));
            table_row(&mut out, &cells);
        }
    }
    let counts = matrix.counts();
    writeln!(
        out,
        "\n{} of {} cells covered, {} waived, {} gaps (ratio {:.3}).",
        counts.covered,
        counts.cells,
        counts.waived,
        counts.gaps,
        counts.ratio()
    )
    .unwrap();

    out.push_str("\n## Diagnostics\n\n");
    if analyses.diagnostics.is_empty() {
        out.push_str("None.\n");
    }
    for d in &analyses.diagnostics {
        let at = d.span.as_ref().map(|s| format!(" ({s})")).unwrap_or_default();
        writeln!(out, "- {}[{}]: {}{at}", d.severity, d.code, d.message).unwrap();
    }

    out.push_str("\n## Hints\n\n");
    if analyses.hints.is_empty() {
        out.push_str("None.\n");
    }
    for h in &analyses.hints {
        writeln!(out, "- `{}`: {}", h.code, h.message).unwrap();
    }

    out.push_str("\n## Traces\n");
    if model.losses.is_empty() {
        out.push_str("\nNone.\n");
    }
    for l in &model.losses {
        let tree = trace_loss(model, l.id.as_str()).expect("tracing a declared loss");
        let elements = tree.elements();
        let distinct = |class| elements.iter().filter(|e| e.class == class).count();
        writeln!(
            out,
            "\n### {}\n\nDistinct hazards: {}, UCAs: {}, scenarios: {}, requirements: {}.\n\n```text\n{}```",
            l.id,
            distinct(ElementClass::Hazard),
            distinct(ElementClass::Uca),
            distinct(ElementClass::Scenario),
            distinct(ElementClass::Requirement),
            tree.render()
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    #[test]
    fn one_gap() {
        let m = parse(
            "loss L1 \"life | limb\" category=safety-critical\n\
             hazard H1 \"h\" boundary=SB leads_to=[L1]\n\
             node A \"a\" kind=human\nnode B \"b\" kind=human\naction CA1 from=A to=B \"x\"\n\
             uca U1 action=CA1 type=provided category=functional context=\"c\" hazards=[H1]\n\
             uca U2 action=CA1 type=not-provided category=functional context=\"c\" hazards=[H1]\n\
             assess action=CA1 type=wrong-timing verdict=not-hazardous rationale=\"r\"\n",
            "m",
        )
        .into_result()
        .unwrap();
        let text = report_markdown(&m, &Analyses::run(&m));
        assert_eq!(text.matches("GAP").count(), 1);
        assert!(text.contains("| L1 | life \\| limb | safety-critical |"));
        assert!(text.contains("| CA1 (x) | ✓ U1 | ✓ U2 | waived | GAP |"));
        assert!(text.contains("| H1 | h | SB | ✓ |"));
    }

    #[test]
    fn empty_model() {
        let m = Model::new();
        let text = report_markdown(&m, &Analyses::run(&m));
        assert!(text.starts_with("# Hazard analysis\n"));
        assert!(!text.contains("GAP"));
    }
}
