use std::fmt::Write;

use crate::analysis::rank_scope;
use crate::model::*;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderOptions {
    /// Restrict the diagram to one system boundary.
    pub boundary: Option<String>,
    pub include_iolinks: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            boundary: None,
            include_iolinks: true,
        }
    }
}

fn quoted(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => {}
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn shape(kind: NodeKind) -> &'static str {
    match kind {
        NodeKind::Human | NodeKind::Team | NodeKind::Organization => "box",
        NodeKind::TechnicalArtifact | NodeKind::AiModel | NodeKind::AutomatedSystem => "ellipse",
    }
}

fn style(kind: EdgeKind) -> &'static str {
    match kind {
        EdgeKind::ControlAction => "solid",
        EdgeKind::Feedback => "dashed",
        EdgeKind::IoLink => "dotted",
    }
}

/// Control diagram in the dot language, top-down by control rank.
///
/// Each node of rank r sits in the r-th `rank=same` row. Feedback, io-links
/// and control actions pointing up or sideways carry `constraint=false` so
/// they do not disturb the layering.
pub fn to_dot(model: &Model, opts: &RenderOptions) -> Result<String, ReferenceError> {
    let scope = model.scope(opts.boundary.as_deref())?;
    let hierarchy = rank_scope(&scope);

    let title = match &opts.boundary {
        Some(id) => {
            let sb = model.boundary(id).expect("scope resolved the boundary");
            format!("{}: {}", sb.id, sb.name)
        }
        None => model.name.clone().unwrap_or_default(),
    };

    let mut out = String::from("digraph control_structure {\n  rankdir=TB;\n");
    if !title.is_empty() {
        writeln!(out, "  label={};\n  labelloc=t;", quoted(&title)).unwrap();
    }

    for node in &scope.nodes {
        write!(out, "  {} [label={}, shape={}", quoted(node.id.as_str()), quoted(&node.name), shape(node.kind)).unwrap();
        let mut tip = Vec::new();
        if let Some(pm) = &node.process_model {
            tip.push(format!("process model: {pm}"));
        }
        if let Some(ca) = &node.control_algorithm {
            tip.push(format!("control algorithm: {ca}"));
        }
        if !tip.is_empty() {
            write!(out, ", tooltip={}", quoted(&tip.join("\n"))).unwrap();
        }
        out.push_str("];\n");
    }

    for row in hierarchy.rows(&scope) {
        let ids: Vec<String> = row.iter().map(|n| quoted(n.id.as_str())).collect();
        writeln!(out, "  {{ rank=same; {}; }}", ids.join("; ")).unwrap();
    }

    for edge in &scope.edges {
        if edge.kind == EdgeKind::IoLink && !opts.include_iolinks {
            continue;
        }
        let downward = match (hierarchy.rank(edge.source.as_str()), hierarchy.rank(edge.target.as_str())) {
            (Some(a), Some(b)) => a < b,
            _ => false,
        };
        write!(
            out,
            "  {} -> {} [id={}, label={}, style={}",
            quoted(edge.source.as_str()),
            quoted(edge.target.as_str()),
            quoted(edge.id.as_str()),
            quoted(&edge.label),
            style(edge.kind)
        )
        .unwrap();
        if !(edge.is_control() && downward) {
            out.push_str(", constraint=false");
        }
        out.push_str("];\n");
    }
    out.push_str("}\n");
    Ok(out)
}
