use std::collections::HashMap;
use std::fmt::Write;

use crate::model::*;

/// Canonical text form of a model.
///
/// Statements appear in class order (losses, boundaries, hazards, nodes,
/// edges, UCAs, scenarios, requirements, assessments), each class in
/// declaration order, one statement per line, with a blank line between
/// non-empty classes. Comments and original formatting are not preserved.
pub fn serialize(model: &Model) -> String {
    let mut sections: Vec<String> = Vec::new();
    if let Some(name) = &model.name {
        sections.push(format!("model {}\n", quote(name)));
    }

    let mut out = String::new();
    for loss in &model.losses {
        writeln!(out, "loss {} {} category={}", loss.id, quote(&loss.description), loss.category).unwrap();
    }
    sections.push(std::mem::take(&mut out));

    for b in &model.boundaries {
        write!(out, "boundary {} {}", b.id, quote(&b.name)).unwrap();
        if let Some(stage) = b.stage {
            write!(out, " stage={stage}").unwrap();
        }
        if !b.includes.is_empty() {
            write!(out, " includes={}", list(&b.includes)).unwrap();
        }
        out.push('\n');
    }
    sections.push(std::mem::take(&mut out));

    for h in &model.hazards {
        writeln!(
            out,
            "hazard {} {} boundary={} leads_to={}",
            h.id,
            quote(&h.description),
            h.boundary,
            list(&h.leads_to)
        )
        .unwrap();
    }
    sections.push(std::mem::take(&mut out));

    for n in &model.nodes {
        write!(out, "node {} {} kind={}", n.id, quote(&n.name), n.kind).unwrap();
        if let Some(pm) = &n.process_model {
            write!(out, " process_model={}", quote(pm)).unwrap();
        }
        if let Some(ca) = &n.control_algorithm {
            write!(out, " control_algorithm={}", quote(ca)).unwrap();
        }
        out.push('\n');
    }
    sections.push(std::mem::take(&mut out));

    for e in &model.edges {
        writeln!(
            out,
            "{} {} from={} to={} {}",
            edge_keyword(e.kind),
            e.id,
            e.source,
            e.target,
            quote(&e.label)
        )
        .unwrap();
    }
    sections.push(std::mem::take(&mut out));

    // First declaration wins, matching how the parser derives sources.
    let mut action_sources: HashMap<&str, &Ident> = HashMap::new();
    for e in &model.edges {
        action_sources.entry(e.id.as_str()).or_insert(&e.source);
    }
    for u in &model.ucas {
        write!(out, "uca {} action={}", u.id, u.action).unwrap();
        // source is written only when it cannot be re-derived
        if let Some(source) = &u.source {
            if action_sources.get(u.action.as_str()) != Some(&source) {
                write!(out, " source={source}").unwrap();
            }
        }
        writeln!(
            out,
            " type={} category={} context={} hazards={}",
            u.guide_type,
            u.category,
            quote(&u.context),
            list(&u.hazards)
        )
        .unwrap();
    }
    sections.push(std::mem::take(&mut out));

    for s in &model.scenarios {
        write!(out, "scenario {} uca={} class={} {}", s.id, s.uca, s.class, quote(&s.description)).unwrap();
        if !s.elements.is_empty() {
            write!(out, " elements={}", list(&s.elements)).unwrap();
        }
        out.push('\n');
    }
    sections.push(std::mem::take(&mut out));

    for r in &model.requirements {
        writeln!(out, "requirement {} scenarios={} {}", r.id, list(&r.scenarios), quote(&r.text)).unwrap();
    }
    sections.push(std::mem::take(&mut out));

    for a in &model.assessments {
        writeln!(
            out,
            "assess action={} type={} verdict={} rationale={}",
            a.action,
            a.guide_type,
            a.verdict,
            quote(&a.rationale)
        )
        .unwrap();
    }
    sections.push(out);

    sections.retain(|s| !s.is_empty());
    sections.join("\n")
}

pub fn edge_keyword(kind: EdgeKind) -> &'static str {
    match kind {
        EdgeKind::ControlAction => "action",
        EdgeKind::Feedback => "feedback",
        EdgeKind::IoLink => "iolink",
    }
}

/// Double-quotes `text`, escaping `"` and `\`.
pub fn quote(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn list(items: &[Ident]) -> String {
    let joined: Vec<&str> = items.iter().map(Ident::as_str).collect();
    format!("[{}]", joined.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    #[test]
    fn empty_model() {
        assert_eq!(serialize(&Model::new()), "");
        let named = Model {
            name: Some("x".into()),
            ..Model::new()
        };
        assert_eq!(serialize(&named), "model \"x\"\n");
    }

    #[test]
    fn canonical_layout() {
        let doc = "# comment\nnode B \"b\" kind=team\nloss L1   \"say \\\"hi\\\"\"  category=sociotechnical\n\
                   action CA1 \"x\" to=B from=B\nboundary SB1 \"s\" includes=[ B ]";
        let m = parse(doc, "t").model.unwrap();
        assert_eq!(
            serialize(&m),
            "loss L1 \"say \\\"hi\\\"\" category=sociotechnical\n\
             \n\
             boundary SB1 \"s\" includes=[B]\n\
             \n\
             node B \"b\" kind=team\n\
             \n\
             action CA1 from=B to=B \"x\"\n"
        );
    }

    #[test]
    fn explicit_uca_source_survives() {
        let doc = "action CA1 from=A to=B \"x\"\n\
                   uca U1 action=CA1 source=P type=provided category=functional context=\"c\" hazards=[H1]\n\
                   uca U2 action=CA1 type=provided category=functional context=\"c\" hazards=[H1]\n";
        let m = parse(doc, "t").model.unwrap();
        let text = serialize(&m);
        assert!(text.contains("uca U1 action=CA1 source=P type"));
        assert!(text.contains("uca U2 action=CA1 type"));
        assert_eq!(parse(&text, "t").model.unwrap(), m);
    }

    #[test]
    fn quoting() {
        assert_eq!(quote(r#"a"b\c"#), r#""a\"b\\c""#);
        assert_eq!(quote("# not a comment"), "\"# not a comment\"");
    }
}
