use std::collections::HashMap;

use crate::diagnostic::{codes, Diagnostic};
use crate::model::*;

/// Semantic checks on a parsed model.
///
/// Errors: dangling references, a UCA whose source differs from its action's
/// source node, UCAs or assessments on edges that are not control actions,
/// empty required reference lists and duplicate assessment cells. Warnings:
/// self-loop edges. An empty result means every cross-reference resolves.
///
/// Output order follows canonical class order, then declaration order.
pub fn validate(model: &Model) -> Vec<Diagnostic> {
    let index = ModelIndex::new(model);
    let mut out = Vec::new();

    let span = |class: ElementClass, id: &Ident| model.spans.get(&ElementRef::new(class, id.as_str())).cloned();
    let dangling = |out: &mut Vec<Diagnostic>, class: ElementClass, id: &Ident, field: &str, target: ElementClass, reference: &Ident| {
        if !index.contains(target, reference.as_str()) {
            out.push(
                Diagnostic::error(
                    codes::DANGLING_REFERENCE,
                    format!("{class} `{id}` references undeclared {target} `{reference}` in `{field}`"),
                    span(class, id),
                )
                .with_subject(ElementRef::new(class, id.as_str()))
                .with_reference(reference.as_str()),
            );
        }
    };
    let empty = |out: &mut Vec<Diagnostic>, class: ElementClass, id: &Ident, field: &str| {
        out.push(
            Diagnostic::error(
                codes::EMPTY_REFERENCE_LIST,
                format!("{class} `{id}` must reference at least one element in `{field}`"),
                span(class, id),
            )
            .with_subject(ElementRef::new(class, id.as_str())),
        );
    };

    for b in &model.boundaries {
        for n in &b.includes {
            dangling(&mut out, ElementClass::Boundary, &b.id, "includes", ElementClass::Node, n);
        }
    }

    for h in &model.hazards {
        dangling(&mut out, ElementClass::Hazard, &h.id, "boundary", ElementClass::Boundary, &h.boundary);
        if h.leads_to.is_empty() {
            empty(&mut out, ElementClass::Hazard, &h.id, "leads_to");
        }
        for l in &h.leads_to {
            dangling(&mut out, ElementClass::Hazard, &h.id, "leads_to", ElementClass::Loss, l);
        }
    }

    for e in &model.edges {
        dangling(&mut out, ElementClass::Edge, &e.id, "from", ElementClass::Node, &e.source);
        dangling(&mut out, ElementClass::Edge, &e.id, "to", ElementClass::Node, &e.target);
        if e.source == e.target {
            out.push(
                Diagnostic::warning(
                    codes::SELF_LOOP,
                    format!("{} `{}` starts and ends at node `{}`", e.kind, e.id, e.source),
                    span(ElementClass::Edge, &e.id),
                )
                .with_subject(ElementRef::new(ElementClass::Edge, e.id.as_str())),
            );
        }
    }

    for u in &model.ucas {
        let subject = ElementRef::new(ElementClass::Uca, u.id.as_str());
        if let Some(source) = &u.source {
            dangling(&mut out, ElementClass::Uca, &u.id, "source", ElementClass::Node, source);
        }
        dangling(&mut out, ElementClass::Uca, &u.id, "action", ElementClass::Edge, &u.action);
        if let Some(edge) = index.edges.get(u.action.as_str()) {
            if !edge.is_control() {
                out.push(
                    Diagnostic::error(
                        codes::NOT_CONTROL_ACTION,
                        format!("uca `{}` refers to `{}`, which is a {} edge, not a control action", u.id, u.action, edge.kind),
                        span(ElementClass::Uca, &u.id),
                    )
                    .with_subject(subject.clone())
                    .with_reference(u.action.as_str()),
                );
            }
            if let Some(source) = u.source.as_ref().filter(|s| **s != edge.source) {
                out.push(
                    Diagnostic::error(
                        codes::ROLE_MISMATCH,
                        format!(
                            "uca `{}` is attached to `{source}` but action `{}` is issued by `{}`",
                            u.id, u.action, edge.source
                        ),
                        span(ElementClass::Uca, &u.id),
                    )
                    .with_subject(subject.clone())
                    .with_reference(source.as_str()),
                );
            }
        }
        if u.hazards.is_empty() {
            empty(&mut out, ElementClass::Uca, &u.id, "hazards");
        }
        for h in &u.hazards {
            dangling(&mut out, ElementClass::Uca, &u.id, "hazards", ElementClass::Hazard, h);
        }
    }

    for s in &model.scenarios {
        dangling(&mut out, ElementClass::Scenario, &s.id, "uca", ElementClass::Uca, &s.uca);
        for element in &s.elements {
            if !index.nodes.contains_key(element.as_str()) && !index.edges.contains_key(element.as_str()) {
                out.push(
                    Diagnostic::error(
                        codes::DANGLING_REFERENCE,
                        format!("scenario `{}` references undeclared node or edge `{element}` in `elements`", s.id),
                        span(ElementClass::Scenario, &s.id),
                    )
                    .with_subject(ElementRef::new(ElementClass::Scenario, s.id.as_str()))
                    .with_reference(element.as_str()),
                );
            }
        }
    }

    for r in &model.requirements {
        if r.scenarios.is_empty() {
            empty(&mut out, ElementClass::Requirement, &r.id, "scenarios");
        }
        for s in &r.scenarios {
            dangling(&mut out, ElementClass::Requirement, &r.id, "scenarios", ElementClass::Scenario, s);
        }
    }

    let mut cells: HashMap<(&str, GuideType), usize> = HashMap::new();
    for (i, a) in model.assessments.iter().enumerate() {
        let subject = ElementRef::new(ElementClass::Assessment, a.key());
        let here = model.spans.assessment(i).cloned();
        match index.edges.get(a.action.as_str()) {
            None => out.push(
                Diagnostic::error(
                    codes::DANGLING_REFERENCE,
                    format!("assessment `{}` references undeclared edge `{}` in `action`", a.key(), a.action),
                    here.clone(),
                )
                .with_subject(subject.clone())
                .with_reference(a.action.as_str()),
            ),
            Some(edge) if !edge.is_control() => out.push(
                Diagnostic::error(
                    codes::NOT_CONTROL_ACTION,
                    format!("assessment `{}` refers to a {} edge, not a control action", a.key(), edge.kind),
                    here.clone(),
                )
                .with_subject(subject.clone())
                .with_reference(a.action.as_str()),
            ),
            Some(_) => {}
        }
        if let Some(&first) = cells.get(&(a.action.as_str(), a.guide_type)) {
            out.push(
                Diagnostic::error(
                    codes::DUPLICATE_ASSESSMENT,
                    format!("cell ({}, {}) is assessed more than once", a.action, a.guide_type),
                    here,
                )
                .with_related(model.spans.assessment(first).cloned())
                .with_subject(subject),
            );
        } else {
            cells.insert((a.action.as_str(), a.guide_type), i);
        }
    }

    out
}
