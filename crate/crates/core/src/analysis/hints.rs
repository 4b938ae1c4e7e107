use std::collections::HashSet;

use serde::Serialize;

use super::hierarchy::rank_scope;
use crate::model::{keyword_enum, ElementClass, ElementRef, Model};

keyword_enum! {
    /// Advisory finding kinds, in reporting order.
    HintCode {
        MissingFeedback => "missing-feedback",
        NoProcessModel => "no-process-model",
        OrphanNode => "orphan-node",
        HazardWithoutUca => "hazard-without-uca",
        UcaWithoutScenario => "uca-without-scenario",
        ScenarioWithoutRequirement => "scenario-without-requirement",
        LossWithoutHazard => "loss-without-hazard",
        HierarchyCycle => "hierarchy-cycle",
        SelfLoop => "self-loop",
    }
}

/// An advisory structural finding. Never an error.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Hint {
    pub code: HintCode,
    pub subjects: Vec<ElementRef>,
    pub message: String,
}

impl Hint {
    pub fn new(code: HintCode, subjects: Vec<ElementRef>, message: impl Into<String>) -> Self {
        Hint {
            code,
            subjects,
            message: message.into(),
        }
    }
}

/// Structural causal-factor and completeness hints, sorted by code then
/// subject.
///
/// `no-process-model` only checks that a controller whose actions carry
/// UCAs documents a process model at all; whether that model is correct is
/// beyond static analysis.
pub fn hints(model: &Model) -> Vec<Hint> {
    let mut out = Vec::new();
    let edge_ref = |id: &str| vec![ElementRef::new(ElementClass::Edge, id)];
    let node_ref = |id: &str| vec![ElementRef::new(ElementClass::Node, id)];

    let feedback: HashSet<(&str, &str)> = model
        .edges
        .iter()
        .filter(|e| e.kind == crate::model::EdgeKind::Feedback)
        .map(|e| (e.source.as_str(), e.target.as_str()))
        .collect();
    for e in model.edges.iter().filter(|e| e.is_control()) {
        if !feedback.contains(&(e.target.as_str(), e.source.as_str())) {
            out.push(Hint::new(
                HintCode::MissingFeedback,
                edge_ref(e.id.as_str()),
                format!(
                    "control action `{}` ({} -> {}) has no feedback from `{}` back to `{}`",
                    e.id, e.source, e.target, e.target, e.source
                ),
            ));
        }
    }

    let uca_actions: HashSet<&str> = model.ucas.iter().map(|u| u.action.as_str()).collect();
    let controllers: HashSet<&str> = model
        .edges
        .iter()
        .filter(|e| e.is_control() && uca_actions.contains(e.id.as_str()))
        .map(|e| e.source.as_str())
        .collect();
    for n in &model.nodes {
        let documented = n.process_model.as_deref().is_some_and(|pm| !pm.trim().is_empty());
        if controllers.contains(n.id.as_str()) && !documented {
            out.push(Hint::new(
                HintCode::NoProcessModel,
                node_ref(n.id.as_str()),
                format!("controller `{}` issues actions with UCAs but documents no process model", n.id),
            ));
        }
    }

    let connected: HashSet<&str> = model
        .edges
        .iter()
        .flat_map(|e| [e.source.as_str(), e.target.as_str()])
        .collect();
    for n in model.nodes.iter().filter(|n| !connected.contains(n.id.as_str())) {
        out.push(Hint::new(
            HintCode::OrphanNode,
            node_ref(n.id.as_str()),
            format!("node `{}` has no edges", n.id),
        ));
    }

    let cited: HashSet<&str> = model.ucas.iter().flat_map(|u| u.hazards.iter().map(|h| h.as_str())).collect();
    for h in model.hazards.iter().filter(|h| !cited.contains(h.id.as_str())) {
        out.push(Hint::new(
            HintCode::HazardWithoutUca,
            vec![ElementRef::new(ElementClass::Hazard, h.id.as_str())],
            format!("hazard `{}` is not linked to any unsafe control action", h.id),
        ));
    }

    let cited: HashSet<&str> = model.scenarios.iter().map(|s| s.uca.as_str()).collect();
    for u in model.ucas.iter().filter(|u| !cited.contains(u.id.as_str())) {
        out.push(Hint::new(
            HintCode::UcaWithoutScenario,
            vec![ElementRef::new(ElementClass::Uca, u.id.as_str())],
            format!("uca `{}` has no loss scenario", u.id),
        ));
    }

    let cited: HashSet<&str> = model
        .requirements
        .iter()
        .flat_map(|r| r.scenarios.iter().map(|s| s.as_str()))
        .collect();
    for s in model.scenarios.iter().filter(|s| !cited.contains(s.id.as_str())) {
        out.push(Hint::new(
            HintCode::ScenarioWithoutRequirement,
            vec![ElementRef::new(ElementClass::Scenario, s.id.as_str())],
            format!("scenario `{}` has no safety requirement", s.id),
        ));
    }

    let cited: HashSet<&str> = model.hazards.iter().flat_map(|h| h.leads_to.iter().map(|l| l.as_str())).collect();
    for l in model.losses.iter().filter(|l| !cited.contains(l.id.as_str())) {
        out.push(Hint::new(
            HintCode::LossWithoutHazard,
            vec![ElementRef::new(ElementClass::Loss, l.id.as_str())],
            format!("loss `{}` is not reached by any hazard", l.id),
        ));
    }

    out.extend(rank_scope(&model.whole_scope()).hints);

    for e in model.edges.iter().filter(|e| e.source == e.target) {
        out.push(Hint::new(
            HintCode::SelfLoop,
            edge_ref(e.id.as_str()),
            format!("{} `{}` loops on node `{}`", e.kind, e.id, e.source),
        ));
    }

    out.sort();
    out
}
