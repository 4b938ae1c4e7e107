use std::collections::HashSet;

use serde::Serialize;

use super::coverage::{coverage, CellCounts, CoverageMatrix};
use super::ratio;
use crate::model::{EdgeKind, LossCategory, Model};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Counts {
    pub losses: usize,
    pub boundaries: usize,
    pub hazards: usize,
    pub nodes: usize,
    pub edges: usize,
    pub control_actions: usize,
    pub feedback: usize,
    pub io_links: usize,
    pub ucas: usize,
    pub scenarios: usize,
    pub requirements: usize,
    pub assessments: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct LossCategories {
    pub safety_critical: usize,
    pub performance_related: usize,
    pub sociotechnical: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoverageSummary {
    #[serde(flatten)]
    pub counts: CellCounts,
    pub ratio: f64,
}

/// Share of each chain layer that is linked to the next one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainCompleteness {
    pub losses_with_hazard: f64,
    pub hazards_with_uca: f64,
    pub ucas_with_scenario: f64,
    pub scenarios_with_requirement: f64,
}

/// Summary numbers. Every ratio is 1 when its denominator is 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Metrics {
    pub counts: Counts,
    pub loss_categories: LossCategories,
    pub coverage: CoverageSummary,
    pub chain: ChainCompleteness,
}

pub fn metrics(model: &Model) -> Metrics {
    let matrix = coverage(model, None).expect("whole-model coverage has no boundary to resolve");
    metrics_with(model, &matrix)
}

/// Metrics reusing an already computed whole-model coverage matrix.
pub fn metrics_with(model: &Model, matrix: &CoverageMatrix) -> Metrics {
    let edges = |kind: EdgeKind| model.edges.iter().filter(|e| e.kind == kind).count();
    let counts = Counts {
        losses: model.losses.len(),
        boundaries: model.boundaries.len(),
        hazards: model.hazards.len(),
        nodes: model.nodes.len(),
        edges: model.edges.len(),
        control_actions: edges(EdgeKind::ControlAction),
        feedback: edges(EdgeKind::Feedback),
        io_links: edges(EdgeKind::IoLink),
        ucas: model.ucas.len(),
        scenarios: model.scenarios.len(),
        requirements: model.requirements.len(),
        assessments: model.assessments.len(),
    };

    let mut loss_categories = LossCategories::default();
    for l in &model.losses {
        *match l.category {
            LossCategory::SafetyCritical => &mut loss_categories.safety_critical,
            LossCategory::PerformanceRelated => &mut loss_categories.performance_related,
            LossCategory::Sociotechnical => &mut loss_categories.sociotechnical,
        } += 1;
    }

    let cells = matrix.counts();

    let reached: HashSet<&str> = model.hazards.iter().flat_map(|h| h.leads_to.iter().map(|l| l.as_str())).collect();
    let losses_with_hazard = model.losses.iter().filter(|l| reached.contains(l.id.as_str())).count();
    let reached: HashSet<&str> = model.ucas.iter().flat_map(|u| u.hazards.iter().map(|h| h.as_str())).collect();
    let hazards_with_uca = model.hazards.iter().filter(|h| reached.contains(h.id.as_str())).count();
    let reached: HashSet<&str> = model.scenarios.iter().map(|s| s.uca.as_str()).collect();
    let ucas_with_scenario = model.ucas.iter().filter(|u| reached.contains(u.id.as_str())).count();
    let reached: HashSet<&str> = model
        .requirements
        .iter()
        .flat_map(|r| r.scenarios.iter().map(|s| s.as_str()))
        .collect();
    let scenarios_with_requirement = model.scenarios.iter().filter(|s| reached.contains(s.id.as_str())).count();

    Metrics {
        counts,
        loss_categories,
        coverage: CoverageSummary {
            counts: cells,
            ratio: cells.ratio(),
        },
        chain: ChainCompleteness {
            losses_with_hazard: ratio(losses_with_hazard, counts.losses),
            hazards_with_uca: ratio(hazards_with_uca, counts.hazards),
            ucas_with_scenario: ratio(ucas_with_scenario, counts.ucas),
            scenarios_with_requirement: ratio(scenarios_with_requirement, counts.scenarios),
        },
    }
}
