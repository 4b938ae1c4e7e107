use std::collections::HashMap;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::diagnostic::{codes, Diagnostic};
use crate::model::*;
use crate::par::{self, Execution};

/// State of one (action, guide type) cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "state", rename_all = "lowercase")]
pub enum Cell {
    /// At least one UCA; ids sorted.
    Covered { ucas: Vec<Ident> },
    /// Explicitly assessed as not hazardous, with no UCA.
    Waived { assessment: Assessment },
    Gap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageRow {
    pub controller: Ident,
    pub action: Ident,
    pub label: String,
    #[serde(serialize_with = "cells_by_guide")]
    pub cells: [Cell; 4],
}

fn cells_by_guide<S: Serializer>(cells: &[Cell; 4], s: S) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(4))?;
    for (guide, cell) in GuideType::ALL.iter().zip(cells) {
        map.serialize_entry(guide.as_str(), cell)?;
    }
    map.end()
}

impl CoverageRow {
    pub fn cell(&self, guide: GuideType) -> &Cell {
        &self.cells[guide as usize]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct CellCounts {
    pub cells: usize,
    pub covered: usize,
    pub waived: usize,
    pub gaps: usize,
}

impl CellCounts {
    /// (covered + waived) / cells, or 1 for an empty matrix.
    pub fn ratio(&self) -> f64 {
        super::ratio(self.covered + self.waived, self.cells)
    }
}

/// Control action × guide type grid. One row per control-action edge in
/// scope, sorted by (controller id, action id).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageMatrix {
    pub boundary: Option<Ident>,
    pub columns: [GuideType; 4],
    pub rows: Vec<CoverageRow>,
    /// `W002` for cells that have both a UCA and a waiver.
    pub warnings: Vec<Diagnostic>,
}

impl CoverageMatrix {
    pub fn counts(&self) -> CellCounts {
        let mut counts = CellCounts::default();
        for cell in self.rows.iter().flat_map(|r| &r.cells) {
            counts.cells += 1;
            match cell {
                Cell::Covered { .. } => counts.covered += 1,
                Cell::Waived { .. } => counts.waived += 1,
                Cell::Gap => counts.gaps += 1,
            }
        }
        counts
    }

    pub fn ratio(&self) -> f64 {
        self.counts().ratio()
    }
}

pub fn coverage(model: &Model, boundary: Option<&str>) -> Result<CoverageMatrix, ReferenceError> {
    coverage_with(model, boundary, Execution::default())
}

pub fn coverage_with(model: &Model, boundary: Option<&str>, exec: Execution) -> Result<CoverageMatrix, ReferenceError> {
    let scope = model.scope(boundary)?;
    let mut actions: Vec<&Edge> = scope.control_actions().collect();
    actions.sort_by(|a, b| (&a.source, &a.id).cmp(&(&b.source, &b.id)));

    let mut ucas: HashMap<(&str, GuideType), Vec<&Uca>> = HashMap::new();
    for u in &model.ucas {
        ucas.entry((u.action.as_str(), u.guide_type)).or_default().push(u);
    }
    let mut waivers: HashMap<(&str, GuideType), (usize, &Assessment)> = HashMap::new();
    for (i, a) in model.assessments.iter().enumerate() {
        waivers.entry((a.action.as_str(), a.guide_type)).or_insert((i, a));
    }

    let rows: Vec<(CoverageRow, Vec<Diagnostic>)> = par::map(exec, &actions, |edge| {
        let mut warnings = Vec::new();
        let cells = GUIDE_TYPES.map(|guide| {
            let key = (edge.id.as_str(), guide);
            let waiver = waivers.get(&key);
            match ucas.get(&key) {
                Some(found) => {
                    if let Some((i, a)) = waiver {
                        warnings.push(
                            Diagnostic::warning(
                                codes::CONFLICTING_WAIVER,
                                format!(
                                    "cell ({}, {guide}) is waived as not hazardous but has unsafe control actions",
                                    edge.id
                                ),
                                model.spans.assessment(*i).cloned(),
                            )
                            .with_subject(ElementRef::new(ElementClass::Assessment, a.key())),
                        );
                    }
                    let mut ids: Vec<Ident> = found.iter().map(|u| u.id.clone()).collect();
                    ids.sort();
                    Cell::Covered { ucas: ids }
                }
                None => match waiver {
                    Some((_, a)) => Cell::Waived {
                        assessment: (*a).clone(),
                    },
                    None => Cell::Gap,
                },
            }
        });
        (
            CoverageRow {
                controller: edge.source.clone(),
                action: edge.id.clone(),
                label: edge.label.clone(),
                cells,
            },
            warnings,
        )
    });

    let mut matrix = CoverageMatrix {
        boundary: boundary.map(|b| Ident::new(b).expect("resolved boundary ids are valid")),
        columns: GUIDE_TYPES,
        rows: Vec::with_capacity(rows.len()),
        warnings: Vec::new(),
    };
    for (row, warnings) in rows {
        matrix.rows.push(row);
        matrix.warnings.extend(warnings);
    }
    Ok(matrix)
}
