//! Semantic validation and structural analyses over a [`Model`].
//!
//! Every function here is pure over an immutable model, so independent
//! analyses can run on separate threads; [`Analyses::run_with`] does that.

mod coverage;
mod hierarchy;
mod hints;
mod metrics;
mod trace;
mod validate;

pub use coverage::{coverage, coverage_with, Cell, CellCounts, CoverageMatrix, CoverageRow};
pub use hierarchy::{hierarchy_ranks, Hierarchy};
pub(crate) use hierarchy::rank_scope;
pub use hints::{hints, Hint, HintCode};
pub use metrics::{metrics, metrics_with, ChainCompleteness, Counts, CoverageSummary, LossCategories, Metrics};
pub use trace::{trace_loss, trace_node, Accountability, TraceItem, TraceNode};
pub use validate::validate;

use crate::diagnostic::Diagnostic;
use crate::model::Model;
use crate::par::{self, Execution};

/// `numerator / denominator`, defined as 1 when the denominator is 0 so that
/// an empty model counts as complete.
pub fn ratio(numerator: usize, denominator: usize) -> f64 {
    if denominator == 0 {
        1.0
    } else {
        numerator as f64 / denominator as f64
    }
}

/// The standard analysis bundle for one model.
#[derive(Debug, Clone, PartialEq)]
pub struct Analyses {
    /// Validation diagnostics followed by coverage conflict warnings.
    pub diagnostics: Vec<Diagnostic>,
    /// Whole-model coverage.
    pub coverage: CoverageMatrix,
    pub hints: Vec<Hint>,
    pub metrics: Metrics,
}

impl Analyses {
    pub fn run(model: &Model) -> Self {
        Self::run_with(model, Execution::default())
    }

    pub fn run_with(model: &Model, exec: Execution) -> Self {
        let ((mut diagnostics, hints), coverage) = par::join(
            exec,
            || par::join(exec, || validate(model), || hints(model)),
            || coverage_with(model, None, exec).expect("whole-model coverage has no boundary to resolve"),
        );
        diagnostics.extend(coverage.warnings.iter().cloned());
        let metrics = metrics_with(model, &coverage);
        Analyses {
            diagnostics,
            coverage,
            hints,
            metrics,
        }
    }

    pub fn has_errors(&self) -> bool {
        crate::diagnostic::has_errors(&self.diagnostics)
    }
}
