//! Modeling language and static analysis for STPA-style hazard analyses of
//! AI systems.
//!
//! A `.phase` document declares losses, system boundaries, hazards, a
//! control structure, unsafe control actions (UCAs), loss scenarios and
//! safety requirements. This crate parses such documents ([`dsl`]), checks
//! and analyses them ([`analysis`]), compares versions ([`diff`]) and
//! renders diagrams and reports ([`export`]). The `phase` binary wraps all
//! of it ([`cli`]).
//!
//! ```
//! let doc = r#"
//! loss L1 "Loss of life" category=safety-critical
//! node A "Operator" kind=human
//! node B "Pump" kind=automated-system
//! action CA1 from=A to=B "start infusion"
//! "#;
//! let model = phase::dsl::parse(doc, "example.phase").into_result().unwrap();
//! let coverage = phase::analysis::coverage(&model, None).unwrap();
//! assert_eq!(coverage.counts().gaps, 4);
//! ```

pub mod analysis;
pub mod cli;
pub mod diagnostic;
pub mod diff;
pub mod dsl;
pub mod export;
pub mod model;
pub mod par;
pub mod synth;

pub use diagnostic::{Diagnostic, Severity};
pub use model::{ElementClass, ElementRef, Ident, Model, ReferenceError};
pub use par::Execution;
