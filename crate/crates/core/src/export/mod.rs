//! Deterministic renderers. Equal inputs always give byte-equal output.

mod csv;
mod dot;
mod json;
mod markdown;

pub use self::csv::coverage_csv;
pub use dot::{to_dot, RenderOptions};
pub use json::{report_json, SCHEMA_VERSION};
pub use markdown::report_markdown;
