//! The `.phase` text format.
//!
//! One declaration per line (`\` continues a line), `# ...` comments,
//! `key=value` attributes in any order, `[a,b]` lists and double-quoted
//! strings with `\"` and `\\` escapes. Duplicate ids are rejected while
//! parsing; dangling references are left for [`crate::analysis::validate`]
//! so that a half-written model can still be explored.

pub mod lexer;
mod parser;
mod serialize;

pub use crate::diagnostic::{Diagnostic, Severity};
pub use parser::{parse, ParseResult};
pub use serialize::{edge_keyword, quote, serialize};

/// File extension for analysis documents.
pub const EXTENSION: &str = "phase";
