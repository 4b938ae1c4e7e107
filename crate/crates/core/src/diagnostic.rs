use std::fmt;

use serde::Serialize;

use crate::model::{ElementRef, Span};

/// Stable diagnostic codes. `P` codes come from the parser, `V` codes from
/// semantic validation, `W` codes are warnings.
pub mod codes {
    pub const LEXICAL: &str = "P001";
    pub const SYNTAX: &str = "P002";
    pub const DUPLICATE_ID: &str = "P003";
    pub const INVALID_ENUM: &str = "P004";

    pub const DANGLING_REFERENCE: &str = "V001";
    pub const ROLE_MISMATCH: &str = "V002";
    pub const NOT_CONTROL_ACTION: &str = "V003";
    pub const EMPTY_REFERENCE_LIST: &str = "V004";
    pub const DUPLICATE_ASSESSMENT: &str = "V005";

    pub const SELF_LOOP: &str = "W001";
    pub const CONFLICTING_WAIVER: &str = "W002";
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: &'static str,
    pub message: String,
    pub span: Option<Span>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub related_span: Option<Span>,
    /// Element the diagnostic is about, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subject: Option<ElementRef>,
    /// The offending identifier for reference errors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<String>,
}

impl Diagnostic {
    pub fn error(code: &'static str, message: impl Into<String>, span: Option<Span>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            code,
            message: message.into(),
            span,
            related_span: None,
            subject: None,
            reference: None,
        }
    }

    pub fn warning(code: &'static str, message: impl Into<String>, span: Option<Span>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            ..Diagnostic::error(code, message, span)
        }
    }

    pub fn with_related(mut self, span: Option<Span>) -> Self {
        self.related_span = span;
        self
    }

    pub fn with_subject(mut self, subject: ElementRef) -> Self {
        self.subject = Some(subject);
        self
    }

    pub fn with_reference(mut self, reference: impl Into<String>) -> Self {
        self.reference = Some(reference.into());
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    /// Compiler-style rendering: `file:line:col: severity[code]: message`.
    /// `fallback_file` names the input when the diagnostic has no span.
    pub fn render(&self, fallback_file: &str) -> String {
        let mut out = match &self.span {
            Some(span) => format!("{span}: {}[{}]: {}", self.severity, self.code, self.message),
            None => format!("{fallback_file}: {}[{}]: {}", self.severity, self.code, self.message),
        };
        if let Some(related) = &self.related_span {
            out.push_str(&format!("\n{related}: note: previously declared here"));
        }
        out
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("<input>"))
    }
}

pub fn has_errors(diagnostics: &[Diagnostic]) -> bool {
    diagnostics.iter().any(Diagnostic::is_error)
}
