//! The `.geo` specification language.
//!
//! A document declares one chart, scalars, forms, bundles, algebroids and
//! pairs, followed by `check` statements naming a suite and a target.
//!
//! ```text
//! chart (x, y);
//! form F2 = dx ^ dy;
//! bundle E { fiber theta; conn A = dtheta + x*dy; flux H = A ^ F2; };
//! bundle Ehat { fiber phi; conn Ah = dphi + x*dy; flux Hh = Ah ^ F2; };
//! pair P = tdual(E, Ehat);
//! check theorem1 on P;
//! ```

mod ast;
mod elaborate;
mod lexer;
mod parser;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use ast::*;
pub use elaborate::{elaborate, ElabOptions, Environment, PairObject, SUITES};
pub use parser::{parse, parse_bytes};

use crate::report::CheckReport;

/// Byte range in the source.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn to(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }

    /// 1-based line and column of the start, counted in characters.
    pub fn line_col(&self, src: &str) -> (usize, usize) {
        let upto = &src.as_bytes()[..self.start.min(src.len())];
        let line = upto.iter().filter(|&&b| b == b'\n').count() + 1;
        let line_start = upto.iter().rposition(|&b| b == b'\n').map_or(0, |p| p + 1);
        let col = String::from_utf8_lossy(&upto[line_start..]).chars().count() + 1;
        (line, col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DiagnosticKind {
    SyntaxError { expected: Vec<String> },
    UndefinedName(String),
    DuplicateName(String),
    DegreeError,
    /// Any other elaboration failure (wrong kind of object, bad arguments,
    /// symbolic errors).
    Semantic,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[error("{message}")]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub message: String,
    pub span: Span,
}

impl Diagnostic {
    pub fn new(kind: DiagnosticKind, message: impl Into<String>, span: Span) -> Self {
        Diagnostic {
            kind,
            message: message.into(),
            span,
        }
    }

    /// `line:col: message`, with a caret under the offending source.
    pub fn render(&self, src: &str) -> String {
        let (line, col) = self.span.line_col(src);
        let text = src.lines().nth(line - 1).unwrap_or("");
        let width = src
            .get(self.span.start..self.span.end.min(src.len()))
            .map_or(1, |s| s.lines().next().map_or(1, |l| l.chars().count().max(1)));
        format!(
            "{line}:{col}: error: {}\n  {text}\n  {}{}",
            self.message,
            " ".repeat(col - 1),
            "^".repeat(width)
        )
    }
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagnosticKind::SyntaxError { .. } => write!(f, "SyntaxError"),
            DiagnosticKind::UndefinedName(_) => write!(f, "UndefinedName"),
            DiagnosticKind::DuplicateName(_) => write!(f, "DuplicateName"),
            DiagnosticKind::DegreeError => write!(f, "DegreeError"),
            DiagnosticKind::Semantic => write!(f, "SemanticError"),
        }
    }
}

/// Parses, elaborates and runs every `check` whose suite passes the filter.
/// Reports follow source order.
pub fn run_source(
    src: &str,
    suite: Option<&str>,
    options: &ElabOptions,
) -> Result<Vec<CheckReport>, Diagnostic> {
    let doc = parse(src)?;
    run(&doc, suite, options)
}

pub fn run(
    doc: &GeoDocument,
    suite: Option<&str>,
    options: &ElabOptions,
) -> Result<Vec<CheckReport>, Diagnostic> {
    if let Some(s) = suite {
        if !SUITES.contains(&s) {
            return Err(Diagnostic::new(
                DiagnosticKind::Semantic,
                format!("unknown suite `{s}`; expected one of {}", SUITES.join(", ")),
                Span::default(),
            ));
        }
    }
    let env = elaborate(doc, options)?;
    Ok(env.run(suite))
}
