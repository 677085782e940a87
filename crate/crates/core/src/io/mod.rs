//! Text formats.
//!
//! * Rule files: one `name = expression` per line, with `!`, `&`, `^`, `|`
//!   (tightest first), parentheses, the constants `0` and `1`, and `#`
//!   comments.
//! * Table files: a `.variables` header naming every node in order, then
//!   one `target <- inputs : bits` record per node.
//! * DOT renderings of networks and decompositions, and JSON documents.

mod dot;
mod expr;
mod json;
mod tables;

use std::fmt;

pub use dot::{emit_decomposition_dot, emit_dot};
pub use expr::{emit_expression, emit_network, parse_expression, parse_network, Expr};
pub use json::{
    emit_json, CanalizingPairDoc, CountDoc, DecompositionDoc, NetworkDoc, NodeDoc, NodeReport,
};
pub use tables::{emit_tables, parse_tables};

/// A positioned syntax or name-resolution error (1-based line and column).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self { line, column, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Strips a `#` comment, returning the content part of the line.
fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(code, _)| code)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
