//! Graph files, matrix output and serialized results.
//!
//! Two graph formats are supported:
//!
//! * the edge list ([`parse_edge_list`], [`write_edge_list`]):
//!
//!   ```text
//!   # comment
//!   vertex v1        # optional; fixes vertex order
//!   v1 v2            # edge oriented v1 -> v2
//!   ```
//!
//! * JSON ([`parse_json_graph`], [`write_json_graph`]):
//!   `{"vertices": ["a", "b"], "edges": [["a", "b"]]}`.
//!
//! Vertex order and edge order in a file fix the row and column order of
//! every matrix computed from it. Exact integers are always written as
//! decimal strings so nothing is lost past 53 or 64 bits.

mod edge_list;
mod json_graph;
mod matrix;
mod records;

pub use edge_list::{parse_edge_list, write_edge_list};
pub use json_graph::{parse_json_graph, write_json_graph};
pub use matrix::{
    parse_int_matrix_csv, parse_int_matrix_json, write_matrix, MatrixFormat, MatrixOutput,
};
pub use records::{
    evolved_state_csv, evolved_state_json, kernel_csv, kernel_json, parse_state, report_json,
    reports_json, walk_record_json,
};

use superwalk_core::GraphError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error(transparent)]
    Invalid(#[from] GraphError),
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("label `{0}` cannot be written to an edge list")]
    UnrepresentableLabel(String),
    #[error("invalid matrix: {0}")]
    Matrix(String),
    #[error("invalid state: {0}")]
    State(String),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e.to_string())
    }
}

/// Parses either format, choosing JSON when the first non-blank character
/// is `{`.
pub fn parse_graph(text: &str) -> Result<superwalk_core::Graph, FormatError> {
    if text.trim_start().starts_with('{') {
        parse_json_graph(text)
    } else {
        parse_edge_list(text)
    }
}
