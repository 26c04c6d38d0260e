use serde_json::{json, Value};
use superwalk_core::{Graph, GraphBuilder};

use super::FormatError;

fn string_array<'a>(value: &'a Value, what: &str) -> Result<Vec<&'a str>, FormatError> {
    let items = value
        .as_array()
        .ok_or_else(|| FormatError::Json(format!("`{what}` must be an array")))?;
    items
        .iter()
        .map(|v| {
            v.as_str()
                .ok_or_else(|| FormatError::Json(format!("`{what}` entries must be strings")))
        })
        .collect()
}

/// Parses `{"vertices": [...], "edges": [[tail, head], ...]}`.
pub fn parse_json_graph(text: &str) -> Result<Graph, FormatError> {
    let doc: Value = serde_json::from_str(text)?;
    let obj = doc
        .as_object()
        .ok_or_else(|| FormatError::Json("top level must be an object".into()))?;
    let vertices = obj
        .get("vertices")
        .ok_or_else(|| FormatError::Json("missing `vertices`".into()))?;
    let edges = obj
        .get("edges")
        .ok_or_else(|| FormatError::Json("missing `edges`".into()))?
        .as_array()
        .ok_or_else(|| FormatError::Json("`edges` must be an array".into()))?;

    let mut builder = GraphBuilder::new();
    for label in string_array(vertices, "vertices")? {
        builder.add_vertex(label)?;
    }
    for pair in edges {
        match string_array(pair, "edges[]")?.as_slice() {
            [tail, head] => {
                builder.add_edge(tail, head)?;
            }
            _ => {
                return Err(FormatError::Json(
                    "each edge must be a [tail, head] pair".into(),
                ))
            }
        }
    }
    Ok(builder.build()?)
}

pub fn write_json_graph(g: &Graph) -> String {
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| json!([g.vertex_label(e.tail()), g.vertex_label(e.head())]))
        .collect();
    let doc = json!({ "vertices": g.vertex_labels(), "edges": edges });
    let mut out = doc.to_string();
    out.push('\n');
    out
}
