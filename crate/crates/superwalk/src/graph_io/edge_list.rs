use superwalk_core::{Graph, GraphBuilder, GraphError};

use super::FormatError;

const DECLARATION: &str = "vertex";

/// A whitespace-separated token and its 1-based character column.
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let content = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut tokens = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (column, (byte, ch)) in content.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((byte, column + 1)),
            (true, Some((b, c))) => {
                tokens.push(Token {
                    text: &content[b..byte],
                    column: c,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some((b, c)) = start {
        tokens.push(Token {
            text: &content[b..],
            column: c,
        });
    }
    tokens
}

struct Declaration<'a> {
    line: usize,
    label: &'a str,
}

struct EdgeLine<'a> {
    line: usize,
    tail: &'a str,
    head: &'a str,
}

/// Parses the edge-list format.
///
/// If any `vertex` declarations are present they fix the vertex order and
/// every edge endpoint must be declared. Otherwise vertices are ordered by
/// first appearance. Edges keep their line order and are oriented
/// `tail -> head` as written.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut declarations = Vec::new();
    let mut edges = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let tokens = tokenize(raw);
        match tokens.as_slice() {
            [] => {}
            [kw, label] if kw.text == DECLARATION => declarations.push(Declaration {
                line,
                label: label.text,
            }),
            [kw, rest @ ..] if kw.text == DECLARATION => {
                let column = rest.get(1).map_or(kw.column, |t| t.column);
                return Err(FormatError::Syntax {
                    line,
                    column,
                    message: "expected `vertex <label>`".into(),
                });
            }
            [tail, head] => edges.push(EdgeLine {
                line,
                tail: tail.text,
                head: head.text,
            }),
            [only] => {
                return Err(FormatError::Syntax {
                    line,
                    column: only.column + only.text.chars().count(),
                    message: "expected `<tail> <head>`, found a single label".into(),
                })
            }
            [_, _, extra, ..] => {
                return Err(FormatError::Syntax {
                    line,
                    column: extra.column,
                    message: "expected `<tail> <head>`, found trailing tokens".into(),
                })
            }
        }
    }

    let attribute = |line: usize| move |source: GraphError| FormatError::Graph { line, source };

    let mut builder = GraphBuilder::new();
    let declared = !declarations.is_empty();
    for d in &declarations {
        builder.add_vertex(d.label).map_err(attribute(d.line))?;
    }
    for e in &edges {
        if !declared {
            builder.ensure_vertex(e.tail).map_err(attribute(e.line))?;
            builder.ensure_vertex(e.head).map_err(attribute(e.line))?;
        }
        builder
            .add_edge(e.tail, e.head)
            .map_err(attribute(e.line))?;
    }
    Ok(builder.build()?)
}

fn representable(label: &str) -> bool {
    !label.is_empty()
        && label != DECLARATION
        && !label.contains('#')
        && !label.chars().any(char::is_whitespace)
}

/// Writes every vertex declaration followed by every edge, one per line.
pub fn write_edge_list(g: &Graph) -> Result<String, FormatError> {
    if let Some(bad) = g.vertex_labels().iter().find(|l| !representable(l)) {
        return Err(FormatError::UnrepresentableLabel(bad.clone()));
    }
    let mut out = String::new();
    for label in g.vertex_labels() {
        out.push_str(DECLARATION);
        out.push(' ');
        out.push_str(label);
        out.push('\n');
    }
    for e in g.edges() {
        out.push_str(g.vertex_label(e.tail()));
        out.push(' ');
        out.push_str(g.vertex_label(e.head()));
        out.push('\n');
    }
    Ok(out)
}
