//! Text, JSON and DOT encodings of presentation diagrams.
//!
//! Text format, one statement per line, `#` starting a comment:
//!
//! ```text
//! gen a b c
//! edge a b 4
//! edge b c 3
//! ```
//!
//! Exactly one `gen` line comes first; each unordered pair appears in at
//! most one `edge` line and pairs without an edge have label infinity.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{valid_name, DiagramError, PDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagramFormat {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: {error}")]
    Invalid {
        line: usize,
        column: usize,
        error: DiagramError,
    },
    #[error("json: {0}")]
    Json(String),
    #[error("json: {0}")]
    JsonInvalid(DiagramError),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonDiagram {
    generators: Vec<String>,
    edges: Vec<(String, String, u32)>,
}

/// Splits a line into tokens with their 1-based character columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in content.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((col + 1, byte)),
            (true, Some((c, b))) => {
                out.push((c, &content[b..byte]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((c, b)) = start {
        out.push((c, &content[b..]));
    }
    out
}

/// Parses the text format.
pub fn parse_diagram(text: &str) -> Result<PDiagram, ParseError> {
    let mut diagram: Option<PDiagram> = None;
    let mut last_line = 1;
    for (n, line) in text.lines().enumerate() {
        let line_no = n + 1;
        last_line = line_no;
        let toks = tokens(line);
        let Some(&(col, keyword)) = toks.first() else {
            continue;
        };
        let syntax = |column: usize, message: String| ParseError::Syntax {
            line: line_no,
            column,
            message,
        };
        let invalid = |column: usize, error: DiagramError| ParseError::Invalid {
            line: line_no,
            column,
            error,
        };
        match keyword {
            "gen" => {
                if diagram.is_some() {
                    return Err(syntax(col, "repeated `gen` statement".into()));
                }
                let mut d = PDiagram::empty();
                for &(c, name) in &toks[1..] {
                    if !valid_name(name) {
                        return Err(invalid(c, DiagramError::InvalidName(name.into())));
                    }
                    if d.index.contains_key(name) {
                        return Err(invalid(c, DiagramError::DuplicateGenerator(name.into())));
                    }
                    d.index.insert(name.to_string(), d.names.len());
                    d.names.push(name.to_string());
                }
                diagram = Some(d);
            }
            "edge" => {
                let Some(d) = diagram.as_mut() else {
                    return Err(syntax(col, "`edge` before `gen`".into()));
                };
                if toks.len() != 4 {
                    return Err(syntax(
                        col,
                        format!("`edge` takes 3 arguments, found {}", toks.len() - 1),
                    ));
                }
                let (ca, a) = toks[1];
                let (cb, b) = toks[2];
                let (cm, m) = toks[3];
                let i = d.index_of(a).map_err(|e| invalid(ca, e))?;
                let j = d.index_of(b).map_err(|e| invalid(cb, e))?;
                if i == j {
                    return Err(invalid(cb, DiagramError::SelfPair(a.into())));
                }
                let label: u32 = m
                    .parse()
                    .map_err(|_| syntax(cm, format!("expected an integer label, found `{m}`")))?;
                d.add_edge(a, b, label).map_err(|e| {
                    let column = if matches!(e, DiagramError::LabelTooSmall { .. }) {
                        cm
                    } else {
                        col
                    };
                    invalid(column, e)
                })?;
            }
            other => return Err(syntax(col, format!("unknown statement `{other}`"))),
        }
    }
    diagram.ok_or(ParseError::Syntax {
        line: last_line,
        column: 1,
        message: "missing `gen` statement".into(),
    })
}

/// Parses the JSON format `{"generators": [..], "edges": [[a, b, m], ..]}`.
pub fn parse_json(text: &str) -> Result<PDiagram, ParseError> {
    let raw: JsonDiagram =
        serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    let mut d = PDiagram::new(raw.generators).map_err(ParseError::JsonInvalid)?;
    for (a, b, m) in &raw.edges {
        d.add_edge(a, b, *m).map_err(ParseError::JsonInvalid)?;
    }
    Ok(d)
}

/// Parses either format, choosing JSON when the input starts with `{`.
pub fn read_diagram(text: &str) -> Result<PDiagram, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_diagram(text)
    }
}

fn dot_quote(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\"))
}

/// Serializes a diagram. Output has no trailing newline.
pub fn emit_diagram(d: &PDiagram, format: DiagramFormat) -> String {
    match format {
        DiagramFormat::Text => {
            let mut out = String::from("gen");
            for name in d.names() {
                out.push(' ');
                out.push_str(name);
            }
            for (i, j, m) in d.edges() {
                let _ = write!(out, "\nedge {} {} {m}", d.name(i), d.name(j));
            }
            out
        }
        DiagramFormat::Json => {
            let raw = JsonDiagram {
                generators: d.names().to_vec(),
                edges: d
                    .edges()
                    .map(|(i, j, m)| (d.name(i).to_string(), d.name(j).to_string(), m))
                    .collect(),
            };
            serde_json::to_string(&raw).expect("diagram serializes")
        }
        DiagramFormat::Dot => {
            let mut out = String::from("graph coxeter {\n");
            for name in d.names() {
                let _ = writeln!(out, "  {};", dot_quote(name));
            }
            for (i, j, m) in d.edges() {
                let _ = writeln!(
                    out,
                    "  {} -- {} [label=\"{m}\"];",
                    dot_quote(d.name(i)),
                    dot_quote(d.name(j))
                );
            }
            out.push('}');
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Label;

    const SQUARE: &str = "gen a b c d\nedge a b 2\nedge b c 2\nedge c d 2\nedge d a 2";

    #[test]
    fn parses_single_edge() {
        let d = parse_diagram("gen a b\nedge a b 6").unwrap();
        assert_eq!(d.names(), ["a", "b"]);
        assert_eq!(d.label(0, 1), Label::Finite(6));
        assert_eq!(emit_diagram(&d, DiagramFormat::Text), "gen a b\nedge a b 6");
    }

    #[test]
    fn parses_rectangle_group() {
        let d = parse_diagram(SQUARE).unwrap();
        assert_eq!(d.rank(), 4);
        assert_eq!(d.edge_count(), 4);
        assert!(d.edges().all(|(_, _, m)| m == 2));
        assert_eq!(d.label_by_name("a", "c").unwrap(), Label::Infinity);
    }

    #[test]
    fn comments_and_blank_lines() {
        let d = parse_diagram("# header\n\ngen a b   # two\n  edge b a 3 # trailing\n").unwrap();
        assert_eq!(d.label(0, 1), Label::Finite(3));
    }

    #[test]
    fn self_pair_is_rejected() {
        let err = parse_diagram("gen a\nedge a a 3").unwrap_err();
        assert_eq!(
            err,
            ParseError::Invalid {
                line: 2,
                column: 8,
                error: DiagramError::SelfPair("a".into())
            }
        );
    }

    #[test]
    fn error_positions() {
        let err = parse_diagram("gen a b\nedge a x 3").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Invalid {
                line: 2,
                column: 8,
                error: DiagramError::UnknownGenerator(_)
            }
        ));
        let err = parse_diagram("gen a b\nedge a b 1").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Invalid {
                line: 2,
                column: 10,
                error: DiagramError::LabelTooSmall { .. }
            }
        ));
        let err = parse_diagram("gen a b\nedge a b 3\nedge b a 4").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Invalid {
                line: 3,
                error: DiagramError::DuplicateEdge(..),
                ..
            }
        ));
        let err = parse_diagram("gen a b a").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Invalid {
                line: 1,
                column: 9,
                error: DiagramError::DuplicateGenerator(_)
            }
        ));
        let err = parse_diagram("gen a b\nedge a b x").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Syntax {
                line: 2,
                column: 10,
                ..
            }
        ));
        let err = parse_diagram("edge a b 3").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Syntax {
                line: 1,
                column: 1,
                ..
            }
        ));
        let err = parse_diagram("gen a b\nedge a b").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }));
        let err = parse_diagram("gen a\ngen b").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }));
        assert!(parse_diagram("").is_err());
        assert!(parse_diagram("gen a\nvertex b").is_err());
    }

    #[test]
    fn empty_diagram_round_trips() {
        let d = parse_diagram("gen").unwrap();
        assert_eq!(d.rank(), 0);
        assert_eq!(emit_diagram(&d, DiagramFormat::Text), "gen");
        assert_eq!(
            parse_json(&emit_diagram(&d, DiagramFormat::Json)).unwrap(),
            d
        );
    }

    #[test]
    fn json_encoding() {
        let d = parse_diagram(SQUARE).unwrap();
        let json = emit_diagram(&d, DiagramFormat::Json);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["generators"].as_array().unwrap().len(), 4);
        assert_eq!(value["edges"].as_array().unwrap().len(), 4);
        assert_eq!(value["edges"][0], serde_json::json!(["a", "b", 2]));
        assert_eq!(parse_json(&json).unwrap(), d);
        assert_eq!(read_diagram(&json).unwrap(), d);

        assert!(matches!(
            parse_json(r#"{"generators": ["a"], "edges": [["a", "a", 3]]}"#),
            Err(ParseError::JsonInvalid(DiagramError::SelfPair(_)))
        ));
        assert!(matches!(
            parse_json(r#"{"generators": ["a", "b"], "edges": [["a", "b", 1]]}"#),
            Err(ParseError::JsonInvalid(DiagramError::LabelTooSmall { .. }))
        ));
        assert!(matches!(
            parse_json(r#"{"generators": ["a"]"#),
            Err(ParseError::Json(_))
        ));
    }

    #[test]
    fn dot_encoding() {
        let d = parse_diagram(SQUARE).unwrap();
        let dot = emit_diagram(&d, DiagramFormat::Dot);
        assert!(dot.starts_with("graph coxeter {"));
        assert!(dot.ends_with('}'));
        assert_eq!(
            dot.lines()
                .filter(|l| l.trim_end().ends_with("\";") && !l.contains("--"))
                .count(),
            4
        );
        assert_eq!(dot.matches("[label=\"2\"]").count(), 4);
        assert!(dot.contains("\"a\" -- \"b\" [label=\"2\"];"));
    }
}
