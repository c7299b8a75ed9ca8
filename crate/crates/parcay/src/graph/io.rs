//! Line-oriented exchange format and DOT export.
//!
//! ```text
//! vertices 4
//! colour a U
//! class 0 x
//! edge 0 1 a
//! ```
//!
//! `colour` lines are optional on input; undeclared colours are involutive
//! (`I`). The writer declares every colour. An edge line may carry a fifth
//! column, an extra label such as a decomposition colour.

use std::fmt::Write as _;

use thiserror::Error;

use super::ColouredGraph;
use crate::words::{valid_ident, Alphabet, GenKind, Letter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `vertices` header")]
    MissingHeader,
}

pub fn parse_graph(text: &str) -> Result<ColouredGraph, GraphParseError> {
    parse_graph_labelled(text).map(|(g, _)| g)
}

/// Parses the format and returns the optional per-edge labels.
pub fn parse_graph_labelled(text: &str) -> Result<(ColouredGraph, Vec<Option<String>>), GraphParseError> {
    let mut g: Option<ColouredGraph> = None;
    let mut labels = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        let err = |msg: &str| GraphParseError::Syntax { line, msg: msg.to_string() };
        let vertex = |s: &str, g: &ColouredGraph| -> Result<usize, GraphParseError> {
            let v: usize = s.parse().map_err(|_| err(&format!("bad vertex `{s}`")))?;
            if v >= g.vertex_count() {
                return Err(err(&format!("vertex {v} out of range")));
            }
            Ok(v)
        };
        match toks[0] {
            "vertices" => {
                if g.is_some() || toks.len() != 2 {
                    return Err(err("expected a single `vertices N` header"));
                }
                let n: usize = toks[1].parse().map_err(|_| err("bad vertex count"))?;
                g = Some(ColouredGraph::with_vertices(Alphabet::new(), n));
            }
            "colour" | "color" => {
                let g = g.as_mut().ok_or(GraphParseError::MissingHeader)?;
                if toks.len() != 3 || !valid_ident(toks[1]) {
                    return Err(err("expected `colour NAME U|I`"));
                }
                let kind = match toks[2] {
                    "U" => GenKind::U,
                    "I" => GenKind::I,
                    _ => return Err(err("colour kind must be U or I")),
                };
                if g.palette().index(toks[1]).is_some() {
                    return Err(err("colour declared twice or after use"));
                }
                g.ensure_colour(toks[1], kind);
            }
            "class" => {
                let g = g.as_mut().ok_or(GraphParseError::MissingHeader)?;
                if toks.len() != 3 {
                    return Err(err("expected `class V NAME`"));
                }
                let v = vertex(toks[1], g)?;
                g.set_class(v, toks[2]);
            }
            "edge" => {
                let g = g.as_mut().ok_or(GraphParseError::MissingHeader)?;
                if toks.len() < 3 || toks.len() > 5 {
                    return Err(err("expected `edge U V [COLOUR [LABEL]]`"));
                }
                let u = vertex(toks[1], g)?;
                let v = vertex(toks[2], g)?;
                let name = toks.get(3).copied().unwrap_or("e");
                if !valid_ident(name) {
                    return Err(err(&format!("bad colour `{name}`")));
                }
                let c = g.ensure_colour(name, GenKind::I);
                g.add_edge(u, v, Letter::new(c, false));
                labels.push(toks.get(4).map(|s| s.to_string()));
            }
            other => return Err(err(&format!("unknown directive `{other}`"))),
        }
    }
    let g = g.ok_or(GraphParseError::MissingHeader)?;
    Ok((g, labels))
}

pub fn write_graph(g: &ColouredGraph) -> String {
    write_graph_labelled(g, None)
}

pub fn write_graph_labelled(g: &ColouredGraph, labels: Option<&[String]>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "vertices {}", g.vertex_count());
    let p = g.palette();
    for c in 0..p.len() {
        let kind = if p.kind(c) == GenKind::U { "U" } else { "I" };
        let _ = writeln!(s, "colour {} {kind}", p.name(c));
    }
    for v in 0..g.vertex_count() {
        if let Some(c) = g.class_of(v) {
            let _ = writeln!(s, "class {v} {c}");
        }
    }
    for e in 0..g.edge_count() {
        let d = 2 * e;
        // U-coloured edges are written along their positive dart
        let d = if g.colour(d).inv { d ^ 1 } else { d };
        let (u, v) = (g.origin(d), g.tau(d));
        let _ = write!(s, "edge {u} {v} {}", p.name(g.colour(d).gen()));
        if let Some(ls) = labels {
            let _ = write!(s, " {}", ls[e]);
        }
        s.push('\n');
    }
    s
}

const PENS: [&str; 10] = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan", "gray40", "gold"];

pub fn to_dot(g: &ColouredGraph) -> String {
    let mut s = String::from("digraph G {\n  node [shape=circle, width=0.2, label=\"\"];\n");
    for v in 0..g.vertex_count() {
        match g.class_of(v) {
            Some(c) => {
                let _ = writeln!(s, "  {v} [xlabel=\"{v}:{c}\"];");
            }
            None => {
                let _ = writeln!(s, "  {v} [xlabel=\"{v}\"];");
            }
        }
    }
    let p = g.palette();
    for e in 0..g.edge_count() {
        let d = if g.colour(2 * e).inv { 2 * e + 1 } else { 2 * e };
        let c = g.colour(d).gen();
        let dir = if p.kind(c) == GenKind::U { "forward" } else { "none" };
        let _ = writeln!(
            s,
            "  {} -> {} [color={}, dir={dir}, tooltip=\"{}\"];",
            g.origin(d),
            g.tau(d),
            PENS[c % PENS.len()],
            p.name(c)
        );
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let text = "vertices 4\ncolour a U\ncolour b I\nclass 0 0\nclass 1 1\nclass 2 1\nclass 3 0\nedge 0 0 a\nedge 0 1 b\nedge 1 0 b\nedge 1 2 a\nedge 2 1 a\nedge 2 3 b\nedge 3 2 b\nedge 3 3 a\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 8);
        assert_eq!(g.degree(0), 4);
        assert_eq!(write_graph(&g), text);
        assert!(to_dot(&g).contains("dir=forward"));
    }

    #[test]
    fn errors_report_lines() {
        assert_eq!(parse_graph("edge 0 1\n"), Err(GraphParseError::MissingHeader));
        assert!(matches!(parse_graph("vertices 2\nedge 0 5 a\n"), Err(GraphParseError::Syntax { line: 2, .. })));
    }

    #[test]
    fn labels_column() {
        let (g, l) = parse_graph_labelled("vertices 2\nedge 0 1 e m\nedge 0 1 e c\n").unwrap();
        assert_eq!(g.multiplicity(0, 1), 2);
        assert_eq!(l, vec![Some("m".into()), Some("c".into())]);
    }
}
