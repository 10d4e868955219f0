//! Interchange format (`{"n": .., "edges": [[u, v], ..]}`) and DOT export.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::{Digraph, DigraphError, Vertex};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("malformed digraph: {0}")]
    Parse(#[from] serde_json::Error),
}

/// Serialized shape of a [`Digraph`]; edges sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphRecord {
    pub n: usize,
    pub edges: Vec<(Vertex, Vertex)>,
}

impl From<Digraph> for GraphRecord {
    fn from(d: Digraph) -> Self {
        GraphRecord {
            n: d.n(),
            edges: d.edges().to_vec(),
        }
    }
}

impl TryFrom<GraphRecord> for Digraph {
    type Error = DigraphError;

    fn try_from(r: GraphRecord) -> Result<Self, DigraphError> {
        Digraph::new(r.n, r.edges)
    }
}

pub fn to_json(d: &Digraph) -> String {
    serde_json::to_string(d).expect("digraphs always serialize")
}

pub fn from_json(text: &str) -> Result<Digraph, IoError> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_digraph(path: &Path) -> Result<Digraph, IoError> {
    from_json(&std::fs::read_to_string(path)?)
}

/// One `u -> v;` line per edge; isolated vertices are listed on their own.
pub fn to_dot(d: &Digraph) -> String {
    let mut s = String::from("digraph D {\n");
    for v in (0..d.n()).filter(|&v| d.out_degree(v) + d.in_degree(v) == 0) {
        let _ = writeln!(s, "  {v};");
    }
    for &(u, v) in d.edges() {
        let _ = writeln!(s, "  {u} -> {v};");
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let d = Digraph::new(4, [(2, 3), (0, 1), (1, 2)]).unwrap();
        let text = to_json(&d);
        assert_eq!(text, r#"{"n":4,"edges":[[0,1],[1,2],[2,3]]}"#);
        assert_eq!(from_json(&text).unwrap(), d);
    }

    #[test]
    fn rejects_invalid() {
        assert!(from_json(r#"{"n":2,"edges":[[0,1],[1,0]]}"#).is_err());
        assert!(from_json(r#"{"n":2,"edges":[[0,2]]}"#).is_err());
        assert!(from_json(r#"{"n":2,"edges":[[1,1]]}"#).is_err());
        assert!(from_json(r#"{"n":2}"#).is_err());
        assert!(from_json(r#"{"n":2,"edges":[],"extra":1}"#).is_err());
    }

    #[test]
    fn dot_lines() {
        let d = Digraph::new(3, [(0, 1)]).unwrap();
        assert_eq!(to_dot(&d), "digraph D {\n  2;\n  0 -> 1;\n}\n");
    }
}
