//! Text formats: the JSON graph document, DOT output and the bracket shorthand for chains.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::arith::{format_rational, Rational};
use crate::dualgraph::{Chain, Component, ComponentId, DualGraph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("invalid chain shorthand {input:?}: {reason}")]
    Shorthand { input: String, reason: String },
    #[error("unbound variable {0:?} in chain shorthand")]
    UnboundVariable(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct NodeDoc {
    pub id: u32,
    pub self_int: i64,
    #[serde(default)]
    pub genus_defect: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub a: u32,
    pub b: u32,
    pub mult: u32,
}

/// Serialized form of a [`DualGraph`].
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub nodes: Vec<NodeDoc>,
    #[serde(default)]
    pub edges: Vec<EdgeDoc>,
}

impl From<&DualGraph> for GraphDocument {
    fn from(g: &DualGraph) -> Self {
        GraphDocument {
            nodes: g
                .components()
                .map(|c| NodeDoc {
                    id: c.id.0,
                    self_int: c.self_int,
                    genus_defect: c.genus_defect,
                    label: c.label.clone(),
                })
                .collect(),
            edges: g
                .edges()
                .map(|(a, b, mult)| EdgeDoc { a: a.0, b: b.0, mult })
                .collect(),
        }
    }
}

impl TryFrom<&GraphDocument> for DualGraph {
    type Error = GraphError;

    fn try_from(doc: &GraphDocument) -> Result<Self, GraphError> {
        let components: Vec<Component> = doc
            .nodes
            .iter()
            .map(|n| Component {
                id: ComponentId(n.id),
                self_int: n.self_int,
                genus_defect: n.genus_defect,
                label: n.label.clone(),
            })
            .collect();
        let edges: Vec<_> = doc
            .edges
            .iter()
            .map(|e| (ComponentId(e.a), ComponentId(e.b), e.mult))
            .collect();
        DualGraph::from_parts(components, edges)
    }
}

pub fn graph_to_json(g: &DualGraph) -> Value {
    serde_json::to_value(GraphDocument::from(g)).expect("plain data")
}

pub fn graph_from_json(text: &str) -> Result<DualGraph, String> {
    let doc: GraphDocument = serde_json::from_str(text).map_err(|e| e.to_string())?;
    DualGraph::try_from(&doc).map_err(|e| e.to_string())
}

/// JSON number when the value fits in an `i64`, decimal string otherwise.
pub fn bigint_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}

pub fn rational_to_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

/// Undirected DOT document, nodes and edges in id order.
pub fn emit_dot(g: &DualGraph) -> String {
    let mut out = String::from("graph dual {\n");
    for c in g.components() {
        let mut label = c.self_int.to_string();
        if c.genus_defect > 0 {
            let _ = write!(label, " g{}", c.genus_defect);
        }
        if let Some(name) = &c.label {
            let _ = write!(label, " {name}");
        }
        let _ = writeln!(out, "  n{} [label=\"{}\"];", c.id, escape_dot(&label));
    }
    for (a, b, mult) in g.edges() {
        if mult > 1 {
            let _ = writeln!(out, "  n{a} -- n{b} [label=\"{mult}\"];");
        } else {
            let _ = writeln!(out, "  n{a} -- n{b};");
        }
    }
    out.push_str("}\n");
    out
}

fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Parses `[a, (w)_n, ...]` with integer or variable repeat counts. A negative count `-m`
/// removes the `m` preceding entries, so `[a_1,...,a_n,(2)_{-1}] = [a_1,...,a_{n-1}]`.
pub fn parse_chain(input: &str, vars: &BTreeMap<String, i64>) -> Result<Chain, FormatError> {
    let err = |reason: &str| FormatError::Shorthand {
        input: input.to_owned(),
        reason: reason.to_owned(),
    };
    let body = input
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| err("expected brackets"))?;
    let mut weights: Vec<i64> = Vec::new();
    if body.trim().is_empty() {
        return Ok(Chain::new(weights));
    }
    for item in split_top_level(body) {
        let item = item.trim();
        if let Some(rest) = item.strip_prefix('(') {
            let (w, count) = rest.split_once(')').ok_or_else(|| err("unclosed parenthesis"))?;
            let w: i64 = w.trim().parse().map_err(|_| err("bad repeated weight"))?;
            let count = count
                .trim()
                .strip_prefix('_')
                .ok_or_else(|| err("expected _ after repeated weight"))?;
            let count = count
                .strip_prefix('{')
                .and_then(|c| c.strip_suffix('}'))
                .unwrap_or(count)
                .trim();
            let n = match count.parse::<i64>() {
                Ok(n) => n,
                Err(_) => *vars
                    .get(count)
                    .ok_or_else(|| FormatError::UnboundVariable(count.to_owned()))?,
            };
            if n >= 0 {
                weights.extend(std::iter::repeat(w).take(n as usize));
            } else {
                let drop = n.unsigned_abs() as usize;
                if drop > weights.len() {
                    return Err(err("negative repeat removes more entries than present"));
                }
                weights.truncate(weights.len() - drop);
            }
        } else {
            let w = match item.parse::<i64>() {
                Ok(w) => w,
                Err(_) => *vars
                    .get(item)
                    .ok_or_else(|| FormatError::UnboundVariable(item.to_owned()))?,
            };
            weights.push(w);
        }
    }
    Ok(Chain::new(weights))
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// Renders rows as a left-aligned text table.
pub fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_owned()
    };
    let mut out = line(header.to_vec());
    out.push('\n');
    out.push_str(&line(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str).collect()));
    out.push('\n');
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}
