//! DOT and JSON renderings of a Property R graph.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{property_r, star_decomposition, PropertyRGraph, PropertyRVariant, PropertyRVerdict};

/// One arc per vertex, self-loops included, in lattice order.
pub fn emit_dot(t: &PropertyRGraph) -> String {
    let l = t.lattice();
    let mut out = String::from("digraph T {\n");
    for i in 0..l.len() {
        writeln!(out, "  N{i} [label=\"N{i} |{}|\"];", l.node(i).order()).expect("write to String");
    }
    for (i, j) in t.edges() {
        writeln!(out, "  N{i} -> N{j};").expect("write to String");
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDoc {
    pub index: usize,
    pub order: usize,
    /// Hex encodings of the subgroup's generators.
    pub generators: Vec<String>,
    pub normal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub holds: bool,
    pub witness: Option<usize>,
}

impl From<PropertyRVerdict> for VerdictDoc {
    fn from(v: PropertyRVerdict) -> Self {
        VerdictDoc {
            holds: v.holds,
            witness: v.witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyRDoc {
    pub strict: VerdictDoc,
    pub weak: VerdictDoc,
}

/// Serialized field order follows declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub spec: String,
    pub order: usize,
    pub nodes: Vec<NodeDoc>,
    pub edges: Vec<EdgeDoc>,
    pub self_loops: Vec<bool>,
    pub signature: String,
    pub property_r: PropertyRDoc,
}

impl GraphDocument {
    pub fn new(spec: &str, t: &PropertyRGraph) -> Result<GraphDocument> {
        let l = t.lattice();
        let g = l.group();
        let nodes = l
            .nodes()
            .iter()
            .enumerate()
            .map(|(index, n)| NodeDoc {
                index,
                order: n.order(),
                generators: n
                    .generators()
                    .iter()
                    .map(|&x| hex::encode(g.element(x).encode()))
                    .collect(),
                normal: n.is_normal(),
            })
            .collect();
        Ok(GraphDocument {
            spec: spec.to_string(),
            order: g.order(),
            nodes,
            edges: t.edges().map(|(from, to)| EdgeDoc { from, to }).collect(),
            self_loops: (0..t.len()).map(|i| t.self_loop(i)).collect(),
            signature: star_decomposition(t)?.to_string(),
            property_r: PropertyRDoc {
                strict: property_r(t, PropertyRVariant::Strict).into(),
                weak: property_r(t, PropertyRVariant::Weak).into(),
            },
        })
    }
}

pub fn emit_json(doc: &GraphDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serializes");
    s.push('\n');
    s
}

pub fn read_json(text: &str) -> serde_json::Result<GraphDocument> {
    serde_json::from_str(text)
}
