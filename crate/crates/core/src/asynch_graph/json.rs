//! JSON and DOT renderings of asynchronous graphs.
//!
//! Tiles are read verbatim: a document must list both orders of a tile for
//! the result to be symmetric. Writing emits every stored order, so reading
//! back a written graph is exact. Shuffles and disjoint unions also record
//! their factors, so coordinates survive a round trip.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{disjoint_union, shuffle, AsynchGraph, GraphBuilder};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    id: String,
    #[serde(default)]
    label: String,
    src: String,
    tgt: String,
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    edges: Vec<EdgeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    factors: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    summands: Option<Vec<Value>>,
    #[serde(default)]
    tiles: Vec<[[String; 2]; 2]>,
    vertices: Vec<String>,
}

pub fn graph_from_json(text: &str) -> Result<AsynchGraph> {
    let v: Value = serde_json::from_str(text)?;
    graph_from_value(&v)
}

pub fn graph_from_value(v: &Value) -> Result<AsynchGraph> {
    let doc: GraphDoc = serde_json::from_value(v.clone())
        .map_err(|e| Error::Document(format!("graph: {e}")))?;
    let mut b = GraphBuilder::new();
    for name in &doc.vertices {
        b.vertex(name.clone())?;
    }
    for e in &doc.edges {
        let s = b
            .vertex_id(&e.src)
            .ok_or_else(|| Error::UnknownVertex(e.src.clone()))?;
        let t = b
            .vertex_id(&e.tgt)
            .ok_or_else(|| Error::UnknownVertex(e.tgt.clone()))?;
        b.edge(e.id.clone(), s, t, e.label.clone())?;
    }
    let edge = |b: &GraphBuilder, n: &str| b.edge_id(n).ok_or_else(|| Error::UnknownEdge(n.into()));
    for [p, q] in &doc.tiles {
        let p = [edge(&b, &p[0])?, edge(&b, &p[1])?];
        let q = [edge(&b, &q[0])?, edge(&b, &q[1])?];
        b.oriented_tile(p, q)?;
    }
    let plain = b.build();
    let parts = |docs: &[Value]| -> Result<Vec<Arc<AsynchGraph>>> {
        docs.iter().map(|d| graph_from_value(d).map(Arc::new)).collect()
    };
    let rebuilt = match (&doc.factors, &doc.summands) {
        (None, None) => return Ok(plain),
        (Some(fs), None) => shuffle(&parts(fs)?),
        (None, Some(ss)) => disjoint_union(&parts(ss)?),
        (Some(_), Some(_)) => return Err(Error::Document("graph has both factors and summands".into())),
    };
    let unlabelled = |g: &AsynchGraph| g.relabel(|_, _| String::new());
    if unlabelled(&rebuilt) != unlabelled(&plain) {
        return Err(Error::Document("factors do not reproduce the listed graph".into()));
    }
    Ok(rebuilt.relabel(|e, _| plain.edge(e).label.clone()))
}

pub fn graph_to_value(g: &AsynchGraph) -> Value {
    let name = |e: usize| g.edge_name(e).to_string();
    let doc = GraphDoc {
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeDoc {
                id: e.name.clone(),
                label: e.label.clone(),
                src: g.vertex_name(e.src).to_string(),
                tgt: g.vertex_name(e.tgt).to_string(),
            })
            .collect(),
        tiles: g
            .tiles()
            .map(|&(p, q)| [[name(p[0]), name(p[1])], [name(q[0]), name(q[1])]])
            .collect(),
        vertices: g.vertex_names().to_vec(),
        factors: g
            .shuffle_info()
            .map(|i| i.factors().iter().map(|f| graph_to_value(f)).collect()),
        summands: g
            .sum_info()
            .map(|i| i.factors().iter().map(|f| graph_to_value(f)).collect()),
    };
    serde_json::to_value(doc).expect("graph documents serialize")
}

pub(crate) fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT rendering; each tile appears once as a dashed-square comment.
pub fn graph_to_dot(g: &AsynchGraph, title: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", dot_quote(title)).unwrap();
    for v in g.vertex_names() {
        writeln!(out, "  {};", dot_quote(v)).unwrap();
    }
    for e in g.edges() {
        writeln!(
            out,
            "  {} -> {} [label={}];",
            dot_quote(g.vertex_name(e.src)),
            dot_quote(g.vertex_name(e.tgt)),
            dot_quote(&format!("{}:{}", e.name, e.label))
        )
        .unwrap();
    }
    for &(p, q) in g.tiles() {
        if p <= q {
            writeln!(out, "  // tile [dashed] {} <> {}", g.word(&p), g.word(&q)).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asynch_graph::{anchor_of, validate};

    #[test]
    fn round_trip_is_exact() {
        let g = anchor_of(&["O", "P"]);
        let text = serde_json::to_string(&graph_to_value(&g)).unwrap();
        let back = graph_from_json(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn one_sided_tiles_stay_one_sided() {
        let text = r#"{"vertices":["*"],
            "edges":[{"id":"O","src":"*","tgt":"*","label":"O"},
                     {"id":"P","src":"*","tgt":"*","label":"P"}],
            "tiles":[[["O","P"],["P","O"]]]}"#;
        let g = graph_from_json(text).unwrap();
        assert!(validate(&g).has("symmetry"));
    }

    #[test]
    fn unknown_names_are_reported() {
        let text = r#"{"vertices":["x"],"edges":[{"id":"a","src":"x","tgt":"y"}]}"#;
        assert!(matches!(graph_from_json(text), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn dot_lists_each_tile_once() {
        let dot = graph_to_dot(&anchor_of(&["O", "P"]), "g");
        assert_eq!(dot.matches("// tile").count(), 3);
    }
}
