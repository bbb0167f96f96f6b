//! Finite asynchronous graphs: a graph together with a relation of
//! permutation tiles between coinitial and cofinal paths of length two.
//!
//! Vertices and edges are addressed by dense indices. Names are kept for
//! display and serialization only, and every structure is keyed on edge ids
//! (parallel edges with the same label are allowed).

mod hom;
mod json;
mod shuffle;
mod validate;

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

pub use hom::{equalizer, find_homs, find_isomorphism, product, terminal, to_terminal, GraphHom};
pub(crate) use json::dot_quote;
pub use json::{graph_from_json, graph_from_value, graph_to_dot, graph_to_value};
pub use shuffle::{
    anchor_of, anchor_sum, disjoint_union, monoid_maps, shuffle, unit_i, ShuffleInfo, SumInfo,
};
pub use validate::{validate, validate_with_ceiling, Report, Violation, DEFAULT_CUBE_CEILING};

pub type VertexId = usize;
pub type EdgeId = usize;

/// An ordered pair `p ⋄ q` of length-2 paths sharing both endpoints.
pub type Tile = ([EdgeId; 2], [EdgeId; 2]);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub name: String,
    pub src: VertexId,
    pub tgt: VertexId,
    pub label: String,
}

/// How a graph was built, when that matters for later coordinate lookups.
#[derive(Clone, Debug, Default)]
pub enum Provenance {
    #[default]
    Plain,
    Shuffle(ShuffleInfo),
    Sum(SumInfo),
}

#[derive(Clone, Debug)]
pub struct AsynchGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    tiles: BTreeSet<Tile>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    out: Vec<Vec<EdgeId>>,
    partners: HashMap<[EdgeId; 2], Vec<[EdgeId; 2]>>,
    provenance: Provenance,
}

impl PartialEq for AsynchGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges && self.tiles == other.tiles
    }
}

impl Eq for AsynchGraph {}

impl AsynchGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e].name
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    pub fn require_vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex_id(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn require_edge(&self, name: &str) -> Result<EdgeId> {
        self.edge_id(name)
            .ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v]
    }

    /// All tile pairs, both orders included.
    pub fn tiles(&self) -> impl Iterator<Item = &Tile> {
        self.tiles.iter()
    }

    pub fn tile_count(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_tile(&self, p: [EdgeId; 2], q: [EdgeId; 2]) -> bool {
        self.tiles.contains(&(p, q))
    }

    /// The unique `q` with `p ⋄ q`, when the graph is deterministic.
    pub fn partner(&self, p: [EdgeId; 2]) -> Option<[EdgeId; 2]> {
        self.partners.get(&p).and_then(|qs| qs.first().copied())
    }

    /// Every `q` with `p ⋄ q` (more than one only in non-deterministic graphs).
    pub fn partners(&self, p: [EdgeId; 2]) -> &[[EdgeId; 2]] {
        self.partners.get(&p).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn shuffle_info(&self) -> Option<&ShuffleInfo> {
        match &self.provenance {
            Provenance::Shuffle(info) => Some(info),
            _ => None,
        }
    }

    pub fn sum_info(&self) -> Option<&SumInfo> {
        match &self.provenance {
            Provenance::Sum(info) => Some(info),
            _ => None,
        }
    }

    /// Drops any recorded provenance, keeping the structure.
    pub fn plain(&self) -> AsynchGraph {
        let mut g = self.clone();
        g.provenance = Provenance::Plain;
        g
    }

    /// Renders a sequence of edges as `e1·e2`, or `ε` when empty.
    pub fn word(&self, edges: &[EdgeId]) -> String {
        if edges.is_empty() {
            "ε".to_string()
        } else {
            edges
                .iter()
                .map(|&e| self.edges[e].name.as_str())
                .collect::<Vec<_>>()
                .join("·")
        }
    }

    /// The same graph with every edge label rewritten by `f(edge, label)`.
    pub fn relabel(&self, f: impl Fn(EdgeId, &str) -> String) -> AsynchGraph {
        let mut g = self.clone();
        for (i, e) in g.edges.iter_mut().enumerate() {
            e.label = f(i, &e.label);
        }
        g
    }

    /// Tiles rebuilt as a fresh builder, used by constructions that extend a graph.
    pub fn to_builder(&self) -> GraphBuilder {
        GraphBuilder {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            tiles: self.tiles.clone(),
            vertex_index: self.vertex_index.clone(),
            edge_index: self.edge_index.clone(),
        }
    }
}

/// Incremental constructor for [`AsynchGraph`].
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    tiles: BTreeSet<Tile>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, name: impl Into<String>) -> Result<VertexId> {
        let name = name.into();
        if self.vertex_index.contains_key(&name) {
            return Err(Error::DuplicateVertex(name));
        }
        let id = self.vertices.len();
        self.vertex_index.insert(name.clone(), id);
        self.vertices.push(name);
        Ok(id)
    }

    pub fn edge(
        &mut self,
        name: impl Into<String>,
        src: VertexId,
        tgt: VertexId,
        label: impl Into<String>,
    ) -> Result<EdgeId> {
        let name = name.into();
        if self.edge_index.contains_key(&name) {
            return Err(Error::DuplicateEdge(name));
        }
        for v in [src, tgt] {
            if v >= self.vertices.len() {
                return Err(Error::UnknownVertex(format!("#{v}")));
            }
        }
        let id = self.edges.len();
        self.edge_index.insert(name.clone(), id);
        self.edges.push(Edge {
            name,
            src,
            tgt,
            label: label.into(),
        });
        Ok(id)
    }

    /// Adds an edge, renaming it with a `#k` suffix if the name is taken.
    pub(crate) fn edge_fresh(
        &mut self,
        name: String,
        src: VertexId,
        tgt: VertexId,
        label: impl Into<String>,
    ) -> EdgeId {
        let mut candidate = name.clone();
        let mut k = 1;
        while self.edge_index.contains_key(&candidate) {
            candidate = format!("{name}#{k}");
            k += 1;
        }
        self.edge(candidate, src, tgt, label)
            .expect("fresh edge name and known endpoints")
    }

    pub(crate) fn vertex_fresh(&mut self, name: String) -> VertexId {
        let mut candidate = name.clone();
        let mut k = 1;
        while self.vertex_index.contains_key(&candidate) {
            candidate = format!("{name}#{k}");
            k += 1;
        }
        self.vertex(candidate).expect("fresh vertex name")
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    fn check_shape(&self, p: [EdgeId; 2], q: [EdgeId; 2]) -> Result<()> {
        let n = self.edges.len();
        if p.iter().chain(q.iter()).any(|&e| e >= n) {
            return Err(Error::MalformedTile("tile mentions an unknown edge".into()));
        }
        let e = &self.edges;
        let name = |x: [EdgeId; 2]| format!("{}·{}", e[x[0]].name, e[x[1]].name);
        if e[p[0]].tgt != e[p[1]].src {
            return Err(Error::MalformedTile(format!("{} is not a path", name(p))));
        }
        if e[q[0]].tgt != e[q[1]].src {
            return Err(Error::MalformedTile(format!("{} is not a path", name(q))));
        }
        if e[p[0]].src != e[q[0]].src || e[p[1]].tgt != e[q[1]].tgt {
            return Err(Error::MalformedTile(format!(
                "{} and {} do not share endpoints",
                name(p),
                name(q)
            )));
        }
        Ok(())
    }

    /// Declares `p ⋄ q` and `q ⋄ p`.
    pub fn tile(&mut self, p: [EdgeId; 2], q: [EdgeId; 2]) -> Result<()> {
        self.check_shape(p, q)?;
        self.tiles.insert((p, q));
        self.tiles.insert((q, p));
        Ok(())
    }

    /// Declares `p ⋄ q` only; used to read documents verbatim.
    pub fn oriented_tile(&mut self, p: [EdgeId; 2], q: [EdgeId; 2]) -> Result<()> {
        self.check_shape(p, q)?;
        self.tiles.insert((p, q));
        Ok(())
    }

    pub fn build(self) -> AsynchGraph {
        self.build_with(Provenance::Plain)
    }

    pub(crate) fn build_with(self, provenance: Provenance) -> AsynchGraph {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            out[e.src].push(i);
        }
        let mut partners: HashMap<[EdgeId; 2], Vec<[EdgeId; 2]>> = HashMap::new();
        for &(p, q) in &self.tiles {
            partners.entry(p).or_default().push(q);
        }
        AsynchGraph {
            vertices: self.vertices,
            edges: self.edges,
            tiles: self.tiles,
            vertex_index: self.vertex_index,
            edge_index: self.edge_index,
            out,
            partners,
            provenance,
        }
    }
}
