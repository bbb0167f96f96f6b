//! The shuffle tensor product, disjoint unions and the one-vertex graphs `𝕋⟨L⟩`.

use std::collections::HashMap;
use std::sync::Arc;

use super::{AsynchGraph, EdgeId, GraphBuilder, GraphHom, Provenance, VertexId};

/// Coordinates of a graph built by [`shuffle`].
#[derive(Clone, Debug)]
pub struct ShuffleInfo {
    factors: Vec<Arc<AsynchGraph>>,
    coords: Vec<Vec<VertexId>>,
    vertex_at: HashMap<Vec<VertexId>, VertexId>,
    moves: Vec<(usize, EdgeId)>,
    edge_at: HashMap<(usize, EdgeId, VertexId), EdgeId>,
}

impl ShuffleInfo {
    pub fn factors(&self) -> &[Arc<AsynchGraph>] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    /// The tuple of factor vertices of a product vertex.
    pub fn coords(&self, v: VertexId) -> &[VertexId] {
        &self.coords[v]
    }

    pub fn vertex(&self, coords: &[VertexId]) -> Option<VertexId> {
        self.vertex_at.get(coords).copied()
    }

    /// Which factor an edge moves, and the factor edge it copies.
    pub fn component(&self, e: EdgeId) -> (usize, EdgeId) {
        self.moves[e]
    }

    /// The copy of factor edge `fe` of factor `k` leaving product vertex `at`.
    pub fn edge(&self, k: usize, fe: EdgeId, at: VertexId) -> Option<EdgeId> {
        self.edge_at.get(&(k, fe, at)).copied()
    }
}

/// Coordinates of a graph built by [`disjoint_union`].
#[derive(Clone, Debug)]
pub struct SumInfo {
    factors: Vec<Arc<AsynchGraph>>,
    vertex_offsets: Vec<usize>,
    edge_offsets: Vec<usize>,
}

impl SumInfo {
    pub fn factors(&self) -> &[Arc<AsynchGraph>] {
        &self.factors
    }

    pub fn inject_vertex(&self, k: usize, v: VertexId) -> VertexId {
        self.vertex_offsets[k] + v
    }

    pub fn inject_edge(&self, k: usize, e: EdgeId) -> EdgeId {
        self.edge_offsets[k] + e
    }

    pub fn vertex_summand(&self, v: VertexId) -> (usize, VertexId) {
        let k = self.vertex_offsets.partition_point(|&o| o <= v) - 1;
        (k, v - self.vertex_offsets[k])
    }

    pub fn edge_summand(&self, e: EdgeId) -> (usize, EdgeId) {
        let k = self.edge_offsets.partition_point(|&o| o <= e) - 1;
        (k, e - self.edge_offsets[k])
    }

    /// Inclusion of summand `k` as a graph homomorphism.
    pub fn injection(&self, k: usize) -> GraphHom {
        let f = &self.factors[k];
        GraphHom {
            vertex_map: (0..f.vertex_count()).map(|v| self.inject_vertex(k, v)).collect(),
            edge_map: (0..f.edge_count()).map(|e| self.inject_edge(k, e)).collect(),
        }
    }
}

fn tuple_name(parts: &[&str]) -> String {
    format!("({})", parts.join(","))
}

/// The one-vertex graph with no edges, unit of the shuffle product.
pub fn unit_i() -> AsynchGraph {
    shuffle(&[])
}

/// The n-ary shuffle `G₁ ⧢ … ⧢ Gₙ`.
///
/// Vertices are tuples, each edge moves exactly one component, and tiles are
/// the cross commutations between distinct components plus the tiles of each
/// component embedded at every position of the others. `shuffle(&[g])` keeps
/// the names of `g`, and `shuffle(&[])` is the unit.
pub fn shuffle(gs: &[Arc<AsynchGraph>]) -> AsynchGraph {
    let n = gs.len();
    let mut b = GraphBuilder::new();

    let mut coords: Vec<Vec<VertexId>> = vec![Vec::new()];
    for g in gs {
        let mut next = Vec::with_capacity(coords.len() * g.vertex_count());
        for c in &coords {
            for v in 0..g.vertex_count() {
                let mut c2 = c.clone();
                c2.push(v);
                next.push(c2);
            }
        }
        coords = next;
    }
    let mut vertex_at = HashMap::new();
    for c in &coords {
        let name = match n {
            0 => "*".to_string(),
            1 => gs[0].vertex_name(c[0]).to_string(),
            _ => {
                let parts: Vec<&str> = c.iter().zip(gs).map(|(&v, g)| g.vertex_name(v)).collect();
                tuple_name(&parts)
            }
        };
        let id = b.vertex_fresh(name);
        vertex_at.insert(c.clone(), id);
    }

    let mut moves = Vec::new();
    let mut edge_at = HashMap::new();
    for (k, g) in gs.iter().enumerate() {
        for (fe, edge) in g.edges().iter().enumerate() {
            for c in coords.iter().filter(|c| c[k] == edge.src) {
                let src = vertex_at[c];
                let mut t = c.clone();
                t[k] = edge.tgt;
                let tgt = vertex_at[&t];
                let name = if n == 1 {
                    edge.name.clone()
                } else {
                    let parts: Vec<&str> = c
                        .iter()
                        .enumerate()
                        .map(|(i, &v)| {
                            if i == k {
                                edge.name.as_str()
                            } else {
                                gs[i].vertex_name(v)
                            }
                        })
                        .collect();
                    tuple_name(&parts)
                };
                let id = b.edge_fresh(name, src, tgt, edge.label.clone());
                moves.push((k, fe));
                edge_at.insert((k, fe, src), id);
            }
        }
    }

    let lift = |k: usize, fe: EdgeId, at: VertexId| edge_at[&(k, fe, at)];
    let tgt_of = |b: &GraphBuilder, e: EdgeId| b.edges[e].tgt;

    // cross-component commutations
    for c in &coords {
        let x = vertex_at[c];
        for i in 0..n {
            for j in (i + 1)..n {
                for &u in gs[i].out_edges(c[i]) {
                    for &v in gs[j].out_edges(c[j]) {
                        let u0 = lift(i, u, x);
                        let v1 = lift(j, v, tgt_of(&b, u0));
                        let v0 = lift(j, v, x);
                        let u1 = lift(i, u, tgt_of(&b, v0));
                        b.tile([u0, v1], [v0, u1]).expect("cross tiles are well formed");
                    }
                }
            }
        }
    }
    // component tiles embedded at every position of the other components
    for (k, g) in gs.iter().enumerate() {
        for &(p, q) in g.tiles() {
            let start = g.edge(p[0]).src;
            for c in coords.iter().filter(|c| c[k] == start) {
                let x = vertex_at[c];
                let p0 = lift(k, p[0], x);
                let p1 = lift(k, p[1], tgt_of(&b, p0));
                let q0 = lift(k, q[0], x);
                let q1 = lift(k, q[1], tgt_of(&b, q0));
                b.oriented_tile([p0, p1], [q0, q1])
                    .expect("embedded tiles are well formed");
            }
        }
    }

    let info = ShuffleInfo {
        factors: gs.to_vec(),
        coords,
        vertex_at,
        moves,
        edge_at,
    };
    b.build_with(Provenance::Shuffle(info))
}

fn summand_prefix(k: usize, n: usize) -> String {
    match (n, k) {
        (2, 0) => "inl".to_string(),
        (2, 1) => "inr".to_string(),
        _ => format!("in{k}"),
    }
}

/// Disjoint union of graphs; names are prefixed by `inl.`/`inr.` (or `ink.`).
pub fn disjoint_union(gs: &[Arc<AsynchGraph>]) -> AsynchGraph {
    let n = gs.len();
    let mut b = GraphBuilder::new();
    let mut vertex_offsets = Vec::new();
    let mut edge_offsets = Vec::new();
    let mut voff = 0;
    let mut eoff = 0;
    for (k, g) in gs.iter().enumerate() {
        vertex_offsets.push(voff);
        let prefix = summand_prefix(k, n);
        for name in g.vertex_names() {
            b.vertex_fresh(format!("{prefix}.{name}"));
        }
        voff += g.vertex_count();
    }
    for (k, g) in gs.iter().enumerate() {
        edge_offsets.push(eoff);
        let prefix = summand_prefix(k, n);
        for e in g.edges() {
            b.edge_fresh(
                format!("{prefix}.{}", e.name),
                vertex_offsets[k] + e.src,
                vertex_offsets[k] + e.tgt,
                e.label.clone(),
            );
        }
        eoff += g.edge_count();
    }
    for (k, g) in gs.iter().enumerate() {
        let o = edge_offsets[k];
        for &(p, q) in g.tiles() {
            b.oriented_tile([p[0] + o, p[1] + o], [q[0] + o, q[1] + o])
                .expect("summand tiles are well formed");
        }
    }
    b.build_with(Provenance::Sum(SumInfo {
        factors: gs.to_vec(),
        vertex_offsets,
        edge_offsets,
    }))
}

/// `𝕋⟨L⟩`: one vertex `∗`, one edge per label, and a tile
/// `ℓ₁·ℓ₂ ⋄ ℓ₂·ℓ₁` for every ordered pair of (possibly equal) labels.
pub fn anchor_of<S: AsRef<str>>(labels: &[S]) -> AsynchGraph {
    let mut b = GraphBuilder::new();
    let star = b.vertex("*").expect("fresh builder");
    let edges: Vec<EdgeId> = labels
        .iter()
        .map(|l| b.edge_fresh(l.as_ref().to_string(), star, star, l.as_ref()))
        .collect();
    for &a in &edges {
        for &c in &edges {
            b.tile([a, c], [c, a]).expect("one-vertex tiles are well formed");
        }
    }
    b.build()
}

/// The commutative monoid structure on `𝕋⟨L⟩` for the shuffle product.
#[derive(Clone, Debug)]
pub struct MonoidMaps {
    pub anchor: Arc<AsynchGraph>,
    /// `𝕋⟨L⟩ ⧢ 𝕋⟨L⟩`
    pub square: Arc<AsynchGraph>,
    pub unit_graph: Arc<AsynchGraph>,
    /// Codiagonal `𝕋⟨L⟩ ⧢ 𝕋⟨L⟩ → 𝕋⟨L⟩`.
    pub mult: GraphHom,
    /// `I → 𝕋⟨L⟩`.
    pub unit: GraphHom,
}

pub fn monoid_maps<S: AsRef<str>>(labels: &[S]) -> MonoidMaps {
    let anchor = Arc::new(anchor_of(labels));
    let square = Arc::new(shuffle(&[anchor.clone(), anchor.clone()]));
    let info = square.shuffle_info().expect("shuffle records coordinates");
    let mult = GraphHom {
        vertex_map: vec![0; square.vertex_count()],
        edge_map: (0..square.edge_count()).map(|e| info.component(e).1).collect(),
    };
    let unit_graph = Arc::new(unit_i());
    let unit = GraphHom {
        vertex_map: vec![0],
        edge_map: vec![],
    };
    MonoidMaps {
        anchor,
        square,
        unit_graph,
        mult,
        unit,
    }
}

/// The coercion `m : 𝕋⟨L₁⟩ ⧢ 𝕋⟨L₂⟩ → 𝕋⟨L₁+L₂⟩`, with the labels of the sum
/// tagged `inl.`/`inr.`. Returns the shuffle, the sum anchor and the map.
pub fn anchor_sum<S: AsRef<str>>(
    l1: &[S],
    l2: &[S],
) -> (Arc<AsynchGraph>, Arc<AsynchGraph>, GraphHom) {
    let a1 = Arc::new(anchor_of(l1));
    let a2 = Arc::new(anchor_of(l2));
    let tagged: Vec<String> = l1
        .iter()
        .map(|l| format!("inl.{}", l.as_ref()))
        .chain(l2.iter().map(|l| format!("inr.{}", l.as_ref())))
        .collect();
    let sum = Arc::new(anchor_of(&tagged));
    let sh = Arc::new(shuffle(&[a1, a2]));
    let info = sh.shuffle_info().expect("shuffle records coordinates");
    let edge_map = (0..sh.edge_count())
        .map(|e| {
            let (k, fe) = info.component(e);
            if k == 0 {
                fe
            } else {
                l1.len() + fe
            }
        })
        .collect();
    let m = GraphHom {
        vertex_map: vec![0],
        edge_map,
    };
    (sh, sum, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asynch_graph::validate;

    fn single_edge(v0: &str, v1: &str, e: &str, label: &str) -> Arc<AsynchGraph> {
        let mut b = GraphBuilder::new();
        let x = b.vertex(v0).unwrap();
        let y = b.vertex(v1).unwrap();
        b.edge(e, x, y, label).unwrap();
        Arc::new(b.build())
    }

    #[test]
    fn square_of_two_single_edges() {
        let a = single_edge("x", "x'", "m", "O");
        let b = single_edge("y", "y'", "n", "P");
        let g = shuffle(&[a, b]);
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.tile_count(), 2);
        let p = [g.edge_id("(m,y)").unwrap(), g.edge_id("(x',n)").unwrap()];
        let q = [g.edge_id("(x,n)").unwrap(), g.edge_id("(m,y')").unwrap()];
        assert!(g.is_tile(p, q));
        assert!(validate(&g).is_ok());
    }

    #[test]
    fn nullary_and_unary_shuffles() {
        let u = shuffle(&[]);
        assert_eq!(u.vertex_count(), 1);
        assert_eq!(u.edge_count(), 0);
        assert_eq!(u, unit_i());
        let g = Arc::new(anchor_of(&["O", "P"]));
        assert_eq!(shuffle(std::slice::from_ref(&g)), *g);
    }

    #[test]
    fn anchor_counts() {
        let g = anchor_of(&["O", "P"]);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.tile_count(), 4);
        let empty = anchor_of::<&str>(&[]);
        assert_eq!(empty.vertex_count(), 1);
        assert_eq!(empty.edge_count(), 0);
    }

    #[test]
    fn monoid_maps_are_homomorphisms_and_unital() {
        let m = monoid_maps(&["O", "P"]);
        assert!(m.mult.check(&m.square, &m.anchor).unwrap());
        assert!(m.unit.check(&m.unit_graph, &m.anchor).unwrap());
        // mult ∘ (unit ⧢ id), computed on the coordinates of I ⧢ 𝕋⟨L⟩
        let left = shuffle(&[m.unit_graph.clone(), m.anchor.clone()]);
        let li = left.shuffle_info().unwrap();
        let sq = m.square.shuffle_info().unwrap();
        for e in 0..left.edge_count() {
            let (k, fe) = li.component(e);
            assert_eq!(k, 1);
            let image = sq.edge(1, fe, 0).unwrap();
            assert_eq!(m.mult.edge_map[image], fe);
        }
    }

    #[test]
    fn sum_of_anchors_is_an_isomorphism() {
        let (sh, sum, m) = anchor_sum(&["a"], &["b", "c"]);
        assert!(m.check(&sh, &sum).unwrap());
        assert!(m.is_iso(&sh, &sum));
    }

    #[test]
    fn disjoint_union_injections() {
        let a = single_edge("x", "x'", "m", "O");
        let b = Arc::new(anchor_of(&["O"]));
        let s = disjoint_union(&[a.clone(), b.clone()]);
        assert_eq!(s.vertex_count(), 3);
        assert_eq!(s.edge_count(), 2);
        assert_eq!(s.tile_count(), 1);
        let info = s.sum_info().unwrap();
        assert!(info.injection(0).check(&a, &s).unwrap());
        assert!(info.injection(1).check(&b, &s).unwrap());
        assert_eq!(info.vertex_summand(2), (1, 0));
        assert_eq!(s.vertex_name(0), "inl.x");
        assert!(validate(&s).is_ok());
    }
}
