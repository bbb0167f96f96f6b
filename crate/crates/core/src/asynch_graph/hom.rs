//! Homomorphisms of asynchronous graphs and the finite limits built from them.

use std::collections::HashSet;

use super::{AsynchGraph, EdgeId, GraphBuilder, VertexId};
use crate::error::{Error, Result};

/// A map of vertices and edges, stored densely by source index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphHom {
    pub vertex_map: Vec<VertexId>,
    pub edge_map: Vec<EdgeId>,
}

impl GraphHom {
    pub fn identity(g: &AsynchGraph) -> Self {
        GraphHom {
            vertex_map: (0..g.vertex_count()).collect(),
            edge_map: (0..g.edge_count()).collect(),
        }
    }

    /// Builds a map from name pairs; any vertex or edge of `src` without an
    /// image is reported as [`Error::UndefinedImage`].
    pub fn from_names(
        src: &AsynchGraph,
        tgt: &AsynchGraph,
        vertices: &[(&str, &str)],
        edges: &[(&str, &str)],
    ) -> Result<Self> {
        let mut vertex_map = vec![None; src.vertex_count()];
        for &(a, b) in vertices {
            vertex_map[src.require_vertex(a)?] = Some(tgt.require_vertex(b)?);
        }
        let mut edge_map = vec![None; src.edge_count()];
        for &(a, b) in edges {
            edge_map[src.require_edge(a)?] = Some(tgt.require_edge(b)?);
        }
        let vertex_map = vertex_map
            .into_iter()
            .enumerate()
            .map(|(v, img)| {
                img.ok_or_else(|| Error::UndefinedImage(format!("vertex {}", src.vertex_name(v))))
            })
            .collect::<Result<_>>()?;
        let edge_map = edge_map
            .into_iter()
            .enumerate()
            .map(|(e, img)| {
                img.ok_or_else(|| Error::UndefinedImage(format!("edge {}", src.edge_name(e))))
            })
            .collect::<Result<_>>()?;
        Ok(GraphHom {
            vertex_map,
            edge_map,
        })
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &GraphHom) -> GraphHom {
        GraphHom {
            vertex_map: self.vertex_map.iter().map(|&v| next.vertex_map[v]).collect(),
            edge_map: self.edge_map.iter().map(|&e| next.edge_map[e]).collect(),
        }
    }

    fn totality(&self, g: &AsynchGraph, h: &AsynchGraph) -> Result<()> {
        if self.vertex_map.len() < g.vertex_count() {
            let v = self.vertex_map.len();
            return Err(Error::UndefinedImage(format!("vertex {}", g.vertex_name(v))));
        }
        if self.edge_map.len() < g.edge_count() {
            let e = self.edge_map.len();
            return Err(Error::UndefinedImage(format!("edge {}", g.edge_name(e))));
        }
        if let Some(v) = self.vertex_map.iter().position(|&w| w >= h.vertex_count()) {
            return Err(Error::UndefinedImage(format!("vertex {}", g.vertex_name(v))));
        }
        if let Some(e) = self.edge_map.iter().position(|&f| f >= h.edge_count()) {
            return Err(Error::UndefinedImage(format!("edge {}", g.edge_name(e))));
        }
        Ok(())
    }

    /// True iff endpoints are preserved and every tile of `g` lands on a tile of `h`.
    pub fn check(&self, g: &AsynchGraph, h: &AsynchGraph) -> Result<bool> {
        self.totality(g, h)?;
        for (i, e) in g.edges().iter().enumerate() {
            let img = h.edge(self.edge_map[i]);
            if img.src != self.vertex_map[e.src] || img.tgt != self.vertex_map[e.tgt] {
                return Ok(false);
            }
        }
        let m = |p: [EdgeId; 2]| [self.edge_map[p[0]], self.edge_map[p[1]]];
        Ok(g.tiles().all(|&(p, q)| h.is_tile(m(p), m(q))))
    }

    /// A homomorphism that is bijective on vertices, edges and tiles.
    pub fn is_iso(&self, g: &AsynchGraph, h: &AsynchGraph) -> bool {
        if !matches!(self.check(g, h), Ok(true)) {
            return false;
        }
        if g.vertex_count() != h.vertex_count()
            || g.edge_count() != h.edge_count()
            || g.tile_count() != h.tile_count()
        {
            return false;
        }
        let vs: HashSet<_> = self.vertex_map.iter().collect();
        let es: HashSet<_> = self.edge_map.iter().collect();
        vs.len() == g.vertex_count() && es.len() == g.edge_count()
    }
}

/// The binary product: pairs of vertices, pairs of edges, and a tile
/// exactly when both projections are tiles.
pub fn product(g: &AsynchGraph, h: &AsynchGraph) -> (AsynchGraph, GraphHom, GraphHom) {
    let mut b = GraphBuilder::new();
    let nv = h.vertex_count();
    let ne = h.edge_count();
    for x in g.vertex_names() {
        for y in h.vertex_names() {
            b.vertex_fresh(format!("({x},{y})"));
        }
    }
    for u in g.edges() {
        for v in h.edges() {
            b.edge_fresh(
                format!("({},{})", u.name, v.name),
                u.src * nv + v.src,
                u.tgt * nv + v.tgt,
                format!("({},{})", u.label, v.label),
            );
        }
    }
    let pair = |a: EdgeId, c: EdgeId| a * ne + c;
    for &(p, q) in g.tiles() {
        for &(p2, q2) in h.tiles() {
            b.oriented_tile(
                [pair(p[0], p2[0]), pair(p[1], p2[1])],
                [pair(q[0], q2[0]), pair(q[1], q2[1])],
            )
            .expect("componentwise tiles are well formed");
        }
    }
    let gh = b.build();
    let p1 = GraphHom {
        vertex_map: (0..gh.vertex_count()).map(|v| v / nv.max(1)).collect(),
        edge_map: (0..gh.edge_count()).map(|e| e / ne.max(1)).collect(),
    };
    let p2 = GraphHom {
        vertex_map: (0..gh.vertex_count()).map(|v| v % nv.max(1)).collect(),
        edge_map: (0..gh.edge_count()).map(|e| e % ne.max(1)).collect(),
    };
    (gh, p1, p2)
}

/// `𝕋_tic`: one vertex, one edge `tic` and the tile `tic·tic ⋄ tic·tic`.
pub fn terminal() -> AsynchGraph {
    let mut b = GraphBuilder::new();
    let star = b.vertex("*").expect("fresh builder");
    let tic = b.edge("tic", star, star, "tic").expect("fresh builder");
    b.tile([tic, tic], [tic, tic]).expect("loop tile");
    b.build()
}

/// The unique homomorphism into [`terminal`].
pub fn to_terminal(g: &AsynchGraph) -> GraphHom {
    GraphHom {
        vertex_map: vec![0; g.vertex_count()],
        edge_map: vec![0; g.edge_count()],
    }
}

/// The subgraph of `a` on which `f` and `g` agree, with its inclusion.
/// Tiles of `a` are kept when both of their sides lie in the subgraph.
pub fn equalizer(f: &GraphHom, g: &GraphHom, a: &AsynchGraph) -> (AsynchGraph, GraphHom) {
    let mut b = GraphBuilder::new();
    let mut vertex_map = Vec::new();
    let mut new_vertex = vec![None; a.vertex_count()];
    for (v, slot) in new_vertex.iter_mut().enumerate() {
        if f.vertex_map[v] == g.vertex_map[v] {
            *slot = Some(b.vertex(a.vertex_name(v)).expect("names are unique"));
            vertex_map.push(v);
        }
    }
    let mut edge_map = Vec::new();
    let mut new_edge = vec![None; a.edge_count()];
    for (i, e) in a.edges().iter().enumerate() {
        if f.edge_map[i] == g.edge_map[i] {
            let (Some(s), Some(t)) = (new_vertex[e.src], new_vertex[e.tgt]) else {
                continue;
            };
            new_edge[i] = Some(b.edge(e.name.clone(), s, t, e.label.clone()).expect("unique"));
            edge_map.push(i);
        }
    }
    for &(p, q) in a.tiles() {
        let all: Option<Vec<EdgeId>> = p.iter().chain(q.iter()).map(|&e| new_edge[e]).collect();
        if let Some(es) = all {
            b.oriented_tile([es[0], es[1]], [es[2], es[3]])
                .expect("restricted tiles are well formed");
        }
    }
    (
        b.build(),
        GraphHom {
            vertex_map,
            edge_map,
        },
    )
}

struct Search<'a> {
    src: &'a AsynchGraph,
    tgt: &'a AsynchGraph,
    vcompat: &'a dyn Fn(VertexId, VertexId) -> bool,
    ecompat: &'a dyn Fn(EdgeId, EdgeId) -> bool,
    injective: bool,
    vmap: Vec<Option<VertexId>>,
    emap: Vec<Option<EdgeId>>,
    vused: Vec<bool>,
    eused: Vec<bool>,
}

impl Search<'_> {
    fn bind_vertex(&mut self, v: VertexId, w: VertexId) -> Option<bool> {
        match self.vmap[v] {
            Some(x) if x == w => Some(false),
            Some(_) => None,
            None => {
                if !(self.vcompat)(v, w) || (self.injective && self.vused[w]) {
                    return None;
                }
                self.vmap[v] = Some(w);
                self.vused[w] = true;
                Some(true)
            }
        }
    }

    fn unbind_vertex(&mut self, v: VertexId) {
        if let Some(w) = self.vmap[v].take() {
            self.vused[w] = false;
        }
    }

    fn edges(&mut self, i: usize, found: &mut dyn FnMut(GraphHom) -> bool) -> bool {
        if i == self.src.edge_count() {
            return self.vertices(0, found);
        }
        let e = self.src.edge(i).clone();
        for c in 0..self.tgt.edge_count() {
            if self.injective && self.eused[c] {
                continue;
            }
            if !(self.ecompat)(i, c) {
                continue;
            }
            let img = self.tgt.edge(c);
            let Some(bs) = self.bind_vertex(e.src, img.src) else {
                continue;
            };
            let bt = match self.bind_vertex(e.tgt, img.tgt) {
                Some(b) => b,
                None => {
                    if bs {
                        self.unbind_vertex(e.src);
                    }
                    continue;
                }
            };
            self.emap[i] = Some(c);
            self.eused[c] = true;
            let stop = self.edges(i + 1, found);
            self.eused[c] = false;
            self.emap[i] = None;
            if bt {
                self.unbind_vertex(e.tgt);
            }
            if bs {
                self.unbind_vertex(e.src);
            }
            if stop {
                return true;
            }
        }
        false
    }

    fn vertices(&mut self, v: usize, found: &mut dyn FnMut(GraphHom) -> bool) -> bool {
        if v == self.src.vertex_count() {
            let hom = GraphHom {
                vertex_map: self.vmap.iter().map(|x| x.expect("bound")).collect(),
                edge_map: self.emap.iter().map(|x| x.expect("bound")).collect(),
            };
            let m = |p: [EdgeId; 2]| [hom.edge_map[p[0]], hom.edge_map[p[1]]];
            if !self.src.tiles().all(|&(p, q)| self.tgt.is_tile(m(p), m(q))) {
                return false;
            }
            return found(hom);
        }
        if self.vmap[v].is_some() {
            return self.vertices(v + 1, found);
        }
        for w in 0..self.tgt.vertex_count() {
            if self.bind_vertex(v, w).is_some() {
                let stop = self.vertices(v + 1, found);
                self.unbind_vertex(v);
                if stop {
                    return true;
                }
            }
        }
        false
    }
}

/// Enumerates homomorphisms `src → tgt` (at most `limit` of them).
pub fn find_homs(src: &AsynchGraph, tgt: &AsynchGraph, limit: usize) -> Vec<GraphHom> {
    let any_v = |_: VertexId, _: VertexId| true;
    let any_e = |_: EdgeId, _: EdgeId| true;
    let mut s = Search {
        src,
        tgt,
        vcompat: &any_v,
        ecompat: &any_e,
        injective: false,
        vmap: vec![None; src.vertex_count()],
        emap: vec![None; src.edge_count()],
        vused: vec![false; tgt.vertex_count()],
        eused: vec![false; tgt.edge_count()],
    };
    let mut out = Vec::new();
    s.edges(0, &mut |h| {
        out.push(h);
        out.len() >= limit
    });
    out
}

/// Searches for an isomorphism `g ≅ h` whose vertex and edge assignments
/// satisfy the given compatibility predicates.
pub fn find_isomorphism(
    g: &AsynchGraph,
    h: &AsynchGraph,
    vcompat: &dyn Fn(VertexId, VertexId) -> bool,
    ecompat: &dyn Fn(EdgeId, EdgeId) -> bool,
) -> Option<GraphHom> {
    if g.vertex_count() != h.vertex_count()
        || g.edge_count() != h.edge_count()
        || g.tile_count() != h.tile_count()
    {
        return None;
    }
    let mut s = Search {
        src: g,
        tgt: h,
        vcompat,
        ecompat,
        injective: true,
        vmap: vec![None; g.vertex_count()],
        emap: vec![None; g.edge_count()],
        vused: vec![false; h.vertex_count()],
        eused: vec![false; h.edge_count()],
    };
    let mut out = None;
    s.edges(0, &mut |hom| {
        out = Some(hom);
        true
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asynch_graph::{anchor_of, validate};

    fn two_squares() -> (AsynchGraph, AsynchGraph) {
        // tiled square and the same square without its tile
        let mut b = GraphBuilder::new();
        let x = b.vertex("x").unwrap();
        let y = b.vertex("y").unwrap();
        let z = b.vertex("z").unwrap();
        let w = b.vertex("w").unwrap();
        let a = b.edge("a", x, y, "").unwrap();
        let c = b.edge("c", y, w, "").unwrap();
        let d = b.edge("d", x, z, "").unwrap();
        let e = b.edge("e", z, w, "").unwrap();
        let untiled = b.clone().build();
        b.tile([a, c], [d, e]).unwrap();
        (b.build(), untiled)
    }

    #[test]
    fn identity_is_a_hom() {
        let g = anchor_of(&["O", "P"]);
        assert!(GraphHom::identity(&g).check(&g, &g).unwrap());
    }

    #[test]
    fn tiled_square_onto_untiled_square_is_not_a_hom() {
        let (tiled, untiled) = two_squares();
        let id = GraphHom::identity(&tiled);
        assert!(!id.check(&tiled, &untiled).unwrap());
        assert!(id.check(&untiled, &tiled).unwrap());
        // no map at all exists from the tiled square to the untiled one
        assert!(find_homs(&tiled, &untiled, 100).is_empty());
    }

    #[test]
    fn missing_images_are_reported() {
        let g = anchor_of(&["O", "P"]);
        let err = GraphHom::from_names(&g, &g, &[("*", "*")], &[("O", "O")]).unwrap_err();
        assert!(matches!(err, Error::UndefinedImage(_)));
        let short = GraphHom {
            vertex_map: vec![0],
            edge_map: vec![0],
        };
        assert!(matches!(short.check(&g, &g), Err(Error::UndefinedImage(_))));
    }

    #[test]
    fn product_counts() {
        let g = anchor_of(&["O", "P"]);
        let (gg, p1, p2) = product(&g, &g);
        assert_eq!(gg.tile_count(), 16);
        assert_eq!(gg.edge_count(), 4);
        assert!(validate(&gg).is_ok());
        assert!(p1.check(&gg, &g).unwrap());
        assert!(p2.check(&gg, &g).unwrap());
        let t = terminal();
        let (gt, q1, _) = product(&g, &t);
        assert!(q1.is_iso(&gt, &g));
    }

    #[test]
    fn equalizer_of_equal_maps_is_everything() {
        let g = anchor_of(&["O", "P"]);
        let f = to_terminal(&g);
        let (e, inc) = equalizer(&f, &f, &g);
        assert_eq!(e, g);
        assert_eq!(inc, GraphHom::identity(&g));
    }

    #[test]
    fn iso_search_respects_predicates() {
        let g = anchor_of(&["O", "P"]);
        let swap = find_isomorphism(&g, &g, &|_, _| true, &|a, b| a != b).unwrap();
        assert_eq!(swap.edge_map, vec![1, 0]);
        assert!(find_isomorphism(&g, &terminal(), &|_, _| true, &|_, _| true).is_none());
    }
}
