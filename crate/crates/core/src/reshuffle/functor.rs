//! 2-functors between reshuffling 2-categories, presented on generators.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde_json::{json, Value};

use super::{
    block_swap, compose, identity, is_reshuffling, realize, whisker, Bijection, Path,
    PermutationStep, Reshuffling,
};
use crate::asynch_graph::{shuffle, AsynchGraph, EdgeId, GraphHom, Tile, VertexId};
use crate::error::{Error, Result};

/// A vertex map, an edge-to-path map and a witness 2-cell for every tile.
///
/// The witness of a tile `p ⋄ q` is a bijection from `F(p₀)·F(p₁)` to
/// `F(q₀)·F(q₁)`.
#[derive(Clone, Debug)]
pub struct AsyncFunctor {
    pub src: Arc<AsynchGraph>,
    pub tgt: Arc<AsynchGraph>,
    pub vertex_map: Vec<VertexId>,
    pub edge_map: Vec<Path>,
    pub witnesses: BTreeMap<Tile, Bijection>,
}

/// The nesting of an iterated shuffle: a leaf is a graph taken as is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Leaf,
    Node(Vec<Shape>),
}

impl Shape {
    pub fn flat(n: usize) -> Shape {
        Shape::Node(vec![Shape::Leaf; n])
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Shape::Leaf => 1,
            Shape::Node(cs) => cs.iter().map(Shape::leaf_count).sum(),
        }
    }
}

fn same_graph(a: &Arc<AsynchGraph>, b: &Arc<AsynchGraph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn leaves(g: &Arc<AsynchGraph>, shape: &Shape, out: &mut Vec<Arc<AsynchGraph>>) -> Result<()> {
    match shape {
        Shape::Leaf => out.push(g.clone()),
        Shape::Node(children) => {
            let info = g
                .shuffle_info()
                .filter(|i| i.arity() == children.len())
                .ok_or_else(|| {
                    Error::CompositionMismatch("graph does not have the expected shuffle shape".into())
                })?;
            for (c, f) in children.iter().zip(info.factors()) {
                leaves(f, c, out)?;
            }
        }
    }
    Ok(())
}

fn leaf_coords(g: &AsynchGraph, shape: &Shape, v: VertexId, out: &mut Vec<VertexId>) {
    match shape {
        Shape::Leaf => out.push(v),
        Shape::Node(children) => {
            let info = g.shuffle_info().expect("shape checked by leaves()");
            for ((c, f), &x) in children.iter().zip(info.factors()).zip(info.coords(v)) {
                leaf_coords(f, c, x, out);
            }
        }
    }
}

/// The leaf moved by an edge, and the leaf edge it copies.
fn leaf_move(g: &AsynchGraph, shape: &Shape, e: EdgeId) -> (usize, EdgeId) {
    match shape {
        Shape::Leaf => (0, e),
        Shape::Node(children) => {
            let info = g.shuffle_info().expect("shape checked by leaves()");
            let (k, fe) = info.component(e);
            let offset: usize = children[..k].iter().map(Shape::leaf_count).sum();
            let (l, le) = leaf_move(&info.factors()[k], &children[k], fe);
            (offset + l, le)
        }
    }
}

/// Lifts a factor path of component `k` into a shuffle, starting at `at`.
fn lift(tgt: &AsynchGraph, k: usize, path: &Path, at: VertexId) -> Path {
    let info = tgt.shuffle_info().expect("target is a shuffle");
    let mut edges = Vec::with_capacity(path.len());
    let mut cur = at;
    for &fe in path.edges() {
        let e = info
            .edge(k, fe, cur)
            .expect("factor edge has a copy at every matching position");
        edges.push(e);
        cur = tgt.edge(e).tgt;
    }
    Path::new(tgt, at, edges).expect("lifted paths chain")
}

impl AsyncFunctor {
    pub fn identity(g: Arc<AsynchGraph>) -> Self {
        let edge_map = (0..g.edge_count()).map(|e| Path::edge(&g, e)).collect();
        let witnesses = g.tiles().map(|&t| (t, vec![1, 0])).collect();
        AsyncFunctor {
            vertex_map: (0..g.vertex_count()).collect(),
            edge_map,
            witnesses,
            src: g.clone(),
            tgt: g,
        }
    }

    /// The 2-functor induced by a graph homomorphism: tiles go to tiles.
    pub fn from_hom(src: Arc<AsynchGraph>, tgt: Arc<AsynchGraph>, h: &GraphHom) -> Self {
        let edge_map = h.edge_map.iter().map(|&e| Path::edge(&tgt, e)).collect();
        let witnesses = src.tiles().map(|&t| (t, vec![1, 0])).collect();
        AsyncFunctor {
            vertex_map: h.vertex_map.clone(),
            edge_map,
            witnesses,
            src,
            tgt,
        }
    }

    /// Every tile `u·v ⋄ v'·u'` is sent to the exchange of the image blocks
    /// of `u` and `v`.
    pub fn with_block_swaps(
        src: Arc<AsynchGraph>,
        tgt: Arc<AsynchGraph>,
        vertex_map: Vec<VertexId>,
        edge_map: Vec<Path>,
    ) -> Result<Self> {
        let mut witnesses = BTreeMap::new();
        for &(p, q) in src.tiles() {
            let len = |e: EdgeId| edge_map[e].len();
            if len(p[0]) != len(q[1]) || len(p[1]) != len(q[0]) {
                return Err(Error::InvalidWitness(format!(
                    "images of {} and {} have no block swap",
                    src.word(&p),
                    src.word(&q)
                )));
            }
            witnesses.insert((p, q), block_swap(len(p[0]), len(p[1])));
        }
        Ok(AsyncFunctor {
            src,
            tgt,
            vertex_map,
            edge_map,
            witnesses,
        })
    }

    /// Builds the edge map from names: `images[i] = (edge of src, edge names in tgt)`.
    pub fn from_names(
        src: Arc<AsynchGraph>,
        tgt: Arc<AsynchGraph>,
        vertices: &[(&str, &str)],
        images: &[(&str, &[&str])],
    ) -> Result<Self> {
        let mut vertex_map = vec![None; src.vertex_count()];
        for &(a, b) in vertices {
            vertex_map[src.require_vertex(a)?] = Some(tgt.require_vertex(b)?);
        }
        let mut edge_map = vec![None; src.edge_count()];
        for &(e, names) in images {
            let e = src.require_edge(e)?;
            let path = if names.is_empty() {
                let v = vertex_map[src.edge(e).src].ok_or_else(|| {
                    Error::UndefinedImage(format!("vertex {}", src.vertex_name(src.edge(e).src)))
                })?;
                Path::empty(v)
            } else {
                Path::from_names(&tgt, names)?
            };
            edge_map[e] = Some(path);
        }
        let vertex_map = vertex_map
            .into_iter()
            .enumerate()
            .map(|(v, x)| x.ok_or_else(|| Error::UndefinedImage(format!("vertex {}", src.vertex_name(v)))))
            .collect::<Result<_>>()?;
        let edge_map = edge_map
            .into_iter()
            .enumerate()
            .map(|(e, x)| x.ok_or_else(|| Error::UndefinedImage(format!("edge {}", src.edge_name(e)))))
            .collect::<Result<_>>()?;
        Self::with_block_swaps(src, tgt, vertex_map, edge_map)
    }

    pub fn apply_vertex(&self, v: VertexId) -> VertexId {
        self.vertex_map[v]
    }

    pub fn apply_path(&self, p: &Path) -> Path {
        let mut out = Path::empty(self.vertex_map[p.src()]);
        for &e in p.edges() {
            out = out
                .concat(&self.edge_map[e])
                .expect("images of consecutive edges are consecutive");
        }
        out
    }

    pub fn apply_step(&self, step: &PermutationStep) -> Result<Reshuffling> {
        let w = self
            .witnesses
            .get(&(step.p, step.q))
            .ok_or_else(|| Error::InvalidWitness("step uses a tile without witness".into()))?;
        let src = Path::new(&self.src, step.h1.tgt(), step.p.to_vec())?;
        let tgt = Path::new(&self.src, step.h1.tgt(), step.q.to_vec())?;
        let cell = Reshuffling {
            src: self.apply_path(&src),
            tgt: self.apply_path(&tgt),
            bij: w.clone(),
        };
        whisker(&self.apply_path(&step.h1), &cell, &self.apply_path(&step.h2))
    }

    /// Image of a 2-cell, by replaying one of its realizing sequences.
    pub fn apply_cell(&self, cell: &Reshuffling) -> Result<Reshuffling> {
        let steps = realize(&self.src, cell)?;
        self.apply_steps(&cell.src, &steps)
    }

    pub fn apply_steps(&self, f: &Path, steps: &[PermutationStep]) -> Result<Reshuffling> {
        let mut acc = Reshuffling::identity(&self.apply_path(f));
        for s in steps {
            let r = self.apply_step(s)?;
            acc.bij = compose(&acc.bij, &r.bij);
            acc.tgt = r.tgt;
        }
        Ok(acc)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &AsyncFunctor) -> Result<AsyncFunctor> {
        if !same_graph(&self.tgt, &next.src) {
            return Err(Error::CompositionMismatch(
                "functors are not composable".into(),
            ));
        }
        let vertex_map = self.vertex_map.iter().map(|&v| next.vertex_map[v]).collect();
        let edge_map = self.edge_map.iter().map(|p| next.apply_path(p)).collect();
        let mut witnesses = BTreeMap::new();
        for (&(p, q), w) in &self.witnesses {
            let pp = Path::new(&self.src, self.src.edge(p[0]).src, p.to_vec())?;
            let qq = Path::new(&self.src, self.src.edge(q[0]).src, q.to_vec())?;
            let cell = Reshuffling {
                src: self.apply_path(&pp),
                tgt: self.apply_path(&qq),
                bij: w.clone(),
            };
            witnesses.insert((p, q), next.apply_cell(&cell)?.bij);
        }
        Ok(AsyncFunctor {
            src: self.src.clone(),
            tgt: next.tgt.clone(),
            vertex_map,
            edge_map,
            witnesses,
        })
    }

    /// Equality of presentations: same graphs, same images of every generator.
    pub fn same_on_generators(&self, other: &AsyncFunctor) -> bool {
        self.mismatch(other).is_none()
    }

    /// The first generator on which two presentations differ.
    pub fn mismatch(&self, other: &AsyncFunctor) -> Option<String> {
        if !same_graph(&self.src, &other.src) {
            return Some("different sources".into());
        }
        if !same_graph(&self.tgt, &other.tgt) {
            return Some("different targets".into());
        }
        if let Some(v) = (0..self.vertex_map.len()).find(|&v| self.vertex_map[v] != other.vertex_map[v]) {
            return Some(format!(
                "vertex {}: {} vs {}",
                self.src.vertex_name(v),
                self.tgt.vertex_name(self.vertex_map[v]),
                self.tgt.vertex_name(other.vertex_map[v])
            ));
        }
        if let Some(e) = (0..self.edge_map.len()).find(|&e| self.edge_map[e] != other.edge_map[e]) {
            return Some(format!(
                "edge {}: {} vs {}",
                self.src.edge_name(e),
                self.edge_map[e].display(&self.tgt),
                other.edge_map[e].display(&self.tgt)
            ));
        }
        for (t, w) in &self.witnesses {
            if other.witnesses.get(t) != Some(w) {
                return Some(format!(
                    "tile {} ⋄ {}: witnesses differ",
                    self.src.word(&t.0),
                    self.src.word(&t.1)
                ));
            }
        }
        None
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    /// Structural checks, validity of witnesses, inverse cancellation and
    /// cube coherence.
    pub fn check(&self) -> Result<()> {
        let (s, t) = (&*self.src, &*self.tgt);
        if self.vertex_map.len() != s.vertex_count() || self.vertex_map.iter().any(|&v| v >= t.vertex_count()) {
            return Err(Error::InvalidWitness("vertex map is not total".into()));
        }
        if self.edge_map.len() != s.edge_count() {
            return Err(Error::InvalidWitness("edge map is not total".into()));
        }
        for (e, img) in self.edge_map.iter().enumerate() {
            let checked = Path::new(t, img.src(), img.edges().to_vec())?;
            let edge = s.edge(e);
            if checked.tgt() != img.tgt()
                || img.src() != self.vertex_map[edge.src]
                || img.tgt() != self.vertex_map[edge.tgt]
            {
                return Err(Error::InvalidWitness(format!(
                    "image of {} does not respect endpoints",
                    s.edge_name(e)
                )));
            }
        }
        let tiles: BTreeSet<Tile> = s.tiles().copied().collect();
        if self.witnesses.keys().copied().collect::<BTreeSet<_>>() != tiles {
            return Err(Error::InvalidWitness(
                "witnesses are not indexed by the tiles".into(),
            ));
        }
        let image = |p: [EdgeId; 2]| {
            self.edge_map[p[0]]
                .concat(&self.edge_map[p[1]])
                .expect("endpoints checked")
        };
        for (&(p, q), w) in &self.witnesses {
            if !is_reshuffling(t, &image(p), &image(q), w)? {
                return Err(Error::InvalidWitness(format!(
                    "witness of {} ⋄ {} is not a 2-cell",
                    s.word(&p),
                    s.word(&q)
                )));
            }
            let back = &self.witnesses[&(q, p)];
            if compose(w, back) != identity(w.len()) {
                return Err(Error::InvalidWitness(format!(
                    "witnesses of {} ⋄ {} and its reverse do not cancel",
                    s.word(&p),
                    s.word(&q)
                )));
            }
        }
        self.check_cubes()
    }

    fn check_cubes(&self) -> Result<()> {
        let s = &*self.src;
        for u1 in 0..s.edge_count() {
            for &u2 in s.out_edges(s.edge(u1).tgt) {
                for &u3 in s.out_edges(s.edge(u2).tgt) {
                    let f = Path::new(s, s.edge(u1).src, vec![u1, u2, u3])?;
                    let left = self.cube_images(&f, [1, 0, 1])?;
                    let right = self.cube_images(&f, [0, 1, 0])?;
                    for (end, bl) in &left {
                        if let Some(br) = right.get(end) {
                            if bl != br {
                                return Err(Error::InvalidWitness(format!(
                                    "the two cube sequences from {} to {} have different images",
                                    f.display(s),
                                    end.display(s)
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Images of all step sequences at the given offsets, keyed by endpoint.
    fn cube_images(&self, f: &Path, offsets: [usize; 3]) -> Result<BTreeMap<Path, BTreeSet<Bijection>>> {
        let s = &*self.src;
        let mut states: Vec<(Path, Vec<PermutationStep>)> = vec![(f.clone(), Vec::new())];
        for k in offsets {
            let mut next = Vec::new();
            for (p, steps) in &states {
                for &q in s.partners([p.edges()[k], p.edges()[k + 1]]) {
                    let step = PermutationStep::at(s, p, k, q)?;
                    let mut steps = steps.clone();
                    let tgt = step.target();
                    steps.push(step);
                    next.push((tgt, steps));
                }
            }
            states = next;
        }
        let mut out: BTreeMap<Path, BTreeSet<Bijection>> = BTreeMap::new();
        for (end, steps) in states {
            let img = self.apply_steps(f, &steps)?;
            out.entry(end).or_default().insert(img.bij);
        }
        Ok(out)
    }

    /// `F₁ ⧢ … ⧢ Fₙ` between freshly built shuffles.
    pub fn tensor(fs: &[&AsyncFunctor]) -> Result<AsyncFunctor> {
        let src = Arc::new(shuffle(&fs.iter().map(|f| f.src.clone()).collect::<Vec<_>>()));
        let tgt = Arc::new(shuffle(&fs.iter().map(|f| f.tgt.clone()).collect::<Vec<_>>()));
        Self::tensor_between(fs, src, tgt)
    }

    /// `F₁ ⧢ … ⧢ Fₙ` between given shuffles of the sources and targets.
    pub fn tensor_between(
        fs: &[&AsyncFunctor],
        src: Arc<AsynchGraph>,
        tgt: Arc<AsynchGraph>,
    ) -> Result<AsyncFunctor> {
        let mismatch = || Error::CompositionMismatch("tensor factors do not match the shuffles".into());
        let si = src.shuffle_info().ok_or_else(mismatch)?;
        let ti = tgt.shuffle_info().ok_or_else(mismatch)?;
        if si.arity() != fs.len() || ti.arity() != fs.len() {
            return Err(mismatch());
        }
        for (k, f) in fs.iter().enumerate() {
            if !same_graph(&si.factors()[k], &f.src) || !same_graph(&ti.factors()[k], &f.tgt) {
                return Err(mismatch());
            }
        }
        let vertex_map: Vec<VertexId> = (0..src.vertex_count())
            .map(|v| {
                let c: Vec<VertexId> = si
                    .coords(v)
                    .iter()
                    .zip(fs)
                    .map(|(&x, f)| f.vertex_map[x])
                    .collect();
                ti.vertex(&c).expect("tuple of images is a vertex")
            })
            .collect();
        let edge_map = (0..src.edge_count())
            .map(|e| {
                let (k, fe) = si.component(e);
                lift(&tgt, k, &fs[k].edge_map[fe], vertex_map[src.edge(e).src])
            })
            .collect::<Vec<_>>();
        let mut witnesses = BTreeMap::new();
        for &(p, q) in src.tiles() {
            let c = |e: EdgeId| si.component(e);
            let w = if c(p[0]).0 == c(p[1]).0 {
                let k = c(p[0]).0;
                let ft = ([c(p[0]).1, c(p[1]).1], [c(q[0]).1, c(q[1]).1]);
                fs[k].witnesses.get(&ft).cloned().ok_or_else(|| {
                    Error::InvalidWitness("embedded tile has no factor witness".into())
                })?
            } else {
                block_swap(edge_map[p[0]].len(), edge_map[p[1]].len())
            };
            witnesses.insert((p, q), w);
        }
        Ok(AsyncFunctor {
            src,
            tgt,
            vertex_map,
            edge_map,
            witnesses,
        })
    }

    /// Reorganizes a nested shuffle described by `shape`: the target is the
    /// flat shuffle of the leaves listed in `pick`, in that order; moves of
    /// other leaves are erased.
    pub fn rearrange(src: Arc<AsynchGraph>, shape: &Shape, pick: &[usize]) -> Result<AsyncFunctor> {
        let mut ls = Vec::new();
        leaves(&src, shape, &mut ls)?;
        let picked: Vec<_> = pick.iter().map(|&l| ls[l].clone()).collect();
        let tgt = Arc::new(shuffle(&picked));
        Self::rearrange_into(src, shape, pick, tgt)
    }

    pub fn rearrange_into(
        src: Arc<AsynchGraph>,
        shape: &Shape,
        pick: &[usize],
        tgt: Arc<AsynchGraph>,
    ) -> Result<AsyncFunctor> {
        let mut ls = Vec::new();
        leaves(&src, shape, &mut ls)?;
        let ti = tgt
            .shuffle_info()
            .filter(|i| i.arity() == pick.len())
            .ok_or_else(|| Error::CompositionMismatch("target is not the expected shuffle".into()))?;
        for (j, &l) in pick.iter().enumerate() {
            if !same_graph(&ti.factors()[j], &ls[l]) {
                return Err(Error::CompositionMismatch("target factors differ from the leaves".into()));
            }
        }
        let slot: BTreeMap<usize, usize> = pick.iter().enumerate().map(|(j, &l)| (l, j)).collect();
        let vertex_map: Vec<VertexId> = (0..src.vertex_count())
            .map(|v| {
                let mut all = Vec::new();
                leaf_coords(&src, shape, v, &mut all);
                let c: Vec<VertexId> = pick.iter().map(|&l| all[l]).collect();
                ti.vertex(&c).expect("picked coordinates form a vertex")
            })
            .collect();
        let edge_map = (0..src.edge_count())
            .map(|e| {
                let (l, le) = leaf_move(&src, shape, e);
                let at = vertex_map[src.edge(e).src];
                match slot.get(&l) {
                    Some(&j) => {
                        let te = ti.edge(j, le, at).expect("leaf edge has a copy");
                        Path::edge(&tgt, te)
                    }
                    None => Path::empty(at),
                }
            })
            .collect();
        Self::with_block_swaps(src, tgt, vertex_map, edge_map)
    }

    pub fn to_value(&self) -> Value {
        let (s, t) = (&*self.src, &*self.tgt);
        let vertices: BTreeMap<&str, &str> = (0..s.vertex_count())
            .map(|v| (s.vertex_name(v), t.vertex_name(self.vertex_map[v])))
            .collect();
        let edges: BTreeMap<&str, Vec<&str>> = (0..s.edge_count())
            .map(|e| {
                let img = self.edge_map[e].edges().iter().map(|&x| t.edge_name(x)).collect();
                (s.edge_name(e), img)
            })
            .collect();
        let witnesses: Vec<Value> = self
            .witnesses
            .iter()
            .map(|((p, q), w)| {
                json!({
                    "bij": w.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "tile": [[s.edge_name(p[0]), s.edge_name(p[1])], [s.edge_name(q[0]), s.edge_name(q[1])]],
                })
            })
            .collect();
        json!({ "edges": edges, "vertices": vertices, "witnesses": witnesses })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asynch_graph::{anchor_of, unit_i};

    #[test]
    fn identity_functor_is_valid() {
        let g = Arc::new(anchor_of(&["O", "P"]));
        let id = AsyncFunctor::identity(g.clone());
        id.check().unwrap();
        let twice = id.then(&id).unwrap();
        assert!(twice.same_on_generators(&id));
    }

    #[test]
    fn copying_functor_is_valid() {
        let g = Arc::new(anchor_of(&["O", "P"]));
        let gg = Arc::new(shuffle(&[g.clone(), g.clone()]));
        let d = AsyncFunctor::from_names(
            g.clone(),
            gg.clone(),
            &[("*", "(*,*)")],
            &[("O", &["(*,O)", "(O,*)"]), ("P", &["(P,*)", "(*,P)"])],
        )
        .unwrap();
        d.check().unwrap();
        let opo = Path::from_names(&g, &["O", "P", "O"]).unwrap();
        assert_eq!(
            d.apply_path(&opo).display(&gg),
            "(*,O)·(O,*)·(P,*)·(*,P)·(*,O)·(O,*)"
        );
    }

    #[test]
    fn a_wrong_witness_is_caught() {
        let g = Arc::new(anchor_of(&["O", "P"]));
        let mut id = AsyncFunctor::identity(g.clone());
        let o = g.edge_id("O").unwrap();
        let p = g.edge_id("P").unwrap();
        id.witnesses.insert(([o, p], [p, o]), vec![0, 1]);
        assert!(matches!(id.check(), Err(Error::InvalidWitness(_))));
    }

    #[test]
    fn erasing_a_leaf() {
        let g = Arc::new(anchor_of(&["O", "P"]));
        let i = Arc::new(unit_i());
        let ig = Arc::new(shuffle(&[i, g.clone()]));
        let unitor = AsyncFunctor::rearrange(ig.clone(), &Shape::flat(2), &[1]).unwrap();
        unitor.check().unwrap();
        assert_eq!(*unitor.tgt, *g);
        let none = AsyncFunctor::rearrange(ig, &Shape::flat(2), &[]).unwrap();
        assert!(none.edge_map.iter().all(Path::is_empty));
        none.check().unwrap();
    }

    #[test]
    fn flattening_is_an_isomorphism_on_generators() {
        let a = Arc::new(anchor_of(&["a"]));
        let b = Arc::new(anchor_of(&["b"]));
        let c = Arc::new(anchor_of(&["c"]));
        let bc = Arc::new(shuffle(&[b.clone(), c.clone()]));
        let nested = Arc::new(shuffle(&[a.clone(), bc]));
        let shape = Shape::Node(vec![Shape::Leaf, Shape::flat(2)]);
        let flat = AsyncFunctor::rearrange(nested.clone(), &shape, &[0, 1, 2]).unwrap();
        flat.check().unwrap();
        assert_eq!(flat.tgt.edge_count(), nested.edge_count());
        assert!(flat.edge_map.iter().all(|p| p.len() == 1));
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        let g = Arc::new(anchor_of(&["O", "P"]));
        let id = AsyncFunctor::identity(g.clone());
        let t = AsyncFunctor::tensor(&[&id, &id]).unwrap();
        t.check().unwrap();
        let direct = AsyncFunctor::identity(t.src.clone());
        assert!(t.same_on_generators(&direct), "{:?}", t.mismatch(&direct));
    }
}
