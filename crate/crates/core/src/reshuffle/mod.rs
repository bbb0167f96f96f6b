//! Paths, permutation steps and reshufflings: the 2-category `⟦G,⋄⟧`.
//!
//! A 2-cell is stored as the bijection it tracks on edge positions, never as
//! a sequence of steps. Bijections are 0-indexed in memory (`bij[i]` is the
//! position in the target path of the `i`-th edge of the source path) and
//! 1-indexed in JSON.

mod functor;
mod gray;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde_json::{json, Value};

use crate::asynch_graph::{AsynchGraph, EdgeId, VertexId};
use crate::error::{Error, Result};

pub use functor::{AsyncFunctor, Shape};
pub use gray::{gray_tensor, project_cell, project_path, q_projection};

pub type Bijection = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    src: VertexId,
    tgt: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn new(g: &AsynchGraph, src: VertexId, edges: Vec<EdgeId>) -> Result<Self> {
        if src >= g.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{src}")));
        }
        let mut at = src;
        for (i, &e) in edges.iter().enumerate() {
            if e >= g.edge_count() {
                return Err(Error::UnknownEdge(format!("#{e}")));
            }
            if g.edge(e).src != at {
                return Err(Error::MalformedPath(format!(
                    "edge {} at position {} does not start where the path is",
                    g.edge_name(e),
                    i + 1
                )));
            }
            at = g.edge(e).tgt;
        }
        Ok(Path {
            src,
            tgt: at,
            edges,
        })
    }

    /// A non-empty path given by its edges.
    pub fn from_edges(g: &AsynchGraph, edges: &[EdgeId]) -> Result<Self> {
        let first = edges
            .first()
            .ok_or_else(|| Error::MalformedPath("empty edge list without a source".into()))?;
        Path::new(g, g.edge(*first).src, edges.to_vec())
    }

    pub fn from_names(g: &AsynchGraph, names: &[&str]) -> Result<Self> {
        let edges = names
            .iter()
            .map(|n| g.require_edge(n))
            .collect::<Result<Vec<_>>>()?;
        Path::from_edges(g, &edges)
    }

    pub fn empty(v: VertexId) -> Self {
        Path {
            src: v,
            tgt: v,
            edges: Vec::new(),
        }
    }

    pub fn edge(g: &AsynchGraph, e: EdgeId) -> Self {
        let edge = g.edge(e);
        Path {
            src: edge.src,
            tgt: edge.tgt,
            edges: vec![e],
        }
    }

    pub fn src(&self) -> VertexId {
        self.src
    }

    pub fn tgt(&self) -> VertexId {
        self.tgt
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn concat(&self, other: &Path) -> Result<Path> {
        if self.tgt != other.src {
            return Err(Error::CompositionMismatch(
                "paths are not consecutive".into(),
            ));
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(Path {
            src: self.src,
            tgt: other.tgt,
            edges,
        })
    }

    /// The sub-path on positions `range`; `g` supplies intermediate vertices.
    pub fn slice(&self, g: &AsynchGraph, start: usize, end: usize) -> Path {
        let src = if start == 0 {
            self.src
        } else {
            g.edge(self.edges[start - 1]).tgt
        };
        let tgt = if end == 0 {
            self.src
        } else {
            g.edge(self.edges[end - 1]).tgt
        };
        Path {
            src,
            tgt,
            edges: self.edges[start..end].to_vec(),
        }
    }

    pub fn display(&self, g: &AsynchGraph) -> String {
        g.word(&self.edges)
    }

    pub fn to_value(&self, g: &AsynchGraph) -> Value {
        json!({
            "edges": self.edges.iter().map(|&e| g.edge_name(e)).collect::<Vec<_>>(),
            "src": g.vertex_name(self.src),
        })
    }
}

/// `h₁ · p · h₂ ⟶ h₁ · q · h₂` for a tile `p ⋄ q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationStep {
    pub h1: Path,
    pub p: [EdgeId; 2],
    pub q: [EdgeId; 2],
    pub h2: Path,
}

impl PermutationStep {
    /// The step acting at `offset` of `path`, replacing the two edges there by `q`.
    pub fn at(g: &AsynchGraph, path: &Path, offset: usize, q: [EdgeId; 2]) -> Result<Self> {
        if offset + 2 > path.len() {
            return Err(Error::MalformedStep(format!(
                "offset {offset} exceeds a path of length {}",
                path.len()
            )));
        }
        let step = PermutationStep {
            h1: path.slice(g, 0, offset),
            p: [path.edges[offset], path.edges[offset + 1]],
            q,
            h2: path.slice(g, offset + 2, path.len()),
        };
        step.check(g)?;
        Ok(step)
    }

    fn check(&self, g: &AsynchGraph) -> Result<()> {
        if !g.is_tile(self.p, self.q) {
            return Err(Error::MalformedStep(format!(
                "{} ⋄ {} is not a tile",
                g.word(&self.p),
                g.word(&self.q)
            )));
        }
        let p0 = g.edge(self.p[0]);
        let p1 = g.edge(self.p[1]);
        if self.h1.tgt != p0.src || self.h2.src != p1.tgt {
            return Err(Error::MalformedStep("context does not fit the tile".into()));
        }
        Ok(())
    }

    pub fn source(&self) -> Path {
        let mut edges = self.h1.edges.clone();
        edges.extend_from_slice(&self.p);
        edges.extend_from_slice(&self.h2.edges);
        Path {
            src: self.h1.src,
            tgt: self.h2.tgt,
            edges,
        }
    }

    pub fn target(&self) -> Path {
        let mut edges = self.h1.edges.clone();
        edges.extend_from_slice(&self.q);
        edges.extend_from_slice(&self.h2.edges);
        Path {
            src: self.h1.src,
            tgt: self.h2.tgt,
            edges,
        }
    }

    pub fn offset(&self) -> usize {
        self.h1.len()
    }
}

/// A 2-cell `[φ] : f ⇒ g` of `⟦G,⋄⟧`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Reshuffling {
    pub src: Path,
    pub tgt: Path,
    pub bij: Bijection,
}

impl Reshuffling {
    pub fn identity(f: &Path) -> Self {
        Reshuffling {
            src: f.clone(),
            tgt: f.clone(),
            bij: identity(f.len()),
        }
    }

    pub fn inverse(&self) -> Self {
        Reshuffling {
            src: self.tgt.clone(),
            tgt: self.src.clone(),
            bij: invert(&self.bij),
        }
    }

    pub fn to_value(&self, g: &AsynchGraph) -> Value {
        json!({
            "bij": self.bij.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "src": self.src.to_value(g),
            "tgt": self.tgt.to_value(g),
        })
    }
}

pub fn identity(n: usize) -> Bijection {
    (0..n).collect()
}

/// The inverse, or `None` if `b` is not a permutation of `0..len`.
pub fn invert_checked(b: &[usize]) -> Option<Bijection> {
    let mut out = vec![usize::MAX; b.len()];
    for (i, &j) in b.iter().enumerate() {
        if j >= b.len() || out[j] != usize::MAX {
            return None;
        }
        out[j] = i;
    }
    Some(out)
}

pub fn invert(b: &[usize]) -> Bijection {
    let mut out = vec![0; b.len()];
    for (i, &j) in b.iter().enumerate() {
        out[j] = i;
    }
    out
}

/// `first` followed by `then`.
pub fn compose(first: &[usize], then: &[usize]) -> Bijection {
    first.iter().map(|&j| then[j]).collect()
}

/// Block-diagonal sum: `a` on the first block, `b` shifted after it.
pub fn direct_sum(a: &[usize], b: &[usize]) -> Bijection {
    a.iter()
        .copied()
        .chain(b.iter().map(|&j| j + a.len()))
        .collect()
}

/// Exchanges a block of length `a` followed by a block of length `b`,
/// preserving the order inside each block.
pub fn block_swap(a: usize, b: usize) -> Bijection {
    (0..a).map(|i| b + i).chain(0..b).collect()
}

/// The transposition of positions `offset` and `offset + 1` among `n`.
pub fn transposition(n: usize, offset: usize) -> Bijection {
    let mut b = identity(n);
    b.swap(offset, offset + 1);
    b
}

pub fn step_bijection(g: &AsynchGraph, step: &PermutationStep) -> Result<Reshuffling> {
    step.check(g)?;
    let src = step.source();
    let n = src.len();
    Ok(Reshuffling {
        src,
        tgt: step.target(),
        bij: transposition(n, step.offset()),
    })
}

/// Composite of a chain of steps starting at `f`.
pub fn seq_bijection(g: &AsynchGraph, f: &Path, steps: &[PermutationStep]) -> Result<Reshuffling> {
    let mut acc = Reshuffling::identity(f);
    for (i, s) in steps.iter().enumerate() {
        if s.source() != acc.tgt {
            return Err(Error::NonChaining(i));
        }
        let r = step_bijection(g, s)?;
        acc = Reshuffling {
            src: acc.src,
            tgt: r.tgt,
            bij: compose(&acc.bij, &r.bij),
        };
    }
    Ok(acc)
}

/// All paths from `x` to `y` of length at most `max_len`.
pub fn enumerate_paths(
    g: &AsynchGraph,
    x: VertexId,
    y: VertexId,
    max_len: usize,
) -> Result<BTreeSet<Path>> {
    for v in [x, y] {
        if v >= g.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
    }
    Ok(paths_from(g, x, max_len)
        .into_iter()
        .filter(|p| p.tgt == y)
        .collect())
}

/// All paths leaving `x` of length at most `max_len`.
pub fn paths_from(g: &AsynchGraph, x: VertexId, max_len: usize) -> Vec<Path> {
    let mut out = vec![Path::empty(x)];
    let mut frontier = vec![Path::empty(x)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for &e in g.out_edges(p.tgt) {
                let mut edges = p.edges.clone();
                edges.push(e);
                next.push(Path {
                    src: p.src,
                    tgt: g.edge(e).tgt,
                    edges,
                });
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

type State = (Vec<EdgeId>, Bijection);

/// Breadth-first exploration of permutation sequences from `f`.
/// Each reached state remembers the state and step it was reached from.
struct Exploration {
    parent: HashMap<State, Option<(State, usize, [EdgeId; 2])>>,
}

impl Exploration {
    fn run(g: &AsynchGraph, f: &Path, goal: Option<&State>) -> Self {
        let start: State = (f.edges.clone(), identity(f.len()));
        let mut parent = HashMap::new();
        parent.insert(start.clone(), None);
        let mut queue = VecDeque::from([start]);
        while let Some(state) = queue.pop_front() {
            if Some(&state) == goal {
                break;
            }
            let (path, bij) = &state;
            for k in 0..path.len().saturating_sub(1) {
                for &q in g.partners([path[k], path[k + 1]]) {
                    let mut next_path = path.clone();
                    next_path[k] = q[0];
                    next_path[k + 1] = q[1];
                    let next_bij = compose(bij, &transposition(path.len(), k));
                    let next = (next_path, next_bij);
                    if !parent.contains_key(&next) {
                        parent.insert(next.clone(), Some((state.clone(), k, q)));
                        queue.push_back(next);
                    }
                }
            }
        }
        Exploration { parent }
    }
}

fn check_parallel(f: &Path, h: &Path) -> Result<()> {
    if f.len() != h.len() {
        return Err(Error::LengthMismatch(f.len(), h.len()));
    }
    if f.src != h.src || f.tgt != h.tgt {
        return Err(Error::EndpointMismatch);
    }
    Ok(())
}

/// Every path reachable from `f` with the bijections tracked on the way.
pub fn reachable(g: &AsynchGraph, f: &Path) -> BTreeMap<Path, BTreeSet<Bijection>> {
    let mut out: BTreeMap<Path, BTreeSet<Bijection>> = BTreeMap::new();
    for (path, bij) in Exploration::run(g, f, None).parent.into_keys() {
        let p = Path {
            src: f.src,
            tgt: f.tgt,
            edges: path,
        };
        out.entry(p).or_default().insert(bij);
    }
    out
}

/// The 2-cell hom-set `⟦G,⋄⟧(f, h)`.
pub fn hom2(g: &AsynchGraph, f: &Path, h: &Path) -> Result<BTreeSet<Bijection>> {
    check_parallel(f, h)?;
    Ok(reachable(g, f).remove(h).unwrap_or_default())
}

pub fn is_reshuffling(g: &AsynchGraph, f: &Path, h: &Path, bij: &[usize]) -> Result<bool> {
    check_parallel(f, h)?;
    if bij.len() != f.len() || invert_checked(bij).is_none() {
        return Ok(false);
    }
    let cell = Reshuffling {
        src: f.clone(),
        tgt: h.clone(),
        bij: bij.to_vec(),
    };
    if realize_by_inversions(g, &cell).is_some() {
        return Ok(true);
    }
    let goal = (h.edges.clone(), bij.to_vec());
    Ok(Exploration::run(g, f, Some(&goal)).parent.contains_key(&goal))
}

/// Removes inversions of the tracked bijection one adjacent tile at a time.
/// Fails (and the caller falls back to search) if some inverted pair has no
/// tile or the final path is not the target.
fn realize_by_inversions(g: &AsynchGraph, cell: &Reshuffling) -> Option<Vec<PermutationStep>> {
    let n = cell.src.len();
    let mut cur = cell.src.clone();
    // final[p] = target position of the move currently at position p
    let mut fin = cell.bij.clone();
    let mut steps = Vec::new();
    loop {
        let k = (0..n.saturating_sub(1)).find(|&k| fin[k] > fin[k + 1]);
        let Some(k) = k else { break };
        let partners = g.partners([cur.edges[k], cur.edges[k + 1]]);
        let &q = partners.first()?;
        let step = PermutationStep::at(g, &cur, k, q).ok()?;
        cur = step.target();
        fin.swap(k, k + 1);
        steps.push(step);
    }
    (cur == cell.tgt).then_some(steps)
}

/// A permutation sequence realizing `cell`, if it is a 2-cell at all.
pub fn realize(g: &AsynchGraph, cell: &Reshuffling) -> Result<Vec<PermutationStep>> {
    check_parallel(&cell.src, &cell.tgt)?;
    if cell.bij.len() == cell.src.len() {
        if let Some(steps) = realize_by_inversions(g, cell) {
            return Ok(steps);
        }
    }
    let goal = (cell.tgt.edges.clone(), cell.bij.clone());
    let ex = Exploration::run(g, &cell.src, Some(&goal));
    if !ex.parent.contains_key(&goal) {
        return Err(Error::InvalidWitness(format!(
            "no permutation sequence from {} to {} tracks the given bijection",
            cell.src.display(g),
            cell.tgt.display(g)
        )));
    }
    let mut steps = Vec::new();
    let mut cur = goal;
    while let Some(Some((prev, k, q))) = ex.parent.get(&cur) {
        let path = Path {
            src: cell.src.src,
            tgt: cell.src.tgt,
            edges: prev.0.clone(),
        };
        steps.push(PermutationStep::at(g, &path, *k, *q)?);
        cur = prev.clone();
    }
    steps.reverse();
    Ok(steps)
}

pub fn vcompose(a: &Reshuffling, b: &Reshuffling) -> Result<Reshuffling> {
    if a.tgt != b.src {
        return Err(Error::CompositionMismatch(
            "target of the first cell is not the source of the second".into(),
        ));
    }
    Ok(Reshuffling {
        src: a.src.clone(),
        tgt: b.tgt.clone(),
        bij: compose(&a.bij, &b.bij),
    })
}

pub fn hcompose(a: &Reshuffling, b: &Reshuffling) -> Result<Reshuffling> {
    Ok(Reshuffling {
        src: a.src.concat(&b.src)?,
        tgt: a.tgt.concat(&b.tgt)?,
        bij: direct_sum(&a.bij, &b.bij),
    })
}

pub fn whisker(j1: &Path, cell: &Reshuffling, j2: &Path) -> Result<Reshuffling> {
    let left = hcompose(&Reshuffling::identity(j1), cell)?;
    hcompose(&left, &Reshuffling::identity(j2))
}
