//! Horizontal composition of bicomodules as the equalizer of
//! `δʳ_S ⧢ T` and `S ⧢ δˡ_T`.
//!
//! The equalizer is computed on generators: moves of `S` that do not touch
//! `B`, moves of `T` that do not touch `B`, and synchronized pairs of an
//! `S`-move and a `T`-move with the same `B`-image. The result is then
//! compared with the definitional path set up to a length bound.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde_json::{json, Value};

use super::bicomodule::{Bicomodule, Token};
use crate::asynch_graph::{shuffle, AsynchGraph, EdgeId, GraphBuilder, VertexId};
use crate::error::{Error, Result};
use crate::reshuffle::{block_swap, is_reshuffling, AsyncFunctor, Path, Reshuffling, Shape};

/// Default length bound for the certification run inside composition.
pub const CERTIFY_LEN: usize = 4;

/// Which half of a synchronized pair comes first in `S ⧢ T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SyncOrder {
    /// `S` produces `m·b`, `T` consumes `b·n`.
    SFirst,
    /// `T` produces `n·b`, `S` consumes `b·m`.
    TFirst,
}

impl SyncOrder {
    pub fn label(self) -> &'static str {
        match self {
            SyncOrder::SFirst => "OP",
            SyncOrder::TFirst => "PO",
        }
    }
}

/// Origin of an edge of the composite support.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Left { s_edge: EdgeId, t_vertex: VertexId },
    Right { s_vertex: VertexId, t_edge: EdgeId },
    Sync { s_edge: EdgeId, t_edge: EdgeId, order: SyncOrder },
}

/// `S ⊠_B T` together with its presentation inside `S ⧢ T`.
#[derive(Clone, Debug)]
pub struct Composite {
    pub bicomodule: Bicomodule,
    pub s: Arc<Bicomodule>,
    pub t: Arc<Bicomodule>,
    /// `S ⧢ T`
    pub product: Arc<AsynchGraph>,
    /// Composite vertex ↦ `(s, t)`.
    pub pairs: Vec<(VertexId, VertexId)>,
    /// Composite edge ↦ origin.
    pub generators: Vec<Generator>,
    /// Composite edge ↦ path of `S ⧢ T`.
    pub expansions: Vec<Path>,
    vertex_index: HashMap<(VertexId, VertexId), VertexId>,
    edge_index: HashMap<Generator, EdgeId>,
}

/// Which side of a support move its boundary moves lie on.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Producer,
    Consumer,
    Mixed,
}

fn role(tokens: &[Token], boundary: impl Fn(&Token) -> bool) -> Role {
    let pos = tokens
        .iter()
        .position(|t| matches!(t, Token::Support(_)))
        .expect("every coaction image holds its support edge");
    let before = tokens[..pos].iter().any(&boundary);
    let after = tokens[pos + 1..].iter().any(&boundary);
    match (before, after) {
        (false, true) => Role::Producer,
        (true, false) => Role::Consumer,
        _ => Role::Mixed,
    }
}

/// Events of the images of `S ⧢ T` in `S ⧢ B ⧢ T`: (component, factor edge).
type Event = (usize, EdgeId);

struct Images {
    f: Vec<Vec<Event>>,
    g: Vec<Vec<Event>>,
}

fn images(s: &Bicomodule, t: &Bicomodule, product: &AsynchGraph) -> Images {
    let info = product.shuffle_info().expect("product is a shuffle");
    let mut f = Vec::new();
    let mut g = Vec::new();
    for e in 0..product.edge_count() {
        match info.component(e) {
            (0, m) => {
                f.push(
                    s.tokens(m)
                        .into_iter()
                        .filter_map(|tk| match tk {
                            Token::Support(x) => Some((0, x)),
                            Token::Right(b) => Some((1, b)),
                            Token::Left(_) => None,
                        })
                        .collect(),
                );
                g.push(vec![(0, m)]);
            }
            (_, n) => {
                f.push(vec![(2, n)]);
                g.push(
                    t.tokens(n)
                        .into_iter()
                        .filter_map(|tk| match tk {
                            Token::Support(x) => Some((2, x)),
                            Token::Left(b) => Some((1, b)),
                            Token::Right(_) => None,
                        })
                        .collect(),
                );
            }
        }
    }
    Images { f, g }
}

fn middle_position_s(s: &Bicomodule, v: VertexId) -> VertexId {
    s.position(v).1
}

fn middle_position_t(t: &Bicomodule, v: VertexId) -> VertexId {
    t.position(v).0
}

/// All paths of `S ⧢ T` of length at most `max_len` whose images under
/// `δʳ_S ⧢ T` and `S ⧢ δˡ_T` coincide.
pub fn equalizer_oracle(s: &Bicomodule, t: &Bicomodule, max_len: usize) -> Result<BTreeSet<Path>> {
    if !s.right.same_as(&t.left) {
        return Err(Error::MiddleMismatch);
    }
    let product = shuffle(&[s.support.clone(), t.support.clone()]);
    Ok(oracle_in(s, t, &product, max_len))
}

fn oracle_in(s: &Bicomodule, t: &Bicomodule, product: &AsynchGraph, max_len: usize) -> BTreeSet<Path> {
    let info = product.shuffle_info().expect("product is a shuffle");
    let im = images(s, t, product);
    let mut out = BTreeSet::new();
    for v in 0..product.vertex_count() {
        let c = info.coords(v);
        if middle_position_s(s, c[0]) != middle_position_t(t, c[1]) {
            continue;
        }
        let mut stack = vec![(Vec::<EdgeId>::new(), v, Vec::<Event>::new(), Vec::<Event>::new())];
        while let Some((edges, at, fi, gi)) = stack.pop() {
            if fi == gi {
                out.insert(Path::new(product, v, edges.clone()).expect("built edge by edge"));
            }
            if edges.len() == max_len {
                continue;
            }
            for &e in product.out_edges(at) {
                let mut f2 = fi.clone();
                f2.extend_from_slice(&im.f[e]);
                let mut g2 = gi.clone();
                g2.extend_from_slice(&im.g[e]);
                let n = f2.len().min(g2.len());
                if f2[..n] != g2[..n] {
                    continue;
                }
                let mut e2 = edges.clone();
                e2.push(e);
                stack.push((e2, product.edge(e).tgt, f2, g2));
            }
        }
    }
    out
}

pub fn compose_bicomodules(s: &Arc<Bicomodule>, t: &Arc<Bicomodule>) -> Result<Composite> {
    compose_bicomodules_with(s, t, Some(CERTIFY_LEN))
}

/// Composition, certified against [`equalizer_oracle`] up to `certify`
/// when given.
pub fn compose_bicomodules_with(
    s: &Arc<Bicomodule>,
    t: &Arc<Bicomodule>,
    certify: Option<usize>,
) -> Result<Composite> {
    if !s.right.same_as(&t.left) {
        return Err(Error::MiddleMismatch);
    }
    let (ss, ts) = (&s.support, &t.support);
    let product = Arc::new(shuffle(&[ss.clone(), ts.clone()]));
    let pi = product.shuffle_info().expect("product is a shuffle");
    let pv = |a: VertexId, b: VertexId| pi.vertex(&[a, b]).expect("pair is a vertex");

    let mut b = GraphBuilder::new();
    let mut pairs = Vec::new();
    let mut vertex_index = HashMap::new();
    for sv in 0..ss.vertex_count() {
        for tv in 0..ts.vertex_count() {
            if middle_position_s(s, sv) == middle_position_t(t, tv) {
                let id = b.vertex_fresh(format!("({},{})", ss.vertex_name(sv), ts.vertex_name(tv)));
                vertex_index.insert((sv, tv), id);
                pairs.push((sv, tv));
            }
        }
    }

    let mut generators = Vec::new();
    let mut expansions = Vec::new();
    let mut edge_index = HashMap::new();
    let mut add = |b: &mut GraphBuilder, g: Generator, name: String, label: String, exp: Vec<EdgeId>| {
        let src = product.edge(exp[0]).src;
        let path = Path::new(&product, src, exp).expect("expansions chain");
        let sc = pi.coords(path.src());
        let tc = pi.coords(path.tgt());
        let from = vertex_index[&(sc[0], sc[1])];
        let to = vertex_index[&(tc[0], tc[1])];
        let id = b.edge_fresh(name, from, to, label);
        edge_index.insert(g, id);
        generators.push(g);
        expansions.push(path);
    };

    let single_t = ts.vertex_count() == 1;
    let single_s = ss.vertex_count() == 1;
    for (m, edge) in ss.edges().iter().enumerate() {
        if !s.right_moves(m).is_empty() {
            continue;
        }
        for tv in 0..ts.vertex_count() {
            if middle_position_t(t, tv) != middle_position_s(s, edge.src) {
                continue;
            }
            let name = if single_t {
                edge.name.clone()
            } else {
                format!("({},{})", edge.name, ts.vertex_name(tv))
            };
            let exp = vec![pi.edge(0, m, pv(edge.src, tv)).expect("copy exists")];
            add(&mut b, Generator::Left { s_edge: m, t_vertex: tv }, name, edge.label.clone(), exp);
        }
    }
    for (m, sedge) in ss.edges().iter().enumerate() {
        let rm = s.right_moves(m);
        if rm.is_empty() {
            continue;
        }
        let s_role = role(&s.tokens(m), |tk| matches!(tk, Token::Right(_)));
        for (n, tedge) in ts.edges().iter().enumerate() {
            let lm = t.left_moves(n);
            if lm != rm || middle_position_s(s, sedge.src) != middle_position_t(t, tedge.src) {
                continue;
            }
            let t_role = role(&t.tokens(n), |tk| matches!(tk, Token::Left(_)));
            let order = match (s_role, t_role) {
                (Role::Producer, Role::Consumer) => SyncOrder::SFirst,
                (Role::Consumer, Role::Producer) => SyncOrder::TFirst,
                _ => continue,
            };
            let start = pv(sedge.src, tedge.src);
            let exp = match order {
                SyncOrder::SFirst => {
                    let x = pi.edge(0, m, start).expect("copy exists");
                    let y = pi.edge(1, n, product.edge(x).tgt).expect("copy exists");
                    vec![x, y]
                }
                SyncOrder::TFirst => {
                    let y = pi.edge(1, n, start).expect("copy exists");
                    let x = pi.edge(0, m, product.edge(y).tgt).expect("copy exists");
                    vec![y, x]
                }
            };
            let name = format!("{}|{}", sedge.name, tedge.name);
            add(
                &mut b,
                Generator::Sync { s_edge: m, t_edge: n, order },
                name,
                order.label().to_string(),
                exp,
            );
        }
    }
    for (n, edge) in ts.edges().iter().enumerate() {
        if !t.left_moves(n).is_empty() {
            continue;
        }
        for sv in 0..ss.vertex_count() {
            if middle_position_s(s, sv) != middle_position_t(t, edge.src) {
                continue;
            }
            let name = if single_s {
                edge.name.clone()
            } else {
                format!("({},{})", ss.vertex_name(sv), edge.name)
            };
            let exp = vec![pi.edge(1, n, pv(sv, edge.src)).expect("copy exists")];
            add(&mut b, Generator::Right { s_vertex: sv, t_edge: n }, name, edge.label.clone(), exp);
        }
    }

    add_tiles(s, t, &product, &mut b, &expansions)?;
    let support = Arc::new(b.build());

    let mut tokens = Vec::new();
    for (x, exp) in expansions.iter().enumerate() {
        tokens.push(composite_tokens(s, t, &product, x, exp)?);
    }
    let positions: Vec<(VertexId, VertexId)> = pairs
        .iter()
        .map(|&(sv, tv)| (s.position(sv).0, t.position(tv).1))
        .collect();
    let bicomodule = Bicomodule::assemble(s.left.clone(), t.right.clone(), support, &positions, &tokens)?;

    let composite = Composite {
        bicomodule,
        s: s.clone(),
        t: t.clone(),
        product,
        pairs,
        generators,
        expansions,
        vertex_index,
        edge_index,
    };
    if let Some(len) = certify {
        composite.certify(len)?;
    }
    Ok(composite)
}

/// `F = δʳ_S ⧢ T` and `G = S ⧢ δˡ_T`, both flattened into `S ⧢ B ⧢ T`.
fn parallel_pair(s: &Bicomodule, t: &Bicomodule, product: &Arc<AsynchGraph>) -> Result<(AsyncFunctor, AsyncFunctor)> {
    let dr = s.coact_right()?;
    let dl = t.coact_left()?;
    let id_s = AsyncFunctor::identity(s.support.clone());
    let id_t = AsyncFunctor::identity(t.support.clone());
    let flat = Arc::new(shuffle(&[s.support.clone(), s.right.carrier.clone(), t.support.clone()]));
    let f = AsyncFunctor::tensor_between(
        &[&dr, &id_t],
        product.clone(),
        Arc::new(shuffle(&[dr.tgt.clone(), t.support.clone()])),
    )?;
    let f_flat = AsyncFunctor::rearrange_into(
        f.tgt.clone(),
        &Shape::Node(vec![Shape::flat(2), Shape::Leaf]),
        &[0, 1, 2],
        flat.clone(),
    )?;
    let g = AsyncFunctor::tensor_between(
        &[&id_s, &dl],
        product.clone(),
        Arc::new(shuffle(&[s.support.clone(), dl.tgt.clone()])),
    )?;
    let g_flat = AsyncFunctor::rearrange_into(
        g.tgt.clone(),
        &Shape::Node(vec![Shape::Leaf, Shape::flat(2)]),
        &[0, 1, 2],
        flat,
    )?;
    Ok((f.then(&f_flat)?, g.then(&g_flat)?))
}

/// Declares `x·y ⋄ y'·x'` whenever the block exchange of the expansions is a
/// 2-cell of `S ⧢ T` on which the parallel pair agrees.
fn add_tiles(
    s: &Bicomodule,
    t: &Bicomodule,
    product: &Arc<AsynchGraph>,
    b: &mut GraphBuilder,
    expansions: &[Path],
) -> Result<()> {
    let (f, g) = parallel_pair(s, t, product)?;
    let mut out: HashMap<VertexId, Vec<EdgeId>> = HashMap::new();
    let mut src_of = Vec::new();
    for (x, exp) in expansions.iter().enumerate() {
        out.entry(exp.src()).or_default().push(x);
        src_of.push(exp.src());
    }
    let mut by_ends: BTreeMap<(VertexId, VertexId), Vec<[EdgeId; 2]>> = BTreeMap::new();
    for (x, ex) in expansions.iter().enumerate() {
        for &y in out.get(&ex.tgt()).map(Vec::as_slice).unwrap_or(&[]) {
            by_ends.entry((ex.src(), expansions[y].tgt())).or_default().push([x, y]);
        }
    }
    for paths in by_ends.values() {
        for &[x, y] in paths {
            for &[y2, x2] in paths {
                let (ex, ey) = (&expansions[x], &expansions[y]);
                if ex.len() != expansions[x2].len() || ey.len() != expansions[y2].len() {
                    continue;
                }
                let src = ex.concat(ey)?;
                let tgt = expansions[y2].concat(&expansions[x2])?;
                let bij = block_swap(ex.len(), ey.len());
                if !is_reshuffling(product, &src, &tgt, &bij)? {
                    continue;
                }
                let cell = Reshuffling { src, tgt, bij };
                if f.apply_cell(&cell)? != g.apply_cell(&cell)? {
                    continue;
                }
                b.oriented_tile([x, y], [y2, x2])?;
            }
        }
    }
    Ok(())
}

/// Coaction image of a composite edge: left coaction of `S` on `S`-moves,
/// right coaction of `T` on `T`-moves, with both halves of a synchronized
/// pair collapsed into the composite edge.
fn composite_tokens(
    s: &Bicomodule,
    t: &Bicomodule,
    product: &AsynchGraph,
    x: EdgeId,
    exp: &Path,
) -> Result<Vec<Token>> {
    let info = product.shuffle_info().expect("product is a shuffle");
    let mut out = Vec::new();
    let mut pending_support = 0usize;
    let mut emitted = false;
    for &e in exp.edges() {
        let (k, fe) = info.component(e);
        let toks = if k == 0 {
            s.tokens(fe)
                .into_iter()
                .filter(|tk| !matches!(tk, Token::Right(_)))
                .collect::<Vec<_>>()
        } else {
            t.tokens(fe)
                .into_iter()
                .filter(|tk| !matches!(tk, Token::Left(_)))
                .collect::<Vec<_>>()
        };
        for tk in toks {
            match tk {
                Token::Support(_) => {
                    pending_support += 1;
                    if !emitted {
                        out.push(Token::Support(x));
                        emitted = true;
                    } else if !matches!(out.last(), Some(Token::Support(_))) {
                        return Err(Error::Certification(
                            "boundary moves separate the two halves of a synchronization".into(),
                        ));
                    }
                }
                other => out.push(other),
            }
        }
    }
    debug_assert_eq!(pending_support, exp.len());
    Ok(out)
}

impl Composite {
    pub fn support(&self) -> &Arc<AsynchGraph> {
        &self.bicomodule.support
    }

    pub fn vertex(&self, s: VertexId, t: VertexId) -> Option<VertexId> {
        self.vertex_index.get(&(s, t)).copied()
    }

    pub fn edge_for(&self, g: &Generator) -> Option<EdgeId> {
        self.edge_index.get(g).copied()
    }

    /// The path of `S ⧢ T` a composite path stands for.
    pub fn expand(&self, p: &Path) -> Path {
        let (s, t) = self.pairs[p.src()];
        let mut out = Path::empty(self.product.shuffle_info().expect("shuffle").vertex(&[s, t]).expect("pair"));
        for &x in p.edges() {
            out = out.concat(&self.expansions[x]).expect("expansions chain");
        }
        out
    }

    /// Reads a path of `S ⧢ T` as a composite path, when it lies in the equalizer.
    pub fn parse(&self, p: &Path) -> Result<Path> {
        let info = self.product.shuffle_info().expect("shuffle");
        let c = info.coords(p.src());
        let start = self
            .vertex(c[0], c[1])
            .ok_or_else(|| Error::Certification("path starts outside the composite".into()))?;
        let es = p.edges();
        let mut out = Vec::new();
        let mut i = 0;
        let mut at = p.src();
        while i < es.len() {
            let here = info.coords(at).to_vec();
            let (k, fe) = info.component(es[i]);
            let single = if k == 0 {
                Generator::Left { s_edge: fe, t_vertex: here[1] }
            } else {
                Generator::Right { s_vertex: here[0], t_edge: fe }
            };
            if let Some(x) = self.edge_for(&single) {
                out.push(x);
                at = self.product.edge(es[i]).tgt;
                i += 1;
                continue;
            }
            let pair = es.get(i + 1).map(|&e2| info.component(e2));
            let sync = match (k, pair) {
                (0, Some((1, n))) => Some(Generator::Sync { s_edge: fe, t_edge: n, order: SyncOrder::SFirst }),
                (1, Some((0, m))) => Some(Generator::Sync { s_edge: m, t_edge: fe, order: SyncOrder::TFirst }),
                _ => None,
            };
            match sync.and_then(|g| self.edge_for(&g)) {
                Some(x) if self.expansions[x].src() == at => {
                    out.push(x);
                    at = self.product.edge(es[i + 1]).tgt;
                    i += 2;
                }
                _ => {
                    return Err(Error::Certification(format!(
                        "move {} at position {} is not a composite generator",
                        self.product.edge_name(es[i]),
                        i + 1
                    )))
                }
            }
        }
        Path::new(self.support(), start, out)
    }

    /// Compares the expanded composite paths with [`equalizer_oracle`].
    pub fn certify(&self, max_len: usize) -> Result<()> {
        let oracle = oracle_in(&self.s, &self.t, &self.product, max_len);
        let mut expanded = BTreeSet::new();
        let e = self.support();
        for v in 0..e.vertex_count() {
            let mut stack = vec![Path::empty(v)];
            while let Some(p) = stack.pop() {
                let x = self.expand(&p);
                if x.len() > max_len {
                    continue;
                }
                expanded.insert(x);
                for &y in e.out_edges(p.tgt()) {
                    stack.push(p.concat(&Path::edge(e, y))?);
                }
            }
        }
        if let Some(p) = oracle.symmetric_difference(&expanded).next() {
            let side = if oracle.contains(p) { "equalizer" } else { "composite" };
            return Err(Error::Certification(format!(
                "{} is only in the {side} path set",
                p.display(&self.product)
            )));
        }
        Ok(())
    }

    /// Composite generator ↦ its `(S-edge, T-edge, B-image)` origin.
    pub fn provenance(&self) -> Value {
        let e = self.support();
        let (ss, ts) = (&self.s.support, &self.t.support);
        let b = &self.s.right.carrier;
        let rows: BTreeMap<&str, Value> = self
            .generators
            .iter()
            .enumerate()
            .map(|(x, g)| {
                let row = match *g {
                    Generator::Left { s_edge, t_vertex } => json!({
                        "b_image": [], "kind": "left",
                        "s_edge": ss.edge_name(s_edge), "t_vertex": ts.vertex_name(t_vertex),
                    }),
                    Generator::Right { s_vertex, t_edge } => json!({
                        "b_image": [], "kind": "right",
                        "s_vertex": ss.vertex_name(s_vertex), "t_edge": ts.edge_name(t_edge),
                    }),
                    Generator::Sync { s_edge, t_edge, order } => json!({
                        "b_image": self.s.right_moves(s_edge).iter().map(|&m| b.edge_name(m)).collect::<Vec<_>>(),
                        "kind": "sync",
                        "order": order.label(),
                        "s_edge": ss.edge_name(s_edge),
                        "t_edge": ts.edge_name(t_edge),
                    }),
                };
                (e.edge_name(x), row)
            })
            .collect();
        json!(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asynch_graph::anchor_of;
    use crate::comod::{comonoid_from_polarity, Polarity};

    fn zero() -> Arc<super::super::Comonoid> {
        Arc::new(comonoid_from_polarity(Arc::new(anchor_of(&["O", "P"])), &[Polarity::O, Polarity::P]).unwrap())
    }

    #[test]
    fn identity_composed_with_itself() {
        let id = Arc::new(Bicomodule::identity(zero()).unwrap());
        let c = compose_bicomodules(&id, &id).unwrap();
        assert_eq!(c.support().edge_count(), 2);
        assert!(c.generators.iter().all(|g| matches!(g, Generator::Sync { .. })));
        c.bicomodule.check().unwrap();
        c.certify(6).unwrap();
    }

    #[test]
    fn mismatched_middles_are_rejected() {
        let id = Arc::new(Bicomodule::identity(zero()).unwrap());
        let tic = Arc::new(comonoid_from_polarity(Arc::new(anchor_of(&["t"])), &[Polarity::P]).unwrap());
        let other = Arc::new(Bicomodule::identity(tic).unwrap());
        assert!(matches!(compose_bicomodules(&id, &other), Err(Error::MiddleMismatch)));
    }
}
