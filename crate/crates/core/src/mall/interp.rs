//! Formulas as games and proofs as strategies `1 ↛ A₁ ⊗ … ⊗ Aₙ`.
//!
//! A sequent `⊢ A₁, …, Aₙ` is read as the flat n-ary shuffle of its
//! formulas. Every rule ends by moving the target of the strategy along a
//! reorganization of nested shuffles, so intermediate results stay flat.

use std::collections::BTreeMap;
use std::path::Path as FsPath;
use std::sync::Arc;

use serde_json::Value;

use super::formula::Formula;
use super::proof::Proof;
use crate::asynch_graph::{graph_from_value, unit_i, AsynchGraph, GraphBuilder, VertexId};
use crate::error::{Error, Result};
use crate::reshuffle::{AsyncFunctor, Path, Shape};
use crate::template::{
    compose_strategies, copycat, curry, lollipop, negate_game, pairing, par, plus, tensor_all, tensor_games,
    tensor_strategies, uncurry, unit_game, void_game, with, Game, Strategy,
};

/// Games bound to atom names.
#[derive(Clone, Debug, Default)]
pub struct AtomEnvironment {
    pub atoms: BTreeMap<String, Arc<Game>>,
}

impl AtomEnvironment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(&mut self, name: &str, game: Game) -> Result<()> {
        game.check()?;
        self.atoms.insert(name.to_string(), Arc::new(game));
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&Arc<Game>> {
        self.atoms.get(name).ok_or_else(|| Error::UnboundAtom(name.to_string()))
    }

    /// Reads `{"a": "a.json", "b": {...inline graph...}}`; relative paths are
    /// resolved against `base`.
    pub fn from_value(v: &Value, base: &FsPath) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Document("environment must be a JSON object".into()))?;
        let mut env = AtomEnvironment::new();
        for (name, entry) in obj {
            let graph = match entry {
                Value::String(p) => {
                    let text = std::fs::read_to_string(base.join(p))?;
                    serde_json::from_str(&text)?
                }
                Value::Object(_) => entry.clone(),
                _ => return Err(Error::Document(format!("atom `{name}` must map to a path or a graph"))),
            };
            env.bind(name, Game::from_graph(graph_from_value(&graph)?)?)?;
        }
        Ok(env)
    }

    pub fn load(path: &FsPath) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let base = path.parent().unwrap_or_else(|| FsPath::new("."));
        Self::from_value(&serde_json::from_str(&text)?, base)
    }
}

pub fn interpret_formula(f: &Formula, env: &AtomEnvironment) -> Result<Game> {
    let go = |x: &Formula| interpret_formula(x, env);
    Ok(match f {
        Formula::Atom(a) => (**env.get(a)?).clone(),
        Formula::Neg(a) => negate_game(&go(a)?),
        Formula::Tensor(a, b) => tensor_games(&go(a)?, &go(b)?)?,
        Formula::Par(a, b) => par(&go(a)?, &go(b)?)?,
        Formula::Lollipop(a, b) => lollipop(&go(a)?, &go(b)?)?,
        Formula::With(a, b) => with(&go(a)?, &go(b)?)?,
        Formula::Plus(a, b) => plus(&go(a)?, &go(b)?)?,
        Formula::One | Formula::Bot => unit_game(),
        Formula::Top | Formula::Zero => void_game(),
    })
}

/// `A₁ ⊗ … ⊗ Aₙ` as a flat shuffle, `1` when empty.
pub fn sequent_game(games: &[Game]) -> Result<Game> {
    tensor_all(&games.iter().collect::<Vec<_>>())
}

fn interpret_sequent(gamma: &[Formula], env: &AtomEnvironment) -> Result<Vec<Game>> {
    gamma.iter().map(|f| interpret_formula(f, env)).collect()
}

/// Moves the target of `sigma`, a shuffle of shape `src_shape`, onto `target`,
/// a shuffle of shape `tgt_shape` whose leaves are the leaves `pick` of the
/// source in order.
fn regroup(sigma: &Strategy, src_shape: &Shape, pick: &[usize], tgt_shape: &Shape, target: Game) -> Result<Strategy> {
    let target = Arc::new(target);
    let flatten = AsyncFunctor::rearrange(sigma.target.support.clone(), src_shape, pick)?;
    let all: Vec<usize> = (0..pick.len()).collect();
    let unflatten = AsyncFunctor::rearrange_into(target.support.clone(), tgt_shape, &all, flatten.tgt.clone())?;
    let f = then_inverse(&flatten, &unflatten, &target.support)?;
    sigma.map_target(&f, target)
}

/// `f` followed by the inverse of the isomorphism `iso`, for functors that send
/// edges to single edges.
fn then_inverse(f: &AsyncFunctor, iso: &AsyncFunctor, tgt: &Arc<AsynchGraph>) -> Result<AsyncFunctor> {
    let mut inv_v = vec![usize::MAX; iso.tgt.vertex_count()];
    for (v, &w) in iso.vertex_map.iter().enumerate() {
        inv_v[w] = v;
    }
    let mut inv_e = vec![usize::MAX; iso.tgt.edge_count()];
    for (e, p) in iso.edge_map.iter().enumerate() {
        if let [x] = p.edges() {
            inv_e[*x] = e;
        }
    }
    let vertex_map: Vec<VertexId> = f.vertex_map.iter().map(|&w| inv_v[w]).collect();
    let edge_map = f
        .edge_map
        .iter()
        .enumerate()
        .map(|(e, p)| {
            let edges: Vec<usize> = p.edges().iter().map(|&x| inv_e[x]).collect();
            Path::new(tgt, vertex_map[f.src.edge(e).src], edges)
        })
        .collect::<Result<Vec<_>>>()?;
    AsyncFunctor::with_block_swaps(f.src.clone(), tgt.clone(), vertex_map, edge_map)
}

fn leaves(n: usize) -> Vec<Shape> {
    vec![Shape::Leaf; n]
}

fn node(parts: Vec<Shape>) -> Shape {
    Shape::Node(parts)
}

/// `1 ↛ Γ ⊗ A` seen as `¬Γ ↛ A`, where `A` is the last formula.
fn split_last(sigma: &Strategy, games: &[Game]) -> Result<Strategy> {
    let n = games.len() - 1;
    let ctx = sequent_game(&games[..n])?;
    let binary = tensor_games(&ctx, &games[n])?;
    let shape = node(vec![Shape::flat(n), Shape::Leaf]);
    let all: Vec<usize> = (0..=n).collect();
    let s = regroup(sigma, &Shape::flat(n + 1), &all, &shape, binary)?;
    uncurry(&s, &ctx, &games[n])
}

/// `1 ↛ A ⊗ Δ` seen as `¬A ↛ Δ`, where `A` is the first formula.
fn split_first(sigma: &Strategy, games: &[Game]) -> Result<Strategy> {
    let m = games.len() - 1;
    let rest = sequent_game(&games[1..])?;
    let binary = tensor_games(&games[0], &rest)?;
    let shape = node(vec![Shape::Leaf, Shape::flat(m)]);
    let all: Vec<usize> = (0..=m).collect();
    let s = regroup(sigma, &Shape::flat(m + 1), &all, &shape, binary)?;
    uncurry(&s, &games[0], &rest)
}

/// The strategy `1 ↛ 1` with a single position.
fn unit_strategy(target: Game) -> Result<Strategy> {
    let one = Arc::new(unit_game());
    Strategy::from_moves(one, Arc::new(target), Arc::new(unit_i()), &[(0, 0)], &[])
}

/// Forgets the source `1 ⊗ 1` produced by tensoring two proofs.
fn onto_unit_source(sigma: &Strategy) -> Result<Strategy> {
    let unit = Arc::new(unit_game());
    let f = AsyncFunctor::with_block_swaps(
        sigma.source.support.clone(),
        unit.support.clone(),
        vec![0; sigma.source.support.vertex_count()],
        Vec::new(),
    )?;
    sigma.map_source(&f, unit)
}

struct Interpreted {
    sequent: Vec<Formula>,
    games: Vec<Game>,
    strategy: Strategy,
}

fn go(p: &Proof, env: &AtomEnvironment) -> Result<Interpreted> {
    let sequent = p.conclusion()?;
    let games = interpret_sequent(&sequent, env)?;
    let target = sequent_game(&games)?;
    let strategy = match p {
        Proof::Ax(f) => {
            let a = Arc::new(interpret_formula(f, env)?);
            let cc = curry(&copycat(&a)?)?;
            regroup(&cc, &Shape::flat(2), &[0, 1], &Shape::flat(2), target)?
        }
        Proof::Cut(l, r, _) => {
            let (l, r) = (go(l, env)?, go(r, env)?);
            let sigma = split_last(&l.strategy, &l.games)?;
            let tau = split_first(&r.strategy, &r.games)?;
            let composed = compose_strategies(&sigma, &tau)?;
            let curried = curry(&composed)?;
            let (n, m) = (ctx_len(&l), r.games.len() - 1);
            let shape = node(vec![Shape::flat(n), Shape::flat(m)]);
            let all: Vec<usize> = (0..n + m).collect();
            regroup(&curried, &shape, &all, &Shape::flat(n + m), target)?
        }
        Proof::Tensor(l, r) => {
            let (l, r) = (go(l, env)?, go(r, env)?);
            let both = onto_unit_source(&tensor_strategies(&l.strategy, &r.strategy)?)?;
            let (n, m) = (ctx_len(&l), ctx_len(&r));
            let shape = node(vec![Shape::flat(n + 1), Shape::flat(m + 1)]);
            let pick: Vec<usize> = (0..n).chain(n + 1..n + 1 + m).chain([n, n + 1 + m]).collect();
            let mut parts = leaves(n + m);
            parts.push(Shape::flat(2));
            regroup(&both, &shape, &pick, &node(parts), target)?
        }
        Proof::Par(q) | Proof::Lolli(q) => {
            let q = go(q, env)?;
            let n = q.games.len() - 2;
            let all: Vec<usize> = (0..n + 2).collect();
            let mut parts = leaves(n);
            parts.push(Shape::flat(2));
            regroup(&q.strategy, &Shape::flat(n + 2), &all, &node(parts), target)?
        }
        Proof::With(l, r) => {
            let (l, r) = (go(l, env)?, go(r, env)?);
            let sigma = split_last(&l.strategy, &l.games)?;
            let tau = split_last(&r.strategy, &r.games)?;
            let paired = curry(&pairing(&sigma, &tau)?)?;
            let n = ctx_len(&l);
            let shape = node(vec![Shape::flat(n), Shape::Leaf]);
            let all: Vec<usize> = (0..=n).collect();
            regroup(&paired, &shape, &all, &Shape::flat(n + 1), target)?
        }
        Proof::Plus1(q, _) | Proof::Plus2(_, q) => {
            let k = usize::from(matches!(p, Proof::Plus2(..)));
            let q = go(q, env)?;
            inject(&q.strategy, k, target)?
        }
        Proof::Ex(q, idx) => {
            let q = go(q, env)?;
            let n = idx.len();
            let pick: Vec<usize> = idx.iter().map(|i| i - 1).collect();
            regroup(&q.strategy, &Shape::flat(n), &pick, &Shape::flat(n), target)?
        }
        Proof::One => unit_strategy(target)?,
        Proof::Bot(q) => {
            let q = go(q, env)?;
            let bot = unit_strategy(sequent_game(&[unit_game()])?)?;
            let both = onto_unit_source(&tensor_strategies(&q.strategy, &bot)?)?;
            let n = q.games.len();
            let shape = node(vec![Shape::flat(n), Shape::flat(1)]);
            let all: Vec<usize> = (0..=n).collect();
            regroup(&both, &shape, &all, &Shape::flat(n + 1), target)?
        }
        Proof::Top(_) => {
            let one = Arc::new(unit_game());
            let empty = Arc::new(GraphBuilder::new().build());
            Strategy::from_moves(one, Arc::new(target), empty, &[], &[])?
        }
    };
    Ok(Interpreted {
        sequent,
        games,
        strategy,
    })
}

fn ctx_len(i: &Interpreted) -> usize {
    i.games.len() - 1
}

/// Moves the last formula `A` of the target into the summand `k` of `A ⊕ B`
/// (or `B ⊕ A`), the conclusion being `target`.
fn inject(sigma: &Strategy, k: usize, target: Game) -> Result<Strategy> {
    let src = sigma.target.support.clone();
    let tgt = target.support.clone();
    let si = src
        .shuffle_info()
        .ok_or_else(|| Error::CompositionMismatch("premise is not a shuffle".into()))?;
    let ti = tgt
        .shuffle_info()
        .ok_or_else(|| Error::CompositionMismatch("conclusion is not a shuffle".into()))?;
    let n = si.arity();
    let last_tgt = ti.factors()[n - 1].clone();
    let sum = last_tgt
        .sum_info()
        .ok_or_else(|| Error::CompositionMismatch("conclusion does not end with a sum".into()))?;
    let inj = AsyncFunctor::from_hom(si.factors()[n - 1].clone(), last_tgt.clone(), &sum.injection(k));
    let ids: Vec<AsyncFunctor> = si.factors()[..n - 1].iter().map(|g| AsyncFunctor::identity(g.clone())).collect();
    let mut parts: Vec<&AsyncFunctor> = ids.iter().collect();
    parts.push(&inj);
    let f = AsyncFunctor::tensor_between(&parts, src, tgt)?;
    sigma.map_target(&f, Arc::new(target))
}

/// The strategy `1 ↛ A₁ ⊗ … ⊗ Aₙ` of a proof of `⊢ A₁, …, Aₙ`.
pub fn interpret_proof(p: &Proof, env: &AtomEnvironment) -> Result<Strategy> {
    let i = go(p, env)?;
    debug_assert_eq!(i.sequent.len(), i.games.len());
    i.strategy.check()?;
    Ok(i.strategy)
}
