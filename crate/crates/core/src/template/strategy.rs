//! Strategies `σ : A ↛ B`: bicomodules over the comonoids of two games,
//! scheduled by a double cell `λ_σ` into `⫪₁`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::game::{negate_game, par, plus, tensor_games, unit_game, with, Game};
use super::{template, STRATEGY_LABELS};
use crate::asynch_graph::{
    disjoint_union, find_isomorphism, graph_from_value, graph_to_value, shuffle, AsynchGraph, EdgeId, GraphHom,
    VertexId,
};
use crate::comod::{compose_bicomodules, compose_double_cells, Bicomodule, Composite, DoubleCell, Polarity, Token};
use crate::error::{Error, Result};
use crate::reshuffle::{AsyncFunctor, Path};

/// The four generators of `⫪₁`, in its edge order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    Os,
    Ps,
    Ot,
    Pt,
}

impl Tag {
    pub fn label(self) -> &'static str {
        STRATEGY_LABELS[self as usize]
    }

    pub fn parse(s: &str) -> Result<Tag> {
        match s {
            "O_s" => Ok(Tag::Os),
            "P_s" => Ok(Tag::Ps),
            "O_t" => Ok(Tag::Ot),
            "P_t" => Ok(Tag::Pt),
            other => Err(Error::Document(format!("`{other}` is not a strategy tag"))),
        }
    }

    /// Source-side tags name moves of the source game.
    pub fn is_source(self) -> bool {
        matches!(self, Tag::Os | Tag::Ps)
    }

    /// Opponent tags happen before the support move.
    pub fn before(self) -> bool {
        matches!(self, Tag::Os | Tag::Ot)
    }

    /// The polarity the boundary move must carry in its own game.
    pub fn boundary_polarity(self) -> Polarity {
        match self {
            Tag::Os | Tag::Pt => Polarity::P,
            Tag::Ps | Tag::Ot => Polarity::O,
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A boundary move of a strategy edge: its tag and the game edge it plays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Move {
    pub tag: Tag,
    pub edge: EdgeId,
}

#[derive(Clone, Debug)]
pub struct Strategy {
    pub source: Arc<Game>,
    pub target: Arc<Game>,
    pub bicomodule: Arc<Bicomodule>,
    /// `λ_σ : S ⇒ ⫪₁` over `(λ_A, λ_B)`.
    pub lambda: DoubleCell,
}

fn tag_of(source: &Game, target: &Game, tok: Token, after: bool) -> Option<Move> {
    let (tag, edge, p) = match tok {
        Token::Support(_) => return None,
        Token::Left(a) => (if after { Tag::Ps } else { Tag::Os }, a, source.polarity[a]),
        Token::Right(b) => (if after { Tag::Pt } else { Tag::Ot }, b, target.polarity[b]),
    };
    (tag.boundary_polarity() == p).then_some(Move { tag, edge })
}

fn moves_of(source: &Game, target: &Game, bic: &Bicomodule, e: EdgeId) -> Result<Vec<Move>> {
    let mut after = false;
    let mut out = Vec::new();
    for tok in bic.tokens(e) {
        if let Token::Support(_) = tok {
            after = true;
            continue;
        }
        let m = tag_of(source, target, tok, after).ok_or_else(|| {
            let (game, x) = match tok {
                Token::Left(a) => (&source.support, a),
                Token::Right(b) => (&target.support, b),
                Token::Support(_) => unreachable!("handled above"),
            };
            Error::InvalidStrategy(format!(
                "{} plays {} with the wrong polarity {} the support move",
                bic.support.edge_name(e),
                game.edge_name(x),
                if after { "after" } else { "before" }
            ))
        })?;
        out.push(m);
    }
    Ok(out)
}

impl Strategy {
    /// Derives `λ_σ` from the coaction: every boundary move becomes its tag.
    pub fn new(source: Arc<Game>, target: Arc<Game>, bicomodule: Arc<Bicomodule>) -> Result<Self> {
        if *bicomodule.left.carrier != *source.support || *bicomodule.right.carrier != *target.support {
            return Err(Error::BoundaryMismatch("bicomodule is not over the given games".into()));
        }
        let t = template();
        let anchor = t.mor.support.clone();
        let s = bicomodule.support.clone();
        let edge_map = (0..s.edge_count())
            .map(|e| {
                let ms = moves_of(&source, &target, &bicomodule, e)?;
                Path::new(&anchor, 0, ms.iter().map(|m| m.tag as usize).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        let body = AsyncFunctor::with_block_swaps(s.clone(), anchor, vec![0; s.vertex_count()], edge_map)?;
        let lambda = DoubleCell {
            a: source.lambda.clone(),
            b: target.lambda.clone(),
            src: bicomodule.clone(),
            tgt: t.mor.clone(),
            body,
        };
        Ok(Strategy {
            source,
            target,
            bicomodule,
            lambda,
        })
    }

    pub fn assemble(
        source: Arc<Game>,
        target: Arc<Game>,
        support: Arc<AsynchGraph>,
        positions: &[(VertexId, VertexId)],
        tokens: &[Vec<Token>],
    ) -> Result<Self> {
        let bic = Bicomodule::assemble(
            source.comonoid.clone(),
            target.comonoid.clone(),
            support,
            positions,
            tokens,
        )?;
        Strategy::new(source, target, Arc::new(bic))
    }

    /// Builds a strategy from its boundary moves: Opponent moves are placed
    /// before the support move and Player moves after it.
    pub fn from_moves(
        source: Arc<Game>,
        target: Arc<Game>,
        support: Arc<AsynchGraph>,
        positions: &[(VertexId, VertexId)],
        moves: &[Vec<Move>],
    ) -> Result<Self> {
        let mut tokens = Vec::with_capacity(moves.len());
        for (e, ms) in moves.iter().enumerate() {
            let mut toks = Vec::new();
            let mut placed = false;
            for m in ms {
                if !m.tag.before() && !placed {
                    toks.push(Token::Support(e));
                    placed = true;
                } else if m.tag.before() && placed {
                    return Err(Error::InvalidStrategy(format!(
                        "{} lists an Opponent move after a Player move",
                        support.edge_name(e)
                    )));
                }
                toks.push(if m.tag.is_source() { Token::Left(m.edge) } else { Token::Right(m.edge) });
            }
            if !placed {
                toks.push(Token::Support(e));
            }
            tokens.push(toks);
        }
        Strategy::assemble(source, target, support, positions, &tokens)
    }

    pub fn support(&self) -> &Arc<AsynchGraph> {
        &self.bicomodule.support
    }

    pub fn tokens(&self, e: EdgeId) -> Vec<Token> {
        self.bicomodule.tokens(e)
    }

    pub fn moves(&self, e: EdgeId) -> Vec<Move> {
        moves_of(&self.source, &self.target, &self.bicomodule, e).expect("checked when built")
    }

    pub fn tags(&self, e: EdgeId) -> Vec<Tag> {
        self.moves(e).into_iter().map(|m| m.tag).collect()
    }

    pub fn position(&self, v: VertexId) -> (VertexId, VertexId) {
        self.bicomodule.position(v)
    }

    pub fn positions(&self) -> Vec<(VertexId, VertexId)> {
        (0..self.support().vertex_count()).map(|v| self.position(v)).collect()
    }

    /// `λ_σ(e)` rendered as a word over `O_s, P_s, O_t, P_t`.
    pub fn lambda_word(&self, e: EdgeId) -> String {
        let b = &self.lambda.body;
        b.tgt.word(b.edge_map[e].edges())
    }

    /// Bicomodule laws and the scheduling square.
    pub fn check(&self) -> Result<()> {
        self.source.check()?;
        self.target.check()?;
        self.bicomodule.check()?;
        self.lambda.check()
    }

    pub fn is_lawful(&self) -> bool {
        self.check().is_ok()
    }

    /// Moves the target along a graph homomorphism given as a 2-functor
    /// sending every edge to a single edge.
    pub fn map_target(&self, f: &AsyncFunctor, target: Arc<Game>) -> Result<Strategy> {
        let single = single_edges(f)?;
        let tokens = self.remap_tokens(|t| match t {
            Token::Right(b) => Token::Right(single[b]),
            other => other,
        });
        let positions: Vec<_> = self.positions().into_iter().map(|(a, b)| (a, f.vertex_map[b])).collect();
        Strategy::assemble(self.source.clone(), target, self.support().clone(), &positions, &tokens)
    }

    /// Moves the source along a single-edge 2-functor.
    pub fn map_source(&self, f: &AsyncFunctor, source: Arc<Game>) -> Result<Strategy> {
        let single = single_edges(f)?;
        let tokens = self.remap_tokens(|t| match t {
            Token::Left(a) => Token::Left(single[a]),
            other => other,
        });
        let positions: Vec<_> = self.positions().into_iter().map(|(a, b)| (f.vertex_map[a], b)).collect();
        Strategy::assemble(source, self.target.clone(), self.support().clone(), &positions, &tokens)
    }

    fn remap_tokens(&self, f: impl Fn(Token) -> Token) -> Vec<Vec<Token>> {
        (0..self.support().edge_count())
            .map(|e| self.tokens(e).into_iter().map(&f).collect())
            .collect()
    }

    pub fn from_value(v: &Value) -> Result<Strategy> {
        let doc: StrategyDoc =
            serde_json::from_value(v.clone()).map_err(|e| Error::Document(format!("strategy: {e}")))?;
        let source = Arc::new(Game::from_value(&doc.source)?);
        let target = Arc::new(Game::from_value(&doc.target)?);
        let support = Arc::new(graph_from_value(&doc.support)?);
        let mut positions = vec![None; support.vertex_count()];
        for (v, [a, b]) in &doc.positions {
            positions[support.require_vertex(v)?] =
                Some((source.support.require_vertex(a)?, target.support.require_vertex(b)?));
        }
        let positions = positions
            .into_iter()
            .enumerate()
            .map(|(v, p)| p.ok_or_else(|| Error::Document(format!("no position for {}", support.vertex_name(v)))))
            .collect::<Result<Vec<_>>>()?;
        let mut moves = vec![Vec::new(); support.edge_count()];
        for (e, ms) in &doc.moves {
            let e = support.require_edge(e)?;
            for [tag, x] in ms {
                let tag = Tag::parse(tag)?;
                let game = if tag.is_source() { &source } else { &target };
                moves[e].push(Move {
                    tag,
                    edge: game.support.require_edge(x)?,
                });
            }
        }
        Strategy::from_moves(source, target, support, &positions, &moves)
    }

    pub fn to_value(&self) -> Value {
        let s = self.support();
        let (a, b) = (&self.source.support, &self.target.support);
        let positions: BTreeMap<String, [String; 2]> = (0..s.vertex_count())
            .map(|v| {
                let (x, y) = self.position(v);
                (s.vertex_name(v).to_string(), [a.vertex_name(x).to_string(), b.vertex_name(y).to_string()])
            })
            .collect();
        let moves: BTreeMap<String, Vec<[String; 2]>> = (0..s.edge_count())
            .map(|e| {
                let ms = self
                    .moves(e)
                    .into_iter()
                    .map(|m| {
                        let g = if m.tag.is_source() { a } else { b };
                        [m.tag.label().to_string(), g.edge_name(m.edge).to_string()]
                    })
                    .collect();
                (s.edge_name(e).to_string(), ms)
            })
            .collect();
        let lambda: BTreeMap<String, String> =
            (0..s.edge_count()).map(|e| (s.edge_name(e).to_string(), self.lambda_word(e))).collect();
        json!({
            "lambda": lambda,
            "moves": moves,
            "positions": positions,
            "source": self.source.to_value(),
            "support": graph_to_value(s),
            "target": self.target.to_value(),
        })
    }

    /// DOT rendering: positions as nodes, moves as edges coloured by tag.
    pub fn to_dot(&self, title: &str) -> String {
        use crate::asynch_graph::dot_quote;
        use std::fmt::Write as _;
        let s = self.support();
        let (a, b) = (&self.source.support, &self.target.support);
        let mut out = String::new();
        writeln!(out, "digraph {} {{", dot_quote(title)).ok();
        for v in 0..s.vertex_count() {
            let (x, y) = self.position(v);
            let label = format!("{} | {} | {}", a.vertex_name(x), s.vertex_name(v), b.vertex_name(y));
            writeln!(out, "  {} [shape=record, label={}];", dot_quote(s.vertex_name(v)), dot_quote(&label)).ok();
        }
        for (e, edge) in s.edges().iter().enumerate() {
            let colour = match self.tags(e).as_slice() {
                [] => "gray",
                ts if ts.iter().all(|t| !t.before()) => "blue",
                ts if ts.iter().all(|t| t.before()) => "red",
                _ => "purple",
            };
            let label = format!("{} : {}", edge.name, self.lambda_word(e));
            writeln!(
                out,
                "  {} -> {} [label={}, color={colour}];",
                dot_quote(s.vertex_name(edge.src)),
                dot_quote(s.vertex_name(edge.tgt)),
                dot_quote(&label)
            )
            .ok();
        }
        out.push_str("}\n");
        out
    }
}

fn single_edges(f: &AsyncFunctor) -> Result<Vec<EdgeId>> {
    f.edge_map
        .iter()
        .map(|p| match p.edges() {
            [e] => Ok(*e),
            _ => Err(Error::InvalidStrategy("game map must send moves to single moves".into())),
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct StrategyDoc {
    #[serde(default)]
    moves: BTreeMap<String, Vec<[String; 2]>>,
    positions: BTreeMap<String, [String; 2]>,
    source: Value,
    support: Value,
    target: Value,
}

/// `copycat_A : A ↛ A`, the identity bicomodule of `A` scheduled by the unit.
pub fn copycat(a: &Arc<Game>) -> Result<Strategy> {
    let bic = Bicomodule::identity(a.comonoid.clone())?;
    Strategy::new(a.clone(), a.clone(), Arc::new(bic))
}

/// A composite strategy together with its presentation and its schedule
/// into `⫪₂` before multiplication.
#[derive(Clone, Debug)]
pub struct StrategyComposite {
    pub strategy: Strategy,
    pub composite: Composite,
    /// `λ_σ ⊠ λ_τ : S ⊠ T ⇒ ⫪₂`
    pub before_mult: DoubleCell,
}

impl StrategyComposite {
    /// Labels of `⫪₂` reached by each composite generator, before `mult`.
    pub fn two_words(&self) -> Vec<String> {
        let b = &self.before_mult.body;
        (0..b.src.edge_count())
            .map(|e| {
                let labels: Vec<&str> = b.edge_map[e].edges().iter().map(|&x| b.tgt.edge(x).label.as_str()).collect();
                if labels.is_empty() {
                    "ε".to_string()
                } else {
                    labels.join("·")
                }
            })
            .collect()
    }
}

pub fn compose_strategies_detailed(sigma: &Strategy, tau: &Strategy) -> Result<StrategyComposite> {
    if *sigma.target != *tau.source {
        return Err(Error::MiddleMismatch);
    }
    let t = template();
    let composite = compose_bicomodules(&sigma.bicomodule, &tau.bicomodule)?;
    let before_mult = compose_double_cells(&sigma.lambda, &tau.lambda, &composite, &t.two)?;
    let body = before_mult.body.then(&t.mult.body)?;
    let bicomodule = Arc::new(composite.bicomodule.clone());
    let lambda = DoubleCell {
        a: sigma.source.lambda.clone(),
        b: tau.target.lambda.clone(),
        src: bicomodule.clone(),
        tgt: t.mor.clone(),
        body,
    };
    let strategy = Strategy {
        source: sigma.source.clone(),
        target: tau.target.clone(),
        bicomodule,
        lambda,
    };
    Ok(StrategyComposite {
        strategy,
        composite,
        before_mult,
    })
}

/// `τ ∘ σ : A ↛ C` for `σ : A ↛ B` and `τ : B ↛ C`.
pub fn compose_strategies(sigma: &Strategy, tau: &Strategy) -> Result<Strategy> {
    Ok(compose_strategies_detailed(sigma, tau)?.strategy)
}

/// A support isomorphism preserving positions and boundary moves.
pub fn strategy_iso(sigma: &Strategy, tau: &Strategy) -> Option<GraphHom> {
    if *sigma.source != *tau.source || *sigma.target != *tau.target {
        return None;
    }
    let (ps, pt) = (sigma.positions(), tau.positions());
    let ms: Vec<Vec<Move>> = (0..sigma.support().edge_count()).map(|e| sigma.moves(e)).collect();
    let mt: Vec<Vec<Move>> = (0..tau.support().edge_count()).map(|e| tau.moves(e)).collect();
    find_isomorphism(sigma.support(), tau.support(), &|v, w| ps[v] == pt[w], &|e, f| ms[e] == mt[f])
}

/// A double cell between two strategies on the same games, with identity
/// vertical boundaries.
#[derive(Clone, Debug)]
pub struct Simulation {
    pub source: Arc<Strategy>,
    pub target: Arc<Strategy>,
    /// `S → T`
    pub body: AsyncFunctor,
}

impl Simulation {
    pub fn identity(s: Arc<Strategy>) -> Self {
        Simulation {
            body: AsyncFunctor::identity(s.support().clone()),
            source: s.clone(),
            target: s,
        }
    }

    pub fn from_hom(source: Arc<Strategy>, target: Arc<Strategy>, h: &GraphHom) -> Self {
        Simulation {
            body: AsyncFunctor::from_hom(source.support().clone(), target.support().clone(), h),
            source,
            target,
        }
    }

    pub fn cell(&self) -> DoubleCell {
        DoubleCell {
            a: AsyncFunctor::identity(self.source.source.support.clone()),
            b: AsyncFunctor::identity(self.source.target.support.clone()),
            src: self.source.bicomodule.clone(),
            tgt: self.target.bicomodule.clone(),
            body: self.body.clone(),
        }
    }

    /// The double cell square, and `λ_σ = λ_τ ∘ θ`.
    pub fn check(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if *s.source != *t.source || *s.target != *t.target {
            return Err(Error::BoundaryMismatch("simulated strategies live on different games".into()));
        }
        self.cell().check()?;
        let via = self.body.then(&t.lambda.body)?;
        match via.mismatch(&s.lambda.body) {
            None => Ok(()),
            Some(why) => Err(Error::LawViolation(format!("schedules differ: {why}"))),
        }
    }
}

pub fn simulation_check(theta: &Simulation) -> bool {
    theta.check().is_ok()
}

/// `σ ⊗ σ' : A ⊗ A' ↛ B ⊗ B'` on the shuffle of the supports.
pub fn tensor_strategies(sigma: &Strategy, other: &Strategy) -> Result<Strategy> {
    let source = Arc::new(tensor_games(&sigma.source, &other.source)?);
    let target = Arc::new(tensor_games(&sigma.target, &other.target)?);
    let support = Arc::new(shuffle(&[sigma.support().clone(), other.support().clone()]));
    let info = support.shuffle_info().expect("shuffle records coordinates");
    let (si, ti) = (
        source.support.shuffle_info().expect("tensor is a shuffle"),
        target.support.shuffle_info().expect("tensor is a shuffle"),
    );
    let parts = [sigma, other];
    let positions: Vec<(VertexId, VertexId)> = (0..support.vertex_count())
        .map(|v| {
            let c = info.coords(v);
            let (a0, b0) = sigma.position(c[0]);
            let (a1, b1) = other.position(c[1]);
            (si.vertex(&[a0, a1]).expect("pair"), ti.vertex(&[b0, b1]).expect("pair"))
        })
        .collect();
    let mut tokens = Vec::with_capacity(support.edge_count());
    for e in 0..support.edge_count() {
        let (k, fe) = info.component(e);
        let (mut a, mut b) = positions[support.edge(e).src];
        let mut out = Vec::new();
        for tok in parts[k].tokens(fe) {
            out.push(match tok {
                Token::Support(_) => Token::Support(e),
                Token::Left(x) => {
                    let y = si.edge(k, x, a).expect("factor move has a copy");
                    a = source.support.edge(y).tgt;
                    Token::Left(y)
                }
                Token::Right(x) => {
                    let y = ti.edge(k, x, b).expect("factor move has a copy");
                    b = target.support.edge(y).tgt;
                    Token::Right(y)
                }
            });
        }
        tokens.push(out);
    }
    Strategy::assemble(source, target, support, &positions, &tokens)
}

/// `¬σ : ¬B ↛ ¬A`, exchanging the two boundaries.
pub fn negate_strategy(sigma: &Strategy) -> Result<Strategy> {
    let source = Arc::new(negate_game(&sigma.target));
    let target = Arc::new(negate_game(&sigma.source));
    let tokens = sigma.remap_tokens(|t| match t {
        Token::Left(a) => Token::Right(a),
        Token::Right(b) => Token::Left(b),
        other => other,
    });
    let positions: Vec<_> = sigma.positions().into_iter().map(|(a, b)| (b, a)).collect();
    Strategy::assemble(source, target, sigma.support().clone(), &positions, &tokens)
}

/// `π_k : A & B ↛ A` (k = 0) or `↛ B` (k = 1): copycat on one summand.
pub fn projection(a: &Game, b: &Game, k: usize) -> Result<Strategy> {
    let source = Arc::new(with(a, b)?);
    let part = Arc::new(if k == 0 { a.clone() } else { b.clone() });
    let cc = copycat(&part)?;
    let info = source.support.sum_info().expect("with is a disjoint union");
    let tokens = cc.remap_tokens(|t| match t {
        Token::Left(x) => Token::Left(info.inject_edge(k, x)),
        other => other,
    });
    let positions: Vec<_> = cc.positions().into_iter().map(|(x, y)| (info.inject_vertex(k, x), y)).collect();
    Strategy::assemble(source, part, cc.support().clone(), &positions, &tokens)
}

/// `ι_k : A ↛ A ⊕ B` (k = 0) or `B ↛ A ⊕ B` (k = 1).
pub fn injection(a: &Game, b: &Game, k: usize) -> Result<Strategy> {
    let target = Arc::new(plus(a, b)?);
    let part = Arc::new(if k == 0 { a.clone() } else { b.clone() });
    let cc = copycat(&part)?;
    let info = target.support.sum_info().expect("plus is a disjoint union");
    let tokens = cc.remap_tokens(|t| match t {
        Token::Right(x) => Token::Right(info.inject_edge(k, x)),
        other => other,
    });
    let positions: Vec<_> = cc.positions().into_iter().map(|(x, y)| (x, info.inject_vertex(k, y))).collect();
    Strategy::assemble(part, target, cc.support().clone(), &positions, &tokens)
}

/// `⟨σ, τ⟩ : C ↛ A & B` on the disjoint union of the supports.
pub fn pairing(sigma: &Strategy, tau: &Strategy) -> Result<Strategy> {
    if *sigma.source != *tau.source {
        return Err(Error::BoundaryMismatch("paired strategies need a common source".into()));
    }
    let target = Arc::new(with(&sigma.target, &tau.target)?);
    let ti = target.support.sum_info().expect("with is a disjoint union");
    let support = Arc::new(disjoint_union(&[sigma.support().clone(), tau.support().clone()]));
    let si = support.sum_info().expect("disjoint union records summands");
    let mut tokens = Vec::new();
    let mut positions = Vec::new();
    for (k, s) in [sigma, tau].into_iter().enumerate() {
        for v in 0..s.support().vertex_count() {
            let (a, b) = s.position(v);
            positions.push((a, ti.inject_vertex(k, b)));
        }
        for e in 0..s.support().edge_count() {
            tokens.push(
                s.tokens(e)
                    .into_iter()
                    .map(|t| match t {
                        Token::Support(x) => Token::Support(si.inject_edge(k, x)),
                        Token::Right(x) => Token::Right(ti.inject_edge(k, x)),
                        other => other,
                    })
                    .collect(),
            );
        }
    }
    Strategy::assemble(sigma.source.clone(), target, support, &positions, &tokens)
}

/// `Λσ : 1 ↛ ¬A ⅋ B` for `σ : A ↛ B`.
pub fn curry(sigma: &Strategy) -> Result<Strategy> {
    let target = Arc::new(par(&negate_game(&sigma.source), &sigma.target)?);
    let info = target.support.shuffle_info().expect("par is a shuffle");
    let positions: Vec<_> = sigma
        .positions()
        .into_iter()
        .map(|(a, b)| (0, info.vertex(&[a, b]).expect("pair")))
        .collect();
    let mut tokens = Vec::new();
    for e in 0..sigma.support().edge_count() {
        let mut at = positions[sigma.support().edge(e).src].1;
        let toks = sigma
            .tokens(e)
            .into_iter()
            .map(|t| {
                let (k, x) = match t {
                    Token::Left(x) => (0, x),
                    Token::Right(x) => (1, x),
                    Token::Support(_) => return t,
                };
                let y = info.edge(k, x, at).expect("factor move has a copy");
                at = target.support.edge(y).tgt;
                Token::Right(y)
            })
            .collect();
        tokens.push(toks);
    }
    Strategy::assemble(Arc::new(unit_game()), target, sigma.support().clone(), &positions, &tokens)
}

/// The inverse of [`curry`]: `σ : 1 ↛ X ⅋ Y` becomes `¬X ↛ Y`.
pub fn uncurry(sigma: &Strategy, x: &Game, y: &Game) -> Result<Strategy> {
    let g = &sigma.target.support;
    let info = g
        .shuffle_info()
        .filter(|i| i.arity() == 2 && *i.factors()[0] == *x.support && *i.factors()[1] == *y.support)
        .ok_or_else(|| Error::BoundaryMismatch("target is not the shuffle of the two games".into()))?;
    let source = Arc::new(negate_game(x));
    let target = Arc::new(y.clone());
    let positions: Vec<_> = sigma
        .positions()
        .into_iter()
        .map(|(_, v)| {
            let c = info.coords(v);
            (c[0], c[1])
        })
        .collect();
    let tokens = sigma.remap_tokens(|t| match t {
        Token::Right(e) => match info.component(e) {
            (0, fe) => Token::Left(fe),
            (_, fe) => Token::Right(fe),
        },
        other => other,
    });
    Strategy::assemble(source, target, sigma.support().clone(), &positions, &tokens)
}
