//! Games: asynchronous graphs whose edges carry a polarity, seen as Gray
//! comonoids over `⫪₀`.

use std::sync::Arc;

use serde_json::Value;

use super::template;
use crate::asynch_graph::{
    disjoint_union, graph_from_value, graph_to_value, shuffle, unit_i, validate, AsynchGraph, GraphBuilder,
};
use crate::comod::{comonoid_from_polarity, Comonoid, Polarity};
use crate::error::{Error, Result};
use crate::reshuffle::{AsyncFunctor, Path};

/// A game `(A, d_A, e_A, λ_A)`. Polarity is kept next to the support; edge
/// labels are free text.
#[derive(Clone, Debug)]
pub struct Game {
    pub support: Arc<AsynchGraph>,
    pub polarity: Vec<Polarity>,
    pub comonoid: Arc<Comonoid>,
    /// `A → 𝕋⟨O,P⟩`
    pub lambda: AsyncFunctor,
}

impl PartialEq for Game {
    fn eq(&self, other: &Self) -> bool {
        self.polarity == other.polarity && *self.support == *other.support
    }
}

impl Eq for Game {}

pub fn make_game(support: Arc<AsynchGraph>, polarity: Vec<Polarity>) -> Result<Game> {
    let report = validate(&support);
    if !report.is_ok() {
        return Err(Error::InvalidSupport(report.to_string()));
    }
    let comonoid = Arc::new(comonoid_from_polarity(support.clone(), &polarity)?);
    let anchor = template().anchor().clone();
    let edge_map = polarity
        .iter()
        .map(|p| Path::edge(&anchor, if *p == Polarity::O { 0 } else { 1 }))
        .collect();
    let lambda = AsyncFunctor::with_block_swaps(support.clone(), anchor, vec![0; support.vertex_count()], edge_map)?;
    Ok(Game {
        support,
        polarity,
        comonoid,
        lambda,
    })
}

pub fn game_check(g: &Game) -> bool {
    g.check().is_ok()
}

impl Game {
    /// Reads polarities from the edge labels `O` and `P`.
    pub fn from_graph(g: AsynchGraph) -> Result<Game> {
        let polarity = g
            .edges()
            .iter()
            .map(|e| {
                Polarity::parse(&e.label)
                    .map_err(|_| Error::Document(format!("edge `{}` has label `{}`, expected O or P", e.name, e.label)))
            })
            .collect::<Result<Vec<_>>>()?;
        make_game(Arc::new(g), polarity)
    }

    pub fn from_value(v: &Value) -> Result<Game> {
        Game::from_graph(graph_from_value(v)?)
    }

    /// The support with polarities written as labels.
    pub fn labelled(&self) -> AsynchGraph {
        self.support.relabel(|e, _| self.polarity[e].to_string())
    }

    pub fn to_value(&self) -> Value {
        graph_to_value(&self.labelled())
    }

    /// `λ_A` is a comonoid homomorphism into `⫪₀`.
    pub fn check(&self) -> Result<()> {
        self.comonoid.check()?;
        self.comonoid.check_hom(&self.lambda, &template().obj)
    }

    pub fn edge_polarity(&self, e: usize) -> Polarity {
        self.polarity[e]
    }
}

/// `1`: one position and no moves.
pub fn unit_game() -> Game {
    make_game(Arc::new(unit_i()), Vec::new()).expect("the unit graph is valid")
}

/// The game with no positions at all.
pub fn void_game() -> Game {
    make_game(Arc::new(GraphBuilder::new().build()), Vec::new()).expect("the empty graph is valid")
}

/// `A ⊗ B`: the shuffle of the supports, polarities componentwise.
pub fn tensor_games(a: &Game, b: &Game) -> Result<Game> {
    tensor_all(&[a, b])
}

pub(crate) fn tensor_all(gs: &[&Game]) -> Result<Game> {
    let support = Arc::new(shuffle(&gs.iter().map(|g| g.support.clone()).collect::<Vec<_>>()));
    let info = support.shuffle_info().expect("shuffle records coordinates");
    let polarity = (0..support.edge_count())
        .map(|e| {
            let (k, fe) = info.component(e);
            gs[k].polarity[fe]
        })
        .collect();
    make_game(support, polarity)
}

/// `¬A`: the same support with every polarity swapped.
pub fn negate_game(a: &Game) -> Game {
    let polarity = a.polarity.iter().map(|p| p.swap()).collect();
    make_game(a.support.clone(), polarity).expect("negation keeps a valid support")
}

/// `A ⅋ B = ¬(¬A ⊗ ¬B)`.
pub fn par(a: &Game, b: &Game) -> Result<Game> {
    Ok(negate_game(&tensor_games(&negate_game(a), &negate_game(b))?))
}

/// `A ⊸ B = ¬A ⅋ B`.
pub fn lollipop(a: &Game, b: &Game) -> Result<Game> {
    par(&negate_game(a), b)
}

fn sum(a: &Game, b: &Game) -> Result<Game> {
    let support = Arc::new(disjoint_union(&[a.support.clone(), b.support.clone()]));
    let polarity = a.polarity.iter().chain(&b.polarity).copied().collect();
    make_game(support, polarity)
}

/// `A & B`: the disjoint union of the supports.
pub fn with(a: &Game, b: &Game) -> Result<Game> {
    sum(a, b)
}

/// `A ⊕ B`: the disjoint union of the supports.
pub fn plus(a: &Game, b: &Game) -> Result<Game> {
    sum(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn one_move(v0: &str, v1: &str, e: &str, p: Polarity) -> Game {
        let mut b = GraphBuilder::new();
        let x = b.vertex(v0).unwrap();
        let y = b.vertex(v1).unwrap();
        b.edge(e, x, y, p.to_string()).unwrap();
        make_game(Arc::new(b.build()), vec![p]).unwrap()
    }

    #[test]
    fn one_move_games_are_valid() {
        assert!(game_check(&one_move("x", "x'", "m", Polarity::O)));
        assert!(game_check(&one_move("y", "y'", "n", Polarity::P)));
        assert!(game_check(&unit_game()));
        assert!(game_check(&void_game()));
    }

    #[test]
    fn tensor_of_one_move_games_is_the_square() {
        let a = one_move("x", "x'", "m", Polarity::O);
        let b = one_move("y", "y'", "n", Polarity::P);
        let t = tensor_games(&a, &b).unwrap();
        assert_eq!(t.support.vertex_count(), 4);
        assert_eq!(t.support.edge_count(), 4);
        assert_eq!(t.support.tile_count(), 2);
        let m = t.support.edge_id("(m,y)").unwrap();
        assert_eq!(t.polarity[m], Polarity::O);
        assert!(game_check(&t));
    }

    #[test]
    fn negation_is_an_involution_on_data() {
        let a = one_move("x", "x'", "m", Polarity::O);
        let nn = negate_game(&negate_game(&a));
        assert_eq!(nn, a);
        assert_eq!(nn.polarity, a.polarity);
        assert!(game_check(&negate_game(&a)));
    }

    #[test]
    fn par_and_tensor_coincide_on_data() {
        let a = one_move("x", "x'", "m", Polarity::O);
        let b = one_move("y", "y'", "n", Polarity::P);
        assert_eq!(par(&a, &b).unwrap(), tensor_games(&a, &b).unwrap());
    }

    #[test]
    fn lollipop_swaps_the_left_factor() {
        let a = one_move("x", "x'", "m", Polarity::O);
        let l = lollipop(&a, &a).unwrap();
        let info = l.support.shuffle_info().unwrap();
        for e in 0..l.support.edge_count() {
            let (k, _) = info.component(e);
            let want = if k == 0 { Polarity::P } else { Polarity::O };
            assert_eq!(l.polarity[e], want);
        }
    }

    #[test]
    fn labels_outside_o_and_p_are_rejected() {
        let mut b = GraphBuilder::new();
        let x = b.vertex("x").unwrap();
        b.edge("m", x, x, "Q").unwrap();
        assert!(matches!(Game::from_graph(b.build()), Err(Error::Document(_))));
    }
}
