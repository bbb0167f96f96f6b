//! Bicomodules `S : A ↛ B` with a coaction `S → A ⧢ S ⧢ B`.

use std::sync::Arc;

use serde_json::{json, Value};

use super::{law, Comonoid};
use crate::asynch_graph::{graph_to_value, shuffle, AsynchGraph, EdgeId, VertexId};
use crate::error::{Error, Result};
use crate::reshuffle::{AsyncFunctor, Path, Shape};

/// One move of a coaction image: a move of the left comonoid, the support
/// edge itself, or a move of the right comonoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Token {
    Left(EdgeId),
    Support(EdgeId),
    Right(EdgeId),
}

#[derive(Clone, Debug)]
pub struct Bicomodule {
    pub left: Arc<Comonoid>,
    pub right: Arc<Comonoid>,
    pub support: Arc<AsynchGraph>,
    /// `S → A ⧢ S ⧢ B`
    pub coact: AsyncFunctor,
}

impl Bicomodule {
    pub fn new(
        left: Arc<Comonoid>,
        right: Arc<Comonoid>,
        support: Arc<AsynchGraph>,
        coact: AsyncFunctor,
    ) -> Result<Self> {
        let info = coact
            .tgt
            .shuffle_info()
            .filter(|i| i.arity() == 3)
            .ok_or_else(|| Error::InvalidSupport("coaction must land in A ⧢ S ⧢ B".into()))?;
        let f = info.factors();
        if *f[0] != *left.carrier || *f[1] != *support || *f[2] != *right.carrier || *coact.src != *support {
            return Err(Error::InvalidSupport(
                "coaction must go from S to A ⧢ S ⧢ B".into(),
            ));
        }
        Ok(Bicomodule {
            left,
            right,
            support,
            coact,
        })
    }

    /// Builds the coaction from a token sequence per support edge and the
    /// boundary positions `(a, b)` of every support vertex.
    pub fn assemble(
        left: Arc<Comonoid>,
        right: Arc<Comonoid>,
        support: Arc<AsynchGraph>,
        positions: &[(VertexId, VertexId)],
        tokens: &[Vec<Token>],
    ) -> Result<Self> {
        let target = Arc::new(shuffle(&[left.carrier.clone(), support.clone(), right.carrier.clone()]));
        let info = target.shuffle_info().expect("shuffle records coordinates");
        if positions.len() != support.vertex_count() || tokens.len() != support.edge_count() {
            return Err(Error::InvalidSupport("positions or images are not total".into()));
        }
        let at = |v: VertexId| -> Result<VertexId> {
            let (a, b) = positions[v];
            info.vertex(&[a, v, b])
                .ok_or_else(|| Error::InvalidSupport(format!("bad position for {}", support.vertex_name(v))))
        };
        let vertex_map = (0..support.vertex_count()).map(at).collect::<Result<Vec<_>>>()?;
        let mut edge_map = Vec::new();
        for (e, toks) in tokens.iter().enumerate() {
            let start = vertex_map[support.edge(e).src];
            let mut cur = start;
            let mut edges = Vec::new();
            for t in toks {
                let (k, fe) = match *t {
                    Token::Left(x) => (0, x),
                    Token::Support(x) => (1, x),
                    Token::Right(x) => (2, x),
                };
                let te = info.edge(k, fe, cur).ok_or_else(|| {
                    Error::InvalidStrategy(format!(
                        "image of {} does not chain at {}",
                        support.edge_name(e),
                        target.vertex_name(cur)
                    ))
                })?;
                edges.push(te);
                cur = target.edge(te).tgt;
            }
            edge_map.push(Path::new(&target, start, edges)?);
        }
        let coact = AsyncFunctor::with_block_swaps(support.clone(), target, vertex_map, edge_map)?;
        Bicomodule::new(left, right, support, coact)
    }

    /// The identity bicomodule: `(d ⧢ id)∘d` flattened.
    pub fn identity(c: Arc<Comonoid>) -> Result<Self> {
        let a = c.carrier.clone();
        let id = AsyncFunctor::identity(a.clone());
        let nested = Arc::new(shuffle(&[c.d.tgt.clone(), a.clone()]));
        let dl = AsyncFunctor::tensor_between(&[&c.d, &id], c.d.tgt.clone(), nested)?;
        let flat = Arc::new(shuffle(&[a.clone(), a.clone(), a.clone()]));
        let fl = AsyncFunctor::rearrange_into(
            dl.tgt.clone(),
            &Shape::Node(vec![Shape::flat(2), Shape::Leaf]),
            &[0, 1, 2],
            flat,
        )?;
        let coact = c.d.then(&dl)?.then(&fl)?;
        Bicomodule::new(c.clone(), c, a, coact)
    }

    pub fn target(&self) -> &Arc<AsynchGraph> {
        &self.coact.tgt
    }

    /// The coaction image of a support edge, as tokens.
    pub fn tokens(&self, e: EdgeId) -> Vec<Token> {
        let info = self.target().shuffle_info().expect("checked in new()");
        self.coact.edge_map[e]
            .edges()
            .iter()
            .map(|&x| match info.component(x) {
                (0, fe) => Token::Left(fe),
                (1, fe) => Token::Support(fe),
                (_, fe) => Token::Right(fe),
            })
            .collect()
    }

    pub fn left_moves(&self, e: EdgeId) -> Vec<EdgeId> {
        self.tokens(e)
            .into_iter()
            .filter_map(|t| if let Token::Left(x) = t { Some(x) } else { None })
            .collect()
    }

    pub fn right_moves(&self, e: EdgeId) -> Vec<EdgeId> {
        self.tokens(e)
            .into_iter()
            .filter_map(|t| if let Token::Right(x) = t { Some(x) } else { None })
            .collect()
    }

    /// Boundary positions `(a, b)` of a support vertex.
    pub fn position(&self, v: VertexId) -> (VertexId, VertexId) {
        let info = self.target().shuffle_info().expect("checked in new()");
        let c = info.coords(self.coact.vertex_map[v]);
        (c[0], c[2])
    }

    fn project(&self, pick: &[usize]) -> Result<AsyncFunctor> {
        let r = AsyncFunctor::rearrange(self.target().clone(), &Shape::flat(3), pick)?;
        self.coact.then(&r)
    }

    /// `δˡ : S → A ⧢ S`
    pub fn coact_left(&self) -> Result<AsyncFunctor> {
        self.project(&[0, 1])
    }

    /// `δʳ : S → S ⧢ B`
    pub fn coact_right(&self) -> Result<AsyncFunctor> {
        self.project(&[1, 2])
    }

    /// Coassociativity against both comultiplications, and counit collapse.
    pub fn check(&self) -> Result<()> {
        self.coact.check()?;
        let (a, s, b) = (&self.left.carrier, &self.support, &self.right.carrier);
        let target = self.target().clone();
        let flat = Arc::new(shuffle(&[a.clone(), a.clone(), s.clone(), b.clone(), b.clone()]));
        let id_a = AsyncFunctor::identity(a.clone());
        let id_s = AsyncFunctor::identity(s.clone());
        let id_b = AsyncFunctor::identity(b.clone());

        let inner = AsyncFunctor::tensor_between(
            &[&id_a, &self.coact, &id_b],
            target.clone(),
            Arc::new(shuffle(&[a.clone(), target.clone(), b.clone()])),
        )?;
        let fl = AsyncFunctor::rearrange_into(
            inner.tgt.clone(),
            &Shape::Node(vec![Shape::Leaf, Shape::flat(3), Shape::Leaf]),
            &[0, 1, 2, 3, 4],
            flat.clone(),
        )?;
        let lhs = self.coact.then(&inner)?.then(&fl)?;

        let outer = AsyncFunctor::tensor_between(
            &[&self.left.d, &id_s, &self.right.d],
            target.clone(),
            Arc::new(shuffle(&[self.left.d.tgt.clone(), s.clone(), self.right.d.tgt.clone()])),
        )?;
        let fr = AsyncFunctor::rearrange_into(
            outer.tgt.clone(),
            &Shape::Node(vec![Shape::flat(2), Shape::Leaf, Shape::flat(2)]),
            &[0, 1, 2, 3, 4],
            flat,
        )?;
        let rhs = self.coact.then(&outer)?.then(&fr)?;
        law(lhs.mismatch(&rhs), "coaction coassociativity")?;

        let counits = AsyncFunctor::tensor_between(
            &[&self.left.e, &id_s, &self.right.e],
            target,
            Arc::new(shuffle(&[self.left.e.tgt.clone(), s.clone(), self.right.e.tgt.clone()])),
        )?;
        let keep = AsyncFunctor::rearrange(counits.tgt.clone(), &Shape::flat(3), &[1])?;
        let collapsed = self.coact.then(&counits)?.then(&keep)?;
        law(collapsed.mismatch(&id_s), "counit collapse")
    }

    pub fn is_lawful(&self) -> bool {
        self.check().is_ok()
    }

    pub fn to_value(&self) -> Value {
        json!({
            "coaction": self.coact.to_value(),
            "support": graph_to_value(&self.support),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asynch_graph::anchor_of;
    use crate::comod::{comonoid_from_polarity, Polarity};

    fn zero() -> Arc<Comonoid> {
        Arc::new(comonoid_from_polarity(Arc::new(anchor_of(&["O", "P"])), &[Polarity::O, Polarity::P]).unwrap())
    }

    #[test]
    fn identity_bicomodule_is_lawful() {
        let m = Bicomodule::identity(zero()).unwrap();
        m.check().unwrap();
        let t = m.target();
        assert_eq!(m.coact.edge_map[0].display(t), "(*,*,O)·(*,O,*)·(O,*,*)");
        assert_eq!(m.coact.edge_map[1].display(t), "(P,*,*)·(*,P,*)·(*,*,P)");
        let left = m.coact_left().unwrap();
        assert_eq!(left.edge_map[0].display(&left.tgt), "(*,O)·(O,*)");
    }

    #[test]
    fn dropping_the_support_copy_breaks_the_counit() {
        let z = zero();
        let s = z.carrier.clone();
        let tokens = vec![
            vec![Token::Right(0), Token::Left(0)],
            vec![Token::Left(1), Token::Support(1), Token::Right(1)],
        ];
        let m = Bicomodule::assemble(z.clone(), z, s, &[(0, 0)], &tokens).unwrap();
        assert!(m.check().is_err());
    }
}
