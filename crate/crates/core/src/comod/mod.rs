//! Gray comonoids, bicomodules, their composition by synchronization, and
//! double cells.
//!
//! All laws are decided on generators: two presented 2-functors are equal
//! when they agree on every vertex, edge and tile.

mod bicomodule;
mod cell;
mod compose;

use std::fmt;
use std::sync::Arc;

use crate::asynch_graph::{shuffle, unit_i, AsynchGraph, VertexId};
use crate::error::{Error, Result};
use crate::reshuffle::{AsyncFunctor, Path, Shape};

pub use bicomodule::{Bicomodule, Token};
pub use cell::{compose_double_cells, DoubleCell};
pub use compose::{
    compose_bicomodules, compose_bicomodules_with, equalizer_oracle, Composite, Generator, SyncOrder,
    CERTIFY_LEN,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    O,
    P,
}

impl Polarity {
    pub fn swap(self) -> Polarity {
        match self {
            Polarity::O => Polarity::P,
            Polarity::P => Polarity::O,
        }
    }

    pub fn parse(s: &str) -> Result<Polarity> {
        match s {
            "O" => Ok(Polarity::O),
            "P" => Ok(Polarity::P),
            other => Err(Error::Document(format!("`{other}` is not a polarity"))),
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::O => "O",
            Polarity::P => "P",
        })
    }
}

/// A Gray comonoid `(A, d, e)` on a reshuffling 2-category.
#[derive(Clone, Debug)]
pub struct Comonoid {
    pub carrier: Arc<AsynchGraph>,
    /// `A → A ⧢ A`
    pub d: AsyncFunctor,
    /// `A → I`
    pub e: AsyncFunctor,
}

/// The counit `A → I`, erasing every edge.
pub fn erase(carrier: Arc<AsynchGraph>) -> AsyncFunctor {
    let unit = Arc::new(unit_i());
    let n = carrier.edge_count();
    AsyncFunctor::with_block_swaps(
        carrier.clone(),
        unit,
        vec![0; carrier.vertex_count()],
        vec![Path::empty(0); n],
    )
    .expect("empty images always admit block swaps")
}

/// The comonoid determined by a polarity on the edges: a P-edge `u` is
/// copied as `u₁·u₂` (left copy first) and an O-edge as `u₂·u₁`.
pub fn comonoid_from_polarity(carrier: Arc<AsynchGraph>, polarity: &[Polarity]) -> Result<Comonoid> {
    if polarity.len() != carrier.edge_count() {
        return Err(Error::InvalidSupport(format!(
            "{} polarities for {} edges",
            polarity.len(),
            carrier.edge_count()
        )));
    }
    let square = Arc::new(shuffle(&[carrier.clone(), carrier.clone()]));
    let info = square.shuffle_info().expect("shuffle records coordinates");
    let diag = |v: VertexId| info.vertex(&[v, v]).expect("diagonal vertex");
    let vertex_map: Vec<VertexId> = (0..carrier.vertex_count()).map(diag).collect();
    let mut edge_map = Vec::with_capacity(carrier.edge_count());
    for (u, edge) in carrier.edges().iter().enumerate() {
        let start = diag(edge.src);
        let order = match polarity[u] {
            Polarity::P => [0, 1],
            Polarity::O => [1, 0],
        };
        let first = info.edge(order[0], u, start).expect("copy exists");
        let second = info
            .edge(order[1], u, square.edge(first).tgt)
            .expect("copy exists");
        edge_map.push(Path::new(&square, start, vec![first, second])?);
    }
    let d = AsyncFunctor::with_block_swaps(carrier.clone(), square, vertex_map, edge_map)?;
    Ok(Comonoid {
        e: erase(carrier.clone()),
        carrier,
        d,
    })
}

fn law(ok: Option<String>, what: &str) -> Result<()> {
    match ok {
        None => Ok(()),
        Some(why) => Err(Error::LawViolation(format!("{what}: {why}"))),
    }
}

impl Comonoid {
    /// `(d ⧢ id)∘d = (id ⧢ d)∘d` after flattening, and both counit triangles.
    pub fn check(&self) -> Result<()> {
        self.d.check()?;
        self.e.check()?;
        let a = &self.carrier;
        let id = AsyncFunctor::identity(a.clone());
        let square = self.d.tgt.clone();
        if *square != shuffle(&[a.clone(), a.clone()]) {
            return Err(Error::LawViolation("d does not land in A ⧢ A".into()));
        }
        let flat = Arc::new(shuffle(&[a.clone(), a.clone(), a.clone()]));

        let dl = AsyncFunctor::tensor_between(
            &[&self.d, &id],
            square.clone(),
            Arc::new(shuffle(&[square.clone(), a.clone()])),
        )?;
        let fl = AsyncFunctor::rearrange_into(
            dl.tgt.clone(),
            &Shape::Node(vec![Shape::flat(2), Shape::Leaf]),
            &[0, 1, 2],
            flat.clone(),
        )?;
        let left = self.d.then(&dl)?.then(&fl)?;

        let dr = AsyncFunctor::tensor_between(
            &[&id, &self.d],
            square.clone(),
            Arc::new(shuffle(&[a.clone(), square.clone()])),
        )?;
        let fr = AsyncFunctor::rearrange_into(
            dr.tgt.clone(),
            &Shape::Node(vec![Shape::Leaf, Shape::flat(2)]),
            &[0, 1, 2],
            flat,
        )?;
        let right = self.d.then(&dr)?.then(&fr)?;
        law(left.mismatch(&right), "coassociativity")?;

        let unit = self.e.tgt.clone();
        for (side, keep) in [(0usize, 1usize), (1, 0)] {
            let fs: [&AsyncFunctor; 2] = if side == 0 { [&self.e, &id] } else { [&id, &self.e] };
            let parts = if side == 0 {
                vec![unit.clone(), a.clone()]
            } else {
                vec![a.clone(), unit.clone()]
            };
            let t = AsyncFunctor::tensor_between(&fs, square.clone(), Arc::new(shuffle(&parts)))?;
            let drop = AsyncFunctor::rearrange(t.tgt.clone(), &Shape::flat(2), &[keep])?;
            let composite = self.d.then(&t)?.then(&drop)?;
            law(composite.mismatch(&id), "counit")?;
        }
        Ok(())
    }

    pub fn is_lawful(&self) -> bool {
        self.check().is_ok()
    }

    /// Comonoid homomorphism `h : self → tgt`: `d∘h = (h ⧢ h)∘d` and `e∘h = e`.
    pub fn check_hom(&self, h: &AsyncFunctor, tgt: &Comonoid) -> Result<()> {
        h.check()?;
        let left = h.then(&tgt.d)?;
        let hh = AsyncFunctor::tensor_between(&[h, h], self.d.tgt.clone(), tgt.d.tgt.clone())?;
        let right = self.d.then(&hh)?;
        law(left.mismatch(&right), "comultiplication square")?;
        law(h.then(&tgt.e)?.mismatch(&self.e), "counit square")
    }

    /// Same carrier and same comultiplication.
    pub fn same_as(&self, other: &Comonoid) -> bool {
        std::ptr::eq(self, other) || (*self.carrier == *other.carrier && self.d.same_on_generators(&other.d))
    }
}

impl PartialEq for Comonoid {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

pub fn comonoid_check(c: &Comonoid) -> bool {
    c.is_lawful()
}

pub fn comonoid_hom_check(h: &AsyncFunctor, src: &Comonoid, tgt: &Comonoid) -> bool {
    src.check_hom(h, tgt).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asynch_graph::{anchor_of, GraphBuilder};

    fn zero() -> Comonoid {
        comonoid_from_polarity(Arc::new(anchor_of(&["O", "P"])), &[Polarity::O, Polarity::P]).unwrap()
    }

    #[test]
    fn polarity_comonoid_is_lawful() {
        let c = zero();
        c.check().unwrap();
        let d = &c.d;
        let sq = &d.tgt;
        assert_eq!(d.edge_map[0].display(sq), "(*,O)·(O,*)");
        assert_eq!(d.edge_map[1].display(sq), "(P,*)·(*,P)");
    }

    #[test]
    fn copycat_zig_zag() {
        let c = zero();
        let g = &c.carrier;
        let opo = Path::from_names(g, &["O", "P", "O"]).unwrap();
        assert_eq!(
            c.d.apply_path(&opo).display(&c.d.tgt),
            "(*,O)·(O,*)·(P,*)·(*,P)·(*,O)·(O,*)"
        );
    }

    #[test]
    fn left_first_everywhere_is_still_lawful() {
        let g = Arc::new(anchor_of(&["O", "P"]));
        let c = comonoid_from_polarity(g, &[Polarity::P, Polarity::P]).unwrap();
        c.check().unwrap();
    }

    #[test]
    fn length_one_copy_breaks_the_counit() {
        let mut c = zero();
        let sq = c.d.tgt.clone();
        let o = sq.edge_id("(O,*)").unwrap();
        c.d.edge_map[0] = Path::edge(&sq, o);
        c.d = AsyncFunctor::with_block_swaps(c.carrier.clone(), sq, c.d.vertex_map.clone(), c.d.edge_map.clone())
            .unwrap_or_else(|_| c.d.clone());
        assert!(!c.is_lawful());
    }

    #[test]
    fn labelling_hom() {
        let mut b = GraphBuilder::new();
        let x = b.vertex("x").unwrap();
        let y = b.vertex("x'").unwrap();
        b.edge("m", x, y, "O").unwrap();
        let a = Arc::new(b.build());
        let ca = comonoid_from_polarity(a.clone(), &[Polarity::O]).unwrap();
        ca.check().unwrap();
        let z = zero();
        let lam = AsyncFunctor::from_names(a.clone(), z.carrier.clone(), &[("x", "*"), ("x'", "*")], &[("m", &["O"])])
            .unwrap();
        ca.check_hom(&lam, &z).unwrap();
        let wrong = AsyncFunctor::from_names(a, z.carrier.clone(), &[("x", "*"), ("x'", "*")], &[("m", &["P"])])
            .unwrap();
        assert!(ca.check_hom(&wrong, &z).is_err());
        z.check_hom(&AsyncFunctor::identity(z.carrier.clone()), &z).unwrap();
    }
}
