//! Double cells `θ : S ⇒ S'` over vertical comonoid homomorphisms.

use std::sync::Arc;

use super::bicomodule::Bicomodule;
use super::compose::Composite;
use super::law;
use crate::error::{Error, Result};
use crate::reshuffle::AsyncFunctor;

#[derive(Clone, Debug)]
pub struct DoubleCell {
    /// `A → A'`
    pub a: AsyncFunctor,
    /// `B → B'`
    pub b: AsyncFunctor,
    pub src: Arc<Bicomodule>,
    pub tgt: Arc<Bicomodule>,
    /// `S → S'`
    pub body: AsyncFunctor,
}

impl DoubleCell {
    pub fn identity(m: Arc<Bicomodule>) -> Self {
        DoubleCell {
            a: AsyncFunctor::identity(m.left.carrier.clone()),
            b: AsyncFunctor::identity(m.right.carrier.clone()),
            body: AsyncFunctor::identity(m.support.clone()),
            src: m.clone(),
            tgt: m,
        }
    }

    fn check_boundaries(&self) -> Result<()> {
        let pairs = [
            (&self.a.src, &self.src.left.carrier, "source of a"),
            (&self.a.tgt, &self.tgt.left.carrier, "target of a"),
            (&self.b.src, &self.src.right.carrier, "source of b"),
            (&self.b.tgt, &self.tgt.right.carrier, "target of b"),
            (&self.body.src, &self.src.support, "source of the body"),
            (&self.body.tgt, &self.tgt.support, "target of the body"),
        ];
        for (x, y, what) in pairs {
            if **x != **y {
                return Err(Error::BoundaryMismatch(what.into()));
            }
        }
        Ok(())
    }

    /// `coact' ∘ θ = (a ⧢ θ ⧢ b) ∘ coact`, with `a` and `b` comonoid homomorphisms.
    pub fn check(&self) -> Result<()> {
        self.check_boundaries()?;
        self.body.check()?;
        self.src.left.check_hom(&self.a, &self.tgt.left)?;
        self.src.right.check_hom(&self.b, &self.tgt.right)?;
        let lhs = self.body.then(&self.tgt.coact)?;
        let t = AsyncFunctor::tensor_between(
            &[&self.a, &self.body, &self.b],
            self.src.target().clone(),
            self.tgt.target().clone(),
        )?;
        let rhs = self.src.coact.then(&t)?;
        law(lhs.mismatch(&rhs), "double cell square")
    }

    pub fn is_lawful(&self) -> bool {
        self.check().is_ok()
    }
}

/// The horizontal composite `θ₁ ⊠_b θ₂ : S ⊠ T ⇒ S' ⊠ T'`: each composite
/// generator is expanded in `S ⧢ T`, mapped by `θ₁ ⧢ θ₂` and read back as a
/// path of `S' ⊠ T'`.
pub fn compose_double_cells(
    c1: &DoubleCell,
    c2: &DoubleCell,
    src: &Composite,
    tgt: &Composite,
) -> Result<DoubleCell> {
    if !c1.b.same_on_generators(&c2.a) {
        return Err(Error::BoundaryMismatch("middle vertical maps differ".into()));
    }
    if *src.s.support != *c1.body.src
        || *src.t.support != *c2.body.src
        || *tgt.s.support != *c1.body.tgt
        || *tgt.t.support != *c2.body.tgt
    {
        return Err(Error::BoundaryMismatch("composites do not match the cells".into()));
    }
    let both = AsyncFunctor::tensor_between(&[&c1.body, &c2.body], src.product.clone(), tgt.product.clone())?;
    let e = src.support();
    let vertex_map = src
        .pairs
        .iter()
        .map(|&(s, t)| {
            tgt.vertex(c1.body.vertex_map[s], c2.body.vertex_map[t])
                .ok_or_else(|| Error::BoundaryMismatch("a position leaves the target composite".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let edge_map = (0..e.edge_count())
        .map(|x| tgt.parse(&both.apply_path(&src.expansions[x])))
        .collect::<Result<Vec<_>>>()?;
    let body = AsyncFunctor::with_block_swaps(e.clone(), tgt.support().clone(), vertex_map, edge_map)?;
    Ok(DoubleCell {
        a: c1.a.clone(),
        b: c2.b.clone(),
        src: Arc::new(src.bicomodule.clone()),
        tgt: Arc::new(tgt.bicomodule.clone()),
        body,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asynch_graph::anchor_of;
    use crate::comod::{comonoid_from_polarity, compose_bicomodules, Polarity};

    #[test]
    fn identity_cells_compose_to_an_identity() {
        let z = Arc::new(comonoid_from_polarity(Arc::new(anchor_of(&["O", "P"])), &[Polarity::O, Polarity::P]).unwrap());
        let id = Arc::new(Bicomodule::identity(z).unwrap());
        let cell = DoubleCell::identity(id.clone());
        cell.check().unwrap();
        let c = compose_bicomodules(&id, &id).unwrap();
        let h = compose_double_cells(&cell, &cell, &c, &c).unwrap();
        h.check().unwrap();
        assert!(h.body.same_on_generators(&AsyncFunctor::identity(c.support().clone())));
    }
}
