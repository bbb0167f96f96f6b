//! The Gray tensor presented by the shuffle, and the projection of its cells
//! onto the cartesian product.

use std::sync::Arc;

use super::{Bijection, Path, Reshuffling};
use crate::asynch_graph::{shuffle, AsynchGraph};
use crate::error::{Error, Result};

/// `A ⊠ B`, presented as `A ⧢ B`.
pub fn gray_tensor(a: Arc<AsynchGraph>, b: Arc<AsynchGraph>) -> AsynchGraph {
    shuffle(&[a, b])
}

fn info(g: &AsynchGraph) -> Result<&crate::asynch_graph::ShuffleInfo> {
    g.shuffle_info()
        .ok_or_else(|| Error::CompositionMismatch("graph is not a shuffle".into()))
}

/// The component-`k` moves of a path in a shuffle, as a path of factor `k`.
pub fn project_path(g: &AsynchGraph, p: &Path, k: usize) -> Result<Path> {
    let info = info(g)?;
    let factor = &info.factors()[k];
    let edges = p
        .edges()
        .iter()
        .map(|&e| info.component(e))
        .filter(|&(c, _)| c == k)
        .map(|(_, fe)| fe)
        .collect();
    Path::new(factor, info.coords(p.src())[k], edges)
}

/// `q(f) = (f|A, f|B)` for a path of a binary shuffle.
pub fn q_projection(g: &AsynchGraph, p: &Path) -> Result<(Path, Path)> {
    if info(g)?.arity() != 2 {
        return Err(Error::CompositionMismatch("q-projection needs a binary shuffle".into()));
    }
    Ok((project_path(g, p, 0)?, project_path(g, p, 1)?))
}

/// The component-`k` part of a 2-cell of a shuffle. Tiles never change the
/// component of a tracked move, so the restriction is again a bijection.
pub fn project_cell(g: &AsynchGraph, cell: &Reshuffling, k: usize) -> Result<Reshuffling> {
    let info = info(g)?;
    let of = |p: &Path| -> Vec<usize> {
        p.edges()
            .iter()
            .enumerate()
            .filter(|&(_, &e)| info.component(e).0 == k)
            .map(|(i, _)| i)
            .collect()
    };
    let src_pos = of(&cell.src);
    let tgt_pos = of(&cell.tgt);
    let rank = |i: usize| tgt_pos.binary_search(&i).ok();
    let bij: Bijection = src_pos
        .iter()
        .map(|&i| {
            rank(cell.bij[i]).ok_or_else(|| {
                Error::InvalidWitness("cell moves an edge across components".into())
            })
        })
        .collect::<Result<_>>()?;
    Ok(Reshuffling {
        src: project_path(g, &cell.src, k)?,
        tgt: project_path(g, &cell.tgt, k)?,
        bij,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asynch_graph::GraphBuilder;
    use crate::reshuffle::hom2;

    fn single_edge(v0: &str, v1: &str, e: &str) -> Arc<AsynchGraph> {
        let mut b = GraphBuilder::new();
        let x = b.vertex(v0).unwrap();
        let y = b.vertex(v1).unwrap();
        b.edge(e, x, y, "O").unwrap();
        Arc::new(b.build())
    }

    #[test]
    fn both_trajectories_project_to_the_diagonal() {
        let sq = gray_tensor(single_edge("x", "x'", "m"), single_edge("y", "y'", "n"));
        let t19 = Path::from_names(&sq, &["(m,y)", "(x',n)"]).unwrap();
        let t20 = Path::from_names(&sq, &["(x,n)", "(m,y')"]).unwrap();
        let (a, b) = q_projection(&sq, &t19).unwrap();
        assert_eq!((a.len(), b.len()), (1, 1));
        assert_eq!(q_projection(&sq, &t20).unwrap(), (a, b));
        let cells = hom2(&sq, &t19, &t20).unwrap();
        assert_eq!(cells.len(), 1);
        let cell = Reshuffling {
            src: t19,
            tgt: t20,
            bij: cells.into_iter().next().unwrap(),
        };
        assert_eq!(project_cell(&sq, &cell, 0).unwrap().bij, vec![0]);
    }
}
