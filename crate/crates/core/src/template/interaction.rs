//! Interaction of a strategy with a counter-strategy on a shared game, read
//! either literally on paths of the shuffle or after projecting to the
//! cartesian product.

use std::collections::BTreeSet;
use std::fmt;

use super::strategy::Strategy;
use crate::asynch_graph::{AsynchGraph, EdgeId, VertexId};
use crate::comod::Token;
use crate::error::{Error, Result};
use crate::reshuffle::{paths_from, q_projection, Path};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Gray,
    Cartesian,
}

impl Style {
    pub fn parse(s: &str) -> Result<Style> {
        match s {
            "gray" => Ok(Style::Gray),
            "cartesian" => Ok(Style::Cartesian),
            other => Err(Error::Document(format!("unknown interaction style `{other}`"))),
        }
    }
}

/// A trajectory of the shared game: a path, or its pair of projections.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Trajectory {
    Path(String),
    Pair(String, String),
}

impl fmt::Display for Trajectory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Trajectory::Path(p) => f.write_str(p),
            Trajectory::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// Vertices without incoming edges, or every vertex if there are none.
fn initial(g: &AsynchGraph) -> Vec<VertexId> {
    let mut has_in = vec![false; g.vertex_count()];
    for e in g.edges() {
        has_in[e.tgt] = true;
    }
    let roots: Vec<_> = (0..g.vertex_count()).filter(|&v| !has_in[v]).collect();
    if roots.is_empty() {
        (0..g.vertex_count()).collect()
    } else {
        roots
    }
}

/// The boundary paths played on one side of a strategy from its initial positions.
fn played(s: &Strategy, target_side: bool, max_len: usize) -> Result<BTreeSet<Path>> {
    let g = s.support();
    let game = if target_side { &s.target.support } else { &s.source.support };
    let mut out = BTreeSet::new();
    for v in initial(g) {
        let (a, b) = s.position(v);
        let start = if target_side { b } else { a };
        for p in paths_from(g, v, max_len) {
            let edges: Vec<EdgeId> = p
                .edges()
                .iter()
                .flat_map(|&e| s.tokens(e))
                .filter_map(|t| match (t, target_side) {
                    (Token::Right(x), true) | (Token::Left(x), false) => Some(x),
                    _ => None,
                })
                .collect();
            out.insert(Path::new(game, start, edges)?);
        }
    }
    Ok(out)
}

/// Intersects what `σ : A ↛ B` plays on `B` with what `τ : B ↛ C` accepts
/// from `B`. In the cartesian style paths of a binary shuffle are compared
/// through their two projections.
pub fn interaction_intersection(sigma: &Strategy, tau: &Strategy, style: Style) -> Result<BTreeSet<Trajectory>> {
    if *sigma.target != *tau.source {
        return Err(Error::MiddleMismatch);
    }
    let g = &sigma.target.support;
    let bound = sigma.support().edge_count().max(tau.support().edge_count());
    let left = played(sigma, true, bound)?;
    let right = played(tau, false, bound)?;
    let render = |p: &Path| -> Result<Trajectory> {
        Ok(match style {
            Style::Gray => Trajectory::Path(g.word(p.edges())),
            Style::Cartesian => {
                let (x, y) = q_projection(g, p)?;
                let info = g.shuffle_info().expect("checked by q_projection");
                Trajectory::Pair(info.factors()[0].word(x.edges()), info.factors()[1].word(y.edges()))
            }
        })
    };
    let keys = |ps: &BTreeSet<Path>| -> Result<BTreeSet<(VertexId, Trajectory)>> {
        ps.iter()
            .map(|p| Ok((p.src(), render(p)?)))
            .collect()
    };
    let (l, r) = (keys(&left)?, keys(&right)?);
    Ok(l.intersection(&r).map(|(_, t)| t.clone()).collect())
}

/// `{t₁, t₂, …}`
pub fn render_set(ts: &BTreeSet<Trajectory>) -> String {
    let items: Vec<String> = ts.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(", "))
}
