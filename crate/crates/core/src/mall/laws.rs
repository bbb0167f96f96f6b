//! Law suites run by `agames lawcheck`, and the small graphs and games they
//! are checked on.

use std::sync::Arc;

use crate::asynch_graph::{anchor_of, shuffle, AsynchGraph, GraphBuilder};
use crate::comod::Polarity;
use crate::error::{Error, Result};
use crate::reshuffle::{
    hcompose, is_reshuffling, paths_from, reachable, seq_bijection, vcompose, Path, PermutationStep, Reshuffling,
};
use crate::template::{
    compose_strategies, construct_template, copycat, lollipop, make_game, negate_game, strategy_iso, template,
    tensor_games, with, Game, LawResult,
};

/// `x -e-> y`
pub fn single_edge(x: &str, y: &str, e: &str, label: &str) -> AsynchGraph {
    let mut b = GraphBuilder::new();
    let v0 = b.vertex(x).expect("fresh vertex");
    let v1 = b.vertex(y).expect("fresh vertex");
    b.edge(e, v0, v1, label).expect("fresh edge");
    b.build()
}

/// The shuffle of three single-edge graphs: a cube.
pub fn three_shuffle() -> AsynchGraph {
    shuffle(&[
        Arc::new(single_edge("x0", "x1", "u", "u")),
        Arc::new(single_edge("y0", "y1", "v", "v")),
        Arc::new(single_edge("z0", "z1", "w", "w")),
    ])
}

/// A game with a single move of the given polarity.
pub fn one_move_game(x: &str, y: &str, e: &str, p: Polarity) -> Game {
    let g = single_edge(x, y, e, &p.to_string());
    make_game(Arc::new(g), vec![p]).expect("a single edge is a valid support")
}

/// The games every comonoid-level law is checked on.
pub fn sample_games() -> Vec<(String, Game)> {
    let a = one_move_game("x", "x'", "m", Polarity::O);
    let b = one_move_game("y", "y'", "n", Polarity::P);
    let square = tensor_games(&a, &b).expect("shuffle of games");
    vec![
        ("A".into(), a.clone()),
        ("B".into(), b.clone()),
        ("A ⊗ B".into(), square.clone()),
        ("¬(A ⊗ B)".into(), negate_game(&square)),
        ("A ⊸ A".into(), lollipop(&a, &a).expect("lollipop of games")),
        ("A & B".into(), with(&a, &b).expect("sum of games")),
    ]
}

/// The two permutation sequences turning `u·v·w` into `w·v·u` around the cube,
/// swapping at offsets 0,1,0 and 1,0,1.
pub fn cube_sequences(g: &AsynchGraph) -> Result<(Reshuffling, Reshuffling)> {
    let f = cube_front(g)?;
    let run = |offsets: [usize; 3]| -> Result<Reshuffling> {
        let mut cur = f.clone();
        let mut steps = Vec::new();
        for k in offsets {
            let q = g
                .partner([cur.edges()[k], cur.edges()[k + 1]])
                .ok_or_else(|| Error::MalformedStep(format!("no tile at offset {k}")))?;
            let s = PermutationStep::at(g, &cur, k, q)?;
            cur = s.target();
            steps.push(s);
        }
        seq_bijection(g, &f, &steps)
    };
    Ok((run([0, 1, 0])?, run([1, 0, 1])?))
}

/// `u·v·w` from the origin of [`three_shuffle`].
pub fn cube_front(g: &AsynchGraph) -> Result<Path> {
    let info = g
        .shuffle_info()
        .filter(|i| i.arity() == 3)
        .ok_or_else(|| Error::Document("expected a ternary shuffle".into()))?;
    let mut at = info
        .vertex(&[0, 0, 0])
        .ok_or_else(|| Error::UnknownVertex("origin".into()))?;
    let start = at;
    let mut edges = Vec::new();
    for k in 0..3 {
        let e = info.edge(k, 0, at).ok_or_else(|| Error::UnknownEdge(format!("move of factor {k}")))?;
        edges.push(e);
        at = g.edge(e).tgt;
    }
    Path::new(g, start, edges)
}

fn expect_bij(r: &Reshuffling, want: &[usize]) -> Result<()> {
    if r.bij == want {
        Ok(())
    } else {
        Err(Error::LawViolation(format!("got {:?}, expected {:?}", r.bij, want)))
    }
}

/// Every step followed by its reverse tracks the identity.
pub fn inverse_pairs(g: &AsynchGraph, max_len: usize) -> Result<usize> {
    let mut count = 0;
    for x in 0..g.vertex_count() {
        for f in paths_from(g, x, max_len) {
            for k in 0..f.len().saturating_sub(1) {
                for &q in g.partners([f.edges()[k], f.edges()[k + 1]]) {
                    let s = PermutationStep::at(g, &f, k, q)?;
                    let back = PermutationStep::at(g, &s.target(), k, [f.edges()[k], f.edges()[k + 1]])?;
                    let r = seq_bijection(g, &f, &[s, back])?;
                    if r.tgt != f || r.bij != (0..f.len()).collect::<Vec<_>>() {
                        return Err(Error::LawViolation(format!("step and reverse on {}", f.display(g))));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Every vertically composable pair of 2-cells starting at `f`.
fn vertical_pairs(g: &AsynchGraph, f: &Path) -> Vec<(Reshuffling, Reshuffling)> {
    let mut out = Vec::new();
    for (h, bs) in reachable(g, f) {
        let nexts = reachable(g, &h);
        for b in &bs {
            let a = Reshuffling {
                src: f.clone(),
                tgt: h.clone(),
                bij: b.clone(),
            };
            for (k, cs) in &nexts {
                for c in cs {
                    out.push((
                        a.clone(),
                        Reshuffling {
                            src: h.clone(),
                            tgt: k.clone(),
                            bij: c.clone(),
                        },
                    ));
                }
            }
        }
    }
    out
}

/// The interchange law on every quadruple of cells over paths `f·f'` with
/// `|f| + |f'| ≤ max_total`. Returns the number of quadruples checked.
pub fn interchange(g: &AsynchGraph, max_total: usize) -> Result<usize> {
    let mut count = 0;
    for x in 0..g.vertex_count() {
        for f in paths_from(g, x, max_total) {
            let left = vertical_pairs(g, &f);
            for f2 in paths_from(g, f.tgt(), max_total - f.len()) {
                let right = vertical_pairs(g, &f2);
                for (a, c) in &left {
                    for (b, d) in &right {
                        let lhs = vcompose(&hcompose(a, b)?, &hcompose(c, d)?)?;
                        let rhs = hcompose(&vcompose(a, c)?, &vcompose(b, d)?)?;
                        if lhs != rhs {
                            return Err(Error::LawViolation(format!(
                                "interchange fails over {} · {}",
                                f.display(g),
                                f2.display(g)
                            )));
                        }
                        if !is_reshuffling(g, &lhs.src, &lhs.tgt, &lhs.bij)? {
                            return Err(Error::LawViolation("composite is not a 2-cell".into()));
                        }
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}

/// The generator-level laws of the template.
pub fn template_suite() -> Vec<LawResult> {
    match construct_template() {
        Ok(t) => t.laws(),
        Err(e) => vec![LawResult::of("template construction", Err(e))],
    }
}

/// Comonoid, homomorphism and copycat laws on [`sample_games`].
pub fn comonoid_suite() -> Vec<LawResult> {
    let mut out = vec![LawResult::of("⫪₀ is a Gray comonoid", template().obj.check())];
    for (name, g) in sample_games() {
        out.push(LawResult::of(&format!("{name}: comonoid laws"), g.comonoid.check()));
        out.push(LawResult::of(
            &format!("{name}: λ is a comonoid homomorphism into ⫪₀"),
            g.comonoid.check_hom(&g.lambda, &template().obj),
        ));
        let g = Arc::new(g);
        let cc = copycat(&g);
        out.push(LawResult::of(
            &format!("{name}: copycat is a strategy"),
            cc.as_ref().map_err(clone_err).and_then(|s| s.check()),
        ));
        out.push(LawResult::of(
            &format!("{name}: copycat ∘ copycat ≅ copycat"),
            cc.and_then(|s| {
                let twice = compose_strategies(&s, &s)?;
                strategy_iso(&twice, &s)
                    .map(|_| ())
                    .ok_or_else(|| Error::LawViolation("no isomorphism".into()))
            }),
        ));
    }
    out
}

fn clone_err(e: &Error) -> Error {
    Error::LawViolation(e.to_string())
}

/// Laws of the reshuffling 2-categories on the cube and on `𝕋⟨O,P⟩`.
pub fn twocat_suite() -> Vec<LawResult> {
    let cube = three_shuffle();
    let anchor = anchor_of(&["O", "P"]);
    let square = shuffle(&[
        Arc::new(single_edge("x", "x'", "m", "O")),
        Arc::new(single_edge("y", "y'", "n", "P")),
    ]);
    let reversal = [2, 1, 0];
    let cubes = cube_sequences(&cube);
    let mut out = vec![
        LawResult::of(
            "cube sequence 0,1,0 reverses the indices",
            cubes.as_ref().map_err(clone_err).and_then(|(phi, _)| expect_bij(phi, &reversal)),
        ),
        LawResult::of(
            "cube sequence 1,0,1 reverses the indices",
            cubes.as_ref().map_err(clone_err).and_then(|(_, psi)| expect_bij(psi, &reversal)),
        ),
        LawResult::of(
            "both cube sequences reach the same path",
            cubes.as_ref().map_err(clone_err).and_then(|(phi, psi)| {
                if phi.tgt == psi.tgt {
                    Ok(())
                } else {
                    Err(Error::LawViolation("different targets".into()))
                }
            }),
        ),
    ];
    for (name, g) in [("cube", &cube), ("𝕋⟨O,P⟩", &anchor), ("square", &square)] {
        out.push(LawResult::of(
            &format!("{name}: a step followed by its reverse is the identity"),
            inverse_pairs(g, 4).map(|_| ()),
        ));
        out.push(LawResult::of(
            &format!("{name}: interchange law"),
            interchange(g, 4).map(|_| ()),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_sequences_reverse() {
        let g = three_shuffle();
        let (phi, psi) = cube_sequences(&g).unwrap();
        assert_eq!(phi.bij, vec![2, 1, 0]);
        assert_eq!(psi.bij, vec![2, 1, 0]);
        assert_eq!(phi.tgt, psi.tgt);
        let info = g.shuffle_info().unwrap();
        let order: Vec<usize> = phi.tgt.edges().iter().map(|&e| info.component(e).0).collect();
        assert_eq!(order, vec![2, 1, 0]);
    }

    #[test]
    fn suites_pass() {
        for l in twocat_suite().into_iter().chain(comonoid_suite()).chain(template_suite()) {
            assert!(l.passed(), "{}: {:?}", l.name, l.outcome);
        }
    }

    #[test]
    fn interchange_counts_are_positive() {
        assert!(interchange(&three_shuffle(), 3).unwrap() > 0);
        assert!(inverse_pairs(&anchor_of(&["O", "P"]), 2).unwrap() > 0);
    }
}
