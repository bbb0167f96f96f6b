//! Independent checks shared by the integration tests and the acceptance run.
//! Each one panics with a description on the first counterexample.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use asynch_games::asynch_graph::{anchor_of, equalizer, find_homs, product, shuffle, AsynchGraph, GraphHom};
use asynch_games::mall::laws::single_edge;
use asynch_games::reshuffle::{
    hcompose, hom2, is_reshuffling, paths_from, project_cell, q_projection, reachable, seq_bijection, vcompose, Path,
    PermutationStep, Reshuffling,
};
use asynch_games::template::Strategy;

use super::{graph, line, raw_graph};

const ALL: usize = usize::MAX;

pub fn test_objects() -> Vec<AsynchGraph> {
    vec![
        raw_graph(1, &[]),
        raw_graph(2, &[]),
        raw_graph(1, &[(0, 0)]),
        raw_graph(2, &[(0, 1)]),
        raw_graph(2, &[(0, 1), (0, 1)]),
        raw_graph(2, &[(0, 1), (1, 0)]),
        line(&["a", "b"]),
        graph("tic.json"),
        graph("square.json"),
    ]
}


pub fn factors() -> Vec<AsynchGraph> {
    vec![
        raw_graph(2, &[(0, 1)]),
        raw_graph(2, &[(0, 1), (0, 1)]),
        raw_graph(1, &[(0, 0)]),
        line(&["a", "b"]),
        graph("anchor_op.json"),
        graph("tic.json"),
        graph("square.json"),
    ]
}


/// Every pair of maps into the factors factors through exactly one map
/// into the product.
pub fn check_product(g: &AsynchGraph, h: &AsynchGraph, k: &AsynchGraph) {
    let (p, pi1, pi2) = product(g, h);
    assert!(pi1.check(&p, g).unwrap() && pi2.check(&p, h).unwrap());
    let into_p = find_homs(k, &p, ALL);
    let into_g = find_homs(k, g, ALL);
    let into_h = find_homs(k, h, ALL);
    assert_eq!(into_p.len(), into_g.len() * into_h.len());
    for f in &into_g {
        for q in &into_h {
            let through: Vec<&GraphHom> = into_p
                .iter()
                .filter(|u| u.then(&pi1) == *f && u.then(&pi2) == *q)
                .collect();
            assert_eq!(through.len(), 1);
        }
    }
}


/// Maps that equalize `f` and `g` are exactly those factoring, uniquely,
/// through the inclusion.
pub fn check_equalizer(f: &GraphHom, g: &GraphHom, a: &AsynchGraph, k: &AsynchGraph) {
    let (e, incl) = equalizer(f, g, a);
    assert!(incl.check(&e, a).unwrap());
    assert_eq!(incl.then(f), incl.then(g));
    let into_e = find_homs(k, &e, ALL);
    let equalizing: Vec<GraphHom> = find_homs(k, a, ALL)
        .into_iter()
        .filter(|h| h.then(f) == h.then(g))
        .collect();
    assert_eq!(into_e.len(), equalizing.len());
    for h in &equalizing {
        assert_eq!(into_e.iter().filter(|u| u.then(&incl) == *h).count(), 1);
    }
}


pub fn parallel_pairs() -> Vec<(AsynchGraph, AsynchGraph, GraphHom, GraphHom)> {
    let sources = [
        raw_graph(2, &[(0, 1), (0, 1)]),
        line(&["a", "b"]),
        graph("square.json"),
        raw_graph(3, &[(0, 1), (1, 2), (0, 2)]),
    ];
    let targets = [
        raw_graph(2, &[(0, 1), (0, 1)]),
        raw_graph(2, &[(0, 1), (1, 0), (0, 0)]),
        graph("square.json"),
        graph("anchor_op.json"),
    ];
    let mut out = Vec::new();
    for a in &sources {
        for b in &targets {
            let homs = find_homs(a, b, 6);
            for f in &homs {
                for g in &homs {
                    out.push((a.clone(), b.clone(), f.clone(), g.clone()));
                }
            }
        }
    }
    out
}


pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}


/// Counts 2-cells `f ⇒ h` of a shuffle whose factors are single edges or
/// one-vertex graphs with every tile: each factor contributes the number of
/// label-preserving permutations of its moves, provided the moves agree as
/// multisets.
pub fn presentation_count(g: &AsynchGraph, f: &Path, h: &Path) -> usize {
    let info = g.shuffle_info().unwrap();
    let tally = |p: &Path| {
        let mut m: BTreeMap<(usize, String), usize> = BTreeMap::new();
        for &e in p.edges() {
            let (k, fe) = info.component(e);
            *m.entry((k, info.factors()[k].edge(fe).label.clone())).or_default() += 1;
        }
        m
    };
    let (tf, th) = (tally(f), tally(h));
    if tf != th {
        return 0;
    }
    tf.values().map(|&n| factorial(n)).product()
}


pub fn two_factor_shuffles() -> Vec<(&'static str, AsynchGraph)> {
    let op = || Arc::new(anchor_of(&["O", "P"]));
    vec![
        (
            "edge ⧢ edge",
            shuffle(&[
                Arc::new(single_edge("x", "x'", "m", "m")),
                Arc::new(single_edge("y", "y'", "n", "n")),
            ]),
        ),
        ("op ⧢ op", shuffle(&[op(), op()])),
    ]
}


pub fn parallel_paths(g: &AsynchGraph, max_len: usize) -> Vec<(Path, Path)> {
    let mut out = Vec::new();
    for x in 0..g.vertex_count() {
        let ps = paths_from(g, x, max_len);
        for f in &ps {
            for h in &ps {
                if f.tgt() == h.tgt() && f.len() == h.len() {
                    out.push((f.clone(), h.clone()));
                }
            }
        }
    }
    out
}


pub fn small_fixtures() -> Vec<(&'static str, AsynchGraph)> {
    vec![
        ("anchor", graph("anchor_op.json")),
        ("tic", graph("tic.json")),
        ("square", graph("square.json")),
        ("line", line(&["a", "b", "c"])),
        ("edge ⧢ edge", two_factor_shuffles().remove(0).1),
    ]
}


pub fn cells_from(g: &AsynchGraph, f: &Path) -> Vec<Reshuffling> {
    reachable(g, f)
        .into_iter()
        .flat_map(|(h, bs)| {
            let f = f.clone();
            bs.into_iter().map(move |bij| Reshuffling { src: f.clone(), tgt: h.clone(), bij })
        })
        .collect()
}


pub fn vertical(g: &AsynchGraph, f: &Path) -> Vec<(Reshuffling, Reshuffling)> {
    let mut out = Vec::new();
    for a in cells_from(g, f) {
        for b in cells_from(g, &a.tgt) {
            out.push((a.clone(), b));
        }
    }
    out
}


pub fn lambda_along(s: &Strategy) -> Vec<String> {
    let g = s.support();
    let mut at = (0..g.vertex_count())
        .find(|&v| g.edges().iter().all(|e| e.tgt != v))
        .unwrap();
    let mut out = Vec::new();
    while let Some(&e) = g.out_edges(at).first() {
        out.push(s.lambda_word(e));
        at = g.edge(e).tgt;
    }
    out
}

pub fn check_hom_counts() {
    for (name, g) in two_factor_shuffles() {
        let pairs = parallel_paths(&g, 3);
        assert!(!pairs.is_empty());
        for (f, h) in pairs {
            let got = hom2(&g, &f, &h).unwrap().len();
            assert_eq!(got, presentation_count(&g, &f, &h), "{name}: {} ⇒ {}", f.display(&g), h.display(&g));
        }
    }
}

pub fn check_q_projection() {
    for (name, g) in two_factor_shuffles() {
        let info = g.shuffle_info().unwrap();
        for (f, h) in parallel_paths(&g, 3) {
            let cells = hom2(&g, &f, &h).unwrap();
            let (f1, f2) = q_projection(&g, &f).unwrap();
            let (h1, h2) = q_projection(&g, &h).unwrap();
            let left = if f1.tgt() == h1.tgt() && f1.len() == h1.len() { hom2(&info.factors()[0], &f1, &h1).unwrap() } else { BTreeSet::new() };
            let right = if f2.tgt() == h2.tgt() && f2.len() == h2.len() { hom2(&info.factors()[1], &f2, &h2).unwrap() } else { BTreeSet::new() };
            let mut images = BTreeSet::new();
            for bij in cells.iter() {
                let cell = Reshuffling { src: f.clone(), tgt: h.clone(), bij: bij.clone() };
                let a = project_cell(&g, &cell, 0).unwrap();
                let b = project_cell(&g, &cell, 1).unwrap();
                assert!(left.contains(&a.bij) && right.contains(&b.bij), "{name}");
                images.insert((a.bij, b.bij));
            }
            assert_eq!(images.len(), cells.len(), "{name}: projection is not injective");
            assert_eq!(images.len(), left.len() * right.len(), "{name}: projection is not onto");
        }
    }
}

pub fn check_inverse_pairs() {
    for (name, g) in small_fixtures() {
        assert!(g.edge_count() <= 6);
        for x in 0..g.vertex_count() {
            for f in paths_from(&g, x, 4) {
                for k in 0..f.len().saturating_sub(1) {
                    let p = [f.edges()[k], f.edges()[k + 1]];
                    for &q in g.partners(p) {
                        let s = PermutationStep::at(&g, &f, k, q).unwrap();
                        let back = PermutationStep::at(&g, &s.target(), k, p).unwrap();
                        let r = seq_bijection(&g, &f, &[s, back]).unwrap();
                        assert_eq!(r.tgt, f, "{name}");
                        assert_eq!(r.bij, (0..f.len()).collect::<Vec<_>>(), "{name}");
                    }
                }
            }
        }
    }
}

pub fn check_interchange() {
    for (name, g) in small_fixtures() {
        let mut checked = 0;
        for x in 0..g.vertex_count() {
            for f1 in paths_from(&g, x, 4) {
                for f2 in paths_from(&g, f1.tgt(), 4 - f1.len()) {
                    let left = vertical(&g, &f1);
                    let right = vertical(&g, &f2);
                    for (a, b) in &left {
                        for (c, d) in &right {
                            let lhs = hcompose(&vcompose(a, b).unwrap(), &vcompose(c, d).unwrap()).unwrap();
                            let rhs = vcompose(&hcompose(a, c).unwrap(), &hcompose(b, d).unwrap()).unwrap();
                            assert_eq!(lhs, rhs, "{name}");
                            assert!(is_reshuffling(&g, &lhs.src, &lhs.tgt, &lhs.bij).unwrap(), "{name}");
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 0, "{name}");
    }
}

pub fn check_products() {
    let fs = factors();
    let mut checked = 0;
    for g in &fs {
        for h in &fs {
            if g.vertex_count() * h.vertex_count() > 6 {
                continue;
            }
            for k in test_objects() {
                check_product(g, h, &k);
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}

pub fn check_equalizers() {
    let pairs = parallel_pairs();
    assert!(pairs.len() > 20);
    for (a, _, f, g) in &pairs {
        for k in test_objects() {
            check_equalizer(f, g, a, &k);
        }
    }
}

pub fn check_equalizer_of_identical_maps() {
    for (a, _, f, _) in parallel_pairs() {
        let (e, incl) = equalizer(&f, &f, &a);
        assert!(incl.is_iso(&e, &a));
        assert_eq!(e.tile_count(), a.tile_count());
    }
}
