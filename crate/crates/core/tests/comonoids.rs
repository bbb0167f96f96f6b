mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use asynch_games::comod::{comonoid_from_polarity, equalizer_oracle, Polarity};
use asynch_games::mall::laws::sample_games;
use asynch_games::reshuffle::Path;
use asynch_games::template::{
    compose_strategies, compose_strategies_detailed, copycat, make_game, strategy_iso, template, Game, Strategy,
};
use common::oracles::lambda_along;
use common::{line, strategy};

#[test]
fn template_laws_hold() {
    let failed: Vec<_> = template().laws().into_iter().filter(|l| !l.passed()).collect();
    assert!(failed.is_empty(), "{failed:?}");
}

#[test]
fn composite_templates_have_the_expected_generators() {
    let t = template();
    assert_eq!(t.mor.support.edge_count(), 4);
    assert_eq!(t.two.generators.len(), 6);
    assert_eq!(t.three.generators.len(), 8);
    assert_eq!(t.three_right.generators.len(), 8);
    assert!(t.associator.is_iso(t.three.support(), t.three_right.support()));
}

fn zigzag_components(carrier_path: &Path, d: &asynch_games::reshuffle::AsyncFunctor) -> Vec<(usize, usize)> {
    let img = d.apply_path(carrier_path);
    let info = d.tgt.shuffle_info().unwrap();
    img.edges().iter().map(|&e| info.component(e)).collect()
}

#[test]
fn comultiplication_of_opo_is_the_six_move_zigzag() {
    let g = Arc::new(line(&["O", "P", "O"]));
    let c = comonoid_from_polarity(g.clone(), &[Polarity::O, Polarity::P, Polarity::O]).unwrap();
    c.check().unwrap();
    let p = Path::from_edges(&g, &[0, 1, 2]).unwrap();
    // (copy, move): O is copied right copy first, P left copy first
    assert_eq!(
        zigzag_components(&p, &c.d),
        vec![(1, 0), (0, 0), (0, 1), (1, 1), (1, 2), (0, 2)]
    );
}

#[test]
fn comultiplication_on_the_anchor_zigzags_the_same_way() {
    let t = template();
    let a = &t.obj.carrier;
    let o = a.require_edge("O").unwrap();
    let p = a.require_edge("P").unwrap();
    let w = Path::from_edges(a, &[o, p, o]).unwrap();
    let got = zigzag_components(&w, &t.obj.d);
    assert_eq!(got, vec![(1, o), (0, o), (0, p), (1, p), (1, o), (0, o)]);
}

fn opo_game() -> Arc<Game> {
    Arc::new(make_game(Arc::new(line(&["O", "P", "O"])), vec![Polarity::O, Polarity::P, Polarity::O]).unwrap())
}

#[test]
fn copycat_schedules_the_zigzag() {
    let cc = copycat(&opo_game()).unwrap();
    cc.check().unwrap();
    assert_eq!(lambda_along(&cc), vec!["O_t·P_s", "O_s·P_t", "O_t·P_s"]);
}

fn fixture_strategies() -> Vec<(&'static str, Strategy)> {
    ["chain_sigma.json", "chain_tau.json", "deadlock_sigma.json", "deadlock_tau.json"]
        .into_iter()
        .map(|n| (n, strategy(n)))
        .collect()
}

#[test]
fn copycat_is_a_two_sided_identity() {
    for (name, s) in fixture_strategies() {
        let left = compose_strategies(&copycat(&s.source).unwrap(), &s).unwrap();
        let right = compose_strategies(&s, &copycat(&s.target).unwrap()).unwrap();
        assert!(strategy_iso(&left, &s).is_some(), "{name}: copycat on the left");
        assert!(strategy_iso(&right, &s).is_some(), "{name}: copycat on the right");
    }
}

#[test]
fn copycat_is_idempotent_on_sample_games() {
    for (name, g) in sample_games() {
        let g = Arc::new(g);
        let cc = copycat(&g).unwrap();
        let twice = compose_strategies(&cc, &cc).unwrap();
        assert!(strategy_iso(&twice, &cc).is_some(), "{name}");
    }
}

#[test]
fn chain_composite_has_four_generators() {
    let (s, t) = (strategy("chain_sigma.json"), strategy("chain_tau.json"));
    let c = compose_strategies_detailed(&s, &t).unwrap();
    assert_eq!(c.composite.generators.len(), 4);
    assert_eq!(lambda_along(&c.strategy), vec!["O_t", "ε", "ε", "P_t"]);
    c.strategy.check().unwrap();
}

#[test]
fn chain_composite_agrees_with_the_equalizer_at_length_six() {
    let (s, t) = (strategy("chain_sigma.json"), strategy("chain_tau.json"));
    let c = compose_strategies_detailed(&s, &t).unwrap().composite;
    let oracle = equalizer_oracle(&s.bicomodule, &t.bicomodule, 6).unwrap();
    let e = c.support();
    let mut expanded = BTreeSet::new();
    for v in 0..e.vertex_count() {
        let mut stack = vec![Path::empty(v)];
        while let Some(p) = stack.pop() {
            let x = c.expand(&p);
            if x.len() > 6 {
                continue;
            }
            assert_eq!(c.parse(&x).unwrap(), p);
            expanded.insert(x);
            for &y in e.out_edges(p.tgt()) {
                stack.push(p.concat(&Path::edge(e, y)).unwrap());
            }
        }
    }
    assert_eq!(expanded, oracle);
    assert!(oracle.iter().any(|p| p.len() == 6));
    c.certify(6).unwrap();
}

#[test]
fn deadlock_composite_has_no_moves() {
    let c = compose_strategies(&strategy("deadlock_sigma.json"), &strategy("deadlock_tau.json")).unwrap();
    assert_eq!(c.support().edge_count(), 0);
}
