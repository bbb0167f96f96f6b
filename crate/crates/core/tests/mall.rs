mod common;

use std::sync::Arc;

use asynch_games::asynch_graph::find_isomorphism;
use asynch_games::mall::{interpret_formula, interpret_proof, parse_formula, parse_proof, sequent_game, AtomEnvironment, Formula};
use asynch_games::template::{
    interaction_intersection, negate_game, render_set, strategy_iso, tensor_games, Style, Trajectory,
};
use common::{fixture, graph, read_fixture, strategy};
use proptest::prelude::*;

fn env() -> AtomEnvironment {
    AtomEnvironment::load(&fixture("env.json")).unwrap()
}

fn corpus() -> Vec<String> {
    read_fixture("formulas.txt").lines().filter(|l| !l.trim().is_empty()).map(String::from).collect()
}

#[test]
fn corpus_has_thirty_formulas() {
    assert_eq!(corpus().len(), 30);
}

#[test]
fn corpus_round_trips_through_the_printer() {
    for line in corpus() {
        let f = parse_formula(&line).unwrap();
        let printed = f.to_string();
        let again = parse_formula(&printed).unwrap();
        assert_eq!(again, f, "{line} printed as {printed}");
        assert_eq!(again.to_string(), printed);
    }
}

#[test]
fn printer_output_is_frozen_on_a_few_formulas() {
    for (src, want) in [
        ("a -o b -o c", "a -o b -o c"),
        ("(a -o b) -o c", "(a -o b) -o c"),
        ("a * (b * c)", "a * (b * c)"),
        ("((a * b)) * c", "a * b * c"),
        ("~(a * b)", "~(a * b)"),
        ("a & b + c", "a & b + c"),
    ] {
        assert_eq!(parse_formula(src).unwrap().to_string(), want);
    }
}

#[test]
fn double_negation_is_data_identical() {
    let env = env();
    for atom in ["a", "b", "c"] {
        let plain = interpret_formula(&parse_formula(atom).unwrap(), &env).unwrap();
        let twice = interpret_formula(&parse_formula(&format!("~~{atom}")).unwrap(), &env).unwrap();
        assert_eq!(twice.to_value(), plain.to_value());
    }
}

#[test]
fn negation_interprets_as_game_negation() {
    let env = env();
    for line in corpus() {
        let f = parse_formula(&line).unwrap();
        let g = interpret_formula(&f, &env).unwrap();
        let n = interpret_formula(&Formula::neg(f.clone()), &env).unwrap();
        assert_eq!(n.to_value(), negate_game(&g).to_value(), "{line}");
    }
}

#[test]
fn corpus_formulas_interpret_to_lawful_games() {
    let env = env();
    for line in corpus() {
        let g = interpret_formula(&parse_formula(&line).unwrap(), &env).unwrap();
        g.check().unwrap_or_else(|e| panic!("{line}: {e}"));
    }
}

#[test]
fn tensor_of_two_moves_is_the_tiled_square() {
    let env = env();
    let g = interpret_formula(&parse_formula("a * b").unwrap(), &env).unwrap();
    let sq = graph("square.json");
    let support = &g.support;
    assert_eq!((support.vertex_count(), support.edge_count(), support.tile_count()), (4, 4, 2));
    let iso = find_isomorphism(support, &sq, &|_, _| true, &|e, f| support.edge(e).label == sq.edge(f).label);
    assert!(iso.is_some());
    let direct = tensor_games(env.get("a").unwrap(), env.get("b").unwrap()).unwrap();
    assert_eq!(direct.to_value(), g.to_value());
}

fn proof(name: &str) -> asynch_games::mall::Proof {
    parse_proof(&read_fixture(&format!("proofs/{name}.proof"))).unwrap()
}

#[test]
fn every_fixture_proof_interprets_into_its_sequent() {
    let env = env();
    for name in ["axiom", "cut_axioms", "tensor", "cut_tensor", "plus", "cut_plus", "lolli", "units", "top"] {
        let p = proof(name);
        let seq = p.conclusion().unwrap();
        let games: Vec<_> = seq.iter().map(|f| interpret_formula(f, &env).unwrap()).collect();
        let s = interpret_proof(&p, &env).unwrap();
        s.check().unwrap();
        assert_eq!(*s.target, sequent_game(&games).unwrap(), "{name}");
        assert_eq!(s.source.support.edge_count(), 0, "{name}");
    }
}

#[test]
fn cuts_interpret_like_their_cut_free_forms() {
    let env = env();
    for (cut, free) in [("cut_axioms", "axiom"), ("cut_tensor", "tensor"), ("cut_plus", "plus")] {
        let (pc, pf) = (proof(cut), proof(free));
        assert!(pc.contains_cut() && !pf.contains_cut());
        let sc = interpret_proof(&pc, &env).unwrap();
        let sf = interpret_proof(&pf, &env).unwrap();
        assert!(strategy_iso(&sc, &sf).is_some(), "{cut} vs {free}");
    }
}

#[test]
fn axiom_is_copycat_on_the_atom() {
    let s = interpret_proof(&proof("axiom"), &env()).unwrap();
    assert_eq!(s.support().edge_count(), 1);
    assert_eq!(s.lambda_word(0), "O_t·P_t");
}

#[test]
fn proofs_round_trip_through_the_printer() {
    for name in ["axiom", "cut_axioms", "tensor", "cut_tensor", "plus", "cut_plus", "lolli", "units", "top"] {
        let p = proof(name);
        assert_eq!(parse_proof(&p.to_string()).unwrap(), p, "{name}");
    }
}

#[test]
fn gray_interaction_of_the_deadlock_is_empty_play() {
    let (s, t) = (strategy("deadlock_sigma.json"), strategy("deadlock_tau.json"));
    let set = interaction_intersection(&s, &t, Style::Gray).unwrap();
    assert_eq!(render_set(&set), "{ε}");
}

#[test]
fn cartesian_interaction_of_the_deadlock_contains_both_moves() {
    let (s, t) = (strategy("deadlock_sigma.json"), strategy("deadlock_tau.json"));
    let set = interaction_intersection(&s, &t, Style::Cartesian).unwrap();
    assert!(set.contains(&Trajectory::Pair("m".into(), "n".into())), "{}", render_set(&set));
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["a", "b", "c", "x1"]).prop_map(Formula::atom),
        Just(Formula::One),
        Just(Formula::Bot),
        Just(Formula::Top),
        Just(Formula::Zero),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::tensor(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::par(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::lollipop(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::with(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::plus(a, b)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn parse_inverts_print(f in formula()) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn dual_is_an_involution(f in formula()) {
        prop_assert!(f.dual().dual().equivalent(&f));
        prop_assert!(Formula::neg(f.clone()).equivalent(&f.dual()));
    }
}

#[test]
fn env_games_are_shared() {
    let env = env();
    let a = env.get("a").unwrap();
    assert!(Arc::ptr_eq(a, env.get("a").unwrap()));
}
