#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use asynch_games::asynch_graph::{graph_from_json, AsynchGraph, GraphBuilder};
use asynch_games::template::Strategy;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn graph(name: &str) -> AsynchGraph {
    graph_from_json(&read_fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn strategy(name: &str) -> Strategy {
    let v: serde_json::Value = serde_json::from_str(&read_fixture(name)).expect("fixture is json");
    Strategy::from_value(&v).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Builds a graph from `(src, tgt)` pairs over vertices `0..n`, without tiles.
pub fn raw_graph(n: usize, edges: &[(usize, usize)]) -> AsynchGraph {
    let mut b = GraphBuilder::new();
    let vs: Vec<_> = (0..n).map(|i| b.vertex(format!("v{i}")).unwrap()).collect();
    for (k, &(s, t)) in edges.iter().enumerate() {
        b.edge(format!("e{k}"), vs[s], vs[t], format!("l{k}")).unwrap();
    }
    b.build()
}

/// `x0 → x1 → … → xn`, edges labelled by `labels`.
pub fn line(labels: &[&str]) -> AsynchGraph {
    let mut b = GraphBuilder::new();
    let vs: Vec<_> = (0..=labels.len()).map(|i| b.vertex(format!("x{i}")).unwrap()).collect();
    for (k, l) in labels.iter().enumerate() {
        b.edge(format!("e{k}"), vs[k], vs[k + 1], *l).unwrap();
    }
    b.build()
}

pub fn arc(g: AsynchGraph) -> Arc<AsynchGraph> {
    Arc::new(g)
}

pub mod oracles;

/// One `agames` invocation: exit code, stdout and stderr.
pub fn run_cli(args: &[&str]) -> (i32, Vec<u8>, Vec<u8>) {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_agames"))
        .args(args)
        .current_dir(fixture(""))
        .output()
        .expect("agames runs");
    (out.status.code().unwrap_or(-1), out.stdout, out.stderr)
}

/// A spread of invocations touching every subcommand, paired with the
/// exit code each should produce.
pub fn cli_invocations() -> Vec<(Vec<&'static str>, i32)> {
    vec![
        (vec!["validate", "square.json"], 0),
        (vec!["--format", "json", "validate", "three_shuffle.json"], 0),
        (vec!["validate", "bad_cube.json"], 1),
        (vec!["--format", "json", "validate", "bad_determinism.json"], 1),
        (vec!["tensor", "game_a.json", "game_b.json"], 0),
        (vec!["compose", "chain_sigma.json", "chain_tau.json"], 0),
        (vec!["interact", "deadlock_sigma.json", "deadlock_tau.json", "--style", "gray"], 0),
        (vec!["--format", "json", "interact", "deadlock_sigma.json", "deadlock_tau.json", "--style", "cartesian"], 0),
        (vec!["interpret", "--formula", "a * b -o c", "--env", "env.json"], 0),
        (vec!["interpret", "--proof", "proofs/cut_axioms.proof", "--env", "env.json"], 0),
        (vec!["lawcheck", "--suite", "template"], 0),
        (vec!["--format", "json", "lawcheck", "--suite", "twocat"], 0),
        (vec!["export", "--dot", "square.json"], 0),
        (vec!["export", "--json", "chain_tau.json"], 0),
        (vec!["interpret", "--formula", "a * (b", "--env", "env.json"], 2),
        (vec!["--format", "json", "interpret", "--formula", "a * q", "--env", "env.json"], 2),
        (vec!["validate", "missing.json"], 2),
        (vec!["frobnicate"], 2),
    ]
}
