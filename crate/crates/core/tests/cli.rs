mod common;

use common::{cli_invocations, run_cli};

#[test]
fn exit_codes_follow_the_convention() {
    for (args, code) in cli_invocations() {
        let (got, _, err) = run_cli(&args);
        assert_eq!(got, code, "{args:?}: {}", String::from_utf8_lossy(&err));
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    for (args, _) in cli_invocations() {
        assert_eq!(run_cli(&args), run_cli(&args), "{args:?}");
    }
}

#[test]
fn json_output_has_sorted_keys() {
    for (args, _) in cli_invocations() {
        let (_, out, err) = run_cli(&args);
        for bytes in [out, err] {
            let text = String::from_utf8(bytes).unwrap();
            if let Ok(v) = serde_json::from_str::<serde_json::Value>(&text) {
                assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text, "{args:?}");
            }
        }
    }
}

#[test]
fn gray_interaction_prints_the_empty_trajectory() {
    let (_, out, _) = run_cli(&["interact", "deadlock_sigma.json", "deadlock_tau.json", "--style", "gray"]);
    assert_eq!(String::from_utf8(out).unwrap(), "intersection: {ε}\n");
}

#[test]
fn json_diagnostics_locate_syntax_errors() {
    let (code, out, err) = run_cli(&["--format", "json", "interpret", "--formula", "a * (b", "--env", "env.json"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    let v: serde_json::Value = serde_json::from_slice(&err).unwrap();
    assert_eq!(v["error"]["kind"], "syntax");
    assert_eq!(v["error"]["line"], 1);
}

#[test]
fn failed_validation_names_the_violation() {
    let (code, out, _) = run_cli(&["--format", "json", "validate", "bad_symmetry.json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(v["ok"], false);
    assert_eq!(v["violations"][0]["kind"], "symmetry");
}
