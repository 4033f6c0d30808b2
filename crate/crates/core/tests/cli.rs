//! Command-line behaviour: exit codes, report contents, determinism and
//! scenario round trips.

use std::process::Command;

use info_exchange::cli::{
    emit_scenario, generate, parse_scenario, run_with, GenSpec, Kind, Scenario, ValueKind, EXIT_OK,
    EXIT_USAGE, EXIT_VIOLATION,
};
use serde_json::Value;

const COMPUTE_V: &str = r#"{
  "kind": "set-union",
  "universe": ["a", "b", "c", "d", "e", "f"],
  "sets": [["a"], ["b", "c"], ["d", "e", "f"]]
}"#;

const CASE_ONE: &str = r#"{
  "kind": "set-union",
  "universe": ["1", "2", "3", "4", "5", "6"],
  "sets": [["1", "2", "3", "4"], ["1", "2", "5"], ["3", "6"]]
}"#;

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("info-exchange").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn with_file(text: &str) -> tempfile::NamedTempFile {
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(file.path(), text).unwrap();
    file
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| {
            x.as_str()
                .map(str::to_string)
                .unwrap_or_else(|| x.to_string())
        })
        .collect()
}

fn verdicts(report: &Value) -> Vec<(String, String)> {
    report["properties"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            (
                p["property"].as_str().unwrap().to_string(),
                p["verdict"].as_str().unwrap().to_string(),
            )
        })
        .collect()
}

#[test]
fn run_multiparty_on_the_compute_v_scenario() {
    let file = with_file(COMPUTE_V);
    let (code, out, _) = cli(&["run", "--scenario", file.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let report = json(&out);
    assert_eq!(report["mechanism"], "multiparty-aon");
    assert_eq!(strings(&report["benefits"]), ["4", "4", "3"]);
    assert_eq!(report["trace"]["value"], 4);
    assert_eq!(strings(&report["utilities"]), ["0", "0", "-1"]);
}

#[test]
fn run_average_on_three_points() {
    let file = with_file(r#"{"kind": "average", "points": ["0", "1", "2"]}"#);
    let (code, out, _) = cli(&["run", "--scenario", file.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let report = json(&out);
    assert_eq!(strings(&report["benefits"]), ["1", "0", "1"]);
    assert_eq!(strings(&report["utilities"]), ["0", "-1", "0"]);
}

#[test]
fn pareto_repair_leaves_case_one_alone() {
    let file = with_file(CASE_ONE);
    let path = file.path().to_str().unwrap();
    let (code, plain, _) = cli(&["run", "--scenario", path, "--mechanism", "three-party"]);
    assert_eq!(code, EXIT_OK);
    let (code, repaired, _) = cli(&[
        "run",
        "--scenario",
        path,
        "--mechanism",
        "three-party",
        "--pareto-repair",
    ]);
    assert_eq!(code, EXIT_OK);
    let (plain, repaired) = (json(&plain), json(&repaired));
    assert_eq!(plain["outputs"], repaired["outputs"]);
    assert_eq!(strings(&repaired["benefits"]), ["2", "2", "2"]);
    assert_eq!(repaired["mechanism"], "three-party+pareto-repair");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let file = with_file(COMPUTE_V);
    let path = file.path().to_str().unwrap();
    for args in [
        vec!["run", "--scenario", path],
        vec!["verify", "--scenario", path],
        vec![
            "verify",
            "--kind",
            "interval",
            "--players",
            "4",
            "--count",
            "30",
            "--seed",
            "5",
        ],
        vec![
            "verify",
            "--kind",
            "general",
            "--players",
            "4",
            "--value",
            "monotone",
            "--count",
            "20",
        ],
    ] {
        let first = cli(&args);
        for _ in 0..3 {
            assert_eq!(cli(&args), first, "{args:?}");
        }
    }
}

#[test]
fn verify_sweep_of_multiparty_passes() {
    let (code, out, _) = cli(&[
        "verify",
        "--kind",
        "set-union",
        "--players",
        "4",
        "--elements",
        "8",
        "--count",
        "500",
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    let report = json(&out);
    assert!(verdicts(&report).iter().all(|(_, v)| v == "pass"));
    // four players exceed the Pareto oracle, which the report says
    let pareto = &report["properties"][1];
    assert_eq!(pareto["property"], "pareto");
    assert!(pareto["note"]
        .as_str()
        .unwrap()
        .contains("structural check only"));
    let (strict, _, _) = cli(&[
        "verify",
        "--kind",
        "set-union",
        "--players",
        "4",
        "--elements",
        "8",
        "--count",
        "500",
        "--strict",
    ]);
    assert_eq!(strict, EXIT_VIOLATION);
}

#[test]
fn verify_flags_a_broken_mechanism() {
    let (code, out, _) = cli(&[
        "verify",
        "--kind",
        "set-union",
        "--players",
        "3",
        "--elements",
        "5",
        "--count",
        "50",
        "--mechanism",
        "favor-first",
        "--properties",
        "truthful-aon",
    ]);
    assert_eq!(code, EXIT_VIOLATION);
    let report = json(&out);
    let prop = &report["properties"][0];
    assert_eq!(prop["verdict"], "fail");
    assert_eq!(prop["counterexample"]["kind"], "participation");
}

#[test]
fn verify_phi_inequality_on_monotone_tables() {
    let (code, out, _) = cli(&[
        "verify",
        "--kind",
        "general",
        "--players",
        "5",
        "--value",
        "monotone",
        "--count",
        "200",
        "--properties",
        "phi-inequality",
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(
        json(&out)["properties"][0]["instances_checked"]
            .as_u64()
            .unwrap()
            > 0
    );
}

#[test]
fn verify_on_the_compute_v_scenario_reports_the_pareto_gap() {
    let file = with_file(COMPUTE_V);
    let (code, out, _) = cli(&[
        "verify",
        "--scenario",
        file.path().to_str().unwrap(),
        "--properties",
        "pareto",
    ]);
    assert_eq!(code, EXIT_VIOLATION);
    let prop = &json(&out)["properties"][0];
    assert_eq!(
        prop["counterexample"]["benefits"],
        serde_json::json!([4, 4, 3])
    );
}

#[test]
fn usage_errors_exit_two() {
    let scenario = with_file(COMPUTE_V);
    let path = scenario.path().to_str().unwrap();
    let bad = with_file(
        r#"{"kind": "interval", "target": "9/2", "intervals": [["4", "5"], ["5", "6"]]}"#,
    );
    let broken =
        with_file("{\"kind\": \"set-union\",\n  \"universe\": [\"a\"],\n  \"sets\": [[\"a\"]\n");
    let cases: Vec<Vec<&str>> = vec![
        vec![],
        vec!["frobnicate"],
        vec!["run"],
        vec!["run", "--scenario", "/nonexistent/scenario.json"],
        vec!["run", "--scenario", path, "--mechanism", "average"],
        vec!["run", "--scenario", path, "--pareto-repair"],
        vec![
            "verify",
            "--scenario",
            path,
            "--properties",
            "phi-inequality",
        ],
        vec!["verify", "--scenario", path, "--kind", "set-union"],
        vec!["verify"],
        vec!["run", "--scenario", bad.path().to_str().unwrap()],
        vec!["run", "--scenario", broken.path().to_str().unwrap()],
        vec!["gen", "--kind", "set-union", "--players", "0"],
    ];
    for args in cases {
        let (code, _, err) = cli(&args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
    let (_, _, err) = cli(&["run", "--scenario", bad.path().to_str().unwrap()]);
    assert!(err.contains("intervals[1]"), "{err}");
    let (_, _, err) = cli(&["run", "--scenario", broken.path().to_str().unwrap()]);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("verify"));
}

#[test]
fn gen_set_union_is_pinned() {
    let (code, out, _) = cli(&[
        "gen",
        "--kind",
        "set-union",
        "--players",
        "3",
        "--elements",
        "6",
        "--seed",
        "42",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, include_str!("fixtures/set_union_n3_m6_seed42.json"));
    let doc = json(&out);
    assert_eq!(doc["universe"].as_array().unwrap().len(), 6);
    assert_eq!(doc["sets"].as_array().unwrap().len(), 3);
}

#[test]
fn gen_interval_contains_the_target() {
    let (code, out, _) = cli(&["gen", "--kind", "interval", "--players", "4", "--seed", "7"]);
    assert_eq!(code, EXIT_OK);
    let Scenario::Interval { instance, .. } = parse_scenario(&out).unwrap() else {
        panic!("not an interval scenario");
    };
    assert_eq!(instance.players(), 4);
    assert!(instance
        .intervals()
        .iter()
        .all(|x| x.contains(instance.target())));
}

#[test]
fn gen_general_uses_coverage() {
    let (code, out, _) = cli(&[
        "gen",
        "--kind",
        "general",
        "--players",
        "3",
        "--value",
        "coverage",
        "--seed",
        "1",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(json(&out)["value"]["coverage"].is_object());
    let Scenario::General {
        value, coverage, ..
    } = parse_scenario(&out).unwrap()
    else {
        panic!("not a general scenario");
    };
    let coverage = coverage.expect("coverage instance kept");
    // V(N) is the size of the union
    let union = coverage.true_sets().iter().fold(0u128, |a, x| a | x.bits());
    let all = info_exchange::model::PlayerSet::all(3);
    assert_eq!(
        value.value(all),
        &info_exchange::model::rational::int(union.count_ones() as i64)
    );
}

#[test]
fn gen_writes_to_out_and_run_reads_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scenario.json");
    let (code, out, _) = cli(&[
        "gen",
        "--kind",
        "average",
        "--players",
        "4",
        "--seed",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!((code, out.as_str()), (EXIT_OK, ""));
    let text = std::fs::read_to_string(&path).unwrap();

    let binary = env!("CARGO_BIN_EXE_info-exchange");
    let mut child = Command::new(binary)
        .args(["run", "--scenario", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child
        .stdin
        .take()
        .unwrap()
        .write_all(text.as_bytes())
        .unwrap();
    let output = child.wait_with_output().unwrap();
    assert!(output.status.success());
    let (_, expected, _) = cli(&["run", "--scenario", path.to_str().unwrap()]);
    assert_eq!(String::from_utf8(output.stdout).unwrap(), expected);
}

#[test]
fn binary_exit_codes() {
    let binary = env!("CARGO_BIN_EXE_info-exchange");
    let file = with_file(COMPUTE_V);
    let path = file.path().to_str().unwrap();
    let status = |args: &[&str]| {
        Command::new(binary)
            .args(args)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(status(&["run", "--scenario", path]), Some(0));
    assert_eq!(
        status(&["verify", "--scenario", path, "--properties", "pareto"]),
        Some(1)
    );
    assert_eq!(
        status(&[
            "verify",
            "--scenario",
            path,
            "--properties",
            "truthful-aon,symmetry"
        ]),
        Some(0)
    );
    assert_eq!(
        status(&["run", "--scenario", path, "--mechanism", "nope"]),
        Some(2)
    );
}

#[test]
fn generated_scenarios_round_trip() {
    let specs = [
        (Kind::SetUnion, ValueKind::Coverage),
        (Kind::Interval, ValueKind::Coverage),
        (Kind::Average, ValueKind::Coverage),
        (Kind::General, ValueKind::Coverage),
        (Kind::General, ValueKind::Monotone),
        (Kind::General, ValueKind::TotallyMonotone),
    ];
    for (kind, value) in specs {
        for seed in 0..100 {
            let spec = GenSpec {
                kind,
                players: 1 + seed as usize % 5,
                elements: seed as usize % 9,
                value,
            };
            let scenario = generate(&spec, seed).unwrap();
            let text = emit_scenario(&scenario);
            let back = parse_scenario(&text).unwrap();
            assert_eq!(back, scenario, "{kind:?} seed {seed}");
            assert_eq!(emit_scenario(&back), text);
            assert_eq!(generate(&spec, seed).unwrap(), scenario);
        }
    }
}
