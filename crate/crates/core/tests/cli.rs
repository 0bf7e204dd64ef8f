use std::process::Command;

use jsonschema::JSONSchema;
use serde_json::Value;

use seqlab::cli::{execute, Outcome, EXIT_NEGATIVE, EXIT_PASS, EXIT_USAGE};
use seqlab::realize::FiniteMap;

fn run(args: &[&str]) -> Outcome {
    execute(std::iter::once("seqlab").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    assert!(out.code != EXIT_USAGE, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", out.stdout))
}

fn schema() -> JSONSchema {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.schema.json")).unwrap();
    let doc: Value = serde_json::from_str(&text).unwrap();
    JSONSchema::compile(&doc).expect("schema compiles")
}

#[test]
fn gen_matches_listed_terms() {
    let v = json(&["gen", "apery1", "1..5"]);
    let terms: Vec<&str> = v["result"]["terms"].as_array().unwrap().iter().map(|t| t[1].as_str().unwrap()).collect();
    assert_eq!(terms, ["5", "73", "1445", "33001", "819005"]);
    assert_eq!(run(&["gen", "delannoy", "1..2", "--format", "bfile"]).stdout, "1 3\n2 13\n");
    assert_eq!(run(&["gen", "catalan", "0..5", "--format", "bfile"]).stdout, "0 1\n1 1\n2 2\n3 5\n4 14\n5 42\n");
}

#[test]
fn check_exit_codes() {
    assert_eq!(run(&["check", "apery1", "--N", "64"]).code, EXIT_PASS);
    assert_eq!(run(&["check", "const1", "--N", "10"]).code, EXIT_PASS);
    let catalan = json(&["check", "catalan", "--N", "64"]);
    let failures: Vec<u64> =
        catalan["result"]["dold_failures"].as_array().unwrap().iter().map(|f| f["n"].as_u64().unwrap()).collect();
    for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61] {
        assert!(failures.contains(&p), "prime {p} missing from {failures:?}");
    }
    assert_eq!(run(&["check", "catalan", "--N", "64"]).code, EXIT_NEGATIVE);
    assert_eq!(run(&["check", "nope"]).code, EXIT_USAGE);
    assert_eq!(run(&["gen", "apery1", "9..1"]).code, EXIT_USAGE);
}

#[test]
fn fail_reports_registry_value() {
    let v = json(&["fail", "fib-squares", "--N", "40"]);
    assert_eq!(v["result"]["lower_bound"]["value"], "5");
    assert_eq!(v["result"]["certified_exact"], true);
    assert_eq!(run(&["fail", "two-term:a=1,b=0", "--N", "10"]).code, EXIT_NEGATIVE);
}

#[test]
fn witness_catalan_to_200() {
    let v = json(&["witness", "catalan", "--primes", "200"]);
    let ws = v["result"]["witnesses"].as_array().unwrap();
    assert_eq!(ws.len(), 46);
    assert!(ws.iter().all(|w| w["residue"] == 1));
    assert_eq!(run(&["witness", "catalan", "--primes", "200"]).code, EXIT_PASS);
}

#[test]
fn realize_writes_map_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lucas.map");
    let out = run(&["realize", "lucas", "--N", "8", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);
    assert!(out.stdout.contains("self-verify: pass"));
    // orbit counts c(n) = (μ∗L)(n)/n for n <= 8 sum to 1+1+1+1+2+2+4+5 weighted by n
    let expected: usize = [1, 1, 1, 1, 2, 2, 4, 5].iter().enumerate().map(|(i, c)| (i + 1) * c).sum();
    let map = FiniteMap::parse_text(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(map.size(), expected);
    assert_eq!(run(&["realize", "catalan", "--N", "4"]).code, EXIT_NEGATIVE);
}

#[test]
fn congruence_grid_file_and_contracts() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cells.txt");
    std::fs::write(&path, "# spec n p m\napery1 1 3 1\ndomb 1 5 1\nzagier 2 3 1\n").unwrap();
    let v = json(&["congruence", "sporadic-mod-p2m", "--grid-file", path.to_str().unwrap()]);
    let cells = v["result"]["results"].as_array().unwrap();
    assert_eq!(cells.len(), 3);
    assert!(cells.iter().all(|c| c["witness"]["holds"] == true));
    assert_eq!(run(&["congruence", "d-mod-p3m", "--spec", "domb", "--primes", "5,7"]).code, EXIT_PASS);
    assert_eq!(run(&["congruence", "d-mod-p3m", "--spec", "domb", "--primes", "3"]).code, EXIT_USAGE);
    assert_eq!(run(&["congruence", "sporadic-mod-p2m", "--spec", "delannoy"]).code, EXIT_USAGE);
    assert_eq!(run(&["congruence", "no-such-claim"]).code, EXIT_USAGE);
}

#[test]
fn oeis_verify_offline() {
    assert_eq!(run(&["oeis-verify", "lucas"]).code, EXIT_PASS);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b000032.txt");
    std::fs::write(&path, "# shifted\n0 1\n1 3\n2 4\n3 7\n4 11\n5 18\n6 29\n7 47\n8 76\n9 123\n10 199\n11 322\n12 521\n").unwrap();
    let v = json(&["oeis-verify", "lucas", "--bfile", path.to_str().unwrap(), "--terms", "12"]);
    assert_eq!(v["result"]["verdict"], "probable-offset-error");
    assert_eq!(run(&["oeis-verify", "lucas", "--bfile", path.to_str().unwrap(), "--terms", "12"]).code, EXIT_NEGATIVE);
}

#[test]
fn output_is_byte_identical_across_job_counts() {
    for args in [
        vec!["check", "domb", "--N", "48"],
        vec!["congruence", "a-mod-pm"],
        vec!["witness", "motzkin", "--primes", "60"],
    ] {
        let mut one = args.clone();
        one.extend(["--format", "json", "--jobs", "1"]);
        let mut four = args.clone();
        four.extend(["--format", "json", "--jobs", "4"]);
        assert_eq!(run(&one), run(&four), "{args:?}");
    }
}

#[test]
fn every_report_validates_against_schema() {
    let schema = schema();
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.map");
    let runs: Vec<Vec<&str>> = vec![
        vec!["gen", "catalan", "0..5"],
        vec!["check", "catalan", "--N", "20"],
        vec!["check", "apery1", "--N", "20"],
        vec!["fail", "stirling2:k=4", "--N", "30"],
        vec!["fail", "two-term:a=1,b=0", "--N", "10"],
        vec!["congruence", "helou-terjanian"],
        vec!["congruence", "d-mod-pm", "--spec", "domb"],
        vec!["witness", "derangements", "--primes", "20"],
        vec!["witness", "lucas", "--primes", "30", "--predicate", "nonzero"],
        vec!["realize", "mersenne", "--N", "6", "--out", out.to_str().unwrap()],
        vec!["oeis-verify", "apery1"],
    ];
    for args in runs {
        let v = json(&args);
        if let Err(errors) = schema.validate(&v) {
            let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
            panic!("{args:?} violates schema: {msgs:#?}");
        }
        assert_eq!(v["schema_version"], "1");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_seqlab");
    let code = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(code(&["check", "apery1", "--N", "16"]), Some(0));
    assert_eq!(code(&["check", "catalan", "--N", "16"]), Some(1));
    assert_eq!(code(&["check"]), Some(2));
    let out = Command::new(bin).args(["gen", "catalan", "0..3", "--format", "bfile"]).output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0 1\n1 1\n2 2\n3 5\n");
}
