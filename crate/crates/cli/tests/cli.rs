use std::io::Write;
use std::process::{Command, Stdio};

use permrep_cli::{run, EXIT_DOMAIN, EXIT_LIMIT, EXIT_OK};
use serde_json::Value;

fn cli_with_input(args: &[&str], input: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("permrep").chain(args.iter().copied());
    let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn cli(args: &[&str]) -> (i32, String, String) {
    cli_with_input(args, "")
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = cli(args);
    assert_eq!(code, EXIT_OK, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn power_set_character() {
    let (code, out, err) = cli(&["char", "--rep", "powerset", "--type", "[2^2]"]);
    assert_eq!((code, out.as_str(), err.as_str()), (EXIT_OK, "4\n", ""));
}

#[test]
fn big_characters_stay_exact() {
    let (_, out, _) = cli(&["char", "--rep", "tuples:20", "--type", "[1^20]"]);
    assert_eq!(out.trim(), "2432902008176640000");
    let (_, out, _) = cli(&["char", "--rep", "powerset", "--type", "[1^80]"]);
    assert_eq!(out.trim(), (num_bigint::BigUint::from(1u8) << 80u32).to_string());
}

#[test]
fn triplet_scan_lists_the_involution_pair() {
    let report = json(&["scan", "--n", "4", "--rep", "tuples:3"]);
    assert_eq!(report["verdict"], "unites");
    let pairs = report["united_pairs"].as_array().unwrap();
    assert!(pairs.iter().any(|p| p[0] == "[1^2,2]" && p[1] == "[2^2]"));
    let fast = json(&["scan", "--n", "4", "--rep", "tuples:3", "--mode", "almost-similar"]);
    assert_eq!(fast["verdict"], "unites");
}

#[test]
fn recover_rejects_non_permutation_matrices() {
    let (code, out, err) = cli_with_input(&["recover"], "2 2 2\n1 1\n0 1\n");
    assert_eq!(code, EXIT_DOMAIN);
    assert!(out.is_empty());
    assert!(err.contains("consistency failure"), "{err}");
}

#[test]
fn recover_round_trips_parse_output() {
    let (code, matrix, _) = cli(&["parse", "(1 2 3)(4 5)", "--n", "7", "--field", "GF(5)", "--format", "text"]);
    assert_eq!(code, EXIT_OK);
    let (code, out, _) = cli_with_input(&["recover", "-"], &matrix);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["cycle_type"], "[1^2,2,3]");
    let ks: Vec<u64> = v["queries"].as_array().unwrap().iter().map(|q| q["k"].as_u64().unwrap()).collect();
    assert!(ks.contains(&1) && ks.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn character_table_as_csv() {
    let (code, out, _) = cli(&["char", "--table", "--n", "3", "--rep", "natural"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "class,order,value\n[3],3,0\n\"[1,2]\",2,1\n[1^3],1,3\n");
    let v = json(&["char", "--table", "--n", "3", "--rep", "natural", "--format", "json"]);
    assert_eq!(v["column"][2]["value"], 3);
}

#[test]
fn generating_function_text() {
    let (_, out, _) = cli(&["gen-fn", "--type", "[1^2,2]", "--format", "text"]);
    assert_eq!(out, "1 + 2t + 2t^2 + 2t^3 + t^4\n");
    let v = json(&["gen-fn", "--type", "[2^3]"]);
    assert_eq!(v["at_one"], 8);
    assert_eq!(v["at_minus_one"], 8);
}

#[test]
fn permutation_commands() {
    let v = json(&["parse", "2 3 1 4"]);
    assert_eq!(v["cycles"], "(1 2 3)");
    assert_eq!(v["cycle_type"], "[1,3]");
    let (_, out, _) = cli(&["cycle-type", "(1 2)(3 4 5)", "--format", "text"]);
    assert_eq!(out, "[2,3]\n");
    let (_, out, _) = cli_with_input(&["power", "--k", "2", "--format", "text"], "(1 2 3 4)\n");
    assert_eq!(out, "(1 3)(2 4)\n");
    let (_, out, _) = cli(&["power", "--type", "[6]", "--k", "4", "--format", "text"]);
    assert_eq!(out, "[3^2]\n");
}

#[test]
fn induced_permutation_and_limits() {
    let v = json(&["induced", "(1 2)", "--n", "3", "--rep", "subsets:2"]);
    assert_eq!(v["cycle_type"], "[1,2]");
    assert_eq!(v["fixed_points"], 1);
    assert_eq!(v["character"], 1);
    let (code, _, err) = cli(&["induced", "(1 2)", "--n", "9", "--rep", "tuples:9", "--limit", "100"]);
    assert_eq!(code, EXIT_LIMIT);
    assert!(err.contains("limit"));
    let (code, _, _) = cli(&["alpha-verify", "--n", "3", "--p", "3", "--limit", "10"]);
    assert_eq!(code, EXIT_LIMIT);
}

#[test]
fn domain_errors_exit_one() {
    for args in [
        vec!["parse", "(1 2)(2 3)"],
        vec!["parse", "(1 9)", "--n", "3"],
        vec!["char", "--rep", "tuples:5", "--type", "[2]"],
        vec!["char", "--rep", "natural", "--type", "[2]", "--n", "3"],
        vec!["scan", "--n", "3", "--rep", "nonsense"],
        vec!["parse", "(1 2)", "--format", "csv"],
        vec!["no-such-command"],
    ] {
        let (code, out, err) = cli(&args);
        assert_eq!(code, EXIT_DOMAIN, "{args:?}");
        assert!(out.is_empty() && !err.is_empty(), "{args:?}");
    }
}

#[test]
fn similarity_of_matrix_files() {
    let dir = std::env::temp_dir().join(format!("permrep-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let write = |name: &str, text: &str| {
        let path = dir.join(name);
        std::fs::write(&path, text).unwrap();
        path.to_string_lossy().into_owned()
    };
    let a = write("a.txt", "2 2 2\n0 1\n1 0\n");
    let b = write("b.txt", "2 2 2\n1 1\n0 1\n");
    let c = write("c.txt", "2 2 2\n1 0\n0 1\n");
    assert_eq!(json(&["similar", &a, &b])["similar"], true);
    assert_eq!(json(&["similar", &a, &c])["similar"], false);
    let q = write("q.txt", &format!("0 13 13\n{}", "0 0 0 0 0 0 0 0 0 0 0 0 0\n".repeat(13)));
    let (code, _, err) = cli(&["similar", &q, &q]);
    assert_eq!(code, EXIT_OK);
    assert!(err.contains("warning"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn alpha_verify_report() {
    let v = json(&["alpha-verify", "--n", "3", "--p", "2", "--set", "full-gl"]);
    assert_eq!(v["members"], 168);
    assert_eq!(v["pass"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 9);
}

#[test]
fn binary_uses_process_streams() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_permrep"))
        .args(["cycle-type", "--format", "text"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"(1 2 3)(4 5)\n").unwrap();
    let output = child.wait_with_output().unwrap();
    assert!(output.status.success());
    assert_eq!(String::from_utf8(output.stdout).unwrap(), "[2,3]\n");

    let output = Command::new(env!("CARGO_BIN_EXE_permrep"))
        .args(["induced", "(1 2)", "--n", "9", "--rep", "tuples:9", "--limit", "5"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(EXIT_LIMIT));
    assert!(output.stdout.is_empty());
}
