use std::process::Command;

use serde_json::Value;

fn tortkara(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tortkara")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

const GRID_1: &str = concat!(
    "++++++++++++++++++++++++",
    "------------------------",
    "------++++++--++-+--++-+",
    "------++++++++--+---+++-",
    "------++++++++--+-++---+",
);

#[test]
fn sanity_passes() {
    let (code, out, _) = tortkara(&["sanity"]);
    assert_eq!(code, 0);
    assert!(out.contains("arity-3 expansion nullity: 0"));
}

#[test]
fn expand_prints_the_sign_string() {
    let (code, out, _) = tortkara(&["expand", "[[a,b,c],d,e]"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), GRID_1);
    let (_, swapped, _) = tortkara(&["expand", "[[b,a,c],d,e]"]);
    let negated: String = GRID_1.chars().map(|c| if c == '+' { '-' } else { '+' }).collect();
    assert_eq!(swapped.trim(), negated);
}

#[test]
fn expand_rejects_bad_monomials() {
    let (code, _, err) = tortkara(&["expand", "[a,b]"]);
    assert_eq!(code, 1);
    assert!(err.contains("position 0"), "{err}");
    let (code, _, err) = tortkara(&["expand", "[a,b,[c,d,e]"]);
    assert_eq!(code, 1);
    assert!(err.contains("parse error"), "{err}");
}

#[test]
fn znf_of_a_product() {
    let (code, out, _) = tortkara(&["znf", "(ab)c"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "a(bc) +a(cb)");
}

#[test]
fn arity5_json_report() {
    let (code, out, _) = tortkara(&["arity5", "--format", "json"]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["command"], "arity5");
    assert_eq!(doc["report"]["nullity"], 30);
    assert_eq!(doc["report"]["tt_terms"], 14);
    assert_eq!(doc["report"]["character"], serde_json::json!([30, -6, 2, 0, 0, 0, 0]));
}

#[test]
fn output_is_deterministic() {
    let a = tortkara(&["arity5", "--threads", "1"]);
    let b = tortkara(&["arity5", "--threads", "4"]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
}

#[test]
fn rep_row_with_printed_values() {
    let (code, out, _) = tortkara(&["rep", "--arity", "7", "--partition", "4,2,1"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    let nums = |l: &str| l.split_whitespace().skip(1).map(|x| x.parse::<usize>().unwrap()).collect::<Vec<_>>();
    assert_eq!(nums(lines[1]), vec![35, 172, 193, 194, 15, 195]);
    assert_eq!(nums(lines[1]), nums(lines[2]));
}

#[test]
fn rep_rejects_mismatched_arity() {
    let (code, _, err) = tortkara(&["rep", "--arity", "5", "--partition", "421"]);
    assert_eq!(code, 1);
    assert!(err.contains("arity mismatch"), "{err}");
}

#[test]
fn unknown_command_prints_usage() {
    let (code, _, err) = tortkara(&["frobnicate"]);
    assert_eq!(code, 2);
    assert!(err.contains("Usage"), "{err}");
}

#[test]
fn invalid_flags_are_usage_errors() {
    assert_eq!(tortkara(&["arity5", "--prime", "100"]).0, 2);
    assert_eq!(tortkara(&["arity5", "--delta", "1/5"]).0, 2);
    assert_eq!(tortkara(&["arity5", "--format", "yaml"]).0, 2);
}

#[test]
fn dump_matrix_round_trips() {
    let dir = std::env::temp_dir().join(format!("tortkara-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("e5.txt");
    let p = path.to_str().unwrap();
    let (code, _, err) = tortkara(&["sanity", "--dump-matrix", p, "--matrix", "e5"]);
    assert_eq!(code, 0, "{err}");
    let dump = tortkara::linalg::dump::read_matrix(std::io::BufReader::new(std::fs::File::open(&path).unwrap())).unwrap();
    assert_eq!((dump.rows, dump.cols, dump.modulus), (120, 90, 0));
    let e5 = tortkara::expansion::ExpansionMatrix::new(5).unwrap();
    assert_eq!(dump.data[7][3], e5.entry(7, 3) as i64);
    let (code, _, _) = tortkara(&["sanity", "--dump-matrix", p, "--matrix", "nope"]);
    assert_eq!(code, 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_bundled_relation() {
    let (code, out, err) = tortkara(&["verify-figure2", "--format", "json"]);
    assert_eq!(code, 0, "{err}");
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["report"]["terms"], 60);
    assert_eq!(doc["report"]["rank_with_relation"], 4900);
    assert_eq!(doc["report"]["expansion_zero"], true);
}

#[test]
fn library_entry_point_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = tortkara_cli::main_with(["tortkara", "znf", "a(bc)"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap().trim(), "a(bc)");
}
