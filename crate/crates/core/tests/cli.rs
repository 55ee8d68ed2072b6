use std::path::PathBuf;
use std::process::Command;

use dnacode::cli::run;
use dnacode::text::parse_sequences;
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn dnacode(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["dnacode"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = dnacode(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn validate_exit_codes() {
    let e11 = fixture("example_1_1.txt");
    let (code, out, _) = dnacode(&["validate", "--kind", "deletion", "--distance", "1", "--dna", &e11]);
    assert_eq!(code, 0);
    assert!(out.starts_with("VALID"));

    let e33 = fixture("example_3_3.txt");
    let (code, _, _) = dnacode(&["validate", "--kind", "deletion", "--distance", "1", &e33]);
    assert_eq!(code, 1);
    let (code, _, _) =
        dnacode(&["validate", "--kind", "deletion", "--distance", "1", "--distance-only", &e33]);
    assert_eq!(code, 0);
}

#[test]
fn usage_and_parse_errors() {
    let (code, _, err) = dnacode(&["validate", "--kind", "gapped", "--distance", "1", "x"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "0101\n011\n").unwrap();
    let (code, _, err) = dnacode(&[
        "validate", "--kind", "block", "--distance", "1", "--q", "2",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");

    let (code, _, _) = dnacode(&["similarity", "--kind", "block", "--q", "3", &fixture("example_2_3.txt")]);
    assert_eq!(code, 2);
    let (code, _, _) = dnacode(&["tenengolts", "--q", "2", "--n", "4"]);
    assert_eq!(code, 2);
}

#[test]
fn search_reports_optimum() {
    let v = json(&["search", "--q", "2", "--n", "4", "--distance", "1", "--kind", "deletion", "--mode", "dna"]);
    assert_eq!(v["size"], 4);
    assert_eq!(v["optimal"], true);
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn critical_fraction_json() {
    let v = json(&["bounds", "critical", "--q", "4", "--kind", "deletion"]);
    let d = v["d_star"].as_f64().unwrap();
    assert!((d - 0.27029).abs() < 1e-4);
    let v = json(&["bounds", "critical", "--q", "8", "--kind", "block"]);
    assert_eq!(v["d_star"].as_f64().unwrap(), 0.5);
    assert_eq!(v["boundary"], true);
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = ["construct", "--theorem", "31", "--q", "4", "--n", "4"];
    let (_, a, _) = dnacode(&args);
    let (_, b, _) = dnacode(&args);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["achieved_size"], 34);
    assert_eq!(v["case_used"], "T31-odd-k");
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn emitted_codes_reparse_identically() {
    let dir = tempfile::tempdir().unwrap();
    for (q, theorem, digits) in [(4u8, "31", false), (4, "32", true), (2, "31", false)] {
        let path = dir.path().join(format!("code_{q}_{theorem}.txt"));
        let mut args = vec![
            "construct", "--theorem", theorem, "--q", if q == 4 { "4" } else { "2" },
            "--n", if q == 4 { "4" } else { "6" }, "--output", path.to_str().unwrap(),
        ];
        if digits {
            args.push("--digits");
        }
        let v = json(&args);
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed = parse_sequences(&text, q).unwrap();
        let listed: Vec<String> = v["code"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s.as_str().unwrap().to_string())
            .collect();
        let listed = parse_sequences(&listed.join("\n"), q).unwrap();
        assert_eq!(parsed, listed);
        assert_eq!(parsed.len() as u64, v["achieved_size"].as_u64().unwrap());
    }
}

#[test]
fn revcomp_and_similarity() {
    let (code, out, _) = dnacode(&["revcomp", &fixture("example_1_1.txt")]);
    assert_eq!(code, 0);
    assert_eq!(out, "ATGT\nACAT\nGTAT\nATAC\n");
    let v = json(&["similarity", "--kind", "deletion", "--format", "json", &fixture("example_1_1.txt")]);
    assert_eq!(v["matrix"][0][0], 4);
    assert_eq!(v["matrix"][0][1], 2);
    let (_, out, _) = dnacode(&["similarity", "--kind", "block", "--q", "2", "--format", "csv", &fixture("example_2_3.txt")]);
    assert_eq!(out.lines().count(), 5);
}

#[test]
fn enumerate_csv() {
    let (code, out, _) = dnacode(&["enumerate", "--q", "2", "--n", "2", "--kind", "block"]);
    assert_eq!(code, 0);
    assert_eq!(out, "s,pair_count,selfrc_count\n0,2,2\n1,10,0\n2,4,2\n");
}

#[test]
fn bounds_subcommands() {
    let v = json(&["bounds", "rate", "--q", "4", "--d", "0.1", "--kind", "deletion"]);
    assert!((v["value_f64"].as_f64().unwrap() - 0.4725).abs() < 1e-4);
    let v = json(&["bounds", "size", "--q", "2", "--n", "2", "--distance", "1", "--kind", "block"]);
    assert_eq!(v["vacuous"], true);
    assert_eq!(v["value"], "0");
    let v = json(&["bounds", "size", "--q", "2", "--n", "10", "--distance", "1", "--kind", "block", "--mode", "asymptotic"]);
    assert!((v["value_f64"].as_f64().unwrap() - 12.8).abs() < 1e-9);
    let v = json(&["bounds", "upper", "--q", "4", "--n", "4"]);
    assert_eq!(v["value"], "34");
    let v = json(&["bounds", "upper", "--q", "2", "--n", "4", "--distance", "2", "--bound", "hamming"]);
    assert_eq!(v["value"], "3");
    let (code, out, _) = dnacode(&["bounds", "curve", "--q", "2", "--kind", "block", "--from", "0.1", "--to", "0.2", "--steps", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 4);
    let (code, _, _) = dnacode(&["bounds", "rate", "--q", "4", "--d", "0.9", "--kind", "deletion"]);
    assert_eq!(code, 2);
}

#[test]
fn binary_honours_cap_override() {
    let bin = env!("CARGO_BIN_EXE_dnacode");
    let out = Command::new(bin)
        .args(["enumerate", "--q", "2", "--n", "4", "--kind", "block"])
        .env("DNACODE_ENUM_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(bin)
        .args(["enumerate", "--q", "2", "--n", "4", "--kind", "block"])
        .env_remove("DNACODE_ENUM_CAP")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}
