use std::path::PathBuf;
use std::process::Command;

use clifford_count::catalog;
use clifford_count::cli::run_command;

fn run(args: &[&str]) -> (String, i32) {
    let mut argv = vec!["clifford-count"];
    argv.extend_from_slice(args);
    run_command(&argv)
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("clifford-count-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn structured(args: &[&str]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.extend(["--format", "structured"]);
    let (out, code) = run(&a);
    assert_eq!(code, 0, "{out}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn count_real_check() {
    let (out, code) = run(&["count-real", "q8.group", "--normal", "Z", "--theta", "1", "--check"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("theorem: 1\noracle:  1\nPASS"), "{out}");
    let v = structured(&["count-real", "q8", "--normal", "Z", "--theta", "1", "--check"]);
    assert_eq!((v["result"]["theorem_value"].as_i64(), v["result"]["oracle_value"].as_i64()), (Some(1), Some(1)));
}

#[test]
fn epsilon_induced_check() {
    let (out, code) = run(&["epsilon-induced", "q8.group", "--normal", "Z", "--theta", "1", "--check"]);
    assert_eq!(code, 0);
    assert!(out.contains("theorem: -2\noracle:  -2"), "{out}");
}

#[test]
fn theorem_without_check_reports_theorem_only() {
    let v = structured(&["count-real", "gl23", "--normal", "Z", "--theta", "1"]);
    assert_eq!(v["result"]["theorem_value"], 1);
    assert!(v["result"].get("oracle_value").is_none());
}

#[test]
fn report_echoes_theta() {
    let v = structured(&["gow", "q8", "--normal", "Z", "--theta", "1"]);
    let theta = &v["result"]["theta"];
    assert_eq!(theta["index"], 1);
    assert_eq!(theta["degree"], "1");
    let displays: Vec<&str> = theta["values"].as_array().unwrap().iter().map(|x| x["display"].as_str().unwrap()).collect();
    assert_eq!(displays, vec!["1", "-1"]);
    assert_eq!(v["engine"], "clifford-count");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!((v["result"]["plus"].as_u64(), v["result"]["minus"].as_u64()), (Some(1), Some(3)));
}

#[test]
fn info_and_chartab() {
    let v = structured(&["info", "q8.group"]);
    assert_eq!(v["group"]["order"], 8);
    assert_eq!(v["group"]["normal_subgroups"][0]["name"], "Z");
    assert_eq!(v["group"]["normal_subgroups"][0]["order"], 2);
    let v = structured(&["chartab", "s3"]);
    let rows = v["result"]["irreducibles"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2]["values"][0]["display"], "2");
    assert_eq!(rows[2]["values"][0]["conductor"], 6);
    let (out, _) = run(&["chartab", "c3xx"]);
    assert!(out.starts_with("error:"));
}

#[test]
fn irr_over_and_good_classes() {
    let v = structured(&["irr-over", "gl23", "--normal", "Z", "--theta", "1"]);
    assert_eq!(v["result"]["characters"].as_array().unwrap().len(), 3);
    let v = structured(&["good-classes", "GL(2,3)", "--normal", "Z", "--theta", "1"]);
    assert_eq!(v["result"]["good"], 3);
    assert_eq!(v["result"]["signed_count"], 1);
}

#[test]
fn output_is_deterministic() {
    for fmt in ["text", "structured"] {
        let args = ["good-classes", "sd16", "--normal", "D8", "--theta", "4", "--format", fmt];
        let a = run(&args);
        let b = run(&args);
        let c = run(&[&args[..], &["--sequential"]].concat());
        assert_eq!(a, b);
        // the command echo differs, the payload must not
        if fmt == "text" {
            assert_eq!(a.0.lines().skip(1).collect::<Vec<_>>(), c.0.lines().skip(1).collect::<Vec<_>>());
        } else {
            let x: serde_json::Value = serde_json::from_str(&a.0).unwrap();
            let y: serde_json::Value = serde_json::from_str(&c.0).unwrap();
            assert_eq!(x["result"], y["result"]);
        }
    }
}

#[test]
fn input_errors_exit_2() {
    let dup = temp_file(
        "dup.group",
        r#"{"name":"bad","presentation":"permutation","degree":3,"generators":[[2,3,1],[1,1,3]]}"#,
    );
    let (out, code) = run(&["info", dup.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("generator 2") && out.contains("positions 1 and 2"), "{out}");

    let bad_json = temp_file("bad.group", "{ not json");
    assert_eq!(run(&["info", bad_json.to_str().unwrap()]).1, 2);

    let not_normal = temp_file(
        "nn.group",
        r#"{"name":"S3","presentation":"permutation","degree":3,"generators":[[2,3,1],[2,1,3]],
            "normal_subgroups":[{"name":"T","generators":[[2]]}]}"#,
    );
    let (out, code) = run(&["verify", not_normal.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("not normal"), "{out}");

    assert_eq!(run(&["info", "s5", "--order-cap", "100"]).1, 2);
    assert_eq!(run(&["gow", "q8", "--normal", "Z", "--theta", "2"]).1, 2);
    assert_eq!(run(&["gow", "q8", "--normal", "Y", "--theta", "0"]).1, 2);
    assert_eq!(run(&["frobnicate"]).1, 2);
    assert_eq!(run(&["verify"]).1, 2);
    assert_eq!(run(&["--help"]).1, 0);
}

#[test]
fn cayley_file() {
    let c2 = temp_file("c2.group", r#"{"name":"C2","presentation":"cayley","table":[[0,1],[1,0]]}"#);
    let v = structured(&["info", c2.to_str().unwrap()]);
    assert_eq!(v["group"]["order"], 2);
    let (_, code) = run(&["verify", c2.to_str().unwrap()]);
    assert_eq!(code, 0);
}

#[test]
fn catalog_fixtures_parse_and_validate() {
    let all = catalog::catalog();
    assert_eq!(all.len(), 21);
    for f in &all {
        let cap = if f.slow { 40320 } else { 20000 };
        let g = f.load(cap).unwrap();
        assert_eq!(g.normals.len(), f.normal_subgroups.len());
    }
    let gl = catalog::lookup("GL(2,3)").unwrap().load(20000).unwrap();
    assert_eq!(gl.normal("Z").unwrap().order(), 2);
    let (out, code) = run(&["catalog"]);
    assert_eq!(code, 0);
    assert!(out.contains("2.A8") && out.contains("slow"));
}

#[test]
fn slow_fixture_needs_the_flag() {
    let (out, code) = run(&["info", "2a8"]);
    assert_eq!(code, 2);
    assert!(out.contains("cap"), "{out}");
}

#[test]
fn verify_catalog() {
    let (out, code) = run(&["verify", "--catalog"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("20 groups") && out.contains(" 0 mismatches"), "{out}");
    assert!(!out.contains("2.A8"));
}

#[test]
fn binary_exit_codes_and_streams() {
    let bin = env!("CARGO_BIN_EXE_clifford-count");
    let ok = Command::new(bin).args(["epsilon-induced", "q8", "--normal", "Z", "--theta", "1", "--check"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("PASS"));
    let bad = Command::new(bin).args(["gow", "q8", "--normal", "Z", "--theta", "9"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("theta index 9"));
}
