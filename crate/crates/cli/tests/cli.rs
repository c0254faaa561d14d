use std::process::{Command, Output};

use permcheck_core::report::Verdict;
use serde_json::Value;

fn permcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permcheck")).args(args).output().expect("spawn permcheck")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", stdout(o)))
}

/// Drops every `ms` field so two runs can be compared byte for byte.
fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("ms");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

#[test]
fn hankel_product_json_report() {
    let o = permcheck(&["verify", "lemma34", "--n", "3", "--p", "5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["config"]["command"], "verify");
    assert_eq!(v["config"]["target"], "lemma34");
    assert_eq!(v["config"]["e"], 1);
    assert_eq!(v["config"]["method"], "truncated");
    let rep = &v["reports"][0];
    assert_eq!(rep["schema"], 1);
    assert_eq!(rep["check"], "lemma34");
    assert_eq!(rep["params"]["n"], 3);
    assert_eq!(rep["params"]["p"], 5);
    assert_eq!(rep["evidence"]["residue"], "z1^4*z2^4*z3^4*z4^4*z5^4");
    assert!(rep["ms"].is_u64());
    assert!(v["version"].is_string());
}

#[test]
fn generic34_scan_fiber() {
    let o = permcheck(&["scan", "conjecture45", "--p", "3,5,7", "--method", "fiber", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&o);
    let counts = &v["reports"][0]["evidence"]["counts"];
    assert_eq!(counts["coefficient_p3"], 0);
    assert_eq!(counts["coefficient_p5"], 0);
    assert_ne!(counts["coefficient_p7"], 0);
    let checks = v["reports"][0]["evidence"]["checks"].as_array().unwrap();
    let names: Vec<&str> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["p=3", "p=5", "p=7"]);
    assert!(checks[2]["detail"].as_str().unwrap().contains(", F-pure,"));
}

#[test]
fn fpure_hankel_shows_survivor() {
    let o = permcheck(&["verify", "fpure", "--shape", "hankel:3", "--p", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("survivor: z1^2*z3^2*z5^2"), "{text}");
    assert!(text.contains("verdict: pass"));
}

#[test]
fn failing_check_exits_2() {
    let o = permcheck(&["verify", "fpure", "--shape", "generic:3x4", "--t", "3", "--p", "5"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict: fail"));
}

#[test]
fn exit_codes_follow_verdicts() {
    assert_eq!(permcheck::exit_code(Verdict::Pass), 0);
    assert_eq!(permcheck::exit_code(Verdict::Fail), 2);
    assert_eq!(permcheck::exit_code(Verdict::Inconclusive), 3);
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["verify", "lemma34", "--n", "3", "--p", "4"][..],
        &["verify", "lemma34", "--n", "3", "--p", "2"],
        &["verify", "lemma34", "--n", "3", "--p", "5", "--bogus"],
        &["verify", "lemma35", "--n", "3", "--p", "5"],
        &["verify", "lemma34", "--n", "3"],
        &["verify", "lemma34", "--n", "3", "--p", "5", "--e", "2"],
        &["verify", "witness-generic", "--shape", "generic:3", "--p", "3"],
        &["verify", "witness-generic", "--shape", "symmetric:3", "--p", "3"],
        &["verify", "fpure", "--shape", "generic:3x3", "--t", "2", "--p", "3"],
        &["scan", "conjecture45", "--p", "5", "--method", "magic"],
        &["verify", "lemma34", "--n", "3", "--p", "5", "--threads", "0"],
        &["bench", "nothing"],
        &[],
    ] {
        let o = permcheck(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(permcheck(&["--help"]).status.code(), Some(0));
    assert_eq!(permcheck(&["--version"]).status.code(), Some(0));
}

#[test]
fn json_is_deterministic_apart_from_timing() {
    let args = ["verify", "witness-generic", "--shape", "generic:3x3", "--p", "3,5,7", "--threads", "1", "--format", "json"];
    let mut a = json(&permcheck(&args));
    let mut b = json(&permcheck(&args));
    strip_timing(&mut a);
    strip_timing(&mut b);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    let ps: Vec<u64> = a["reports"].as_array().unwrap().iter().map(|r| r["params"]["p"].as_u64().unwrap()).collect();
    assert_eq!(ps, [3, 5, 7]);
    // a wider pool merges in the same order
    let mut c = json(&permcheck(&["verify", "witness-generic", "--shape", "generic:3x3", "--p", "3,5,7", "--threads", "4", "--format", "json"]));
    strip_timing(&mut c);
    assert_eq!(a["reports"], c["reports"]);
}

#[test]
fn out_file_and_checkpoint_resume() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("scan.json");
    let ckpt = dir.path().join("scan.ckpt");
    let args = |o: &std::path::Path| {
        vec![
            "scan".to_string(),
            "conjecture45".into(),
            "--p".into(),
            "5".into(),
            "--method".into(),
            "fiber".into(),
            "--format".into(),
            "json".into(),
            "--checkpoint".into(),
            ckpt.display().to_string(),
            "--out".into(),
            o.display().to_string(),
        ]
    };
    let first = Command::new(env!("CARGO_BIN_EXE_permcheck")).args(args(&out)).output().unwrap();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first).trim(), "pass");
    assert!(ckpt.exists());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["reports"][0]["evidence"]["coefficient"], 0);
    let out2 = dir.path().join("again.json");
    let again = Command::new(env!("CARGO_BIN_EXE_permcheck")).args(args(&out2)).output().unwrap();
    assert_eq!(again.status.code(), Some(0));
    let w: Value = serde_json::from_str(&std::fs::read_to_string(&out2).unwrap()).unwrap();
    assert_eq!(w["reports"][0]["evidence"]["counts"], v["reports"][0]["evidence"]["counts"]);
    assert!(w["reports"][0]["evidence"]["notes"][0].as_str().unwrap().contains("resumed"));
}

#[test]
fn every_verify_check_runs() {
    for args in [
        &["verify", "lemma31", "--n", "4"][..],
        &["verify", "lemma32", "--shape", "hankel:4"],
        &["verify", "thm35", "--n", "3", "--p", "3,5"],
        &["verify", "thm36", "--n", "3"],
        &["verify", "witness-symmetric", "--n", "3", "--p", "3"],
        &["verify", "monomials28", "--m", "2", "--n", "3", "--p", "3"],
        &["verify", "monomials29", "--shape", "generic:3x3", "--p", "5"],
        &["verify", "fpure", "--shape", "hankel:2", "--p", "3", "--e", "2"],
    ] {
        let o = permcheck(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn bench_csv_shape() {
    let o = permcheck(&["bench", "truncated-pow", "--p", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "bench,method,size,p,ns_per_op,ops");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("truncated-pow,binary,3,3,"));
    assert!(lines[2].starts_with("truncated-pow,repeated,3,3,"));

    let o = permcheck(&["bench", "permanent-eval", "--n", "4"]);
    let methods: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.split(',').take(3).collect::<Vec<_>>().join(",")).collect();
    assert_eq!(
        methods,
        ["permanent-eval,ryser,3", "permanent-eval,dp,3", "permanent-eval,naive,3", "permanent-eval,ryser,4", "permanent-eval,dp,4", "permanent-eval,naive,4"]
    );

    let o = permcheck(&["bench", "pointcount", "--p", "3"]);
    let rows: Vec<String> = stdout(&o).lines().skip(1).map(String::from).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("pointcount,pointcount,12,3,") && rows[0].ends_with(",531441"));
    assert!(rows[1].starts_with("pointcount,fiber,12,3,") && rows[1].ends_with(",19683"));
}
