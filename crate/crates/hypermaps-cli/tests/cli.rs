//! End-to-end tests of the binary: every subcommand, the file grammar's
//! error reporting, cross-check modes, and the JSON schema.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn testdata(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("testdata")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypermaps"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], stdin: &str) -> Output {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_hypermaps"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .expect("piped stdin")
        .write_all(stdin.as_bytes())
        .expect("write stdin");
    child.wait_with_output().expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    assert!(
        output.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout.clone()).expect("utf8 output")
}

#[test]
fn info_reports_classification() {
    let out = stdout_of(&run(&[
        "info",
        testdata("eight_point.hm").to_str().unwrap(),
    ]));
    assert!(out.contains("kappa:  1"));
    assert!(out.contains("genus:  0"));
    assert!(out.contains("(1 2 3)          ordinary regular"));
    assert!(out.contains("(6 7 8)          simple bridge"));
    assert!(out.contains("(4 5)            ordinary"));
}

#[test]
fn whitney_both_cross_checks() {
    let out = stdout_of(&run(&[
        "whitney",
        "--method",
        "both",
        testdata("simple_bridge.hm").to_str().unwrap(),
    ]));
    assert_eq!(out, "R(u, v) = u^2+u*v+4*u+v+3\n");
}

#[test]
fn whitney_recursive_rejects_long_hyperedges_nonzero_exit() {
    let out = run_stdin(
        &["whitney", "--method", "recursive", "-"],
        "sigma: (1)(2)(3)(4)\nalpha: (1 2 3 4)\n",
    );
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("hyperedge of length 4"));
    // But the defining sum still works.
    let ok = run_stdin(
        &["whitney", "--method", "brute", "-"],
        "sigma: (1)(2)(3)(4)\nalpha: (1 2 3 4)\n",
    );
    assert!(ok.status.success());
}

#[test]
fn hypertrees_all_on_the_k4_reciprocal() {
    let out = stdout_of(&run(&[
        "hypertrees",
        "--method",
        "all",
        testdata("k4_reciprocal.hm").to_str().unwrap(),
    ]));
    assert_eq!(out, "spanning hypertrees: 80\n");
}

#[test]
fn reliability_symbolic_and_value() {
    let bridge = testdata("bridge.hm");
    let out = stdout_of(&run(&[
        "reliability",
        "--symbolic",
        bridge.to_str().unwrap(),
    ]));
    assert_eq!(out, "reliability(t) = (1)/(t+1)\n");
    let out = stdout_of(&run(&[
        "reliability",
        "--t",
        "1/3",
        bridge.to_str().unwrap(),
    ]));
    assert_eq!(out, "reliability(1/3) = 3/4\n");
    let out = stdout_of(&run(&[
        "reliability",
        "--t",
        "0.25",
        bridge.to_str().unwrap(),
    ]));
    assert_eq!(out, "reliability(1/4) = 4/5\n");
    // Exactly one of --t / --symbolic.
    assert!(!run(&["reliability", bridge.to_str().unwrap()])
        .status
        .success());
    assert!(!run(&[
        "reliability",
        "--t",
        "1",
        "--symbolic",
        bridge.to_str().unwrap()
    ])
    .status
    .success());
}

#[test]
fn cluster_symbolic_and_value() {
    let bridge = testdata("bridge.hm");
    let out = stdout_of(&run(&["cluster", "--Q", "2", bridge.to_str().unwrap()]));
    assert_eq!(out, "Z(Q = 2; t) = (4*t+2)/(t+1)\n");
    let out = stdout_of(&run(&[
        "cluster",
        "--Q",
        "2",
        "--t",
        "1",
        bridge.to_str().unwrap(),
    ]));
    assert_eq!(out, "Z(Q = 2, t = 1) = 3\n");
    assert!(!run(&["cluster", "--Q", "0", bridge.to_str().unwrap()])
        .status
        .success());
}

#[test]
fn dual_and_reciprocal_roundtrip() {
    let eight = testdata("eight_point.hm");
    let out = stdout_of(&run(&["reciprocal", eight.to_str().unwrap()]));
    assert_eq!(
        out,
        "n: 8\nsigma: (1 2 3)(4 5)(6 7 8)\nalpha: (1 4 8)(2 5)(3 6)(7)\n"
    );
    // reciprocal of the reciprocal is the original; feed the output back in.
    let again = run_stdin(&["reciprocal", "-"], &out);
    assert_eq!(
        stdout_of(&again),
        "n: 8\nsigma: (1 4 8)(2 5)(3 6)(7)\nalpha: (1 2 3)(4 5)(6 7 8)\n"
    );
    let dual = stdout_of(&run(&["dual", testdata("loop.hm").to_str().unwrap()]));
    assert_eq!(dual, "n: 2\nsigma: (1)(2)\nalpha: (1 2)\n");
}

#[test]
fn twocolor_prints_primes_and_exports() {
    let dir = tempfile::tempdir().unwrap();
    let export = dir.path().join("graph.txt");
    let out = stdout_of(&run(&[
        "twocolor",
        "--export",
        export.to_str().unwrap(),
        testdata("eight_point.hm").to_str().unwrap(),
    ]));
    assert!(out.contains("S: (1 4 8)(2 5)(3 6)(7)(1' 3' 2')(6' 8' 7')"));
    assert!(out.contains("A: (1 1')(2 2')(3 3')(4 5)(6 6')(7 7')(8 8')"));
    let exported = std::fs::read_to_string(&export).unwrap();
    assert!(exported.starts_with("vertices 6\n"));
    assert!(exported.contains("9 white"));
    assert!(exported.contains("edges "));
    // One `u v multiplicity` line per edge.
    let edge_lines: Vec<&str> = exported
        .lines()
        .skip_while(|l| !l.starts_with("edges"))
        .skip(1)
        .collect();
    assert!(edge_lines.iter().all(|l| l.split_whitespace().count() == 3));
}

#[test]
fn pencil_and_ladder() {
    assert_eq!(
        stdout_of(&run(&["pencil", "--a", "6,4,4,6", "--t", "2"])),
        "spanning trees of P(6,4,4,6; 2) = 3344\n"
    );
    assert_eq!(
        stdout_of(&run(&["ladder", "--m", "2"])),
        "spanning hypertrees of the 2-face ladder reciprocal: 28\n"
    );
    let series = stdout_of(&run(&["ladder", "--m", "3", "--series"]));
    assert_eq!(series, "T(0) = 1\nT(1) = 4\nT(2) = 28\nT(3) = 192\n");
}

#[test]
fn parse_errors_carry_positions_and_nonzero_exit() {
    let out = run_stdin(&["info", "-"], "sigma: (1 1)\n");
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 1, column 11"));
    assert!(stderr.contains("more than once"));

    let out = run_stdin(&["info", "-"], "n: 2\nsigma: (1 2)\nalpha: (1 3)\n");
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds declared n"));
}

#[test]
fn json_schema_fields() {
    let out = stdout_of(&run(&[
        "--json",
        "hypertrees",
        "--method",
        "all",
        testdata("k4_reciprocal.hm").to_str().unwrap(),
    ]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "hypertrees");
    assert_eq!(v["method"], "all");
    assert_eq!(v["result"]["count"], "80");
    assert_eq!(v["input"]["n"], 12);
    assert!(v["input"]["sigma"].is_string());
    assert!(v["timings"]["total_ms"].is_number());
}

#[test]
fn json_is_deterministic_modulo_timings() {
    let args = [
        "--json", "mc", "--t", "2/3", "--trials", "4000", "--seed", "12345",
    ];
    let file = testdata("eight_point.hm");
    let mut all = vec![];
    for _ in 0..2 {
        let mut full: Vec<&str> = args.to_vec();
        full.push(file.to_str().unwrap());
        let out = stdout_of(&run(&full));
        let mut v: serde_json::Value = serde_json::from_str(&out).unwrap();
        v.as_object_mut().unwrap().remove("timings");
        all.push(serde_json::to_string_pretty(&v).unwrap());
    }
    assert_eq!(all[0], all[1]);
}

#[test]
fn threads_flag_does_not_change_results() {
    let file = testdata("eight_point.hm");
    let base = stdout_of(&run(&[
        "mc",
        "--t",
        "1",
        "--trials",
        "3000",
        "--seed",
        "5",
        file.to_str().unwrap(),
    ]));
    let single = stdout_of(&run(&[
        "--threads",
        "1",
        "mc",
        "--t",
        "1",
        "--trials",
        "3000",
        "--seed",
        "5",
        file.to_str().unwrap(),
    ]));
    assert_eq!(base, single);
}
