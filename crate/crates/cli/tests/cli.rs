use std::path::PathBuf;
use std::process::{Command, Output};

use closed_geodesic::{parse_profile, poincare_coefficients, BigInt};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn geodesic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geodesic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn iterate_table() {
    let p = fixture("p4.json");
    let o = geodesic(&["iterate", "--profile", &p, "--max-m", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("m,ind\n1,3\n2,5\n3,7\n4,7\n5,9\n"), "{out}");
    assert_eq!(out.lines().count(), 11);
}

#[test]
fn betti_matches_series() {
    let o = geodesic(&["betti", "--n", "4", "--max-k", "10", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), poincare_coefficients(4, 10).to_csv());
}

#[test]
fn alpha_and_gamma() {
    let p = fixture("p4.json");
    let o = geodesic(&["alpha", "--profile", &p]);
    assert_eq!(stdout(&o), "alpha\n178/97\n");
    // decimal approximation only in the log line
    assert!(stderr(&o).contains("1.835"));
    let o = geodesic(&["gamma", "--profile", &p, "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["gamma"], "-1");
}

#[test]
fn gaps_jumps_morse() {
    let p = fixture("p4.json");
    let o = geodesic(&["gaps", "--profile", &p, "--m", "3"]);
    assert_eq!(stdout(&o), "m,A_m,B_m,J_m,gap\n3,2,-2,1,0\n");
    let o = geodesic(&["jumps", "--profile", &p, "--horizon", "40"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().nth(1), Some("4"));
    let o = geodesic(&["morse", "--profile", &p, "--max-k", "8"]);
    let out = stdout(&o);
    assert!(out.starts_with("k,w_k,b_k,q_k\n"));
    assert!(out.ends_with("7,2,1,1\n8,0,0,-1\n"), "{out}");
}

#[test]
fn prop33_report() {
    let p = fixture("p4.json");
    let o = geodesic(&["prop33", "--profile", &p]);
    assert_eq!(stdout(&o), "conclusion,pass\na,true\nb,true\nc,true\n");
    let o = geodesic(&["prop33", "--profile", &fixture("constant3.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("hypotheses not met"));
}

#[test]
fn verify_three_sphere() {
    let o = geodesic(&["verify", "--n", "3", "--horizon", "200", "--q", "499", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["survivors"], serde_json::json!([]));
    assert_eq!(v["Q"], 499);
    assert_eq!(v["candidates"], v["contradicted"]);
}

#[test]
fn input_errors_exit_two() {
    for (file, needle) in [
        ("unordered.json", "phases not strictly increasing"),
        ("short.json", "arc/phase length mismatch"),
        ("badrational.json", "malformed rational at t[1]"),
        ("missing.json", "cannot read"),
    ] {
        let o = geodesic(&["alpha", "--profile", &fixture(file)]);
        assert_eq!(o.status.code(), Some(2), "{file}");
        assert!(stderr(&o).contains(needle), "{file}: {}", stderr(&o));
        assert!(stdout(&o).is_empty());
    }
    let p = fixture("p4.json");
    assert_eq!(geodesic(&["iterate", "--profile", &p, "--max-m", "97"]).status.code(), Some(2));
    assert_eq!(geodesic(&["betti", "--n", "4", "--max-k", "3", "--bogus"]).status.code(), Some(2));
    assert_eq!(geodesic(&["betti", "--n", "2", "--max-k", "3"]).status.code(), Some(2));
    assert_eq!(geodesic(&["verify", "--n", "3", "--horizon", "300", "--q", "499"]).status.code(), Some(2));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let p = fixture("p4.json");
    for args in [
        vec!["iterate", "--profile", p.as_str(), "--max-m", "96", "--format", "structured"],
        vec!["verify", "--n", "4", "--horizon", "60", "--q", "127", "--format", "structured"],
        vec!["morse", "--profile", p.as_str(), "--max-k", "20"],
    ] {
        assert_eq!(geodesic(&args).stdout, geodesic(&args).stdout);
    }
}

#[test]
fn numbers_reproducible_from_library() {
    let text = std::fs::read_to_string(fixture("p4.json")).unwrap();
    let p = parse_profile::<BigInt>(&text).unwrap();
    let o = geodesic(&["iterate", "--profile", &fixture("p4.json"), "--max-m", "96"]);
    let cli: Vec<u64> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(cli, p.index_sequence(96).unwrap());
}
