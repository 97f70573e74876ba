use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dqtwist"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env_remove("DQTWIST_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_and_cohomology() {
    let o = run(&["check", "algebras/heisenberg.json"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["cohomology", "--k", "2", "algebras/abelian_r2.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("dim H^2 = 1\n"));
}

#[test]
fn compare_confirms_n2() {
    let o = run(&["compare", "--order", "2", "algebras/n2.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "trivial class confirmed to order 2\n");
}

#[test]
fn math_failures_exit_one_with_residual() {
    let o = run(&["cybe", "--r", "e1^e2", "algebras/heisenberg.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAILED: classical Yang-Baxter equation: -1*e1^e2^e3"));
    let o = run(&["--json", "cybe", "--r", "e1^e2", "algebras/heisenberg.json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "failed");
    assert_eq!(v["violated"]["invariant"], "classical Yang-Baxter equation");
}

#[test]
fn input_errors_exit_two() {
    let dir = std::env::temp_dir().join(format!("dqtwist-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"name":"x","dim":2,"basis":["a","b"],"omega":[["0","1"],["1","0"]]}"#).unwrap();
    let o = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("omega[0][1]"));
    let o = run(&["twist", "--order", "3", "algebras/n2.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["gutt", "--f", "x9", "--g", "x1", "algebras/e3.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn order_cap_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_dqtwist"))
        .args(["gutt", "--f", "x1*x2", "--g", "x2", "--order", "3", "algebras/e3.json"])
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env("DQTWIST_MAX_ORDER", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_dqtwist"))
        .args(["gutt", "--f", "x1", "--g", "x2", "algebras/e3.json"])
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env("DQTWIST_MAX_ORDER", "9")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [&["twist", "--order", "2", "algebras/n2.json"][..], &["fedosov", "--order", "2", "algebras/n2.json"], &["--json", "dito", "--r", "2", "algebras/n2_sum.json"]] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}
