use std::process::{Command, Output};

fn qturan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qturan"))
        .args(args)
        .env_remove("SEL_SEED")
        .output()
        .expect("spawn qturan")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn spectral_star() {
    let out = qturan(&["spectral", "--graph6", "D?{"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["config"]["command"]["spectral"]["input"]["graph6"], "D?{");
    let q = v["result"]["value"].as_f64().unwrap();
    assert!((q - 5.0).abs() < 1e-9);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qturan(&["spectral", "--graph6", "!!"]).status.code(), Some(2));
    assert_eq!(qturan(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(qturan(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn seed_from_env_wins() {
    let out = Command::new(env!("CARGO_BIN_EXE_qturan"))
        .args(["--seed", "3", "construct", "--kind", "kk-plus-free", "--n", "12", "--k", "3"])
        .env("SEL_SEED", "7")
        .output()
        .unwrap();
    let v = json(&out);
    assert_eq!(v["config"]["seed"], 7);
    assert_eq!(v["config"]["seed_source"], "env");
    assert_eq!(v["result"]["seed"], 7);
}

#[test]
fn construct_graph6_is_deterministic() {
    let args = ["--seed", "11", "--format", "graph6", "construct", "--kind", "blowup-free", "--n", "12", "--k", "2", "--eps", "1/16"];
    let a = qturan(&args);
    let b = qturan(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let g = qturan::graph6::read_graph6(text.trim()).unwrap();
    assert_eq!(g.order(), 12);
}

#[test]
fn verify_passes_and_writes_csv() {
    let out = qturan(&["--format", "csv", "verify", "--suite", "hofmeister", "--nmax", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), qturan::verify::VerificationReport::CSV_HEADER);
    assert!(lines.next().unwrap().starts_with("hofmeister,"));
}
