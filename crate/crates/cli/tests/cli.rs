use std::process::{Command, Output};

fn session(name: &str) -> String {
    format!("{}/../../sessions/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subalg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn complete_poly_d4() {
    let o = run(&[&session("d4.sess"), "complete-poly", "g"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("g• = x1^4 - 4*x1^2*x2^2 + 8*x1*x2*x3^2 + 4*x2^4 - 2*x3^4\n"));
}

#[test]
fn dim_of_zero_ideal() {
    let o = run(&[&session("zero3.sess"), "dim"]);
    assert_eq!(stdout(&o), "3\n");
}

#[test]
fn sing_against() {
    let o = run(&[&session("sing.sess"), "sing", "whitney", "--against", "x1, x2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("radical-equal to [x1, x2]: yes"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&[&session("bad.sess"), "dim"]).status.code(), Some(1));
    assert_eq!(run(&[&session("d4.sess"), "no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&[&session("missing.sess"), "dim"]).status.code(), Some(1));
    let unknown = session("unknown.sess");
    assert_eq!(run(&[&unknown, "classify", "f"]).status.code(), Some(0));
    assert_eq!(run(&[&unknown, "classify", "f", "--strict"]).status.code(), Some(2));
}

#[test]
fn structured_output_is_deterministic() {
    let args = [session("d4.sess"), "badset".into(), "g".into(), "--structured".into()];
    let args: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["results"]["components"], serde_json::json!([["x1 - a^2*x2", "x3"]]));
    assert_eq!(doc["verdicts"][1]["outcome"], "Proven");
    assert_eq!(doc["verdicts"][1]["recheck"], true);
    assert!(!String::from_utf8(a.stdout).unwrap().contains("timings"));
}

#[test]
fn projection_with_samples() {
    let o = run(&[&session("rnc.sess"), "project", "--matrix", "A", "--samples", "p1,p2,p3"]);
    let out = stdout(&o);
    assert!(out.contains("apex avoided: yes"));
    assert!(out.contains("dimension: 1 -> 1"));
    assert!(out.contains("pullback in radical: yes"));
    assert!(out.contains("biregular at samples: Proven"));
}

#[test]
fn clustering_and_real_structure() {
    let out = stdout(&run(&[&session("nested.sess"), "cluster", "f"]));
    assert!(out.contains("factor: t^2 - r - 2") && out.contains("factor: t^2 + r - 2"));
    let out = stdout(&run(&[&session("urs.sess"), "real-structure"]));
    assert!(out.contains("a1 = -2*x1^3 + 6*x1*y1^2 + x2^3 - 3*x2*y2^2"));
}

#[test]
fn tangent_at_point() {
    let out = stdout(&run(&[&session("cube.sess"), "tangent", "f", "--at", "b"]));
    assert!(out.contains("maximal ideal: [x1^3 - 2, x2 - 1]"));
    assert!(out.contains("rank: 1"));
}
