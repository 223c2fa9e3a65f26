use std::fs;
use std::process::{Command, Output};

fn workbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modal-workbench"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn script(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path.display().to_string()
}

#[test]
fn passing_script_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let f = script(&dir, "ok.mw", "algebra B = powerset(atoms:[a,b])\npc identity\n");
    let o = workbench(&["run", &f]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("identity^⊥ = {a -> b, b -> a}"));
}

#[test]
fn failing_assertion_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = script(
        &dir,
        "fail.mw",
        "algebra B = powerset(atoms:[a,b])\noperator f on B = table{a -> a+b, b -> 0}\ncheck f T\n",
    );
    assert_eq!(workbench(&["run", &f]).status.code(), Some(1));
}

#[test]
fn invalid_script_exits_two_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = script(&dir, "bad.mw", "algebra B = powerset(atoms:[a])\nproper f --budget 5\n");
    let o = workbench(&["run", "--json", &f]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["error"]["kind"], "unknown_name");
    assert_eq!((v["error"]["line"].as_u64(), v["error"]["column"].as_u64()), (Some(2), Some(8)));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":2:8: unknown name"));
}

#[test]
fn missing_file_exits_two() {
    assert_eq!(workbench(&["run", "/nonexistent/script.mw"]).status.code(), Some(2));
}

#[test]
fn json_report_is_deterministic_and_versioned() {
    let dir = tempfile::tempdir().unwrap();
    let f = script(
        &dir,
        "det.mw",
        "algebra I = intervals\noperator f on I = builtin(exfree)\nproper f --budget 5\n",
    );
    let a = workbench(&["run", "--json", "--seed", "3", &f]);
    let b = workbench(&["run", "--json", "--seed", "3", &f]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["seed"], 3);
    assert_eq!(v["results"][0]["decision"], "proper_exists");
}

#[test]
fn dot_flag_writes_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let f = script(&dir, "dot.mw", "frame X = {points:[p,q], edges:[p->q]}\ndot X\n");
    let out = dir.path().join("out.dot");
    let o = workbench(&["run", "--dot", out.to_str().unwrap(), &f]);
    assert_eq!(o.status.code(), Some(0));
    let dot = fs::read_to_string(out).unwrap();
    assert!(dot.starts_with("digraph \"X\""));
    assert!(dot.contains("\"p\" -> \"q\""));
}

#[test]
fn max_atoms_flag_limits_declarations() {
    let dir = tempfile::tempdir().unwrap();
    let f = script(&dir, "big.mw", "algebra B = powerset(atoms:[a,b,c])\n");
    assert_eq!(workbench(&["run", "--max-atoms", "2", &f]).status.code(), Some(2));
    assert_eq!(workbench(&["run", &f]).status.code(), Some(0));
}

#[test]
fn sweeps() {
    let o = workbench(&["sweep", "pc-oracle", "-n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("16/16 agree"));
    let o = workbench(&["sweep", "axiom-frame", "-n", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["schema"].as_u64(), v["total"].as_u64(), v["agree"].as_u64()), (Some(1), Some(512), Some(512)));
    assert_eq!(workbench(&["sweep", "pc-oracle", "-n", "9"]).status.code(), Some(2));
    assert_eq!(workbench(&["sweep", "nope", "-n", "2"]).status.code(), Some(2));
}

#[test]
fn examples_commands() {
    let o = workbench(&["examples", "list"]);
    assert_eq!(stdout(&o).lines().count(), 6);
    let o = workbench(&["examples", "run", "exfc"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = workbench(&["examples", "run", "--all", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["results"][0]["passed"], true);
    assert_eq!(workbench(&["examples", "run", "nosuch"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(workbench(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(workbench(&["examples", "run"]).status.code(), Some(2));
}
