use std::process::{Command, Output};

fn renorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_renorm")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn bell_partial() {
    let o = renorm(&["bell", "--n", "5", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "15*X*Y2^2 + 10*X^2*Y3");
}

#[test]
fn coproduct_matches_oracle() {
    let o = renorm(&["coproduct", "--n", "5", "--d", "18/5", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("MATCH"));
}

#[test]
fn verify_json() {
    let o = renorm(&["verify", "--nmax", "4", "--d", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], serde_json::json!(true));
}

#[test]
fn perturbed_verify_exits_one() {
    let o = renorm(&["verify", "--nmax", "3", "--d", "3", "--perturb", "ck"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("MISMATCH"));
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(renorm(&["coproduct", "--n", "4", "--d", "3.5"]).status.code(), Some(2));
    assert_eq!(renorm(&["verify", "--d", "9/2"]).status.code(), Some(2));
    assert_eq!(renorm(&["bell"]).status.code(), Some(2));
}

#[test]
fn size_limit_exits_three() {
    assert_eq!(renorm(&["verify", "--nmax", "7", "--d", "3"]).status.code(), Some(3));
}

#[test]
fn valuate_and_scaling() {
    let o = renorm(&["valuate", "--graph", "sunset", "--d", "3.5", "--N", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("1.0506"));
    let o = renorm(&["scaling", "--graph", "doubleedge", "--d", "3", "--N", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("N,value,method"));
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("renorm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("b.txt");
    let o = renorm(&["--output", path.to_str().unwrap(), "bell", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&path).unwrap().contains("X^2"));
    std::fs::remove_dir_all(dir).ok();
}
