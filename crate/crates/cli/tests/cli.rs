use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_orbiform"));
    c.env_remove("ORBIFORM_DATA");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("orbiform-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn bernoulli_two() {
    let o = run(&["bernoulli", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"poly\":[\"1/6\",\"-1\",\"1\"]}\n");
    let o = run(&["bernoulli", "3", "1/4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "3/64");
}

#[test]
fn moonshine_chars() {
    let o = run(&["moonshine", "chars"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["chi"], serde_json::json!([1, 196883, 21296876]));
}

#[test]
fn q_modularity_passes() {
    let o = run(&[
        "verify",
        "Q_modularity",
        "--k",
        "2",
        "--pair",
        "1/1,1/2",
        "--gamma",
        "S",
        "--tol",
        "1e-8",
        "--terms",
        "120",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(stdout(&o).contains("\"pass\":true"));
}

#[test]
fn invariance_at_trivial_pair_fails_with_exit_one() {
    let o = run(&["verify", "P_invariance", "--k", "1", "--pair", "1/1,1/1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"pass\":false"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["eisenstein", "3"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "not_a_law"]).status.code(), Some(2));
    assert_eq!(run(&["qk", "2", "1/1", "1/1"]).status.code(), Some(2));
    assert_eq!(
        run(&["--tol", "-1", "bernoulli", "2"]).status.code(),
        Some(2)
    );
    let o = run(&["verify", "not_a_law"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Q_modularity"));
}

#[test]
fn output_is_deterministic() {
    let args = ["qk", "3", "1/3", "1/4", "--trunc", "5"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("qk_first_denominator_uses_n_plus_j_over_M"));
}

#[test]
fn frobenius_from_file() {
    let ode = r#"{"order":2,"T":1,"coeffs":[
        {"T":1,"leading":"0","trunc":null,"coeffs":["-1/4"]},
        {"T":1,"leading":"0","trunc":null,"coeffs":[]}]}"#;
    let path = scratch("half.json", ode);
    let o = run(&["frobenius", "--ode", path.to_str().unwrap(), "--trunc", "4"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["solutions"].as_array().unwrap().len(), 2);
    assert_eq!(v["max_log_power"], 0);

    let forcing =
        r#"{"T":1,"parts":[{"log_power":0,"T":1,"leading":"0","trunc":null,"coeffs":["1"]}]}"#;
    let theta = r#"{"order":1,"T":1,"coeffs":[{"T":1,"leading":"0","trunc":null,"coeffs":[]}]}"#;
    let fp = scratch("one.json", forcing);
    let op = scratch("theta.json", theta);
    let o = run(&[
        "frobenius",
        "--ode",
        op.to_str().unwrap(),
        "--forcing",
        fp.to_str().unwrap(),
        "--trunc",
        "3",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["residual_zero"], true);
    assert_eq!(v["solution"]["parts"][1]["coeffs"][0], "-1");
}

#[test]
fn data_file_override() {
    let data = r#"{"classes":[{"label":"2B","eta":[[1,24],[2,-24]],"const":"24"}],"char_degrees_hint":[1,196884]}"#;
    let path = scratch("data.json", data);
    let o = bin()
        .env("ORBIFORM_DATA", &path)
        .args(["moonshine", "chars"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["hint_agrees"], false);
    let o = bin()
        .env("ORBIFORM_DATA", &path)
        .args(["moonshine", "hauptmodul", "3B"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[
        "--data",
        path.to_str().unwrap(),
        "moonshine",
        "hauptmodul",
        "2B",
        "--trunc",
        "3",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coeffs"][2], "276");
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("orbiform-cli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("pairs.json");
    let o = run(&[
        "pairs",
        "reduce",
        "2",
        "3",
        "12",
        "--output",
        p.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["e"], 1);
}
