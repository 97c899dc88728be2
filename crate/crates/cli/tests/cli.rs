use std::io::Write;
use std::process::{Command, Output};

fn polymin(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_polymin"))
        .args(args)
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

const LINE: &str = "vars: x1 x2\nminimize: x1^2 + x2^2\neq: x1 + x2 - 1\n";

fn write_temp(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("polymin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn parse_errors_exit_with_2() {
    let out = polymin(&["solve", "-"], Some("vars: x1\nminimize: x1\n"));
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1"), "{err}");
    let out = polymin(&["solve", "-"], Some("vars: x y\nminimize: x / y\n"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn infeasible_problem_exits_with_4() {
    let text = "vars: x y\nminimize: x\nge: -1 - x^2 - y^2\n";
    let out = polymin(&["solve", "-", "--max-retries", "0"], Some(text));
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn solve_then_verify_round_trip() {
    let problem = write_temp("line.txt", LINE);
    let p = problem.to_str().unwrap();
    let first = polymin(&["solve", p, "--seed", "11", "--precision", "30"], None);
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    let second = polymin(&["solve", p, "--seed", "11", "--precision", "30", "--parallel", "1"], None);
    assert_eq!(first.stdout, second.stdout);

    let json = String::from_utf8(first.stdout).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc["schema"], "polymin/v1");
    assert_eq!(doc["g_min"], format!("0.5{}", "0".repeat(29)));
    assert_eq!(doc["entries"][0]["point"][0], format!("0.5{}", "0".repeat(29)));

    let result = write_temp("line.json", &json);
    let r = result.to_str().unwrap();
    let ok = polymin(&["verify", p, "--result", r, "--samples", "2000"], None);
    let report = String::from_utf8_lossy(&ok.stdout);
    assert!(ok.status.success(), "{report}");
    assert!(report.contains("sampling box heuristic"));

    let tampered = json.replace(&format!("\"g_min\": \"0.5{}\"", "0".repeat(29)), "\"g_min\": \"-0.5\"");
    assert_ne!(tampered, json);
    let bad = write_temp("tampered.json", &tampered);
    let out = polymin(&["verify", p, "--result", bad.to_str().unwrap(), "--samples", "200", "--box=-2,2"], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}
