use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use serde_json::Value;

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
}

pub fn hitchin(args: &[&str], stdin: Option<&str>) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hitchin"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn hitchin");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    let out = child.wait_with_output().expect("wait for hitchin");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 output"),
    }
}

/// Wall time is the only nondeterministic field; zero it before comparing.
pub fn normalize(stdout: &str) -> String {
    match serde_json::from_str::<Value>(stdout) {
        Ok(mut v) if v.get("millis").is_some() => {
            v["millis"] = Value::from(0);
            let mut s = serde_json::to_string(&v).unwrap();
            s.push('\n');
            s
        }
        _ => stdout.to_string(),
    }
}

/// Runs every case of `fixtures/cases.json`; returns one message per
/// mismatch. With `UPDATE_GOLDEN=1` the goldens are rewritten instead.
pub fn check_goldens() -> (usize, Vec<String>) {
    let dir = fixtures();
    let cases: Vec<Value> =
        serde_json::from_str(&fs::read_to_string(dir.join("cases.json")).unwrap()).unwrap();
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut problems = Vec::new();
    for case in &cases {
        let name = case["name"].as_str().unwrap();
        let mut args: Vec<String> = case["args"]
            .as_array()
            .unwrap()
            .iter()
            .map(|a| a.as_str().unwrap().to_string())
            .collect();
        if let Some(input) = case["input"].as_str() {
            args.push("--input".into());
            args.push(dir.join("inputs").join(input).to_string_lossy().into_owned());
        }
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let run = hitchin(&argv, None);
        let expected_code = case["exit"].as_i64().unwrap() as i32;
        if run.code != expected_code {
            problems.push(format!("{name}: exit {} (expected {expected_code})", run.code));
        }
        let golden = dir.join("golden").join(format!("{name}.json"));
        let got = normalize(&run.stdout);
        if update {
            fs::write(&golden, &got).unwrap();
            continue;
        }
        match fs::read_to_string(&golden) {
            Ok(want) if want == got => {}
            Ok(want) => problems.push(format!("{name}: output differs\n  want {want}  got  {got}")),
            Err(_) => problems.push(format!("{name}: missing golden {}", golden.display())),
        }
    }
    (cases.len(), problems)
}
