#![allow(dead_code)]

use std::path::Path;
use std::process::Command;

use serde_json::Value;

pub const BIN: &str = env!("CARGO_BIN_EXE_jacobi-harmonic");

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the binary inside `dir` with `RAYON_NUM_THREADS` left to the environment.
pub fn run(dir: &Path, args: &[&str]) -> Run {
    let out = Command::new(BIN).args(args).current_dir(dir).output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

pub fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).expect("file exists")).expect("valid JSON")
}

pub fn schema() -> Value {
    read_json(&Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/summary.schema.json"))
}

/// Schema violations of `instance`, empty when it validates.
pub fn schema_errors(instance: &Value) -> Vec<String> {
    let schema = schema();
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let errors = match compiled.validate(instance) {
        Ok(()) => Vec::new(),
        Err(errs) => errs.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    errors
}

/// Reads a CSV written by the binary into a header and numeric rows.
pub fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).expect("csv exists");
    let mut lines = text.lines();
    let header = lines.next().expect("header").split(',').map(str::to_string).collect();
    let rows = lines.map(|l| l.split(',').map(|v| v.parse().expect("number")).collect()).collect();
    (header, rows)
}
