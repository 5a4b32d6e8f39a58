#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_cryptoherm"));
    c.env_remove("CRYPTOHERM_TOL");
    c
}

/// Runs the binary and returns the exit code with captured output.
pub fn run(args: &[&str]) -> (i32, Output) {
    let out = bin().args(args).output().expect("spawn cryptoherm");
    (out.status.code().expect("exit code"), out)
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

pub fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

/// Validator for one of the shipped schemas, with sibling schemas
/// registered so relative references resolve offline.
pub fn validator(name: &str) -> jsonschema::Validator {
    let mut opts = jsonschema::options().should_validate_formats(true);
    for entry in std::fs::read_dir(schema_dir()).unwrap() {
        let path = entry.unwrap().path();
        let doc = read_json(&path);
        let id = doc["$id"].as_str().unwrap().to_owned();
        opts = opts.with_resource(id, jsonschema::Resource::from_contents(doc).unwrap());
    }
    opts.build(&read_json(&schema_dir().join(name))).unwrap()
}

pub fn assert_valid(schema: &str, doc: &Value) {
    let v = validator(schema);
    let errors: Vec<String> = v.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{schema}: {errors:?}");
}

/// `generate --dim dim --k k --seed seed` into `dir`.
pub fn generate(dir: &Path, dim: usize, k: usize, seed: u64) {
    let (code, out) = run(&[
        "generate", "--dim", &dim.to_string(), "--k", &k.to_string(), "--seed", &seed.to_string(), "--out", p(dir),
    ]);
    assert_eq!(code, 0, "{}", stderr(&out));
}

pub fn model_args<'a>(dir: &'a Path, chain: &'a str, h: &'a str) -> [String; 4] {
    [
        "--chain".into(),
        dir.join(chain).display().to_string(),
        "--hamiltonian".into(),
        dir.join(h).display().to_string(),
    ]
}
