use std::fmt::Write as _;
use std::path::Path;

use diamond_core::spectral::CharPoly;
use num_rational::Rational64;
use serde_json::{json, Map, Number, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violated,
    Error,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violated => "violated",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Violated => 1,
            Status::Error => 2,
        }
    }
}

/// Collects what went into a command so the report can carry one digest
/// over the argument list and every input file's bytes.
pub struct Inputs {
    hasher: Sha256,
    files: Vec<Value>,
}

impl Inputs {
    pub fn new(args: &[String]) -> Self {
        let mut hasher = Sha256::new();
        for a in args {
            hasher.update(a.as_bytes());
            hasher.update([0u8]);
        }
        Self { hasher, files: Vec::new() }
    }

    pub fn add_file(&mut self, path: &Path, bytes: &[u8]) {
        self.hasher.update(bytes);
        self.files.push(json!({ "path": path.display().to_string(), "sha256": hex(&Sha256::digest(bytes)) }));
    }

    fn finish(self) -> (String, Vec<Value>) {
        (hex(&self.hasher.finalize()), self.files)
    }
}

fn hex(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(2 * bytes.len());
    for b in bytes {
        let _ = write!(s, "{b:02x}");
    }
    s
}

pub fn render(command: &str, inputs: Inputs, results: Value, status: Status) -> String {
    let (digest, files) = inputs.finish();
    let mut top = Map::new();
    top.insert("command".into(), json!(command));
    top.insert("inputs_digest".into(), json!(digest));
    top.insert("inputs".into(), Value::Array(files));
    top.insert("results".into(), results);
    top.insert("status".into(), json!(status.as_str()));
    top.insert("versions".into(), json!({ "diamonds": env!("CARGO_PKG_VERSION") }));
    let mut out = serde_json::to_string_pretty(&Value::Object(top)).expect("json values serialise");
    out.push('\n');
    out
}

pub fn rational(r: Rational64) -> Value {
    let decimal = *r.numer() as f64 / *r.denom() as f64;
    json!({ "num": r.numer(), "den": r.denom(), "decimal": decimal })
}

/// Integer coefficients `[1, σ1, …, σn]`, kept exact however large.
pub fn char_poly(p: &CharPoly) -> Value {
    Value::Array(
        p.coefficients()
            .iter()
            .map(|c| Value::Number(c.to_string().parse::<Number>().expect("integer literal")))
            .collect(),
    )
}
