//! Batch commands that rebuild the classification tables and run the
//! invariant suites, producing line-oriented reports.

use std::hash::{Hash, Hasher};
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHasher;
use serde_json::Value;

use crate::actions::MAX_ACTION_DEGREE;
use crate::par::Exec;

pub mod affine;
pub mod sporadic;
pub mod structural;
pub mod tables;
pub mod verify;

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub data_dir: PathBuf,
    pub max_degree: usize,
    /// Largest group handled by class-based methods.
    pub max_order: BigUint,
    pub exec: Exec,
    /// Include per-item wall time (makes output run-dependent).
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            data_dir: crate::dataset::default_data_dir(),
            max_degree: MAX_ACTION_DEGREE,
            max_order: BigUint::from(1_000_000_000u64),
            exec: Exec::default(),
            timings: false,
        }
    }
}

impl RunConfig {
    /// A generator for one item, independent of the order items run in.
    pub fn rng(&self, item: &str) -> ChaCha8Rng {
        let mut h = FxHasher::default();
        item.hash(&mut h);
        ChaCha8Rng::seed_from_u64(self.seed ^ h.finish())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A discrepancy that does not count as a mismatch.
    Warn,
    Info,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Warn => "warn",
            Status::Info => "info",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// One report line: a kind, ordered fields and a status.
#[derive(Clone, Debug)]
pub struct Record {
    pub kind: String,
    pub fields: Vec<(String, Value)>,
    pub status: Status,
    pub wall_ms: Option<f64>,
}

impl Record {
    pub fn new(kind: &str) -> Self {
        Self {
            kind: kind.to_string(),
            fields: Vec::new(),
            status: Status::Info,
            wall_ms: None,
        }
    }

    pub fn field(mut self, name: &str, value: impl Into<Value>) -> Self {
        self.fields.push((name.to_string(), value.into()));
        self
    }

    pub fn status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.fields.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    fn json(&self, timings: bool) -> String {
        let mut s = String::from("{");
        s.push_str(&format!("\"record\":{}", Value::from(self.kind.as_str())));
        for (k, v) in &self.fields {
            s.push_str(&format!(",{}:{}", Value::from(k.as_str()), v));
        }
        s.push_str(&format!(",\"status\":\"{}\"", self.status.as_str()));
        if timings {
            if let Some(ms) = self.wall_ms {
                s.push_str(&format!(",\"wall_ms\":{ms:.3}"));
            }
        }
        s.push('}');
        s
    }
}

/// Runs `f`, stamping the records it returns with its wall time.
pub fn timed(f: impl FnOnce() -> Vec<Record>) -> Vec<Record> {
    let start = Instant::now();
    let mut out = f();
    let ms = start.elapsed().as_secs_f64() * 1e3;
    for r in &mut out {
        r.wall_ms = Some(ms);
    }
    out
}

pub fn list<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub max_degree: usize,
    pub max_order: String,
    pub timings: bool,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(command: &str, cfg: &RunConfig) -> Self {
        Self {
            command: command.to_string(),
            seed: cfg.seed,
            max_degree: cfg.max_degree,
            max_order: cfg.max_order.to_string(),
            timings: cfg.timings,
            records: Vec::new(),
        }
    }

    pub fn extend(&mut self, records: impl IntoIterator<Item = Record>) {
        self.records.extend(records);
    }

    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn write_jsonl(&self, w: &mut dyn Write) -> io::Result<()> {
        writeln!(
            w,
            "{{\"record\":\"run\",\"command\":{},\"version\":\"{}\",\"seed\":{},\"max_degree\":{},\"max_order\":\"{}\"}}",
            Value::from(self.command.as_str()),
            env!("CARGO_PKG_VERSION"),
            self.seed,
            self.max_degree,
            self.max_order
        )?;
        for r in &self.records {
            writeln!(w, "{}", r.json(self.timings))?;
        }
        writeln!(
            w,
            "{{\"record\":\"summary\",\"pass\":{},\"fail\":{},\"warn\":{},\"info\":{}}}",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Warn),
            self.count(Status::Info)
        )
    }

    /// Aligned tables, one per record kind in order of first appearance.
    pub fn write_text(&self, w: &mut dyn Write) -> io::Result<()> {
        writeln!(
            w,
            "qsrlab {} {} (seed {}, max degree {}, max order {})",
            env!("CARGO_PKG_VERSION"),
            self.command,
            self.seed,
            self.max_degree,
            self.max_order
        )?;
        let mut kinds: Vec<&str> = Vec::new();
        for r in &self.records {
            if !kinds.contains(&r.kind.as_str()) {
                kinds.push(&r.kind);
            }
        }
        for kind in kinds {
            let rows: Vec<&Record> = self.records.iter().filter(|r| r.kind == kind).collect();
            let mut header: Vec<String> = rows[0].fields.iter().map(|(k, _)| k.clone()).collect();
            header.push("status".into());
            if self.timings {
                header.push("wall_ms".into());
            }
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let mut c: Vec<String> = r.fields.iter().map(|(_, v)| cell(v)).collect();
                    c.push(r.status.as_str().to_string());
                    if self.timings {
                        c.push(r.wall_ms.map(|m| format!("{m:.1}")).unwrap_or_default());
                    }
                    c
                })
                .collect();
            let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for row in &cells {
                for (i, c) in row.iter().enumerate() {
                    if i < width.len() {
                        width[i] = width[i].max(c.chars().count());
                    }
                }
            }
            writeln!(w, "\n[{kind}]")?;
            let line = |row: &[String]| -> String {
                row.iter()
                    .enumerate()
                    .map(|(i, c)| format!("{:<w$}", c, w = width.get(i).copied().unwrap_or(0)))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            writeln!(w, "{}", line(&header))?;
            for row in &cells {
                writeln!(w, "{}", line(row))?;
            }
        }
        writeln!(
            w,
            "\n{} pass, {} fail, {} warn",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Warn)
        )
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(a) => a.iter().map(cell).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

/// Record for an item that could not be evaluated.
pub fn error_record(kind: &str, item: &str, err: &crate::Error) -> Record {
    Record::new(kind)
        .field("item", item)
        .field("error", err.to_string())
        .status(Status::Fail)
}
