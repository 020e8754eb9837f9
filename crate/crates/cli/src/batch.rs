//! `classify-all`: one summary row per model file, assembled in input order.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use paraclass_core::classify::{classify, phi_symmetry_check};
use paraclass_core::paracontact::identity_suite;
use paraclass_core::{Analysis, LieFrameModel, Scalar};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{exit, CliError};
use crate::modelfile::{parse_model, AnyModel, JsonScalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub file: String,
    pub status: i32,
    pub fields: Value,
}

/// Model files (`*.json`) in `dir`, sorted by file name.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let io = |source| CliError::Io {
        path: dir.display().to_string(),
        source,
    };
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "json") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn max_of<S: Scalar>(values: impl IntoIterator<Item = S>) -> S {
    values
        .into_iter()
        .fold(S::zero(), |acc, v| if v > acc { v } else { acc })
}

fn summarize<S: JsonScalar>(m: LieFrameModel<S>) -> Result<Value, CliError> {
    let an = Analysis::new(m).map_err(CliError::core("analysis"))?;
    let suite = identity_suite(&an);
    let c = classify(&an).map_err(CliError::core("classification"))?;
    let phi = phi_symmetry_check(&an).map_err(CliError::core("phi-symmetry"))?;
    Ok(json!({
        "name": an.model.name,
        "mode": S::MODE.as_str(),
        "verdict": c.verdict.as_str(),
        "k": c.k.as_ref().map_or(Value::Null, JsonScalar::to_json),
        "trl": an.ricci.trl.to_json(),
        "trh2": an.ops.trh2.to_json(),
        "scal": an.ricci.scal.to_json(),
        "identity_residual": max_of(suite.iter().filter(|(id, _)| id.label() != "para-sasakian").map(|(_, d)| d.residual.clone())).to_json(),
        "phi_symmetry_residual": phi.residual.residual.to_json(),
        "nabla_q_residual": phi.nabla_q.residual.residual.to_json(),
    }))
}

fn row_for(path: &Path) -> Row {
    let file = path.file_name().map_or_else(
        || path.display().to_string(),
        |n| n.to_string_lossy().into_owned(),
    );
    let result = parse_model(path).and_then(|m| match m {
        AnyModel::Exact(m) => summarize(m),
        AnyModel::Float(m) => summarize(m),
    });
    match result {
        Ok(fields) => Row {
            file,
            status: exit::OK,
            fields,
        },
        Err(e) => Row {
            file,
            status: e.exit_code(),
            fields: json!({ "error": e.to_string() }),
        },
    }
}

/// Classifies every model file in `dir`, using `jobs` worker threads
/// (the rayon default when `None`).
pub fn classify_all(dir: &Path, jobs: Option<usize>) -> Result<Vec<Row>, CliError> {
    let files = corpus_files(dir)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(pool.install(|| files.par_iter().map(|p| row_for(p)).collect()))
}

pub fn batch_status(rows: &[Row]) -> i32 {
    rows.iter().map(|r| r.status).max().unwrap_or(exit::OK)
}

pub fn rows_json(rows: &[Row]) -> String {
    let v: Vec<Value> = rows
        .iter()
        .map(|r| {
            let mut obj = r.fields.clone();
            obj["file"] = Value::from(r.file.clone());
            obj["status"] = Value::from(r.status);
            obj
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

const COLUMNS: [&str; 9] = [
    "verdict",
    "k",
    "trl",
    "trh2",
    "scal",
    "identity_residual",
    "phi_symmetry_residual",
    "nabla_q_residual",
    "name",
];

pub fn rows_text(rows: &[Row]) -> String {
    let mut table: Vec<Vec<String>> = vec![std::iter::once("file")
        .chain(COLUMNS)
        .map(str::to_string)
        .collect()];
    for r in rows {
        let mut line = vec![r.file.clone()];
        match r.fields.get("error") {
            Some(err) => line.push(format!("error (exit {}): {}", r.status, cell(err))),
            None => line.extend(COLUMNS.iter().map(|c| cell(&r.fields[*c]))),
        }
        table.push(line);
    }
    let widths: Vec<usize> = (0..=COLUMNS.len())
        .map(|c| {
            table
                .iter()
                .filter(|l| l.len() > 1 || c == 0)
                .filter_map(|l| l.get(c))
                .filter(|s| !s.starts_with("error"))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for line in &table {
        let cells: Vec<String> = line
            .iter()
            .enumerate()
            .map(|(i, s)| {
                if i + 1 == line.len() {
                    s.clone()
                } else {
                    format!("{s:<w$}", w = widths[i])
                }
            })
            .collect();
        let _ = writeln!(out, "{}", cells.join("  "));
    }
    out
}
