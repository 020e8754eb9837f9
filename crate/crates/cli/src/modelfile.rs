//! JSON model files.
//!
//! ```json
//! {
//!   "name": "Heisenberg",
//!   "mode": "exact",
//!   "brackets": { "2,3": [-2, 0, 0] },
//!   "metric": [[1, 0, 0], [0, 1, 0], [0, 0, -1]],
//!   "phi": [[0, 0, 0], [0, 0, 1], [0, 1, 0]],
//!   "eta": [1, 0, 0],
//!   "xi": [1, 0, 0]
//! }
//! ```
//!
//! Frame indices are 1-based with `e₁ = ξ`. Matrices are listed by rows, and
//! column `j` of `phi` is the image of `e_j`. Bracket pairs that are absent
//! are zero.

use std::fmt;
use std::path::Path;

use num_traits::ToPrimitive;
use paraclass_core::scalar::ScalarParseError;
use paraclass_core::{
    BilinearForm, Covector, Endomorphism, Exact, LieFrameModel, Scalar, ScalarMode,
    StructureConstants, Vec3,
};
use serde_json::{Map, Number, Value};

use crate::error::CliError;

/// Parse failure, located by line (when known) and field path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line {
            write!(f, "line {line}: ")?;
        }
        if let Some(field) = &self.field {
            write!(f, "field `{field}`: ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for ParseError {}

/// Scalars that can travel through model files and reports.
pub trait JsonScalar: Scalar {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, ScalarParseError>;
}

impl JsonScalar for Exact {
    fn to_json(&self) -> Value {
        if self.is_integer() {
            if let Some(n) = self.numer().to_i64() {
                return Value::from(n);
            }
        }
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self, ScalarParseError> {
        match v {
            Value::Number(n) => match n.as_i64() {
                Some(i) => Ok(Exact::from_int(i)),
                None => Err(ScalarParseError::DecimalInExactMode(n.to_string())),
            },
            Value::String(s) => Exact::parse_literal(s),
            other => Err(ScalarParseError::Invalid(other.to_string())),
        }
    }
}

impl JsonScalar for f64 {
    fn to_json(&self) -> Value {
        let v = if *self == 0.0 { 0.0 } else { *self };
        Number::from_f64(v).map_or(Value::Null, Value::Number)
    }

    fn from_json(v: &Value) -> Result<Self, ScalarParseError> {
        match v {
            Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| ScalarParseError::Invalid(n.to_string())),
            Value::String(s) => f64::parse_literal(s),
            other => Err(ScalarParseError::Invalid(other.to_string())),
        }
    }
}

/// A parsed model in whichever scalar mode its file declared.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq)]
pub enum AnyModel {
    Exact(LieFrameModel<Exact>),
    Float(LieFrameModel<f64>),
}

impl AnyModel {
    pub fn name(&self) -> &str {
        match self {
            AnyModel::Exact(m) => &m.name,
            AnyModel::Float(m) => &m.name,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyModel::Exact(m) => model_to_json(m),
            AnyModel::Float(m) => model_to_json(m),
        }
    }
}

const FIELDS: [&str; 7] = ["name", "mode", "brackets", "metric", "phi", "eta", "xi"];

struct Source<'a> {
    text: &'a str,
}

impl Source<'_> {
    /// First line mentioning the innermost named key of `field`.
    fn line_of(&self, field: &str) -> Option<usize> {
        let last = field.rsplit('.').next().unwrap_or(field);
        let key = last.split('[').next().unwrap_or(last);
        let needle = format!("\"{key}\"");
        self.text
            .lines()
            .position(|l| l.contains(&needle))
            .map(|i| i + 1)
    }

    fn error(&self, field: &str, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line_of(field),
            field: Some(field.to_string()),
            message: message.into(),
        }
    }

    fn scalar<S: JsonScalar>(&self, v: &Value, field: &str) -> Result<S, ParseError> {
        S::from_json(v).map_err(|e| self.error(field, e.to_string()))
    }

    fn vector<S: JsonScalar>(&self, v: &Value, field: &str) -> Result<Vec3<S>, ParseError> {
        let items = match v.as_array() {
            Some(a) if a.len() == 3 => a,
            _ => return Err(self.error(field, "expected an array of 3 scalars")),
        };
        Ok(Vec3::new(
            self.scalar(&items[0], &format!("{field}[0]"))?,
            self.scalar(&items[1], &format!("{field}[1]"))?,
            self.scalar(&items[2], &format!("{field}[2]"))?,
        ))
    }

    fn matrix<S: JsonScalar>(&self, v: &Value, field: &str) -> Result<[[S; 3]; 3], ParseError> {
        let rows = match v.as_array() {
            Some(a) if a.len() == 3 => a,
            _ => return Err(self.error(field, "expected a 3×3 array of rows")),
        };
        let r0 = self.vector::<S>(&rows[0], &format!("{field}[0]"))?;
        let r1 = self.vector::<S>(&rows[1], &format!("{field}[1]"))?;
        let r2 = self.vector::<S>(&rows[2], &format!("{field}[2]"))?;
        Ok([r0.0, r1.0, r2.0])
    }

    fn brackets<S: JsonScalar>(&self, v: &Value) -> Result<StructureConstants<S>, ParseError> {
        let map = v
            .as_object()
            .ok_or_else(|| self.error("brackets", "expected an object keyed by \"i,j\""))?;
        let mut sc = StructureConstants::abelian();
        for (key, value) in map {
            let field = format!("brackets.{key}");
            let (i, j) = parse_pair(key)
                .ok_or_else(|| self.error(&field, "key must be \"i,j\" with 1 ≤ i < j ≤ 3"))?;
            sc = sc.with(i - 1, j - 1, self.vector(value, &field)?);
        }
        Ok(sc)
    }
}

fn parse_pair(key: &str) -> Option<(usize, usize)> {
    let (a, b) = key.split_once(',')?;
    let i: usize = a.trim().parse().ok()?;
    let j: usize = b.trim().parse().ok()?;
    (1 <= i && i < j && j <= 3).then_some((i, j))
}

fn build<S: JsonScalar>(
    src: &Source,
    obj: &Map<String, Value>,
) -> Result<LieFrameModel<S>, ParseError> {
    let name = obj["name"]
        .as_str()
        .ok_or_else(|| src.error("name", "expected a string"))?
        .to_string();
    Ok(LieFrameModel {
        name,
        sc: src.brackets(&obj["brackets"])?,
        g: BilinearForm(src.matrix(&obj["metric"], "metric")?),
        phi: Endomorphism(src.matrix(&obj["phi"], "phi")?),
        eta: Covector(src.vector::<S>(&obj["eta"], "eta")?.0),
        xi: src.vector(&obj["xi"], "xi")?,
    })
}

/// Parses model-file text.
pub fn parse_model_str(text: &str) -> Result<AnyModel, ParseError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ParseError {
        line: Some(e.line()),
        field: None,
        message: e.to_string(),
    })?;
    let src = Source { text };
    let obj = value.as_object().ok_or_else(|| ParseError {
        line: Some(1),
        field: None,
        message: "expected a JSON object".into(),
    })?;
    for key in FIELDS {
        if !obj.contains_key(key) {
            return Err(ParseError {
                line: None,
                field: Some(key.to_string()),
                message: "missing field".into(),
            });
        }
    }
    if let Some(extra) = obj.keys().find(|k| !FIELDS.contains(&k.as_str())) {
        return Err(src.error(extra, "unknown field"));
    }
    match obj["mode"].as_str() {
        Some("exact") => build::<Exact>(&src, obj).map(AnyModel::Exact),
        Some("float") => build::<f64>(&src, obj).map(AnyModel::Float),
        _ => Err(src.error("mode", "expected \"exact\" or \"float\"")),
    }
}

pub fn parse_model(path: &Path) -> Result<AnyModel, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_model_str(&text).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

pub fn vector_json<S: JsonScalar>(v: &Vec3<S>) -> Value {
    Value::Array(v.iter().map(JsonScalar::to_json).collect())
}

pub fn matrix_json<S: JsonScalar>(m: &[[S; 3]; 3]) -> Value {
    Value::Array(
        m.iter()
            .map(|row| Value::Array(row.iter().map(JsonScalar::to_json).collect()))
            .collect(),
    )
}

/// Serializes a model in model-file form. Zero brackets are omitted.
pub fn model_to_json<S: JsonScalar>(m: &LieFrameModel<S>) -> Value {
    let mut brackets = Map::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let b = m.sc.basis_bracket(i, j);
        if b.iter().any(|c| !c.is_zero()) {
            brackets.insert(format!("{},{}", i + 1, j + 1), vector_json(&b));
        }
    }
    let mut obj = Map::new();
    obj.insert("name".into(), Value::String(m.name.clone()));
    obj.insert("mode".into(), Value::String(S::MODE.as_str().into()));
    obj.insert("brackets".into(), Value::Object(brackets));
    obj.insert("metric".into(), matrix_json(&m.g.0));
    obj.insert("phi".into(), matrix_json(&m.phi.0));
    obj.insert("eta".into(), vector_json(&Vec3(m.eta.0.clone())));
    obj.insert("xi".into(), vector_json(&m.xi));
    Value::Object(obj)
}

/// Pretty-printed model file with a trailing newline.
pub fn model_file_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn mode_of(m: &AnyModel) -> ScalarMode {
    match m {
        AnyModel::Exact(_) => ScalarMode::Exact,
        AnyModel::Float(_) => ScalarMode::Float,
    }
}
