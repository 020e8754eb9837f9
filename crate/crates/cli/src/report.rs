//! Report assembly and rendering.
//!
//! Reports are `serde_json::Value` trees. Object keys are kept sorted, so a
//! given input always serializes to the same bytes.

use std::fmt::Write as _;

use paraclass_core::classify::{
    classify, phi_symmetry_check, Classification, EigenData, NablaQCheck, PhiSymmetryReport,
};
use paraclass_core::paracontact::{identity_suite, validate_structure};
use paraclass_core::{Analysis, Defect, IdentityReport, LieFrameModel};
use serde_json::{json, Map, Value};

use crate::error::{exit, CliError};
use crate::modelfile::{matrix_json, vector_json, AnyModel, JsonScalar};

/// Which blocks to populate beyond validation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Sections {
    pub identities: bool,
    pub classification: bool,
    pub verbose: bool,
}

impl Sections {
    pub const VALIDATE: Sections = Sections {
        identities: false,
        classification: false,
        verbose: false,
    };
    pub const IDENTITIES: Sections = Sections {
        identities: true,
        classification: false,
        verbose: false,
    };
    pub const CLASSIFY: Sections = Sections {
        identities: true,
        classification: true,
        verbose: false,
    };
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub document: Value,
    /// Process exit status the report implies.
    pub status: i32,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s =
            serde_json::to_string_pretty(&self.document).expect("JSON values always serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        render_text(&self.document)
    }
}

fn defect_json<S: JsonScalar>(d: &Defect<S>) -> Value {
    json!({ "residual": d.residual.to_json(), "pass": d.passes() })
}

fn identities_json<S: JsonScalar>(r: &IdentityReport<S>) -> Value {
    Value::Object(
        r.iter()
            .map(|(id, d)| (id.label().to_string(), defect_json(d)))
            .collect(),
    )
}

fn opt<S: JsonScalar>(v: Option<&S>) -> Value {
    v.map_or(Value::Null, JsonScalar::to_json)
}

fn eigen_json<S: JsonScalar>(e: Option<&EigenData<S>>) -> Value {
    match e {
        None => Value::Null,
        Some(e) => json!({
            "lambda": opt(e.lambda.as_ref()),
            "lambda_sq": e.lambda_sq.to_json(),
            "eigenvector": e.eigenvector.as_ref().map_or(Value::Null, vector_json),
            "epsilon": e.epsilon,
        }),
    }
}

fn classification_json<S: JsonScalar>(c: &Classification<S>) -> Value {
    let sweep: Vec<Value> = c
        .sweep
        .iter()
        .map(|s| {
            json!({
                "t": opt(s.t.as_ref()),
                "direction": vector_json(&s.direction),
                "xi_sectional": s.xi_sectional.to_json(),
                "phi_sectional": s.phi_sectional.to_json(),
            })
        })
        .collect();
    let mut flags = Vec::new();
    if c.k.as_ref().is_some_and(|k| k.approx_eq(&S::one())) {
        flags.push(Value::from("k-equals-one"));
    }
    let commuting = c.fit.commutes;
    json!({
        "verdict": c.verdict.as_str(),
        "k": opt(c.k.as_ref()),
        "eigen": eigen_json(c.eigen.as_ref()),
        "a": if commuting { c.fit.a.to_json() } else { Value::Null },
        "b": if commuting { c.fit.b.to_json() } else { Value::Null },
        "gamma": c.gamma.to_json(),
        "xi_sectional": opt(c.xi_sectional.as_ref()),
        "phi_sectional": opt(c.phi_sectional.as_ref()),
        "sweep": sweep,
        "equivalence": {
            "eta_einstein": c.fit.is_eta_einstein,
            "q_phi_commutes": c.fit.commutes,
            "k_nullity": c.k_nullity.is_some(),
            "eta_einstein_residual": c.fit.residual.to_json(),
        },
        "flags": flags,
    })
}

fn nabla_q_json<S: JsonScalar>(n: &NablaQCheck<S>) -> Value {
    json!({
        "norm_sq": n.norm_sq.to_json(),
        "rhs": n.rhs.to_json(),
        "residual": n.residual.residual.to_json(),
        "pass": n.passes(),
    })
}

fn phi_symmetry_json<S: JsonScalar>(p: &PhiSymmetryReport<S>) -> Value {
    json!({
        "scal_constant": p.scal_constant,
        "residual": p.residual.residual.to_json(),
        "pass": p.residual.passes(),
        "trichotomy": {
            "scal_is_3trl": p.trichotomy.scal_is_3trl,
            "scal_is_minus_12": p.trichotomy.scal_is_minus_12,
            "trl_is_minus_4": p.trichotomy.trl_is_minus_4,
        },
    })
}

fn operators_json<S: JsonScalar>(a: &Analysis<S>) -> Value {
    json!({
        "h": matrix_json(&a.ops.h.0),
        "l": matrix_json(&a.ops.l.0),
        "tau": matrix_json(&a.ops.tau.0),
        "Q": matrix_json(&a.ricci.q.0),
        "trl": a.ops.trl.to_json(),
        "trh2": a.ops.trh2.to_json(),
        "scal": a.ricci.scal.to_json(),
    })
}

fn verbose_json<S: JsonScalar>(a: &Analysis<S>) -> (Value, Value) {
    let conn: Map<String, Value> = (0..3)
        .map(|i| {
            (
                format!("nabla_e{}", i + 1),
                matrix_json(&a.conn.matrix(i).0),
            )
        })
        .collect();
    let mut curv = Map::new();
    for i in 0..3 {
        for j in 0..3 {
            let cols: [[S; 3]; 3] =
                std::array::from_fn(|r| std::array::from_fn(|c| a.curv.get(i, j, c)[r].clone()));
            curv.insert(format!("R(e{},e{})", i + 1, j + 1), matrix_json(&cols));
        }
    }
    (Value::Object(conn), Value::Object(curv))
}

/// Runs the requested pipeline stages on a single model.
///
/// An axiom failure is not an error: the report carries the failing residuals
/// and a status of 2.
pub fn run_pipeline<S: JsonScalar>(
    m: LieFrameModel<S>,
    sections: Sections,
) -> Result<Report, CliError> {
    let mut doc = Map::new();
    doc.insert(
        "model".into(),
        json!({ "name": m.name, "mode": S::MODE.as_str() }),
    );
    let validation = validate_structure(&m).map_err(CliError::core("validation"))?;
    doc.insert(
        "validation".into(),
        json!({
            "pass": validation.all_pass(),
            "axioms": identities_json(&validation),
        }),
    );
    if !validation.all_pass() {
        return Ok(Report {
            document: Value::Object(doc),
            status: exit::AXIOM,
        });
    }
    if !sections.identities && !sections.classification {
        return Ok(Report {
            document: Value::Object(doc),
            status: exit::OK,
        });
    }

    let analysis = Analysis::new(m).map_err(CliError::core("analysis"))?;
    let suite = identity_suite(&analysis);
    doc.insert("identities".into(), identities_json(&suite));
    doc.insert("operators".into(), operators_json(&analysis));

    if sections.classification {
        let c = classify(&analysis).map_err(CliError::core("classification"))?;
        doc.insert("classification".into(), classification_json(&c));
        let phi_sym = phi_symmetry_check(&analysis).map_err(CliError::core("phi-symmetry"))?;
        doc.insert("nabla_q".into(), nabla_q_json(&phi_sym.nabla_q));
        doc.insert("phi_symmetry".into(), phi_symmetry_json(&phi_sym));
    }
    if sections.verbose {
        let (conn, curv) = verbose_json(&analysis);
        doc.insert("connection".into(), conn);
        doc.insert("curvature".into(), curv);
    }
    Ok(Report {
        document: Value::Object(doc),
        status: exit::OK,
    })
}

pub fn run_any(m: AnyModel, sections: Sections) -> Result<Report, CliError> {
    match m {
        AnyModel::Exact(m) => run_pipeline(m, sections),
        AnyModel::Float(m) => run_pipeline(m, sections),
    }
}

fn is_leaf(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn inline(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(inline).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::Object(map) => {
            let parts: Vec<String> = map
                .iter()
                .map(|(k, v)| format!("{k}={}", inline(v)))
                .collect();
            parts.join("  ")
        }
        other => other.to_string(),
    }
}

/// Compact enough to print on one line: a scalar, a vector or a matrix.
fn is_inline(v: &Value) -> bool {
    match v {
        Value::Array(items) => items
            .iter()
            .all(|i| is_leaf(i) || matches!(i, Value::Array(r) if r.iter().all(is_leaf))),
        other => is_leaf(other),
    }
}

fn render_into(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                if is_inline(v) {
                    let _ = writeln!(out, "{pad}{k}: {}", inline(v));
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    render_into(out, v, depth + 1);
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                let _ = writeln!(out, "{pad}- {}", inline(item));
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", inline(other));
        }
    }
}

/// Indented `key: value` rendering of a report tree.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, v, 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use paraclass_core::models::{model_general, model_k_greater, model_para_sasakian_heisenberg};
    use paraclass_core::{Exact, Scalar};

    fn q(n: i64, d: i64) -> Exact {
        Exact::from_ratio(n, d)
    }

    #[test]
    fn k_greater_three_report() {
        let r = run_pipeline(model_k_greater(q(3, 1), 1), Sections::CLASSIFY).unwrap();
        assert_eq!(r.status, 0);
        let c = &r.document["classification"];
        assert_eq!(c["verdict"], "ConstantCurvatures");
        assert_eq!(c["k"], 8);
        assert_eq!(c["a"], 0);
        assert_eq!(c["b"], 16);
        for row in c["sweep"].as_array().unwrap() {
            assert_eq!(row["xi_sectional"], 8);
            assert_eq!(row["phi_sectional"], -8);
        }
    }

    #[test]
    fn non_commuting_report() {
        let r = run_pipeline(model_general(q(1, 1), q(3, 1), q(1, 1)), Sections::CLASSIFY).unwrap();
        let c = &r.document["classification"];
        assert_eq!(c["verdict"], "NonCommuting");
        let p = &c["equivalence"];
        assert_eq!(
            (&p["eta_einstein"], &p["q_phi_commutes"], &p["k_nullity"]),
            (
                &Value::Bool(false),
                &Value::Bool(false),
                &Value::Bool(false)
            )
        );
    }

    #[test]
    fn heisenberg_is_para_sasakian() {
        let r = run_pipeline(
            model_para_sasakian_heisenberg::<Exact>(),
            Sections::IDENTITIES,
        )
        .unwrap();
        assert_eq!(r.document["identities"]["para-sasakian"]["pass"], true);
        assert!(r.document.get("classification").is_none());
    }

    #[test]
    fn axiom_failure_sets_status() {
        let mut m = model_para_sasakian_heisenberg::<Exact>();
        m.phi.0[1][1] = q(1, 7);
        let r = run_pipeline(m, Sections::CLASSIFY).unwrap();
        assert_eq!(r.status, exit::AXIOM);
        assert_eq!(r.document["validation"]["pass"], false);
        assert_eq!(
            r.document["validation"]["axioms"]["associated-metric"]["pass"],
            false
        );
    }

    #[test]
    fn verbose_adds_intermediates() {
        let sections = Sections {
            verbose: true,
            ..Sections::CLASSIFY
        };
        let r = run_pipeline(model_k_greater(q(3, 1), 1), sections).unwrap();
        assert_eq!(r.document["connection"].as_object().unwrap().len(), 3);
        assert_eq!(r.document["curvature"].as_object().unwrap().len(), 9);
    }

    #[test]
    fn text_rendering() {
        let v = json!({"a": 1, "b": {"c": [1, 2, 3], "d": [[1, 0], [0, 1]]}, "e": [{"x": 1}, {"x": 2}]});
        assert_eq!(
            render_text(&v),
            "a: 1\nb:\n  c: [1, 2, 3]\n  d: [[1, 0], [0, 1]]\ne:\n  - x=1\n  - x=2\n"
        );
    }
}
