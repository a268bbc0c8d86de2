//! Report rendering shared by the CLI and the test suites: JSON report
//! bodies, human-readable tables, the constraint-matrix text export,
//! and the class-file format.

use serde_json::{json, Value};
use std::collections::BTreeMap;

use crate::cohomology::{CohomologyClass, CohomologyError, HilbertData, MembershipReport};
use crate::constraints::{ConstraintFamily, ConstraintSystem};
use crate::exactalg::{format_rational, parse_polynomial};
use crate::model::{GkmSpace, Severity, ValidationReport};
use thiserror::Error;

pub fn validation_json(report: &ValidationReport) -> Value {
    let issue = |i: &crate::model::Issue| {
        json!({
            "severity": match i.severity { Severity::Error => "error", Severity::Warning => "warning" },
            "location": i.location,
            "message": i.message,
        })
    };
    json!({
        "valid": report.is_valid(),
        "errors": report.errors().map(issue).collect::<Vec<_>>(),
        "warnings": report.warnings().map(issue).collect::<Vec<_>>(),
    })
}

pub fn hilbert_json(space: &GkmSpace, data: &HilbertData, basis: Option<&[Vec<(String, String)>]>) -> Value {
    let mut body = json!({
        "max_degree": 2 * data.max_degree,
        "hilbert": data.equivariant,
        "betti_candidates": data.betti_candidates,
        "betti": data.betti_vector(),
        "consistent": data.consistent,
        "fixed_points": space.fixed_points,
    });
    if let Some(basis) = basis {
        let rendered: Vec<Value> = basis
            .iter()
            .map(|classes| {
                Value::Array(
                    classes
                        .iter()
                        .map(|(p, f)| json!({ "point": p, "value": f }))
                        .collect(),
                )
            })
            .collect();
        body["basis"] = Value::Array(rendered);
    }
    body
}

pub fn membership_json(space: &GkmSpace, report: &MembershipReport) -> Value {
    json!({
        "member": report.member,
        "violations": report
            .violations
            .iter()
            .map(|v| {
                let p = &v.row.provenance;
                json!({
                    "stratum": p.stratum,
                    "family": match &p.family {
                        ConstraintFamily::Congruence { base_point, other_point } => json!({
                            "kind": "congruence",
                            "base": space.fixed_points[*base_point],
                            "other": space.fixed_points[*other_point],
                        }),
                        ConstraintFamily::Abbv => json!({ "kind": "abbv" }),
                    },
                    "monomial": p.monomial.display(&space.torus.variables),
                    "value": format_rational(&v.value),
                })
            })
            .collect::<Vec<_>>(),
    })
}

/// Plain-text export: one provenance comment line and one row of
/// rationals per constraint.
pub fn export_matrix_text(space: &GkmSpace, system: &ConstraintSystem) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "# degree {} system: {} points x {} monomials = {} columns, {} rows\n",
        system.layout.degree,
        system.layout.n_points,
        system.layout.monomials.len(),
        system.layout.column_count(),
        system.rows.len()
    ));
    for row in &system.rows {
        let p = &row.provenance;
        let family = match &p.family {
            ConstraintFamily::Congruence { base_point, other_point } => format!(
                "congruence base={} other={}",
                space.fixed_points[*base_point], space.fixed_points[*other_point]
            ),
            ConstraintFamily::Abbv => "abbv".to_string(),
        };
        out.push_str(&format!(
            "# stratum {} {} monomial={}\n",
            p.stratum,
            family,
            p.monomial.display(&space.torus.variables)
        ));
        let rendered: Vec<String> = row.coeffs.iter().map(format_rational).collect();
        out.push_str(&rendered.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Debug, Error)]
pub enum ClassFileError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("class file must be an object mapping fixed point ids to polynomial strings")]
    NotAnObject,
    #[error("polynomial for `{point}`: {message}")]
    BadPolynomial { point: String, message: String },
    #[error(transparent)]
    Class(#[from] CohomologyError),
}

/// Parses a class file: a JSON object mapping every fixed point id to a
/// polynomial string in the space's variables, e.g.
/// `{"p1": "0", "p2": "x", "p3": "2*x"}`.
pub fn parse_class_file(text: &str, space: &GkmSpace) -> Result<CohomologyClass, ClassFileError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| ClassFileError::Json(e.to_string()))?;
    let obj = value.as_object().ok_or(ClassFileError::NotAnObject)?;
    let mut values = BTreeMap::new();
    for (point, poly_text) in obj {
        let text = poly_text
            .as_str()
            .ok_or_else(|| ClassFileError::BadPolynomial {
                point: point.clone(),
                message: "expected a string".to_string(),
            })?;
        let poly = parse_polynomial(text, &space.torus.variables).map_err(|e| {
            ClassFileError::BadPolynomial {
                point: point.clone(),
                message: e.to_string(),
            }
        })?;
        values.insert(point.clone(), poly);
    }
    Ok(CohomologyClass::new(space, values)?)
}

/// Renders a basis class as (point, polynomial) pairs in declared
/// variable names, in fixed-point order.
pub fn render_class(space: &GkmSpace, class: &CohomologyClass) -> Vec<(String, String)> {
    space
        .fixed_points
        .iter()
        .map(|p| {
            (
                p.clone(),
                class.restriction(p).display(&space.torus.variables),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::check_class;

    #[test]
    fn class_file_round_trip() {
        let space = crate::corpus::space("cp2_s1");
        let class = parse_class_file(r#"{"p1": "0", "p2": "x", "p3": "2*x"}"#, &space).unwrap();
        assert!(check_class(&space, &class).member);
        let rendered = render_class(&space, &class);
        assert_eq!(rendered[1], ("p2".to_string(), "x".to_string()));
    }

    #[test]
    fn class_file_errors() {
        let space = crate::corpus::space("cp2_s1");
        assert!(parse_class_file("[1,2]", &space).is_err());
        assert!(parse_class_file(r#"{"p1": "0", "p2": "x"}"#, &space).is_err());
        assert!(parse_class_file(r#"{"p1": "0", "p2": "x", "p3": "q"}"#, &space).is_err());
        assert!(
            parse_class_file(r#"{"p1": "0", "p2": "x", "p3": "2*x", "p9": "x"}"#, &space).is_err()
        );
        // degree mismatch across points
        assert!(parse_class_file(r#"{"p1": "x^2", "p2": "x", "p3": "2*x"}"#, &space).is_err());
    }
}
