//! Combinatorial data model for a Hamiltonian torus space with isolated
//! fixed points and strata of dimension at most 4, plus structural
//! validation and the JSON wire format.

use num::{BigRational, Zero};
use serde_json::{json, Map, Value};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

use crate::exactalg::{format_rational, parse_rational, LinearForm};

/// Torus rank and the ordered variable names of `S(g*)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusContext {
    pub rank: usize,
    pub variables: Vec<String>,
}

impl TorusContext {
    pub fn new(rank: usize) -> Self {
        TorusContext {
            rank,
            variables: default_variables(rank),
        }
    }
}

/// Default variable names x, y, z, w, then x5, x6, ...
pub fn default_variables(rank: usize) -> Vec<String> {
    const NAMES: [&str; 4] = ["x", "y", "z", "w"];
    (0..rank)
        .map(|i| {
            NAMES
                .get(i)
                .map(|s| s.to_string())
                .unwrap_or_else(|| format!("x{}", i + 1))
        })
        .collect()
}

/// A 2-dimensional stratum: a two-sphere with fixed points north and
/// south, carrying the direction form spanning ker(pi_H).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSphereStratum {
    pub north: String,
    pub south: String,
    pub direction: Vec<i64>,
}

/// A 4-dimensional stratum: at least three fixed points, a common
/// direction form alpha, and per-point multiplier pairs (c1, c2) so that
/// the tangent weights at that point are c1*alpha and c2*alpha.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourStratum {
    pub points: Vec<String>,
    pub direction: Vec<i64>,
    pub multipliers: BTreeMap<String, (BigRational, BigRational)>,
}

impl FourStratum {
    /// Sum of 1/(c1*c2) over the stratum's points; localization of the
    /// constant class forces this to vanish.
    pub fn residue_sum(&self) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for p in &self.points {
            let (c1, c2) = self.multipliers.get(p)?;
            let prod = c1 * c2;
            if prod.is_zero() {
                return None;
            }
            acc += prod.recip();
        }
        Some(acc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stratum {
    TwoSphere(TwoSphereStratum),
    Four(FourStratum),
}

impl Stratum {
    pub fn direction(&self) -> &[i64] {
        match self {
            Stratum::TwoSphere(s) => &s.direction,
            Stratum::Four(s) => &s.direction,
        }
    }

    pub fn direction_form(&self) -> LinearForm {
        LinearForm::from_integers(self.direction())
    }

    pub fn points(&self) -> Vec<&str> {
        match self {
            Stratum::TwoSphere(s) => vec![&s.north, &s.south],
            Stratum::Four(s) => s.points.iter().map(|p| p.as_str()).collect(),
        }
    }
}

/// The full input: torus context, fixed points, and the finite stratum
/// list. Immutable after parse; shareable across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkmSpace {
    pub torus: TorusContext,
    pub fixed_points: Vec<String>,
    pub strata: Vec<Stratum>,
}

impl GkmSpace {
    pub fn point_index(&self, id: &str) -> Option<usize> {
        self.fixed_points.iter().position(|p| p == id)
    }

    pub fn n_points(&self) -> usize {
        self.fixed_points.len()
    }

    /// Copy with every direction form made primitive (integer entries,
    /// gcd 1, first nonzero entry positive) and multipliers rescaled so
    /// the tangent weights are unchanged.
    pub fn normalized(&self) -> GkmSpace {
        let mut out = self.clone();
        for stratum in &mut out.strata {
            match stratum {
                Stratum::TwoSphere(s) => {
                    if let Some((dir, _)) = normalize_direction(&s.direction) {
                        s.direction = dir;
                    }
                }
                Stratum::Four(s) => {
                    if let Some((dir, scale)) = normalize_direction(&s.direction) {
                        if dir != s.direction {
                            let factor = BigRational::from_integer(scale.into());
                            for (c1, c2) in s.multipliers.values_mut() {
                                *c1 *= &factor;
                                *c2 *= &factor;
                            }
                            s.direction = dir;
                        }
                    }
                }
            }
        }
        out
    }

    /// Structural validation per the stratum model. Scans everything and
    /// never aborts early; all failures are errors except direction
    /// primitivity, which is reported as a warning (the engine
    /// normalizes on the fly).
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        let declared: BTreeSet<&str> = self.fixed_points.iter().map(|s| s.as_str()).collect();
        if self.fixed_points.is_empty() {
            issues.push(Issue::error("space", "at least one fixed point is required"));
        }
        for (i, stratum) in self.strata.iter().enumerate() {
            let loc = format!("strata[{}]", i);
            let dir = stratum.direction();
            if dir.len() != self.torus.rank {
                issues.push(Issue::error(
                    &loc,
                    format!(
                        "direction has length {} but torus rank is {}",
                        dir.len(),
                        self.torus.rank
                    ),
                ));
                continue;
            }
            if dir.iter().all(|&c| c == 0) {
                issues.push(Issue::error(&loc, "direction form is zero"));
                continue;
            }
            if let Some((primitive, _)) = normalize_direction(dir) {
                if primitive != dir {
                    issues.push(Issue::warning(
                        &loc,
                        format!(
                            "direction {:?} is not primitive; normalized to {:?}",
                            dir, primitive
                        ),
                    ));
                }
            }
            for p in stratum.points() {
                if !declared.contains(p) {
                    issues.push(Issue::error(
                        &loc,
                        format!("references undeclared fixed point `{}`", p),
                    ));
                }
            }
            match stratum {
                Stratum::TwoSphere(s) => {
                    if s.north == s.south {
                        issues.push(Issue::error(&loc, "two-sphere stratum needs two distinct fixed points"));
                    }
                }
                Stratum::Four(s) => {
                    let unique: BTreeSet<&String> = s.points.iter().collect();
                    if unique.len() != s.points.len() {
                        issues.push(Issue::error(&loc, "repeated fixed point in stratum"));
                    }
                    if s.points.len() < 3 {
                        issues.push(Issue::error(
                            &loc,
                            format!("4-dimensional stratum needs at least 3 fixed points, has {}", s.points.len()),
                        ));
                    }
                    let mut multipliers_ok = true;
                    for p in &s.points {
                        match s.multipliers.get(p) {
                            None => {
                                multipliers_ok = false;
                                issues.push(Issue::error(
                                    &loc,
                                    format!("missing multiplier pair for `{}`", p),
                                ));
                            }
                            Some((c1, c2)) => {
                                if c1.is_zero() || c2.is_zero() {
                                    multipliers_ok = false;
                                    issues.push(Issue::error(
                                        &loc,
                                        format!("zero multiplier at `{}`", p),
                                    ));
                                }
                            }
                        }
                    }
                    for p in s.multipliers.keys() {
                        if !s.points.contains(p) {
                            issues.push(Issue::error(
                                &loc,
                                format!("multiplier for `{}` which is not in the stratum", p),
                            ));
                        }
                    }
                    if multipliers_ok {
                        match s.residue_sum() {
                            Some(sum) if sum.is_zero() => {}
                            Some(sum) => issues.push(Issue::error(
                                &loc,
                                format!(
                                    "residue identity violated: sum of 1/(c1*c2) = {} (must be 0)",
                                    format_rational(&sum)
                                ),
                            )),
                            None => {}
                        }
                    }
                }
            }
        }
        ValidationReport { issues }
    }

    /// Parses the JSON document format. Unknown fields are rejected.
    pub fn parse(document: &str) -> Result<GkmSpace, ParseError> {
        let value: Value = serde_json::from_str(document)
            .map_err(|e| ParseError::Json(e.to_string()))?;
        let obj = as_object(&value, "$")?;
        check_fields(obj, "$", &["torus_rank", "variables", "fixed_points", "strata"])?;
        let rank = get_usize(obj, "$", "torus_rank")?;
        if rank == 0 {
            return Err(ParseError::schema("$.torus_rank", "torus rank must be at least 1"));
        }
        let variables = match obj.get("variables") {
            None => default_variables(rank),
            Some(v) => as_string_array(v, "$.variables")?,
        };
        if variables.len() != rank {
            return Err(ParseError::schema(
                "$.variables",
                format!("{} variable names for torus rank {}", variables.len(), rank),
            ));
        }
        let unique_vars: BTreeSet<&String> = variables.iter().collect();
        if unique_vars.len() != variables.len() {
            return Err(ParseError::schema("$.variables", "variable names must be distinct"));
        }
        let fixed_points = as_string_array(
            obj.get("fixed_points")
                .ok_or_else(|| ParseError::schema("$", "missing field `fixed_points`"))?,
            "$.fixed_points",
        )?;
        let mut seen = BTreeSet::new();
        for p in &fixed_points {
            if !seen.insert(p.clone()) {
                return Err(ParseError::DuplicatePoint(p.clone()));
            }
        }
        let strata_value = obj
            .get("strata")
            .ok_or_else(|| ParseError::schema("$", "missing field `strata`"))?;
        let Value::Array(strata_raw) = strata_value else {
            return Err(ParseError::schema("$.strata", "expected an array"));
        };
        let mut strata = Vec::new();
        for (i, s) in strata_raw.iter().enumerate() {
            let path = format!("$.strata[{}]", i);
            strata.push(parse_stratum(s, &path, rank)?);
        }
        Ok(GkmSpace {
            torus: TorusContext { rank, variables },
            fixed_points,
            strata,
        })
    }

    /// Deterministic JSON serialization; `parse(serialize(s)) == s`.
    pub fn serialize(&self) -> String {
        let strata: Vec<Value> = self
            .strata
            .iter()
            .map(|s| match s {
                Stratum::TwoSphere(t) => json!({
                    "type": "two_sphere",
                    "points": [t.north, t.south],
                    "direction": t.direction,
                }),
                Stratum::Four(f) => {
                    let mut mults = Map::new();
                    for (p, (c1, c2)) in &f.multipliers {
                        mults.insert(
                            p.clone(),
                            json!([format_rational(c1), format_rational(c2)]),
                        );
                    }
                    json!({
                        "type": "four_component",
                        "points": f.points,
                        "direction": f.direction,
                        "multipliers": mults,
                    })
                }
            })
            .collect();
        let doc = json!({
            "torus_rank": self.torus.rank,
            "variables": self.torus.variables,
            "fixed_points": self.fixed_points,
            "strata": strata,
        });
        let mut out = serde_json::to_string_pretty(&doc).expect("serialization cannot fail");
        out.push('\n');
        out
    }
}

fn parse_stratum(value: &Value, path: &str, rank: usize) -> Result<Stratum, ParseError> {
    let obj = as_object(value, path)?;
    let kind = obj
        .get("type")
        .and_then(|t| t.as_str())
        .ok_or_else(|| ParseError::schema(path, "missing or non-string `type`"))?;
    match kind {
        "two_sphere" => {
            check_fields(obj, path, &["type", "points", "direction"])?;
            let points = as_string_array(
                obj.get("points")
                    .ok_or_else(|| ParseError::schema(path, "missing field `points`"))?,
                &format!("{}.points", path),
            )?;
            if points.len() != 2 {
                return Err(ParseError::schema(
                    &format!("{}.points", path),
                    "two-sphere stratum needs exactly 2 points",
                ));
            }
            let direction = parse_direction(obj, path, rank)?;
            Ok(Stratum::TwoSphere(TwoSphereStratum {
                north: points[0].clone(),
                south: points[1].clone(),
                direction,
            }))
        }
        "four_component" => {
            check_fields(obj, path, &["type", "points", "direction", "multipliers"])?;
            let points = as_string_array(
                obj.get("points")
                    .ok_or_else(|| ParseError::schema(path, "missing field `points`"))?,
                &format!("{}.points", path),
            )?;
            let direction = parse_direction(obj, path, rank)?;
            let mults_value = obj
                .get("multipliers")
                .ok_or_else(|| ParseError::schema(path, "missing field `multipliers`"))?;
            let mults_obj = as_object(mults_value, &format!("{}.multipliers", path))?;
            let mut multipliers = BTreeMap::new();
            for (key, v) in mults_obj {
                let mpath = format!("{}.multipliers.{}", path, key);
                let Value::Array(pair) = v else {
                    return Err(ParseError::schema(&mpath, "expected a pair of rational strings"));
                };
                if pair.len() != 2 {
                    return Err(ParseError::schema(&mpath, "expected exactly 2 entries"));
                }
                let mut parsed = Vec::new();
                for entry in pair {
                    let s = entry
                        .as_str()
                        .ok_or_else(|| ParseError::schema(&mpath, "rationals are encoded as strings"))?;
                    parsed.push(
                        parse_rational(s)
                            .map_err(|e| ParseError::schema(&mpath, e.to_string()))?,
                    );
                }
                multipliers.insert(key.clone(), (parsed[0].clone(), parsed[1].clone()));
            }
            Ok(Stratum::Four(FourStratum {
                points,
                direction,
                multipliers,
            }))
        }
        other => Err(ParseError::schema(
            path,
            format!("unknown stratum type `{}`", other),
        )),
    }
}

fn parse_direction(obj: &Map<String, Value>, path: &str, rank: usize) -> Result<Vec<i64>, ParseError> {
    let dpath = format!("{}.direction", path);
    let value = obj
        .get("direction")
        .ok_or_else(|| ParseError::schema(path, "missing field `direction`"))?;
    let Value::Array(entries) = value else {
        return Err(ParseError::schema(&dpath, "expected an array of integers"));
    };
    let mut out = Vec::new();
    for e in entries {
        out.push(
            e.as_i64()
                .ok_or_else(|| ParseError::schema(&dpath, "expected an integer"))?,
        );
    }
    if out.len() != rank {
        return Err(ParseError::schema(
            &dpath,
            format!("direction has length {} but torus rank is {}", out.len(), rank),
        ));
    }
    Ok(out)
}

/// Primitive form of an integer direction vector: divide by the gcd and
/// make the first nonzero entry positive. Returns the primitive vector
/// together with the scalar `s` such that `old = s * new`. `None` for
/// the zero vector.
pub fn normalize_direction(direction: &[i64]) -> Option<(Vec<i64>, i64)> {
    let mut g: i64 = 0;
    for &c in direction {
        g = gcd(g, c.abs());
    }
    if g == 0 {
        return None;
    }
    let first = direction.iter().find(|&&c| c != 0).copied().unwrap();
    let scale = if first < 0 { -g } else { g };
    Some((direction.iter().map(|&c| c / scale).collect(), scale))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn as_object<'a>(value: &'a Value, path: &str) -> Result<&'a Map<String, Value>, ParseError> {
    value
        .as_object()
        .ok_or_else(|| ParseError::schema(path, "expected an object"))
}

fn as_string_array(value: &Value, path: &str) -> Result<Vec<String>, ParseError> {
    let Value::Array(entries) = value else {
        return Err(ParseError::schema(path, "expected an array of strings"));
    };
    entries
        .iter()
        .map(|e| {
            e.as_str()
                .map(|s| s.to_string())
                .ok_or_else(|| ParseError::schema(path, "expected a string"))
        })
        .collect()
}

fn check_fields(obj: &Map<String, Value>, path: &str, allowed: &[&str]) -> Result<(), ParseError> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(ParseError::schema(
                path,
                format!("unknown field `{}`", key),
            ));
        }
    }
    Ok(())
}

fn get_usize(obj: &Map<String, Value>, path: &str, field: &str) -> Result<usize, ParseError> {
    obj.get(field)
        .ok_or_else(|| ParseError::schema(path, format!("missing field `{}`", field)))?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| ParseError::schema(&format!("{}.{}", path, field), "expected a nonnegative integer"))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("schema violation at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("duplicate fixed point id `{0}`")]
    DuplicatePoint(String),
}

impl ParseError {
    fn schema(path: &str, message: impl Into<String>) -> Self {
        ParseError::Schema {
            path: path.to_string(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    pub severity: Severity,
    pub location: String,
    pub message: String,
}

impl Issue {
    fn error(location: &str, message: impl Into<String>) -> Self {
        Issue {
            severity: Severity::Error,
            location: location.to_string(),
            message: message.into(),
        }
    }

    fn warning(location: &str, message: impl Into<String>) -> Self {
        Issue {
            severity: Severity::Warning,
            location: location.to_string(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn errors(&self) -> impl Iterator<Item = &Issue> {
        self.issues
            .iter()
            .filter(|i| i.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Issue> {
        self.issues
            .iter()
            .filter(|i| i.severity == Severity::Warning)
    }

    pub fn is_valid(&self) -> bool {
        self.errors().next().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    fn q(n: i64) -> BigRational {
        BigRational::from_i64(n).unwrap()
    }

    fn cp2_like() -> GkmSpace {
        GkmSpace {
            torus: TorusContext::new(1),
            fixed_points: vec!["p1".into(), "p2".into(), "p3".into()],
            strata: vec![Stratum::Four(FourStratum {
                points: vec!["p1".into(), "p2".into(), "p3".into()],
                direction: vec![1],
                multipliers: BTreeMap::from([
                    ("p1".into(), (q(1), q(2))),
                    ("p2".into(), (q(-1), q(1))),
                    ("p3".into(), (q(-2), q(-1))),
                ]),
            })],
        }
    }

    #[test]
    fn residue_identity_accepts_paper_weights() {
        // 1/2 - 1 + 1/2 = 0
        let space = cp2_like();
        assert!(space.validate().is_valid());
    }

    #[test]
    fn residue_identity_for_reduced_orbit_weights() {
        // 1 - 1 - 1 + 1 = 0
        let stratum = FourStratum {
            points: vec!["p1".into(), "p2".into(), "p3".into(), "p4".into()],
            direction: vec![1],
            multipliers: BTreeMap::from([
                ("p1".into(), (q(1), q(1))),
                ("p2".into(), (q(1), q(-1))),
                ("p3".into(), (q(1), q(-1))),
                ("p4".into(), (q(-1), q(-1))),
            ]),
        };
        assert!(stratum.residue_sum().unwrap().is_zero());
    }

    #[test]
    fn stratum_with_two_points_is_rejected() {
        let mut space = cp2_like();
        if let Stratum::Four(s) = &mut space.strata[0] {
            s.points.truncate(2);
            s.multipliers.remove("p3");
        }
        let report = space.validate();
        assert!(!report.is_valid());
    }

    #[test]
    fn perturbed_multiplier_breaks_residue() {
        let mut space = cp2_like();
        if let Stratum::Four(s) = &mut space.strata[0] {
            let entry = s.multipliers.get_mut("p1").unwrap();
            entry.0 += q(1);
        }
        assert!(!space.validate().is_valid());
    }

    #[test]
    fn non_primitive_direction_warns() {
        let mut space = cp2_like();
        if let Stratum::Four(s) = &mut space.strata[0] {
            s.direction = vec![2];
        }
        let report = space.validate();
        assert!(report.is_valid());
        assert_eq!(report.warnings().count(), 1);
        let normalized = space.normalized();
        assert_eq!(normalized.strata[0].direction(), &[1]);
        if let Stratum::Four(s) = &normalized.strata[0] {
            // weights unchanged: c * alpha is invariant
            assert_eq!(s.multipliers["p1"].0, q(2));
        }
    }

    #[test]
    fn direction_sign_normalization() {
        assert_eq!(normalize_direction(&[-1, 1]), Some((vec![1, -1], -1)));
        assert_eq!(normalize_direction(&[0, 2]), Some((vec![0, 1], 2)));
        assert_eq!(normalize_direction(&[0, 0]), None);
    }

    #[test]
    fn round_trip_identity() {
        let space = cp2_like();
        let text = space.serialize();
        let parsed = GkmSpace::parse(&text).unwrap();
        assert_eq!(parsed, space);
    }

    #[test]
    fn parse_rejects_unknown_fields_and_bad_ranks() {
        let doc = r#"{"torus_rank": 1, "variables": ["x"], "fixed_points": ["a"], "strata": [], "extra": 1}"#;
        assert!(matches!(GkmSpace::parse(doc), Err(ParseError::Schema { .. })));

        let doc = r#"{"torus_rank": 2, "variables": ["x", "y"], "fixed_points": ["a", "b"],
            "strata": [{"type": "two_sphere", "points": ["a", "b"], "direction": [1, 0, 0]}]}"#;
        assert!(matches!(GkmSpace::parse(doc), Err(ParseError::Schema { .. })));

        let doc = r#"{"torus_rank": 1, "variables": ["x"], "fixed_points": ["a", "a"], "strata": []}"#;
        assert!(matches!(GkmSpace::parse(doc), Err(ParseError::DuplicatePoint(_))));

        assert!(matches!(GkmSpace::parse("not json"), Err(ParseError::Json(_))));
    }
}
