//! Graded solution of the constraint system: per-degree bases, Hilbert
//! data and ordinary Betti numbers via the formality quotient, class
//! membership, localization residues, and products.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

use crate::constraints::{
    constraint_matrix, CoefficientLayout, ConstraintRow, ConstraintSystem,
};
use crate::exactalg::{format_rational, Polynomial, RationalMatrix};
use crate::model::GkmSpace;

/// Assignment of one homogeneous polynomial of common degree k to every
/// fixed point (cohomological degree 2k).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyClass {
    pub degree: u32,
    pub values: BTreeMap<String, Polynomial>,
}

impl CohomologyClass {
    /// Builds a class after checking every fixed point has an entry and
    /// all entries are homogeneous of one degree.
    pub fn new(
        space: &GkmSpace,
        values: BTreeMap<String, Polynomial>,
    ) -> Result<Self, CohomologyError> {
        for id in values.keys() {
            if space.point_index(id).is_none() {
                return Err(CohomologyError::UnknownPoint(id.clone()));
            }
        }
        let mut degree: Option<u32> = None;
        for point in &space.fixed_points {
            let poly = values
                .get(point)
                .ok_or_else(|| CohomologyError::MissingPoint(point.clone()))?;
            if poly.n_vars() != space.torus.rank {
                return Err(CohomologyError::RankMismatch {
                    point: point.clone(),
                    expected: space.torus.rank,
                    got: poly.n_vars(),
                });
            }
            let Some(d) = poly.homogeneous_degree() else {
                return Err(CohomologyError::NotHomogeneous(point.clone()));
            };
            if !poly.is_zero() {
                match degree {
                    None => degree = Some(d),
                    Some(existing) if existing != d => {
                        return Err(CohomologyError::DegreeMismatch {
                            point: point.clone(),
                            expected: existing,
                            got: d,
                        })
                    }
                    _ => {}
                }
            }
        }
        Ok(CohomologyClass {
            degree: degree.unwrap_or(0),
            values,
        })
    }

    pub fn restriction(&self, point: &str) -> &Polynomial {
        &self.values[point]
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|p| p.is_zero())
    }

    fn vector(&self, space: &GkmSpace, layout: &CoefficientLayout) -> Vec<BigRational> {
        let polys: Vec<Polynomial> = space
            .fixed_points
            .iter()
            .map(|p| self.values[p].clone())
            .collect();
        layout.vector_of(&polys)
    }
}

/// Basis of the degree-k piece of the image of the restriction map.
#[derive(Debug, Clone)]
pub struct GradedBasis {
    pub degree: u32,
    pub classes: Vec<CohomologyClass>,
    /// Coefficient vectors of the classes in layout coordinates.
    pub vectors: Vec<Vec<BigRational>>,
    pub layout: CoefficientLayout,
}

impl GradedBasis {
    pub fn dimension(&self) -> usize {
        self.classes.len()
    }
}

/// Basis of the solution space at polynomial degree k: the nullspace of
/// the constraint matrix, with each basis vector scaled to primitive
/// integer coordinates (first nonzero entry positive).
pub fn solve_degree(space: &GkmSpace, degree: u32) -> GradedBasis {
    let system = constraint_matrix(space, degree);
    let raw = system.matrix().nullspace_basis();
    let vectors: Vec<Vec<BigRational>> = raw.iter().map(|v| primitive_scaled(v)).collect();
    let classes = vectors
        .iter()
        .map(|v| {
            let values: BTreeMap<String, Polynomial> = space
                .fixed_points
                .iter()
                .enumerate()
                .map(|(i, p)| (p.clone(), system.layout.polynomial_of(v, i)))
                .collect();
            CohomologyClass { degree, values }
        })
        .collect();
    GradedBasis {
        degree,
        classes,
        vectors,
        layout: system.layout,
    }
}

/// Clears denominators and common factors: the unique primitive integer
/// multiple with positive leading entry.
fn primitive_scaled(v: &[BigRational]) -> Vec<BigRational> {
    let mut lcm = BigInt::one();
    for entry in v {
        lcm = num::integer::lcm(lcm, entry.denom().clone());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|e| (e * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut gcd = BigInt::zero();
    for i in &ints {
        gcd = num::integer::gcd(gcd, i.clone());
    }
    if gcd.is_zero() {
        return v.to_vec();
    }
    let sign = ints
        .iter()
        .find(|i| !i.is_zero())
        .map(|i| if i.is_negative() { -BigInt::one() } else { BigInt::one() })
        .unwrap_or_else(BigInt::one);
    let scale = gcd * sign;
    ints.iter()
        .map(|i| BigRational::from_integer(i / &scale))
        .collect()
}

/// Equivariant dimension series and the candidate ordinary Betti
/// sequence obtained by multiplying by (1 - t^2)^rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertData {
    pub max_degree: u32,
    /// h_k = dim of the degree-2k piece, k = 0..=max_degree.
    pub equivariant: Vec<usize>,
    /// Coefficients of (sum h_k t^{2k}) * (1 - t^2)^rank, truncated.
    pub betti_candidates: Vec<i64>,
    /// True iff every candidate is nonnegative (equivariant formality
    /// holds numerically).
    pub consistent: bool,
}

impl HilbertData {
    /// The Betti vector: the candidates with trailing zeros removed.
    pub fn betti_vector(&self) -> Vec<i64> {
        let mut v = self.betti_candidates.clone();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }
}

/// Solves every degree up to `max_degree` (polynomial grading) and
/// extracts the Betti candidates by exact integer convolution.
pub fn hilbert(space: &GkmSpace, max_degree: u32) -> HilbertData {
    let equivariant: Vec<usize> = (0..=max_degree)
        .map(|k| solve_degree(space, k).dimension())
        .collect();
    let betti_candidates = betti_from_series(&equivariant, space.torus.rank);
    let consistent = betti_candidates.iter().all(|&q| q >= 0);
    HilbertData {
        max_degree,
        equivariant,
        betti_candidates,
        consistent,
    }
}

/// Multiplies the series sum h_k t^k by (1 - t)^rank, exactly.
pub fn betti_from_series(h: &[usize], rank: usize) -> Vec<i64> {
    let binom: Vec<i64> = {
        let mut row = vec![1i64];
        for _ in 0..rank {
            let mut next = vec![1i64];
            for w in row.windows(2) {
                next.push(w[0] + w[1]);
            }
            next.push(1);
            row = next;
        }
        row
    };
    (0..h.len())
        .map(|k| {
            let mut acc: i64 = 0;
            for (j, &b) in binom.iter().enumerate() {
                if j > k {
                    break;
                }
                let sign = if j % 2 == 0 { 1 } else { -1 };
                acc += sign * b * h[k - j] as i64;
            }
            acc
        })
        .collect()
}

/// Outcome of evaluating every constraint row on a class.
#[derive(Debug, Clone)]
pub struct MembershipReport {
    pub member: bool,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub row: ConstraintRow,
    pub value: BigRational,
}

impl Violation {
    pub fn describe(&self, space: &GkmSpace) -> String {
        use crate::constraints::ConstraintFamily;
        let p = &self.row.provenance;
        let family = match &p.family {
            ConstraintFamily::Congruence { base_point, other_point } => format!(
                "congruence between {} and {}",
                space.fixed_points[*base_point], space.fixed_points[*other_point]
            ),
            ConstraintFamily::Abbv => "localization (ABBV) condition".to_string(),
        };
        format!(
            "stratum {}: {} fails at monomial {} (value {})",
            p.stratum,
            family,
            p.monomial.display(&space.torus.variables),
            format_rational(&self.value)
        )
    }
}

/// Evaluates every constraint row of the class's degree on the class.
pub fn check_class(space: &GkmSpace, class: &CohomologyClass) -> MembershipReport {
    let system = constraint_matrix(space, class.degree);
    check_against(space, &system, class)
}

fn check_against(
    space: &GkmSpace,
    system: &ConstraintSystem,
    class: &CohomologyClass,
) -> MembershipReport {
    let vector = class.vector(space, &system.layout);
    let mut violations = Vec::new();
    for row in &system.rows {
        let value = row.evaluate(&vector);
        if !value.is_zero() {
            violations.push(Violation { row: row.clone(), value });
        }
    }
    MembershipReport {
        member: violations.is_empty(),
        violations,
    }
}

/// Result of localizing a class on a 4-dimensional stratum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResidueOutcome {
    /// alpha^2 divides the weighted numerator sum; the exact quotient.
    Quotient(Polynomial),
    /// The nonzero remainder modulo alpha^2, as a violation witness.
    Violation(Polynomial),
}

/// Computes sum_i f_i/(alpha_1^i alpha_2^i) on the stratum as an exact
/// rational function. Requires the congruence rows of the stratum to
/// hold first.
pub fn localization_residue(
    space: &GkmSpace,
    stratum_index: usize,
    class: &CohomologyClass,
) -> Result<ResidueOutcome, CohomologyError> {
    use crate::constraints::{congruence_rows, BuildOptions};
    use crate::exactalg::{LinearForm, Monomial, PivotRule};
    use crate::model::Stratum;

    let space = space.normalized();
    let Stratum::Four(stratum) = &space.strata[stratum_index] else {
        return Err(CohomologyError::NotAFourStratum(stratum_index));
    };
    let layout = CoefficientLayout::new(&space, class.degree);
    let rows = congruence_rows(&space, stratum_index, &layout, BuildOptions::default());
    let vector = class.vector(&space, &layout);
    if rows.iter().any(|r| !r.evaluate(&vector).is_zero()) {
        return Err(CohomologyError::CongruencePrecondition(stratum_index));
    }

    let n = space.torus.rank;
    let alpha = LinearForm::from_integers(&stratum.direction);
    let transform = crate::constraints::adapted_change_of_variables(&alpha, PivotRule::FirstNonzero);
    let inverse = transform.inverse().expect("invertible by construction");

    // weighted numerator sum
    let mut numerator = Polynomial::zero(n);
    for p in &stratum.points {
        let (c1, c2) = &stratum.multipliers[p];
        let w = (c1 * c2).recip();
        numerator = &numerator + &class.restriction(p).scale(&w);
    }

    // rewrite in adapted coordinates u with u_0 = alpha
    let x_in_u: Vec<Polynomial> = (0..n)
        .map(|j| {
            Polynomial::from_terms(
                n,
                (0..n).map(|i| (Monomial::var(n, i), inverse[(j, i)].clone())),
            )
        })
        .collect();
    let in_u = numerator.substitute_all(&x_in_u);

    let mut low = Polynomial::zero(n);
    let mut quotient_u = Polynomial::zero(n);
    for (m, c) in in_u.terms() {
        let e = m.exponents()[0];
        if e <= 1 {
            low = &low + &Polynomial::from_terms(n, [(m.clone(), c.clone())]);
        } else {
            let mut exps = m.exponents().to_vec();
            exps[0] = e - 2;
            quotient_u =
                &quotient_u + &Polynomial::from_terms(n, [(Monomial::new(exps), c.clone())]);
        }
    }

    // map back to the original variables: u_i = (T x)_i
    let u_in_x: Vec<Polynomial> = (0..n)
        .map(|i| {
            Polynomial::from_terms(
                n,
                (0..n).map(|j| (Monomial::var(n, j), transform[(i, j)].clone())),
            )
        })
        .collect();
    if low.is_zero() {
        Ok(ResidueOutcome::Quotient(quotient_u.substitute_all(&u_in_x)))
    } else {
        Ok(ResidueOutcome::Violation(low.substitute_all(&u_in_x)))
    }
}

/// Pointwise product of two classes, with closure enforced: the product
/// must satisfy the degree-(k_a + k_b) system, and is expressed in that
/// degree's solved basis.
pub fn multiply_classes(
    space: &GkmSpace,
    a: &CohomologyClass,
    b: &CohomologyClass,
) -> Result<(CohomologyClass, Vec<BigRational>), CohomologyError> {
    let mut values = BTreeMap::new();
    for point in &space.fixed_points {
        let fa = a
            .values
            .get(point)
            .ok_or_else(|| CohomologyError::MissingPoint(point.clone()))?;
        let fb = b
            .values
            .get(point)
            .ok_or_else(|| CohomologyError::MissingPoint(point.clone()))?;
        values.insert(point.clone(), fa * fb);
    }
    let product = CohomologyClass {
        degree: a.degree + b.degree,
        values,
    };
    let report = check_class(space, &product);
    if !report.member {
        return Err(CohomologyError::ClosureViolation {
            degree: product.degree,
            detail: report
                .violations
                .first()
                .map(|v| v.describe(space))
                .unwrap_or_default(),
        });
    }
    let basis = solve_degree(space, product.degree);
    let coords = express_in_basis(space, &basis, &product)?;
    Ok((product, coords))
}

/// Exact linear solve for the coordinates of a member class in a graded
/// basis.
pub fn express_in_basis(
    space: &GkmSpace,
    basis: &GradedBasis,
    class: &CohomologyClass,
) -> Result<Vec<BigRational>, CohomologyError> {
    let target = class.vector(space, &basis.layout);
    let n_cols = basis.vectors.len();
    let n_rows = basis.layout.column_count();
    let mut rows = Vec::with_capacity(n_rows);
    for r in 0..n_rows {
        let mut row: Vec<BigRational> = basis.vectors.iter().map(|v| v[r].clone()).collect();
        row.push(target[r].clone());
        rows.push(row);
    }
    let aug = RationalMatrix::from_rows(rows);
    let (red, pivots, _) = aug.rref();
    if pivots.contains(&n_cols) {
        return Err(CohomologyError::NotInSpan(class.degree));
    }
    let mut coords = vec![BigRational::zero(); n_cols];
    for (row, &p) in pivots.iter().enumerate() {
        coords[p] = red[(row, n_cols)].clone();
    }
    Ok(coords)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("unknown fixed point `{0}`")]
    UnknownPoint(String),
    #[error("missing polynomial for fixed point `{0}`")]
    MissingPoint(String),
    #[error("polynomial at `{0}` is not homogeneous")]
    NotHomogeneous(String),
    #[error("degree mismatch at `{point}`: expected {expected}, got {got}")]
    DegreeMismatch { point: String, expected: u32, got: u32 },
    #[error("polynomial at `{point}` has {got} variables but torus rank is {expected}")]
    RankMismatch { point: String, expected: usize, got: usize },
    #[error("stratum {0} is not 4-dimensional")]
    NotAFourStratum(usize),
    #[error("congruence rows of stratum {0} do not hold; residue undefined")]
    CongruencePrecondition(usize),
    #[error("product of member classes failed membership at degree {degree}: {detail}")]
    ClosureViolation { degree: u32, detail: String },
    #[error("class is not in the span of the degree-{0} basis")]
    NotInSpan(u32),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{FourStratum, Stratum, TorusContext};
    use num::FromPrimitive;

    fn q(n: i64) -> BigRational {
        BigRational::from_i64(n).unwrap()
    }

    fn cp2() -> GkmSpace {
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

    fn class(space: &GkmSpace, polys: &[(&str, Polynomial)]) -> CohomologyClass {
        CohomologyClass::new(
            space,
            polys
                .iter()
                .map(|(p, f)| (p.to_string(), f.clone()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn cp2_dimensions() {
        let space = cp2();
        assert_eq!(solve_degree(&space, 0).dimension(), 1);
        assert_eq!(solve_degree(&space, 1).dimension(), 2);
        assert_eq!(solve_degree(&space, 2).dimension(), 3);
    }

    #[test]
    fn solve_degree_classes_are_members_and_nonzero() {
        let space = cp2();
        for k in 0..=3 {
            let basis = solve_degree(&space, k);
            for c in &basis.classes {
                assert!(!c.is_zero() || basis.dimension() == 0);
                assert!(check_class(&space, c).member);
            }
        }
    }

    #[test]
    fn membership_examples() {
        let space = cp2();
        let x = Polynomial::var(1, 0);
        let member = class(
            &space,
            &[("p1", Polynomial::zero(1)), ("p2", x.clone()), ("p3", x.scale(&q(2)))],
        );
        assert!(check_class(&space, &member).member);

        let non_member = class(
            &space,
            &[("p1", Polynomial::zero(1)), ("p2", x.clone()), ("p3", x.scale(&q(3)))],
        );
        let report = check_class(&space, &non_member);
        assert!(!report.member);
        assert!(matches!(
            report.violations[0].row.provenance.family,
            crate::constraints::ConstraintFamily::Abbv
        ));

        let constants = class(
            &space,
            &[
                ("p1", Polynomial::constant(1, q(3))),
                ("p2", Polynomial::constant(1, q(3))),
                ("p3", Polynomial::constant(1, q(3))),
            ],
        );
        assert!(check_class(&space, &constants).member);
    }

    #[test]
    fn residue_examples() {
        let space = cp2();
        let x = Polynomial::var(1, 0);
        let x2 = &x * &x;

        let diag = class(&space, &[("p1", x.clone()), ("p2", x.clone()), ("p3", x.clone())]);
        assert_eq!(
            localization_residue(&space, 0, &diag).unwrap(),
            ResidueOutcome::Quotient(Polynomial::zero(1))
        );

        // (0, x^2, 4x^2): 0 - x^2 + 2x^2 = x^2, quotient 1
        let c = class(
            &space,
            &[("p1", Polynomial::zero(1)), ("p2", x2.clone()), ("p3", x2.scale(&q(4)))],
        );
        assert_eq!(
            localization_residue(&space, 0, &c).unwrap(),
            ResidueOutcome::Quotient(Polynomial::constant(1, q(1)))
        );

        // congruence precondition: (0, x, 2x) holds trivially at rank 1,
        // and a violating numerator is reported as a remainder
        let bad = class(
            &space,
            &[("p1", Polynomial::zero(1)), ("p2", x.clone()), ("p3", x.scale(&q(3)))],
        );
        match localization_residue(&space, 0, &bad).unwrap() {
            ResidueOutcome::Violation(r) => {
                assert_eq!(r, x.scale(&BigRational::new(1.into(), 2.into())));
            }
            other => panic!("expected violation, got {:?}", other),
        }
    }

    #[test]
    fn product_of_basis_classes() {
        let space = cp2();
        let x = Polynomial::var(1, 0);
        let one = class(
            &space,
            &[
                ("p1", Polynomial::constant(1, q(1))),
                ("p2", Polynomial::constant(1, q(1))),
                ("p3", Polynomial::constant(1, q(1))),
            ],
        );
        let deg2 = class(
            &space,
            &[("p1", Polynomial::zero(1)), ("p2", x.clone()), ("p3", x.scale(&q(2)))],
        );
        let (product, _) = multiply_classes(&space, &one, &deg2).unwrap();
        assert_eq!(product, deg2);

        let (square, _) = multiply_classes(&space, &deg2, &deg2).unwrap();
        let x2 = &x * &x;
        assert_eq!(square.restriction("p2"), &x2);
        assert_eq!(square.restriction("p3"), &x2.scale(&q(4)));
        assert!(check_class(&space, &square).member);
    }

    #[test]
    fn hilbert_and_betti_for_cp2() {
        let space = cp2();
        let data = hilbert(&space, 5);
        assert_eq!(data.equivariant, vec![1, 2, 3, 3, 3, 3]);
        assert_eq!(data.betti_candidates, vec![1, 1, 1, 0, 0, 0]);
        assert_eq!(data.betti_vector(), vec![1, 1, 1]);
        assert!(data.consistent);
    }
}
