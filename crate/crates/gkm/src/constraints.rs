//! Compiles a space and a polynomial degree into an exact linear
//! constraint system on the per-point coefficient unknowns: congruence
//! rows for every stratum and localization (ABBV) rows for every
//! 4-dimensional stratum.

use num::{BigRational, Zero};
use std::collections::BTreeMap;

use crate::exactalg::{
    monomials_of_degree, reduce_mod_linear, LinearForm, Monomial, PivotRule, Polynomial,
    RationalMatrix,
};
use crate::model::{GkmSpace, Stratum};

/// Column coordinates on the direct sum of degree-k pieces of S(g*),
/// one block of monomial coefficients per fixed point.
#[derive(Debug, Clone)]
pub struct CoefficientLayout {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    pub n_points: usize,
    pub n_vars: usize,
}

impl CoefficientLayout {
    pub fn new(space: &GkmSpace, degree: u32) -> Self {
        CoefficientLayout {
            degree,
            monomials: monomials_of_degree(space.torus.rank, degree),
            n_points: space.n_points(),
            n_vars: space.torus.rank,
        }
    }

    pub fn column_count(&self) -> usize {
        self.n_points * self.monomials.len()
    }

    pub fn column(&self, point: usize, monomial: usize) -> usize {
        debug_assert!(point < self.n_points && monomial < self.monomials.len());
        point * self.monomials.len() + monomial
    }

    /// Coefficient vector of a per-point assignment of homogeneous
    /// degree-k polynomials, in layout order.
    pub fn vector_of(&self, polys: &[Polynomial]) -> Vec<BigRational> {
        assert_eq!(polys.len(), self.n_points);
        let mut v = Vec::with_capacity(self.column_count());
        for p in polys {
            for m in &self.monomials {
                v.push(p.coefficient(m));
            }
        }
        v
    }

    /// Reads one point's polynomial back out of a coefficient vector.
    pub fn polynomial_of(&self, vector: &[BigRational], point: usize) -> Polynomial {
        Polynomial::from_terms(
            self.n_vars,
            self.monomials.iter().enumerate().map(|(j, m)| {
                (m.clone(), vector[self.column(point, j)].clone())
            }),
        )
    }
}

/// Which condition family produced a row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstraintFamily {
    /// Equality in the quotient by the stratum direction, between the
    /// stratum's base point and one other point.
    Congruence { base_point: usize, other_point: usize },
    /// Vanishing of a low-order coefficient in the localization sum.
    Abbv,
}

#[derive(Debug, Clone)]
pub struct RowProvenance {
    pub stratum: usize,
    pub family: ConstraintFamily,
    /// The quotient monomial (congruence) or adapted-coordinate
    /// monomial (ABBV) whose coefficient the row forces to zero.
    pub monomial: Monomial,
}

#[derive(Debug, Clone)]
pub struct ConstraintRow {
    pub coeffs: Vec<BigRational>,
    pub provenance: RowProvenance,
}

impl ConstraintRow {
    pub fn evaluate(&self, vector: &[BigRational]) -> BigRational {
        self.coeffs
            .iter()
            .zip(vector)
            .map(|(a, b)| a * b)
            .fold(BigRational::zero(), |acc, x| acc + x)
    }
}

#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub layout: CoefficientLayout,
    pub rows: Vec<ConstraintRow>,
}

impl ConstraintSystem {
    pub fn matrix(&self) -> RationalMatrix {
        if self.rows.is_empty() {
            return RationalMatrix::zero(0, self.layout.column_count());
        }
        RationalMatrix::from_rows(self.rows.iter().map(|r| r.coeffs.clone()).collect())
    }
}

/// Construction knobs; the non-default settings exist as cross-check
/// oracles and must never change the solution space.
#[derive(Debug, Clone, Copy, Default)]
pub struct BuildOptions {
    pub pivot_rule: PivotRule,
    /// Emit congruence rows for all point pairs instead of the spanning
    /// set anchored at the stratum's first point.
    pub all_pairs: bool,
}

/// Invertible rational change of variables sending the form `alpha` to
/// the first coordinate: row 0 is `alpha`, the remaining rows are the
/// identity rows for the non-pivot coordinates.
pub fn adapted_change_of_variables(alpha: &LinearForm, rule: PivotRule) -> RationalMatrix {
    let pivot = alpha.pivot(rule).expect("zero linear form");
    let n = alpha.n_vars();
    let mut rows = Vec::with_capacity(n);
    rows.push(alpha.coeffs().to_vec());
    for i in 0..n {
        if i == pivot {
            continue;
        }
        let mut row = vec![BigRational::zero(); n];
        row[i] = BigRational::from_integer(1.into());
        rows.push(row);
    }
    RationalMatrix::from_rows(rows)
}

/// Congruence rows for one stratum: for each selected point pair, the
/// difference of the two restrictions must reduce to zero modulo the
/// direction form. One row per monomial of the quotient representation.
pub fn congruence_rows(
    space: &GkmSpace,
    stratum_index: usize,
    layout: &CoefficientLayout,
    options: BuildOptions,
) -> Vec<ConstraintRow> {
    let stratum = &space.strata[stratum_index];
    let alpha = stratum.direction_form();
    let pivot = alpha.pivot(options.pivot_rule).expect("zero direction form");
    let point_indices: Vec<usize> = stratum
        .points()
        .iter()
        .map(|p| space.point_index(p).expect("validated space"))
        .collect();

    // residues of each layout monomial modulo alpha, computed once
    let reduced: Vec<Polynomial> = layout
        .monomials
        .iter()
        .map(|m| {
            let poly = Polynomial::from_terms(
                layout.n_vars,
                [(m.clone(), BigRational::from_integer(1.into()))],
            );
            reduce_mod_linear(&poly, &alpha, options.pivot_rule)
        })
        .collect();

    // quotient representation is spanned by degree-k monomials with
    // pivot exponent zero
    let quotient_monomials: Vec<Monomial> = monomials_of_degree(layout.n_vars, layout.degree)
        .into_iter()
        .filter(|m| m.exponents()[pivot] == 0)
        .collect();

    let mut pairs = Vec::new();
    if options.all_pairs {
        for a in 0..point_indices.len() {
            for b in (a + 1)..point_indices.len() {
                pairs.push((point_indices[a], point_indices[b]));
            }
        }
    } else {
        for &other in &point_indices[1..] {
            pairs.push((point_indices[0], other));
        }
    }

    let mut rows = Vec::new();
    for (base, other) in pairs {
        for q in &quotient_monomials {
            let mut coeffs = vec![BigRational::zero(); layout.column_count()];
            for (j, r) in reduced.iter().enumerate() {
                let c = r.coefficient(q);
                if !c.is_zero() {
                    coeffs[layout.column(base, j)] += &c;
                    let neg = -c;
                    coeffs[layout.column(other, j)] += neg;
                }
            }
            rows.push(ConstraintRow {
                coeffs,
                provenance: RowProvenance {
                    stratum: stratum_index,
                    family: ConstraintFamily::Congruence {
                        base_point: base,
                        other_point: other,
                    },
                    monomial: q.clone(),
                },
            });
        }
    }
    rows
}

/// Localization rows for a 4-dimensional stratum. With tangent weights
/// c1*alpha and c2*alpha at each point, the localization sum lies in
/// S(g*) iff alpha^2 divides sum_i f_i/(c1_i c2_i). In coordinates
/// adapted to alpha this means the coefficients with first-coordinate
/// exponent 0 or 1 all vanish; each gives one row.
pub fn abbv_rows(
    space: &GkmSpace,
    stratum_index: usize,
    layout: &CoefficientLayout,
    options: BuildOptions,
) -> Vec<ConstraintRow> {
    let Stratum::Four(stratum) = &space.strata[stratum_index] else {
        return Vec::new();
    };
    let alpha = LinearForm::from_integers(&stratum.direction);
    let transform = adapted_change_of_variables(&alpha, options.pivot_rule);
    let inverse = transform
        .inverse()
        .expect("adapted change of variables is invertible");
    let n = layout.n_vars;

    // x_j written in the adapted coordinates u: column j of T^{-1}
    let x_in_u: Vec<Polynomial> = (0..n)
        .map(|j| {
            Polynomial::from_terms(
                n,
                (0..n).map(|i| (Monomial::var(n, i), inverse[(j, i)].clone())),
            )
        })
        .collect();

    // each layout monomial rewritten in u
    let in_u: Vec<Polynomial> = layout
        .monomials
        .iter()
        .map(|m| {
            Polynomial::from_terms(n, [(m.clone(), BigRational::from_integer(1.into()))])
                .substitute_all(&x_in_u)
        })
        .collect();

    let weight_inverses: BTreeMap<usize, BigRational> = stratum
        .points
        .iter()
        .map(|p| {
            let idx = space.point_index(p).expect("validated space");
            let (c1, c2) = &stratum.multipliers[p];
            (idx, (c1 * c2).recip())
        })
        .collect();

    let target_monomials: Vec<Monomial> = monomials_of_degree(n, layout.degree)
        .into_iter()
        .filter(|m| m.exponents()[0] <= 1)
        .collect();

    let mut rows = Vec::new();
    for t in &target_monomials {
        let mut coeffs = vec![BigRational::zero(); layout.column_count()];
        for (&point, w) in &weight_inverses {
            for (j, poly_u) in in_u.iter().enumerate() {
                let c = poly_u.coefficient(t);
                if !c.is_zero() {
                    coeffs[layout.column(point, j)] += c * w;
                }
            }
        }
        rows.push(ConstraintRow {
            coeffs,
            provenance: RowProvenance {
                stratum: stratum_index,
                family: ConstraintFamily::Abbv,
                monomial: t.clone(),
            },
        });
    }
    rows
}

/// The full degree-k system: congruence rows for every stratum, then
/// localization rows for every 4-dimensional stratum, in stratum order.
pub fn constraint_matrix(space: &GkmSpace, degree: u32) -> ConstraintSystem {
    constraint_matrix_with(space, degree, BuildOptions::default())
}

pub fn constraint_matrix_with(
    space: &GkmSpace,
    degree: u32,
    options: BuildOptions,
) -> ConstraintSystem {
    let space = space.normalized();
    let layout = CoefficientLayout::new(&space, degree);
    let mut rows = Vec::new();
    for i in 0..space.strata.len() {
        rows.extend(congruence_rows(&space, i, &layout, options));
    }
    for i in 0..space.strata.len() {
        rows.extend(abbv_rows(&space, i, &layout, options));
    }
    ConstraintSystem { layout, rows }
}
