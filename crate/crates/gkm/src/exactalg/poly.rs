use num::{BigRational, One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::rational::format_rational;

/// Exponent vector of a monomial; length is the ambient variable count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// The constant monomial in `n_vars` variables.
    pub fn one(n_vars: usize) -> Self {
        Monomial(vec![0; n_vars])
    }

    /// The monomial `x_i` in `n_vars` variables.
    pub fn var(n_vars: usize, index: usize) -> Self {
        assert!(index < n_vars, "variable index out of range");
        let mut e = vec![0; n_vars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn n_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.0.len(), other.0.len(), "ambient variable count mismatch");
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Renders in the given variable names, e.g. `x^2*y`; the constant
    /// monomial renders as `1`.
    pub fn display(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Graded-lexicographic order: lower total degree first, then
/// lexicographic on the exponent vector.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `k` in `n_vars` variables, in descending
/// graded-lex order (`x^k` first, `y^k`-style tail last).
pub fn monomials_of_degree(n_vars: usize, k: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n_vars];
    fn rec(pos: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == current.len() {
            current[pos] = remaining;
            out.push(Monomial::new(current.clone()));
            current[pos] = 0;
            return;
        }
        for e in (0..=remaining).rev() {
            current[pos] = e;
            rec(pos + 1, remaining - e, current, out);
        }
        current[pos] = 0;
    }
    if n_vars == 0 {
        if k == 0 {
            out.push(Monomial::new(vec![]));
        }
        return out;
    }
    rec(0, k, &mut current, &mut out);
    out
}

/// Multivariate polynomial with exact rational coefficients.
///
/// Stored as a map from monomial to nonzero coefficient; the zero
/// polynomial is the empty map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    n_vars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(n_vars: usize) -> Self {
        Polynomial {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, value: BigRational) -> Self {
        let mut p = Polynomial::zero(n_vars);
        p.add_term(Monomial::one(n_vars), value);
        p
    }

    /// The variable `x_i` as a polynomial.
    pub fn var(n_vars: usize, index: usize) -> Self {
        let mut p = Polynomial::zero(n_vars);
        p.add_term(Monomial::var(n_vars, index), BigRational::one());
        p
    }

    pub fn from_terms<I>(n_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Polynomial::zero(n_vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        assert_eq!(m.n_vars(), self.n_vars, "ambient variable count mismatch");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Returns `Some(k)` when every term has total degree `k` (the zero
    /// polynomial is homogeneous of any degree and returns `Some(0)`).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|m| m.degree());
        match degrees.next() {
            None => Some(0),
            Some(d) => {
                if degrees.all(|e| e == d) {
                    Some(d)
                } else {
                    None
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n_vars);
        }
        Polynomial {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    /// Replaces variable `index` by the polynomial `g`, expanding to
    /// canonical form. Substitution is a ring homomorphism.
    pub fn substitute_variable(&self, index: usize, g: &Polynomial) -> Polynomial {
        assert!(index < self.n_vars, "variable index out of range");
        assert_eq!(g.n_vars, self.n_vars, "ambient variable count mismatch");
        let mut powers: Vec<Polynomial> = vec![Polynomial::constant(self.n_vars, BigRational::one())];
        let mut result = Polynomial::zero(self.n_vars);
        for (m, c) in &self.terms {
            let e = m.exponents()[index] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * g;
                powers.push(next);
            }
            let mut rest = m.exponents().to_vec();
            rest[index] = 0;
            let base = Polynomial::from_terms(self.n_vars, [(Monomial::new(rest), c.clone())]);
            result = &result + &(&base * &powers[e]);
        }
        result
    }

    /// Simultaneously replaces every variable `x_i` by `forms[i]`.
    pub fn substitute_all(&self, forms: &[Polynomial]) -> Polynomial {
        assert_eq!(forms.len(), self.n_vars, "one replacement per variable required");
        let out_vars = forms
            .first()
            .map(|f| f.n_vars)
            .unwrap_or(self.n_vars);
        let mut result = Polynomial::zero(out_vars);
        for (m, c) in &self.terms {
            let mut prod = Polynomial::constant(out_vars, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    prod = &prod * &forms[i];
                }
            }
            result = &result + &prod;
        }
        result
    }

    /// Renders with descending graded-lex term order in the given names.
    pub fn display(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mono = m.display(names);
            if abs.is_one() && mono != "1" {
                out.push_str(&mono);
            } else if mono == "1" {
                out.push_str(&format_rational(&abs));
            } else {
                out.push_str(&format_rational(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.n_vars).map(|i| format!("x{}", i)).collect();
        write!(f, "{}", self.display(&names))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n_vars, rhs.n_vars, "ambient variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n_vars, rhs.n_vars, "ambient variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n_vars, rhs.n_vars, "ambient variable count mismatch");
        let mut out = Polynomial::zero(self.n_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-BigRational::one())
    }
}

/// Rational linear form `a_1 x_1 + ... + a_n x_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm(Vec<BigRational>);

impl LinearForm {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        LinearForm(coeffs)
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        LinearForm(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn n_vars(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// Index of the pivot coefficient under the given rule, or `None`
    /// for the zero form.
    pub fn pivot(&self, rule: PivotRule) -> Option<usize> {
        match rule {
            PivotRule::FirstNonzero => self.0.iter().position(|c| !c.is_zero()),
            PivotRule::LastNonzero => self.0.iter().rposition(|c| !c.is_zero()),
        }
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_terms(
            self.0.len(),
            self.0
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(self.0.len(), i), c.clone())),
        )
    }
}

/// Pivot selection for quotient-by-a-linear-form computations. The
/// alternate rule exists as a cross-check oracle; both give the same
/// zero/nonzero verdicts and ranks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotRule {
    #[default]
    FirstNonzero,
    LastNonzero,
}

/// Image of `f` in the quotient by the principal ideal `(alpha)`,
/// represented in the non-pivot variables: solve `alpha = 0` for the
/// pivot variable and substitute. The result is zero iff `alpha`
/// divides `f`; the map is linear and kills multiples of `alpha`.
///
/// Panics if `alpha` is the zero form.
pub fn reduce_mod_linear(f: &Polynomial, alpha: &LinearForm, rule: PivotRule) -> Polynomial {
    assert_eq!(f.n_vars(), alpha.n_vars(), "ambient variable count mismatch");
    let pivot = alpha.pivot(rule).expect("zero linear form");
    let pivot_coeff = &alpha.coeffs()[pivot];
    let replacement = Polynomial::from_terms(
        f.n_vars(),
        alpha.coeffs().iter().enumerate().filter_map(|(i, c)| {
            if i == pivot || c.is_zero() {
                None
            } else {
                Some((Monomial::var(f.n_vars(), i), -(c / pivot_coeff)))
            }
        }),
    );
    f.substitute_variable(pivot, &replacement)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    fn q(n: i64) -> BigRational {
        BigRational::from_i64(n).unwrap()
    }

    fn x() -> Polynomial {
        Polynomial::var(2, 0)
    }

    fn y() -> Polynomial {
        Polynomial::var(2, 1)
    }

    #[test]
    fn addition_cancels() {
        // (x+y) + (x-y) = 2x
        let a = &x() + &y();
        let b = &x() - &y();
        assert_eq!(&a + &b, x().scale(&q(2)));
    }

    #[test]
    fn difference_of_squares() {
        let a = &x() + &y();
        let b = &x() - &y();
        let x2 = &x() * &x();
        let y2 = &y() * &y();
        assert_eq!(&a * &b, &x2 - &y2);
    }

    #[test]
    fn zero_absorbs() {
        let f = &(&x() * &x()) + &y().scale(&q(3));
        assert_eq!(f.scale(&q(0)), Polynomial::zero(2));
        assert_eq!(&Polynomial::zero(2) * &f, Polynomial::zero(2));
    }

    #[test]
    fn substitute_variable_examples() {
        // x^2 with x -> y gives y^2
        let x2 = &x() * &x();
        assert_eq!(x2.substitute_variable(0, &y()), &y() * &y());
        // x+y with x -> 0 gives y
        let f = &x() + &y();
        assert_eq!(f.substitute_variable(0, &Polynomial::zero(2)), y());
        // (x+y)^2 with x -> y gives 4y^2
        let g = &f * &f;
        let y2 = &y() * &y();
        assert_eq!(g.substitute_variable(0, &y()), y2.scale(&q(4)));
    }

    #[test]
    fn reduce_mod_linear_examples() {
        let ax = LinearForm::from_integers(&[1, 0]);
        let axmy = LinearForm::from_integers(&[1, -1]);
        // x mod (x) = 0
        assert!(reduce_mod_linear(&x(), &ax, PivotRule::FirstNonzero).is_zero());
        // y mod (x) = y
        assert_eq!(reduce_mod_linear(&y(), &ax, PivotRule::FirstNonzero), y());
        // (x+y) mod (x-y) = 2y
        let f = &x() + &y();
        assert_eq!(
            reduce_mod_linear(&f, &axmy, PivotRule::FirstNonzero),
            y().scale(&q(2))
        );
        // alternate pivot gives 2x for the same input; both are nonzero
        assert_eq!(
            reduce_mod_linear(&f, &axmy, PivotRule::LastNonzero),
            x().scale(&q(2))
        );
    }

    #[test]
    fn monomial_enumeration_graded_lex() {
        let ms = monomials_of_degree(2, 2);
        let exps: Vec<&[u32]> = ms.iter().map(|m| m.exponents()).collect();
        assert_eq!(exps, vec![&[2, 0][..], &[1, 1], &[0, 2]]);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(1, 5).len(), 1);
        assert_eq!(monomials_of_degree(2, 0).len(), 1);
    }

    #[test]
    fn display_readable() {
        let names = vec!["x".to_string(), "y".to_string()];
        let f = &(&x() * &x()).scale(&q(2)) - &y().scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(f.display(&names), "2*x^2 - 1/2*y");
        assert_eq!(Polynomial::zero(2).display(&names), "0");
        assert_eq!(Polynomial::constant(2, q(7)).display(&names), "7");
    }
}
