use num::{BigRational, One, Zero};

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "matrix rows must have equal length"
        );
        RationalMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vector(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .fold(BigRational::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    /// Exact reduced row echelon form: returns the reduced matrix, the
    /// pivot columns, and the rank.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>, usize) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, src);
            let inv = m[(pivot_row, col)].recip();
            for c in col..m.cols {
                let v = &m[(pivot_row, c)] * &inv;
                m[(pivot_row, c)] = v;
            }
            for r in 0..m.rows {
                if r != pivot_row && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    for c in col..m.cols {
                        let v = &m[(r, c)] - &(&factor * &m[(pivot_row, c)]);
                        m[(r, c)] = v;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        let rank = pivots.len();
        (m, pivots, rank)
    }

    /// Exact basis of the right kernel, via the standard free-variable
    /// parameterization of the reduced row echelon form. The basis has
    /// `cols - rank` vectors, ordered by ascending free column.
    pub fn nullspace_basis(&self) -> Vec<Vec<BigRational>> {
        let (r, pivots, _) = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![BigRational::zero(); self.cols];
            v[free] = BigRational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse of a square invertible matrix; `None` when singular.
    pub fn inverse(&self) -> Option<RationalMatrix> {
        assert_eq!(self.rows, self.cols, "inverse requires a square matrix");
        let n = self.rows;
        let mut aug = RationalMatrix::zero(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = BigRational::one();
        }
        let (red, pivots, _) = aug.rref();
        if pivots.iter().filter(|&&p| p < n).count() < n {
            return None;
        }
        let mut inv = RationalMatrix::zero(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = red[(r, n + c)].clone();
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;
    fn index(&self, (r, c): (usize, usize)) -> &BigRational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigRational {
        &mut self.data[r * self.cols + c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    fn mat(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| BigRational::from_i64(v).unwrap())
                        .collect()
                })
                .collect(),
        )
    }

    #[test]
    fn rref_identity_is_fixed() {
        let m = RationalMatrix::identity(2);
        let (r, pivots, rank) = m.rref();
        assert_eq!(r, m);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(rank, 2);
    }

    #[test]
    fn rref_dependent_rows() {
        let m = mat(&[&[1, 2], &[2, 4]]);
        let (r, _, rank) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(r, mat(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rref_zero_matrix() {
        let m = RationalMatrix::zero(3, 5);
        let (_, _, rank) = m.rref();
        assert_eq!(rank, 0);
        assert_eq!(m.nullspace_basis().len(), 5);
    }

    #[test]
    fn nullspace_of_identity_is_empty() {
        assert!(RationalMatrix::identity(4).nullspace_basis().is_empty());
    }

    #[test]
    fn nullspace_single_row() {
        // [1, -1, 0] has kernel spanned by (1,1,0) and (0,0,1)
        let m = mat(&[&[1, -1, 0]]);
        let basis = m.nullspace_basis();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let mv = m.mul_vector(v);
            assert!(mv.iter().all(|x| x.is_zero()));
        }
        let one = BigRational::one();
        let zero = BigRational::zero();
        assert_eq!(basis[0], vec![one.clone(), one.clone(), zero.clone()]);
        assert_eq!(basis[1], vec![zero.clone(), zero, one]);
    }

    #[test]
    fn inverse_round_trip() {
        let m = mat(&[&[1, -1], &[0, 1]]);
        let inv = m.inverse().unwrap();
        let mut prod = RationalMatrix::zero(2, 2);
        for r in 0..2 {
            for c in 0..2 {
                let mut acc = BigRational::zero();
                for k in 0..2 {
                    acc += &m[(r, k)] * &inv[(k, c)];
                }
                prod[(r, c)] = acc;
            }
        }
        assert_eq!(prod, RationalMatrix::identity(2));
        assert!(mat(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
