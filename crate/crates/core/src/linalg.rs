//! Dense linear algebra over a [`Scalar`] field.
//!
//! Rank uses fraction-free (Bareiss) elimination; solving and kernels use
//! Gauss-Jordan reduction to reduced row echelon form.

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    /// Builds a matrix from row vectors. All rows must share a length.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Index of the row at or below `from` holding the pivot for column `col`.
    /// Exact types take the first nonzero entry, floating types the largest.
    fn pivot_row(&self, from: usize, col: usize) -> Option<usize> {
        let candidates = (from..self.rows).filter(|&r| !self.get(r, col).is_negligible());
        if S::EXACT {
            candidates.into_iter().next()
        } else {
            candidates.max_by(|&a, &b| {
                self.get(a, col)
                    .abs()
                    .partial_cmp(&self.get(b, col).abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
        }
    }

    /// Rank by fraction-free elimination. Over an integral domain every
    /// intermediate entry is a minor of the input, so the divisions by the
    /// previous pivot are exact.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut prev = S::one();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = m.pivot_row(row, col) else {
                continue;
            };
            m.swap_rows(row, p);
            let pivot = m.get(row, col).clone();
            for i in row + 1..m.rows {
                let lead = m.get(i, col).clone();
                for j in col + 1..m.cols {
                    let v = (m.get(i, j).clone() * pivot.clone() - lead.clone() * m.get(row, j).clone())
                        / prev.clone();
                    m.set(i, j, v);
                }
                m.set(i, col, S::zero());
            }
            prev = pivot;
            row += 1;
        }
        row
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = self.pivot_row(row, col) else {
                for r in row..self.rows {
                    self.set(r, col, S::zero());
                }
                continue;
            };
            self.swap_rows(row, p);
            let inv = S::one() / self.get(row, col).clone();
            for c in col..self.cols {
                let v = self.get(row, c).clone() * inv.clone();
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if factor.is_negligible() {
                    continue;
                }
                for c in col..self.cols {
                    let v = self.get(r, c).clone() - factor.clone() * self.get(row, c).clone();
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// A basis of the right kernel `{x : A x = 0}`.
    pub fn null_space(&self) -> Vec<Vec<S>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![S::zero(); self.cols];
                v[f] = S::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// Solves `A x = b`, setting free variables to zero. `None` when
    /// `b` is outside the column space.
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for (r, rhs) in b.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, rhs.clone());
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![S::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// A vector `y` with `yᵀ A = 0` and `yᵀ b ≠ 0`, if one exists.
    /// Exists exactly when `b` is not in the column space of `A`.
    pub fn separating_vector(&self, b: &[S]) -> Option<Vec<S>> {
        self.transpose().null_space().into_iter().find(|y| {
            let dot = y
                .iter()
                .zip(b)
                .fold(S::zero(), |acc, (p, q)| acc + p.clone() * q.clone());
            !dot.is_negligible()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use proptest::prelude::*;

    fn q(v: i64) -> Rational {
        Rational::ratio(v, 1)
    }

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect())
    }

    /// Independent rank oracle: the largest k with a nonzero k×k minor,
    /// minors evaluated by cofactor expansion.
    fn det(m: &[Vec<Rational>]) -> Rational {
        if m.is_empty() {
            return q(1);
        }
        let n = m.len();
        (0..n).fold(q(0), |acc, j| {
            let minor: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = m[0][j].clone() * det(&minor);
            if j % 2 == 0 {
                acc + term
            } else {
                acc - term
            }
        })
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        use itertools::Itertools;
        (0..n).combinations(k).collect()
    }

    fn minor_rank(m: &Matrix<Rational>) -> usize {
        let rows = m.to_rows();
        for k in (1..=m.rows().min(m.cols())).rev() {
            for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    let sub: Vec<Vec<Rational>> =
                        rs.iter().map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect()).collect();
                    if det(&sub) != q(0) {
                        return k;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn sturmian_level_two_matrix() {
        let m = qm(&[&[1, 1, 1], &[1, 1, -1], &[1, -1, 1]]);
        assert_eq!(m.rank(), 3);
        assert_eq!(det(&m.to_rows()), q(-4));
    }

    #[test]
    fn rank_of_zero_and_duplicates() {
        assert_eq!(Matrix::<Rational>::zeros(3, 4).rank(), 0);
        let m = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 2, 3]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rank_with_skipped_column() {
        let m = qm(&[&[0, 1, 2], &[0, 2, 5], &[0, 3, 7]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(minor_rank(&m), 2);
    }

    #[test]
    fn solve_and_separate() {
        let a = qm(&[&[1, 0], &[0, 1], &[1, 1]]);
        let x = a.solve(&[q(2), q(3), q(5)]).unwrap();
        assert_eq!(x, vec![q(2), q(3)]);
        assert!(a.solve(&[q(2), q(3), q(4)]).is_none());
        let y = a.separating_vector(&[q(2), q(3), q(4)]).unwrap();
        let at = a.transpose();
        assert!(at.mul_vec(&y).iter().all(|v| *v == q(0)));
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let a = qm(&[&[1, 1, 1], &[2, 2, 2]]);
        let ker = a.null_space();
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(a.mul_vec(&v).iter().all(|x| *x == q(0)));
        }
    }

    #[test]
    fn float_rank_agrees_on_well_conditioned() {
        let m = Matrix::from_rows(vec![vec![1.0f64, 1.0, 1.0], vec![1.0, 1.0, -1.0], vec![1.0, -1.0, 1.0]]);
        assert_eq!(m.rank(), 3);
    }

    proptest! {
        #[test]
        fn bareiss_matches_minor_oracle(
            entries in proptest::collection::vec(-3i64..=3, 12),
            shape in 0usize..3,
        ) {
            let (r, c) = [(3, 4), (4, 3), (2, 6)][shape];
            let rows: Vec<Vec<Rational>> =
                entries.chunks(c).take(r).map(|ch| ch.iter().map(|&v| q(v)).collect()).collect();
            let m = Matrix::from_rows(rows);
            prop_assert_eq!(m.rank(), minor_rank(&m));
            let mut red = m.clone();
            prop_assert_eq!(red.rref().len(), m.rank());
        }

        #[test]
        fn rank_invariant_under_row_permutation(
            entries in proptest::collection::vec(-2i64..=2, 12),
            rot in 0usize..4,
        ) {
            let rows: Vec<Vec<Rational>> = entries.chunks(3).map(|ch| ch.iter().map(|&v| q(v)).collect()).collect();
            let mut permuted = rows.clone();
            permuted.rotate_left(rot);
            prop_assert_eq!(Matrix::from_rows(rows).rank(), Matrix::from_rows(permuted).rank());
        }
    }
}
