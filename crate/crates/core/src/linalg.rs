//! Small dense matrices over a [`Scalar`].
//!
//! Everything here is sized for 6-dimensional geometry (matrices up to ~21×21
//! appear in the module-decomposition solves), so plain Gaussian elimination
//! with partial pivoting is entirely adequate. Exact mode pivots on any
//! nonzero entry; float mode pivots on the entry of largest magnitude and
//! treats entries below an absolute tolerance as zero.

use crate::scalar::Scalar;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Integer-entry constructor, handy for fixed tables.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| S::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j).clone() + other.at(i, j).clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j).clone() - other.at(i, j).clone()
        })
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j).clone() * k.clone())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                acc += self.at(i, k).clone() * other.at(k, j).clone();
            }
            acc
        })
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for k in 0..self.cols {
                    acc += self.at(i, k).clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..i).all(|j| {
                    (self.at(i, j).clone() - self.at(j, i).clone()).approx_zero(tol)
                })
            })
    }

    pub fn is_antisymmetric(&self, tol: f64) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..=i).all(|j| {
                    (self.at(i, j).clone() + self.at(j, i).clone()).approx_zero(tol)
                })
            })
    }

    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|v| v.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// Row-reduce `self` in place to reduced row echelon form; returns the
    /// pivot columns. `tol` is the float-mode zero threshold.
    fn rref_in_place(&mut self, tol: f64) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // Partial pivoting: the largest entry keeps float mode stable and
            // is harmless in exact mode.
            let mut best = r;
            let mut best_abs = self.at(r, c).to_f64().abs();
            for i in (r + 1)..self.rows {
                let a = self.at(i, c).to_f64().abs();
                if a > best_abs {
                    best = i;
                    best_abs = a;
                }
            }
            let zero = if S::EXACT {
                self.at(best, c).is_zero()
            } else {
                self.at(best, c).approx_zero(tol)
            };
            if zero {
                continue;
            }
            if best != r {
                for j in 0..self.cols {
                    self.data.swap(r * self.cols + j, best * self.cols + j);
                }
            }
            let inv = S::one() / self.at(r, c).clone();
            for j in 0..self.cols {
                let v = self.at(r, j).clone() * inv.clone();
                *self.at_mut(r, j) = v;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.at(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..self.cols {
                    let v = self.at(i, j).clone() - factor.clone() * self.at(r, j).clone();
                    *self.at_mut(i, j) = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, tol: f64) -> usize {
        let mut m = self.clone();
        m.rref_in_place(tol).len()
    }

    pub fn det(&self) -> S {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = S::one();
        for c in 0..n {
            let mut best = c;
            let mut best_abs = m.at(c, c).to_f64().abs();
            for i in (c + 1)..n {
                let a = m.at(i, c).to_f64().abs();
                if a > best_abs {
                    best = i;
                    best_abs = a;
                }
            }
            if m.at(best, c).is_zero() {
                return S::zero();
            }
            if best != c {
                for j in 0..n {
                    m.data.swap(c * n + j, best * n + j);
                }
                det = -det;
            }
            let pivot = m.at(c, c).clone();
            det *= pivot.clone();
            let inv = S::one() / pivot;
            for i in (c + 1)..n {
                let factor = m.at(i, c).clone() * inv.clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.at(i, j).clone() - factor.clone() * m.at(c, j).clone();
                    *m.at_mut(i, j) = v;
                }
            }
        }
        det
    }

    pub fn inverse(&self, tol: f64) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = S::one();
        }
        let pivots = aug.rref_in_place(tol);
        if pivots.len() != n || pivots.iter().enumerate().any(|(k, &c)| k != c) {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| aug.at(i, n + j).clone()))
    }

    /// Solve `self · x = rhs` (multiple right-hand sides as columns).
    ///
    /// Returns `None` when inconsistent; free variables are set to zero, so
    /// for full-column-rank systems this is the unique solution.
    pub fn solve(&self, rhs: &Mat<S>, tol: f64) -> Option<Mat<S>> {
        assert_eq!(self.rows, rhs.rows, "rhs row mismatch");
        let (n, k) = (self.cols, rhs.cols);
        let mut aug = Mat::zeros(self.rows, n + k);
        for i in 0..self.rows {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            for j in 0..k {
                *aug.at_mut(i, n + j) = rhs.at(i, j).clone();
            }
        }
        let pivots = aug.rref_in_place(tol);
        // Any pivot landing in the rhs block marks an inconsistent system.
        if pivots.iter().any(|&c| c >= n) {
            return None;
        }
        let mut x = Mat::zeros(n, k);
        for (row, &col) in pivots.iter().enumerate() {
            for j in 0..k {
                *x.at_mut(col, j) = aug.at(row, n + j).clone();
            }
        }
        // In float mode a numerically rank-deficient system can slip through
        // the pivot test; verify the residual.
        if !S::EXACT {
            let residual = self.matmul(&x).sub(rhs);
            let scale = 1.0 + rhs.max_abs() + self.max_abs();
            if residual.max_abs() > tol.max(1e-12) * scale * 100.0 {
                return None;
            }
        }
        Some(x)
    }

    pub fn solve_vec(&self, rhs: &[S], tol: f64) -> Option<Vec<S>> {
        let rhs_m = Mat::from_fn(rhs.len(), 1, |i, _| rhs[i].clone());
        let x = self.solve(&rhs_m, tol)?;
        Some((0..self.cols).map(|i| x.at(i, 0).clone()).collect())
    }

    /// Basis of the null space.
    pub fn kernel(&self, tol: f64) -> Vec<Vec<S>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place(tol);
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![S::zero(); self.cols];
            v[free] = S::one();
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = -m.at(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Positive definiteness via leading principal minors (exact-friendly;
    /// the matrices involved are at most 6×6).
    pub fn is_positive_definite(&self, tol: f64) -> bool {
        if self.rows != self.cols || !self.is_symmetric(tol.max(1e-9)) {
            return false;
        }
        for k in 1..=self.rows {
            let minor = Self::from_fn(k, k, |i, j| self.at(i, j).clone());
            let d = minor.det();
            if S::EXACT {
                if !d.is_positive() {
                    return false;
                }
            } else if d.to_f64() <= tol {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        <Q as Scalar>::from_ratio(n, d)
    }

    #[test]
    fn matmul_and_identity() {
        let a: Mat<Q> = Mat::from_int_rows(&[&[1, 2], &[3, 4]]);
        let i = Mat::identity(2);
        assert_eq!(a.matmul(&i), a);
        let b: Mat<Q> = Mat::from_int_rows(&[&[0, 1], &[1, 0]]);
        let ab = a.matmul(&b);
        assert_eq!(ab, Mat::from_int_rows(&[&[2, 1], &[4, 3]]));
    }

    #[test]
    fn det_exact() {
        let a: Mat<Q> = Mat::from_int_rows(&[&[2, 0, 1], &[1, 1, 0], &[0, 3, 1]]);
        assert_eq!(a.det(), q(5, 1));
        let singular: Mat<Q> = Mat::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.det(), q(0, 1));
    }

    #[test]
    fn inverse_round_trip() {
        let a: Mat<Q> = Mat::from_int_rows(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse(0.0).unwrap();
        assert_eq!(a.matmul(&inv), Mat::identity(3));
        let singular: Mat<Q> = Mat::from_int_rows(&[&[1, 1], &[1, 1]]);
        assert!(singular.inverse(0.0).is_none());
    }

    #[test]
    fn solve_unique_and_inconsistent() {
        let a: Mat<Q> = Mat::from_int_rows(&[&[1, 1], &[1, -1]]);
        let x = a.solve_vec(&[q(3, 1), q(1, 1)], 0.0).unwrap();
        assert_eq!(x, vec![q(2, 1), q(1, 1)]);

        let wide: Mat<Q> = Mat::from_int_rows(&[&[1, 1, 1]]);
        let x = wide.solve_vec(&[q(6, 1)], 0.0).unwrap();
        assert_eq!(x, vec![q(6, 1), q(0, 1), q(0, 1)]);

        let bad: Mat<Q> = Mat::from_int_rows(&[&[1, 1], &[2, 2]]);
        assert!(bad.solve_vec(&[q(1, 1), q(3, 1)], 0.0).is_none());
    }

    #[test]
    fn kernel_of_rank_one() {
        let a: Mat<Q> = Mat::from_int_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = a.kernel(0.0);
        assert_eq!(k.len(), 2);
        for v in &k {
            let image = a.apply(v);
            assert!(image.iter().all(|e| Scalar::is_zero(e)));
        }
        assert_eq!(a.rank(0.0), 1);
    }

    #[test]
    fn positive_definite() {
        let spd: Mat<Q> = Mat::from_int_rows(&[&[2, 1], &[1, 2]]);
        assert!(spd.is_positive_definite(0.0));
        let indef: Mat<Q> = Mat::from_int_rows(&[&[1, 2], &[2, 1]]);
        assert!(!indef.is_positive_definite(0.0));
        let asym: Mat<Q> = Mat::from_int_rows(&[&[1, 1], &[0, 1]]);
        assert!(!asym.is_positive_definite(0.0));
    }

    #[test]
    fn float_mode_pivoting_handles_small_entries() {
        let a: Mat<f64> = Mat::from_rows(vec![vec![1e-14, 1.0], vec![1.0, 1.0]]);
        let x = a.solve_vec(&[1.0, 2.0], 1e-10).unwrap();
        // The tiny (0,0) entry is below tolerance, so the solved system is
        // effectively [[0,1],[1,1]]; x = (1, 1).
        assert!((x[0] - 1.0).abs() < 1e-9 && (x[1] - 1.0).abs() < 1e-9);
    }
}
