//! Dense matrices over the Gaussian rationals with exact elimination.

use super::scalar::GRat;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct GMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<GRat>,
}

impl GMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        GMatrix {
            rows,
            cols,
            data: vec![GRat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = GMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GRat::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GRat) -> Self {
        let mut m = GMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(dim: usize, cols: &[Vec<GRat>]) -> Self {
        let mut m = GMatrix::zeros(dim, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), dim);
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &GRat {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: GRat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &GRat) {
        let cur = self.get(i, j).clone();
        self.set(i, j, &cur + v);
    }

    pub fn row(&self, i: usize) -> &[GRat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<GRat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> GMatrix {
        GMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> GMatrix {
        GMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn conj(&self) -> GMatrix {
        GMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).conj())
    }

    pub fn is_hermitian(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if *self.get(i, j) != self.get(j, i).conj() {
                    return false;
                }
            }
        }
        true
    }

    pub fn add(&self, rhs: &GMatrix) -> GMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        GMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j))
    }

    pub fn sub(&self, rhs: &GMatrix) -> GMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        GMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - rhs.get(i, j))
    }

    pub fn scale(&self, c: &GRat) -> GMatrix {
        GMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * c)
    }

    /// Dense product with zero-skipping; the matrices arising here are sparse
    /// in practice and this keeps large composites cheap.
    pub fn mul(&self, rhs: &GMatrix) -> GMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in mul");
        let mut out = GMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).clone();
                    out.set(i, j, cur + a * b);
                }
            }
        }
        out
    }

    /// Kronecker product; row and column indices of the result are
    /// (i * rhs.rows + k, j * rhs.cols + l).
    pub fn kron(&self, rhs: &GMatrix) -> GMatrix {
        let mut out = GMatrix::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = rhs.get(k, l);
                        if !b.is_zero() {
                            out.set(i * rhs.rows + k, j * rhs.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[GRat]) -> Vec<GRat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = GRat::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() && !v[k].is_zero() {
                        acc += &(a * &v[k]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Row-reduce in place; returns pivot column indices. Pivot choice is the
    /// first nonzero entry scanning columns left to right, so results are
    /// deterministic.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r >= self.rows {
                break;
            }
            let mut pivot_row = None;
            for i in r..self.rows {
                if !self.get(i, c).is_zero() {
                    pivot_row = Some(i);
                    break;
                }
            }
            let Some(p) = pivot_row else { continue };
            if p != r {
                for j in 0..self.cols {
                    let a = self.get(r, j).clone();
                    let b = self.get(p, j).clone();
                    self.set(r, j, b);
                    self.set(p, j, a);
                }
            }
            let inv = self.get(r, c).inv();
            for j in 0..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in 0..self.cols {
                    let v = self.get(i, j) - &(&f * self.get(r, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_reduce().len()
    }

    /// Basis of the right nullspace `{v : Mv = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<GRat>> {
        let mut m = self.clone();
        let pivots = m.row_reduce();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![GRat::zero(); self.cols];
            v[free] = GRat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `self * X = rhs` exactly. Returns `None` if inconsistent.
    pub fn solve(&self, rhs: &GMatrix) -> Option<GMatrix> {
        assert_eq!(self.rows, rhs.rows);
        let n = self.cols;
        let mut aug = GMatrix::zeros(self.rows, n + rhs.cols);
        for i in 0..self.rows {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                aug.set(i, n + j, rhs.get(i, j).clone());
            }
        }
        let pivots = aug.row_reduce();
        // Any pivot in the augmented block marks an inconsistent system.
        if pivots.iter().any(|&c| c >= n) {
            return None;
        }
        let mut x = GMatrix::zeros(n, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, aug.get(row, n + j).clone());
            }
        }
        Some(x)
    }

    pub fn solve_vec(&self, rhs: &[GRat]) -> Option<Vec<GRat>> {
        let b = GMatrix::from_columns(rhs.len(), &[rhs.to_vec()]);
        self.solve(&b).map(|x| x.column(0))
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<GMatrix> {
        assert!(self.is_square());
        let x = self.solve(&GMatrix::identity(self.rows))?;
        if self.mul(&x) == GMatrix::identity(self.rows) {
            Some(x)
        } else {
            None
        }
    }

    /// Flatten to a single row vector (row-major), for span comparisons.
    pub fn vectorize(&self) -> Vec<GRat> {
        self.data.clone()
    }
}

impl fmt::Debug for GMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Rank of the span of a family of vectors.
pub fn span_rank(vectors: &[Vec<GRat>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let cols = vectors[0].len();
    let mut m = GMatrix::zeros(vectors.len(), cols);
    for (i, v) in vectors.iter().enumerate() {
        assert_eq!(v.len(), cols);
        for (j, x) in v.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    m.rank()
}

/// Whether two families of vectors span the same subspace.
pub fn span_equal(a: &[Vec<GRat>], b: &[Vec<GRat>]) -> bool {
    let ra = span_rank(a);
    let rb = span_rank(b);
    if ra != rb {
        return false;
    }
    let mut all: Vec<Vec<GRat>> = a.to_vec();
    all.extend(b.to_vec());
    span_rank(&all) == ra
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<GRat>], v: &[GRat]) -> bool {
    let r = span_rank(basis);
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    span_rank(&all) == r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, qd: i64) -> GRat {
        GRat::from_ratio(p, qd)
    }

    #[test]
    fn solve_and_inverse() {
        let mut m = GMatrix::zeros(2, 2);
        m.set(0, 0, q(1, 1));
        m.set(0, 1, q(2, 1));
        m.set(1, 0, q(3, 1));
        m.set(1, 1, q(5, 1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), GMatrix::identity(2));
        assert_eq!(inv.mul(&m), GMatrix::identity(2));
    }

    #[test]
    fn nullspace_matches_rank() {
        // Rank-1 matrix on 3 columns: nullspace has dimension 2.
        let mut m = GMatrix::zeros(2, 3);
        m.set(0, 0, q(1, 1));
        m.set(0, 1, q(2, 1));
        m.set(0, 2, q(3, 1));
        m.set(1, 0, q(2, 1));
        m.set(1, 1, q(4, 1));
        m.set(1, 2, q(6, 1));
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        assert_eq!(m.rank(), 1);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inconsistent_system_detected() {
        let mut m = GMatrix::zeros(2, 1);
        m.set(0, 0, q(1, 1));
        m.set(1, 0, q(1, 1));
        let rhs = GMatrix::from_columns(2, &[vec![q(1, 1), q(2, 1)]]);
        assert!(m.solve(&rhs).is_none());
    }

    #[test]
    fn span_comparisons() {
        let a = vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]];
        let b = vec![vec![q(1, 1), q(1, 1)], vec![q(1, 1), q(-1, 1)]];
        assert!(span_equal(&a, &b));
        let c = vec![vec![q(1, 1), q(1, 1)]];
        assert!(!span_equal(&a, &c));
        assert!(in_span(&a, &[q(5, 1), q(7, 2)]));
    }
}
