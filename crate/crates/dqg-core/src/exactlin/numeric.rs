//! Floating-point companion to the exact layer: complex f64 matrices, a
//! Jacobi eigensolver for Hermitian matrices, and PSD square roots. Used for
//! the modular-operator checks that need |G|^{1/2}, and as an independent
//! cross-check on the exact PSD test.

use super::matrix::GMatrix;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct C64 {
    pub re: f64,
    pub im: f64,
}

impl C64 {
    pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
    pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };

    pub fn new(re: f64, im: f64) -> Self {
        C64 { re, im }
    }

    pub fn conj(self) -> Self {
        C64::new(self.re, -self.im)
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn add(self, o: C64) -> C64 {
        C64::new(self.re + o.re, self.im + o.im)
    }

    pub fn sub(self, o: C64) -> C64 {
        C64::new(self.re - o.re, self.im - o.im)
    }

    pub fn mul(self, o: C64) -> C64 {
        C64::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }

    pub fn scale(self, t: f64) -> C64 {
        C64::new(self.re * t, self.im * t)
    }
}

#[derive(Clone, Debug)]
pub struct CMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![C64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C64::ONE);
        }
        m
    }

    pub fn from_exact(m: &GMatrix) -> Self {
        let mut out = CMatrix::zeros(m.rows, m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                let (re, im) = m.get(i, j).to_f64_pair();
                out.set(i, j, C64::new(re, im));
            }
        }
        out
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn adjoint(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn conj(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn mul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, cur.add(a.mul(rhs.get(k, j))));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = C64::ZERO;
                for k in 0..self.cols {
                    acc = acc.add(self.get(i, k).mul(v[k]));
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = CMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).sub(rhs.get(i, j)));
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    /// Largest absolute deviation from Hermitian symmetry.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                worst = worst.max(self.get(i, j).sub(self.get(j, i).conj()).abs());
            }
        }
        worst
    }
}

/// Eigendecomposition of a Hermitian matrix by the cyclic Jacobi method.
/// Returns (eigenvalues ascending, unitary U with columns the eigenvectors),
/// so that M = U diag(vals) U^H up to round-off.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut a = m.clone();
    let mut u = CMatrix::identity(n);
    let tol = 1e-14 * (1.0 + m.max_abs());
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q_ in (p + 1)..n {
                off = off.max(a.get(p, q_).abs());
            }
        }
        if off < tol {
            break;
        }
        for p in 0..n {
            for q_ in (p + 1)..n {
                let apq = a.get(p, q_);
                if apq.abs() < tol * 1e-2 {
                    continue;
                }
                // Phase rotation to make the pivot real, then a real Jacobi
                // rotation to annihilate it.
                let app = a.get(p, p).re;
                let aqq = a.get(q_, q_).re;
                let r = apq.abs();
                let phase = C64::new(apq.re / r, apq.im / r);
                let theta = 0.5 * (2.0 * r).atan2(aqq - app);
                let (c, s) = (theta.cos(), theta.sin());
                // Column rotation matrix entries: col p' = c*p - s*phase^H*q,
                // col q' = s*phase*p + c*q, applied on the right of A and U,
                // and its adjoint on the left of A.
                let rot = |mat: &mut CMatrix, rows: usize| {
                    for i in 0..rows {
                        let vip = mat.get(i, p);
                        let viq = mat.get(i, q_);
                        let new_p = vip.scale(c).sub(viq.mul(phase.conj()).scale(s));
                        let new_q = vip.mul(phase).scale(s).add(viq.scale(c));
                        mat.set(i, p, new_p);
                        mat.set(i, q_, new_q);
                    }
                };
                rot(&mut a, n);
                rot(&mut u, n);
                // Left action by the adjoint rotation = conjugate rows.
                for j in 0..n {
                    let vpj = a.get(p, j);
                    let vqj = a.get(q_, j);
                    let new_p = vpj.scale(c).sub(vqj.mul(phase).scale(s));
                    let new_q = vpj.mul(phase.conj()).scale(s).add(vqj.scale(c));
                    a.set(p, j, new_p);
                    a.set(q_, j, new_q);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let vals: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap());
    let sorted_vals: Vec<f64> = order.iter().map(|&i| vals[i]).collect();
    let mut sorted_u = CMatrix::zeros(n, n);
    for (newc, &oldc) in order.iter().enumerate() {
        for i in 0..n {
            sorted_u.set(i, newc, u.get(i, oldc));
        }
    }
    (sorted_vals, sorted_u)
}

/// Minimum eigenvalue of a Hermitian matrix; floating PSD oracle.
pub fn min_eigenvalue(m: &CMatrix) -> f64 {
    let (vals, _) = hermitian_eigen(m);
    vals.first().copied().unwrap_or(0.0)
}

/// Floating PSD test with tolerance scaled to the matrix size.
pub fn numeric_is_psd(m: &CMatrix) -> bool {
    if m.hermitian_defect() > 1e-9 * (1.0 + m.max_abs()) {
        return false;
    }
    min_eigenvalue(m) > -1e-9 * (1.0 + m.max_abs())
}

/// Apply a real function to a Hermitian matrix through its spectrum.
/// Eigenvalues below `clip` are treated as zero (radical directions).
pub fn hermitian_function(m: &CMatrix, clip: f64, f: impl Fn(f64) -> f64) -> CMatrix {
    let (vals, u) = hermitian_eigen(m);
    let n = m.rows;
    let mut d = CMatrix::zeros(n, n);
    for (i, &v) in vals.iter().enumerate() {
        let fv = if v.abs() <= clip { f(0.0) } else { f(v) };
        d.set(i, i, C64::new(fv, 0.0));
    }
    u.mul(&d).mul(&u.adjoint())
}

/// PSD square root; panics via Err if the residual check fails.
pub fn numeric_psd_sqrt(m: &CMatrix) -> Result<CMatrix, String> {
    let scale = 1.0 + m.max_abs();
    if m.hermitian_defect() > 1e-9 * scale {
        return Err("matrix is not Hermitian within tolerance".into());
    }
    let (vals, u) = hermitian_eigen(m);
    if let Some(v) = vals.first() {
        if *v < -1e-9 * scale {
            return Err(format!("matrix has negative eigenvalue {v}"));
        }
    }
    let n = m.rows;
    let mut d = CMatrix::zeros(n, n);
    for (i, &v) in vals.iter().enumerate() {
        d.set(i, i, C64::new(v.max(0.0).sqrt(), 0.0));
    }
    let root = u.mul(&d).mul(&u.adjoint());
    let residual = root.mul(&root).sub(m).max_abs();
    if residual > 1e-8 * scale {
        return Err(format!("sqrt residual {residual} too large"));
    }
    Ok(root)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_of_known_matrix() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let mut m = CMatrix::zeros(2, 2);
        m.set(0, 0, C64::new(2.0, 0.0));
        m.set(0, 1, C64::new(0.0, 1.0));
        m.set(1, 0, C64::new(0.0, -1.0));
        m.set(1, 1, C64::new(2.0, 0.0));
        let (vals, u) = hermitian_eigen(&m);
        assert!((vals[0] - 1.0).abs() < 1e-10);
        assert!((vals[1] - 3.0).abs() < 1e-10);
        // Reconstruction residual.
        let mut d = CMatrix::zeros(2, 2);
        d.set(0, 0, C64::new(vals[0], 0.0));
        d.set(1, 1, C64::new(vals[1], 0.0));
        let rec = u.mul(&d).mul(&u.adjoint());
        assert!(rec.sub(&m).max_abs() < 1e-10);
    }

    #[test]
    fn sqrt_of_psd() {
        let mut m = CMatrix::zeros(2, 2);
        m.set(0, 0, C64::new(4.0, 0.0));
        m.set(1, 1, C64::new(9.0, 0.0));
        let r = numeric_psd_sqrt(&m).unwrap();
        assert!((r.get(0, 0).re - 2.0).abs() < 1e-10);
        assert!((r.get(1, 1).re - 3.0).abs() < 1e-10);
    }

    #[test]
    fn sqrt_rejects_negative() {
        let mut m = CMatrix::zeros(1, 1);
        m.set(0, 0, C64::new(-1.0, 0.0));
        assert!(numeric_psd_sqrt(&m).is_err());
    }

    #[test]
    fn psd_oracle() {
        let mut pos = CMatrix::identity(3);
        pos.set(0, 1, C64::new(0.5, 0.0));
        pos.set(1, 0, C64::new(0.5, 0.0));
        assert!(numeric_is_psd(&pos));
        let mut indef = CMatrix::zeros(2, 2);
        indef.set(0, 1, C64::ONE);
        indef.set(1, 0, C64::ONE);
        assert!(!numeric_is_psd(&indef));
    }
}
