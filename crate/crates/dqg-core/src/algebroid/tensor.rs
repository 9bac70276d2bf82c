//! Coordinate helpers for two- and three-fold tensor products of algebras.
//! Vectors are dense over the product basis, row-major: index (i, j) is
//! i * dim2 + j, and (i, j, k) is (i * dim2 + j) * dim3 + k.

use super::{AElem, Algebroid};
use crate::exactlin::GRat;

pub fn t2_dim(a: &Algebroid, c: &Algebroid) -> usize {
    a.dim() * c.dim()
}

#[inline]
pub fn t2_idx(c_dim: usize, i: usize, j: usize) -> usize {
    i * c_dim + j
}

pub fn t2_zero(a: &Algebroid, c: &Algebroid) -> Vec<GRat> {
    vec![GRat::zero(); t2_dim(a, c)]
}

pub fn t2_basis(a: &Algebroid, c: &Algebroid, i: usize, j: usize) -> Vec<GRat> {
    let mut v = t2_zero(a, c);
    v[t2_idx(c.dim(), i, j)] = GRat::one();
    v
}

/// Simple tensor x (x) y as an ambient vector.
pub fn t2_simple(a: &Algebroid, c: &Algebroid, x: &[GRat], y: &[GRat]) -> Vec<GRat> {
    let mut v = t2_zero(a, c);
    for (i, p) in x.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        for (j, q) in y.iter().enumerate() {
            if !q.is_zero() {
                v[t2_idx(c.dim(), i, j)] = p * q;
            }
        }
    }
    v
}

pub fn t2_from_pairs(a: &Algebroid, c: &Algebroid, pairs: &[(AElem, AElem)]) -> Vec<GRat> {
    let mut v = t2_zero(a, c);
    for (x, y) in pairs {
        for (i, p) in x.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in y.iter().enumerate() {
                if !q.is_zero() {
                    let idx = t2_idx(c.dim(), i, j);
                    v[idx] = &v[idx] + &(p * q);
                }
            }
        }
    }
    v
}

/// Decompose into sparse (i, j, coefficient) triples.
pub fn t2_entries(c_dim: usize, v: &[GRat]) -> Vec<(usize, usize, GRat)> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(idx, x)| (idx / c_dim, idx % c_dim, x.clone()))
        .collect()
}

/// Legwise product in the tensor-square algebra.
pub fn t2_mul(a: &Algebroid, c: &Algebroid, u: &[GRat], v: &[GRat]) -> Vec<GRat> {
    let cd = c.dim();
    let mut out = t2_zero(a, c);
    for (i1, j1, x) in t2_entries(cd, u) {
        for (i2, j2, y) in t2_entries(cd, v) {
            let xy = &x * &y;
            for (k1, c1) in &a.mult[i1][i2] {
                let xyc = &xy * c1;
                for (k2, c2) in &c.mult[j1][j2] {
                    let idx = t2_idx(cd, *k1, *k2);
                    out[idx] = &out[idx] + &(&xyc * c2);
                }
            }
        }
    }
    out
}

/// Legwise star (antilinear).
pub fn t2_star(a: &Algebroid, c: &Algebroid, v: &[GRat]) -> Vec<GRat> {
    let cd = c.dim();
    let mut out = t2_zero(a, c);
    for (i, j, x) in t2_entries(cd, v) {
        let xs = x.conj();
        let si = a.star(&a.basis_vec(i));
        let sj = c.star(&c.basis_vec(j));
        for (k1, c1) in si.iter().enumerate() {
            if c1.is_zero() {
                continue;
            }
            for (k2, c2) in sj.iter().enumerate() {
                if !c2.is_zero() {
                    let idx = t2_idx(cd, k1, k2);
                    out[idx] = &out[idx] + &(&(&xs * c1) * c2);
                }
            }
        }
    }
    out
}

/// Apply linear maps to the legs (None = identity). Maps are given by their
/// action on basis vectors of each algebra.
pub fn t2_apply(
    a: &Algebroid,
    c: &Algebroid,
    f1: Option<&dyn Fn(usize) -> AElem>,
    f2: Option<&dyn Fn(usize) -> AElem>,
    v: &[GRat],
) -> Vec<GRat> {
    let cd = c.dim();
    let mut out = t2_zero(a, c);
    for (i, j, x) in t2_entries(cd, v) {
        let img1 = match f1 {
            Some(f) => f(i),
            None => a.basis_vec(i),
        };
        let img2 = match f2 {
            Some(f) => f(j),
            None => c.basis_vec(j),
        };
        for (k1, c1) in img1.iter().enumerate() {
            if c1.is_zero() {
                continue;
            }
            for (k2, c2) in img2.iter().enumerate() {
                if !c2.is_zero() {
                    let idx = t2_idx(cd, k1, k2);
                    out[idx] = &out[idx] + &(&(&x * c1) * c2);
                }
            }
        }
    }
    out
}

/// Flip the legs: x (x) y -> y (x) x. Output is indexed over c (x) a.
pub fn t2_flip(a: &Algebroid, c: &Algebroid, v: &[GRat]) -> Vec<GRat> {
    let cd = c.dim();
    let ad = a.dim();
    let mut out = vec![GRat::zero(); cd * ad];
    for (i, j, x) in t2_entries(cd, v) {
        out[t2_idx(ad, j, i)] = x;
    }
    out
}

/// Expand leg 1 of a two-leg vector with a pair-valued map (a
/// comultiplication representative on basis elements of the first leg).
/// Input is indexed over a (x) c, output over a (x) a (x) c.
pub fn t2_expand_leg1(
    a_dim: usize,
    c_dim: usize,
    delta: &dyn Fn(usize) -> Vec<GRat>,
    v: &[GRat],
) -> Vec<GRat> {
    let mut out = vec![GRat::zero(); a_dim * a_dim * c_dim];
    for (i, j, x) in t2_entries(c_dim, v) {
        for (pq, coef) in delta(i).iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let (p, q) = (pq / a_dim, pq % a_dim);
            let idx = (p * a_dim + q) * c_dim + j;
            out[idx] = &out[idx] + &(&x * coef);
        }
    }
    out
}

/// Expand leg 2 of a two-leg vector with a pair-valued map. Input over
/// a (x) c, output over a (x) c (x) c.
pub fn t2_expand_leg2(
    c_dim: usize,
    delta: &dyn Fn(usize) -> Vec<GRat>,
    v: &[GRat],
) -> Vec<GRat> {
    let mut out = vec![GRat::zero(); v.len() * c_dim];
    for (i, j, x) in t2_entries(c_dim, v) {
        for (pq, coef) in delta(j).iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let (p, q) = (pq / c_dim, pq % c_dim);
            let idx = (i * c_dim + p) * c_dim + q;
            out[idx] = &out[idx] + &(&x * coef);
        }
    }
    out
}

pub fn t3_dim(a: &Algebroid, c: &Algebroid, d: &Algebroid) -> usize {
    a.dim() * c.dim() * d.dim()
}

#[inline]
pub fn t3_idx(c_dim: usize, d_dim: usize, i: usize, j: usize, k: usize) -> usize {
    (i * c_dim + j) * d_dim + k
}

pub fn t3_zero(a: &Algebroid, c: &Algebroid, d: &Algebroid) -> Vec<GRat> {
    vec![GRat::zero(); t3_dim(a, c, d)]
}

pub fn t3_entries(c_dim: usize, d_dim: usize, v: &[GRat]) -> Vec<(usize, usize, usize, GRat)> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(idx, x)| {
            let k = idx % d_dim;
            let ij = idx / d_dim;
            (ij / c_dim, ij % c_dim, k, x.clone())
        })
        .collect()
}

pub fn t3_simple(
    a: &Algebroid,
    c: &Algebroid,
    d: &Algebroid,
    x: &[GRat],
    y: &[GRat],
    z: &[GRat],
) -> Vec<GRat> {
    let mut v = t3_zero(a, c, d);
    for (i, p) in x.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        for (j, q) in y.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let pq = p * q;
            for (k, t) in z.iter().enumerate() {
                if !t.is_zero() {
                    v[t3_idx(c.dim(), d.dim(), i, j, k)] = &pq * t;
                }
            }
        }
    }
    v
}

pub fn t3_mul(
    a: &Algebroid,
    c: &Algebroid,
    d: &Algebroid,
    u: &[GRat],
    v: &[GRat],
) -> Vec<GRat> {
    let (cd, dd) = (c.dim(), d.dim());
    let mut out = t3_zero(a, c, d);
    for (i1, j1, k1, x) in t3_entries(cd, dd, u) {
        for (i2, j2, k2, y) in t3_entries(cd, dd, v) {
            let xy = &x * &y;
            for (m1, c1) in &a.mult[i1][i2] {
                let p1 = &xy * c1;
                for (m2, c2) in &c.mult[j1][j2] {
                    let p2 = &p1 * c2;
                    for (m3, c3) in &d.mult[k1][k2] {
                        let idx = t3_idx(cd, dd, *m1, *m2, *m3);
                        out[idx] = &out[idx] + &(&p2 * c3);
                    }
                }
            }
        }
    }
    out
}

/// Expand leg 1 of a three-leg vector with a pair-valued map (e.g. a
/// comultiplication representative): e_i -> sum over (p, q) pairs, giving a
/// four-leg result regrouped as ((p, q), j, k) -> pairs over the first two
/// legs. Returned as a vector over a (x) a (x) c (x) d with given dims.
pub fn t3_expand_leg1(
    a: &Algebroid,
    c_dim: usize,
    d_dim: usize,
    delta: &dyn Fn(usize) -> Vec<GRat>,
    v: &[GRat],
) -> Vec<GRat> {
    let ad = a.dim();
    let mut out = vec![GRat::zero(); ad * ad * c_dim * d_dim];
    for (i, j, k, x) in t3_entries(c_dim, d_dim, v) {
        let img = delta(i);
        for (pq, coef) in img.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let (p, q) = (pq / ad, pq % ad);
            let idx = ((p * ad + q) * c_dim + j) * d_dim + k;
            out[idx] = &out[idx] + &(&x * coef);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::crossed_product;
    use crate::base::tests_support::instance_c_base;

    #[test]
    fn tensor_square_multiplication_matches_legs() {
        let b = instance_c_base();
        let a = crossed_product(&b);
        let u = t2_simple(&a, &a, &a.basis_vec(0), &a.basis_vec(1));
        let v = t2_simple(&a, &a, &a.basis_vec(1), &a.basis_vec(2));
        let prod = t2_mul(&a, &a, &u, &v);
        let want = t2_simple(
            &a,
            &a,
            &a.mul(&a.basis_vec(0), &a.basis_vec(1)),
            &a.mul(&a.basis_vec(1), &a.basis_vec(2)),
        );
        assert_eq!(prod, want);
    }

    #[test]
    fn star_and_flip_roundtrip() {
        let b = instance_c_base();
        let a = crossed_product(&b);
        let u = t2_simple(&a, &a, &a.basis_vec(3), &a.basis_vec(4));
        let ss = t2_star(&a, &a, &t2_star(&a, &a, &u));
        assert_eq!(ss, u);
        let ff = t2_flip(&a, &a, &t2_flip(&a, &a, &u));
        assert_eq!(ff, u);
    }
}
