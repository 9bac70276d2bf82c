//! Subquotients of a coordinate space: a distinguished coordinate subspace
//! together with a span of relation vectors inside it. Supports projection
//! to quotient coordinates, a fixed linear lift section, and class tests.
//!
//! This is the workhorse behind fiber products, balanced tensor products,
//! and every "equality of Sweedler expressions up to relations" check.

use super::matrix::GMatrix;
use super::scalar::GRat;

#[derive(Clone, Debug)]
pub struct Subquotient {
    pub ambient_dim: usize,
    /// Ambient indices spanning the coordinate subspace, in order.
    pub sub_indices: Vec<usize>,
    /// Inverse lookup: ambient index -> position in sub_indices.
    ambient_to_sub: Vec<Option<usize>>,
    /// Reduced row echelon form of the relation span, in sub coordinates.
    rel_rref: GMatrix,
    pivot_cols: Vec<usize>,
    free_cols: Vec<usize>,
}

impl Subquotient {
    /// Build from the ambient dimension, the coordinate subspace, and
    /// relation vectors given in ambient coordinates (must be supported on
    /// the subspace).
    pub fn new(
        ambient_dim: usize,
        sub_indices: Vec<usize>,
        relations: &[Vec<GRat>],
    ) -> Result<Self, String> {
        let mut ambient_to_sub = vec![None; ambient_dim];
        for (k, &i) in sub_indices.iter().enumerate() {
            if i >= ambient_dim {
                return Err("sub index out of range".into());
            }
            if ambient_to_sub[i].is_some() {
                return Err("duplicate sub index".into());
            }
            ambient_to_sub[i] = Some(k);
        }
        let m = sub_indices.len();
        let mut rel = GMatrix::zeros(relations.len(), m);
        for (row, v) in relations.iter().enumerate() {
            if v.len() != ambient_dim {
                return Err("relation vector has wrong dimension".into());
            }
            for (i, x) in v.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                match ambient_to_sub[i] {
                    Some(k) => rel.set(row, k, x.clone()),
                    None => return Err("relation not supported on the subspace".into()),
                }
            }
        }
        let pivot_cols = rel.row_reduce();
        let rank = pivot_cols.len();
        // Keep only the nonzero rows.
        let mut rref = GMatrix::zeros(rank, m);
        for r in 0..rank {
            for c in 0..m {
                rref.set(r, c, rel.get(r, c).clone());
            }
        }
        let pivot_set: std::collections::HashSet<usize> = pivot_cols.iter().copied().collect();
        let free_cols: Vec<usize> = (0..m).filter(|c| !pivot_set.contains(c)).collect();
        Ok(Subquotient {
            ambient_dim,
            sub_indices,
            ambient_to_sub,
            rel_rref: rref,
            pivot_cols,
            free_cols,
        })
    }

    /// Dimension of the quotient.
    pub fn dim(&self) -> usize {
        self.free_cols.len()
    }

    pub fn sub_dim(&self) -> usize {
        self.sub_indices.len()
    }

    pub fn rel_rank(&self) -> usize {
        self.pivot_cols.len()
    }

    /// Restrict an ambient vector to sub coordinates; None if it has support
    /// outside the subspace.
    pub fn to_sub(&self, v: &[GRat]) -> Option<Vec<GRat>> {
        assert_eq!(v.len(), self.ambient_dim);
        let mut out = vec![GRat::zero(); self.sub_indices.len()];
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            match self.ambient_to_sub[i] {
                Some(k) => out[k] = x.clone(),
                None => return None,
            }
        }
        Some(out)
    }

    /// Whether the ambient vector is supported on the subspace.
    pub fn supports(&self, v: &[GRat]) -> bool {
        self.to_sub(v).is_some()
    }

    fn reduce_sub(&self, v: &mut [GRat]) {
        for r in 0..self.rel_rref.rows {
            let p = self.pivot_cols[r];
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for c in 0..v.len() {
                let x = self.rel_rref.get(r, c);
                if !x.is_zero() {
                    v[c] = &v[c] - &(&f * x);
                }
            }
        }
    }

    /// Quotient coordinates of an ambient vector; None if not supported on
    /// the subspace.
    pub fn project(&self, v: &[GRat]) -> Option<Vec<GRat>> {
        let mut s = self.to_sub(v)?;
        self.reduce_sub(&mut s);
        Some(self.free_cols.iter().map(|&c| s[c].clone()).collect())
    }

    /// The fixed lift section: quotient coordinates to an ambient vector.
    pub fn lift(&self, q: &[GRat]) -> Vec<GRat> {
        assert_eq!(q.len(), self.free_cols.len());
        let mut out = vec![GRat::zero(); self.ambient_dim];
        for (k, &c) in self.free_cols.iter().enumerate() {
            if !q[k].is_zero() {
                out[self.sub_indices[c]] = q[k].clone();
            }
        }
        out
    }

    /// Ambient basis vector representing the k-th quotient basis class.
    pub fn class_rep(&self, k: usize) -> Vec<GRat> {
        let mut q = vec![GRat::zero(); self.dim()];
        q[k] = GRat::one();
        self.lift(&q)
    }

    /// Ambient index (of the sub basis) underlying the k-th quotient basis class.
    pub fn class_rep_index(&self, k: usize) -> usize {
        self.sub_indices[self.free_cols[k]]
    }

    /// The r-th reduced relation row as an ambient vector. Together these
    /// rows span the relation space.
    pub fn rel_row_ambient(&self, r: usize) -> Vec<GRat> {
        let mut amb = vec![GRat::zero(); self.ambient_dim];
        for c in 0..self.rel_rref.cols {
            let x = self.rel_rref.get(r, c);
            if !x.is_zero() {
                amb[self.sub_indices[c]] = x.clone();
            }
        }
        amb
    }

    /// Whether an ambient vector lies in the relation span.
    pub fn is_relation(&self, v: &[GRat]) -> bool {
        match self.project(v) {
            Some(q) => q.iter().all(|x| x.is_zero()),
            None => false,
        }
    }

    /// Whether two ambient vectors represent the same class.
    pub fn class_eq(&self, u: &[GRat], v: &[GRat]) -> bool {
        let diff: Vec<GRat> = u.iter().zip(v.iter()).map(|(a, b)| a - b).collect();
        self.is_relation(&diff)
    }

    /// Matrix of the induced quotient map for an ambient linear map given by
    /// its action on sub-basis vectors; `None` if the map does not kill the
    /// relations (checked against the codomain quotient).
    pub fn induced_map(
        &self,
        cod: &Subquotient,
        apply: impl Fn(&[GRat]) -> Vec<GRat>,
    ) -> Option<GMatrix> {
        // Relation rows must map into codomain relations.
        for r in 0..self.rel_rref.rows {
            if !cod.is_relation(&apply(&self.rel_row_ambient(r))) {
                return None;
            }
        }
        let mut m = GMatrix::zeros(cod.dim(), self.dim());
        for k in 0..self.dim() {
            let img = apply(&self.class_rep(k));
            let q = cod.project(&img)?;
            for (i, x) in q.iter().enumerate() {
                m.set(i, k, x.clone());
            }
        }
        Some(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> GRat {
        GRat::from_ratio(p, d)
    }

    #[test]
    fn quotient_of_plane_by_diagonal() {
        // Ambient dim 3, sub = {0, 1}, relation e0 - e1.
        let rel = vec![vec![q(1, 1), q(-1, 1), q(0, 1)]];
        let sq = Subquotient::new(3, vec![0, 1], &rel).unwrap();
        assert_eq!(sq.dim(), 1);
        assert!(sq.class_eq(
            &[q(1, 1), q(0, 1), q(0, 1)],
            &[q(0, 1), q(1, 1), q(0, 1)]
        ));
        assert!(!sq.supports(&[q(0, 1), q(0, 1), q(1, 1)]));
        // project . lift = id
        let l = sq.lift(&[q(5, 2)]);
        assert_eq!(sq.project(&l).unwrap(), vec![q(5, 2)]);
    }

    #[test]
    fn induced_map_checks_relations() {
        let rel = vec![vec![q(1, 1), q(-1, 1)]];
        let dom = Subquotient::new(2, vec![0, 1], &rel).unwrap();
        let cod = Subquotient::new(2, vec![0, 1], &[]).unwrap();
        // Identity does not kill e0 - e1 in cod (no relations there).
        assert!(dom.induced_map(&cod, |v| v.to_vec()).is_none());
        // Sum map (x, y) -> (x + y, 0) kills the relation? (1,-1) -> (0,0). Yes.
        let m = dom
            .induced_map(&cod, |v| vec![&v[0] + &v[1], GRat::zero()])
            .unwrap();
        assert_eq!(m.rows, 2);
        assert_eq!(m.cols, 1);
    }
}
