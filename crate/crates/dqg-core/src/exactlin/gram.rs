//! Gram matrices, exact positive-semidefiniteness, and quotient spaces by
//! the radical of a sesquilinear form.
//!
//! A pre-inner-product space is carried as an ambient coordinate space with a
//! Hermitian PSD Gram matrix G; vectors u, v represent the same class iff
//! G(u - v) = 0, so class equality and map well-definedness reduce to exact
//! linear algebra against G.

use super::matrix::GMatrix;
use super::scalar::GRat;
use num_traits::Signed;

/// Exact positive-semidefiniteness via pivoted LDL^H elimination.
///
/// Invariant used at each step: if every diagonal entry of the remaining
/// block is zero but the block is not zero, the form has a negative vector
/// (for Hermitian M, zero diagonal with a nonzero off-diagonal entry yields
/// an indefinite 2x2 principal minor).
pub fn is_psd_hermitian(m: &GMatrix) -> bool {
    if !m.is_hermitian() {
        return false;
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        // Lowest-index positive diagonal pivot.
        let mut pivot = None;
        for &i in &active {
            let d = a.get(i, i);
            if !d.is_zero() {
                if !d.is_real() || d.re.is_negative() {
                    return false;
                }
                pivot = Some(i);
                break;
            }
        }
        let Some(p) = pivot else {
            // All remaining diagonal entries vanish: PSD iff remaining block zero.
            for &i in &active {
                for &j in &active {
                    if !a.get(i, j).is_zero() {
                        return false;
                    }
                }
            }
            return true;
        };
        let d = a.get(p, p).clone();
        let rest: Vec<usize> = active.iter().copied().filter(|&i| i != p).collect();
        for &i in &rest {
            for &j in &rest {
                // Schur complement update: a_ij -= a_ip a_pj / d
                let upd = a.get(i, j) - &(&(a.get(i, p) * a.get(p, j)) / &d);
                a.set(i, j, upd);
            }
        }
        active = rest;
    }
    true
}

/// An ambient coordinate space equipped with a Hermitian PSD Gram matrix.
/// Classes are ambient vectors modulo the radical of the form.
#[derive(Clone, Debug)]
pub struct GramSpace {
    pub dim: usize,
    pub gram: GMatrix,
    pub radical: Vec<Vec<GRat>>,
    /// Dimension of the quotient (= rank of the Gram matrix).
    pub qdim: usize,
}

impl GramSpace {
    pub fn new(gram: GMatrix) -> Result<Self, String> {
        if !gram.is_square() {
            return Err("gram matrix must be square".into());
        }
        if !gram.is_hermitian() {
            return Err("gram matrix must be Hermitian".into());
        }
        if !is_psd_hermitian(&gram) {
            return Err("gram matrix must be positive semidefinite".into());
        }
        let radical = gram.nullspace();
        let qdim = gram.rows - radical.len();
        Ok(GramSpace {
            dim: gram.rows,
            gram,
            radical,
            qdim,
        })
    }

    /// Inner product of two ambient vectors, conjugate-linear in the first slot.
    pub fn inner(&self, u: &[GRat], v: &[GRat]) -> GRat {
        let gv = self.gram.mul_vec(v);
        let mut acc = GRat::zero();
        for (a, b) in u.iter().zip(gv.iter()) {
            if !a.is_zero() && !b.is_zero() {
                acc += &(&a.conj() * b);
            }
        }
        acc
    }

    /// Whether two ambient vectors represent the same class in the quotient.
    pub fn class_eq(&self, u: &[GRat], v: &[GRat]) -> bool {
        let diff: Vec<GRat> = u.iter().zip(v.iter()).map(|(a, b)| a - b).collect();
        self.is_null(&diff)
    }

    /// Whether an ambient vector lies in the radical of the form.
    pub fn is_null(&self, v: &[GRat]) -> bool {
        self.gram.mul_vec(v).iter().all(|x| x.is_zero())
    }

    /// Whether the classes of `vectors` span the whole quotient.
    pub fn classes_span(&self, vectors: &[Vec<GRat>]) -> bool {
        // rank of G * [v...] equals qdim iff the classes span.
        let m = GMatrix::from_columns(self.dim, vectors);
        self.gram.mul(&m).rank() == self.qdim
    }

    /// Rank of the span of the classes of `vectors` in the quotient.
    pub fn class_rank(&self, vectors: &[Vec<GRat>]) -> usize {
        let m = GMatrix::from_columns(self.dim, vectors);
        self.gram.mul(&m).rank()
    }
}

/// A linear map between Gram quotient spaces, carried as a matrix on ambient
/// coordinates. Construction checks the map sends radical to radical, which
/// makes it well defined on classes.
#[derive(Clone, Debug)]
pub struct GramMap {
    pub mat: GMatrix,
}

impl GramMap {
    pub fn new(dom: &GramSpace, cod: &GramSpace, mat: GMatrix) -> Result<Self, String> {
        if mat.rows != cod.dim || mat.cols != dom.dim {
            return Err(format!(
                "map shape {}x{} does not match cod {} / dom {}",
                mat.rows, mat.cols, cod.dim, dom.dim
            ));
        }
        for v in &dom.radical {
            if !cod.is_null(&mat.mul_vec(v)) {
                return Err("map does not send radical into radical".into());
            }
        }
        Ok(GramMap { mat })
    }

    /// Whether the map preserves the forms: <Mu, Mv>_cod = <u, v>_dom for all
    /// ambient u, v, i.e. M^H G_cod M = G_dom.
    pub fn preserves_form(&self, dom: &GramSpace, cod: &GramSpace) -> bool {
        self.mat.adjoint().mul(&cod.gram).mul(&self.mat) == dom.gram
    }

    /// Whether the induced map on quotients is surjective.
    pub fn quotient_surjective(&self, _dom: &GramSpace, cod: &GramSpace) -> bool {
        // Image classes span cod iff rank(G_cod * M) = qdim(cod).
        cod.gram.mul(&self.mat).rank() == cod.qdim
    }

    /// Whether the induced map on quotients is a unitary (form-preserving
    /// bijection).
    pub fn quotient_unitary(&self, dom: &GramSpace, cod: &GramSpace) -> bool {
        self.preserves_form(dom, cod)
            && dom.qdim == cod.qdim
            && self.quotient_surjective(dom, cod)
    }

    /// Adjoint with respect to the forms: solves G_dom X = M^H G_cod.
    /// Solvable whenever the map is well defined on classes; the solution is
    /// unique on classes and we return one ambient representative.
    pub fn gram_adjoint(&self, dom: &GramSpace, cod: &GramSpace) -> Option<GramMap> {
        let rhs = self.mat.adjoint().mul(&cod.gram);
        let x = dom.gram.solve(&rhs)?;
        Some(GramMap { mat: x })
    }

    /// Whether this map and `other` agree as maps on classes.
    pub fn class_eq(&self, other: &GramMap, cod: &GramSpace) -> bool {
        cod.gram.mul(&self.mat.sub(&other.mat)).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> GRat {
        GRat::from_ratio(p, d)
    }

    #[test]
    fn psd_accepts_known_psd() {
        assert!(is_psd_hermitian(&GMatrix::identity(3)));
        // diag(4, 0, 1)
        let mut d = GMatrix::zeros(3, 3);
        d.set(0, 0, q(4, 1));
        d.set(2, 2, q(1, 1));
        assert!(is_psd_hermitian(&d));
        // Rank-one [[1,1],[1,1]]
        let mut r1 = GMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                r1.set(i, j, q(1, 1));
            }
        }
        assert!(is_psd_hermitian(&r1));
        // Complex PSD [[2, i],[-i, 2]] (eigenvalues 1 and 3)
        let mut c = GMatrix::zeros(2, 2);
        c.set(0, 0, q(2, 1));
        c.set(0, 1, GRat::i());
        c.set(1, 0, -GRat::i());
        c.set(1, 1, q(2, 1));
        assert!(is_psd_hermitian(&c));
    }

    #[test]
    fn psd_rejects_indefinite() {
        // [[0,1],[1,0]] has eigenvalues +-1.
        let mut m = GMatrix::zeros(2, 2);
        m.set(0, 1, q(1, 1));
        m.set(1, 0, q(1, 1));
        assert!(!is_psd_hermitian(&m));
        // [[1,2],[2,1]] has a negative eigenvalue.
        let mut m2 = GMatrix::zeros(2, 2);
        m2.set(0, 0, q(1, 1));
        m2.set(0, 1, q(2, 1));
        m2.set(1, 0, q(2, 1));
        m2.set(1, 1, q(1, 1));
        assert!(!is_psd_hermitian(&m2));
        // -identity
        let neg = GMatrix::identity(2).scale(&q(-1, 1));
        assert!(!is_psd_hermitian(&neg));
        // Non-Hermitian rejected outright.
        let mut nh = GMatrix::zeros(2, 2);
        nh.set(0, 1, q(1, 1));
        assert!(!is_psd_hermitian(&nh));
    }

    #[test]
    fn gram_space_quotient() {
        // G = [[1,1],[1,1]]: radical spanned by (1,-1), quotient dim 1.
        let mut g = GMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                g.set(i, j, q(1, 1));
            }
        }
        let sp = GramSpace::new(g).unwrap();
        assert_eq!(sp.qdim, 1);
        assert_eq!(sp.radical.len(), 1);
        assert!(sp.class_eq(&[q(1, 1), q(0, 1)], &[q(0, 1), q(1, 1)]));
        assert!(!sp.class_eq(&[q(1, 1), q(0, 1)], &[q(2, 1), q(0, 1)]));
        assert!(sp.classes_span(&[vec![q(1, 1), q(0, 1)]]));
    }

    #[test]
    fn gram_map_adjoint_identity() {
        // dom = cod = quotient of [[1,1],[1,1]]; M = swap is the identity on
        // classes, and its Gram adjoint must also be the identity on classes.
        let mut g = GMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                g.set(i, j, q(1, 1));
            }
        }
        let sp = GramSpace::new(g).unwrap();
        let mut swap = GMatrix::zeros(2, 2);
        swap.set(0, 1, q(1, 1));
        swap.set(1, 0, q(1, 1));
        let m = GramMap::new(&sp, &sp, swap).unwrap();
        assert!(m.preserves_form(&sp, &sp));
        assert!(m.quotient_unitary(&sp, &sp));
        let adj = m.gram_adjoint(&sp, &sp).unwrap();
        let id = GramMap::new(&sp, &sp, GMatrix::identity(2)).unwrap();
        assert!(adj.class_eq(&id, &sp));
    }

    #[test]
    fn gram_map_rejects_radical_violation() {
        let mut g = GMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                g.set(i, j, q(1, 1));
            }
        }
        let sp = GramSpace::new(g).unwrap();
        let cod = GramSpace::new(GMatrix::identity(2)).unwrap();
        // (1,-1) is radical in dom but maps to (1,-1) != 0 in cod.
        assert!(GramMap::new(&sp, &cod, GMatrix::identity(2)).is_err());
    }
}
