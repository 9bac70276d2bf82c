//! Bigraded *-algebras over the base with commuting range and source
//! embeddings: validation of all structural axioms, the opposite and
//! co-opposite functors, the crossed product of the base by the group, and
//! fiber / balanced tensor products.

pub mod balanced;
pub mod fiber;
pub mod tensor;

use crate::base::{Base, BElem};
use crate::exactlin::{GMatrix, GRat};

/// Elements of the algebra are coordinate vectors over `basis`.
pub type AElem = Vec<GRat>;

#[derive(Clone, Debug)]
pub struct Algebroid {
    pub base: Base,
    pub basis: Vec<String>,
    /// Per basis element the bidegree (forward, backward) as group indices.
    pub grading: Vec<(usize, usize)>,
    /// mult[i][j] = sparse expansion of e_i e_j.
    pub mult: Vec<Vec<Vec<(usize, GRat)>>>,
    /// Column i = star(e_i); star is antilinear, so coordinates are
    /// conjugated before this matrix is applied.
    pub star_mat: GMatrix,
    /// r(delta_x), s(delta_x) per point x.
    pub r_img: Vec<AElem>,
    pub s_img: Vec<AElem>,
}

impl Algebroid {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn zero(&self) -> AElem {
        vec![GRat::zero(); self.dim()]
    }

    pub fn basis_vec(&self, i: usize) -> AElem {
        let mut v = self.zero();
        v[i] = GRat::one();
        v
    }

    pub fn one(&self) -> AElem {
        let mut acc = self.zero();
        for x in 0..self.base.n_points() {
            for (k, v) in self.r_img[x].iter().enumerate() {
                acc[k] = &acc[k] + v;
            }
        }
        acc
    }

    pub fn mul(&self, a: &[GRat], b: &[GRat]) -> AElem {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in &self.mult[i][j] {
                    out[*k] = &out[*k] + &(&xy * c);
                }
            }
        }
        out
    }

    pub fn star(&self, a: &[GRat]) -> AElem {
        let conj: Vec<GRat> = a.iter().map(|v| v.conj()).collect();
        self.star_mat.mul_vec(&conj)
    }

    pub fn r_of(&self, b: &[GRat]) -> AElem {
        let mut out = self.zero();
        for (x, c) in b.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, v) in self.r_img[x].iter().enumerate() {
                if !v.is_zero() {
                    out[k] = &out[k] + &(c * v);
                }
            }
        }
        out
    }

    pub fn s_of(&self, b: &[GRat]) -> AElem {
        let mut out = self.zero();
        for (x, c) in b.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, v) in self.s_img[x].iter().enumerate() {
                if !v.is_zero() {
                    out[k] = &out[k] + &(c * v);
                }
            }
        }
        out
    }

    /// Left multiplication operator by `a` in the basis.
    pub fn left_mult_matrix(&self, a: &[GRat]) -> GMatrix {
        let n = self.dim();
        let mut m = GMatrix::zeros(n, n);
        for j in 0..n {
            let col = self.mul(a, &self.basis_vec(j));
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                }
            }
        }
        m
    }

    pub fn right_mult_matrix(&self, a: &[GRat]) -> GMatrix {
        let n = self.dim();
        let mut m = GMatrix::zeros(n, n);
        for j in 0..n {
            let col = self.mul(&self.basis_vec(j), a);
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                }
            }
        }
        m
    }

    /// Whether a vector is supported on a single bidegree; returns it.
    /// The zero vector reports the unit bidegree.
    pub fn homogeneous_degree(&self, v: &[GRat]) -> Option<(usize, usize)> {
        let mut deg = None;
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            match deg {
                None => deg = Some(self.grading[i]),
                Some(d) if d == self.grading[i] => {}
                _ => return None,
            }
        }
        let e = self.base.group.identity;
        Some(deg.unwrap_or((e, e)))
    }

    /// Indices of basis elements with the given bidegree.
    pub fn grade_indices(&self, deg: (usize, usize)) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.grading[i] == deg)
            .collect()
    }

    /// Component of `v` in the given bidegree.
    pub fn grade_component(&self, v: &[GRat], deg: (usize, usize)) -> AElem {
        let mut out = self.zero();
        for (i, x) in v.iter().enumerate() {
            if self.grading[i] == deg {
                out[i] = x.clone();
            }
        }
        out
    }

    pub fn elem_str(&self, v: &[GRat]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| format!("({})*{}", x, self.basis[i]))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Check all structural axioms; returns the list of violations
    /// (empty means the algebroid is valid).
    pub fn validate(&self) -> Vec<String> {
        let mut errs = Vec::new();
        let n = self.dim();
        let npts = self.base.n_points();
        let g = self.base.group.order();
        // Shape sanity first; bail out early if the tables are malformed.
        if self.grading.len() != n
            || self.mult.len() != n
            || self.mult.iter().any(|r| r.len() != n)
            || self.star_mat.rows != n
            || self.star_mat.cols != n
            || self.r_img.len() != npts
            || self.s_img.len() != npts
            || self.r_img.iter().any(|v| v.len() != n)
            || self.s_img.iter().any(|v| v.len() != n)
        {
            return vec!["algebra tables have inconsistent shapes".into()];
        }
        for &(d, db) in &self.grading {
            if d >= g || db >= g {
                return vec!["grading refers to unknown group element".into()];
            }
        }
        let cap = |errs: &Vec<String>| errs.len() >= 64;

        // Associativity on basis triples.
        'assoc: for i in 0..n {
            for j in 0..n {
                let ij = self.mul(&self.basis_vec(i), &self.basis_vec(j));
                for k in 0..n {
                    let lhs = self.mul(&ij, &self.basis_vec(k));
                    let rhs = self.mul(
                        &self.basis_vec(i),
                        &self.mul(&self.basis_vec(j), &self.basis_vec(k)),
                    );
                    if lhs != rhs {
                        errs.push(format!(
                            "associativity fails at ({}, {}, {})",
                            self.basis[i], self.basis[j], self.basis[k]
                        ));
                        if cap(&errs) {
                            break 'assoc;
                        }
                    }
                }
            }
        }

        // Unit: r(1) = s(1) acts as a two-sided unit.
        let one = self.one();
        let s_one = self.s_of(&self.base.one_elem());
        if one != s_one {
            errs.push("r(1) != s(1)".into());
        }
        for i in 0..n {
            let e = self.basis_vec(i);
            if self.mul(&one, &e) != e || self.mul(&e, &one) != e {
                errs.push(format!("r(1) is not a unit at {}", self.basis[i]));
            }
        }

        // Star: involutive antihomomorphism inverting the bidegree.
        for i in 0..n {
            let e = self.basis_vec(i);
            let ss = self.star(&self.star(&e));
            if ss != e {
                errs.push(format!("star not involutive at {}", self.basis[i]));
            }
            let (d, db) = self.grading[i];
            let want = (self.base.group.inv[d], self.base.group.inv[db]);
            match self.homogeneous_degree(&self.star(&e)) {
                Some(got) if got == want || self.star(&e).iter().all(|v| v.is_zero()) => {}
                _ => errs.push(format!("star does not invert bidegree at {}", self.basis[i])),
            }
        }
        'star: for i in 0..n {
            for j in 0..n {
                let lhs = self.star(&self.mul(&self.basis_vec(i), &self.basis_vec(j)));
                let rhs = self.mul(&self.star(&self.basis_vec(j)), &self.star(&self.basis_vec(i)));
                if lhs != rhs {
                    errs.push(format!(
                        "star is not antimultiplicative at ({}, {})",
                        self.basis[i], self.basis[j]
                    ));
                    if cap(&errs) {
                        break 'star;
                    }
                }
            }
        }

        // Grading multiplicative.
        'grade: for i in 0..n {
            for j in 0..n {
                let prod = self.mul(&self.basis_vec(i), &self.basis_vec(j));
                let want = (
                    self.base.group.mul(self.grading[i].0, self.grading[j].0),
                    self.base.group.mul(self.grading[i].1, self.grading[j].1),
                );
                for (k, v) in prod.iter().enumerate() {
                    if !v.is_zero() && self.grading[k] != want {
                        errs.push(format!(
                            "bidegree of product not multiplicative at ({}, {})",
                            self.basis[i], self.basis[j]
                        ));
                        if cap(&errs) {
                            break 'grade;
                        }
                        break;
                    }
                }
            }
        }

        // r, s: unital *-homomorphisms with commuting images in the unit
        // bidegree.
        let e_id = self.base.group.identity;
        for x in 0..npts {
            for (emb, img) in [("r", &self.r_img), ("s", &self.s_img)] {
                match self.homogeneous_degree(&img[x]) {
                    Some(d) if d == (e_id, e_id) => {}
                    _ => errs.push(format!(
                        "{}(delta_{}) is not of unit bidegree",
                        emb, self.base.points[x]
                    )),
                }
            }
            for y in 0..npts {
                let bx = self.base.delta(x);
                let by = self.base.delta(y);
                let bb = self.base.b_mul(&bx, &by);
                if self.mul(&self.r_of(&bx), &self.r_of(&by)) != self.r_of(&bb) {
                    errs.push(format!(
                        "r is not multiplicative at ({}, {})",
                        self.base.points[x], self.base.points[y]
                    ));
                }
                if self.mul(&self.s_of(&bx), &self.s_of(&by)) != self.s_of(&bb) {
                    errs.push(format!(
                        "s is not multiplicative at ({}, {})",
                        self.base.points[x], self.base.points[y]
                    ));
                }
                let rs = self.mul(&self.r_img[x], &self.s_img[y]);
                let sr = self.mul(&self.s_img[y], &self.r_img[x]);
                if rs != sr {
                    errs.push(format!(
                        "r and s images do not commute at ({}, {})",
                        self.base.points[x], self.base.points[y]
                    ));
                }
            }
            if self.star(&self.r_img[x]) != self.r_img[x] {
                errs.push(format!(
                    "r(delta_{}) is not self-adjoint",
                    self.base.points[x]
                ));
            }
            if self.star(&self.s_img[x]) != self.s_img[x] {
                errs.push(format!(
                    "s(delta_{}) is not self-adjoint",
                    self.base.points[x]
                ));
            }
        }

        // Twist laws: a r(b) = r(d(a) b) a and a s(b) = s(db(a) b) a for
        // homogeneous a of bidegree (d, db).
        'twist: for i in 0..n {
            let (d, db) = self.grading[i];
            let a = self.basis_vec(i);
            for x in 0..npts {
                let bx = self.base.delta(x);
                let lhs_r = self.mul(&a, &self.r_of(&bx));
                let rhs_r = self.mul(&self.r_of(&self.base.gamma_apply(d, &bx)), &a);
                if lhs_r != rhs_r {
                    errs.push(format!(
                        "r twist law fails at ({}, {})",
                        self.basis[i], self.base.points[x]
                    ));
                    if cap(&errs) {
                        break 'twist;
                    }
                }
                let lhs_s = self.mul(&a, &self.s_of(&bx));
                let rhs_s = self.mul(&self.s_of(&self.base.gamma_apply(db, &bx)), &a);
                if lhs_s != rhs_s {
                    errs.push(format!(
                        "s twist law fails at ({}, {})",
                        self.basis[i], self.base.points[x]
                    ));
                    if cap(&errs) {
                        break 'twist;
                    }
                }
            }
        }
        errs
    }

    /// The opposite algebra: reversed multiplication, inverted bidegrees,
    /// same star and embeddings.
    pub fn opposite(&self) -> Algebroid {
        let n = self.dim();
        let mut mult = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                mult[i][j] = self.mult[j][i].clone();
            }
        }
        let inv = &self.base.group.inv;
        Algebroid {
            base: self.base.clone(),
            basis: self.basis.clone(),
            grading: self
                .grading
                .iter()
                .map(|&(d, db)| (inv[d], inv[db]))
                .collect(),
            mult,
            star_mat: self.star_mat.clone(),
            r_img: self.r_img.clone(),
            s_img: self.s_img.clone(),
        }
    }

    /// The co-opposite algebra: same multiplication, swapped bidegree legs,
    /// exchanged r and s.
    pub fn coopposite(&self) -> Algebroid {
        Algebroid {
            base: self.base.clone(),
            basis: self.basis.clone(),
            grading: self.grading.iter().map(|&(d, db)| (db, d)).collect(),
            mult: self.mult.clone(),
            star_mat: self.star_mat.clone(),
            r_img: self.s_img.clone(),
            s_img: self.r_img.clone(),
        }
    }

    /// Structural equality of the defining tables.
    pub fn tables_eq(&self, other: &Algebroid) -> bool {
        self.dim() == other.dim()
            && self.grading == other.grading
            && self.star_mat == other.star_mat
            && self.r_img == other.r_img
            && self.s_img == other.s_img
            && (0..self.dim()).all(|i| {
                (0..self.dim()).all(|j| {
                    let a: std::collections::BTreeMap<usize, &GRat> =
                        self.mult[i][j].iter().map(|(k, c)| (*k, c)).collect();
                    let b: std::collections::BTreeMap<usize, &GRat> =
                        other.mult[i][j].iter().map(|(k, c)| (*k, c)).collect();
                    a == b
                })
            })
    }
}

/// The crossed product of the base by the group: basis delta_x gamma with
/// (delta_x gamma)(delta_y gamma') = [x = gamma y] delta_x gammagamma',
/// star (delta_x gamma)* = delta_{gamma^{-1} x} gamma^{-1}, bidegree
/// (gamma, gamma), and r = s = inclusion of the base at the unit.
pub fn crossed_product(base: &Base) -> Algebroid {
    let n = base.n_points();
    let g = base.group.order();
    let dim = n * g;
    let idx = |x: usize, gamma: usize| gamma * n + x;
    let mut basis = Vec::with_capacity(dim);
    let mut grading = Vec::with_capacity(dim);
    for gamma in 0..g {
        for x in 0..n {
            basis.push(format!("{}|{}", base.points[x], base.group.names[gamma]));
            grading.push((gamma, gamma));
        }
    }
    let mut mult = vec![vec![Vec::new(); dim]; dim];
    for gamma in 0..g {
        for x in 0..n {
            for gamma2 in 0..g {
                for y in 0..n {
                    if x == base.act(gamma, y) {
                        mult[idx(x, gamma)][idx(y, gamma2)] =
                            vec![(idx(x, base.group.mul(gamma, gamma2)), GRat::one())];
                    }
                }
            }
        }
    }
    let mut star_mat = GMatrix::zeros(dim, dim);
    for gamma in 0..g {
        let gi = base.group.inv[gamma];
        for x in 0..n {
            star_mat.set(idx(base.act(gi, x), gi), idx(x, gamma), GRat::one());
        }
    }
    let mut r_img = Vec::with_capacity(n);
    for x in 0..n {
        let mut v = vec![GRat::zero(); dim];
        v[idx(x, base.group.identity)] = GRat::one();
        r_img.push(v);
    }
    let s_img = r_img.clone();
    Algebroid {
        base: base.clone(),
        basis,
        grading,
        mult,
        star_mat,
        r_img,
        s_img,
    }
}

/// Decompose an element of the crossed product into (gamma -> base element)
/// rows, i.e. sum_gamma b_gamma gamma.
pub fn crossed_components(base: &Base, v: &[GRat]) -> Vec<BElem> {
    let n = base.n_points();
    let g = base.group.order();
    assert_eq!(v.len(), n * g);
    (0..g)
        .map(|gamma| (0..n).map(|x| v[gamma * n + x].clone()).collect())
        .collect()
}

/// The pair algebroid B (x) B: basis delta_x (x) delta_y with pointwise
/// multiplication, star fixing the basis, every element of bidegree (e, e),
/// r(b) = b (x) 1 and s(b) = 1 (x) b.
pub fn pair_algebroid(base: &Base) -> Algebroid {
    let n = base.n_points();
    let dim = n * n;
    let e = base.group.identity;
    let idx = |x: usize, y: usize| x * n + y;
    let mut basis = Vec::with_capacity(dim);
    for x in 0..n {
        for y in 0..n {
            basis.push(format!("{}.{}", base.points[x], base.points[y]));
        }
    }
    let mut mult = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        mult[i][i] = vec![(i, GRat::one())];
    }
    let star_mat = GMatrix::identity(dim);
    let mut r_img = Vec::with_capacity(n);
    let mut s_img = Vec::with_capacity(n);
    for x in 0..n {
        let mut r = vec![GRat::zero(); dim];
        let mut s = vec![GRat::zero(); dim];
        for y in 0..n {
            r[idx(x, y)] = GRat::one();
            s[idx(y, x)] = GRat::one();
        }
        r_img.push(r);
        s_img.push(s);
    }
    Algebroid {
        base: base.clone(),
        basis,
        grading: vec![(e, e); dim],
        mult,
        star_mat,
        r_img,
        s_img,
    }
}

/// sum_gamma b_gamma gamma -> sum_gamma b_gamma.
pub fn crossed_sharp(base: &Base, v: &[GRat]) -> BElem {
    let n = base.n_points();
    let g = base.group.order();
    let mut out = base.zero_elem();
    for gamma in 0..g {
        for x in 0..n {
            let c = &v[gamma * n + x];
            if !c.is_zero() {
                out[x] = &out[x] + c;
            }
        }
    }
    out
}

/// sum_gamma gamma c_gamma -> sum_gamma c_gamma; writing the input as
/// sum_gamma b_gamma gamma this is sum_gamma gamma^{-1}(b_gamma).
pub fn crossed_flat(base: &Base, v: &[GRat]) -> BElem {
    let n = base.n_points();
    let g = base.group.order();
    let mut out = base.zero_elem();
    for gamma in 0..g {
        for y in 0..n {
            let c = &v[gamma * n + base.act(gamma, y)];
            if !c.is_zero() {
                out[y] = &out[y] + c;
            }
        }
    }
    out
}

/// Verify that the matrix `m` defines an isomorphism of algebroids from `a`
/// to `c`: linear bijection, multiplicative, star- and grading-preserving,
/// compatible with the embeddings.
pub fn check_iso(a: &Algebroid, c: &Algebroid, m: &GMatrix) -> Result<(), String> {
    if m.rows != c.dim() || m.cols != a.dim() {
        return Err("iso matrix has wrong shape".into());
    }
    if m.rank() != a.dim() || a.dim() != c.dim() {
        return Err("iso matrix is not bijective".into());
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = m.mul_vec(&a.mul(&a.basis_vec(i), &a.basis_vec(j)));
            let rhs = c.mul(&m.column(i), &m.column(j));
            if lhs != rhs {
                return Err(format!(
                    "not multiplicative at ({}, {})",
                    a.basis[i], a.basis[j]
                ));
            }
        }
        let lhs = m.mul_vec(&a.star(&a.basis_vec(i)));
        // star is antilinear: conjugate coordinates first.
        let col_conj: Vec<GRat> = m.column(i).iter().map(|v| v.conj()).collect();
        let rhs = c.star_mat.mul_vec(&col_conj);
        if lhs != rhs {
            return Err(format!("not star-preserving at {}", a.basis[i]));
        }
        match c.homogeneous_degree(&m.column(i)) {
            Some(d) if d == a.grading[i] || m.column(i).iter().all(|v| v.is_zero()) => {}
            _ => return Err(format!("not grading-preserving at {}", a.basis[i])),
        }
    }
    for x in 0..a.base.n_points() {
        if m.mul_vec(&a.r_img[x]) != c.r_img[x] {
            return Err(format!("does not intertwine r at {}", a.base.points[x]));
        }
        if m.mul_vec(&a.s_img[x]) != c.s_img[x] {
            return Err(format!("does not intertwine s at {}", a.base.points[x]));
        }
    }
    Ok(())
}
