//! The commutative base: functions on a finite point set with a finite group
//! action and a faithful positive weight, the associated cocycle and its
//! square root, the GNS space K of the base weight, and the implementing
//! unitaries U_gamma.

use crate::exactlin::{GMatrix, GRat};
use num_rational::BigRational;
use num_traits::{One, Signed};

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug)]
pub struct Group {
    pub names: Vec<String>,
    /// table[a][b] = index of a*b
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub inv: Vec<usize>,
}

impl Group {
    pub fn build(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, Vec<String>> {
        let n = names.len();
        let mut errs = Vec::new();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(vec![format!("group table must be {n}x{n}")]);
        }
        for (a, row) in table.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                if c >= n {
                    errs.push(format!("table[{a}][{b}] = {c} out of range"));
                }
            }
        }
        if !errs.is_empty() {
            return Err(errs);
        }
        let mut identity = None;
        for e in 0..n {
            if (0..n).all(|a| table[e][a] == a && table[a][e] == a) {
                identity = Some(e);
                break;
            }
        }
        let Some(identity) = identity else {
            return Err(vec!["group table has no identity element".into()]);
        };
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity) {
                Some(b) => inv[a] = b,
                None => errs.push(format!("element {} has no inverse", names[a])),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        errs.push(format!(
                            "associativity fails at ({}, {}, {})",
                            names[a], names[b], names[c]
                        ));
                    }
                }
            }
        }
        if errs.is_empty() {
            Ok(Group {
                names,
                table,
                identity,
                inv,
            })
        } else {
            Err(errs)
        }
    }

    pub fn trivial() -> Self {
        Group {
            names: vec!["e".into()],
            table: vec![vec![0]],
            identity: 0,
            inv: vec![0],
        }
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
}

/// The base (B, Gamma, mu): functions on `points` with pointwise operations,
/// a left Gamma-action on points, and the weight densities w(x) > 0.
#[derive(Clone, Debug)]
pub struct Base {
    pub points: Vec<String>,
    pub group: Group,
    /// action[gamma][x] = gamma . x
    pub action: Vec<Vec<usize>>,
    pub weight: Vec<BigRational>,
}

/// Elements of B are coordinate vectors over the point basis.
pub type BElem = Vec<GRat>;

impl Base {
    pub fn build(
        points: Vec<String>,
        group: Group,
        action: Vec<Vec<usize>>,
        weight: Vec<BigRational>,
    ) -> Result<Self, Vec<String>> {
        let n = points.len();
        let g = group.order();
        let mut errs = Vec::new();
        if action.len() != g || action.iter().any(|r| r.len() != n) {
            return Err(vec![format!("action table must be {g}x{n}")]);
        }
        for row in &action {
            for &y in row {
                if y >= n {
                    return Err(vec!["action table entry out of range".into()]);
                }
            }
        }
        for x in 0..n {
            if action[group.identity][x] != x {
                errs.push(format!("not an action: e.{} != {}", points[x], points[x]));
            }
        }
        for a in 0..g {
            for b in 0..g {
                for x in 0..n {
                    if action[a][action[b][x]] != action[group.mul(a, b)][x] {
                        errs.push(format!(
                            "not an action at ({}, {}, {})",
                            group.names[a], group.names[b], points[x]
                        ));
                    }
                }
            }
        }
        if weight.len() != n {
            return Err(vec!["weight must assign every point".into()]);
        }
        for (x, w) in weight.iter().enumerate() {
            if !w.is_positive() {
                errs.push(format!("weight at {} is not positive", points[x]));
            }
        }
        if errs.is_empty() {
            Ok(Base {
                points,
                group,
                action,
                weight,
            })
        } else {
            Err(errs)
        }
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn act(&self, gamma: usize, x: usize) -> usize {
        self.action[gamma][x]
    }

    pub fn zero_elem(&self) -> BElem {
        vec![GRat::zero(); self.n_points()]
    }

    pub fn one_elem(&self) -> BElem {
        vec![GRat::one(); self.n_points()]
    }

    pub fn delta(&self, x: usize) -> BElem {
        let mut b = self.zero_elem();
        b[x] = GRat::one();
        b
    }

    pub fn weight_g(&self, x: usize) -> GRat {
        GRat::from_rational(self.weight[x].clone())
    }

    /// mu(b) = sum_x w(x) b(x).
    pub fn mu(&self, b: &[GRat]) -> GRat {
        let mut acc = GRat::zero();
        for (x, v) in b.iter().enumerate() {
            if !v.is_zero() {
                acc += &(&self.weight_g(x) * v);
            }
        }
        acc
    }

    pub fn b_mul(&self, a: &[GRat], b: &[GRat]) -> BElem {
        a.iter().zip(b.iter()).map(|(p, q)| p * q).collect()
    }

    pub fn b_star(&self, a: &[GRat]) -> BElem {
        a.iter().map(|p| p.conj()).collect()
    }

    /// (gamma(b))(x) = b(gamma^{-1} x); equivalently gamma(delta_x) = delta_{gamma x}.
    pub fn gamma_apply(&self, gamma: usize, b: &[GRat]) -> BElem {
        let mut out = self.zero_elem();
        for (x, v) in b.iter().enumerate() {
            if !v.is_zero() {
                out[self.act(gamma, x)] = v.clone();
            }
        }
        out
    }

    /// Gram matrix of K = GNS(B, mu) in the point basis: diag(w).
    pub fn gram_k(&self) -> GMatrix {
        let n = self.n_points();
        let mut g = GMatrix::zeros(n, n);
        for x in 0..n {
            g.set(x, x, self.weight_g(x));
        }
        g
    }

    /// The GNS representation of B on K: multiplication operators.
    pub fn pi_mu(&self, b: &[GRat]) -> GMatrix {
        let n = self.n_points();
        let mut m = GMatrix::zeros(n, n);
        for x in 0..n {
            m.set(x, x, b[x].clone());
        }
        m
    }

    /// J_mu on coordinates: Lambda_mu(b) -> Lambda_mu(b*) is entrywise
    /// conjugation since the point basis is self-adjoint. Returns the matrix
    /// part (identity); callers compose with conjugation explicitly.
    pub fn j_mu_matrix(&self) -> GMatrix {
        GMatrix::identity(self.n_points())
    }
}

/// The weight cocycle d(gamma) solved from mu(gamma(b d(gamma))) = mu(b),
/// and its pointwise positive square root when that exists over the
/// rationals.
#[derive(Clone, Debug)]
pub struct Cocycle {
    /// d[gamma][x], always defined: w(x) / w(gamma x).
    pub d: Vec<Vec<BigRational>>,
    /// Pointwise positive rational square root of d, when it exists.
    pub d_half: Option<Vec<Vec<BigRational>>>,
}

impl Cocycle {
    /// Solve the defining equation over the indicator basis. The square-root
    /// table is present only when every ratio is a rational square; its
    /// absence disables the checks that need square roots but leaves the
    /// rest of the theory available.
    pub fn solve(base: &Base) -> Self {
        let g = base.group.order();
        let n = base.n_points();
        let mut d = Vec::with_capacity(g);
        let mut d_half = Some(Vec::with_capacity(g));
        for gamma in 0..g {
            let mut row = Vec::with_capacity(n);
            let mut hrow = Vec::with_capacity(n);
            for x in 0..n {
                let ratio = &base.weight[x] / &base.weight[base.act(gamma, x)];
                if let Some(ref mut _h) = d_half {
                    match GRat::sqrt_rational(&ratio) {
                        Some(r) => hrow.push(r),
                        None => d_half = None,
                    }
                }
                row.push(ratio);
            }
            if let Some(ref mut h) = d_half {
                h.push(hrow);
            }
            d.push(row);
        }
        Cocycle { d, d_half }
    }

    /// Install a user-supplied square-root table; it must satisfy
    /// d_half(gamma)(x)^2 = d(gamma)(x) with d_half > 0.
    pub fn with_sqrt_override(
        mut self,
        table: Vec<Vec<BigRational>>,
        base: &Base,
    ) -> Result<Self, String> {
        let g = base.group.order();
        let n = base.n_points();
        if table.len() != g || table.iter().any(|r| r.len() != n) {
            return Err("sqrt_cocycle table has wrong shape".into());
        }
        for gamma in 0..g {
            for x in 0..n {
                let h = &table[gamma][x];
                if !h.is_positive() {
                    return Err(format!(
                        "sqrt_cocycle not positive at ({}, {})",
                        base.group.names[gamma], base.points[x]
                    ));
                }
                if h * h != self.d[gamma][x] {
                    return Err(format!(
                        "sqrt_cocycle squared differs from cocycle at ({}, {})",
                        base.group.names[gamma], base.points[x]
                    ));
                }
            }
        }
        self.d_half = Some(table);
        Ok(self)
    }

    pub fn d_elem(&self, _base: &Base, gamma: usize) -> BElem {
        self.d[gamma]
            .iter()
            .map(|r| GRat::from_rational(r.clone()))
            .collect()
    }

    pub fn d_half_elem(&self, base: &Base, gamma: usize) -> Option<BElem> {
        let _ = base;
        self.d_half.as_ref().map(|h| {
            h[gamma]
                .iter()
                .map(|r| GRat::from_rational(r.clone()))
                .collect()
        })
    }

    /// U_gamma on K: Lambda_mu(c) -> Lambda_mu(gamma(c d_half(gamma))), i.e.
    /// U_gamma Lambda_mu(delta_x) = d_half(gamma)(x) Lambda_mu(delta_{gamma x}).
    pub fn u_gamma(&self, base: &Base, gamma: usize) -> Option<GMatrix> {
        let h = self.d_half.as_ref()?;
        let n = base.n_points();
        let mut u = GMatrix::zeros(n, n);
        for x in 0..n {
            u.set(
                base.act(gamma, x),
                x,
                GRat::from_rational(h[gamma][x].clone()),
            );
        }
        Some(u)
    }
}

/// Verification suite for the base layer. Each function returns Ok or a
/// witness describing the first violation.

pub fn verify_mu_faithful_positive(base: &Base) -> Result<(), String> {
    // mu(b*b) = sum w(x)|b(x)|^2; faithfulness and positivity reduce to the
    // Gram diag(w) being positive definite, checked exactly.
    let g = base.gram_k();
    if !crate::exactlin::is_psd_hermitian(&g) {
        return Err("gram of mu is not positive semidefinite".into());
    }
    if g.rank() != base.n_points() {
        return Err("mu is not faithful: gram has a radical".into());
    }
    // Spot sweep over pairwise basis combinations.
    for x in 0..base.n_points() {
        for y in 0..base.n_points() {
            let mut b = base.delta(x);
            b[y] = &b[y] + &GRat::i();
            let bb = base.b_mul(&base.b_star(&b), &b);
            let v = base.mu(&bb);
            if !v.is_real() || !v.re.is_positive() {
                return Err(format!(
                    "mu(b*b) not positive for b = delta_{} + i delta_{}",
                    base.points[x], base.points[y]
                ));
            }
        }
    }
    Ok(())
}

pub fn verify_cocycle_defining(base: &Base, c: &Cocycle) -> Result<(), String> {
    for gamma in 0..base.group.order() {
        let d = c.d_elem(base, gamma);
        for x in 0..base.n_points() {
            let b = base.delta(x);
            let lhs = base.mu(&base.gamma_apply(gamma, &base.b_mul(&b, &d)));
            let rhs = base.mu(&b);
            if lhs != rhs {
                return Err(format!(
                    "mu(gamma(b d)) != mu(b) at gamma = {}, b = delta_{}",
                    base.group.names[gamma], base.points[x]
                ));
            }
        }
    }
    Ok(())
}

/// The solved cocycle is the unique solution of the defining equation and is
/// real and positive.
pub fn verify_cocycle_unique_selfadjoint(base: &Base, c: &Cocycle) -> Result<(), String> {
    for gamma in 0..base.group.order() {
        for x in 0..base.n_points() {
            // Uniqueness: the defining equation at delta_x pins the value.
            let expected = &base.weight[x] / &base.weight[base.act(gamma, x)];
            if c.d[gamma][x] != expected {
                return Err(format!(
                    "cocycle value at ({}, {}) is not the solved one",
                    base.group.names[gamma], base.points[x]
                ));
            }
            if !c.d[gamma][x].is_positive() {
                return Err(format!(
                    "cocycle not positive at ({}, {})",
                    base.group.names[gamma], base.points[x]
                ));
            }
        }
    }
    Ok(())
}

pub fn verify_cocycle_laws(base: &Base, c: &Cocycle) -> Result<(), String> {
    let g = base.group.order();
    for a in 0..g {
        for b in 0..g {
            let ab = base.group.mul(a, b);
            for x in 0..base.n_points() {
                // d(ab)(x) = d(a)(b x) d(b)(x)
                let lhs = &c.d[ab][x];
                let rhs = &c.d[a][base.act(b, x)] * &c.d[b][x];
                if *lhs != rhs {
                    return Err(format!(
                        "cocycle law fails at ({}, {}, {})",
                        base.group.names[a], base.group.names[b], base.points[x]
                    ));
                }
            }
        }
    }
    for a in 0..g {
        let ai = base.group.inv[a];
        for x in 0..base.n_points() {
            // gamma^{-1}(d(gamma^{-1})) d(gamma) = 1, i.e. d(a^{-1})(a x) d(a)(x) = 1
            let prod = &c.d[ai][base.act(a, x)] * &c.d[a][x];
            if prod != BigRational::one() {
                return Err(format!(
                    "inverse cocycle law fails at ({}, {})",
                    base.group.names[a], base.points[x]
                ));
            }
        }
    }
    Ok(())
}

/// mu(gamma^{-1}(b) c) = mu(b gamma(c d(gamma))) over all basis pairs.
pub fn verify_cocycle_transport(base: &Base, c: &Cocycle) -> Result<(), String> {
    for gamma in 0..base.group.order() {
        let gi = base.group.inv[gamma];
        let d = c.d_elem(base, gamma);
        for x in 0..base.n_points() {
            for y in 0..base.n_points() {
                let b = base.delta(x);
                let ce = base.delta(y);
                let lhs = base.mu(&base.b_mul(&base.gamma_apply(gi, &b), &ce));
                let rhs = base.mu(&base.b_mul(
                    &b,
                    &base.gamma_apply(gamma, &base.b_mul(&ce, &d)),
                ));
                if lhs != rhs {
                    return Err(format!(
                        "weight transport fails at gamma = {}, (delta_{}, delta_{})",
                        base.group.names[gamma], base.points[x], base.points[y]
                    ));
                }
            }
        }
    }
    Ok(())
}

/// The five square-root conditions: value 1 at e, real (self-adjoint),
/// squares to the cocycle, multiplicative cocycle law, positivity.
pub fn verify_sqrt_cocycle(base: &Base, c: &Cocycle) -> Result<(), String> {
    let Some(h) = &c.d_half else {
        return Err("no rational square-root cocycle".into());
    };
    let g = base.group.order();
    let e = base.group.identity;
    for x in 0..base.n_points() {
        if h[e][x] != BigRational::one() {
            return Err(format!("d_half(e) != 1 at {}", base.points[x]));
        }
    }
    for gamma in 0..g {
        for x in 0..base.n_points() {
            if !h[gamma][x].is_positive() {
                return Err(format!(
                    "d_half not positive at ({}, {})",
                    base.group.names[gamma], base.points[x]
                ));
            }
            if &h[gamma][x] * &h[gamma][x] != c.d[gamma][x] {
                return Err(format!(
                    "d_half^2 != d at ({}, {})",
                    base.group.names[gamma], base.points[x]
                ));
            }
        }
    }
    for a in 0..g {
        for b in 0..g {
            let ab = base.group.mul(a, b);
            for x in 0..base.n_points() {
                let rhs = &h[a][base.act(b, x)] * &h[b][x];
                if h[ab][x] != rhs {
                    return Err(format!(
                        "d_half cocycle law fails at ({}, {}, {})",
                        base.group.names[a], base.group.names[b], base.points[x]
                    ));
                }
            }
        }
    }
    Ok(())
}

pub fn verify_u_gamma(base: &Base, c: &Cocycle) -> Result<(), String> {
    let gk = base.gram_k();
    let sp = crate::exactlin::GramSpace::new(gk.clone()).map_err(|e| e.to_string())?;
    let g = base.group.order();
    let mut us = Vec::with_capacity(g);
    for gamma in 0..g {
        let Some(u) = c.u_gamma(base, gamma) else {
            return Err("no rational square-root cocycle".into());
        };
        let map = crate::exactlin::GramMap::new(&sp, &sp, u.clone()).map_err(|e| e.to_string())?;
        if !map.quotient_unitary(&sp, &sp) {
            return Err(format!("U_{} is not unitary on K", base.group.names[gamma]));
        }
        us.push(u);
    }
    if us[base.group.identity] != GMatrix::identity(base.n_points()) {
        return Err("U_e is not the identity".into());
    }
    for a in 0..g {
        for b in 0..g {
            if us[a].mul(&us[b]) != us[base.group.mul(a, b)] {
                return Err(format!(
                    "U_{} U_{} != U_({}{})",
                    base.group.names[a],
                    base.group.names[b],
                    base.group.names[a],
                    base.group.names[b]
                ));
            }
        }
    }
    // Covariance: U_gamma pi_mu(b) U_gamma^{-1} = pi_mu(gamma(b)).
    for gamma in 0..g {
        let u = &us[gamma];
        let uinv = &us[base.group.inv[gamma]];
        for x in 0..base.n_points() {
            let b = base.delta(x);
            let lhs = u.mul(&base.pi_mu(&b)).mul(uinv);
            let rhs = base.pi_mu(&base.gamma_apply(gamma, &b));
            if lhs != rhs {
                return Err(format!(
                    "U_gamma pi_mu(b) U_gamma* != pi_mu(gamma(b)) at gamma = {}, b = delta_{}",
                    base.group.names[gamma], base.points[x]
                ));
            }
        }
    }
    Ok(())
}

/// pi_mu is a unital *-representation and Lambda_mu intertwines products:
/// Lambda_mu(b c) = pi_mu(b) Lambda_mu(c).
pub fn verify_pi_mu_representation(base: &Base) -> Result<(), String> {
    let n = base.n_points();
    if base.pi_mu(&base.one_elem()) != GMatrix::identity(n) {
        return Err("pi_mu(1) != id".into());
    }
    for x in 0..n {
        for y in 0..n {
            let bx = base.delta(x);
            let by = base.delta(y);
            let prod = base.pi_mu(&base.b_mul(&bx, &by));
            if base.pi_mu(&bx).mul(&base.pi_mu(&by)) != prod {
                return Err(format!(
                    "pi_mu not multiplicative at (delta_{}, delta_{})",
                    base.points[x], base.points[y]
                ));
            }
            // Lambda_mu(bc) = pi_mu(b) Lambda_mu(c): coordinates of bc vs
            // pi_mu(b) applied to coordinates of c.
            let lam = base.b_mul(&bx, &by);
            if base.pi_mu(&bx).mul_vec(&by) != lam {
                return Err("Lambda_mu(bc) != pi_mu(b) Lambda_mu(c)".into());
            }
        }
        // Star compatibility with the Gram adjoint: for diagonal real basis
        // this is pi_mu(b)* = pi_mu(b*) entrywise.
        let bx = base.delta(x);
        if base.pi_mu(&base.b_star(&bx)) != base.pi_mu(&bx).adjoint() {
            return Err("pi_mu(b*) != pi_mu(b)^H".into());
        }
    }
    Ok(())
}

/// J_mu is an exact anti-unitary for the K form: <J xi | J eta> = conj <xi | eta>.
pub fn verify_j_mu_antiunitary(base: &Base) -> Result<(), String> {
    let g = base.gram_k();
    let n = base.n_points();
    // J acts as conjugation in coordinates; check on a spanning family with
    // complex entries.
    for x in 0..n {
        for y in 0..n {
            let mut xi = base.delta(x);
            xi[y] = &xi[y] + &GRat::i();
            let eta = base.delta(y);
            let jxi: Vec<GRat> = xi.iter().map(|v| v.conj()).collect();
            let jeta: Vec<GRat> = eta.iter().map(|v| v.conj()).collect();
            let inner = |u: &[GRat], v: &[GRat]| {
                let gv = g.mul_vec(v);
                let mut acc = GRat::zero();
                for (a, b) in u.iter().zip(gv.iter()) {
                    acc += &(&a.conj() * b);
                }
                acc
            };
            if inner(&jxi, &jeta) != inner(&xi, &eta).conj() {
                return Err(format!(
                    "J_mu fails anti-unitarity at ({}, {})",
                    base.points[x], base.points[y]
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
pub(crate) mod tests_support {
    use super::*;
    use num_bigint::BigInt;

    pub fn instance_t_base() -> Base {
        Base::build(
            vec!["1".into(), "2".into()],
            Group::trivial(),
            vec![vec![0, 1]],
            vec![BigRational::one(), BigRational::one()],
        )
        .unwrap()
    }

    pub fn instance_c_base() -> Base {
        // X = {1,2,3}, Z/2 swapping 1 and 2, weights (1, 4, 1).
        let group = Group::build(
            vec!["e".into(), "g".into()],
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        Base::build(
            vec!["1".into(), "2".into(), "3".into()],
            group,
            vec![vec![0, 1, 2], vec![1, 0, 2]],
            vec![
                BigRational::one(),
                BigRational::from_integer(BigInt::from(4)),
                BigRational::one(),
            ],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::tests_support::{instance_c_base, instance_t_base};
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn builds_and_mu() {
        let b = instance_c_base();
        // mu(delta_1 + delta_2) = 1 + 4 = 5
        let mut f = b.delta(0);
        f[1] = GRat::one();
        assert_eq!(b.mu(&f), GRat::from_int(5));
        assert_eq!(b.mu(&b.zero_elem()), GRat::zero());
        verify_mu_faithful_positive(&b).unwrap();
    }

    #[test]
    fn rejects_bad_action() {
        let group = Group::trivial();
        // e.1 = 2 is not an action.
        let r = Base::build(
            vec!["1".into(), "2".into()],
            group,
            vec![vec![1, 0]],
            vec![BigRational::one(), BigRational::one()],
        );
        let errs = r.unwrap_err();
        assert!(errs.iter().any(|e| e.contains("not an action")));
    }

    #[test]
    fn cocycle_instance_c() {
        let b = instance_c_base();
        let c = Cocycle::solve(&b);
        // d(g) = (1/4, 4, 1)
        let quarter = BigRational::new(BigInt::from(1), BigInt::from(4));
        assert_eq!(c.d[1][0], quarter);
        assert_eq!(c.d[1][1], BigRational::from_integer(BigInt::from(4)));
        assert_eq!(c.d[1][2], BigRational::one());
        verify_cocycle_defining(&b, &c).unwrap();
        verify_cocycle_unique_selfadjoint(&b, &c).unwrap();
        verify_cocycle_laws(&b, &c).unwrap();
        verify_cocycle_transport(&b, &c).unwrap();
        verify_sqrt_cocycle(&b, &c).unwrap();
    }

    #[test]
    fn cocycle_sqrt_obstruction() {
        // Weights (1, 2, 1) with the same swap action: ratio 1/2 is not a
        // rational square, so d_half must be absent.
        let group = Group::build(
            vec!["e".into(), "g".into()],
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        let b = Base::build(
            vec!["1".into(), "2".into(), "3".into()],
            group,
            vec![vec![0, 1, 2], vec![1, 0, 2]],
            vec![
                BigRational::one(),
                BigRational::from_integer(BigInt::from(2)),
                BigRational::one(),
            ],
        )
        .unwrap();
        let c = Cocycle::solve(&b);
        assert!(c.d_half.is_none());
        assert!(verify_sqrt_cocycle(&b, &c).is_err());
    }

    #[test]
    fn u_gamma_instance_c() {
        let b = instance_c_base();
        let c = Cocycle::solve(&b);
        let u = c.u_gamma(&b, 1).unwrap();
        // U_g Lambda_mu(delta_1) = d_half(g)(1) Lambda_mu(delta_2) = (1/2) Lambda_mu(delta_2)
        let col = u.column(0);
        assert_eq!(col[1], GRat::from_ratio(1, 2));
        assert!(col[0].is_zero() && col[2].is_zero());
        // U_g^2 = U_e
        assert_eq!(u.mul(&u), GMatrix::identity(3));
        verify_u_gamma(&b, &c).unwrap();
    }

    #[test]
    fn trivial_base_trivial_cocycle() {
        let b = instance_t_base();
        let c = Cocycle::solve(&b);
        assert_eq!(c.d[0], vec![BigRational::one(), BigRational::one()]);
        assert!(c.d_half.is_some());
        verify_u_gamma(&b, &c).unwrap();
        verify_pi_mu_representation(&b).unwrap();
        verify_j_mu_antiunitary(&b).unwrap();
    }

    #[test]
    fn representation_and_j_on_c() {
        let b = instance_c_base();
        verify_pi_mu_representation(&b).unwrap();
        verify_j_mu_antiunitary(&b).unwrap();
    }
}
