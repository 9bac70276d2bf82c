//! Relative tensor squares of the total GNS space and the two fundamental
//! form-preserving bijections between them.
//!
//! The squares carry sesquilinear forms obtained by pairing one leg into the
//! base and acting with the paired value on the other leg. The bijection `w`
//! extends the Galois map of the coproduct, `v` its right-handed companion.
//! Checks cover the pentagon identity on triple squares, the leg
//! intertwining relations, slice maps against their closed forms, the two
//! operator coproducts, and regularity of the slice spans.

use crate::algebroid::balanced::{BalancedTensor, ModTag};
use crate::algebroid::tensor::t2_entries;
use crate::base::Cocycle;
use crate::dual::Dual;
use crate::exactlin::{span_equal, GMatrix, GRat, GramMap, GramSpace};
use crate::gns::{BaseRep, DHalfMaps, GnsData};

/// The three ways the total space is paired with itself, named by the base
/// actions balanced over the middle leg.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorKind {
    BetaAlpha,
    AlphaBetaHat,
    AlphaHatBeta,
}

pub const TENSOR_KINDS: [TensorKind; 3] = [
    TensorKind::BetaAlpha,
    TensorKind::AlphaBetaHat,
    TensorKind::AlphaHatBeta,
];

impl TensorKind {
    /// Base actions on the left and right leg.
    pub fn legs(self) -> (BaseRep, BaseRep) {
        match self {
            TensorKind::BetaAlpha => (BaseRep::Beta, BaseRep::Alpha),
            TensorKind::AlphaBetaHat => (BaseRep::Alpha, BaseRep::BetaHat),
            TensorKind::AlphaHatBeta => (BaseRep::AlphaHat, BaseRep::Beta),
        }
    }

    /// Module structures of the balanced algebraic tensor with the same
    /// quotient dimension.
    pub fn balancing(self) -> (ModTag, ModTag) {
        match self {
            TensorKind::BetaAlpha => (ModTag::SLeft, ModTag::RLeft),
            TensorKind::AlphaBetaHat => (ModTag::RLeft, ModTag::RRight),
            TensorKind::AlphaHatBeta => (ModTag::SRight, ModTag::SLeft),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            TensorKind::BetaAlpha => "beta-alpha",
            TensorKind::AlphaBetaHat => "alpha-betahat",
            TensorKind::AlphaHatBeta => "alphahat-beta",
        }
    }
}

/// Base-valued pairing of two vectors under the given action family,
/// conjugate-linear in `x`.
pub fn base_pairing(gd: &GnsData, which: BaseRep, x: &[GRat], y: &[GRat]) -> Vec<GRat> {
    let a = &gd.hd.algebra;
    let b = &a.base;
    let xs = a.star(x);
    match which {
        BaseRep::Alpha => gd.ig.phi_of(b, &a.mul(y, &gd.ig.theta.mul_vec(&xs))),
        BaseRep::Beta => gd.ig.psi_of(b, &a.mul(y, &gd.ig.theta.mul_vec(&xs))),
        BaseRep::AlphaHat => gd.ig.psi_of(b, &a.mul(&xs, y)),
        BaseRep::BetaHat => gd.ig.phi_of(b, &a.mul(&xs, y)),
    }
}

fn is_zero_vec(v: &[GRat]) -> bool {
    v.iter().all(|c| c.is_zero())
}

/// Add c * (u (x) v) into column `col` of an n^2-row matrix.
fn add_tensor2(m: &mut GMatrix, n: usize, col: usize, u: &[GRat], v: &[GRat], c: &GRat) {
    for (k, a) in u.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let ca = c * a;
        for (l, b) in v.iter().enumerate() {
            if !b.is_zero() {
                m.add_at(k * n + l, col, &(&ca * b));
            }
        }
    }
}

/// Add c * (u (x) v (x) w) into column `col` of an n^3-row matrix.
fn add_tensor3(
    m: &mut GMatrix,
    n: usize,
    col: usize,
    u: &[GRat],
    v: &[GRat],
    w: &[GRat],
    c: &GRat,
) {
    let nn = n * n;
    for (k, a) in u.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let ca = c * a;
        for (l, b) in v.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let cab = &ca * b;
            for (p, d) in w.iter().enumerate() {
                if !d.is_zero() {
                    m.add_at(k * nn + l * n + p, col, &(&cab * d));
                }
            }
        }
    }
}

/// Insertion of `xi` into the left leg: column j is xi (x) e_j.
pub fn leg_left(n: usize, xi: &[GRat]) -> GMatrix {
    let mut m = GMatrix::zeros(n * n, n);
    for (k, c) in xi.iter().enumerate() {
        if !c.is_zero() {
            for j in 0..n {
                m.set(k * n + j, j, c.clone());
            }
        }
    }
    m
}

/// Insertion of `eta` into the right leg: column i is e_i (x) eta.
pub fn leg_right(n: usize, eta: &[GRat]) -> GMatrix {
    let mut m = GMatrix::zeros(n * n, n);
    for (l, c) in eta.iter().enumerate() {
        if !c.is_zero() {
            for i in 0..n {
                m.set(i * n + l, i, c.clone());
            }
        }
    }
    m
}

/// Lift an operator on a square to legs one and three of a triple.
fn leg13(n: usize, m: &GMatrix) -> GMatrix {
    let nn = n * n;
    let mut out = GMatrix::zeros(nn * n, nn * n);
    for col in 0..nn {
        let (i, k) = (col / n, col % n);
        for row in 0..nn {
            let e = m.get(row, col);
            if e.is_zero() {
                continue;
            }
            let (i2, k2) = (row / n, row % n);
            for j in 0..n {
                out.set(i2 * nn + j * n + k2, i * nn + j * n + k, e.clone());
            }
        }
    }
    out
}

/// One relative tensor square: the ambient coordinates of A (x) A together
/// with the induced positive semidefinite form.
pub struct RelTensor {
    pub kind: TensorKind,
    pub space: GramSpace,
}

impl RelTensor {
    pub fn build(gd: &GnsData, kind: TensorKind) -> Result<RelTensor, String> {
        let a = &gd.hd.algebra;
        let n = a.dim();
        let gh = &gd.spaces.h.gram;
        let (lk, rk) = kind.legs();
        let mut g = GMatrix::zeros(n * n, n * n);
        // Fill through the right leg: pair the right vectors into the base
        // and act with the value on the left leg.
        for j in 0..n {
            for j2 in 0..n {
                let b = base_pairing(gd, rk, &a.basis_vec(j), &a.basis_vec(j2));
                if is_zero_vec(&b) {
                    continue;
                }
                let m = gh.mul(&gd.rep(lk, &b));
                for i in 0..n {
                    for i2 in 0..n {
                        let e = m.get(i, i2);
                        if !e.is_zero() {
                            g.set(i * n + j, i2 * n + j2, e.clone());
                        }
                    }
                }
            }
        }
        // The same form routed through the left leg must agree.
        for i in 0..n {
            for i2 in 0..n {
                let b = base_pairing(gd, lk, &a.basis_vec(i), &a.basis_vec(i2));
                let m = gh.mul(&gd.rep(rk, &b));
                for j in 0..n {
                    for j2 in 0..n {
                        if g.get(i * n + j, i2 * n + j2) != m.get(j, j2) {
                            return Err(format!(
                                "the two leg routes of the {} form disagree",
                                kind.label()
                            ));
                        }
                    }
                }
            }
        }
        let space = GramSpace::new(g).map_err(|e| format!("{} form: {e}", kind.label()))?;
        Ok(RelTensor { kind, space })
    }
}

pub struct FundamentalData<'a> {
    pub gd: &'a GnsData<'a>,
    pub dh: DHalfMaps,
    pub beta_alpha: RelTensor,
    pub alpha_betahat: RelTensor,
    pub alphahat_beta: RelTensor,
    /// Extension of the Galois map, beta-alpha to alpha-betahat.
    pub w: GMatrix,
    pub w_star: GMatrix,
    /// Right-handed companion, alphahat-beta to beta-alpha.
    pub v: GMatrix,
    pub v_star: GMatrix,
    h_gram_inv: GMatrix,
}

impl<'a> FundamentalData<'a> {
    pub fn new(gd: &'a GnsData<'a>, coc: &Cocycle) -> Result<Self, String> {
        let dh = gd
            .d_half_maps(coc)
            .ok_or("the weight cocycle has no positive rational square root")?;
        let hd = gd.hd;
        let a = &hd.algebra;
        let n = a.dim();
        let nn = n * n;
        let h_gram_inv = gd
            .spaces
            .h
            .gram
            .inverse()
            .ok_or("the total form is degenerate")?;
        let beta_alpha = RelTensor::build(gd, TensorKind::BetaAlpha)?;
        let alpha_betahat = RelTensor::build(gd, TensorKind::AlphaBetaHat)?;
        let alphahat_beta = RelTensor::build(gd, TensorKind::AlphaHatBeta)?;

        // x (x) y -> sum y_(1) x (x) half-twisted y_(2), and the inverse
        // undoes the first leg through the inverse antipode.
        let w_left = dh.d_bar_half.mul(&hd.antipode_inv);
        let mut w_star = GMatrix::zeros(nn, nn);
        let mut w = GMatrix::zeros(nn, nn);
        for j in 0..n {
            let entries = t2_entries(n, &hd.delta_of(&a.basis_vec(j)));
            for i in 0..n {
                let ei = a.basis_vec(i);
                let col = i * n + j;
                for (p, q, c) in &entries {
                    let u = a.mul(&a.basis_vec(*p), &ei);
                    add_tensor2(&mut w_star, n, col, &u, &dh.d_half.column(*q), c);
                    let ub = a.mul(&w_left.column(*p), &ei);
                    add_tensor2(&mut w, n, col, &ub, &a.basis_vec(*q), c);
                }
            }
        }

        // x (x) y -> sum bar-half-twisted x_(1) (x) x_(2) y, with the
        // inverse undoing the second leg through the antipode.
        let v_right = hd.antipode.mul(&dh.d_bar_half_inv);
        let mut v = GMatrix::zeros(nn, nn);
        let mut v_star = GMatrix::zeros(nn, nn);
        for i in 0..n {
            let entries = t2_entries(n, &hd.delta_of(&a.basis_vec(i)));
            for j in 0..n {
                let ej = a.basis_vec(j);
                let col = i * n + j;
                for (p, q, c) in &entries {
                    let u = a.mul(&a.basis_vec(*q), &ej);
                    add_tensor2(&mut v, n, col, &dh.d_bar_half.column(*p), &u, c);
                    let u2 = a.mul(&v_right.column(*q), &ej);
                    add_tensor2(&mut v_star, n, col, &a.basis_vec(*p), &u2, c);
                }
            }
        }

        Ok(FundamentalData {
            gd,
            dh,
            beta_alpha,
            alpha_betahat,
            alphahat_beta,
            w,
            w_star,
            v,
            v_star,
            h_gram_inv,
        })
    }

    pub fn tensor(&self, kind: TensorKind) -> &RelTensor {
        match kind {
            TensorKind::BetaAlpha => &self.beta_alpha,
            TensorKind::AlphaBetaHat => &self.alpha_betahat,
            TensorKind::AlphaHatBeta => &self.alphahat_beta,
        }
    }

    /// Form adjoint of a map from the total space into a square.
    pub fn adjoint_into(&self, sp: &RelTensor, m: &GMatrix) -> GMatrix {
        self.h_gram_inv.mul(&m.adjoint()).mul(&sp.space.gram)
    }

    /// Left regular representation on the total space.
    pub fn pi_nu(&self, x: &[GRat]) -> GMatrix {
        self.gd.hd.algebra.left_mult_matrix(x)
    }

    /// Right convolution operator of the dual element with preimage `x`.
    pub fn rho_hat(&self, dual: &Dual, x: &[GRat]) -> Result<GMatrix, String> {
        let a = &self.gd.hd.algebra;
        let n = a.dim();
        let cols: Vec<Vec<GRat>> = (0..n)
            .map(|j| dual.convolve_right(&a.basis_vec(j), x))
            .collect::<Result<_, _>>()?;
        Ok(GMatrix::from_columns(n, &cols))
    }

    fn classes_agree(sp: &RelTensor, x: &GMatrix, y: &GMatrix) -> bool {
        sp.space.gram.mul(&x.sub(y)).is_zero()
    }

    /// The three forms are consistent: quotient dimensions match the
    /// balanced algebraic tensors, the beta-alpha form is the half-twisted
    /// pullback of the transported second-leg form, and leg insertions have
    /// the closed-form adjoints.
    pub fn check_tensors(&self) -> Result<(), String> {
        let gd = self.gd;
        let a = &gd.hd.algebra;
        let b = &a.base;
        let n = a.dim();
        let nn = n * n;
        for kind in TENSOR_KINDS {
            let (lt, rt) = kind.balancing();
            let bt = BalancedTensor::build(a, lt, rt);
            let sp = self.tensor(kind);
            if sp.space.qdim != bt.dim() {
                return Err(format!(
                    "{}: quotient dimension {} differs from the balanced tensor dimension {}",
                    kind.label(),
                    sp.space.qdim,
                    bt.dim()
                ));
            }
        }
        // Pull the beta-alpha form back along the half twist of the second
        // leg; the result pairs the second legs through the transported
        // left partial integral under s.
        let twist = GMatrix::identity(n).kron(&self.dh.d_half);
        let pulled = twist
            .adjoint()
            .mul(&self.beta_alpha.space.gram)
            .mul(&twist);
        let gh = &gd.spaces.h.gram;
        let mut want = GMatrix::zeros(nn, nn);
        for j in 0..n {
            for j2 in 0..n {
                let p = gd.ig.phi_of(
                    b,
                    &a.mul(&a.star(&a.basis_vec(j)), &a.basis_vec(j2)),
                );
                if is_zero_vec(&p) {
                    continue;
                }
                if a.grading[j].0 != a.grading[j2].0 {
                    return Err(
                        "the left partial integral does not vanish off matched degrees".into(),
                    );
                }
                let tb = b.gamma_apply(a.grading[j].0, &p);
                let m = gh.mul(&gd.rep(BaseRep::Beta, &tb));
                for i in 0..n {
                    for i2 in 0..n {
                        let e = m.get(i, i2);
                        if !e.is_zero() {
                            want.set(i * n + j, i2 * n + j2, e.clone());
                        }
                    }
                }
            }
        }
        if pulled != want {
            return Err(
                "the half-twisted second leg does not pull the beta-alpha form back to the transported base form"
                    .into(),
            );
        }
        // Leg insertions have closed-form adjoints: pairing the inserted
        // vector against the free leg and acting on the other side.
        for kind in TENSOR_KINDS {
            let sp = self.tensor(kind);
            let (lk, rk) = kind.legs();
            for t in 0..n {
                let xi = a.basis_vec(t);
                let lam = self.adjoint_into(sp, &leg_left(n, &xi));
                let mut want_l = GMatrix::zeros(n, nn);
                for i in 0..n {
                    let p = base_pairing(gd, lk, &xi, &a.basis_vec(i));
                    if is_zero_vec(&p) {
                        continue;
                    }
                    let m = gd.rep(rk, &p);
                    for j in 0..n {
                        for k in 0..n {
                            let e = m.get(k, j);
                            if !e.is_zero() {
                                want_l.set(k, i * n + j, e.clone());
                            }
                        }
                    }
                }
                if lam != want_l {
                    return Err(format!(
                        "left insertion adjoint for {} fails at {}",
                        kind.label(),
                        a.basis[t]
                    ));
                }
                let rho = self.adjoint_into(sp, &leg_right(n, &xi));
                let mut want_r = GMatrix::zeros(n, nn);
                for j in 0..n {
                    let p = base_pairing(gd, rk, &xi, &a.basis_vec(j));
                    if is_zero_vec(&p) {
                        continue;
                    }
                    let m = gd.rep(lk, &p);
                    for i in 0..n {
                        for k in 0..n {
                            let e = m.get(k, i);
                            if !e.is_zero() {
                                want_r.set(k, i * n + j, e.clone());
                            }
                        }
                    }
                }
                if rho != want_r {
                    return Err(format!(
                        "right insertion adjoint for {} fails at {}",
                        kind.label(),
                        a.basis[t]
                    ));
                }
            }
        }
        Ok(())
    }

    /// The two bijections are quotient unitaries, mutual form adjoints and
    /// class inverses, and agree with their alternative one-leg-twisted
    /// forms.
    pub fn check_w_v(&self) -> Result<(), String> {
        let hd = self.gd.hd;
        let a = &hd.algebra;
        let n = a.dim();
        let nn = n * n;
        if self.dh.d_bar_half.mul(&hd.antipode_inv) != hd.antipode_inv.mul(&self.dh.d_half_inv) {
            return Err("the antipode does not exchange the two half twists".into());
        }
        if hd.antipode.mul(&self.dh.d_bar_half_inv) != self.dh.d_half.mul(&hd.antipode) {
            return Err("the antipode does not exchange the two inverse half twists".into());
        }
        // Alternative forms that twist the other leg give the same classes.
        let mut w_star_alt = GMatrix::zeros(nn, nn);
        for j in 0..n {
            let entries = t2_entries(n, &hd.delta_of(&a.basis_vec(j)));
            for i in 0..n {
                let ei = a.basis_vec(i);
                for (p, q, c) in &entries {
                    let u = a.mul(&self.dh.d_bar_half.column(*p), &ei);
                    add_tensor2(&mut w_star_alt, n, i * n + j, &u, &a.basis_vec(*q), c);
                }
            }
        }
        if !Self::classes_agree(&self.beta_alpha, &self.w_star, &w_star_alt) {
            return Err("the two forms of the extended Galois map disagree on classes".into());
        }
        let mut v_alt = GMatrix::zeros(nn, nn);
        for i in 0..n {
            let entries = t2_entries(n, &hd.delta_of(&a.basis_vec(i)));
            for j in 0..n {
                let ej = a.basis_vec(j);
                for (p, q, c) in &entries {
                    let u = a.mul(&self.dh.d_half.column(*q), &ej);
                    add_tensor2(&mut v_alt, n, i * n + j, &a.basis_vec(*p), &u, c);
                }
            }
        }
        if !Self::classes_agree(&self.beta_alpha, &self.v, &v_alt) {
            return Err("the two forms of the companion map disagree on classes".into());
        }
        // Well defined on classes, form preserving, quotient unitary.
        let cases: [(&str, &GMatrix, &RelTensor, &RelTensor); 4] = [
            ("forward map", &self.w, &self.beta_alpha, &self.alpha_betahat),
            ("backward map", &self.w_star, &self.alpha_betahat, &self.beta_alpha),
            ("companion map", &self.v, &self.alphahat_beta, &self.beta_alpha),
            (
                "companion backward map",
                &self.v_star,
                &self.beta_alpha,
                &self.alphahat_beta,
            ),
        ];
        for (name, m, dom, cod) in cases {
            let gm = GramMap::new(&dom.space, &cod.space, (*m).clone())
                .map_err(|e| format!("{name}: {e}"))?;
            if !gm.preserves_form(&dom.space, &cod.space) {
                return Err(format!("{name} does not preserve the forms"));
            }
            if !gm.quotient_unitary(&dom.space, &cod.space) {
                return Err(format!("{name} is not a quotient unitary"));
            }
        }
        // Mutual form adjoints and two-sided class inverses.
        if self.w.adjoint().mul(&self.alpha_betahat.space.gram)
            != self.beta_alpha.space.gram.mul(&self.w_star)
        {
            return Err("the backward map is not the form adjoint of the forward map".into());
        }
        if self.v.adjoint().mul(&self.beta_alpha.space.gram)
            != self.alphahat_beta.space.gram.mul(&self.v_star)
        {
            return Err("the companion backward map is not the form adjoint".into());
        }
        let id = GMatrix::identity(nn);
        if !Self::classes_agree(&self.alpha_betahat, &self.w.mul(&self.w_star), &id)
            || !Self::classes_agree(&self.beta_alpha, &self.w_star.mul(&self.w), &id)
        {
            return Err("the forward and backward maps are not class inverses".into());
        }
        if !Self::classes_agree(&self.beta_alpha, &self.v.mul(&self.v_star), &id)
            || !Self::classes_agree(&self.alphahat_beta, &self.v_star.mul(&self.v), &id)
        {
            return Err("the companion maps are not class inverses".into());
        }
        Ok(())
    }

    /// Form of a triple with squares of kind `k12` on legs one and two and
    /// `k23` on legs two and three.
    fn chain_gram(&self, k12: TensorKind, k23: TensorKind) -> GMatrix {
        let gd = self.gd;
        let a = &gd.hd.algebra;
        let n = a.dim();
        let nn = n * n;
        let gh = &gd.spaces.h.gram;
        let (p1, m1) = k12.legs();
        let (m2, p2) = k23.legs();
        let mut g = GMatrix::zeros(nn * n, nn * n);
        for i in 0..n {
            for i2 in 0..n {
                let b1 = base_pairing(gd, p1, &a.basis_vec(i), &a.basis_vec(i2));
                if is_zero_vec(&b1) {
                    continue;
                }
                let left = gh.mul(&gd.rep(m1, &b1));
                for k in 0..n {
                    for k2 in 0..n {
                        let b2 = base_pairing(gd, p2, &a.basis_vec(k), &a.basis_vec(k2));
                        if is_zero_vec(&b2) {
                            continue;
                        }
                        let m = left.mul(&gd.rep(m2, &b2));
                        for j in 0..n {
                            for j2 in 0..n {
                                let e = m.get(j, j2);
                                if !e.is_zero() {
                                    g.set(i * nn + j * n + k, i2 * nn + j2 * n + k2, e.clone());
                                }
                            }
                        }
                    }
                }
            }
        }
        g
    }

    /// Form of the triple whose first leg is balanced against the right leg
    /// of an inner alpha-betahat square.
    fn outer_left_gram(&self) -> GMatrix {
        let gd = self.gd;
        let a = &gd.hd.algebra;
        let n = a.dim();
        let nn = n * n;
        let id = GMatrix::identity(n);
        let mut g = GMatrix::zeros(nn * n, nn * n);
        for i in 0..n {
            for i2 in 0..n {
                let b = base_pairing(gd, BaseRep::Beta, &a.basis_vec(i), &a.basis_vec(i2));
                if is_zero_vec(&b) {
                    continue;
                }
                let m = self
                    .alpha_betahat
                    .space
                    .gram
                    .mul(&id.kron(&gd.rep(BaseRep::Alpha, &b)));
                for jk in 0..nn {
                    for jk2 in 0..nn {
                        let e = m.get(jk, jk2);
                        if !e.is_zero() {
                            g.set(i * nn + jk, i2 * nn + jk2, e.clone());
                        }
                    }
                }
            }
        }
        g
    }

    /// Form of the triple whose last leg is balanced against the left leg
    /// of an inner beta-alpha square.
    fn outer_right_gram(&self) -> GMatrix {
        let gd = self.gd;
        let a = &gd.hd.algebra;
        let n = a.dim();
        let nn = n * n;
        let id = GMatrix::identity(n);
        let mut g = GMatrix::zeros(nn * n, nn * n);
        for k in 0..n {
            for k2 in 0..n {
                let b = base_pairing(gd, BaseRep::BetaHat, &a.basis_vec(k), &a.basis_vec(k2));
                if is_zero_vec(&b) {
                    continue;
                }
                let m = self
                    .beta_alpha
                    .space
                    .gram
                    .mul(&gd.rep(BaseRep::Alpha, &b).kron(&id));
                for ij in 0..nn {
                    for ij2 in 0..nn {
                        let e = m.get(ij, ij2);
                        if !e.is_zero() {
                            g.set(ij * n + k, ij2 * n + k2, e.clone());
                        }
                    }
                }
            }
        }
        g
    }

    /// Closed form of the adjoint pentagon composite: x (x) y (x) z maps to
    /// the triple-legged product with half twists on the middle and last
    /// slots.
    fn pentagon_closed_form(&self) -> GMatrix {
        let hd = self.gd.hd;
        let a = &hd.algebra;
        let n = a.dim();
        let nn = n * n;
        let mut out = GMatrix::zeros(nn * n, nn * n);
        for k in 0..n {
            for (p, q, cz) in t2_entries(n, &hd.delta_of(&a.basis_vec(k))) {
                let dq = self.dh.d_half.column(q);
                for (p1, p2, cp) in t2_entries(n, &hd.delta_of(&a.basis_vec(p))) {
                    let czp = &cz * &cp;
                    for j in 0..n {
                        for (u, v2, cy) in t2_entries(n, &hd.delta_of(&a.basis_vec(j))) {
                            let c = &czp * &cy;
                            let left = a.mul(&a.basis_vec(p1), &a.basis_vec(u));
                            let mid = self
                                .dh
                                .d_half
                                .mul_vec(&a.mul(&a.basis_vec(p2), &a.basis_vec(v2)));
                            for i in 0..n {
                                let first = a.mul(&left, &a.basis_vec(i));
                                add_tensor3(
                                    &mut out,
                                    n,
                                    i * nn + j * n + k,
                                    &first,
                                    &mid,
                                    &dq,
                                    &c,
                                );
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn check_pentagon(&self) -> Result<(), String> {
        self.check_pentagon_with(&self.w, &self.w_star)
    }

    /// Pentagon identity on the triple squares: the five vertex forms are
    /// preserved along the edges, the two composites agree on classes, and
    /// both adjoint composites match the closed form.
    pub fn check_pentagon_with(&self, w: &GMatrix, w_star: &GMatrix) -> Result<(), String> {
        let n = self.gd.hd.algebra.dim();
        let id = GMatrix::identity(n);
        let w12 = w.kron(&id);
        let w23 = id.kron(w);
        let w13 = leg13(n, w);
        let w12s = w_star.kron(&id);
        let w23s = id.kron(w_star);
        let w13s = leg13(n, w_star);
        let g0 = self.chain_gram(TensorKind::BetaAlpha, TensorKind::BetaAlpha);
        let g1 = self.chain_gram(TensorKind::AlphaBetaHat, TensorKind::BetaAlpha);
        let g2 = self.chain_gram(TensorKind::AlphaBetaHat, TensorKind::AlphaBetaHat);
        let g3 = self.outer_left_gram();
        let g4 = self.outer_right_gram();
        let edges: [(&str, &GMatrix, &GMatrix, &GMatrix); 5] = [
            ("first pair from the start vertex", &w12, &g0, &g1),
            ("second pair into the end vertex", &w23, &g1, &g2),
            ("second pair from the start vertex", &w23, &g0, &g3),
            ("outer pair", &w13, &g3, &g4),
            ("first pair into the end vertex", &w12, &g4, &g2),
        ];
        for (name, m, gd_, gc) in edges {
            if m.adjoint().mul(gc).mul(m) != *gd_ {
                return Err(format!(
                    "pentagon edge {name} does not preserve the vertex forms"
                ));
            }
        }
        let top = w23.mul(&w12);
        let bottom = w12.mul(&w13).mul(&w23);
        if !g2.mul(&top.sub(&bottom)).is_zero() {
            return Err("the two pentagon composites disagree on classes".into());
        }
        if top.adjoint().mul(&g2) != g0.mul(&w12s.mul(&w23s)) {
            return Err("the pentagon composites are not form adjoints of each other".into());
        }
        let closed = self.pentagon_closed_form();
        if !g0.mul(&w12s.mul(&w23s).sub(&closed)).is_zero() {
            return Err("the adjoint of the short composite differs from the closed form".into());
        }
        if !g0
            .mul(&w23s.mul(&w13s).mul(&w12s).sub(&closed))
            .is_zero()
        {
            return Err("the adjoint of the long composite differs from the closed form".into());
        }
        Ok(())
    }

    /// The six leg intertwining relations with the four base actions, and
    /// the six span identities of composites with insertion operators.
    pub fn check_intertwining(&self) -> Result<(), String> {
        let gd = self.gd;
        let a = &gd.hd.algebra;
        let b = &a.base;
        let n = a.dim();
        let id = GMatrix::identity(n);
        let g = &self.alpha_betahat.space.gram;
        for z in 0..b.n_points() {
            let bz = b.delta(z);
            let al = gd.rep(BaseRep::Alpha, &bz);
            let be = gd.rep(BaseRep::Beta, &bz);
            let ah = gd.rep(BaseRep::AlphaHat, &bz);
            let bh = gd.rep(BaseRep::BetaHat, &bz);
            let rels: [(&str, GMatrix, GMatrix); 6] = [
                ("second-leg betahat to first-leg beta", id.kron(&bh), be.kron(&id)),
                ("first-leg alphahat", ah.kron(&id), ah.kron(&id)),
                ("first-leg betahat", bh.kron(&id), bh.kron(&id)),
                ("first-leg alpha to second-leg alpha", al.kron(&id), id.kron(&al)),
                ("second-leg beta", id.kron(&be), id.kron(&be)),
                ("second-leg alphahat", id.kron(&ah), id.kron(&ah)),
            ];
            for (name, dom_op, cod_op) in rels {
                let lhs = self.w.mul(&dom_op);
                let rhs = cod_op.mul(&self.w);
                if !g.mul(&lhs.sub(&rhs)).is_zero() {
                    return Err(format!(
                        "intertwining relation {name} fails at point {z}"
                    ));
                }
            }
        }
        // Span identities: composing with insertions of transporter columns
        // moves the map across the legs.
        let lam = &gd.lam;
        let project = |m: &GMatrix| g.mul(m).vectorize();
        let fams: [(&str, &Vec<GMatrix>, bool, &Vec<GMatrix>, bool); 6] = [
            ("one against the right transporters", &lam.phi, true, &lam.psi_dag, false),
            ("two against the left coisometries", &lam.psi, false, &lam.psi, false),
            ("two against the right coisometries", &lam.phi, false, &lam.phi, false),
            ("two against the right transporters", &lam.phi_dag, false, &lam.phi_dag, true),
            ("one against the left transporters", &lam.psi_dag, true, &lam.psi_dag, true),
            ("one against the left coisometries", &lam.psi, true, &lam.psi, true),
        ];
        for (name, fam_d, left_d, fam_c, left_c) in fams {
            let mut lhs = Vec::new();
            let mut rhs = Vec::new();
            for i in 0..n {
                let ei = a.basis_vec(i);
                let ins_d = if left_d { leg_left(n, &ei) } else { leg_right(n, &ei) };
                let ins_c = if left_c { leg_left(n, &ei) } else { leg_right(n, &ei) };
                for j in 0..n {
                    lhs.push(project(&self.w.mul(&ins_d).mul(&fam_d[j])));
                    rhs.push(project(&ins_c.mul(&fam_c[j])));
                }
            }
            if !span_equal(&lhs, &rhs) {
                return Err(format!("insertion span identity {name} fails"));
            }
        }
        Ok(())
    }

    /// Right slice of the backward map against the two vectors: the left
    /// leg is paired off and the result acts on the free leg.
    pub fn slice_w_right(&self, y: &[GRat], y2: &[GRat]) -> GMatrix {
        let n = self.gd.hd.algebra.dim();
        self.adjoint_into(&self.beta_alpha, &leg_right(n, y))
            .mul(&self.w_star)
            .mul(&leg_right(n, y2))
    }

    pub fn slice_w_left(&self, x: &[GRat], x2: &[GRat]) -> GMatrix {
        let n = self.gd.hd.algebra.dim();
        self.adjoint_into(&self.beta_alpha, &leg_left(n, x))
            .mul(&self.w_star)
            .mul(&leg_left(n, x2))
    }

    pub fn slice_v_left(&self, x: &[GRat], x2: &[GRat]) -> GMatrix {
        let n = self.gd.hd.algebra.dim();
        self.adjoint_into(&self.beta_alpha, &leg_left(n, x))
            .mul(&self.v)
            .mul(&leg_left(n, x2))
    }

    pub fn slice_v_right(&self, y: &[GRat], y2: &[GRat]) -> GMatrix {
        let n = self.gd.hd.algebra.dim();
        self.adjoint_into(&self.beta_alpha, &leg_right(n, y))
            .mul(&self.v)
            .mul(&leg_right(n, y2))
    }

    /// All four slice families against their closed forms on every basis
    /// pair, and the span identities that recover the two convolution
    /// algebras from slices.
    pub fn check_slices(&self, dual: &Dual) -> Result<(), String> {
        let gd = self.gd;
        let hd = gd.hd;
        let a = &hd.algebra;
        let b = &a.base;
        let n = a.dim();
        for i in 0..n {
            let x = a.basis_vec(i);
            let xs = a.star(&x);
            for j in 0..n {
                let y = a.basis_vec(j);
                // Right slice of the backward map: a plain multiplication
                // operator.
                let mut acc = a.zero();
                for (p, q, c) in t2_entries(n, &hd.delta_of(&y)) {
                    let phi = gd.ig.phi_of(b, &a.mul(&xs, &a.basis_vec(q)));
                    let t = a.mul(&a.basis_vec(p), &a.s_of(&phi));
                    let tv = self.dh.d_bar_half_inv.mul_vec(&t);
                    for (o, e) in acc.iter_mut().zip(tv.iter()) {
                        if !e.is_zero() {
                            *o = &*o + &(&c * e);
                        }
                    }
                }
                if self.slice_w_right(&x, &y) != self.pi_nu(&acc) {
                    return Err(format!(
                        "right slice of the backward map fails at x={}, y={}",
                        a.basis[i], a.basis[j]
                    ));
                }
                // Left slice of the backward map: a right convolution
                // operator.
                let c1 = hd
                    .antipode_inv
                    .mul_vec(&self.dh.d_bar_half.mul_vec(&a.mul(
                        &gd.ig.theta_inv.mul_vec(&y),
                        &xs,
                    )));
                if self.slice_w_left(&x, &y) != self.rho_hat(dual, &c1)? {
                    return Err(format!(
                        "left slice of the backward map fails at x={}, y={}",
                        a.basis[i], a.basis[j]
                    ));
                }
                // Left slice of the companion map: a plain multiplication
                // operator.
                let mut acc2 = a.zero();
                for (p, q, c) in t2_entries(n, &hd.delta_of(&y)) {
                    let psi = gd.ig.psi_of(b, &a.mul(&xs, &a.basis_vec(p)));
                    let t = a.mul(&a.basis_vec(q), &a.r_of(&psi));
                    let tv = self.dh.d_half_inv.mul_vec(&t);
                    for (o, e) in acc2.iter_mut().zip(tv.iter()) {
                        if !e.is_zero() {
                            *o = &*o + &(&c * e);
                        }
                    }
                }
                if self.slice_v_left(&x, &y) != self.pi_nu(&acc2) {
                    return Err(format!(
                        "left slice of the companion map fails at x={}, y={}",
                        a.basis[i], a.basis[j]
                    ));
                }
                // Right slice of the companion map: a left convolution
                // operator.
                let c2 = hd.antipode_inv.mul_vec(&self.dh.d_half_inv.mul_vec(&a.mul(
                    &y,
                    &gd.ig.theta.mul_vec(&xs),
                )));
                let cols: Vec<Vec<GRat>> = (0..n)
                    .map(|k| dual.convolve_left(&c2, &a.basis_vec(k)))
                    .collect();
                if self.slice_v_right(&x, &y) != GMatrix::from_columns(n, &cols) {
                    return Err(format!(
                        "right slice of the companion map fails at x={}, y={}",
                        a.basis[i], a.basis[j]
                    ));
                }
            }
        }
        // Slice spans recover the multiplication operators and the two
        // one-sided convolution algebras.
        let mut pi_set = Vec::new();
        let mut rho_set = Vec::new();
        let mut lam_set = Vec::new();
        for m in 0..n {
            let em = a.basis_vec(m);
            pi_set.push(self.pi_nu(&em).vectorize());
            rho_set.push(self.rho_hat(dual, &em)?.vectorize());
            let cols: Vec<Vec<GRat>> = (0..n)
                .map(|k| dual.convolve_left(&em, &a.basis_vec(k)))
                .collect();
            lam_set.push(GMatrix::from_columns(n, &cols).vectorize());
        }
        let mut wr = Vec::new();
        let mut wl = Vec::new();
        let mut vl = Vec::new();
        let mut vr = Vec::new();
        for i in 0..n {
            let x = a.basis_vec(i);
            for j in 0..n {
                let y = a.basis_vec(j);
                wr.push(self.slice_w_right(&x, &y).vectorize());
                wl.push(self.slice_w_left(&x, &y).vectorize());
                vl.push(self.slice_v_left(&x, &y).vectorize());
                vr.push(self.slice_v_right(&x, &y).vectorize());
            }
        }
        if !span_equal(&pi_set, &wr) || !span_equal(&pi_set, &vl) {
            return Err("slices do not span the multiplication operators".into());
        }
        if !span_equal(&rho_set, &wl) {
            return Err("left slices do not span the right convolution operators".into());
        }
        if !span_equal(&lam_set, &vr) {
            return Err("right slices of the companion map do not span the left convolution operators".into());
        }
        // The convolution representation is a *-homomorphism for the dual
        // product and involution.
        for i in 0..n {
            let ri = self.rho_hat(dual, &a.basis_vec(i))?;
            let star_pre = a.star(&hd.antipode.column(i));
            if gd.spaces.adjoint_h(&ri) != self.rho_hat(dual, &star_pre)? {
                return Err(format!(
                    "the convolution representation does not respect the involution at {}",
                    a.basis[i]
                ));
            }
            for j in 0..n {
                let rj = self.rho_hat(dual, &a.basis_vec(j))?;
                let prod = dual.convolve_right(&a.basis_vec(j), &a.basis_vec(i))?;
                if ri.mul(&rj) != self.rho_hat(dual, &prod)? {
                    return Err(format!(
                        "the convolution representation is not multiplicative at {}, {}",
                        a.basis[i], a.basis[j]
                    ));
                }
            }
        }
        Ok(())
    }

    /// Coproduct of a multiplication operator by conjugation.
    pub fn delta_op(&self, m: &GMatrix) -> GMatrix {
        let n = self.gd.hd.algebra.dim();
        self.w_star
            .mul(&GMatrix::identity(n).kron(m))
            .mul(&self.w)
    }

    /// Coproduct of a convolution operator by conjugation.
    pub fn dhat_op(&self, m: &GMatrix) -> GMatrix {
        let n = self.gd.hd.algebra.dim();
        self.w.mul(&m.kron(&GMatrix::identity(n))).mul(&self.w_star)
    }

    /// Conjugated coproducts against their explicit two-leg formulas, the
    /// three-slot form with the cocycle unitary on the middle leg, the
    /// bimodule compatibilities, and coassociativity of both coproducts.
    pub fn check_coproducts(&self, dual: &Dual, coc: &Cocycle) -> Result<(), String> {
        let gd = self.gd;
        let hd = gd.hd;
        let a = &hd.algebra;
        let b = &a.base;
        let n = a.dim();
        let nn = n * n;
        let npts = b.n_points();
        let gba = &self.beta_alpha.space.gram;
        let gab = &self.alpha_betahat.space.gram;
        for m in 0..n {
            let am = a.basis_vec(m);
            let entries = t2_entries(n, &hd.delta_of(&am));
            // Explicit coproduct of a multiplication operator: first leg
            // multiplied plainly, second leg through the half twist.
            let mut explicit = GMatrix::zeros(nn, nn);
            for i in 0..n {
                let ei = a.basis_vec(i);
                for j in 0..n {
                    let ej = a.basis_vec(j);
                    for (p, q, c) in &entries {
                        let u = a.mul(&a.basis_vec(*p), &ei);
                        let t = a.mul(&self.dh.d_half.column(*q), &ej);
                        add_tensor2(&mut explicit, n, i * n + j, &u, &t, c);
                    }
                }
            }
            let conj = self.delta_op(&self.pi_nu(&am));
            if !gba.mul(&conj.sub(&explicit)).is_zero() {
                return Err(format!(
                    "the conjugated coproduct differs from its explicit form at {}",
                    a.basis[m]
                ));
            }
            // Three-slot form: the middle leg is shifted by the first-leg
            // degree and scaled through the inverse half cocycle, which is
            // the Gram adjoint of the unitary of the inverse degree.
            let mut diffs = Vec::new();
            for i in 0..n {
                let rb = gd.bounded_vector_r(BaseRep::Beta, &a.basis_vec(i));
                for z in 0..npts {
                    let xi = rb.column(z);
                    for j in 0..n {
                        let lhs = conj.mul_vec(&{
                            let mut t = vec![GRat::zero(); nn];
                            for (k, c) in xi.iter().enumerate() {
                                if !c.is_zero() {
                                    t[k * n + j] = c.clone();
                                }
                            }
                            t
                        });
                        let mut rhs = vec![GRat::zero(); nn];
                        for (p, q, c) in &entries {
                            let a1x = a.mul(&a.basis_vec(*p), &a.basis_vec(i));
                            let ng = coc
                                .u_gamma(b, b.group.inv[a.grading[*p].0])
                                .ok_or("the weight cocycle has no unitary implementation")?
                                .adjoint();
                            let mid = gd
                                .bounded_vector_r(BaseRep::Beta, &a1x)
                                .mul_vec(&ng.column(z));
                            let right = a.mul(&a.basis_vec(*q), &a.basis_vec(j));
                            let mut term = GMatrix::zeros(nn, 1);
                            add_tensor2(&mut term, n, 0, &mid, &right, c);
                            for (o, e) in rhs.iter_mut().zip(term.column(0).iter()) {
                                if !e.is_zero() {
                                    *o = &*o + e;
                                }
                            }
                        }
                        diffs.push(
                            lhs.iter()
                                .zip(rhs.iter())
                                .map(|(x, y)| x - y)
                                .collect::<Vec<GRat>>(),
                        );
                    }
                }
            }
            let dm = GMatrix::from_columns(nn, &diffs);
            if !gba.mul(&dm).is_zero() {
                return Err(format!(
                    "the three-slot coproduct form fails at {}",
                    a.basis[m]
                ));
            }
            // Explicit coproduct of a convolution operator. The convolved
            // product splits with the second-leg factor in front, so the
            // paired argument is S(c) y_(1) x_(1).
            let rho_m = self.rho_hat(dual, &am)?;
            let conj_hat = self.dhat_op(&rho_m);
            let sc = hd.antipode.mul_vec(&am);
            let mut explicit_hat = GMatrix::zeros(nn, nn);
            for i in 0..n {
                let xent = t2_entries(n, &hd.delta_of(&a.basis_vec(i)));
                for j in 0..n {
                    let yent = t2_entries(n, &hd.delta_of(&a.basis_vec(j)));
                    for (u, v2, cy) in &yent {
                        let scu = a.mul(&sc, &a.basis_vec(*u));
                        for (p, q, cx) in &xent {
                            let psi = gd.ig.psi_of(b, &a.mul(&scu, &a.basis_vec(*p)));
                            if is_zero_vec(&psi) {
                                continue;
                            }
                            let first = a.mul(&a.basis_vec(*q), &a.r_of(&psi));
                            add_tensor2(
                                &mut explicit_hat,
                                n,
                                i * n + j,
                                &first,
                                &a.basis_vec(*v2),
                                &(cx * cy),
                            );
                        }
                    }
                }
            }
            if !gab.mul(&conj_hat.sub(&explicit_hat)).is_zero() {
                return Err(format!(
                    "the conjugated dual coproduct differs from its explicit form at {}",
                    a.basis[m]
                ));
            }
        }
        // Bimodule compatibilities of both coproducts with the base actions.
        let id = GMatrix::identity(n);
        for z in 0..npts {
            let bz = b.delta(z);
            let al = gd.rep(BaseRep::Alpha, &bz);
            let be = gd.rep(BaseRep::Beta, &bz);
            let bh = gd.rep(BaseRep::BetaHat, &bz);
            if !gba
                .mul(&self.delta_op(&al).sub(&al.kron(&id)))
                .is_zero()
                || !gba
                    .mul(&self.delta_op(&be).sub(&id.kron(&be)))
                    .is_zero()
            {
                return Err(format!(
                    "the coproduct is not compatible with the base actions at point {z}"
                ));
            }
            if !gab.mul(&self.dhat_op(&bh).sub(&bh.kron(&id))).is_zero()
                || !gab.mul(&self.dhat_op(&al).sub(&id.kron(&al))).is_zero()
            {
                return Err(format!(
                    "the dual coproduct is not compatible with the base actions at point {z}"
                ));
            }
        }
        // Coassociativity through the conjugating unitaries.
        let w12 = self.w.kron(&id);
        let w23 = id.kron(&self.w);
        let w12s = self.w_star.kron(&id);
        let w23s = id.kron(&self.w_star);
        let g0 = self.chain_gram(TensorKind::BetaAlpha, TensorKind::BetaAlpha);
        let g2 = self.chain_gram(TensorKind::AlphaBetaHat, TensorKind::AlphaBetaHat);
        for m in 0..n {
            let am = a.basis_vec(m);
            let d = self.delta_op(&self.pi_nu(&am));
            let left = w12s.mul(&id.kron(&d)).mul(&w12);
            let right = w23s.mul(&leg13(n, &d)).mul(&w23);
            if !g0.mul(&left.sub(&right)).is_zero() {
                return Err(format!("coassociativity fails at {}", a.basis[m]));
            }
            let dh_ = self.dhat_op(&self.rho_hat(dual, &am)?);
            let left_h = w12.mul(&leg13(n, &dh_)).mul(&w12s);
            let right_h = w23.mul(&dh_.kron(&id)).mul(&w23s);
            if !g2.mul(&left_h.sub(&right_h)).is_zero() {
                return Err(format!("dual coassociativity fails at {}", a.basis[m]));
            }
        }
        Ok(())
    }

    pub fn check_regularity(&self) -> Result<(), String> {
        self.check_regularity_with(&self.w, &self.v)
    }

    /// Both bijections are regular: compressing them between insertions
    /// spans the products of the right transporter family with its
    /// adjoints.
    pub fn check_regularity_with(&self, w: &GMatrix, v: &GMatrix) -> Result<(), String> {
        let gd = self.gd;
        let a = &gd.hd.algebra;
        let n = a.dim();
        let lam = &gd.lam;
        let mut lhs_w = Vec::new();
        let mut rhs_w = Vec::new();
        let mut lhs_v = Vec::new();
        let mut rhs_v = Vec::new();
        for i in 0..n {
            let ei = a.basis_vec(i);
            let bra_w = self.adjoint_into(&self.alpha_betahat, &leg_left(n, &ei));
            let bra_v = self.adjoint_into(&self.beta_alpha, &leg_left(n, &ei));
            for j in 0..n {
                let ej = a.basis_vec(j);
                lhs_w.push(bra_w.mul(w).mul(&leg_right(n, &ej)).vectorize());
                rhs_w.push(
                    lam.phi_dag[i]
                        .mul(&gd.spaces.adjoint_k_to_h(&lam.phi_dag[j]))
                        .vectorize(),
                );
                lhs_v.push(bra_v.mul(v).mul(&leg_right(n, &ej)).vectorize());
                rhs_v.push(
                    lam.psi_dag[i]
                        .mul(&gd.spaces.adjoint_k_to_h(&lam.psi_dag[j]))
                        .vectorize(),
                );
            }
        }
        if !span_equal(&lhs_w, &rhs_w) {
            return Err("the forward map is not regular".into());
        }
        if !span_equal(&lhs_v, &rhs_v) {
            return Err("the companion map is not regular".into());
        }
        Ok(())
    }

    pub fn check_all(&self, dual: &Dual, coc: &Cocycle) -> Result<(), String> {
        self.check_tensors()?;
        self.check_w_v()?;
        self.check_pentagon()?;
        self.check_intertwining()?;
        self.check_slices(dual)?;
        self.check_coproducts(dual, coc)?;
        self.check_regularity()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::tests_support::{instance_c_base, instance_t_base};
    use crate::hopf::{hopf_crossed, hopf_pair};
    use crate::integrals::{crossed_bi_integral, pair_bi_integral, IntegralData};

    #[test]
    fn pair_fundamental_structure() {
        let b = instance_t_base();
        let hd = hopf_pair(&b).unwrap();
        let ig = IntegralData::from_bi_integral(&hd, pair_bi_integral(&b), true).unwrap();
        let coc = Cocycle::solve(&b);
        let tw = ig.d_twists(&hd, &coc).unwrap();
        let dual = Dual::new(&hd, &ig, &tw);
        let gd = GnsData::new(&hd, &ig).unwrap();
        let fd = FundamentalData::new(&gd, &coc).unwrap();
        fd.check_all(&dual, &coc).unwrap();
        let a = &hd.algebra;
        let n = a.dim();
        assert_eq!(n, 4);
        assert_eq!(fd.beta_alpha.space.qdim, 8);
        assert_eq!(fd.alpha_betahat.space.qdim, 8);
        assert_eq!(fd.alphahat_beta.space.qdim, 8);
        // On two points the backward map has the frozen closed form
        // e_ab (x) e_uv -> [u = a] e_ab (x) e_bv with no twist.
        let npts = 2;
        let idx = |x: usize, y: usize| x * npts + y;
        let mut want = GMatrix::zeros(n * n, n * n);
        for a_ in 0..npts {
            for b_ in 0..npts {
                for u in 0..npts {
                    for v in 0..npts {
                        if u != a_ {
                            continue;
                        }
                        want.set(
                            idx(a_, b_) * n + idx(b_, v),
                            idx(a_, b_) * n + idx(u, v),
                            GRat::one(),
                        );
                    }
                }
            }
        }
        assert_eq!(fd.w_star, want);
    }

    #[test]
    fn crossed_fundamental_structure() {
        let b = instance_c_base();
        let hd = hopf_crossed(&b).unwrap();
        let ig = IntegralData::from_bi_integral(&hd, crossed_bi_integral(&b), false).unwrap();
        let coc = Cocycle::solve(&b);
        let tw = ig.d_twists(&hd, &coc).unwrap();
        let dual = Dual::new(&hd, &ig, &tw);
        let gd = GnsData::new(&hd, &ig).unwrap();
        let fd = FundamentalData::new(&gd, &coc).unwrap();
        fd.check_all(&dual, &coc).unwrap();
        let n = hd.algebra.dim();
        assert_eq!(n, 6);
        // The half twist scales the shifted light point by 1/2.
        let idx_0g = 1 * b.n_points();
        assert_eq!(fd.dh.d_half.get(idx_0g, idx_0g), &GRat::from_ratio(1, 2));
        // Triple square ambients have full cubic dimension.
        assert_eq!(
            fd.chain_gram(TensorKind::BetaAlpha, TensorKind::BetaAlpha).rows,
            216
        );
    }

    #[test]
    fn dropped_half_twist_breaks_pentagon() {
        let b = instance_c_base();
        let hd = hopf_crossed(&b).unwrap();
        let ig = IntegralData::from_bi_integral(&hd, crossed_bi_integral(&b), false).unwrap();
        let coc = Cocycle::solve(&b);
        let gd = GnsData::new(&hd, &ig).unwrap();
        let fd = FundamentalData::new(&gd, &coc).unwrap();
        let a = &hd.algebra;
        let n = a.dim();
        let mut w_bad = GMatrix::zeros(n * n, n * n);
        let mut w_star_bad = GMatrix::zeros(n * n, n * n);
        for j in 0..n {
            let entries = t2_entries(n, &hd.delta_of(&a.basis_vec(j)));
            for i in 0..n {
                let ei = a.basis_vec(i);
                for (p, q, c) in &entries {
                    let u = a.mul(&a.basis_vec(*p), &ei);
                    add_tensor2(&mut w_star_bad, n, i * n + j, &u, &a.basis_vec(*q), c);
                    let ub = a.mul(&hd.antipode_inv.column(*p), &ei);
                    add_tensor2(&mut w_bad, n, i * n + j, &ub, &a.basis_vec(*q), c);
                }
            }
        }
        let err = fd.check_pentagon_with(&w_bad, &w_star_bad).unwrap_err();
        assert!(err.contains("pentagon"), "unexpected failure: {err}");
    }

    #[test]
    fn flipped_forward_map_breaks_regularity() {
        let b = instance_c_base();
        let hd = hopf_crossed(&b).unwrap();
        let ig = IntegralData::from_bi_integral(&hd, crossed_bi_integral(&b), false).unwrap();
        let coc = Cocycle::solve(&b);
        let gd = GnsData::new(&hd, &ig).unwrap();
        let fd = FundamentalData::new(&gd, &coc).unwrap();
        let n = hd.algebra.dim();
        let mut flip = GMatrix::zeros(n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                flip.set(j * n + i, i * n + j, GRat::one());
            }
        }
        let err = fd
            .check_regularity_with(&fd.w.mul(&flip), &fd.v)
            .unwrap_err();
        assert!(err.contains("regular"), "unexpected failure: {err}");
    }
}
