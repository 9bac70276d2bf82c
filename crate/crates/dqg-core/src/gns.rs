//! GNS spaces for the base weight and the total functional, the four maps
//! implementing the partial integrals between them, the commuting base
//! representations on the total space, bounded vectors, and the unitaries
//! coming from the square root of the weight cocycle.
//!
//! K carries the form mu(b* b') over the point basis and H carries
//! nu(a* a') over the algebra basis. Both functionals are faithful, so the
//! forms are nonsingular and ambient coordinates already are the GNS
//! classes; adjoints are solved exactly against the two Grams.

use crate::base::{Base, Cocycle};
use crate::exactlin::{span_equal, span_rank, GMatrix, GRat, GramSpace};
use crate::hopf::HopfData;
use crate::integrals::IntegralData;
use num_traits::{One, Signed};

/// The two GNS spaces with their nonsingular Gram forms.
#[derive(Clone, Debug)]
pub struct GnsSpaces {
    pub k: GramSpace,
    pub h: GramSpace,
    gram_k_inv: GMatrix,
    gram_h_inv: GMatrix,
}

impl GnsSpaces {
    pub fn new(base: &Base, ig: &IntegralData) -> Result<Self, String> {
        let k = GramSpace::new(base.gram_k())?;
        if k.qdim != k.dim {
            return Err("base weight form is singular".into());
        }
        let h = GramSpace::new(ig.nu_gram.clone())?;
        if h.qdim != h.dim {
            return Err("total functional form is singular".into());
        }
        let gram_k_inv = k.gram.inverse().ok_or("base gram is not invertible")?;
        let gram_h_inv = h.gram.inverse().ok_or("total gram is not invertible")?;
        Ok(GnsSpaces {
            k,
            h,
            gram_k_inv,
            gram_h_inv,
        })
    }

    /// Adjoint of a map K -> H with respect to the two forms.
    pub fn adjoint_k_to_h(&self, m: &GMatrix) -> GMatrix {
        self.gram_k_inv.mul(&m.adjoint()).mul(&self.h.gram)
    }

    /// Adjoint of an operator on H.
    pub fn adjoint_h(&self, m: &GMatrix) -> GMatrix {
        self.gram_h_inv.mul(&m.adjoint()).mul(&self.h.gram)
    }

    /// Adjoint of an operator on K.
    pub fn adjoint_k(&self, m: &GMatrix) -> GMatrix {
        self.gram_k_inv.mul(&m.adjoint()).mul(&self.k.gram)
    }
}

/// The four families of maps K -> H, one matrix per algebra basis element.
/// On a point mass delta_z the columns are, in table order:
/// x r(delta_z), x s(delta_z), r(delta_z) x, s(delta_z) x.
#[derive(Clone, Debug)]
pub struct LambdaFamily {
    pub phi: Vec<GMatrix>,
    pub psi: Vec<GMatrix>,
    pub phi_dag: Vec<GMatrix>,
    pub psi_dag: Vec<GMatrix>,
}

/// The four commuting representations of the base on H. Each one is the
/// right action of the base multiplication operators on one lambda family.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BaseRep {
    /// Left multiplication by r(b); acts on the phi-dagger family.
    Alpha,
    /// Left multiplication by s(b); acts on the psi-dagger family.
    Beta,
    /// Right multiplication by s(b); acts on the psi family.
    AlphaHat,
    /// Right multiplication by r(b); acts on the phi family.
    BetaHat,
}

pub const BASE_REPS: [BaseRep; 4] = [
    BaseRep::Alpha,
    BaseRep::Beta,
    BaseRep::AlphaHat,
    BaseRep::BetaHat,
];

/// Square roots of the two degree twists, defined when the weight cocycle
/// has a positive rational square root.
#[derive(Clone, Debug)]
pub struct DHalfMaps {
    pub d_half: GMatrix,
    pub d_half_inv: GMatrix,
    pub d_bar_half: GMatrix,
    pub d_bar_half_inv: GMatrix,
}

pub struct GnsData<'a> {
    pub hd: &'a HopfData,
    pub ig: &'a IntegralData,
    pub spaces: GnsSpaces,
    pub lam: LambdaFamily,
}

impl<'a> GnsData<'a> {
    pub fn new(hd: &'a HopfData, ig: &'a IntegralData) -> Result<Self, String> {
        let a = &hd.algebra;
        let spaces = GnsSpaces::new(&a.base, ig)?;
        let n = a.dim();
        let npts = a.base.n_points();
        let set_col = |m: &mut GMatrix, z: usize, v: &[GRat]| {
            for (i, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    m.set(i, z, c.clone());
                }
            }
        };
        let mut phi = Vec::with_capacity(n);
        let mut psi = Vec::with_capacity(n);
        let mut phi_dag = Vec::with_capacity(n);
        let mut psi_dag = Vec::with_capacity(n);
        for i in 0..n {
            let x = a.basis_vec(i);
            let mut mp = GMatrix::zeros(n, npts);
            let mut ms = GMatrix::zeros(n, npts);
            let mut mpd = GMatrix::zeros(n, npts);
            let mut msd = GMatrix::zeros(n, npts);
            for z in 0..npts {
                let rz = a.r_of(&a.base.delta(z));
                let sz = a.s_of(&a.base.delta(z));
                set_col(&mut mp, z, &a.mul(&x, &rz));
                set_col(&mut ms, z, &a.mul(&x, &sz));
                set_col(&mut mpd, z, &a.mul(&rz, &x));
                set_col(&mut msd, z, &a.mul(&sz, &x));
            }
            phi.push(mp);
            psi.push(ms);
            phi_dag.push(mpd);
            psi_dag.push(msd);
        }
        Ok(GnsData {
            hd,
            ig,
            spaces,
            lam: LambdaFamily {
                phi,
                psi,
                phi_dag,
                psi_dag,
            },
        })
    }

    fn lam_combo(table: &[GMatrix], x: &[GRat]) -> GMatrix {
        let mut out = GMatrix::zeros(table[0].rows, table[0].cols);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&table[i].scale(c));
            }
        }
        out
    }

    pub fn lambda_phi(&self, x: &[GRat]) -> GMatrix {
        Self::lam_combo(&self.lam.phi, x)
    }

    pub fn lambda_psi(&self, x: &[GRat]) -> GMatrix {
        Self::lam_combo(&self.lam.psi, x)
    }

    pub fn lambda_phi_dag(&self, x: &[GRat]) -> GMatrix {
        Self::lam_combo(&self.lam.phi_dag, x)
    }

    pub fn lambda_psi_dag(&self, x: &[GRat]) -> GMatrix {
        Self::lam_combo(&self.lam.psi_dag, x)
    }

    /// The operator of `which` at the base element b.
    pub fn rep(&self, which: BaseRep, b: &[GRat]) -> GMatrix {
        let a = &self.hd.algebra;
        match which {
            BaseRep::Alpha => a.left_mult_matrix(&a.r_of(b)),
            BaseRep::Beta => a.left_mult_matrix(&a.s_of(b)),
            BaseRep::AlphaHat => a.right_mult_matrix(&a.s_of(b)),
            BaseRep::BetaHat => a.right_mult_matrix(&a.r_of(b)),
        }
    }

    /// The lambda family on which `which` is the right base action.
    pub fn family(&self, which: BaseRep) -> &Vec<GMatrix> {
        match which {
            BaseRep::Alpha => &self.lam.phi_dag,
            BaseRep::Beta => &self.lam.psi_dag,
            BaseRep::AlphaHat => &self.lam.psi,
            BaseRep::BetaHat => &self.lam.phi,
        }
    }

    /// Transporter of the vector at x for `which`: the map K -> H sending
    /// the base inclusion of b to the action of b on the vector.
    pub fn bounded_vector_r(&self, which: BaseRep, x: &[GRat]) -> GMatrix {
        match which {
            BaseRep::Alpha => self.lambda_phi_dag(x),
            BaseRep::Beta => self.lambda_psi_dag(x),
            BaseRep::AlphaHat => self.lambda_psi(x),
            BaseRep::BetaHat => self.lambda_phi(x),
        }
    }

    /// Both Grams realize their defining inner products and the two left
    /// regular representations are unital star homomorphisms for the forms.
    pub fn check_spaces(&self) -> Result<(), String> {
        let a = &self.hd.algebra;
        let b = &a.base;
        let n = a.dim();
        let npts = b.n_points();
        for z in 0..npts {
            for z2 in 0..npts {
                let want = b.mu(&b.b_mul(&b.b_star(&b.delta(z)), &b.delta(z2)));
                if self.spaces.k.gram.get(z, z2) != &want {
                    return Err(format!("base gram entry ({z}, {z2}) is wrong"));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let want = self
                    .ig
                    .nu_of(&a.mul(&a.star(&a.basis_vec(i)), &a.basis_vec(j)));
                if self.spaces.h.gram.get(i, j) != &want {
                    return Err(format!(
                        "total gram entry ({}, {}) is wrong",
                        a.basis[i], a.basis[j]
                    ));
                }
            }
        }
        let mut sum_k = GMatrix::zeros(npts, npts);
        for z in 0..npts {
            let m = b.pi_mu(&b.delta(z));
            sum_k = sum_k.add(&m);
            if self.spaces.adjoint_k(&m) != m {
                return Err(format!("base multiplication at z={z} is not self adjoint"));
            }
            for z2 in 0..npts {
                let m2 = b.pi_mu(&b.delta(z2));
                let want = if z == z2 {
                    m.clone()
                } else {
                    GMatrix::zeros(npts, npts)
                };
                if m.mul(&m2) != want {
                    return Err("base multiplication operators do not multiply pointwise".into());
                }
            }
        }
        if sum_k != GMatrix::identity(npts) {
            return Err("base multiplication operators do not sum to the identity".into());
        }
        if a.left_mult_matrix(&a.one()) != GMatrix::identity(n) {
            return Err("left regular representation is not unital".into());
        }
        for i in 0..n {
            let mi = a.left_mult_matrix(&a.basis_vec(i));
            if self.spaces.adjoint_h(&mi) != a.left_mult_matrix(&a.star(&a.basis_vec(i))) {
                return Err(format!(
                    "left regular representation is not a star map at {}",
                    a.basis[i]
                ));
            }
            for j in 0..n {
                let prod = a.mul(&a.basis_vec(i), &a.basis_vec(j));
                if mi.mul(&a.left_mult_matrix(&a.basis_vec(j))) != a.left_mult_matrix(&prod) {
                    return Err(format!(
                        "left regular representation is not multiplicative at {}, {}",
                        a.basis[i], a.basis[j]
                    ));
                }
            }
        }
        Ok(())
    }

    /// The twelve identities tying each lambda family to its partial
    /// integral: the defining column rule, the adjoint applied to a vector
    /// of H, and the operator product landing in the base multiplication
    /// algebra. The dagger families pair through the modular automorphism.
    pub fn check_lambda_identities(&self) -> Result<(), String> {
        let a = &self.hd.algebra;
        let b = &a.base;
        let n = a.dim();
        let npts = b.n_points();
        for i in 0..n {
            let x = a.basis_vec(i);
            for z in 0..npts {
                let rz = a.r_of(&b.delta(z));
                let sz = a.s_of(&b.delta(z));
                if self.lam.phi[i].column(z) != a.mul(&x, &rz)
                    || self.lam.psi[i].column(z) != a.mul(&x, &sz)
                    || self.lam.phi_dag[i].column(z) != a.mul(&rz, &x)
                    || self.lam.psi_dag[i].column(z) != a.mul(&sz, &x)
                {
                    return Err(format!(
                        "lambda column rule fails at x={}, z={z}",
                        a.basis[i]
                    ));
                }
            }
        }
        for i in 0..n {
            let xi = a.basis_vec(i);
            let xs = a.star(&xi);
            let theta_xs = self.ig.theta.mul_vec(&xs);
            for j in 0..n {
                let yj = a.basis_vec(j);
                let xsy = a.mul(&xs, &yj);
                let y_theta_xs = a.mul(&yj, &theta_xs);
                let cases: [(&str, &Vec<GMatrix>, Vec<GRat>); 4] = [
                    ("phi", &self.lam.phi, self.ig.phi_of(b, &xsy)),
                    ("psi", &self.lam.psi, self.ig.psi_of(b, &xsy)),
                    ("phi_dag", &self.lam.phi_dag, self.ig.phi_of(b, &y_theta_xs)),
                    ("psi_dag", &self.lam.psi_dag, self.ig.psi_of(b, &y_theta_xs)),
                ];
                for (name, table, want_b) in cases {
                    let adj = self.spaces.adjoint_k_to_h(&table[i]);
                    if adj.mul_vec(&yj) != want_b {
                        return Err(format!(
                            "lambda_{name} adjoint identity fails at x={}, y={}",
                            a.basis[i], a.basis[j]
                        ));
                    }
                    if adj.mul(&table[j]) != b.pi_mu(&want_b) {
                        return Err(format!(
                            "lambda_{name} product identity fails at x={}, y={}",
                            a.basis[i], a.basis[j]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Each base representation is a unital star homomorphism, all pairs
    /// commute, and each one realizes the right base action on its family.
    pub fn check_representations(&self) -> Result<(), String> {
        let a = &self.hd.algebra;
        let b = &a.base;
        let n = a.dim();
        let npts = b.n_points();
        for which in BASE_REPS {
            let mut sum = GMatrix::zeros(n, n);
            for z in 0..npts {
                let dz = b.delta(z);
                let m = self.rep(which, &dz);
                sum = sum.add(&m);
                if self.spaces.adjoint_h(&m) != m {
                    return Err(format!("{which:?} is not self adjoint at z={z}"));
                }
                for z2 in 0..npts {
                    let m2 = self.rep(which, &b.delta(z2));
                    let want = if z == z2 {
                        m.clone()
                    } else {
                        GMatrix::zeros(n, n)
                    };
                    if m.mul(&m2) != want {
                        return Err(format!("{which:?} is not multiplicative at z={z}, z'={z2}"));
                    }
                }
                for (i, fam) in self.family(which).iter().enumerate() {
                    if m.mul(fam) != fam.mul(&b.pi_mu(&dz)) {
                        return Err(format!(
                            "{which:?} is not the right base action on its family at x={}, z={z}",
                            a.basis[i]
                        ));
                    }
                }
            }
            if sum != GMatrix::identity(n) {
                return Err(format!("{which:?} is not unital"));
            }
        }
        for (k, &wa) in BASE_REPS.iter().enumerate() {
            for &wb in &BASE_REPS[k + 1..] {
                for z in 0..npts {
                    let ma = self.rep(wa, &b.delta(z));
                    for z2 in 0..npts {
                        let mb = self.rep(wb, &b.delta(z2));
                        if ma.mul(&mb) != mb.mul(&ma) {
                            return Err(format!(
                                "{wa:?} and {wb:?} do not commute at z={z}, z'={z2}"
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Span identities for the four families: the columns fill H, the right
    /// base action preserves each family, adjoint products span exactly the
    /// base multiplication algebra, and every representation maps every
    /// family into itself.
    pub fn check_cstar_modules(&self) -> Result<(), String> {
        let a = &self.hd.algebra;
        let b = &a.base;
        let n = a.dim();
        let npts = b.n_points();
        let names = ["phi_dag", "psi_dag", "psi", "phi"];
        let pis: Vec<Vec<GRat>> = (0..npts)
            .map(|z| b.pi_mu(&b.delta(z)).vectorize())
            .collect();
        for (w, &which) in BASE_REPS.iter().enumerate() {
            let fam = self.family(which);
            let name = names[w];
            let mut cols = Vec::new();
            for m in fam {
                for z in 0..npts {
                    cols.push(m.column(z));
                }
            }
            if span_rank(&cols) != n {
                return Err(format!(
                    "family {name}: columns do not fill the total space"
                ));
            }
            let flat: Vec<Vec<GRat>> = fam.iter().map(|m| m.vectorize()).collect();
            let mut acted = Vec::new();
            for m in fam {
                for z in 0..npts {
                    acted.push(m.mul(&b.pi_mu(&b.delta(z))).vectorize());
                }
            }
            if !span_equal(&acted, &flat) {
                return Err(format!(
                    "family {name}: right base action does not preserve the span"
                ));
            }
            let mut prods = Vec::new();
            for mi in fam {
                let adj = self.spaces.adjoint_k_to_h(mi);
                for mj in fam {
                    prods.push(adj.mul(mj).vectorize());
                }
            }
            if !span_equal(&prods, &pis) {
                return Err(format!(
                    "family {name}: adjoint products do not span the base image"
                ));
            }
        }
        for &wa in &BASE_REPS {
            for (f, &wf) in BASE_REPS.iter().enumerate() {
                let famf = self.family(wf);
                let flat: Vec<Vec<GRat>> = famf.iter().map(|m| m.vectorize()).collect();
                let mut acted = Vec::new();
                for z in 0..npts {
                    let m = self.rep(wa, &b.delta(z));
                    for ff in famf {
                        acted.push(m.mul(ff).vectorize());
                    }
                }
                if !span_equal(&acted, &flat) {
                    return Err(format!(
                        "{wa:?} does not preserve the family {}",
                        names[f]
                    ));
                }
            }
        }
        Ok(())
    }

    /// Transporters intertwine the base inclusion with the representation,
    /// their adjoint pairings recover the four integral formulas, the
    /// pairing applied through the base inclusion matches the adjoint on
    /// vectors, and transporters commute with the commutant of their
    /// representation.
    pub fn check_bounded_vectors(&self) -> Result<(), String> {
        let a = &self.hd.algebra;
        let b = &a.base;
        let n = a.dim();
        let npts = b.n_points();
        for &which in &BASE_REPS {
            for i in 0..n {
                let x = a.basis_vec(i);
                let r = self.bounded_vector_r(which, &x);
                for z in 0..npts {
                    if r.column(z) != self.rep(which, &b.delta(z)).mul_vec(&x) {
                        return Err(format!(
                            "transporter for {which:?} fails at x={}, z={z}",
                            a.basis[i]
                        ));
                    }
                }
            }
        }
        for i in 0..n {
            let xi = a.basis_vec(i);
            let xs = a.star(&xi);
            let theta_xs = self.ig.theta.mul_vec(&xs);
            for j in 0..n {
                let yj = a.basis_vec(j);
                let xsy = a.mul(&xs, &yj);
                let y_theta_xs = a.mul(&yj, &theta_xs);
                for &which in &BASE_REPS {
                    let want_b = match which {
                        BaseRep::Alpha => self.ig.phi_of(b, &y_theta_xs),
                        BaseRep::Beta => self.ig.psi_of(b, &y_theta_xs),
                        BaseRep::AlphaHat => self.ig.psi_of(b, &xsy),
                        BaseRep::BetaHat => self.ig.phi_of(b, &xsy),
                    };
                    let adj = self
                        .spaces
                        .adjoint_k_to_h(&self.bounded_vector_r(which, &xi));
                    if adj.mul(&self.bounded_vector_r(which, &yj)) != b.pi_mu(&want_b) {
                        return Err(format!(
                            "pairing for {which:?} fails at x={}, y={}",
                            a.basis[i], a.basis[j]
                        ));
                    }
                    if adj.mul_vec(&yj) != want_b {
                        return Err(format!(
                            "pairing of {which:?} through the base inclusion fails at x={}, y={}",
                            a.basis[i], a.basis[j]
                        ));
                    }
                }
            }
        }
        // Left multiplications commute with the two right actions and right
        // multiplications with the two left actions.
        for &which in &BASE_REPS {
            for k in 0..n {
                let ek = a.basis_vec(k);
                for i in 0..n {
                    let x = a.basis_vec(i);
                    let (t, tx) = match which {
                        BaseRep::Alpha | BaseRep::Beta => {
                            (a.right_mult_matrix(&ek), a.mul(&x, &ek))
                        }
                        BaseRep::AlphaHat | BaseRep::BetaHat => {
                            (a.left_mult_matrix(&ek), a.mul(&ek, &x))
                        }
                    };
                    if self.bounded_vector_r(which, &tx)
                        != t.mul(&self.bounded_vector_r(which, &x))
                    {
                        return Err(format!(
                            "transporter for {which:?} does not intertwine the commutant at x={}, t={}",
                            a.basis[i], a.basis[k]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Conjugation on K is an involution, flips the form, and implements
    /// the star of the base.
    pub fn check_j_mu(&self) -> Result<(), String> {
        let b = &self.hd.algebra.base;
        let npts = b.n_points();
        let j = b.j_mu_matrix();
        let g = &self.spaces.k.gram;
        if j.mul(&j.conj()) != GMatrix::identity(npts) {
            return Err("base conjugation is not an involution".into());
        }
        if j.adjoint().mul(g).mul(&j) != g.conj() {
            return Err("base conjugation does not flip the form".into());
        }
        let mut v = vec![GRat::zero(); npts];
        v[0] = GRat::i();
        if npts > 1 {
            v[1] = GRat::from_ratio(2, 3);
        }
        let conj_v: Vec<GRat> = v.iter().map(|c| c.conj()).collect();
        if j.mul_vec(&conj_v) != b.b_star(&v) {
            return Err("base conjugation does not implement the star".into());
        }
        Ok(())
    }

    /// Square roots of the two degree twists: multiply by r of the cocycle
    /// root at the inverse forward degree, or s at the inverse backward one.
    pub fn d_half_maps(&self, coc: &Cocycle) -> Option<DHalfMaps> {
        let a = &self.hd.algebra;
        let n = a.dim();
        let mut d_half = GMatrix::zeros(n, n);
        let mut d_half_inv = GMatrix::zeros(n, n);
        let mut d_bar_half = GMatrix::zeros(n, n);
        let mut d_bar_half_inv = GMatrix::zeros(n, n);
        let set_col = |m: &mut GMatrix, i: usize, v: &[GRat]| {
            for (k, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    m.set(k, i, c.clone());
                }
            }
        };
        for i in 0..n {
            let (fwd, bwd) = a.grading[i];
            let hf = coc.d_half_elem(&a.base, a.base.group.inv[fwd])?;
            let hb = coc.d_half_elem(&a.base, a.base.group.inv[bwd])?;
            let hf_inv: Vec<GRat> = hf.iter().map(|c| c.inv()).collect();
            let hb_inv: Vec<GRat> = hb.iter().map(|c| c.inv()).collect();
            let x = a.basis_vec(i);
            set_col(&mut d_half, i, &a.mul(&a.r_of(&hf), &x));
            set_col(&mut d_half_inv, i, &a.mul(&a.r_of(&hf_inv), &x));
            set_col(&mut d_bar_half, i, &a.mul(&a.s_of(&hb), &x));
            set_col(&mut d_bar_half_inv, i, &a.mul(&a.s_of(&hb_inv), &x));
        }
        Some(DHalfMaps {
            d_half,
            d_half_inv,
            d_bar_half,
            d_bar_half_inv,
        })
    }

    /// The cocycle square root exists and obeys the pointwise laws, the
    /// implementing unitaries preserve the base form and conjugate the base
    /// multiplication operators along the action, the twist square roots
    /// square to the twists and exchange each lambda map with its dagger
    /// partner, and the twisted pairings transport the integrals along the
    /// degree.
    pub fn check_u_compat(&self, coc: &Cocycle) -> Result<(), String> {
        let a = &self.hd.algebra;
        let b = &a.base;
        let n = a.dim();
        let npts = b.n_points();
        let ng = b.group.names.len();
        let e = b.group.identity;
        let half = coc
            .d_half
            .as_ref()
            .ok_or("weight cocycle has no positive rational square root")?;
        for g in 0..ng {
            for x in 0..npts {
                if !half[g][x].is_positive() {
                    return Err(format!(
                        "cocycle root is not positive at gamma={}, x={x}",
                        b.group.names[g]
                    ));
                }
                if &half[g][x] * &half[g][x] != coc.d[g][x] {
                    return Err(format!(
                        "cocycle root does not square to the cocycle at gamma={}, x={x}",
                        b.group.names[g]
                    ));
                }
            }
        }
        for x in 0..npts {
            if !half[e][x].is_one() {
                return Err("cocycle root is not one at the identity".into());
            }
        }
        for g in 0..ng {
            for g2 in 0..ng {
                let gg = b.group.table[g][g2];
                for x in 0..npts {
                    if half[gg][x] != &half[g][b.act(g2, x)] * &half[g2][x] {
                        return Err(format!(
                            "cocycle root fails the cocycle law at {}, {}",
                            b.group.names[g], b.group.names[g2]
                        ));
                    }
                }
            }
        }
        let gram = &self.spaces.k.gram;
        let mut us = Vec::with_capacity(ng);
        for g in 0..ng {
            us.push(
                coc.u_gamma(b, g)
                    .ok_or("missing implementing unitary for the cocycle root")?,
            );
        }
        if us[e] != GMatrix::identity(npts) {
            return Err("implementing unitary at the identity is not the identity".into());
        }
        for g in 0..ng {
            let u = &us[g];
            if u.adjoint().mul(gram).mul(u) != *gram {
                return Err(format!(
                    "U_{} does not preserve the base form",
                    b.group.names[g]
                ));
            }
            for g2 in 0..ng {
                if u.mul(&us[g2]) != us[b.group.table[g][g2]] {
                    return Err(format!(
                        "implementing unitaries fail the product law at {}, {}",
                        b.group.names[g], b.group.names[g2]
                    ));
                }
            }
            let uinv = &us[b.group.inv[g]];
            for z in 0..npts {
                let lhs = u.mul(&b.pi_mu(&b.delta(z))).mul(uinv);
                if lhs != b.pi_mu(&b.gamma_apply(g, &b.delta(z))) {
                    return Err(format!(
                        "U_{} does not conjugate the base multiplication at z={z}",
                        b.group.names[g]
                    ));
                }
            }
        }
        let dh = self
            .d_half_maps(coc)
            .ok_or("weight cocycle has no positive rational square root")?;
        let tw = self.ig.d_twists(self.hd, coc)?;
        if dh.d_half.mul(&dh.d_half) != tw.d || dh.d_bar_half.mul(&dh.d_bar_half) != tw.d_bar {
            return Err("twist square roots do not square to the twists".into());
        }
        if dh.d_half.mul(&dh.d_half_inv) != GMatrix::identity(n)
            || dh.d_bar_half.mul(&dh.d_bar_half_inv) != GMatrix::identity(n)
        {
            return Err("twist square roots are not invertible".into());
        }
        for i in 0..n {
            // One sided forms agree: left r at the inverse degree equals
            // right r at the inverted root of the degree itself.
            let (fwd, bwd) = a.grading[i];
            let x = a.basis_vec(i);
            let hf_inv: Vec<GRat> = coc
                .d_half_elem(b, fwd)
                .expect("root exists")
                .iter()
                .map(|c| c.inv())
                .collect();
            let hb_inv: Vec<GRat> = coc
                .d_half_elem(b, bwd)
                .expect("root exists")
                .iter()
                .map(|c| c.inv())
                .collect();
            if dh.d_half.column(i) != a.mul(&x, &a.r_of(&hf_inv))
                || dh.d_bar_half.column(i) != a.mul(&x, &a.s_of(&hb_inv))
            {
                return Err(format!("one sided twist root forms differ at {}", a.basis[i]));
            }
            let lhs = self.lam.phi[i].mul(&us[b.group.inv[fwd]]);
            if lhs != self.lambda_phi_dag(&dh.d_half.mul_vec(&x)) {
                return Err(format!(
                    "phi map and unitary exchange fails at x={}",
                    a.basis[i]
                ));
            }
            let lhs_bar = self.lam.psi[i].mul(&us[b.group.inv[bwd]]);
            if lhs_bar != self.lambda_psi_dag(&dh.d_bar_half.mul_vec(&x)) {
                return Err(format!(
                    "psi map and unitary exchange fails at x={}",
                    a.basis[i]
                ));
            }
        }
        for i in 0..n {
            let xi = a.basis_vec(i);
            let (fwd, bwd) = a.grading[i];
            let xs = a.star(&xi);
            let ri = self.lambda_phi_dag(&dh.d_half.mul_vec(&xi));
            let si = self.lambda_psi_dag(&dh.d_bar_half.mul_vec(&xi));
            let ri_adj = self.spaces.adjoint_k_to_h(&ri);
            let si_adj = self.spaces.adjoint_k_to_h(&si);
            for j in 0..n {
                let yj = a.basis_vec(j);
                let xsy = a.mul(&xs, &yj);
                let rj = self.lambda_phi_dag(&dh.d_half.mul_vec(&yj));
                let want = b.pi_mu(&b.gamma_apply(fwd, &self.ig.phi_of(b, &xsy)));
                if ri_adj.mul(&rj) != want {
                    return Err(format!(
                        "twisted phi pairing fails at x={}, y={}",
                        a.basis[i], a.basis[j]
                    ));
                }
                let sj = self.lambda_psi_dag(&dh.d_bar_half.mul_vec(&yj));
                let want_bar = b.pi_mu(&b.gamma_apply(bwd, &self.ig.psi_of(b, &xsy)));
                if si_adj.mul(&sj) != want_bar {
                    return Err(format!(
                        "twisted psi pairing fails at x={}, y={}",
                        a.basis[i], a.basis[j]
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn check_all(&self, coc: &Cocycle) -> Result<(), String> {
        self.check_spaces()?;
        self.check_lambda_identities()?;
        self.check_representations()?;
        self.check_cstar_modules()?;
        self.check_bounded_vectors()?;
        self.check_j_mu()?;
        self.check_u_compat(coc)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::tests_support::{instance_c_base, instance_t_base};
    use crate::hopf::{hopf_crossed, hopf_pair};
    use crate::integrals::{crossed_bi_integral, pair_bi_integral};

    #[test]
    fn crossed_gns_structure() {
        let b = instance_c_base();
        let hd = hopf_crossed(&b).unwrap();
        let ig = IntegralData::from_bi_integral(&hd, crossed_bi_integral(&b), false).unwrap();
        let coc = Cocycle::solve(&b);
        let g = GnsData::new(&hd, &ig).unwrap();
        g.check_all(&coc).unwrap();
        let a = &hd.algebra;
        let npts = b.n_points();
        // The flip unitary sends the light point to the heavy one with
        // coefficient 1/2 = sqrt(w1 / w2).
        let u = coc.u_gamma(&b, 1).unwrap();
        let mut want = vec![GRat::zero(); npts];
        want[1] = GRat::from_ratio(1, 2);
        assert_eq!(u.column(0), want);
        // Pairing of the first shifted point mass with itself under the
        // right action family: the base projection onto the heavy point.
        let x = a.basis_vec(npts);
        let r = g.bounded_vector_r(BaseRep::AlphaHat, &x);
        let mut diag = vec![GRat::zero(); npts];
        diag[1] = GRat::one();
        assert_eq!(g.spaces.adjoint_k_to_h(&r).mul(&r), b.pi_mu(&diag));
        // The transporter of the unit under the left action family is the
        // source inclusion of the base.
        let ru = g.bounded_vector_r(BaseRep::Alpha, &a.one());
        for z in 0..npts {
            assert_eq!(ru.column(z), a.r_of(&b.delta(z)));
        }
    }

    #[test]
    fn pair_gns_structure() {
        let b = instance_t_base();
        let hd = hopf_pair(&b).unwrap();
        let ig = IntegralData::from_bi_integral(&hd, pair_bi_integral(&b), true).unwrap();
        let coc = Cocycle::solve(&b);
        let g = GnsData::new(&hd, &ig).unwrap();
        g.check_all(&coc).unwrap();
        // Left action by a point mass is the diagonal projection onto the
        // matrix units with matching row.
        let a = &hd.algebra;
        let npts = b.n_points();
        for z in 0..npts {
            let m = g.rep(BaseRep::Alpha, &b.delta(z));
            let want = GMatrix::from_fn(a.dim(), a.dim(), |i, j| {
                if i == j && i / npts == z {
                    GRat::one()
                } else {
                    GRat::zero()
                }
            });
            assert_eq!(m, want);
        }
    }

    #[test]
    fn identity_theta_mutation_breaks_dagger_adjoints() {
        let b = instance_c_base();
        let hd = hopf_crossed(&b).unwrap();
        let mut ig = IntegralData::from_bi_integral(&hd, crossed_bi_integral(&b), false).unwrap();
        ig.theta = GMatrix::identity(hd.algebra.dim());
        let g = GnsData::new(&hd, &ig).unwrap();
        let err = g.check_lambda_identities().unwrap_err();
        assert!(
            err.contains("lambda_phi_dag") && err.contains("x=1|g, y=1|g"),
            "unexpected failure: {err}"
        );
    }
}
