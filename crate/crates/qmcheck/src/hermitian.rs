//! Rank-2 quaternionic modules with skew-hermitian pairings.
//!
//! B^2 is a left B-module with abstract basis l1, l2. A pairing is encoded
//! by a 2x2 quaternion matrix [v_ij] with v_ji = -conj(v_ij) together with
//! a global rational scale s:
//!
//! ```text
//! <sum m_i l_i, sum n_j l_j> = s * Tr( sum_ij v_ij conj(m_i) n_j )
//! ```
//!
//! Rank-8 integer lattices inside B^2 are expressed in the fixed Q^8
//! coordinates (l1*1, l1*i, l1*j, l1*k, l2*1, ..., l2*k). The module checks
//! the distinguished lattices M'e + M'f, Me + Pf, the pairing values of the
//! rank-2 polarization matrix, the half-isogeny involution W2, and the
//! kernel identities for chi(x, y) = x(i-1) + y(j-1).

use crate::lattice::ZLattice;
use crate::matrix::RatMat;
use crate::quaternion::{order_basis, rat, rint, OrderName, Quaternion, Rat};
use num_traits::{One, Zero};

/// Element of B^2, coefficients of the fixed left-module basis (l1, l2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuatVector2 {
    pub c1: Quaternion,
    pub c2: Quaternion,
}

impl QuatVector2 {
    pub fn new(c1: Quaternion, c2: Quaternion) -> Self {
        Self { c1, c2 }
    }

    pub fn l1() -> Self {
        Self::new(Quaternion::one(), Quaternion::zero())
    }

    pub fn l2() -> Self {
        Self::new(Quaternion::zero(), Quaternion::one())
    }

    /// Module scalars act on the left: m * (c1, c2) = (m c1, m c2).
    pub fn scalar_mul(&self, m: &Quaternion) -> Self {
        Self::new(m.mul(&self.c1), m.mul(&self.c2))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.c1.add(&o.c1), self.c2.add(&o.c2))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.c1.sub(&o.c1), self.c2.sub(&o.c2))
    }

    /// Coordinates in the fixed Q^8 basis of B^2.
    pub fn coords(&self) -> Vec<Rat> {
        let mut v = self.c1.coords().to_vec();
        v.extend(self.c2.coords().to_vec());
        v
    }

    pub fn from_coords(v: &[Rat]) -> Self {
        assert_eq!(v.len(), 8);
        Self::new(
            Quaternion::from_coords(&v[0..4]),
            Quaternion::from_coords(&v[4..8]),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewHermitianForm {
    pub v11: Quaternion,
    pub v12: Quaternion,
    pub v21: Quaternion,
    pub v22: Quaternion,
    pub scale: Rat,
}

impl SkewHermitianForm {
    pub fn new(
        v11: Quaternion,
        v12: Quaternion,
        v21: Quaternion,
        v22: Quaternion,
        scale: Rat,
    ) -> Result<Self, String> {
        let f = Self {
            v11,
            v12,
            v21,
            v22,
            scale,
        };
        if !f.is_skew_hermitian() {
            return Err("matrix violates v_ji = -conj(v_ij)".into());
        }
        Ok(f)
    }

    pub fn is_skew_hermitian(&self) -> bool {
        self.v11 == self.v11.conj().neg()
            && self.v22 == self.v22.conj().neg()
            && self.v21 == self.v12.conj().neg()
    }

    /// The polarization matrix of the rank-2 module computation:
    /// v = (1/2) [[2(i+j), -1-i], [1-i, 0]], stored entry-wise with scale 1.
    pub fn polarization() -> Self {
        let half = rat(1, 2);
        Self::new(
            Quaternion::i().add(&Quaternion::j()),
            Quaternion::from_ints(-1, -1, 0, 0).scale(&half),
            Quaternion::from_ints(1, -1, 0, 0).scale(&half),
            Quaternion::zero(),
            Rat::one(),
        )
        .expect("polarization matrix is skew-hermitian")
    }

    /// The split symplectic pairing s * Tr(conj(m1) n2 - conj(m2) n1),
    /// i.e. matrix [[0, 1], [-1, 0]] with the given scale.
    pub fn split_symplectic(scale: Rat) -> Self {
        Self::new(
            Quaternion::zero(),
            Quaternion::one(),
            Quaternion::one().neg(),
            Quaternion::zero(),
            scale,
        )
        .expect("split symplectic matrix is skew-hermitian")
    }

    pub fn entries(&self) -> [[Quaternion; 2]; 2] {
        [
            [self.v11.clone(), self.v12.clone()],
            [self.v21.clone(), self.v22.clone()],
        ]
    }
}

/// Evaluate the pairing: scale * Tr( sum_ij v_ij conj(u_i) w_j ).
pub fn pairing_eval(form: &SkewHermitianForm, u: &QuatVector2, w: &QuatVector2) -> Rat {
    let e = form.entries();
    let us = [u.c1.clone(), u.c2.clone()];
    let ws = [w.c1.clone(), w.c2.clone()];
    let mut acc = Quaternion::zero();
    for i in 0..2 {
        for j in 0..2 {
            acc = acc.add(&e[i][j].mul(&us[i].conj()).mul(&ws[j]));
        }
    }
    &form.scale * acc.trace()
}

/// The Q-basis (1, i, j, k) of B used to index evaluation grids.
fn qbasis() -> [Quaternion; 4] {
    [
        Quaternion::one(),
        Quaternion::i(),
        Quaternion::j(),
        Quaternion::k(),
    ]
}

/// Solve for the unique skew-hermitian matrix expressing the given pairing
/// in a new module basis. The 16 unknown rational coordinates are recovered
/// from the 64 pairing evaluations on Q-basis pairs, never from symbolic
/// change-of-basis formulas. The returned form has scale 1.
pub fn solve_form_matrix(
    form: &SkewHermitianForm,
    newbasis: (&QuatVector2, &QuatVector2),
) -> Result<SkewHermitianForm, String> {
    // Basis test: the 8 vectors g * l'_i must span B^2 over Q.
    let mut rows = Vec::new();
    for l in [newbasis.0, newbasis.1] {
        for g in qbasis() {
            rows.push(l.scalar_mul(&g).coords());
        }
    }
    if RatMat::from_rows(rows).rank() != 8 {
        return Err("newbasis is singular (not a B-basis of B^2)".into());
    }

    // Per entry (i, j): Tr(v'_ij conj(g) h) = <g l'_i, h l'_j> for the 16
    // basis pairs (g, h); 16 equations in the 4 coordinates of v'_ij.
    let mut entries = Vec::new();
    for li in [newbasis.0, newbasis.1] {
        for lj in [newbasis.0, newbasis.1] {
            let mut a_rows = Vec::new();
            let mut b_rows = Vec::new();
            for g in qbasis() {
                for h in qbasis() {
                    let w = g.conj().mul(&h);
                    // Tr((t1 + t2 i + t3 j + t4 k) w) is linear in t.
                    let wc = w.coords();
                    a_rows.push(vec![
                        &wc[0] + &wc[0],
                        -(&wc[1] + &wc[1]),
                        -(&wc[2] + &wc[2]),
                        -(&wc[3] + &wc[3]),
                    ]);
                    b_rows.push(vec![pairing_eval(
                        form,
                        &li.scalar_mul(&g),
                        &lj.scalar_mul(&h),
                    )]);
                }
            }
            // Solve t * A^T = b, i.e. rows of A are the coefficient vectors.
            let a = RatMat::from_rows(a_rows).transpose();
            let b = RatMat::from_rows(b_rows).transpose();
            let t = RatMat::solve_left(&a, &b)
                .ok_or("pairing is not skew-hermitian in the requested basis")?;
            entries.push(Quaternion::from_coords(&t.row(0)));
        }
    }
    SkewHermitianForm::new(
        entries[0].clone(),
        entries[1].clone(),
        entries[2].clone(),
        entries[3].clone(),
        Rat::one(),
    )
}

/// Outcome of a single named check.
#[derive(Clone, Debug)]
pub struct CheckItem {
    pub id: String,
    pub passed: bool,
    pub flagged: bool,
    pub details: String,
}

impl CheckItem {
    pub fn pass(id: &str, details: String) -> Self {
        Self {
            id: id.into(),
            passed: true,
            flagged: false,
            details,
        }
    }

    pub fn of(id: &str, passed: bool, details: String) -> Self {
        Self {
            id: id.into(),
            passed,
            flagged: false,
            details,
        }
    }

    pub fn flagged(id: &str, details: String) -> Self {
        Self {
            id: id.into(),
            passed: true,
            flagged: true,
            details,
        }
    }
}

/// Block lattice a*l1 + b*l2 in Q^8 from two lists of quaternion generators.
pub fn block_lattice(first: &[Quaternion], second: &[Quaternion]) -> ZLattice {
    let mut rows = Vec::new();
    for q in first {
        rows.push(QuatVector2::new(q.clone(), Quaternion::zero()).coords());
    }
    for q in second {
        rows.push(QuatVector2::new(Quaternion::zero(), q.clone()).coords());
    }
    ZLattice::from_rows(8, rows)
}

/// Lattice of all m * v for m running over the given order basis (left
/// module action).
pub fn left_module_lattice(coeffs: &[Quaternion], v: &QuatVector2) -> ZLattice {
    ZLattice::from_rows(
        8,
        coeffs.iter().map(|m| v.scalar_mul(m).coords()).collect(),
    )
}

/// Gram matrix of the form on a rank-n lattice basis, with determinant and
/// integrality report.
pub struct GramData {
    pub gram: RatMat,
    pub det: Rat,
    pub integral: bool,
}

pub fn gram_matrix(form: &SkewHermitianForm, lat: &ZLattice) -> GramData {
    let n = lat.rank();
    let rows = lat.basis_rows();
    let mut gram = RatMat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            gram[(i, j)] = pairing_eval(
                form,
                &QuatVector2::from_coords(&rows[i]),
                &QuatVector2::from_coords(&rows[j]),
            );
        }
    }
    let det = gram.det();
    let integral = gram.is_integral();
    GramData {
        gram,
        det,
        integral,
    }
}

/// Linear operator on Q^8 representing w2: (m1, m2) -> (-m2 u, 2 m1 u) with
/// u = (1 + i)/2, i.e. right multiplication by u tensored with
/// [[0, -1], [2, 0]] acting on the (e, f) coordinates.
pub fn w2_matrix() -> RatMat {
    let u = Quaternion::from_ints(1, 1, 0, 0).scale(&rat(1, 2));
    let mut m = RatMat::zero(8, 8);
    for (slot, g) in qbasis().iter().enumerate() {
        // e-slot basis vector g*l1 maps to 2*(g u)*l2.
        let img = g.mul(&u).scale(&rint(2));
        for (t, c) in img.coords().iter().enumerate() {
            m[(slot, 4 + t)] = c.clone();
        }
        // f-slot basis vector g*l2 maps to -(g u)*l1.
        let img = g.mul(&u).neg();
        for (t, c) in img.coords().iter().enumerate() {
            m[(4 + slot, t)] = c.clone();
        }
    }
    m
}

/// Right multiplication by q on both coordinates of B^2, as an 8x8 matrix.
pub fn right_mul_matrix(q: &Quaternion) -> RatMat {
    let mut m = RatMat::zero(8, 8);
    for (slot, g) in qbasis().iter().enumerate() {
        let img = g.mul(q);
        for (t, c) in img.coords().iter().enumerate() {
            m[(slot, t)] = c.clone();
            m[(4 + slot, 4 + t)] = c.clone();
        }
    }
    m
}

fn apply_mat(v: &QuatVector2, m: &RatMat) -> QuatVector2 {
    let row = RatMat::from_rows(vec![v.coords()]);
    QuatVector2::from_coords(&row.mul(m).row(0))
}

/// Verification bundle for the distinguished lattices:
/// A = M' e + M' f with the split symplectic pairing at scale 1/2, and
/// B = M e + P f with the same pairing.
pub fn verify_named_lattices() -> Vec<CheckItem> {
    let mut out = Vec::new();
    let m_basis = order_basis(OrderName::HurwitzM);
    let mp_basis = order_basis(OrderName::LipschitzMprime);
    let p_basis = order_basis(OrderName::IdealP);
    let form_half = SkewHermitianForm::split_symplectic(rat(1, 2));
    let form_one = SkewHermitianForm::split_symplectic(Rat::one());

    // A-lattice: product structure, unimodular symplectic Gram.
    let a_lat = block_lattice(&mp_basis, &mp_basis);
    let ga = gram_matrix(&form_half, &a_lat);
    let sym = {
        // Standard rank-8 symplectic matrix [[0, I], [-I, 0]].
        let mut s = RatMat::zero(8, 8);
        for t in 0..4 {
            s[(t, 4 + t)] = rint(1);
            s[(4 + t, t)] = rint(-1);
        }
        s
    };
    out.push(CheckItem::of(
        "product-lattice-gram",
        ga.integral && ga.det == rint(1) && ga.gram == sym,
        format!("det = {}, integral = {}", ga.det, ga.integral),
    ));

    // B-lattice: integrality and principality at scale 1/2; determinant 256
    // at scale 1.
    let b_lat = block_lattice(&m_basis, &p_basis);
    let gb = gram_matrix(&form_half, &b_lat);
    out.push(CheckItem::of(
        "half-trace-gram-principal",
        gb.integral && gb.det == rint(1),
        format!("det = {}, integral = {}", gb.det, gb.integral),
    ));
    let gb1 = gram_matrix(&form_one, &b_lat);
    out.push(CheckItem::of(
        "full-trace-gram-det",
        gb1.det == rint(256),
        format!("det = {}", gb1.det),
    ));

    // Stability under the left action of each M basis element.
    let stable = m_basis.iter().all(|m| {
        b_lat
            .basis_rows()
            .iter()
            .all(|r| b_lat.contains(&QuatVector2::from_coords(r).scalar_mul(m).coords()))
    });
    out.push(CheckItem::of(
        "order-action-stability",
        stable,
        "left multiplication by each basis element of M preserves Me+Pf".into(),
    ));

    // Lattice identity: 2M (e/2, f) + P (e, f) = M e + P f.
    let two_m: Vec<Quaternion> = m_basis.iter().map(|q| q.scale(&rint(2))).collect();
    let half_e = block_lattice(
        &two_m.iter().map(|q| q.scale(&rat(1, 2))).collect::<Vec<_>>(),
        &two_m,
    );
    let p_ef = block_lattice(&p_basis, &p_basis);
    let combined = half_e.sum(&p_ef);
    out.push(CheckItem::of(
        "isogeny-lattice-identity",
        combined == b_lat,
        "2M(e/2, f) + P(e, f) equals Me+Pf".into(),
    ));

    // W2 preserves the lattice.
    let w2 = w2_matrix();
    let image = b_lat.apply(&w2);
    out.push(CheckItem::of(
        "w2-lattice-stability",
        image == b_lat,
        "w2(Me+Pf) = Me+Pf".into(),
    ));

    // W2 preserves the pairing on all 64 basis pairs.
    let rows = b_lat.basis_rows();
    let mut pairing_ok = true;
    for ri in &rows {
        for rj in &rows {
            let x = QuatVector2::from_coords(ri);
            let y = QuatVector2::from_coords(rj);
            if pairing_eval(&form_half, &apply_mat(&x, &w2), &apply_mat(&y, &w2))
                != pairing_eval(&form_half, &x, &y)
            {
                pairing_ok = false;
            }
        }
    }
    out.push(CheckItem::of(
        "w2-pairing-preservation",
        pairing_ok,
        "pairing values agree on all basis pairs".into(),
    ));

    // W2 squared = right multiplication by -i on both coordinates.
    let w2sq = w2.mul(&w2);
    let neg_i = right_mul_matrix(&Quaternion::i().neg());
    out.push(CheckItem::of(
        "w2-squared",
        w2sq == neg_i,
        "w2 o w2 equals right multiplication by -i".into(),
    ));

    // Ambiguous display: test the literal left-module readings of
    // "M l1 + M l2 = P l'1 + l'2 M" for both sign variants of l'1.
    let l1 = QuatVector2::l1();
    let l2 = QuatVector2::l2();
    let m_l = block_lattice(&m_basis, &m_basis);
    let mut variants = String::new();
    for (name, sign) in [("minus", -1i64), ("plus", 1i64)] {
        let lp1 = l1
            .scalar_mul(&Quaternion::from_ints(-1, -1, 0, 0))
            .add(&l2.scalar_mul(&Quaternion::from_ints(0, sign, 0, sign)));
        let rhs = left_module_lattice(&p_basis, &lp1).sum(&left_module_lattice(&m_basis, &l2));
        variants.push_str(&format!(
            "[{} variant: P l'1 + M l'2 {} M l1 + M l2] ",
            name,
            if rhs == m_l { "=" } else { "!=" }
        ));
    }
    out.push(CheckItem::flagged(
        "module-basis-display",
        format!(
            "literal left-module reading of the displayed lattice equality; {}",
            variants
        ),
    ));

    out
}

/// The kernel identities for chi(x, y) = x(i-1) + y(j-1) and
/// psi(x) = (x(i-1), x(j-1)).
pub fn lemma_kernel_checks() -> Vec<CheckItem> {
    let mut out = Vec::new();
    let i = Quaternion::i();
    let j = Quaternion::j();
    let one = Quaternion::one();
    let i_m1 = i.sub(&one);
    let j_m1 = j.sub(&one);

    let chi = |x: &Quaternion, y: &Quaternion| x.mul(&i_m1).add(&y.mul(&j_m1));
    let psi = |x: &Quaternion| QuatVector2::new(x.mul(&i_m1), x.mul(&j_m1));

    // z = (i+1, -j-1) is annihilated by chi.
    let z = QuatVector2::new(
        Quaternion::from_ints(1, 1, 0, 0),
        Quaternion::from_ints(-1, 0, -1, 0),
    );
    let chi_z = chi(&z.c1, &z.c2);
    out.push(CheckItem::of(
        "kernel-generator",
        chi_z.is_zero(),
        format!("chi(i+1, -j-1) = {:?}", chi_z),
    ));

    let mp_basis = order_basis(OrderName::LipschitzMprime);
    let m_basis = order_basis(OrderName::HurwitzM);
    let mp2 = block_lattice(&mp_basis, &mp_basis);

    // Ker chi as a Q-subspace of Q^8: row space of the kernel of the 8x4
    // matrix of chi.
    let mut chi_mat = RatMat::zero(8, 4);
    for (slot, g) in qbasis().iter().enumerate() {
        for (t, c) in g.mul(&i_m1).coords().iter().enumerate() {
            chi_mat[(slot, t)] = c.clone();
        }
        for (t, c) in g.mul(&j_m1).coords().iter().enumerate() {
            chi_mat[(4 + slot, t)] = c.clone();
        }
    }
    let (_, chi_int) = chi_mat.clear_denominators();
    let ker_chi = RatMat::from_int(&chi_int.left_kernel());
    let inter = mp2.intersect_subspace(&ker_chi);
    out.push(CheckItem::of(
        "kernel-intersection-rank",
        inter.rank() == 4,
        format!("rank of (M'+M') ∩ Ker chi = {}", inter.rank()),
    ));
    let mz = left_module_lattice(&m_basis, &z);
    out.push(CheckItem::of(
        "kernel-intersection-lattice",
        inter == mz,
        "(M'+M') ∩ Ker chi = M(i+1, -j-1)".into(),
    ));

    // u*(i+1, -j-1) lies in M'+M'.
    let uz = z.scalar_mul(&Quaternion::u_hat());
    out.push(CheckItem::of(
        "half-multiple-integral",
        mp2.contains(&uz.coords()),
        format!("u z = ({:?}, {:?})", uz.c1, uz.c2),
    ));

    // (M'+M') ∩ psi(B) = psi(M).
    let psi_rows: Vec<Vec<Rat>> = qbasis().iter().map(|g| psi(g).coords()).collect();
    let psi_space = RatMat::from_rows(psi_rows);
    let inter_psi = mp2.intersect_subspace(&psi_space);
    let psi_m = ZLattice::from_rows(8, m_basis.iter().map(|g| psi(g).coords()).collect());
    out.push(CheckItem::of(
        "graph-intersection",
        inter_psi == psi_m,
        "(M'+M') ∩ psi(B) = psi(M)".into(),
    ));

    // (M'+M') + psi(B) = M(1,0) + psi(B): compare images in B^2/psi(B).
    // Coordinates on the quotient: extend psi(B) to a basis of Q^8 and read
    // off the complementary coefficients.
    let mut ext_rows: Vec<Vec<Rat>> = (0..4).map(|r| psi_space.row(r)).collect();
    let mut added = Vec::new();
    for e in 0..8 {
        let mut cand = vec![Rat::zero(); 8];
        cand[e] = Rat::one();
        let mut test = ext_rows.clone();
        test.push(cand.clone());
        if RatMat::from_rows(test.clone()).rank() == ext_rows.len() + 1 {
            ext_rows.push(cand);
            added.push(e);
            if ext_rows.len() == 8 {
                break;
            }
        }
    }
    let ext = RatMat::from_rows(ext_rows);
    let project = |l: &ZLattice| -> ZLattice {
        let coords = RatMat::solve_left(
            &ext,
            &RatMat::from_rows(l.basis_rows()),
        )
        .expect("extension is a basis");
        let mut rows = Vec::new();
        for r in 0..coords.rows {
            rows.push((4..8).map(|c| coords[(r, c)].clone()).collect());
        }
        ZLattice::from_rows(4, rows)
    };
    let m_10 = left_module_lattice(&m_basis, &QuatVector2::l1());
    let q_lhs = project(&mp2);
    let q_rhs = project(&m_10);
    out.push(CheckItem::of(
        "sum-decomposition",
        q_lhs == q_rhs,
        "(M'+M') + psi(B) = M(1,0) + psi(B) in B^2/psi(B)".into(),
    ));

    // Directness: M(1,0) ∩ psi(B) = 0.
    let direct = m_10.intersect_subspace(&psi_space);
    out.push(CheckItem::of(
        "sum-directness",
        direct.rank() == 0,
        format!("rank of M(1,0) ∩ psi(B) = {}", direct.rank()),
    ));

    out
}
