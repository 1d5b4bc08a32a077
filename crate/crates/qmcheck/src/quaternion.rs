//! Exact arithmetic in the Hamilton quaternion algebra B over Q.
//!
//! B is spanned by 1, i, j, k with i^2 = j^2 = k^2 = -1 and ij = k = -ji.
//! The module houses the two orders of interest and the distinguished
//! two-sided ideal between them:
//!
//! - Lipschitz order M' = Z<1, i, j, k>
//! - Hurwitz order  M  = Z u + M', where u = (1 + i + j + k)/2
//! - the ideal      P  = (1 + i) M, two-sided, of index 4 in M
//!
//! Everything is computed against fixed published Z-bases, so indices and
//! Hermite forms are canonical.

use crate::lattice::ZLattice;
use crate::matrix::RatMat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::fmt;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rint(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// An element of B, stored as exact rational coordinates in the basis
/// (1, i, j, k).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quaternion {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

impl Quaternion {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Self {
        Self { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(rint(a), rint(b), rint(c), rint(d))
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0, 0, 0)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Self::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Self::from_ints(0, 0, 0, 1)
    }

    /// u = (1 + i + j + k)/2, the extra generator of the Hurwitz order.
    pub fn u_hat() -> Self {
        Self::new(rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2))
    }

    pub fn scalar(r: Rat) -> Self {
        Self::new(r, Rat::zero(), Rat::zero(), Rat::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn coords(&self) -> [Rat; 4] {
        [self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone()]
    }

    pub fn from_coords(v: &[Rat]) -> Self {
        assert_eq!(v.len(), 4);
        Self::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.a + &o.a, &self.b + &o.b, &self.c + &o.c, &self.d + &o.d)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.a - &o.a, &self.b - &o.b, &self.c - &o.c, &self.d - &o.d)
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.a.clone(), -self.b.clone(), -self.c.clone(), -self.d.clone())
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self::new(s * &self.a, s * &self.b, s * &self.c, s * &self.d)
    }

    /// Quaternion product. The sign conventions follow ij = k, jk = i,
    /// ki = j.
    pub fn mul(&self, o: &Self) -> Self {
        let (a1, b1, c1, d1) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&o.a, &o.b, &o.c, &o.d);
        Self::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }

    /// Reduced trace Tr(q) = 2 a.
    pub fn trace(&self) -> Rat {
        &self.a + &self.a
    }

    /// Main involution (conjugation): q bar = Tr(q) - q.
    pub fn conj(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone(), -self.c.clone(), -self.d.clone())
    }

    /// Reduced norm Nm(q) = q * q bar = a^2 + b^2 + c^2 + d^2.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a + &self.b * &self.b + &self.c * &self.c + &self.d * &self.d
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(self.conj().scale(&(Rat::one() / n)))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Debug for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {} i + {} j + {} k)", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{},{}]", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for Quaternion {
    /// Four lowest-terms rational strings "p/q" in the order (1, i, j, k).
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(4))?;
        for c in self.coords() {
            seq.serialize_element(&format!("{}/{}", c.numer(), c.denom()))?;
        }
        seq.end()
    }
}

/// The three named lattices in B.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OrderName {
    LipschitzMprime,
    HurwitzM,
    IdealP,
}

/// Fixed Z-basis of the given lattice. These choices are what makes every
/// index and Hermite computation canonical:
/// M' = <1, i, j, k>, M = <1, i, j, u>, P = (1 + i) * (basis of M).
pub fn order_basis(o: OrderName) -> Vec<Quaternion> {
    match o {
        OrderName::LipschitzMprime => vec![
            Quaternion::one(),
            Quaternion::i(),
            Quaternion::j(),
            Quaternion::k(),
        ],
        OrderName::HurwitzM => vec![
            Quaternion::one(),
            Quaternion::i(),
            Quaternion::j(),
            Quaternion::u_hat(),
        ],
        OrderName::IdealP => {
            let g = Quaternion::one().add(&Quaternion::i());
            order_basis(OrderName::HurwitzM)
                .iter()
                .map(|b| g.mul(b))
                .collect()
        }
    }
}

/// The lattice in Q^4 spanned by an order basis.
pub fn order_lattice(o: OrderName) -> ZLattice {
    ZLattice::from_rows(
        4,
        order_basis(o)
            .iter()
            .map(|q| q.coords().to_vec())
            .collect(),
    )
}

/// Membership test against the published Z-basis, by solving the integer
/// linear system.
pub fn order_membership(q: &Quaternion, o: OrderName) -> bool {
    order_lattice(o).contains(&q.coords())
}

/// Conjugate, reduced trace and reduced norm of q, bundled.
pub fn involution_data(q: &Quaternion) -> (Quaternion, Rat, Rat) {
    (q.conj(), q.trace(), q.norm())
}

/// All norm-1 elements of the order, found by exhaustive search over the
/// half-integer coordinate box |x| <= 1 (a norm-1 element has every
/// coordinate of absolute value at most 1).
pub fn unit_group(o: OrderName) -> Result<Vec<Quaternion>, String> {
    if o == OrderName::IdealP {
        return Err("the ideal P is not a ring and has no unit group".into());
    }
    let mut units = Vec::new();
    let halves: Vec<Rat> = (-2..=2).map(|n| rat(n, 2)).collect();
    for a in &halves {
        for b in &halves {
            for c in &halves {
                for d in &halves {
                    let q = Quaternion::new(a.clone(), b.clone(), c.clone(), d.clone());
                    if q.norm().is_one() && order_membership(&q, o) {
                        units.push(q);
                    }
                }
            }
        }
    }
    // Closure under product and inverse.
    for u in &units {
        let inv = u.inverse().expect("unit is invertible");
        assert!(units.contains(&inv), "unit group not closed under inverse");
        for w in &units {
            assert!(units.contains(&u.mul(w)), "unit group not closed under product");
        }
    }
    Ok(units)
}

/// Data sheet for the ideal P = (1 + i) M.
pub struct IdealPData {
    pub basis: Vec<Quaternion>,
    pub index_in_m: BigInt,
    pub index_in_mprime: BigInt,
    pub two_sided: bool,
    pub trace_even: bool,
}

pub fn ideal_p_data() -> IdealPData {
    let basis = order_basis(OrderName::IdealP);
    let p = order_lattice(OrderName::IdealP);
    let m = order_lattice(OrderName::HurwitzM);
    let mp = order_lattice(OrderName::LipschitzMprime);
    let index_in_m = p.index_in(&m).expect("P is a finite-index sublattice of M");
    let index_in_mprime = p
        .index_in(&mp)
        .expect("P is a finite-index sublattice of M'");
    // (1 + i) M = M (1 + i) as lattices.
    let g = Quaternion::one().add(&Quaternion::i());
    let right = ZLattice::from_rows(
        4,
        order_basis(OrderName::HurwitzM)
            .iter()
            .map(|b| b.mul(&g).coords().to_vec())
            .collect(),
    );
    let two_sided = p == right;
    let trace_even = basis.iter().all(|q| {
        let t = q.trace();
        t.denom().is_one() && (t.numer() % BigInt::from(2)).is_zero()
    });
    IdealPData {
        basis,
        index_in_m,
        index_in_mprime,
        two_sided,
        trace_even,
    }
}

/// P * P as a lattice (span of pairwise products of basis elements).
pub fn ideal_p_squared() -> ZLattice {
    let basis = order_basis(OrderName::IdealP);
    let mut rows = Vec::new();
    for x in &basis {
        for y in &basis {
            rows.push(x.mul(y).coords().to_vec());
        }
    }
    ZLattice::from_rows(4, rows)
}

/// The 16-element quotient ring M'/2M' and its identification with
/// F2[e, e'] / (e^2, e'^2) via 1 + i -> e, 1 + j -> e'.
pub struct Mod2Quotient {
    /// Multiplication table of the 4-element F2-basis (1, 1+i, 1+j, (1+i)(1+j)),
    /// entries expressed in the same basis.
    pub table: [[[u8; 4]; 4]; 4],
    pub is_isomorphic: bool,
    pub two_u_image: [u8; 4],
}

/// Reduce q in M' to its coordinate vector mod 2 in the basis (1, i, j, k).
fn mod2_vec(q: &Quaternion) -> [u8; 4] {
    let co = q.coords();
    let mut out = [0u8; 4];
    for (t, c) in out.iter_mut().zip(co.iter()) {
        assert!(c.denom().is_one(), "element is not in M'");
        *t = (c.numer() % BigInt::from(2)).abs().to_string().parse().unwrap();
    }
    out
}

/// Change coordinates mod 2 from the (1, i, j, k) basis to the
/// (1, 1+i, 1+j, (1+i)(1+j)) basis.
fn to_eps_basis(v: [u8; 4]) -> [u8; 4] {
    // 1+i = (1,1,0,0), 1+j = (1,0,1,0), (1+i)(1+j) = 1+i+j+k = (1,1,1,1).
    // Inverting that change of basis over F2: given (a, b, c, d) in (1,i,j,k):
    // coefficient of eps*eps' is d; of eps is b-d; of eps' is c-d;
    // of 1 is a - (b-d) - (c-d) - d = a + b + c + d (mod 2).
    let d = v[3];
    let b = (v[1] + d) % 2;
    let c = (v[2] + d) % 2;
    let a = (v[0] + v[1] + v[2] + v[3]) % 2;
    [a, b, c, d]
}

pub fn mod2_quotient_table() -> Mod2Quotient {
    let one = Quaternion::one();
    let e = one.add(&Quaternion::i());
    let ep = one.add(&Quaternion::j());
    let basis = [one.clone(), e.clone(), ep.clone(), e.mul(&ep)];
    let mut table = [[[0u8; 4]; 4]; 4];
    let mut is_isomorphic = true;
    for (x, bx) in basis.iter().enumerate() {
        for (y, by) in basis.iter().enumerate() {
            let prod = to_eps_basis(mod2_vec(&bx.mul(by)));
            table[x][y] = prod;
            // In F2[e, e']/(e^2, e'^2) the basis monomials multiply by
            // truncation: the product of basis elements x, y written as
            // monomials e^s e'^t vanishes when degrees overflow.
            let (sx, tx) = ((x == 1 || x == 3) as u8, (x == 2 || x == 3) as u8);
            let (sy, ty) = ((y == 1 || y == 3) as u8, (y == 2 || y == 3) as u8);
            let mut expect = [0u8; 4];
            if sx + sy <= 1 && tx + ty <= 1 {
                let idx = match (sx + sy, tx + ty) {
                    (0, 0) => 0,
                    (1, 0) => 1,
                    (0, 1) => 2,
                    (1, 1) => 3,
                    _ => unreachable!(),
                };
                expect[idx] = 1;
            }
            if prod != expect {
                is_isomorphic = false;
            }
        }
    }
    let two_u = Quaternion::u_hat().scale(&rint(2));
    let two_u_image = to_eps_basis(mod2_vec(&two_u));
    Mod2Quotient {
        table,
        is_isomorphic,
        two_u_image,
    }
}

/// Express q in the given basis over Q (None if q is outside the span).
pub fn in_basis(q: &Quaternion, basis: &[Quaternion]) -> Option<Vec<Rat>> {
    let a = RatMat::from_rows(basis.iter().map(|b| b.coords().to_vec()).collect());
    let b = RatMat::from_rows(vec![q.coords().to_vec()]);
    let x = RatMat::solve_left(&a, &b)?;
    Some(x.row(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_quat(rng: &mut StdRng) -> Quaternion {
        let mut c = || rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=9));
        Quaternion::new(c(), c(), c(), c())
    }

    #[test]
    fn basis_relations() {
        let i = Quaternion::i();
        let j = Quaternion::j();
        let k = Quaternion::k();
        assert_eq!(i.mul(&j), k);
        assert_eq!(j.mul(&i), k.neg());
        assert_eq!(i.mul(&i), Quaternion::one().neg());
        assert_eq!(j.mul(&j), Quaternion::one().neg());
        assert_eq!(k.mul(&k), Quaternion::one().neg());
        assert_eq!(j.mul(&k), i);
        assert_eq!(k.mul(&i), j);
    }

    #[test]
    fn identity_multiplication() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..10 {
            let q = random_quat(&mut rng);
            assert_eq!(Quaternion::one().mul(&q), q);
            assert_eq!(q.mul(&Quaternion::one()), q);
        }
    }

    #[test]
    fn involution_examples() {
        // Tr(1 + 2i) = 2.
        let q = Quaternion::from_ints(1, 2, 0, 0);
        assert_eq!(q.trace(), rint(2));
        // conj(i) = -i.
        assert_eq!(Quaternion::i().conj(), Quaternion::i().neg());
        // Nm(u) = (1/4)(1+1+1+1) = 1.
        assert_eq!(Quaternion::u_hat().norm(), rint(1));
        // conj = Tr - q.
        let mut rng = StdRng::seed_from_u64(8);
        for _ in 0..20 {
            let q = random_quat(&mut rng);
            let lhs = q.conj();
            let rhs = Quaternion::scalar(q.trace()).sub(&q);
            assert_eq!(lhs, rhs);
            assert_eq!(Quaternion::scalar(q.norm()), q.mul(&q.conj()));
        }
    }

    #[test]
    fn membership_examples() {
        let u = Quaternion::u_hat();
        assert!(order_membership(&u, OrderName::HurwitzM));
        assert!(!order_membership(&u, OrderName::LipschitzMprime));
        assert!(order_membership(&Quaternion::one(), OrderName::LipschitzMprime));
        // (1 + i)/2 has coordinates (1/2, 1/2, 0, 0): neither all integral
        // nor all half-odd-integral, so it is outside M.
        let h = Quaternion::new(rat(1, 2), rat(1, 2), rint(0), rint(0));
        assert!(!order_membership(&h, OrderName::HurwitzM));
        // Hurwitz membership = all-integral or all-half-odd coordinates.
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..200 {
            let ints: Vec<i64> = (0..4).map(|_| rng.gen_range(-6i64..=6)).collect();
            let half: bool = rng.gen();
            let q = Quaternion::new(
                rat(2 * ints[0] + half as i64, 2),
                rat(2 * ints[1] + half as i64, 2),
                rat(2 * ints[2] + half as i64, 2),
                rat(2 * ints[3] + half as i64, 2),
            );
            assert!(order_membership(&q, OrderName::HurwitzM));
        }
    }

    #[test]
    fn unit_group_sizes() {
        let mp = unit_group(OrderName::LipschitzMprime).unwrap();
        assert_eq!(mp.len(), 8);
        let m = unit_group(OrderName::HurwitzM).unwrap();
        assert_eq!(m.len(), 24);
        for u in &m {
            // u * conj(u) = 1 and u^-1 = conj(u).
            assert_eq!(u.mul(&u.conj()), Quaternion::one());
            assert_eq!(u.inverse().unwrap(), u.conj());
        }
        assert!(unit_group(OrderName::IdealP).is_err());
    }

    #[test]
    fn ideal_p_facts() {
        let data = ideal_p_data();
        assert_eq!(data.index_in_m, BigInt::from(4));
        assert_eq!(data.index_in_mprime, BigInt::from(2));
        assert!(data.two_sided);
        assert!(data.trace_even);
        // The published spanning set equals (1+i){1, i, j, u} by Hermite form.
        let published = ZLattice::from_rows(
            4,
            vec![
                Quaternion::from_ints(1, 1, 0, 0).coords().to_vec(),
                Quaternion::from_ints(-1, 1, 0, 0).coords().to_vec(),
                Quaternion::from_ints(0, 0, 1, 1).coords().to_vec(),
                Quaternion::from_ints(0, 1, 0, 1).coords().to_vec(),
            ],
        );
        assert_eq!(published, order_lattice(OrderName::IdealP));
        // P.P = 2M.
        let two_m = order_lattice(OrderName::HurwitzM).scale(&rint(2));
        assert_eq!(ideal_p_squared(), two_m);
    }

    #[test]
    fn order_bases_multiplicatively_closed() {
        for o in [OrderName::LipschitzMprime, OrderName::HurwitzM] {
            let basis = order_basis(o);
            for x in &basis {
                for y in &basis {
                    assert!(
                        order_membership(&x.mul(y), o),
                        "basis product escapes the order"
                    );
                }
            }
        }
    }

    #[test]
    fn mod2_quotient() {
        let q = mod2_quotient_table();
        assert!(q.is_isomorphic);
        // Image of 2u is the top monomial e e'.
        assert_eq!(q.two_u_image, [0, 0, 0, 1]);
        // (1+i)^2 = 2i = 0 mod 2M'.
        assert_eq!(q.table[1][1], [0, 0, 0, 0]);
        // ij = ji mod 2M', i.e. the quotient is commutative: checked on the
        // full table.
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(q.table[x][y], q.table[y][x]);
            }
        }
    }

    #[test]
    fn algebra_axioms_randomized() {
        let mut rng = StdRng::seed_from_u64(0xB0B);
        for _ in 0..300 {
            let p = random_quat(&mut rng);
            let q = random_quat(&mut rng);
            let r = random_quat(&mut rng);
            // Associativity and bilinearity spot checks.
            assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
            assert_eq!(p.add(&q).mul(&r), p.mul(&r).add(&q.mul(&r)));
            // Trace symmetry, anti-homomorphism of conjugation, norm
            // multiplicativity.
            assert_eq!(p.mul(&q).trace(), q.mul(&p).trace());
            assert_eq!(p.mul(&q).conj(), q.conj().mul(&p.conj()));
            assert_eq!(p.mul(&q).norm(), p.norm() * q.norm());
        }
    }

    #[test]
    fn quaternion_json_form() {
        let u = Quaternion::u_hat();
        let s = serde_json::to_string(&u).unwrap();
        assert_eq!(s, r#"["1/2","1/2","1/2","1/2"]"#);
    }
}
