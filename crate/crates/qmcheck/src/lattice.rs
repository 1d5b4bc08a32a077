//! Finitely generated Z-lattices inside a fixed rational coordinate space.
//!
//! A lattice is stored through its canonical basis: scale the generators by
//! the minimal d making them integral, take the row Hermite normal form,
//! divide back by d. Two lattices are equal iff their canonical forms are
//! identical, which turns every identity we need to verify into a matrix
//! comparison.

use crate::matrix::RatMat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZLattice {
    pub ambient_dim: usize,
    /// Canonical (Hermite-reduced) basis rows; empty for the zero lattice.
    canon: RatMat,
}

impl ZLattice {
    pub fn from_rows(ambient_dim: usize, rows: Vec<Vec<BigRational>>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), ambient_dim, "generator has wrong dimension");
        }
        let raw = RatMat::from_rows(rows);
        Self::from_mat(ambient_dim, &raw)
    }

    pub fn from_mat(ambient_dim: usize, raw: &RatMat) -> Self {
        if raw.rows == 0 {
            return Self::zero(ambient_dim);
        }
        let (d, int) = raw.clear_denominators();
        let h = int.hnf();
        let dr = BigRational::from_integer(d);
        let canon = RatMat::from_int(&h).scale(&(BigRational::one() / dr));
        Self { ambient_dim, canon }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            canon: RatMat::zero(0, ambient_dim),
        }
    }

    pub fn rank(&self) -> usize {
        self.canon.rows
    }

    pub fn basis(&self) -> &RatMat {
        &self.canon
    }

    pub fn basis_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.canon.rows).map(|i| self.canon.row(i)).collect()
    }

    pub fn scale(&self, s: &BigRational) -> ZLattice {
        assert!(!s.is_zero());
        Self::from_mat(self.ambient_dim, &self.canon.scale(s))
    }

    /// Apply a linear map (vectors are rows, map acts as v -> v * m).
    pub fn apply(&self, m: &RatMat) -> ZLattice {
        Self::from_mat(m.cols, &self.canon.mul(m))
    }

    pub fn sum(&self, other: &ZLattice) -> ZLattice {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        Self::from_mat(self.ambient_dim, &self.canon.vstack(&other.canon))
    }

    /// Intersection, via the kernel of (x, y) -> x*A - y*B.
    pub fn intersection(&self, other: &ZLattice) -> ZLattice {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        if self.rank() == 0 || other.rank() == 0 {
            return Self::zero(self.ambient_dim);
        }
        let stacked = self.canon.vstack(&other.canon.scale(&-BigRational::one()));
        let (_, int) = stacked.clear_denominators();
        // Scaling rows does not change the kernel relation x*A = y*B as long
        // as both blocks are scaled together, which clear_denominators does.
        let kernel = int.left_kernel();
        let mut rows = Vec::new();
        for i in 0..kernel.rows {
            let mut v = vec![BigRational::zero(); self.ambient_dim];
            for r in 0..self.canon.rows {
                if kernel[(i, r)].is_zero() {
                    continue;
                }
                let c = BigRational::from_integer(kernel[(i, r)].clone());
                for (slot, val) in v.iter_mut().enumerate() {
                    *val += &c * &self.canon[(r, slot)];
                }
            }
            rows.push(v);
        }
        Self::from_rows(self.ambient_dim, rows)
    }

    /// Solve for the coordinates of v in this lattice's basis; Some iff v
    /// lies in the Q-span, integral coordinates iff v is a lattice vector.
    pub fn coordinates(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        if self.rank() == 0 {
            return if v.iter().all(|x| x.is_zero()) {
                Some(vec![])
            } else {
                None
            };
        }
        let b = RatMat::from_rows(vec![v.to_vec()]);
        let x = RatMat::solve_left(&self.canon, &b)?;
        Some(x.row(0))
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        match self.coordinates(v) {
            Some(c) => c.iter().all(|x| x.denom().is_one()),
            None => false,
        }
    }

    pub fn is_sublattice_of(&self, other: &ZLattice) -> bool {
        (0..self.canon.rows).all(|i| other.contains(&self.canon.row(i)))
    }

    /// Index [other : self] when self is a finite-index sublattice of other
    /// (same rank); None otherwise.
    pub fn index_in(&self, other: &ZLattice) -> Option<BigInt> {
        if self.rank() != other.rank() || !self.is_sublattice_of(other) {
            return None;
        }
        if self.rank() == 0 {
            return Some(BigInt::one());
        }
        let coords = RatMat::solve_left(&other.canon, &self.canon)?;
        if !coords.is_integral() {
            return None;
        }
        let (_, int) = coords.clear_denominators();
        Some(int.det().abs())
    }

    /// Intersection with a Q-subspace given by spanning rows.
    pub fn intersect_subspace(&self, subspace: &RatMat) -> ZLattice {
        assert_eq!(subspace.cols, self.ambient_dim);
        if self.rank() == 0 {
            return Self::zero(self.ambient_dim);
        }
        // Functionals vanishing on the subspace: left kernel of its transpose.
        let (_, int_t) = subspace.transpose().clear_denominators();
        let functionals = int_t.left_kernel(); // rows f with subspace * f^T = 0
        if functionals.rows == 0 {
            return self.clone();
        }
        // x * (canon * functionals^T) = 0 defines lattice vectors in the subspace.
        let constraint = self.canon.mul(&RatMat::from_int(&functionals.transpose()));
        let (_, cint) = constraint.clear_denominators();
        let kernel = cint.left_kernel();
        let coeff = RatMat::from_int(&kernel);
        Self::from_mat(self.ambient_dim, &coeff.mul(&self.canon))
    }
}

impl Serialize for ZLattice {
    /// JSON form: { "ambient_dim": n, "basis": [[rational strings]] }.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ZLattice", 2)?;
        st.serialize_field("ambient_dim", &self.ambient_dim)?;
        let rows: Vec<Vec<String>> = (0..self.canon.rows)
            .map(|i| {
                self.canon
                    .row(i)
                    .iter()
                    .map(|v| format!("{}/{}", v.numer(), v.denom()))
                    .collect()
            })
            .collect();
        st.serialize_field("basis", &rows)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::{rat, rint};

    fn lat(rows: &[Vec<i64>]) -> ZLattice {
        ZLattice::from_rows(
            rows[0].len(),
            rows.iter()
                .map(|r| r.iter().map(|&v| rint(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn equality_is_basis_independent() {
        let a = lat(&[vec![1, 0], vec![0, 1]]);
        let b = lat(&[vec![3, 1], vec![2, 1]]);
        assert_eq!(a, b);
    }

    #[test]
    fn sum_and_intersection() {
        let a = lat(&[vec![2, 0], vec![0, 1]]);
        let b = lat(&[vec![1, 0], vec![0, 3]]);
        let s = a.sum(&b);
        assert_eq!(s, lat(&[vec![1, 0], vec![0, 1]]));
        let i = a.intersection(&b);
        assert_eq!(i, lat(&[vec![2, 0], vec![0, 3]]));
        // Index multiplicativity on this example: [s : a][a : i] = [s : i].
        assert_eq!(
            a.index_in(&s).unwrap() * i.index_in(&a).unwrap(),
            i.index_in(&s).unwrap()
        );
    }

    #[test]
    fn index_and_membership() {
        let a = lat(&[vec![1, 0], vec![0, 1]]);
        let b = lat(&[vec![2, 0], vec![1, 3]]);
        assert_eq!(b.index_in(&a).unwrap(), BigInt::from(6));
        assert_eq!(a.index_in(&a).unwrap(), BigInt::one());
        assert!(b.is_sublattice_of(&a));
        assert!(!a.is_sublattice_of(&b));
        assert!(b.contains(&[rint(3), rint(3)]));
        assert!(!b.contains(&[rint(1), rint(0)]));
        // Rank mismatch has no index.
        let line = lat(&[vec![1, 0]]);
        assert!(line.index_in(&a).is_none());
    }

    #[test]
    fn rational_lattices_canonicalize() {
        let half = ZLattice::from_rows(
            2,
            vec![vec![rat(1, 2), rat(1, 2)], vec![rint(0), rint(1)]],
        );
        let same = ZLattice::from_rows(
            2,
            vec![vec![rat(1, 2), rat(3, 2)], vec![rint(0), rint(-1)]],
        );
        assert_eq!(half, same);
        assert_eq!(half.rank(), 2);
        assert!(half.contains(&[rat(1, 2), rat(1, 2)]));
        assert!(!half.contains(&[rat(1, 2), rint(0)]));
    }

    #[test]
    fn subspace_intersection() {
        let l = lat(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        // Plane x = y.
        let v = RatMat::from_rows(vec![
            vec![rint(1), rint(1), rint(0)],
            vec![rint(0), rint(0), rint(1)],
        ]);
        let inter = l.intersect_subspace(&v);
        assert_eq!(inter, lat(&[vec![1, 1, 0], vec![0, 0, 1]]));
        assert_eq!(inter.rank(), 2);
    }
}
