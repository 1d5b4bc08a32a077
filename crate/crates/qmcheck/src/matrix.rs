//! Exact integer and rational matrices.
//!
//! Provides the linear-algebra kernels everything else is built on:
//! Hermite normal form (canonical row echelon over Z), Smith normal form
//! with unimodular transforms, Bareiss determinants, integer kernels and
//! rational linear solving. All arithmetic is arbitrary precision; there
//! is no floating point anywhere in this crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix over Z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zero(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &BigInt) -> IntMat {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= s;
        }
        out
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.cols, "dimension mismatch");
        let mut out = IntMat::zero(self.rows + other.rows, self.cols);
        out.data[..self.data.len()].clone_from_slice(&self.data);
        out.data[self.data.len()..].clone_from_slice(&other.data);
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let c = self.cols;
            self.data.swap(a * c + j, b * c + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let c = self.cols;
            self.data.swap(i * c + a, i * c + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_mul(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = q * &self[(src, j)];
            self[(dst, j)] += add;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_mul(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = q * &self[(i, src)];
            self[(i, dst)] += add;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    /// Canonical row Hermite normal form. Zero rows are dropped, pivots are
    /// positive, and entries above each pivot are reduced into [0, pivot).
    /// Two integer matrices span the same row lattice iff their HNFs agree.
    pub fn hnf(&self) -> IntMat {
        let mut m = self.clone();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            // Euclid on the column below pivot_row until one nonzero entry remains.
            loop {
                let mut best: Option<usize> = None;
                for i in pivot_row..m.rows {
                    if !m[(i, col)].is_zero() {
                        best = match best {
                            None => Some(i),
                            Some(b) => {
                                if m[(i, col)].abs() < m[(b, col)].abs() {
                                    Some(i)
                                } else {
                                    Some(b)
                                }
                            }
                        };
                    }
                }
                let Some(b) = best else { break };
                m.swap_rows(pivot_row, b);
                let mut done = true;
                for i in pivot_row + 1..m.rows {
                    if !m[(i, col)].is_zero() {
                        let q = div_floor(&m[(i, col)], &m[(pivot_row, col)]);
                        m.add_row_mul(i, pivot_row, &(-q));
                        if !m[(i, col)].is_zero() {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if m[(pivot_row, col)].is_zero() {
                continue;
            }
            if m[(pivot_row, col)].is_negative() {
                m.negate_row(pivot_row);
            }
            for i in 0..pivot_row {
                let q = div_floor(&m[(i, col)], &m[(pivot_row, col)]);
                m.add_row_mul(i, pivot_row, &(-q));
            }
            pivot_row += 1;
        }
        let mut out = IntMat::zero(pivot_row, m.cols);
        for i in 0..pivot_row {
            for j in 0..m.cols {
                out[(i, j)] = m[(i, j)].clone();
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.hnf().rows
    }

    /// Bareiss fraction-free determinant of a square matrix.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let swap = (k + 1..n).find(|&i| !m[(i, k)].is_zero());
                match swap {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = &num / &prev;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }

    /// Basis (as rows) of the left kernel { x : x * self = 0 }.
    pub fn left_kernel(&self) -> IntMat {
        let (h, u, _) = self.hnf_with_transform();
        let r = (0..h.rows)
            .take_while(|&i| !(0..h.cols).all(|j| h[(i, j)].is_zero()))
            .count();
        let mut out = IntMat::zero(self.rows - r, self.rows);
        for i in r..self.rows {
            for j in 0..self.rows {
                out[(i - r, j)] = u[(i, j)].clone();
            }
        }
        out
    }

    /// Row Hermite reduction with transform tracking: returns (h, u, uinv)
    /// with h = u * self, u unimodular, h in row echelon form with positive
    /// pivots and entries above each pivot reduced; zero rows are kept at
    /// the bottom so that u keeps the full size.
    pub fn hnf_with_transform(&self) -> (IntMat, IntMat, IntMat) {
        let mut m = self.clone();
        let rows = self.rows;
        let mut u = IntMat::identity(rows);
        let mut uinv = IntMat::identity(rows);
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            loop {
                let mut best: Option<usize> = None;
                for i in pivot_row..rows {
                    if !m[(i, col)].is_zero() {
                        best = match best {
                            None => Some(i),
                            Some(b) => {
                                if m[(i, col)].abs() < m[(b, col)].abs() {
                                    Some(i)
                                } else {
                                    Some(b)
                                }
                            }
                        };
                    }
                }
                let Some(b) = best else { break };
                m.swap_rows(pivot_row, b);
                u.swap_rows(pivot_row, b);
                uinv.swap_cols(pivot_row, b);
                let mut done = true;
                for i in pivot_row + 1..rows {
                    if !m[(i, col)].is_zero() {
                        let q = div_floor(&m[(i, col)], &m[(pivot_row, col)]);
                        m.add_row_mul(i, pivot_row, &(-q.clone()));
                        u.add_row_mul(i, pivot_row, &(-q.clone()));
                        uinv.add_col_mul(pivot_row, i, &q);
                        if !m[(i, col)].is_zero() {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if m[(pivot_row, col)].is_zero() {
                continue;
            }
            if m[(pivot_row, col)].is_negative() {
                m.negate_row(pivot_row);
                u.negate_row(pivot_row);
                uinv.negate_col(pivot_row);
            }
            for i in 0..pivot_row {
                let q = div_floor(&m[(i, col)], &m[(pivot_row, col)]);
                m.add_row_mul(i, pivot_row, &(-q.clone()));
                u.add_row_mul(i, pivot_row, &(-q.clone()));
                uinv.add_col_mul(pivot_row, i, &q);
            }
            pivot_row += 1;
        }
        (m, u, uinv)
    }

    fn is_ordered_diagonal(&self) -> bool {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j && !self[(i, j)].is_zero() {
                    return false;
                }
            }
        }
        let mut seen_zero = false;
        for t in 0..self.rows.min(self.cols) {
            if self[(t, t)].is_zero() {
                seen_zero = true;
            } else if seen_zero || self[(t, t)].is_negative() {
                return false;
            }
        }
        true
    }

    /// Smith normal form: returns (u, d, v) with u * self * v = d diagonal,
    /// u and v unimodular, and successive divisibility of the diagonal.
    ///
    /// Diagonalization alternates row and column Hermite reduction, which
    /// keeps every intermediate entry reduced below the current pivots (the
    /// naive single-pivot sweep explodes on random 20x20 inputs). The
    /// divisibility ladder is then enforced by local 2x2 eliminations.
    pub fn smith(&self) -> Smith {
        let rows = self.rows;
        let cols = self.cols;
        let mut a = self.clone();
        let mut u = IntMat::identity(rows);
        let mut uinv = IntMat::identity(rows);
        let mut v = IntMat::identity(cols);
        let mut vinv = IntMat::identity(cols);

        let mut rounds = 0;
        while !a.is_ordered_diagonal() {
            rounds += 1;
            assert!(rounds < 1000, "smith alternation failed to converge");
            let (h, p, pinv) = a.hnf_with_transform();
            u = p.mul(&u);
            uinv = uinv.mul(&pinv);
            a = h;
            if a.is_ordered_diagonal() {
                break;
            }
            let (h, p, pinv) = a.transpose().hnf_with_transform();
            v = v.mul(&p.transpose());
            vinv = pinv.transpose().mul(&vinv);
            a = h.transpose();
        }

        // Divisibility ladder: for each pair i < j replace (d_i, d_j) by
        // (gcd, lcm) through an explicit 2x2 elimination.
        let r = (0..rows.min(cols))
            .filter(|&t| !a[(t, t)].is_zero())
            .count();
        for i in 0..r {
            for j in i + 1..r {
                if (&a[(j, j)] % &a[(i, i)]).is_zero() {
                    continue;
                }
                let block = IntMat::from_big_rows(vec![
                    vec![a[(i, i)].clone(), BigInt::zero()],
                    vec![BigInt::zero(), a[(j, j)].clone()],
                ]);
                let s2 = block.smith_small_2x2();
                a[(i, i)] = s2.d[(0, 0)].clone();
                a[(j, j)] = s2.d[(1, 1)].clone();
                apply_2x2_rows(&mut u, i, j, &s2.u);
                apply_2x2_cols(&mut uinv, i, j, &s2.uinv);
                apply_2x2_cols(&mut v, i, j, &s2.v);
                apply_2x2_rows(&mut vinv, i, j, &s2.vinv);
            }
        }

        Smith {
            u,
            uinv,
            d: a,
            v,
            vinv,
        }
    }

    /// Closed-form Smith decomposition of diag(a, b) with a, b > 0:
    /// with g = gcd = x a + y b and l = a b / g,
    ///   U = [[x, y], [-b/g, a/g]],  V = [[1, -y b/g], [1, x a/g]]
    /// give U diag(a, b) V = diag(g, l), both transforms of determinant 1.
    fn smith_small_2x2(&self) -> Smith {
        assert_eq!((self.rows, self.cols), (2, 2));
        let a = self[(0, 0)].clone();
        let b = self[(1, 1)].clone();
        assert!(
            a.is_positive() && b.is_positive() && self[(0, 1)].is_zero() && self[(1, 0)].is_zero(),
            "2x2 smith expects a positive diagonal input"
        );
        let ext = num_integer::Integer::extended_gcd(&a, &b);
        let (g, x, y) = (ext.gcd, ext.x, ext.y);
        let ag = &a / &g;
        let bg = &b / &g;
        let l = &ag * &b;
        let u = IntMat::from_big_rows(vec![vec![x.clone(), y.clone()], vec![-bg.clone(), ag.clone()]]);
        let uinv = IntMat::from_big_rows(vec![vec![ag.clone(), -y.clone()], vec![bg.clone(), x.clone()]]);
        let v = IntMat::from_big_rows(vec![
            vec![BigInt::one(), -(&y * &bg)],
            vec![BigInt::one(), &x * &ag],
        ]);
        let vinv = IntMat::from_big_rows(vec![
            vec![&x * &ag, &y * &bg],
            vec![-BigInt::one(), BigInt::one()],
        ]);
        let d = IntMat::from_big_rows(vec![vec![g, BigInt::zero()], vec![BigInt::zero(), l]]);
        debug_assert_eq!(u.mul(self).mul(&v), d);
        debug_assert_eq!(u.mul(&uinv), IntMat::identity(2));
        debug_assert_eq!(v.mul(&vinv), IntMat::identity(2));
        Smith {
            u,
            uinv,
            d,
            v,
            vinv,
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith decomposition u * m * v = d, with inverses of the transforms.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMat,
    pub uinv: IntMat,
    pub d: IntMat,
    pub v: IntMat,
    pub vinv: IntMat,
}

impl Smith {
    pub fn nonzero_count(&self) -> usize {
        let n = self.d.rows.min(self.d.cols);
        (0..n).filter(|&i| !self.d[(i, i)].is_zero()).count()
    }

    /// Nontrivial elementary divisors (> 1), in divisibility order.
    pub fn torsion(&self) -> Vec<BigInt> {
        let n = self.d.rows.min(self.d.cols);
        (0..n)
            .map(|i| self.d[(i, i)].clone())
            .filter(|v| !v.is_zero() && !v.is_one())
            .collect()
    }
}

fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::div_floor(a, b)
}

/// Rows (i, j) of m <- block * (row_i, row_j) for a 2x2 block.
fn apply_2x2_rows(m: &mut IntMat, i: usize, j: usize, block: &IntMat) {
    for c in 0..m.cols {
        let ri = m[(i, c)].clone();
        let rj = m[(j, c)].clone();
        m[(i, c)] = &block[(0, 0)] * &ri + &block[(0, 1)] * &rj;
        m[(j, c)] = &block[(1, 0)] * &ri + &block[(1, 1)] * &rj;
    }
}

/// Columns (i, j) of m <- (col_i, col_j) * block for a 2x2 block.
fn apply_2x2_cols(m: &mut IntMat, i: usize, j: usize, block: &IntMat) {
    for r in 0..m.rows {
        let ci = m[(r, i)].clone();
        let cj = m[(r, j)].clone();
        m[(r, i)] = &ci * &block[(0, 0)] + &cj * &block[(1, 0)];
        m[(r, j)] = &ci * &block[(0, 1)] + &cj * &block[(1, 1)];
    }
}

/// Dense row-major matrix over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigRational>,
}

impl RatMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zero(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, val) in row.into_iter().enumerate() {
                m[(i, j)] = val;
            }
        }
        m
    }

    pub fn from_int(m: &IntMat) -> Self {
        let mut out = Self::zero(m.rows, m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                out[(i, j)] = BigRational::from_integer(m[(i, j)].clone());
            }
        }
        out
    }

    pub fn row(&self, i: usize) -> Vec<BigRational> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = RatMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn vstack(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.cols, "dimension mismatch");
        let mut out = RatMat::zero(self.rows + other.rows, self.cols);
        out.data[..self.data.len()].clone_from_slice(&self.data);
        out.data[self.data.len()..].clone_from_slice(&other.data);
        out
    }

    pub fn transpose(&self) -> RatMat {
        let mut t = RatMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0usize;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                let c = m.cols;
                m.data.swap(rank * c + j, p * c + j);
            }
            for i in 0..m.rows {
                if i != rank && !m[(i, col)].is_zero() {
                    let f = &m[(i, col)] / &m[(rank, col)];
                    for j in col..m.cols {
                        let sub = &f * &m[(rank, j)];
                        m[(i, j)] -= sub;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn det(&self) -> BigRational {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !m[(i, col)].is_zero()) else {
                return BigRational::zero();
            };
            if p != col {
                for j in 0..n {
                    m.data.swap(col * n + j, p * n + j);
                }
                det = -det;
            }
            det *= m[(col, col)].clone();
            for i in col + 1..n {
                if !m[(i, col)].is_zero() {
                    let f = &m[(i, col)] / &m[(col, col)];
                    for j in col..n {
                        let sub = &f * &m[(col, j)];
                        m[(i, j)] -= sub;
                    }
                }
            }
        }
        det
    }

    /// Solve x * a = b for each row of b; returns the matrix of solutions
    /// (rows correspond to rows of b), or None if any system is inconsistent.
    /// When the rows of `a` are dependent a particular solution is returned.
    pub fn solve_left(a: &RatMat, b: &RatMat) -> Option<RatMat> {
        assert_eq!(a.cols, b.cols, "dimension mismatch");
        // Gaussian elimination on the transposed system a^T x^T = b^T.
        let at = a.transpose();
        let bt = b.transpose();
        let n = at.rows; // equations
        let m = at.cols; // unknowns
        let k = bt.cols; // right-hand sides
        let mut aug = RatMat::zero(n, m + k);
        for i in 0..n {
            for j in 0..m {
                aug[(i, j)] = at[(i, j)].clone();
            }
            for j in 0..k {
                aug[(i, m + j)] = bt[(i, j)].clone();
            }
        }
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut r = 0usize;
        for c in 0..m {
            if r == n {
                break;
            }
            let Some(p) = (r..n).find(|&i| !aug[(i, c)].is_zero()) else {
                continue;
            };
            for j in 0..m + k {
                let w = aug.cols;
                aug.data.swap(r * w + j, p * w + j);
            }
            let inv = aug[(r, c)].clone();
            for j in 0..m + k {
                let v = &aug[(r, j)] / &inv;
                aug[(r, j)] = v;
            }
            for i in 0..n {
                if i != r && !aug[(i, c)].is_zero() {
                    let f = aug[(i, c)].clone();
                    for j in 0..m + k {
                        let sub = &f * &aug[(r, j)];
                        aug[(i, j)] -= sub;
                    }
                }
            }
            pivots.push((r, c));
            r += 1;
        }
        // Consistency: zero rows of the coefficient part must have zero rhs.
        for i in r..n {
            for j in 0..k {
                if !aug[(i, m + j)].is_zero() {
                    return None;
                }
            }
        }
        let mut x = RatMat::zero(k, m);
        for &(pr, pc) in &pivots {
            for j in 0..k {
                x[(j, pc)] = aug[(pr, m + j)].clone();
            }
        }
        Some(x)
    }

    /// True if every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|v| v.denom().is_one())
    }

    /// Clear denominators: returns (d, m) with d > 0 minimal such that
    /// d * self is integral, and m = d * self.
    pub fn clear_denominators(&self) -> (BigInt, IntMat) {
        let mut d = BigInt::one();
        for v in &self.data {
            d = num_integer::Integer::lcm(&d, v.denom());
        }
        let mut m = IntMat::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let scaled = &self[(i, j)] * BigRational::from_integer(d.clone());
                debug_assert!(scaled.denom().is_one());
                m[(i, j)] = scaled.numer().clone();
            }
        }
        (d, m)
    }

    pub fn scale(&self, s: &BigRational) -> RatMat {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= s;
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for RatMat {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn diag_entries(d: &IntMat) -> Vec<BigInt> {
        let n = d.rows.min(d.cols);
        (0..n)
            .map(|i| d[(i, i)].clone())
            .filter(|v| !v.is_zero())
            .collect()
    }

    #[test]
    fn smith_of_diag_2_3() {
        let m = IntMat::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = m.smith();
        assert_eq!(diag_entries(&s.d), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
    }

    #[test]
    fn smith_of_zero_matrix() {
        let m = IntMat::zero(3, 2);
        let s = m.smith();
        assert_eq!(diag_entries(&s.d), Vec::<BigInt>::new());
        assert_eq!(s.torsion(), Vec::<BigInt>::new());
    }

    #[test]
    fn smith_roundtrip_random() {
        let mut rng = StdRng::seed_from_u64(0xA11CE);
        for _ in 0..100 {
            let rows = rng.gen_range(1..=20);
            let cols = rng.gen_range(1..=20);
            let m = IntMat::from_big_rows(
                (0..rows)
                    .map(|_| {
                        (0..cols)
                            .map(|_| BigInt::from(rng.gen_range(-9i64..=9)))
                            .collect()
                    })
                    .collect(),
            );
            let s = m.smith();
            // u m v = d and the transforms are unimodular.
            assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
            assert!(s.u.det().abs().is_one());
            assert!(s.v.det().abs().is_one());
            assert_eq!(s.u.mul(&s.uinv), IntMat::identity(rows));
            assert_eq!(s.vinv.mul(&s.v), IntMat::identity(cols));
            // Reassemble m = u^-1 d v^-1.
            assert_eq!(s.uinv.mul(&s.d).mul(&s.vinv), m);
            // Successive divisibility.
            let diag = diag_entries(&s.d);
            for w in diag.windows(2) {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn hnf_canonical_for_equal_lattices() {
        // Two generating sets for the same lattice.
        let a = IntMat::from_rows(&[vec![2, 1], vec![0, 3]]);
        let b = IntMat::from_rows(&[vec![2, 4], vec![2, 1], vec![4, 5]]);
        assert_eq!(a.hnf(), b.hnf());
    }

    #[test]
    fn left_kernel_annihilates() {
        let m = IntMat::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        let k = m.left_kernel();
        assert_eq!(k.rows, 1);
        assert!(k.mul(&m).is_zero());
    }

    #[test]
    fn bareiss_det() {
        let m = IntMat::from_rows(&[vec![3, 1, 0], vec![1, 2, 1], vec![0, 1, 4]]);
        assert_eq!(m.det(), BigInt::from(17));
        let singular = IntMat::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.det(), BigInt::zero());
    }

    #[test]
    fn rational_solve_consistency() {
        let a = RatMat::from_int(&IntMat::from_rows(&[vec![1, 2], vec![3, 4]]));
        let b = RatMat::from_int(&IntMat::from_rows(&[vec![5, 6]]));
        let x = RatMat::solve_left(&a, &b).unwrap();
        assert_eq!(x.mul(&a), b);
        // Inconsistent system: b outside the row span.
        let a2 = RatMat::from_int(&IntMat::from_rows(&[vec![1, 2], vec![2, 4]]));
        let b2 = RatMat::from_int(&IntMat::from_rows(&[vec![0, 1]]));
        assert!(RatMat::solve_left(&a2, &b2).is_none());
    }
}
