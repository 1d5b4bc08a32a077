//! Exact coefficient fields for the cubic family: Q itself, and the
//! rational-function field Q(alpha) with elements stored as reduced ratios
//! of polynomials (denominator monic, gcd removed).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) fn rz() -> BigRational {
    <BigRational as Zero>::zero()
}

pub(crate) fn ro() -> BigRational {
    <BigRational as One>::one()
}

/// What the polynomial layer needs from a coefficient field.
pub trait CoeffField: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn from_rat(r: &BigRational) -> Self;
    fn from_i64(n: i64) -> Self {
        Self::from_rat(&BigRational::from_integer(BigInt::from(n)))
    }
    fn to_json(&self) -> serde_json::Value;
}

impl CoeffField for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rat(r: &BigRational) -> Self {
        r.clone()
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(format!("{}/{}", self.numer(), self.denom()))
    }
}

// --- dense univariate polynomials over Q, ascending coefficients ---

pub type QPoly = Vec<BigRational>;

fn qp_trim(mut p: QPoly) -> QPoly {
    while p.last().map_or(false, |c| Zero::is_zero(c)) {
        p.pop();
    }
    p
}

fn qp_add(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let zero = rz();
    qp_trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

fn qp_neg(a: &QPoly) -> QPoly {
    a.iter().map(|c| -c.clone()).collect()
}

fn qp_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![rz(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if Zero::is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    qp_trim(out)
}

/// (quotient, remainder) with deg rem < deg divisor.
fn qp_divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem = a.clone();
    let mut quo = vec![rz(); a.len().saturating_sub(b.len() - 1)];
    let lead = b.last().unwrap();
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let coeff = rem.last().unwrap() / lead;
        quo[shift] = coeff.clone();
        for (i, bc) in b.iter().enumerate() {
            let sub = &coeff * bc;
            rem[shift + i] -= sub;
        }
        rem = qp_trim(rem);
        if rem.is_empty() {
            break;
        }
    }
    (qp_trim(quo), rem)
}

/// Monic gcd via the Euclidean algorithm.
fn qp_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let mut x = qp_trim(a.clone());
    let mut y = qp_trim(b.clone());
    while !y.is_empty() {
        let (_, r) = qp_divrem(&x, &y);
        x = y;
        y = r;
    }
    if x.is_empty() {
        return x;
    }
    let lead = x.last().unwrap().clone();
    x.iter().map(|c| c / &lead).collect()
}

/// Element of Q(alpha): num/den with den monic and gcd(num, den) = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct QAlpha {
    num: QPoly,
    den: QPoly,
}

impl QAlpha {
    fn normalized(num: QPoly, den: QPoly) -> Self {
        let num = qp_trim(num);
        let den = qp_trim(den);
        assert!(!den.is_empty(), "zero denominator in Q(alpha)");
        if num.is_empty() {
            return Self {
                num: vec![],
                den: vec![ro()],
            };
        }
        let g = qp_gcd(&num, &den);
        let (num, _) = qp_divrem(&num, &g);
        let (den, _) = qp_divrem(&den, &g);
        let lead = den.last().unwrap().clone();
        Self {
            num: num.iter().map(|c| c / &lead).collect(),
            den: den.iter().map(|c| c / &lead).collect(),
        }
    }

    /// The coordinate function alpha itself.
    pub fn alpha() -> Self {
        Self {
            num: vec![rz(), ro()],
            den: vec![ro()],
        }
    }

    pub fn from_polys(num: QPoly, den: QPoly) -> Self {
        Self::normalized(num, den)
    }

    /// Evaluate at a rational value of alpha; None on a pole.
    pub fn eval(&self, at: &BigRational) -> Option<BigRational> {
        let horner = |p: &QPoly| -> BigRational {
            p.iter()
                .rev()
                .fold(rz(), |acc, c| acc * at + c)
        };
        let d = horner(&self.den);
        if Zero::is_zero(&d) {
            return None;
        }
        Some(horner(&self.num) / d)
    }

    /// Integer representatives (num, den) after clearing denominators and
    /// content, denominator leading coefficient positive.
    pub fn integer_parts(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let mut lcm = BigInt::one();
        for c in self.num.iter().chain(self.den.iter()) {
            lcm = num_integer::Integer::lcm(&lcm, c.denom());
        }
        let scale = BigRational::from_integer(lcm);
        let ints = |p: &QPoly| -> Vec<BigInt> {
            p.iter().map(|c| (c * &scale).numer().clone()).collect()
        };
        let (mut n, mut d) = (ints(&self.num), ints(&self.den));
        let mut content = BigInt::zero();
        for c in n.iter().chain(d.iter()) {
            content = num_integer::Integer::gcd(&content, c);
        }
        if !content.is_zero() && !content.is_one() {
            for c in n.iter_mut().chain(d.iter_mut()) {
                *c /= &content;
            }
        }
        if d.last().map_or(false, |c| c.is_negative()) {
            for c in n.iter_mut().chain(d.iter_mut()) {
                *c = -c.clone();
            }
        }
        (n, d)
    }
}

impl CoeffField for QAlpha {
    fn zero() -> Self {
        Self {
            num: vec![],
            den: vec![ro()],
        }
    }
    fn one() -> Self {
        Self {
            num: vec![ro()],
            den: vec![ro()],
        }
    }
    fn add(&self, o: &Self) -> Self {
        Self::normalized(
            qp_add(&qp_mul(&self.num, &o.den), &qp_mul(&o.num, &self.den)),
            qp_mul(&self.den, &o.den),
        )
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        Self::normalized(qp_mul(&self.num, &o.num), qp_mul(&self.den, &o.den))
    }
    fn neg(&self) -> Self {
        Self {
            num: qp_neg(&self.num),
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.num.is_empty() {
            return None;
        }
        Some(Self::normalized(self.den.clone(), self.num.clone()))
    }
    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
    fn from_rat(r: &BigRational) -> Self {
        if Zero::is_zero(r) {
            Self::zero()
        } else {
            Self {
                num: vec![r.clone()],
                den: vec![ro()],
            }
        }
    }
    fn to_json(&self) -> serde_json::Value {
        let (n, d) = self.integer_parts();
        serde_json::json!({
            "num": n.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "den": d.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}
