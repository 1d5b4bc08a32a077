//! Sparse multivariate polynomials in six variables over an exact field.
//!
//! Exponent vectors are fixed-width arrays; terms live in a BTreeMap so
//! iteration order (hence serialization) is deterministic. Substitution is
//! by monomial expansion, which is all the degree-3 geometry here needs.

use super::field::CoeffField;
use serde_json::json;
use std::collections::BTreeMap;

pub const NVARS: usize = 6;
pub type Exp = [u8; NVARS];

#[derive(Clone, Debug, PartialEq)]
pub struct SparsePoly<K: CoeffField> {
    terms: BTreeMap<Exp, K>,
}

impl<K: CoeffField> SparsePoly<K> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: K) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert([0; NVARS], c);
        }
        p
    }

    pub fn var(i: usize) -> Self {
        assert!(i < NVARS);
        let mut e = [0u8; NVARS];
        e[i] = 1;
        let mut p = Self::zero();
        p.terms.insert(e, K::one());
        p
    }

    pub fn monomial(e: Exp, c: K) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &K)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &Exp) -> K {
        self.terms.get(e).cloned().unwrap_or_else(K::zero)
    }

    fn insert_add(&mut self, e: Exp, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get(&e) {
            Some(old) => {
                let s = old.add(&c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.insert_add(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let mut e = [0u8; NVARS];
                for i in 0..NVARS {
                    e[i] = e1[i] + e2[i];
                }
                out.insert_add(e, c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (*e, v.mul(c)))
                .collect(),
        }
    }

    pub fn pow(&self, n: u8) -> Self {
        let mut acc = Self::constant(K::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn homogeneous_component(&self, d: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().map(|&x| x as usize).sum::<usize>() == d)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, point: &[K]) -> K {
        assert_eq!(point.len(), NVARS);
        let mut acc = K::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &power) in e.iter().enumerate() {
                for _ in 0..power {
                    t = t.mul(&point[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[i] -= 1;
            out.insert_add(e2, c.mul(&K::from_i64(e[i] as i64)));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..NVARS).map(|i| self.partial(i)).collect()
    }

    /// Substitute each variable by the given polynomial.
    pub fn substitute(&self, images: &[Self; NVARS]) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (i, &power) in e.iter().enumerate() {
                if power > 0 {
                    t = t.mul(&images[i].pow(power));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Relabel variables: monomial x_i^e contributes to x_{perm[i]}^e.
    pub fn permute(&self, perm: &[usize; NVARS]) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut e2 = [0u8; NVARS];
            for i in 0..NVARS {
                e2[perm[i]] += e[i];
            }
            out.insert_add(e2, c.clone());
        }
        out
    }

    /// JSON as a list of { "exp": [...], "coeff": ... } records.
    pub fn to_json(&self) -> serde_json::Value {
        let items: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| json!({ "exp": e.to_vec(), "coeff": c.to_json() }))
            .collect();
        serde_json::Value::Array(items)
    }
}
