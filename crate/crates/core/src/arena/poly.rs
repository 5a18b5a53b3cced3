//! Multivariate polynomials with integer coefficients over symbolic variables.

use std::collections::BTreeMap;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

/// A product of variables with exponents, sorted by name.
pub type Monomial = Vec<(String, u32)>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn constant(c: BigInt) -> Poly {
        let mut p = Poly::default();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn var(x: &str) -> Poly {
        let mut p = Poly::default();
        p.terms.insert(vec![(x.to_string(), 1)], BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&Vec::new()).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let e = out.terms.entry(m.clone()).or_default();
            *e += c;
            if e.is_zero() {
                out.terms.remove(m);
            }
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = mul_mono(m1, m2);
                let e = out.terms.entry(m.clone()).or_default();
                *e += c1 * c2;
                if e.is_zero() {
                    out.terms.remove(&m);
                }
            }
        }
        out
    }

    /// True when the polynomial is at least 1 at every point of ℕ.
    pub fn always_positive(&self) -> bool {
        self.constant_term() >= BigInt::one() && self.terms.values().all(|c| !c.is_negative())
    }

    /// True when the polynomial is nonnegative at every point of ℕ.
    pub fn always_nonneg(&self) -> bool {
        self.terms.values().all(|c| c.sign() != Sign::Minus)
    }
}

fn mul_mono(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out: BTreeMap<String, u32> = BTreeMap::new();
    for (x, e) in a.iter().chain(b.iter()) {
        *out.entry(x.clone()).or_default() += e;
    }
    out.into_iter().collect()
}
