//! Laurent polynomials in `q` with integer coefficients and rational exponents.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::dense::Dense;
use crate::Q;

/// A finite sum `Σ c_e q^e` with `c_e ∈ Z` and `e ∈ Q`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<Q, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), Q::zero())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c.into(), Q::zero())
    }

    pub fn monomial(c: BigInt, e: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| e.is_zero() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Q, &BigInt)> {
        self.terms.iter()
    }

    pub fn min_exp(&self) -> Option<Q> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<Q> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    pub fn as_monomial(&self) -> Option<(&BigInt, Q)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, *e))
        } else {
            None
        }
    }

    fn add_term(&mut self, e: Q, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: Q) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect(),
        }
    }

    pub fn div_int_exact(&self, s: &BigInt) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| {
                    let (quo, rem) = c.div_rem(s);
                    debug_assert!(rem.is_zero());
                    (*k, quo)
                })
                .collect(),
        }
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
        }
        g
    }

    /// Least common multiple of the exponent denominators.
    pub fn exponent_denominator(&self) -> i64 {
        self.terms.keys().fold(1i64, |acc, e| acc.lcm(e.denom()))
    }

    /// Substitute `q^e ↦ q^{k e}`.
    pub fn scale_exponents(&self, k: Q) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(e * k, c.clone());
        }
        out
    }

    /// Dense representation in `u = q^{1/den}` relative to the exponent `base`
    /// (which must be ≤ every exponent and a multiple of `1/den`).
    pub(crate) fn to_dense(&self, base: Q, den: i64) -> Dense {
        let mut out: Dense = Vec::new();
        for (e, c) in &self.terms {
            let k = (e - base) * Q::from_integer(den);
            debug_assert!(k.is_integer() && !k.is_negative());
            let k = k.to_integer() as usize;
            if out.len() <= k {
                out.resize(k + 1, BigInt::zero());
            }
            out[k] = c.clone();
        }
        out
    }

    pub(crate) fn from_dense(p: &Dense, base: Q, den: i64) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in p.iter().enumerate() {
            if !c.is_zero() {
                terms.insert(base + Q::new(k as i64, den), c.clone());
            }
        }
        Self { terms }
    }

    /// Evaluate at `q = 1`.
    pub fn at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub(crate) fn is_sign_negative(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_negative())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}
