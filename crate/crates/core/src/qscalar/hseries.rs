//! Truncated power series in `h` obtained by substituting `q = e^h`.

use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{LaurentPoly, QScalar};
use crate::Error;

/// Coefficients of `h^0 … h^order`, exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSeries {
    coeffs: Vec<BigRational>,
}

fn rat(r: crate::Q) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn laurent_series(p: &LaurentPoly, order: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); order + 1];
    for (e, c) in p.terms() {
        // c · e^{e h} = c Σ e^k h^k / k!
        let e = rat(*e);
        let mut term = BigRational::from_integer(c.clone());
        for (k, slot) in out.iter_mut().enumerate() {
            if k > 0 {
                term = term * &e / BigRational::from_integer(BigInt::from(k));
            }
            *slot += &term;
        }
    }
    out
}

impl HSeries {
    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Expand a scalar around `q = 1`. A vanishing denominator is allowed as long
    /// as the numerator vanishes to at least the same order.
    pub fn from_scalar(x: &QScalar, order: usize) -> Result<Self, Error> {
        let den = x.denom();
        let extra = den.len();
        let n = order + extra;
        let ds = laurent_series(den, n);
        let ns = laurent_series(x.numer(), n);
        let m = ds
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero exponential polynomial has a nonzero Taylor coefficient");
        if let Some(v) = ns.iter().position(|c| !c.is_zero()) {
            if v < m {
                return Err(Error::Pole(format!(
                    "{x} has a pole of order {} at q = 1",
                    m - v
                )));
            }
        }
        let ds = &ds[m..m + order + 1];
        let ns = &ns[m..m + order + 1];
        // long division of power series
        let mut out = vec![BigRational::zero(); order + 1];
        for k in 0..=order {
            let mut acc = ns[k].clone();
            for j in 0..k {
                acc -= &out[j] * &ds[k - j];
            }
            out[k] = acc / &ds[0];
        }
        Ok(Self { coeffs: out })
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }
}

impl Add for &HSeries {
    type Output = HSeries;
    fn add(self, rhs: &HSeries) -> HSeries {
        let order = self.order().min(rhs.order());
        HSeries {
            coeffs: (0..=order).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Mul for &HSeries {
    type Output = HSeries;
    fn mul(self, rhs: &HSeries) -> HSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for i in 0..=order {
            for j in 0..=order - i {
                coeffs[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
            }
        }
        HSeries { coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn s(x: &str) -> QScalar {
        x.parse().unwrap()
    }

    #[test]
    fn q_plus_inverse() {
        // oracle: e^h + e^{-h} = 2 + h^2 + h^4/12 + ...
        let e = s("q + q^-1").h_expand(4).unwrap();
        assert_eq!(e.coeffs(), &[r(2, 1), r(0, 1), r(1, 1), r(0, 1), r(1, 12)]);
    }

    #[test]
    fn constants_and_cancellation() {
        assert_eq!(QScalar::one().h_expand(3).unwrap(), HSeries::one(3));
        assert_eq!(s("(q - q^-1)/(q - q^-1)").h_expand(3).unwrap(), HSeries::one(3));
    }

    #[test]
    fn removable_singularity() {
        // (q^2 - 1)/(q - 1) has its pole cancelled; (q^n - 1)/(q - 1) -> n at h = 0
        let e = s("(q^3 - 1)/(q - 1)").h_expand(0).unwrap();
        assert_eq!(e.coeff(0), &r(3, 1));
        // (q - q^-1)^2 = 4h^2 + O(h^4)
        let sq = s("(q - q^-1)^2").h_expand(3).unwrap();
        assert_eq!(sq.coeffs(), &[r(0, 1), r(0, 1), r(4, 1), r(0, 1)]);
    }

    #[test]
    fn uncancelled_pole_is_an_error() {
        assert!(s("1/(q - 1)").h_expand(2).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn expansion_is_multiplicative(a in -3i64..4, b in -3i64..4, c in 1i64..3, d in 1i64..3) {
            let x = &QScalar::q_pow(crate::Q::new(a, c)) + &QScalar::from_int(b);
            let y = &QScalar::q_pow(crate::Q::new(b, d)) - &QScalar::from_int(a);
            let xy = (&x * &y).h_expand(4).unwrap();
            let prod = &x.h_expand(4).unwrap() * &y.h_expand(4).unwrap();
            prop_assert_eq!(xy, prod);
        }
    }
}
