//! Exact coefficient field: rational functions in `q` whose exponents may be
//! fractional (`q^{a/D}`), stored as a reduced quotient of Laurent polynomials
//! with integer coefficients.
//!
//! The canonical form is unique, so `Eq` and `Hash` are structural:
//! numerator and denominator share no common factor in `Z[q^{1/D}]`, the
//! denominator has lowest exponent `0` and a positive leading coefficient.

mod dense;
mod hseries;
mod laurent;
mod parse;

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use hseries::HSeries;
pub use laurent::LaurentPoly;
pub use parse::ParseScalarError;

use crate::Q;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QScalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for QScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl QScalar {
    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self {
            num: LaurentPoly::constant(n),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_parts(LaurentPoly::constant(n), LaurentPoly::constant(d))
    }

    pub fn from_rational(r: Q) -> Self {
        Self::from_ratio(*r.numer(), *r.denom())
    }

    /// `q^e`.
    pub fn q_pow(e: Q) -> Self {
        Self {
            num: LaurentPoly::monomial(BigInt::one(), e),
            den: LaurentPoly::one(),
        }
    }

    pub fn q_pow_int(e: i64) -> Self {
        Self::q_pow(Q::from_integer(e))
    }

    /// `q`.
    pub fn q() -> Self {
        Self::q_pow_int(1)
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    /// Build `num / den` and reduce to canonical form. Panics on a zero denominator.
    pub fn from_parts(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "QScalar with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        if let Some((c, e)) = den.as_monomial() {
            let num = num.shift(-e);
            let g = num.content().gcd(c);
            let mut n = num.div_int_exact(&g);
            let mut d = c / &g;
            if d.is_negative() {
                n = -&n;
                d = -d;
            }
            return Self {
                num: n,
                den: LaurentPoly::constant(d),
            };
        }
        let l = num.exponent_denominator().lcm(&den.exponent_denominator());
        let (bn, bd) = (num.min_exp().unwrap(), den.min_exp().unwrap());
        let dn = num.to_dense(bn, l);
        let dd = den.to_dense(bd, l);
        let g = dense::gcd(&dn, &dd);
        let mut n = LaurentPoly::from_dense(&dense::div_exact(&dn, &g), bn, l);
        let mut d = LaurentPoly::from_dense(&dense::div_exact(&dd, &g), bd, l);
        let shift = d.min_exp().unwrap();
        n = n.shift(-shift);
        d = d.shift(-shift);
        if d.is_sign_negative() {
            n = -&n;
            d = -&d;
        }
        Self { num: n, den: d }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial (denominator is 1).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// If `self = c · q^e` with `c` an integer, return `(c, e)`.
    pub fn as_monomial(&self) -> Option<(BigInt, Q)> {
        if !self.den.is_one() {
            return None;
        }
        self.num.as_monomial().map(|(c, e)| (c.clone(), e))
    }

    /// Units of `Z[q^{±1/D}]`: `±q^e`.
    pub fn is_unit_monomial(&self) -> bool {
        self.as_monomial().is_some_and(|(c, _)| c.abs().is_one())
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero QScalar");
        Self::from_parts(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// Substitute `q ↦ q^k`.
    pub fn subs_q_pow(&self, k: Q) -> Self {
        Self::from_parts(self.num.scale_exponents(k), self.den.scale_exponents(k))
    }

    /// Value at `q = 1`, or `None` if the denominator vanishes there.
    pub fn at_one(&self) -> Option<BigRational> {
        let d = self.den.at_one();
        if d.is_zero() {
            None
        } else {
            Some(BigRational::new(self.num.at_one(), d))
        }
    }

    /// Least common multiple of all exponent denominators (the `D` of `q^{1/D}`).
    pub fn exponent_denominator(&self) -> i64 {
        self.num
            .exponent_denominator()
            .lcm(&self.den.exponent_denominator())
    }

    pub fn h_expand(&self, order: usize) -> Result<HSeries, crate::Error> {
        HSeries::from_scalar(self, order)
    }
}

impl From<i64> for QScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Add for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return QScalar {
                    num,
                    den: self.den.clone(),
                };
            }
            return QScalar::from_parts(num, self.den.clone());
        }
        QScalar::from_parts(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self + &(-rhs)
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

impl Mul for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() || rhs.is_zero() {
            return QScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QScalar {
                num: &self.num * &rhs.num,
                den: LaurentPoly::one(),
            };
        }
        QScalar::from_parts(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &QScalar {
    type Output = QScalar;
    fn div(self, rhs: &QScalar) -> QScalar {
        self * &rhs.inv()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: &QScalar) -> QScalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, rhs: &QScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, rhs: &QScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&QScalar> for QScalar {
    fn mul_assign(&mut self, rhs: &QScalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", parse::format_laurent(&self.num));
        }
        let n = parse::format_laurent(&self.num);
        let d = parse::format_laurent(&self.den);
        let wrap = |s: String, p: &LaurentPoly| {
            if p.len() > 1 || s.starts_with('-') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(n, &self.num), wrap(d, &self.den))
    }
}

impl std::str::FromStr for QScalar {
    type Err = ParseScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse_scalar(s)
    }
}

impl serde::Serialize for QScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for QScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

// ---- q-combinatorics ----

/// Symmetric q-integer `[n]_{q^d} = (q^{dn} - q^{-dn}) / (q^d - q^{-d})`.
pub fn qint_at(n: i64, d: i64) -> QScalar {
    if n < 0 {
        return -qint_at(-n, d);
    }
    let mut p = LaurentPoly::zero();
    for k in 0..n {
        p = &p + &LaurentPoly::monomial(BigInt::one(), Q::from_integer(d * (n - 1 - 2 * k)));
    }
    QScalar::from_laurent(p)
}

pub fn qint(n: i64) -> QScalar {
    qint_at(n, 1)
}

pub fn qfact_at(n: i64, d: i64) -> Result<QScalar, crate::Error> {
    if n < 0 {
        return Err(crate::Error::Domain(format!("q-factorial of negative {n}")));
    }
    Ok((1..=n).fold(QScalar::one(), |acc, k| &acc * &qint_at(k, d)))
}

pub fn qfact(n: i64) -> Result<QScalar, crate::Error> {
    qfact_at(n, 1)
}

/// Gaussian binomial in the symmetric convention with base `q^d`.
pub fn qbinom_at(m: i64, n: i64, d: i64) -> Result<QScalar, crate::Error> {
    if n < 0 || n > m {
        return Err(crate::Error::Domain(format!(
            "q-binomial requires 0 <= n <= m, got ({m}, {n})"
        )));
    }
    Ok(&qfact_at(m, d)? / &(&qfact_at(n, d)? * &qfact_at(m - n, d)?))
}

pub fn qbinom(m: i64, n: i64) -> Result<QScalar, crate::Error> {
    qbinom_at(m, n, 1)
}

/// Coefficients `(−1)^r q^{r c} [1−a; r]_{q^d}`, `r = 0 … 1−a`, of the
/// quantum Serre relation for a pair with `a_ij = a`, twist `c_ij = c`.
pub fn serre_coefficients(a: i64, c: i64, d: i64) -> Vec<QScalar> {
    let m = 1 - a;
    (0..=m)
        .map(|r| {
            let x = &qbinom_at(m, r, d).expect("0 <= r <= m") * &QScalar::q_pow_int(r * c);
            if r % 2 == 1 {
                -x
            } else {
                x
            }
        })
        .collect()
}

/// Non-symmetric `(n)_{q^e} = 1 + q^e + … + q^{e(n-1)}`.
pub fn qexp_int_at(n: u32, e: Q) -> QScalar {
    let mut p = LaurentPoly::zero();
    for k in 0..n {
        p = &p + &LaurentPoly::monomial(BigInt::one(), e * Q::from_integer(k as i64));
    }
    QScalar::from_laurent(p)
}

/// `(n)_{q^e}!`, the denominators of the q-exponential `exp_{q^e}`.
pub fn qexp_factorial_at(n: u32, e: Q) -> QScalar {
    (1..=n).fold(QScalar::one(), |acc, k| &acc * &qexp_int_at(k, e))
}

/// `(n)_q!`.
pub fn qexp_symbol(n: u32) -> QScalar {
    qexp_factorial_at(n, Q::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(x: &str) -> QScalar {
        x.parse().unwrap()
    }

    #[test]
    fn qint_two_is_q_plus_inverse() {
        assert_eq!(qint(2), &QScalar::q() + &QScalar::q_pow_int(-1));
        assert_eq!(qint(2), s("q + q^-1"));
    }

    #[test]
    fn qbinom_two_one() {
        assert_eq!(qbinom(2, 1).unwrap(), qint(2));
        assert!(qbinom(2, 3).is_err());
        // the Gaussian binomial is a Laurent polynomial
        assert!(qbinom(5, 2).unwrap().is_laurent());
    }

    #[test]
    fn qfact_three_is_product() {
        let oracle = &(&qint(3) * &qint(2)) * &qint(1);
        assert_eq!(qfact(3).unwrap(), oracle);
    }

    #[test]
    fn qexp_symbols() {
        assert_eq!(qexp_int_at(2, Q::one()), s("1 + q"));
        assert_eq!(qexp_symbol(0), QScalar::one());
        let oracle = &s("1") * &(&s("1 + q") * &s("1 + q + q^2"));
        assert_eq!(qexp_symbol(3), oracle);
    }

    #[test]
    fn cancellation_to_one() {
        let x = s("q - q^-1");
        assert!((&x / &x).is_one());
        assert_eq!(s("(q^2 - 1)/(q - 1)"), s("q + 1"));
    }

    #[test]
    fn canonical_denominator() {
        let x = s("1/(q - q^-1)");
        assert_eq!(x.denom().min_exp(), Some(Q::from_integer(0)));
        assert!(x.denom().leading_coeff().unwrap() > &BigInt::zero());
        assert_eq!(x, s("q/(q^2 - 1)"));
        assert_eq!(s("-1/(1 - q)"), s("1/(q - 1)"));
    }

    #[test]
    fn fractional_exponents() {
        let r = QScalar::q_pow(Q::new(1, 2));
        assert_eq!(&r * &r, QScalar::q());
        assert_eq!(s("(q - 1)/(q^(1/2) - 1)"), s("q^(1/2) + 1"));
        assert_eq!(r.exponent_denominator(), 2);
    }

    #[test]
    fn at_one_values() {
        for n in 0..6 {
            assert_eq!(qint(n).at_one().unwrap(), BigRational::from_integer(n.into()));
        }
        assert!(s("1/(q - 1)").at_one().is_none());
    }

    fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-3i64..=3, -4i64..=4, 1i64..=2), 1..4).prop_map(|v| {
            v.into_iter().fold(LaurentPoly::zero(), |acc, (c, e, d)| {
                &acc + &LaurentPoly::monomial(BigInt::from(c), Q::new(e, d))
            })
        })
    }

    fn arb_scalar() -> impl Strategy<Value = QScalar> {
        (arb_laurent(), arb_laurent()).prop_map(|(n, d)| {
            if d.is_zero() {
                QScalar::from_laurent(n)
            } else {
                QScalar::from_parts(n, d)
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv()).is_one());
            }
        }

        #[test]
        fn canonical_form_is_idempotent(a in arb_scalar()) {
            let again = QScalar::from_parts(a.numer().clone(), a.denom().clone());
            prop_assert_eq!(&again, &a);
            let round: QScalar = a.to_string().parse().unwrap();
            prop_assert_eq!(round, a);
        }
    }
}
