//! Dense univariate polynomials over the integers, used only for gcd
//! reduction of rational functions.
//!
//! Coefficients are stored in ascending degree order with no trailing zeros;
//! the zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type Dense = Vec<BigInt>;

pub(crate) fn trim(p: &mut Dense) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn content(p: &Dense) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part(p: &Dense) -> Dense {
    let c = content(p);
    if c.is_zero() || c.is_one() {
        return p.clone();
    }
    p.iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder of `a` by `b` (b nonzero).
fn pseudo_rem(a: &Dense, b: &Dense) -> Dense {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r = a.clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &lr * bc;
        }
        trim(&mut r);
    }
    r
}

/// Greatest common divisor in Z[u], normalized to a positive leading coefficient.
pub(crate) fn gcd(a: &Dense, b: &Dense) -> Dense {
    if a.is_empty() {
        return normalize_sign(b.clone());
    }
    if b.is_empty() {
        return normalize_sign(a.clone());
    }
    let cont = content(a).gcd(&content(b));
    let (mut x, mut y) = (primitive_part(a), primitive_part(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive_part(&r);
    }
    let g: Dense = x.iter().map(|c| c * &cont).collect();
    normalize_sign(g)
}

fn normalize_sign(mut p: Dense) -> Dense {
    if p.last().is_some_and(|c| c.is_negative()) {
        for c in p.iter_mut() {
            *c = -c.clone();
        }
    }
    p
}

/// Exact division `a / b` in Z[u]; panics if `b` does not divide `a`.
pub(crate) fn div_exact(a: &Dense, b: &Dense) -> Dense {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.is_empty() {
        return Vec::new();
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len().saturating_sub(db).max(1)];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let (qc, rem) = r[dr].div_rem(lb);
        assert!(rem.is_zero(), "inexact polynomial division");
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &qc * bc;
        }
        q[shift] = qc;
        trim(&mut r);
    }
    assert!(r.is_empty(), "inexact polynomial division");
    trim(&mut q);
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: &[i64]) -> Dense {
        let mut p: Dense = v.iter().map(|&x| BigInt::from(x)).collect();
        trim(&mut p);
        p
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (u-1)(u+1) and (u-1)(u+2)
        let g = gcd(&d(&[-1, 0, 1]), &d(&[-2, 1, 1]));
        assert_eq!(g, d(&[-1, 1]));
    }

    #[test]
    fn gcd_keeps_integer_content() {
        let g = gcd(&d(&[2, 2]), &d(&[4, 4]));
        assert_eq!(g, d(&[2, 2]));
    }

    #[test]
    fn exact_division() {
        assert_eq!(div_exact(&d(&[-1, 0, 1]), &d(&[1, 1])), d(&[-1, 1]));
    }
}
