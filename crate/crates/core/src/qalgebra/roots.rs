use super::{Algebra, AlgebraElement, Monomial};
use crate::cartan_root::{NormalOrdering, RootSystem};
use crate::{Error, QScalar, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Debug)]
pub struct RootVector {
    pub root: Vec<i64>,
    pub sign: Sign,
    pub expansion: AlgebraElement,
}

/// `(α, β)` with `α < β`, `α + β = γ`, and `[α, β]` the narrowest segment
/// around `γ` (ties go to the smaller left endpoint).
pub fn minimal_segment(rs: &RootSystem, ord: &NormalOrdering, gamma: usize) -> Result<(usize, usize), Error> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (a, b) in rs.decompositions(gamma) {
        let (a, b) = if ord.less(a, b) { (a, b) } else { (b, a) };
        let (pa, pb, pg) = (ord.position[a], ord.position[b], ord.position[gamma]);
        if !(pa < pg && pg < pb) {
            return Err(Error::RootVector(format!(
                "ordering is not normal around root {:?}",
                rs.root(gamma)
            )));
        }
        let width = pb - pa;
        if best.map_or(true, |(w, l, _)| (width, pa) < (w, l)) {
            best = Some((width, pa, b));
        }
    }
    let (_, pa, b) = best.ok_or_else(|| {
        Error::RootVector(format!("root {:?} has no decomposition", rs.root(gamma)))
    })?;
    Ok((ord.order[pa], b))
}

/// All `X_β^±` of the algebra (indexed like `rs.positive_roots`).
#[derive(Clone, Debug)]
pub struct RootVectors {
    pub plus: Vec<AlgebraElement>,
    pub minus: Vec<AlgebraElement>,
}

impl RootVectors {
    pub fn build(alg: &Algebra, rs: &RootSystem, ord: &NormalOrdering) -> Result<Self, Error> {
        let n = rs.len();
        let mut plus: Vec<Option<AlgebraElement>> = vec![None; n];
        let mut minus: Vec<Option<AlgebraElement>> = vec![None; n];
        // rs is sorted by height, so summands are always built first
        for k in 0..n {
            if let Some(i) = rs.simple_index(k) {
                plus[k] = Some(alg.e(i));
                minus[k] = Some(alg.f(i));
                continue;
            }
            let (a, b) = minimal_segment(rs, ord, k)?;
            let ab = rs.pairing(a, b);
            let (xa, xb) = (plus[a].as_ref().expect("built"), plus[b].as_ref().expect("built"));
            let p = &alg.mul(xa, xb)? - &alg.mul(xb, xa)?.scale(&QScalar::q_pow_int(ab));
            let (ya, yb) = (minus[a].as_ref().expect("built"), minus[b].as_ref().expect("built"));
            let m = &alg.mul(yb, ya)? - &alg.mul(ya, yb)?.scale(&QScalar::q_pow_int(-ab));
            plus[k] = Some(p);
            minus[k] = Some(m);
        }
        Ok(Self {
            plus: plus.into_iter().map(|x| x.expect("built")).collect(),
            minus: minus.into_iter().map(|x| x.expect("built")).collect(),
        })
    }

    pub fn get(&self, k: usize, sign: Sign) -> &AlgebraElement {
        match sign {
            Sign::Plus => &self.plus[k],
            Sign::Minus => &self.minus[k],
        }
    }
}

pub fn root_vector(
    alg: &Algebra,
    rs: &RootSystem,
    ord: &NormalOrdering,
    k: usize,
    sign: Sign,
) -> Result<RootVector, Error> {
    let all = RootVectors::build(alg, rs, ord)?;
    Ok(RootVector {
        root: rs.root(k).to_vec(),
        sign,
        expansion: all.get(k, sign).clone(),
    })
}

/// `a(β)` from `[X_β^+, X_β^-] = a(β)(e^{hβ^∨} − e^{−hβ^∨})/(q − q^{-1})`.
pub fn compute_a(alg: &Algebra, rs: &RootSystem, rv: &RootVectors, k: usize) -> Result<QScalar, Error> {
    let comm = alg.normalize(&alg.commutator(&rv.plus[k], &rv.minus[k])?)?;
    let y = alg.cartan().root_in_y(rs.root(k));
    let mut m = Monomial::unit(alg.letters());
    m.cartan = y.clone();
    let qd = &QScalar::q() - &QScalar::q_pow_int(-1);
    let a = &comm.coeff(&m) * &qd;
    let neg: Vec<Q> = y.iter().map(|v| -v).collect();
    let target = (&alg.cartan_exp(&y) - &alg.cartan_exp(&neg)).scale(&(&a / &qd));
    let residual = &comm - &target;
    if !residual.is_zero() || a.is_zero() {
        return Err(Error::Residual(format!(
            "[X+, X-] for root {:?} is not a multiple of the Cartan combination: residual {residual}",
            rs.root(k)
        )));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan_root::{build_cartan, build_root_system, find_normal_ordering, Series};

    fn setup(s: Series, r: usize) -> (Algebra, RootSystem, NormalOrdering) {
        let c = build_cartan(s, r).unwrap();
        let rs = build_root_system(&c);
        let pi: Vec<usize> = (0..r).collect();
        let ord = find_normal_ordering(&rs, &pi, 4).unwrap();
        (Algebra::standard(&c, Some(&ord)), rs, ord)
    }

    #[test]
    fn a2_root_vectors() {
        let (alg, rs, ord) = setup(Series::A, 2);
        let rv = RootVectors::build(&alg, &rs, &ord).unwrap();
        // X_1 X_2 − q^{-1} X_2 X_1 and X_2^- X_1^- − q X_1^- X_2^-
        let p = &alg.e_word(&[0, 1]) - &alg.e_word(&[1, 0]).scale(&QScalar::q_pow_int(-1));
        assert_eq!(rv.plus[2], p);
        let m = &alg.f_word(&[1, 0]) - &alg.f_word(&[0, 1]).scale(&QScalar::q());
        assert_eq!(rv.minus[2], m);
        assert_eq!(rv.plus[0], alg.e(0));
    }

    #[test]
    fn a_values() {
        let (alg, rs, ord) = setup(Series::A, 1);
        let rv = RootVectors::build(&alg, &rs, &ord).unwrap();
        assert!(compute_a(&alg, &rs, &rv, 0).unwrap().is_one());

        let (alg, rs, ord) = setup(Series::B, 2);
        let rv = RootVectors::build(&alg, &rs, &ord).unwrap();
        // simple roots: (q − q^{-1}) / (q_i − q_i^{-1})
        let a0 = compute_a(&alg, &rs, &rv, 0).unwrap();
        assert_eq!(a0, "(q - q^-1)/(q^2 - q^-2)".parse().unwrap());
        assert!(compute_a(&alg, &rs, &rv, 1).unwrap().is_one());
        for k in 2..rs.len() {
            let a = compute_a(&alg, &rs, &rv, k).unwrap();
            assert!(a.at_one().map_or(false, |v| v != num_traits::Zero::zero()));
        }
    }

    #[test]
    fn a2_non_simple_a_is_nonzero_at_one() {
        let (alg, rs, ord) = setup(Series::A, 2);
        let rv = RootVectors::build(&alg, &rs, &ord).unwrap();
        let a = compute_a(&alg, &rs, &rv, 2).unwrap();
        assert!(!a.at_one().unwrap().is_zero());
    }

    use num_traits::Zero;
}
