//! Difference operators on the torus and the deformed Toda Hamiltonians.
//!
//! A term `(λ, μ) ↦ c` stands for `c · e^{−hλ(y)} T_μ`, with `λ` in
//! simple-root coordinates, `μ` in `Y`-coordinates and `T_μ f(y) = f(y + μ)`.
//! Then `T_μ e^{−hλ(y)} = q^{−λ(μ)} e^{−hλ(y)} T_μ`, where
//! `λ(μ) = Σ λ_i d_i μ_i`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::cartan_root::CartanDatum;
use crate::coxeter_hopf::{Character, CoxeterSetup, Direction};
use crate::qalgebra::AlgebraElement;
use crate::ratmat::{self, q_to_string, RatMatrix};
use crate::representations::Representation;
use crate::{Error, QScalar, Q};

/// `(shift μ, char λ)`; the map order is the canonical emission order.
pub type TermKey = (Vec<Q>, Vec<Q>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceOperator {
    d: Vec<i64>,
    terms: BTreeMap<TermKey, QScalar>,
}

impl DifferenceOperator {
    pub fn zero(d: &[i64]) -> Self {
        Self {
            d: d.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(d: &[i64]) -> Self {
        Self::monomial(d, vec![Q::zero(); d.len()], vec![Q::zero(); d.len()], QScalar::one())
    }

    /// `c · e^{−hλ(y)} T_μ`.
    pub fn monomial(d: &[i64], lambda: Vec<Q>, mu: Vec<Q>, c: QScalar) -> Self {
        let mut out = Self::zero(d);
        out.add_term(lambda, mu, c);
        out
    }

    pub fn shift(d: &[i64], mu: Vec<Q>) -> Self {
        Self::monomial(d, vec![Q::zero(); d.len()], mu, QScalar::one())
    }

    pub fn character(d: &[i64], lambda: Vec<Q>) -> Self {
        Self::monomial(d, lambda, vec![Q::zero(); d.len()], QScalar::one())
    }

    pub fn rank(&self) -> usize {
        self.d.len()
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.d
    }

    pub fn terms(&self) -> &BTreeMap<TermKey, QScalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, lambda: &[Q], mu: &[Q]) -> QScalar {
        self.terms
            .get(&(mu.to_vec(), lambda.to_vec()))
            .cloned()
            .unwrap_or_else(QScalar::zero)
    }

    pub fn add_term(&mut self, lambda: Vec<Q>, mu: Vec<Q>, c: QScalar) {
        if c.is_zero() {
            return;
        }
        let key = (mu, lambda);
        let merged = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(key, merged);
        }
    }

    /// `λ(μ) = Σ λ_i d_i μ_i`.
    pub fn pairing(&self, lambda: &[Q], mu: &[Q]) -> Q {
        lambda
            .iter()
            .zip(mu)
            .zip(&self.d)
            .map(|((l, m), d)| l * m * Q::from(*d))
            .sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((mu, la), c) in &other.terms {
            out.add_term(la.clone(), mu.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&QScalar::from_int(-1)))
    }

    pub fn scale(&self, s: &QScalar) -> Self {
        let mut out = Self::zero(&self.d);
        for ((mu, la), c) in &self.terms {
            out.add_term(la.clone(), mu.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.d);
        for ((mu1, la1), c1) in &self.terms {
            for ((mu2, la2), c2) in &other.terms {
                let twist = QScalar::q_pow(-self.pairing(la2, mu1));
                let la: Vec<Q> = la1.iter().zip(la2).map(|(a, b)| a + b).collect();
                let mu: Vec<Q> = mu1.iter().zip(mu2).map(|(a, b)| a + b).collect();
                out.add_term(la, mu, &(c1 * c2) * &twist);
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// `φ D φ^{-1}` with `φ` multiplication by `e^{hρ(y)}` (`ρ` in root
    /// coordinates): each term picks up `q^{−ρ(μ)}`.
    pub fn conjugate_by_phi(&self, rho: &[Q]) -> Self {
        self.phi_power(rho, -1)
    }

    pub fn conjugate_by_phi_inverse(&self, rho: &[Q]) -> Self {
        self.phi_power(rho, 1)
    }

    fn phi_power(&self, rho: &[Q], sign: i64) -> Self {
        let mut out = Self::zero(&self.d);
        for ((mu, la), c) in &self.terms {
            let e = self.pairing(rho, mu) * Q::from(sign);
            out.add_term(la.clone(), mu.clone(), c * &QScalar::q_pow(e));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let strs = |v: &[Q]| v.iter().map(q_to_string).collect::<Vec<_>>();
        Value::Array(
            self.terms
                .iter()
                .map(|((mu, la), c)| {
                    json!({ "char": strs(la), "shift": strs(mu), "coeff": c.to_string() })
                })
                .collect(),
        )
    }

    pub fn from_json(d: &[i64], v: &Value) -> Result<Self, Error> {
        let bad = |m: &str| Error::Parse(format!("operator JSON: {m}"));
        let vec_of = |x: &Value| -> Result<Vec<Q>, Error> {
            x.as_array()
                .ok_or_else(|| bad("expected an array"))?
                .iter()
                .map(|s| s.as_str().and_then(ratmat::parse_q).ok_or_else(|| bad("bad rational")))
                .collect()
        };
        let mut out = Self::zero(d);
        for t in v.as_array().ok_or_else(|| bad("expected a term list"))? {
            let la = vec_of(&t["char"])?;
            let mu = vec_of(&t["shift"])?;
            if la.len() != d.len() || mu.len() != d.len() {
                return Err(bad("vector length does not match rank"));
            }
            let c: QScalar = t["coeff"].as_str().ok_or_else(|| bad("missing coeff"))?.parse()?;
            out.add_term(la, mu, c);
        }
        Ok(out)
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let lin = |v: &[Q], sym: &str| {
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| {
                    if x.is_one() {
                        format!("{sym}_{{{}}}", i + 1)
                    } else {
                        format!("{} {sym}_{{{}}}", q_to_string(x), i + 1)
                    }
                })
                .collect::<Vec<_>>()
                .join(" + ")
        };
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((mu, la), c)| {
                let mut s = format!("\\left({c}\\right)");
                if la.iter().any(|x| !x.is_zero()) {
                    s.push_str(&format!(" e^{{-h({}, y)}}", lin(la, "\\alpha")));
                }
                if mu.iter().any(|x| !x.is_zero()) {
                    s.push_str(&format!(" T_{{{}}}", lin(mu, "Y")));
                }
                s
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for DifferenceOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let vs = |v: &[Q]| v.iter().map(q_to_string).collect::<Vec<_>>().join(",");
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((mu, la), c)| format!("({c}) char[{}] T[{}]", vs(la), vs(mu)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `L`: `f_i ↦ χ̄(f_i) e^{−hα_i(y)}`, `e^{hx} ↦ T_x`, on triangular
/// elements with empty e-words.
pub fn l_realize(cartan: &CartanDatum, x: &AlgebraElement, chibar: &Character) -> Result<DifferenceOperator, Error> {
    if chibar.direction != Direction::Negative {
        return Err(Error::Precondition("L needs a character of the negative part".into()));
    }
    if x.tag().legs != 1 {
        return Err(Error::Precondition("L acts on single-leg elements".into()));
    }
    let l = cartan.rank;
    let mut out = DifferenceOperator::zero(&cartan.d);
    for (m, c) in x.terms() {
        if !m.e.is_empty() {
            return Err(Error::Precondition(
                "L is defined on the negative Borel part; found an e-word".into(),
            ));
        }
        let mut la = vec![Q::zero(); l];
        for &j in &m.f {
            la[j] += Q::one();
        }
        out.add_term(la, m.cartan.clone(), c * &chibar.word(&m.f));
    }
    Ok(out)
}

/// `M = φ L(ρ_χ(C_V)) φ^{-1}`.
pub fn toda_hamiltonian(
    setup: &CoxeterSetup,
    rep: &Representation,
    chi: &Character,
    chibar: &Character,
) -> Result<DifferenceOperator, Error> {
    let c = setup.projected_central_element(rep, chi)?;
    let d = l_realize(setup.cartan(), &c, chibar)?;
    Ok(d.conjugate_by_phi(&setup.roots.rho))
}

/// Pairs whose commutator is nonzero, with the residual.
#[derive(Clone, Debug, Default)]
pub struct CommutativityReport {
    pub failures: Vec<(usize, usize, DifferenceOperator)>,
}

impl CommutativityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_commutativity(ops: &[DifferenceOperator]) -> CommutativityReport {
    let mut rep = CommutativityReport::default();
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            let c = ops[i].commutator(&ops[j]);
            if !c.is_zero() {
                rep.failures.push((i, j, c));
            }
        }
    }
    rep
}

fn big(q: &Q) -> BigRational {
    BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// All multi-indices of total degree `k` in `l` variables.
fn multi_indices(l: usize, k: u32) -> Vec<Vec<u32>> {
    if l == 0 {
        return if k == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=k {
        for mut rest in multi_indices(l - 1, k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Expansion in powers of `h` with `y = x/h`: characters `e^{−λ(x)}` stay
/// symbolic and `T_μ = e^{hμ·∂}` (`∂_p` along `Y_p`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalExpansion {
    pub order: usize,
    /// `(λ, derivative multi-index) ↦ [coefficient of h^k]`.
    pub terms: BTreeMap<(Vec<Q>, Vec<u32>), Vec<BigRational>>,
}

impl ClassicalExpansion {
    pub fn coeff(&self, lambda: &[Q], deriv: &[u32], k: usize) -> BigRational {
        self.terms
            .get(&(lambda.to_vec(), deriv.to_vec()))
            .map_or_else(BigRational::zero, |v| v[k].clone())
    }

    /// Nonzero terms at order `k`.
    pub fn at_order(&self, k: usize) -> Vec<(&Vec<Q>, &Vec<u32>, &BigRational)> {
        self.terms
            .iter()
            .filter(|(_, v)| !v[k].is_zero())
            .map(|((la, a), v)| (la, a, &v[k]))
            .collect()
    }
}

pub fn classical_limit(op: &DifferenceOperator, order: usize) -> Result<ClassicalExpansion, Error> {
    let l = op.rank();
    let mut terms: BTreeMap<(Vec<Q>, Vec<u32>), Vec<BigRational>> = BTreeMap::new();
    for ((mu, la), c) in op.terms() {
        let series = c.h_expand(order)?;
        for k in 0..=order {
            for a in multi_indices(l, k as u32) {
                let mut w = BigRational::one();
                for (p, &ap) in a.iter().enumerate() {
                    for _ in 0..ap {
                        w *= big(&mu[p]);
                    }
                    w /= BigRational::from_integer(factorial(ap));
                }
                if w.is_zero() {
                    continue;
                }
                let entry = terms
                    .entry((la.clone(), a.clone()))
                    .or_insert_with(|| vec![BigRational::zero(); order + 1]);
                for j in 0..=order - k {
                    entry[j + k] += series.coeff(j) * &w;
                }
            }
        }
    }
    terms.retain(|_, v| v.iter().any(|x| !x.is_zero()));
    Ok(ClassicalExpansion { order, terms })
}

/// Comparison of the `h²` coefficient with `Σ ∂_i² + Σ χ_iχ̄_i e^{−α_i} + const`
/// (orthonormal `∂_i`). The potential is matched up to a translation of `x`,
/// which rescales each `e^{−α_i}` by an independent factor `κ_i`.
#[derive(Clone, Debug)]
pub struct ClassicalComparison {
    pub identity_h0: BigRational,
    pub h0_clean: bool,
    pub h1_vanishes: bool,
    /// `N` in `h²-part = N (Laplacian + Σ κ_i χ_iχ̄_i e^{−α_i}) + const`.
    pub normalization: Option<BigRational>,
    pub laplacian_matches: bool,
    pub potential_gauge: Vec<Option<BigRational>>,
    pub additive_constant: BigRational,
    pub stray_terms: Vec<String>,
}

impl ClassicalComparison {
    pub fn passed(&self) -> bool {
        self.h0_clean
            && self.h1_vanishes
            && self.normalization.is_some()
            && self.laplacian_matches
            && self.stray_terms.is_empty()
            && self.potential_gauge.iter().all(|k| k.as_ref().is_some_and(|v| !v.is_zero()))
    }
}

pub fn compare_classical(
    exp: &ClassicalExpansion,
    cartan: &CartanDatum,
    chi: &Character,
    chibar: &Character,
) -> Result<ClassicalComparison, Error> {
    if exp.order < 2 {
        return Err(Error::Precondition("classical comparison needs order ≥ 2".into()));
    }
    let l = cartan.rank;
    let zero_l = vec![Q::zero(); l];
    let zero_a = vec![0u32; l];
    let identity_h0 = exp.coeff(&zero_l, &zero_a, 0);
    let h0_clean = exp.at_order(0).iter().all(|(la, a, _)| **la == zero_l && **a == zero_a);
    let h1_vanishes = exp.at_order(1).is_empty();

    let ginv: RatMatrix = ratmat::inverse(&cartan.y_gram())
        .ok_or_else(|| Error::Domain("degenerate invariant form".into()))?;
    // Laplacian Σ_{pr} G^{pr} ∂_p ∂_r as a polynomial in ∂.
    let lap = |a: &[u32]| -> BigRational {
        let idx: Vec<usize> = a
            .iter()
            .enumerate()
            .flat_map(|(p, &k)| std::iter::repeat(p).take(k as usize))
            .collect();
        let (p, r) = (idx[0], idx[1]);
        let g = big(&ginv[p][r]);
        if p == r {
            g
        } else {
            g * BigRational::from_integer(2.into())
        }
    };
    let mut normalization: Option<BigRational> = None;
    let mut laplacian_matches = true;
    let mut stray_terms = Vec::new();
    let mut additive_constant = BigRational::zero();
    let mut potential = vec![BigRational::zero(); l];
    let quad: Vec<Vec<u32>> = multi_indices(l, 2);
    for a in &quad {
        let c = exp.coeff(&zero_l, a, 2);
        let g = lap(a);
        match (&normalization, g.is_zero()) {
            (_, true) => laplacian_matches &= c.is_zero(),
            (None, false) => normalization = Some(c / g),
            (Some(n), false) => laplacian_matches &= c == n * g,
        }
    }
    if normalization.as_ref().is_some_and(Zero::is_zero) {
        normalization = None;
    }
    for (la, a, c) in exp.at_order(2) {
        let deg: u32 = a.iter().sum();
        if *la == zero_l && deg == 2 {
            continue;
        }
        if *la == zero_l && deg == 0 {
            additive_constant = c.clone();
            continue;
        }
        let simple = (deg == 0)
            .then(|| {
                let nz: Vec<usize> = (0..l).filter(|&i| !la[i].is_zero()).collect();
                (nz.len() == 1 && la[nz[0]].is_one()).then(|| nz[0])
            })
            .flatten();
        match simple {
            Some(i) => potential[i] = c.clone(),
            None => stray_terms.push(format!(
                "char [{}] derivative {:?}: {c}",
                la.iter().map(q_to_string).collect::<Vec<_>>().join(","),
                a
            )),
        }
    }
    let potential_gauge = (0..l)
        .map(|i| {
            let n = normalization.as_ref()?;
            let cc = (&chi.values[i] * &chibar.values[i]).at_one()?;
            if cc.is_zero() || potential[i].is_zero() {
                return None;
            }
            Some(&potential[i] / (n * cc))
        })
        .collect();
    Ok(ClassicalComparison {
        identity_h0,
        h0_clean,
        h1_vanishes,
        normalization,
        laplacian_matches,
        potential_gauge,
        additive_constant,
        stray_terms,
    })
}

/// `Σ_j T_{ω_j}² − (q − q^{-1})² Σ_i χ(e_i)χ̄(f_i) e^{−hα_i(y)} T_{ω_{i+1}} T_{ω_i}`
/// for the vector representation of `sl(n)` with weights listed in order.
pub fn sl_reference(
    cartan: &CartanDatum,
    rep: &Representation,
    chi: &Character,
    chibar: &Character,
) -> Result<DifferenceOperator, Error> {
    let l = cartan.rank;
    if rep.dim != l + 1 {
        return Err(Error::Unsupported("reference formula needs the vector representation of sl(n)".into()));
    }
    let sharp = |w: &[i64]| -> Vec<Q> { w.iter().map(|&x| Q::from(x)).collect() };
    let mut out = DifferenceOperator::zero(&cartan.d);
    for w in &rep.weights {
        out.add_term(vec![Q::zero(); l], sharp(w).iter().map(|x| x * Q::from(2)).collect(), QScalar::one());
    }
    let qq = &QScalar::q() - &QScalar::q().inv();
    let k = -(&qq * &qq);
    for i in 0..l {
        let (wi, wj) = (&rep.weights[i], &rep.weights[i + 1]);
        let diff: Vec<i64> = wi.iter().zip(wj).map(|(a, b)| a - b).collect();
        if diff != cartan.a.iter().map(|row| row[i]).collect::<Vec<_>>() {
            return Err(Error::Unsupported(format!(
                "weights {} and {} do not differ by α_{}",
                i + 1,
                i + 2,
                i + 1
            )));
        }
        let mut la = vec![Q::zero(); l];
        la[i] = Q::one();
        let mu: Vec<Q> = sharp(wi).iter().zip(sharp(wj)).map(|(a, b)| a + b).collect();
        out.add_term(la, mu, &(&k * &chi.values[i]) * &chibar.values[i]);
    }
    Ok(out)
}

/// Term-by-term ratio of two operators.
#[derive(Clone, Debug)]
pub struct TermRatioReport {
    /// The common ratio, when all terms share one.
    pub unit: Option<QScalar>,
    pub ratios: Vec<(TermKey, QScalar)>,
    pub only_in_left: Vec<TermKey>,
    pub only_in_right: Vec<TermKey>,
}

impl TermRatioReport {
    /// Supports agree and one invertible monomial relates every term.
    pub fn passed(&self) -> bool {
        self.only_in_left.is_empty()
            && self.only_in_right.is_empty()
            && self.unit.as_ref().is_some_and(|u| u.as_monomial().is_some())
    }
}

pub fn term_ratio(computed: &DifferenceOperator, reference: &DifferenceOperator) -> TermRatioReport {
    let mut ratios = Vec::new();
    let mut only_in_left = Vec::new();
    let mut only_in_right = Vec::new();
    for (k, c) in computed.terms() {
        match reference.terms().get(k) {
            Some(r) => ratios.push((k.clone(), c / r)),
            None => only_in_left.push(k.clone()),
        }
    }
    for k in reference.terms().keys() {
        if !computed.terms().contains_key(k) {
            only_in_right.push(k.clone());
        }
    }
    let unit = ratios
        .first()
        .map(|(_, r)| r.clone())
        .filter(|u| ratios.iter().all(|(_, r)| r == u));
    TermRatioReport {
        unit,
        ratios,
        only_in_left,
        only_in_right,
    }
}

#[cfg(test)]
mod tests;
