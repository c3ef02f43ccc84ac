use std::collections::BTreeMap;

use super::{Character, CoxeterSetup};
use crate::qalgebra::{Algebra, AlgebraElement, Monomial};
use crate::qscalar::qexp_factorial_at;
use crate::representations::{QMatrix, Representation};
use crate::{Error, QScalar, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RVariant {
    R,
    /// The flipped `R_21 = σR`.
    R21,
}

/// `Σ x_m ⊗ M_m`: first leg in the Coxeter realization, second leg a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedElement {
    terms: BTreeMap<Monomial, QMatrix>,
    dim: usize,
}

impl MixedElement {
    pub fn zero(dim: usize) -> Self {
        Self {
            terms: BTreeMap::new(),
            dim,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, QMatrix> {
        &self.terms
    }

    pub fn add_term(&mut self, m: Monomial, x: QMatrix) {
        if x.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&m) {
            Some(old) => &old + &x,
            None => x,
        };
        if !merged.is_zero() {
            self.terms.insert(m, merged);
        }
    }

    /// `x ⊗ M`.
    pub fn from_parts(x: &AlgebraElement, m: &QMatrix) -> Self {
        let mut out = Self::zero(m.dim());
        for (mono, c) in x.terms() {
            out.add_term(mono.clone(), m.scale(c));
        }
        out
    }

    pub fn mul(&self, alg: &Algebra, other: &Self) -> Result<Self, Error> {
        let mut out = Self::zero(self.dim);
        for (m1, x1) in &self.terms {
            let a = AlgebraElement::from_monomial(alg.tag().clone(), m1.clone(), QScalar::one());
            for (m2, x2) in &other.terms {
                let b = AlgebraElement::from_monomial(alg.tag().clone(), m2.clone(), QScalar::one());
                let ab = alg.mul(&a, &b)?;
                let xy = x1 * x2;
                for (m, c) in ab.terms() {
                    out.add_term(m.clone(), xy.scale(c));
                }
            }
        }
        Ok(out)
    }

    /// `(id ⊗ tr)(X (1 ⊗ w))`.
    pub fn trace_against(&self, alg: &Algebra, w: &QMatrix) -> AlgebraElement {
        let mut out = alg.zero();
        for (m, x) in &self.terms {
            let t = (x * w).trace();
            out.add_term(m.clone(), t);
        }
        out
    }

    /// Replace every first-leg e-word by its character value.
    pub fn project(&self, chi: &Character) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, x) in &self.terms {
            let mono = Monomial {
                f: m.f.clone(),
                cartan: m.cartan.clone(),
                e: Vec::new(),
            };
            out.add_term(mono, x.scale(&chi.word(&m.e)));
        }
        out
    }
}

fn nilpotency_error(k: &[i64]) -> Error {
    Error::Representation(format!(
        "R-matrix factor for root {k:?} is not nilpotent on the representation"
    ))
}

impl CoxeterSetup {
    /// `(q − q^{-1}) / a(β)`.
    pub fn r_coefficient(&self, k: usize) -> Result<QScalar, Error> {
        if self.a[k].is_zero() {
            return Err(Error::Pole(format!("a(β) vanishes for {:?}", self.roots.root(k))));
        }
        let qq = &QScalar::q() - &QScalar::q().inv();
        Ok(&qq * &self.a[k].inv())
    }

    /// `[(q − q^{-1})/a(β)]^n / (n)_{q_β^{-1}}!` with `q_β = q^{(β,β)}`.
    pub fn r_series_coefficient(&self, k: usize, n: u32) -> Result<QScalar, Error> {
        let bb = Q::from(self.roots.pairing(k, k));
        let num = self.r_coefficient(k)?.pow(i64::from(n));
        Ok(&num * &qexp_factorial_at(n, -bb).inv())
    }

    /// Exponent of the Cartan factor `e^{h(Σ Y_i⊗H_i + Σ CH_i⊗Y_i)}`
    /// contracted with a weight on one side.
    fn e0_first_leg(&self, mu_h: &[i64], mu_y: &[Q], variant: RVariant) -> Vec<Q> {
        let l = self.rank();
        let cart = self.cartan();
        let mut y = vec![Q::from(0); l];
        match variant {
            RVariant::R => {
                for i in 0..l {
                    y[i] += Q::from(mu_h[i]);
                    let ch = self.datum.cayley_h_in_y(i);
                    for j in 0..l {
                        y[j] += mu_y[i] * ch[j];
                    }
                }
            }
            RVariant::R21 => {
                for i in 0..l {
                    let h = cart.h_in_y(i);
                    let ch_mu: Q = self.datum.cayley_h_in_y(i).iter().zip(mu_y).map(|(a, b)| a * b).sum();
                    for j in 0..l {
                        y[j] += mu_y[i] * h[j];
                    }
                    y[i] += ch_mu;
                }
            }
        }
        y
    }

    fn cartan_element(&self, y: &[Q]) -> AlgebraElement {
        self.coxeter.cartan_exp(y)
    }

    fn rep_cayley_f(&self, rep: &Representation, k: usize) -> Result<QMatrix, Error> {
        let cart = self.cartan();
        let c = rep.cartan_diag(cart, &self.datum.cayley_root_in_y(self.roots.root(k)));
        Ok(&c * &rep.eval(cart, Some(&self.datum.n), &self.f_beta[k])?)
    }

    /// Algebra element `e^{hCβ^∨} f_β`.
    pub fn cayley_f(&self, k: usize) -> Result<AlgebraElement, Error> {
        let c = self.cartan_element(&self.datum.cayley_root_in_y(self.roots.root(k)));
        self.coxeter.mul(&c, &self.f_beta[k])
    }

    /// Universal R-matrix (or `R_21`) with the second leg evaluated in `rep`.
    /// With `chi`, first-leg e-words of `R` are replaced by character values
    /// as the product is formed.
    pub fn r_matrix_leg2(
        &self,
        rep: &Representation,
        variant: RVariant,
        chi: Option<&Character>,
    ) -> Result<MixedElement, Error> {
        let cart = self.cartan();
        let n = rep.dim;
        let mu_y = rep.weights_on_y(cart);
        let mut acc = MixedElement::zero(n);
        for k in 0..n {
            let y = self.e0_first_leg(&rep.weights[k], &mu_y[k], variant);
            acc.add_term(
                Monomial {
                    f: Vec::new(),
                    cartan: y,
                    e: Vec::new(),
                },
                QMatrix::unit(n, k, k),
            );
        }
        for &k in &self.ordering.order {
            let (first, second) = match variant {
                RVariant::R => (
                    self.e_beta[k].clone(),
                    self.rep_cayley_f(rep, k)?,
                ),
                RVariant::R21 => (
                    self.cayley_f(k)?,
                    rep.eval(cart, Some(&self.datum.n), &self.e_beta[k])?,
                ),
            };
            let mut factor = MixedElement::zero(n);
            factor.add_term(Monomial::unit(self.rank()), QMatrix::identity(n));
            let mut xp = self.coxeter.one();
            let mut mp = QMatrix::identity(n);
            let mut p = 0u32;
            loop {
                p += 1;
                mp = &mp * &second;
                if mp.is_zero() {
                    break;
                }
                if p as usize > n {
                    return Err(nilpotency_error(self.roots.root(k)));
                }
                xp = self.coxeter.mul(&xp, &first)?;
                let first_leg = match (variant, chi) {
                    (RVariant::R, Some(c)) => self.coxeter.scalar(c.apply(&xp)?),
                    _ => xp.clone(),
                };
                let coef = self.r_series_coefficient(k, p)?;
                let part = MixedElement::from_parts(&first_leg, &mp.scale(&coef));
                for (m, x) in part.terms {
                    factor.add_term(m, x);
                }
            }
            acc = acc.mul(&self.coxeter, &factor)?;
        }
        Ok(acc)
    }

    /// `R_21 R (1 ⊗ e^{2hρ^∨})` with the second leg in `rep`, before the trace.
    pub fn r21_r(&self, rep: &Representation, chi: Option<&Character>) -> Result<MixedElement, Error> {
        let r21 = self.r_matrix_leg2(rep, RVariant::R21, None)?;
        let r = self.r_matrix_leg2(rep, RVariant::R, chi)?;
        r21.mul(&self.coxeter, &r)
    }

    /// `diag(q^{2ρ^∨(μ)})` on `rep`.
    pub fn two_rho_matrix(&self, rep: &Representation) -> QMatrix {
        rep.cartan_diag(self.cartan(), &vec![Q::from(2); self.rank()])
    }

    /// `C_V = (id ⊗ tr_V)(R_21 R (1 ⊗ e^{2hρ^∨}))`.
    pub fn central_element(&self, rep: &Representation) -> Result<AlgebraElement, Error> {
        let x = self.r21_r(rep, None)?;
        Ok(x.trace_against(&self.coxeter, &self.two_rho_matrix(rep)))
    }

    /// `ρ_χ(C_V)`, computed by substituting `χ(e_β)` inside `R`.
    pub fn projected_central_element(&self, rep: &Representation, chi: &Character) -> Result<AlgebraElement, Error> {
        let x = self.r21_r(rep, Some(chi))?;
        Ok(x.trace_against(&self.coxeter, &self.two_rho_matrix(rep)))
    }

    /// Generators that fail to commute with `c` after normalization.
    pub fn centrality_failures(&self, c: &AlgebraElement) -> Result<Vec<String>, Error> {
        let mut bad = Vec::new();
        for (name, g) in self.generators() {
            let comm = self.coxeter.commutator(&g, c)?;
            if !self.coxeter.normalize(&comm)?.is_zero() {
                bad.push(name);
            }
        }
        Ok(bad)
    }

    /// Evaluate a tensor-square element on `V ⊗ W`.
    pub fn eval_tensor(&self, v: &Representation, w: &Representation, x: &AlgebraElement) -> Result<QMatrix, Error> {
        let t2 = self.tensor_square();
        let cart = self.cartan();
        let mut out = QMatrix::zero(v.dim * w.dim);
        for (m, c) in x.terms() {
            let legs = t2.split_legs(m);
            let one = |mono: &Monomial| {
                AlgebraElement::from_monomial(self.coxeter.tag().clone(), mono.clone(), QScalar::one())
            };
            let a = v.eval(cart, Some(&self.datum.n), &one(&legs[0]))?;
            let b = w.eval(cart, Some(&self.datum.n), &one(&legs[1]))?;
            out = &out + &a.kron(&b).scale(c);
        }
        Ok(out)
    }

    /// Diagonal of the Cartan factor of `R` on `V ⊗ W`.
    fn e0_full(&self, v: &Representation, w: &Representation) -> QMatrix {
        let cart = self.cartan();
        let vy = v.weights_on_y(cart);
        let wy = w.weights_on_y(cart);
        let mut d = Vec::with_capacity(v.dim * w.dim);
        for r in 0..v.dim {
            for s in 0..w.dim {
                let mut e = Q::from(0);
                for i in 0..self.rank() {
                    e += vy[r][i] * Q::from(w.weights[s][i]);
                    let ch: Q = self.datum.cayley_h_in_y(i).iter().zip(&vy[r]).map(|(a, b)| a * b).sum();
                    e += ch * wy[s][i];
                }
                d.push(QScalar::q_pow(e));
            }
        }
        QMatrix::diag(d)
    }

    /// `Σ_n c_n A^n ⊗ B^n`, failing when the series does not terminate.
    fn factor_matrix(&self, k: usize, a: &QMatrix, b: &QMatrix) -> Result<QMatrix, Error> {
        let dim = a.dim() * b.dim();
        let mut out = QMatrix::identity(dim);
        let (mut ap, mut bp) = (QMatrix::identity(a.dim()), QMatrix::identity(b.dim()));
        let mut p = 0u32;
        loop {
            p += 1;
            ap = &ap * a;
            bp = &bp * b;
            let t = ap.kron(&bp);
            if t.is_zero() {
                return Ok(out);
            }
            if p as usize > dim {
                return Err(nilpotency_error(self.roots.root(k)));
            }
            out = &out + &t.scale(&self.r_series_coefficient(k, p)?);
        }
    }

    /// The R-matrix evaluated on `V ⊗ W`.
    pub fn r_matrix_full(&self, v: &Representation, w: &Representation) -> Result<QMatrix, Error> {
        let cart = self.cartan();
        let n = Some(&self.datum.n);
        let mut out = self.e0_full(v, w);
        for &k in &self.ordering.order {
            let a = v.eval(cart, n, &self.e_beta[k])?;
            let b = w.eval(cart, n, &self.cayley_f(k)?)?;
            out = &out * &self.factor_matrix(k, &a, &b)?;
        }
        Ok(out)
    }

    /// `(S ⊗ S)R` evaluated on `V ⊗ W`.
    pub fn r_matrix_antipode_full(&self, v: &Representation, w: &Representation) -> Result<QMatrix, Error> {
        let cart = self.cartan();
        let n = Some(&self.datum.n);
        let mut out = QMatrix::identity(v.dim * w.dim);
        for &k in self.ordering.order.iter().rev() {
            let a = v.eval(cart, n, &self.antipode(&self.e_beta[k])?)?;
            let b = w.eval(cart, n, &self.antipode(&self.cayley_f(k)?)?)?;
            out = &out * &self.factor_matrix(k, &a, &b)?;
        }
        Ok(&out * &self.e0_full(v, w))
    }

    /// `R_12 R_13 R_23 = R_23 R_13 R_12` on `V ⊗ V ⊗ V`.
    pub fn yang_baxter_holds(&self, v: &Representation) -> Result<bool, Error> {
        let r = self.r_matrix_full(v, v)?;
        let n = v.dim;
        let id = QMatrix::identity(n);
        let r12 = r.kron(&id);
        let r23 = id.kron(&r);
        let p23 = id.kron(&swap(n));
        let r13 = &(&p23 * &r12) * &p23;
        let lhs = &(&r12 * &r13) * &r23;
        let rhs = &(&r23 * &r13) * &r12;
        Ok(lhs == rhs)
    }

    /// `R Δ(x) = Δ^op(x) R` on `V ⊗ V` for every generator.
    pub fn quasitriangular_failures(&self, v: &Representation) -> Result<Vec<String>, Error> {
        let r = self.r_matrix_full(v, v)?;
        let p = swap(v.dim);
        let mut bad = Vec::new();
        for (name, g) in self.generators() {
            let d = self.eval_tensor(v, v, &self.coproduct(&g)?)?;
            let dop = &(&p * &d) * &p;
            if &r * &d != &dop * &r {
                bad.push(name);
            }
        }
        Ok(bad)
    }
}

/// Flip `P(x ⊗ y) = y ⊗ x` on `V ⊗ V`.
pub fn swap(n: usize) -> QMatrix {
    let mut p = QMatrix::zero(n * n);
    for i in 0..n {
        for j in 0..n {
            p.set(j * n + i, i * n + j, QScalar::one());
        }
    }
    p
}
