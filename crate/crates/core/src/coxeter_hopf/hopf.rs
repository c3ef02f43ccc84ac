use super::CoxeterSetup;
use crate::qalgebra::{AlgebraElement, Hom, Monomial};
use crate::{Error, QScalar, Q};

/// One named identity and whether it held.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AntipodeSquareReport {
    pub checks: Vec<HopfCheck>,
}

impl AntipodeSquareReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn neg(v: &[Q]) -> Vec<Q> {
    v.iter().map(|x| -x).collect()
}

impl CoxeterSetup {
    /// `Y`-coordinates of `G_i = e^{h d_i (2/(1−s))H_i}`.
    pub fn g_coords(&self, i: usize) -> Vec<Q> {
        self.datum.twist_g_in_y(i)
    }

    /// `Y`-coordinates of `e^{h d_i ((1+s)/(1−s))H_i}`.
    pub fn cayley_d_h(&self, i: usize) -> Vec<Q> {
        let m: Vec<i64> = (0..self.rank()).map(|j| i64::from(i == j)).collect();
        self.datum.cayley_root_in_y(&m)
    }

    /// `Δ` as a homomorphism into the tensor square.
    pub fn coproduct_hom(&self) -> Result<Hom, Error> {
        let a = &self.coxeter;
        let t2 = self.tensor_square();
        let l = self.rank();
        let mut e_images = Vec::new();
        let mut f_images = Vec::new();
        for i in 0..l {
            let g = a.cartan_exp(&self.g_coords(i));
            e_images.push(&t2.tensor(&[&a.e(i), &g])? + &t2.tensor(&[&a.one(), &a.e(i)])?);
            let c = a.cartan_exp(&neg(&self.cayley_d_h(i)));
            f_images.push(&t2.tensor(&[&a.f(i), &c])? + &t2.tensor(&[&a.k(i, -1), &a.f(i)])?);
        }
        let cartan_map = (0..l)
            .map(|p| (0..2 * l).map(|r| Q::from(i64::from(r % l == p))).collect())
            .collect();
        Ok(Hom {
            source: a.tag().clone(),
            e_images,
            f_images,
            cartan_map,
        })
    }

    pub fn coproduct(&self, x: &AlgebraElement) -> Result<AlgebraElement, Error> {
        self.coproduct_hom()?.apply(self.tensor_square(), x)
    }

    pub fn counit(&self, x: &AlgebraElement) -> QScalar {
        let mut acc = QScalar::zero();
        for (m, c) in x.terms() {
            if m.f.is_empty() && m.e.is_empty() {
                acc += c;
            }
        }
        acc
    }

    fn antipode_e(&self, i: usize) -> Result<AlgebraElement, Error> {
        let a = &self.coxeter;
        Ok(-&a.mul(&a.e(i), &a.cartan_exp(&neg(&self.g_coords(i))))?)
    }

    fn antipode_f(&self, i: usize) -> Result<AlgebraElement, Error> {
        let a = &self.coxeter;
        let c = a.cartan_exp(&self.cayley_d_h(i));
        Ok(-&a.product(&[&a.k(i, 1), &a.f(i), &c])?)
    }

    /// Antipode, extended as an algebra anti-homomorphism.
    pub fn antipode(&self, x: &AlgebraElement) -> Result<AlgebraElement, Error> {
        let a = &self.coxeter;
        let se: Vec<AlgebraElement> = (0..self.rank()).map(|i| self.antipode_e(i)).collect::<Result<_, _>>()?;
        let sf: Vec<AlgebraElement> = (0..self.rank()).map(|i| self.antipode_f(i)).collect::<Result<_, _>>()?;
        let mut out = a.zero();
        for (m, c) in x.terms() {
            let mut acc = a.scalar(c.clone());
            for &i in m.e.iter().rev() {
                acc = a.mul(&acc, &se[i])?;
            }
            acc = a.mul(&acc, &a.cartan_exp(&neg(&m.cartan)))?;
            for &i in m.f.iter().rev() {
                acc = a.mul(&acc, &sf[i])?;
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    fn single(&self, m: Monomial) -> AlgebraElement {
        AlgebraElement::from_monomial(self.coxeter.tag().clone(), m, QScalar::one())
    }

    /// `μ ∘ (S ⊗ id)` (or `(id ⊗ S)`) of a tensor-square element.
    pub fn mu_antipode(&self, x: &AlgebraElement, on_left: bool) -> Result<AlgebraElement, Error> {
        let a = &self.coxeter;
        let t2 = self.tensor_square();
        let mut out = a.zero();
        for (m, c) in x.terms() {
            let legs = t2.split_legs(m);
            let (l, r) = (self.single(legs[0].clone()), self.single(legs[1].clone()));
            let p = if on_left {
                a.mul(&self.antipode(&l)?, &r)?
            } else {
                a.mul(&l, &self.antipode(&r)?)?
            };
            out = &out + &p.scale(c);
        }
        Ok(out)
    }

    /// `(Δ ⊗ id)` or `(id ⊗ Δ)` of a tensor-square element, in the cube.
    pub fn coproduct_on_leg(&self, x: &AlgebraElement, leg: usize) -> Result<AlgebraElement, Error> {
        let t2 = self.tensor_square();
        let t3 = self.tensor_cube();
        let mut out = t3.zero();
        for (m, c) in x.terms() {
            let legs = t2.split_legs(m);
            let (l, r) = (self.single(legs[0].clone()), self.single(legs[1].clone()));
            let p = if leg == 0 {
                t3.mul(&t3.embed_leg(&self.coproduct(&l)?, 0), &t3.embed_leg(&r, 2))?
            } else {
                t3.mul(&t3.embed_leg(&l, 0), &t3.embed_leg(&self.coproduct(&r)?, 1))?
            };
            out = &out + &p.scale(c);
        }
        Ok(out)
    }

    /// Generators `e_i`, `f_i`, `L_p` with printable names.
    pub fn generators(&self) -> Vec<(String, AlgebraElement)> {
        let a = &self.coxeter;
        let l = self.rank();
        let mut out = Vec::new();
        for i in 0..l {
            out.push((format!("e{}", i + 1), a.e(i)));
            out.push((format!("f{}", i + 1), a.f(i)));
        }
        for p in 0..l {
            out.push((format!("L{}", p + 1), a.l(p, Q::from(1))));
        }
        out
    }

    /// Hopf axioms on generators: antipode axiom on both sides, counit,
    /// coassociativity.
    pub fn hopf_axiom_checks(&self) -> Result<Vec<HopfCheck>, Error> {
        let a = &self.coxeter;
        let t2 = self.tensor_square();
        let t3 = self.tensor_cube();
        let mut out = Vec::new();
        for (name, g) in self.generators() {
            let d = self.coproduct(&g)?;
            let eps = a.scalar(self.counit(&g));
            for (side, left) in [("S⊗id", true), ("id⊗S", false)] {
                let v = self.mu_antipode(&d, left)?;
                out.push(HopfCheck {
                    name: format!("antipode {side} on {name}"),
                    passed: a.equal(&v, &eps)?,
                });
            }
            // (ε ⊗ id)Δ = id
            let mut counit_left = a.zero();
            for (m, c) in d.terms() {
                let legs = t2.split_legs(m);
                let e = self.counit(&self.single(legs[0].clone()));
                counit_left = &counit_left + &self.single(legs[1].clone()).scale(&(c * &e));
            }
            out.push(HopfCheck {
                name: format!("counit on {name}"),
                passed: a.equal(&counit_left, &g)?,
            });
            let l3 = self.coproduct_on_leg(&d, 0)?;
            let r3 = self.coproduct_on_leg(&d, 1)?;
            out.push(HopfCheck {
                name: format!("coassociativity on {name}"),
                passed: t3.equal(&l3, &r3)?,
            });
        }
        Ok(out)
    }

    /// `Δ` of every defining relation, normalized in the tensor square.
    pub fn coproduct_relation_checks(&self) -> Result<Vec<HopfCheck>, Error> {
        let t2 = self.tensor_square();
        let hom = self.coproduct_hom()?;
        let mut out = Vec::new();
        for (name, terms) in self.relations() {
            let mut acc = t2.zero();
            for (gens, c) in terms {
                let images = gens
                    .iter()
                    .map(|g| hom.apply(t2, g))
                    .collect::<Result<Vec<_>, _>>()?;
                let refs: Vec<&AlgebraElement> = images.iter().collect();
                acc = &acc + &t2.product(&refs)?.scale(&c);
            }
            out.push(HopfCheck {
                name: format!("Δ {name}"),
                passed: t2.normalize(&acc)?.is_zero(),
            });
        }
        Ok(out)
    }

    /// `S²(x) = e^{2hρ^∨} x e^{−2hρ^∨}` on every generator.
    pub fn antipode_square_check(&self) -> Result<AntipodeSquareReport, Error> {
        let a = &self.coxeter;
        let two_rho: Vec<Q> = vec![Q::from(2); self.rank()];
        let (u, ui) = (a.cartan_exp(&two_rho), a.cartan_exp(&neg(&two_rho)));
        let mut checks = Vec::new();
        for (name, g) in self.generators() {
            let s2 = self.antipode(&self.antipode(&g)?)?;
            let conj = a.product(&[&u, &g, &ui])?;
            checks.push(HopfCheck {
                name: format!("S^2 on {name}"),
                passed: a.equal(&s2, &conj)?,
            });
        }
        Ok(AntipodeSquareReport { checks })
    }
}
