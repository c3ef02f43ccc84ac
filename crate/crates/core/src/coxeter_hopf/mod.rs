//! Coxeter realizations: the isomorphism ψ onto the standard realization,
//! non-singular characters and the Whittaker projection, Hopf structure,
//! R-matrix with one leg in a representation, and central elements.
//!
//! Conventions used throughout:
//!
//! * `ψ(e_i) = X_i^+ Π_p L_p^{n_ip}`, `ψ(f_i) = Π_p L_p^{−n_ip} X_i^-`, with
//!   `L_p = e^{hY_p}`; `n` is the canonical solution of
//!   `d_j n_ij − d_i n_ji = c_ij` unless another one is supplied.
//! * `Δ(e_i) = e_i ⊗ e^{h d_i (2/(1−s))H_i} + 1 ⊗ e_i` and
//!   `Δ(f_i) = f_i ⊗ e^{−h d_i ((1+s)/(1−s))H_i} + K_i^{-1} ⊗ f_i`.
//! * The antipode follows from `μ(S ⊗ id)Δ = ε`:
//!   `S(e_i) = −e_i G_i^{-1}`, `S(f_i) = −K_i f_i e^{h d_i ((1+s)/(1−s))H_i}`.
//! * In `C_V` the trace is taken over the second tensor leg; the character
//!   is applied to the positive part of the first leg after straightening.

mod hopf;
mod rmatrix;

use std::sync::OnceLock;

use num_traits::Zero;

pub use hopf::{AntipodeSquareReport, HopfCheck};
pub use rmatrix::{MixedElement, RVariant};

use crate::cartan_root::{
    build_root_system, find_normal_ordering, CartanDatum, CoxeterDatum, NormalOrdering, RootSystem,
    DEFAULT_SEARCH_RANK,
};
use crate::qalgebra::{compute_a, Algebra, AlgebraElement, Hom, Monomial, Realization, RootVectors};
use crate::ratmat;
use crate::{Error, QScalar, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `χ` on the positive part.
    Positive,
    /// `χ̄` on the negative part.
    Negative,
}

/// Non-singular character: `c_i = χ(e_i)` (or `χ̄(f_i)`), each nonzero at `q = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    pub direction: Direction,
    pub values: Vec<QScalar>,
}

impl Character {
    pub fn new(direction: Direction, values: Vec<QScalar>) -> Result<Self, Error> {
        for (i, c) in values.iter().enumerate() {
            let ok = c.at_one().map_or(false, |v| !v.is_zero());
            if !ok {
                return Err(Error::Domain(format!(
                    "character value {c} at index {} vanishes or has a pole at q = 1",
                    i + 1
                )));
            }
        }
        Ok(Self { direction, values })
    }

    /// All values equal to 1.
    pub fn trivial(direction: Direction, rank: usize) -> Self {
        Self {
            direction,
            values: vec![QScalar::one(); rank],
        }
    }

    pub fn word(&self, w: &[usize]) -> QScalar {
        w.iter().fold(QScalar::one(), |acc, &i| &acc * &self.values[i])
    }

    /// Value on an element of the matching nilpotent part.
    pub fn apply(&self, x: &AlgebraElement) -> Result<QScalar, Error> {
        let mut acc = QScalar::zero();
        for (m, c) in x.terms() {
            let w = match self.direction {
                Direction::Positive if m.f.is_empty() && m.has_trivial_cartan() => &m.e,
                Direction::Negative if m.e.is_empty() && m.has_trivial_cartan() => &m.f,
                _ => {
                    return Err(Error::Precondition(
                        "character applied outside its nilpotent subalgebra".into(),
                    ))
                }
            };
            acc += &(c * &self.word(w));
        }
        Ok(acc)
    }
}

/// Everything attached to `(g, π, ordering)`.
#[derive(Debug)]
pub struct CoxeterSetup {
    pub datum: CoxeterDatum,
    pub roots: RootSystem,
    pub ordering: NormalOrdering,
    pub standard: Algebra,
    pub coxeter: Algebra,
    pub psi: Hom,
    pub psi_inv: Hom,
    pub std_roots: RootVectors,
    /// `a(β)` for every positive root (root-system indexing).
    pub a: Vec<QScalar>,
    /// `e_β = ψ^{-1}(X_β^+ e^{hKβ^∨})`.
    pub e_beta: Vec<AlgebraElement>,
    /// `f_β = ψ^{-1}(e^{−hKβ^∨} X_β^-)`.
    pub f_beta: Vec<AlgebraElement>,
    t2: OnceLock<Algebra>,
    t3: OnceLock<Algebra>,
}

impl CoxeterSetup {
    /// Default ordering: the lexicographically least π-compatible normal one.
    pub fn new(cartan: &CartanDatum, pi: &[usize], ordering: Option<NormalOrdering>) -> Result<Self, Error> {
        Self::with_datum(CoxeterDatum::new(cartan, pi)?, ordering)
    }

    pub fn with_datum(datum: CoxeterDatum, ordering: Option<NormalOrdering>) -> Result<Self, Error> {
        let roots = build_root_system(&datum.cartan);
        let ordering = match ordering {
            Some(o) => {
                if !o.is_normal(&roots) || !o.is_compatible(&roots, &datum.pi) {
                    return Err(Error::OrderingSearch(
                        "supplied ordering is not a π-compatible normal ordering".into(),
                    ));
                }
                o
            }
            None => find_normal_ordering(&roots, &datum.pi, DEFAULT_SEARCH_RANK.max(datum.rank()))?,
        };
        let standard = Algebra::standard(&datum.cartan, Some(&ordering));
        let coxeter = Algebra::coxeter(&datum, Some(&ordering));
        let l = datum.rank();
        let neg = |v: &[Q]| v.iter().map(|x| -x).collect::<Vec<Q>>();
        let ident: ratmat::RatMatrix = ratmat::identity(l);

        let mut pe = Vec::new();
        let mut pf = Vec::new();
        let mut ie = Vec::new();
        let mut if_ = Vec::new();
        for i in 0..l {
            let ln = standard.cartan_exp(&datum.n[i]);
            let lm = standard.cartan_exp(&neg(&datum.n[i]));
            pe.push(standard.mul(&standard.e(i), &ln)?);
            pf.push(standard.mul(&lm, &standard.f(i))?);
            let cn = coxeter.cartan_exp(&datum.n[i]);
            let cm = coxeter.cartan_exp(&neg(&datum.n[i]));
            ie.push(coxeter.mul(&coxeter.e(i), &cm)?);
            if_.push(coxeter.mul(&cn, &coxeter.f(i))?);
        }
        let psi = Hom {
            source: coxeter.tag().clone(),
            e_images: pe,
            f_images: pf,
            cartan_map: ident.clone(),
        };
        let psi_inv = Hom {
            source: standard.tag().clone(),
            e_images: ie,
            f_images: if_,
            cartan_map: ident,
        };
        let std_roots = RootVectors::build(&standard, &roots, &ordering)?;
        let a = (0..roots.len())
            .map(|k| compute_a(&standard, &roots, &std_roots, k))
            .collect::<Result<Vec<_>, _>>()?;
        let mut e_beta = Vec::new();
        let mut f_beta = Vec::new();
        for k in 0..roots.len() {
            let ky = datum.k_root_in_y(roots.root(k));
            let plus = standard.mul(&std_roots.plus[k], &standard.cartan_exp(&ky))?;
            let minus = standard.mul(&standard.cartan_exp(&neg(&ky)), &std_roots.minus[k])?;
            let eb = psi_inv.apply(&coxeter, &plus)?;
            let fb = psi_inv.apply(&coxeter, &minus)?;
            if !eb.is_positive_part() || !fb.is_negative_part() {
                return Err(Error::Residual(format!(
                    "root vectors for {:?} keep Cartan content in the Coxeter realization",
                    roots.root(k)
                )));
            }
            e_beta.push(eb);
            f_beta.push(fb);
        }
        Ok(Self {
            datum,
            roots,
            ordering,
            standard,
            coxeter,
            psi,
            psi_inv,
            std_roots,
            a,
            e_beta,
            f_beta,
            t2: OnceLock::new(),
            t3: OnceLock::new(),
        })
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn cartan(&self) -> &CartanDatum {
        &self.datum.cartan
    }

    pub fn tensor_square(&self) -> &Algebra {
        self.t2.get_or_init(|| self.coxeter.tensor_power(2))
    }

    pub fn tensor_cube(&self) -> &Algebra {
        self.t3.get_or_init(|| self.coxeter.tensor_power(3))
    }

    pub fn psi_forward(&self, x: &AlgebraElement) -> Result<AlgebraElement, Error> {
        self.psi.apply(&self.standard, x)
    }

    pub fn psi_inverse(&self, x: &AlgebraElement) -> Result<AlgebraElement, Error> {
        self.psi_inv.apply(&self.coxeter, x)
    }

    /// Defining relations of the Coxeter realization as formal products of
    /// generators: mixed relations for all `(i, j)` and both Serre families.
    pub fn relations(&self) -> Vec<(String, Vec<(Vec<AlgebraElement>, QScalar)>)> {
        let l = self.rank();
        let alg = &self.coxeter;
        let mut out = Vec::new();
        for i in 0..l {
            for j in 0..l {
                out.push((format!("mixed({},{})", i + 1, j + 1), alg.mixed_relation_terms(i, j)));
            }
        }
        for i in 0..l {
            for j in 0..l {
                if i == j {
                    continue;
                }
                for pos in [true, false] {
                    let s = alg.serre_element(i, j, pos);
                    let terms = s
                        .terms()
                        .iter()
                        .map(|(m, c)| {
                            let w = if pos { &m.e } else { &m.f };
                            let gens = w
                                .iter()
                                .map(|&x| if pos { alg.e(x) } else { alg.f(x) })
                                .collect();
                            (gens, c.clone())
                        })
                        .collect();
                    let name = if pos { "serre+" } else { "serre-" };
                    out.push((format!("{name}({},{})", i + 1, j + 1), terms));
                }
            }
        }
        out
    }

    /// Image of every defining relation under ψ, normalized in the standard
    /// realization. Returns the names of relations whose image is nonzero.
    pub fn check_psi_relations(&self) -> Result<Vec<String>, Error> {
        let mut bad = Vec::new();
        for (name, terms) in self.relations() {
            let mut acc = self.standard.zero();
            for (gens, c) in terms {
                let images = gens
                    .iter()
                    .map(|g| self.psi_forward(g))
                    .collect::<Result<Vec<_>, _>>()?;
                let refs: Vec<&AlgebraElement> = images.iter().collect();
                acc = &acc + &self.standard.product(&refs)?.scale(&c);
            }
            if !self.standard.normalize(&acc)?.is_zero() {
                bad.push(name);
            }
        }
        Ok(bad)
    }

    /// `ρ_χ`: straighten, then replace every e-word by its character value.
    pub fn rho_chi(&self, x: &AlgebraElement, chi: &Character) -> Result<AlgebraElement, Error> {
        rho_chi(x, chi)
    }

    /// `x · v = ρ_χ([x, v])`.
    pub fn dot_action(&self, x: &AlgebraElement, v: &AlgebraElement, chi: &Character) -> Result<AlgebraElement, Error> {
        rho_chi(&self.coxeter.commutator(x, v)?, chi)
    }

    /// `χ(e_β)` for every positive root.
    pub fn character_on_roots(&self, chi: &Character, chibar: &Character) -> Result<Vec<(QScalar, QScalar)>, Error> {
        (0..self.roots.len())
            .map(|k| Ok((chi.apply(&self.e_beta[k])?, chibar.apply(&self.f_beta[k])?)))
            .collect()
    }
}

/// Projection along the left ideal generated by `w − χ(w)`; `x` must be in
/// triangular form (any product output is).
pub fn rho_chi(x: &AlgebraElement, chi: &Character) -> Result<AlgebraElement, Error> {
    if chi.direction != Direction::Positive {
        return Err(Error::Precondition("ρ_χ needs a character of the positive part".into()));
    }
    if !matches!(x.tag().realization, Realization::Coxeter { .. }) || x.tag().legs != 1 {
        return Err(Error::RealizationMismatch("ρ_χ acts on the Coxeter realization".into()));
    }
    Ok(AlgebraElement::from_terms(
        x.tag().clone(),
        x.cartan_dim(),
        x.terms().iter().map(|(m, c)| {
            (
                Monomial {
                    f: m.f.clone(),
                    cartan: m.cartan.clone(),
                    e: Vec::new(),
                },
                c * &chi.word(&m.e),
            )
        }),
    ))
}

#[cfg(test)]
mod tests;
