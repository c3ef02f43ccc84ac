//! Elements of the quantum group in triangular form `f-word · e^{hy} · e-word`
//! and the straightening engine for the standard and Coxeter realizations.

mod algebra;
mod hom;
mod rewrite;
mod roots;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde_json::{json, Value};

use crate::ratmat;
use crate::{Error, QScalar, Q};

pub use algebra::Algebra;
pub use hom::Hom;
pub use rewrite::{Budget, RewriteStats};
pub use roots::{compute_a, root_vector, RootVector, RootVectors, Sign};

/// Letters are generator indices `0..rank` (times the number of tensor legs).
pub type Word = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Realization {
    Standard,
    /// Twisted relations of the Coxeter element `s_π` (0-based `π`).
    Coxeter { pi: Vec<usize> },
}

/// Realization together with the number of tensor legs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tag {
    pub realization: Realization,
    pub legs: usize,
}

/// `f-word · e^{h Σ y_p Y_p} · e-word`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub f: Word,
    pub cartan: Vec<Q>,
    pub e: Word,
}

impl Monomial {
    pub fn unit(n: usize) -> Self {
        Self {
            f: Vec::new(),
            cartan: vec![Q::zero(); n],
            e: Vec::new(),
        }
    }

    pub fn is_cartan_only(&self) -> bool {
        self.f.is_empty() && self.e.is_empty()
    }

    pub fn has_trivial_cartan(&self) -> bool {
        self.cartan.iter().all(Zero::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<Monomial, QScalar>,
    tag: Tag,
    /// Number of Cartan coordinates (rank times legs).
    dim: usize,
}

impl AlgebraElement {
    pub fn zero(tag: Tag, dim: usize) -> Self {
        Self {
            terms: BTreeMap::new(),
            tag,
            dim,
        }
    }

    pub fn from_monomial(tag: Tag, m: Monomial, c: QScalar) -> Self {
        let dim = m.cartan.len();
        let mut x = Self::zero(tag, dim);
        x.add_term(m, c);
        x
    }

    pub fn from_terms(tag: Tag, dim: usize, terms: impl IntoIterator<Item = (Monomial, QScalar)>) -> Self {
        let mut x = Self::zero(tag, dim);
        for (m, c) in terms {
            x.add_term(m, c);
        }
        x
    }

    pub fn tag(&self) -> &Tag {
        &self.tag
    }

    pub fn cartan_dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, QScalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, QScalar> {
        self.terms
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

    pub fn add_term(&mut self, m: Monomial, c: QScalar) {
        debug_assert_eq!(m.cartan.len(), self.dim);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn coeff(&self, m: &Monomial) -> QScalar {
        self.terms.get(m).cloned().unwrap_or_else(QScalar::zero)
    }

    pub fn scale(&self, s: &QScalar) -> Self {
        Self::from_terms(
            self.tag.clone(),
            self.dim,
            self.terms.iter().map(|(m, c)| (m.clone(), c * s)),
        )
    }

    pub fn map_scalars(&self, f: impl Fn(&QScalar) -> QScalar) -> Self {
        Self::from_terms(
            self.tag.clone(),
            self.dim,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    /// No term carries a Cartan exponential.
    pub fn is_cartan_free(&self) -> bool {
        self.terms.keys().all(Monomial::has_trivial_cartan)
    }

    /// Every term lies in the span of pure e-words.
    pub fn is_positive_part(&self) -> bool {
        self.terms.keys().all(|m| m.f.is_empty() && m.has_trivial_cartan())
    }

    /// Every term lies in the span of pure f-words.
    pub fn is_negative_part(&self) -> bool {
        self.terms.keys().all(|m| m.e.is_empty() && m.has_trivial_cartan())
    }

    /// Per letter, (e-degree − f-degree) when it is the same for every term.
    pub fn weight(&self, letters: usize) -> Option<Vec<i64>> {
        let mut out: Option<Vec<i64>> = None;
        for m in self.terms.keys() {
            let mut w = vec![0i64; letters];
            for &x in &m.e {
                w[x] += 1;
            }
            for &x in &m.f {
                w[x] -= 1;
            }
            match &out {
                None => out = Some(w),
                Some(o) if *o == w => {}
                Some(_) => return None,
            }
        }
        out
    }

    fn check_tag(&self, other: &Self) {
        assert!(
            self.tag == other.tag && self.dim == other.dim,
            "mixing elements of different realizations"
        );
    }

    fn letter_name(&self, x: usize, positive: bool) -> String {
        let l = self.dim / self.tag.legs.max(1);
        let (leg, k) = (x / l, x % l + 1);
        let base = match (&self.tag.realization, positive) {
            (Realization::Standard, true) => format!("X+{k}"),
            (Realization::Standard, false) => format!("X-{k}"),
            (Realization::Coxeter { .. }, true) => format!("e{k}"),
            (Realization::Coxeter { .. }, false) => format!("f{k}"),
        };
        if self.tag.legs > 1 {
            format!("{base}[{}]", leg + 1)
        } else {
            base
        }
    }

    fn monomial_text(&self, m: &Monomial) -> String {
        let mut parts: Vec<String> = m.f.iter().map(|&x| self.letter_name(x, false)).collect();
        if !m.has_trivial_cartan() {
            let y: Vec<String> = m
                .cartan
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(p, v)| format!("{}*Y{}", ratmat::q_to_string(v), p + 1))
                .collect();
            parts.push(format!("exp(h({}))", y.join(" + ")));
        }
        parts.extend(m.e.iter().map(|&x| self.letter_name(x, true)));
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let letter = |x: usize, pos: bool| {
            let l = self.dim / self.tag.legs.max(1);
            let k = x % l + 1;
            let base = match (&self.tag.realization, pos) {
                (Realization::Standard, true) => format!("X_{{{k}}}^+"),
                (Realization::Standard, false) => format!("X_{{{k}}}^-"),
                (Realization::Coxeter { .. }, true) => format!("e_{{{k}}}"),
                (Realization::Coxeter { .. }, false) => format!("f_{{{k}}}"),
            };
            if self.tag.legs > 1 {
                format!("{base}^{{({})}}", x / l + 1)
            } else {
                base
            }
        };
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let mut s = format!("\\left({c}\\right)");
            for &x in &m.f {
                s.push(' ');
                s.push_str(&letter(x, false));
            }
            if !m.has_trivial_cartan() {
                let y: Vec<String> = m
                    .cartan
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(p, v)| format!("{} Y_{{{}}}", ratmat::q_to_string(v), p + 1))
                    .collect();
                s.push_str(&format!(" e^{{h({})}}", y.join(" + ")));
            }
            for &x in &m.e {
                s.push(' ');
                s.push_str(&letter(x, true));
            }
            out.push(s);
        }
        out.join(" + ")
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                json!({
                    "f": m.f.iter().map(|x| x + 1).collect::<Vec<_>>(),
                    "cartan": m.cartan.iter().map(ratmat::q_to_string).collect::<Vec<_>>(),
                    "e": m.e.iter().map(|x| x + 1).collect::<Vec<_>>(),
                    "coeff": c.to_string(),
                })
            })
            .collect();
        Value::Array(terms)
    }

    /// Inverse of [`AlgebraElement::to_json`] for an element of `alg`.
    pub fn from_json(alg: &Algebra, v: &Value) -> Result<Self, Error> {
        let bad = |m: &str| Error::Parse(format!("element JSON: {m}"));
        let word = |x: &Value| -> Result<Word, Error> {
            x.as_array()
                .ok_or_else(|| bad("expected a letter list"))?
                .iter()
                .map(|l| match l.as_u64() {
                    Some(k) if k >= 1 && (k as usize) <= alg.letters() => Ok(k as usize - 1),
                    _ => Err(bad("letter out of range")),
                })
                .collect()
        };
        let mut out = alg.zero();
        for t in v.as_array().ok_or_else(|| bad("expected a term list"))? {
            let cartan: Vec<Q> = t["cartan"]
                .as_array()
                .ok_or_else(|| bad("missing cartan"))?
                .iter()
                .map(|s| s.as_str().and_then(ratmat::parse_q).ok_or_else(|| bad("bad rational")))
                .collect::<Result<_, _>>()?;
            if cartan.len() != out.dim {
                return Err(bad("cartan length does not match the algebra"));
            }
            let m = Monomial {
                f: word(&t["f"])?,
                cartan,
                e: word(&t["e"])?,
            };
            let c: QScalar = t["coeff"].as_str().ok_or_else(|| bad("missing coeff"))?.parse()?;
            out.add_term(m, c);
        }
        Ok(out)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let body = self.monomial_text(m);
                if c.is_one() {
                    body
                } else if body == "1" {
                    format!("({c})")
                } else {
                    format!("({c}) {body}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.check_tag(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.check_tag(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.map_scalars(|c| -c)
    }
}

impl Mul<&QScalar> for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &QScalar) -> AlgebraElement {
        self.scale(rhs)
    }
}
