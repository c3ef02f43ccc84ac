use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use super::rewrite::{serre_poly, Budget, RewriteStats, RewriteSystem};
use super::{AlgebraElement, Monomial, Realization, Tag, Word};
use crate::cartan_root::{CartanDatum, CoxeterDatum, NormalOrdering};
use crate::{Error, QScalar, Q};

type Straightened = Arc<Vec<(Monomial, QScalar)>>;

/// Multiplication context: Cartan datum, twisting coefficients `c_ij`
/// (all zero for the standard realization), letter order for the Serre
/// rewriting, and caches.
#[derive(Debug)]
pub struct Algebra {
    cartan: CartanDatum,
    base_rank: usize,
    c: Vec<Vec<i64>>,
    tag: Tag,
    letter_rank: Vec<usize>,
    k_coords: Vec<Vec<Q>>,
    rewrite: Mutex<RewriteSystem>,
    ef_cache: Mutex<HashMap<(Word, Word), Straightened>>,
}

fn ranks_from(ordering: Option<&NormalOrdering>, l: usize) -> Vec<usize> {
    match ordering {
        Some(o) => (0..l).map(|i| o.position[i]).collect(),
        None => (0..l).collect(),
    }
}

impl Algebra {
    fn build(
        cartan: CartanDatum,
        base_rank: usize,
        c: Vec<Vec<i64>>,
        tag: Tag,
        letter_rank: Vec<usize>,
        budget: Budget,
    ) -> Self {
        let n = cartan.rank;
        let mut gens = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    gens.push(serre_poly(i, j, cartan.a[i][j], c[i][j], cartan.d[i]));
                }
            }
        }
        let k_coords = (0..n)
            .map(|i| {
                let m: Vec<i64> = (0..n).map(|j| i64::from(i == j)).collect();
                cartan.root_in_y(&m)
            })
            .collect();
        Self {
            rewrite: Mutex::new(RewriteSystem::new(letter_rank.clone(), gens, budget)),
            cartan,
            base_rank,
            c,
            tag,
            letter_rank,
            k_coords,
            ef_cache: Mutex::new(HashMap::new()),
        }
    }

    /// Standard realization; letters ranked by the position of the simple
    /// roots in `ordering` (index order when `None`).
    pub fn standard(cartan: &CartanDatum, ordering: Option<&NormalOrdering>) -> Self {
        let l = cartan.rank;
        Self::build(
            cartan.clone(),
            l,
            vec![vec![0; l]; l],
            Tag {
                realization: Realization::Standard,
                legs: 1,
            },
            ranks_from(ordering, l),
            Budget::default(),
        )
    }

    pub fn coxeter(datum: &CoxeterDatum, ordering: Option<&NormalOrdering>) -> Self {
        let l = datum.rank();
        Self::build(
            datum.cartan.clone(),
            l,
            datum.c.clone(),
            Tag {
                realization: Realization::Coxeter {
                    pi: datum.pi.clone(),
                },
                legs: 1,
            },
            ranks_from(ordering, l),
            Budget::default(),
        )
    }

    /// `A^{⊗k}` with legs commuting; letters of leg `t` are `t·l + i`.
    pub fn tensor_power(&self, k: usize) -> Self {
        assert_eq!(self.tag.legs, 1, "tensor power of a tensor power");
        let l = self.base_rank;
        let n = l * k;
        let mut c = vec![vec![0; n]; n];
        for t in 0..k {
            for i in 0..l {
                for j in 0..l {
                    c[t * l + i][t * l + j] = self.c[i][j];
                }
            }
        }
        let width = self.letter_rank.iter().max().map_or(0, |m| m + 1);
        let letter_rank = (0..n).map(|x| (x / l) * width + self.letter_rank[x % l]).collect();
        let budget = self.budget();
        Self::build(
            self.cartan.power(k),
            l,
            c,
            Tag {
                realization: self.tag.realization.clone(),
                legs: k,
            },
            letter_rank,
            budget,
        )
    }

    pub fn set_budget(&self, budget: Budget) {
        self.rewrite.lock().expect("rewrite lock").set_budget(budget);
    }

    pub fn budget(&self) -> Budget {
        self.rewrite.lock().expect("rewrite lock").budget()
    }

    pub fn rewrite_stats(&self) -> RewriteStats {
        self.rewrite.lock().expect("rewrite lock").stats()
    }

    pub fn cartan(&self) -> &CartanDatum {
        &self.cartan
    }

    pub fn tag(&self) -> &Tag {
        &self.tag
    }

    /// Rank of the underlying simple datum.
    pub fn base_rank(&self) -> usize {
        self.base_rank
    }

    /// Number of letters (rank times legs).
    pub fn letters(&self) -> usize {
        self.cartan.rank
    }

    pub fn c(&self) -> &[Vec<i64>] {
        &self.c
    }

    // ---- constructors ----

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(self.tag.clone(), self.letters())
    }

    pub fn scalar(&self, s: QScalar) -> AlgebraElement {
        AlgebraElement::from_monomial(self.tag.clone(), Monomial::unit(self.letters()), s)
    }

    pub fn one(&self) -> AlgebraElement {
        self.scalar(QScalar::one())
    }

    pub fn e(&self, i: usize) -> AlgebraElement {
        let mut m = Monomial::unit(self.letters());
        m.e.push(i);
        AlgebraElement::from_monomial(self.tag.clone(), m, QScalar::one())
    }

    pub fn f(&self, i: usize) -> AlgebraElement {
        let mut m = Monomial::unit(self.letters());
        m.f.push(i);
        AlgebraElement::from_monomial(self.tag.clone(), m, QScalar::one())
    }

    pub fn e_word(&self, w: &[usize]) -> AlgebraElement {
        let mut m = Monomial::unit(self.letters());
        m.e = w.to_vec();
        AlgebraElement::from_monomial(self.tag.clone(), m, QScalar::one())
    }

    pub fn f_word(&self, w: &[usize]) -> AlgebraElement {
        let mut m = Monomial::unit(self.letters());
        m.f = w.to_vec();
        AlgebraElement::from_monomial(self.tag.clone(), m, QScalar::one())
    }

    /// `e^{h Σ y_p Y_p}`.
    pub fn cartan_exp(&self, y: &[Q]) -> AlgebraElement {
        assert_eq!(y.len(), self.letters());
        let mut m = Monomial::unit(self.letters());
        m.cartan = y.to_vec();
        AlgebraElement::from_monomial(self.tag.clone(), m, QScalar::one())
    }

    /// `K_i^{power} = e^{h power d_i H_i}`.
    pub fn k(&self, i: usize, power: i64) -> AlgebraElement {
        let y: Vec<Q> = self.k_coords[i].iter().map(|v| v * Q::from_integer(power)).collect();
        self.cartan_exp(&y)
    }

    /// `Y`-coordinates of `K_i`.
    pub fn k_coords(&self, i: usize) -> &[Q] {
        &self.k_coords[i]
    }

    /// `L_p^{power} = e^{h power Y_p}`.
    pub fn l(&self, p: usize, power: Q) -> AlgebraElement {
        let mut y = vec![Q::zero(); self.letters()];
        y[p] = power;
        self.cartan_exp(&y)
    }

    /// Embed an element of a (possibly multi-leg) algebra of the same base
    /// rank into consecutive legs starting at `t`.
    pub fn embed_leg(&self, x: &AlgebraElement, t: usize) -> AlgebraElement {
        let l = self.base_rank;
        let width = x.cartan_dim();
        assert!(width % l == 0 && t * l + width <= self.letters());
        let shift = |w: &Word| w.iter().map(|&a| a + t * l).collect::<Word>();
        AlgebraElement::from_terms(
            self.tag.clone(),
            self.letters(),
            x.terms().iter().map(|(m, c)| {
                let mut cartan = vec![Q::zero(); self.letters()];
                cartan[t * l..t * l + width].clone_from_slice(&m.cartan);
                (
                    Monomial {
                        f: shift(&m.f),
                        cartan,
                        e: shift(&m.e),
                    },
                    c.clone(),
                )
            }),
        )
    }

    /// Split a monomial of a tensor power into its single-leg factors.
    pub fn split_legs(&self, m: &Monomial) -> Vec<Monomial> {
        let l = self.base_rank;
        (0..self.tag.legs)
            .map(|t| {
                let pick = |w: &Word| {
                    w.iter()
                        .filter(|&&a| a / l == t)
                        .map(|&a| a - t * l)
                        .collect::<Word>()
                };
                Monomial {
                    f: pick(&m.f),
                    cartan: m.cartan[t * l..(t + 1) * l].to_vec(),
                    e: pick(&m.e),
                }
            })
            .collect()
    }

    /// `x_1 ⊗ x_2 ⊗ …` in the tensor power.
    pub fn tensor(&self, xs: &[&AlgebraElement]) -> Result<AlgebraElement, Error> {
        assert_eq!(xs.len(), self.tag.legs);
        let mut acc = self.one();
        for (t, x) in xs.iter().enumerate() {
            acc = self.mul(&acc, &self.embed_leg(x, t))?;
        }
        Ok(acc)
    }

    /// `Σ_{j ∈ word} d_j y_j`: exponent picked up when `e^{hy}` passes a word.
    fn pass(&self, y: &[Q], word: &[usize]) -> Q {
        word.iter()
            .map(|&j| Q::from_integer(self.cartan.d[j]) * y[j])
            .sum()
    }

    fn check(&self, x: &AlgebraElement) -> Result<(), Error> {
        if *x.tag() != self.tag || x.cartan_dim() != self.letters() {
            return Err(Error::RealizationMismatch(format!(
                "element tagged {:?} used in algebra tagged {:?}",
                x.tag(),
                self.tag
            )));
        }
        Ok(())
    }

    // ---- straightening ----

    /// Exponent in `e_i f_j = q^{c_ji} f_j e_i` (`i ≠ j`); this is the sign
    /// under which ψ, the twisted Serre relations and Δ are compatible.
    fn exchange(&self, i: usize, j: usize) -> i64 {
        self.c[j][i]
    }

    /// `e_i · F` in triangular form; every output e-word is `[i]` or empty.
    fn e_times_f(&self, i: usize, fw: &[usize]) -> Vec<(Monomial, QScalar)> {
        let n = self.letters();
        let total_c: i64 = fw.iter().map(|&j| self.exchange(i, j)).sum();
        let mut out = vec![(
            Monomial {
                f: fw.to_vec(),
                cartan: vec![Q::zero(); n],
                e: vec![i],
            },
            QScalar::q_pow_int(total_c),
        )];
        let di = self.cartan.d[i];
        let qi_diff = &QScalar::q_pow_int(di) - &QScalar::q_pow_int(-di);
        let mut prefix_c = 0i64;
        let mut suffix_b: i64 = fw.iter().map(|&j| self.cartan.b[i][j]).sum();
        for (k, &j) in fw.iter().enumerate() {
            suffix_b -= self.cartan.b[i][j];
            if j == i {
                let mut rest = fw[..k].to_vec();
                rest.extend(&fw[k + 1..]);
                let base = &QScalar::q_pow_int(prefix_c) / &qi_diff;
                let kp = self.k_coords[i].clone();
                let km: Vec<Q> = kp.iter().map(|v| -v).collect();
                out.push((
                    Monomial {
                        f: rest.clone(),
                        cartan: kp,
                        e: Vec::new(),
                    },
                    &base * &QScalar::q_pow_int(-suffix_b),
                ));
                out.push((
                    Monomial {
                        f: rest,
                        cartan: km,
                        e: Vec::new(),
                    },
                    -(&base * &QScalar::q_pow_int(suffix_b)),
                ));
            }
            prefix_c += self.exchange(i, j);
        }
        out
    }

    /// `E · F` in triangular form.
    fn straighten(&self, ew: &[usize], fw: &[usize]) -> Straightened {
        let n = self.letters();
        if ew.is_empty() || fw.is_empty() {
            return Arc::new(vec![(
                Monomial {
                    f: fw.to_vec(),
                    cartan: vec![Q::zero(); n],
                    e: ew.to_vec(),
                },
                QScalar::one(),
            )]);
        }
        let key = (ew.to_vec(), fw.to_vec());
        if let Some(v) = self.ef_cache.lock().expect("cache lock").get(&key) {
            return v.clone();
        }
        let (rest, i) = (&ew[..ew.len() - 1], ew[ew.len() - 1]);
        let mut acc: BTreeMap<Monomial, QScalar> = BTreeMap::new();
        for (m, s) in self.e_times_f(i, fw) {
            for (m3, s3) in self.straighten(rest, &m.f).iter() {
                let coef = &(&s * s3) * &QScalar::q_pow(-self.pass(&m.cartan, &m3.e));
                let mut e = m3.e.clone();
                e.extend(&m.e);
                let cartan = m3.cartan.iter().zip(&m.cartan).map(|(a, b)| a + b).collect();
                let key = Monomial {
                    f: m3.f.clone(),
                    cartan,
                    e,
                };
                add(&mut acc, key, coef);
            }
        }
        let v: Straightened = Arc::new(acc.into_iter().collect());
        self.ef_cache
            .lock()
            .expect("cache lock")
            .insert(key, v.clone());
        v
    }

    fn mul_monomials(&self, a: &Monomial, b: &Monomial, s: &QScalar, out: &mut BTreeMap<Monomial, QScalar>) {
        for (m, t) in self.straighten(&a.e, &b.f).iter() {
            let expo = -self.pass(&a.cartan, &m.f) - self.pass(&b.cartan, &m.e);
            let coef = &(s * t) * &QScalar::q_pow(expo);
            let mut f = a.f.clone();
            f.extend(&m.f);
            let mut e = m.e.clone();
            e.extend(&b.e);
            let cartan = (0..a.cartan.len())
                .map(|p| a.cartan[p] + m.cartan[p] + b.cartan[p])
                .collect();
            add(out, Monomial { f, cartan, e }, coef);
        }
    }

    /// Product in triangular form (mixed and Cartan relations only; use
    /// [`normalize`](Self::normalize) for Serre-canonical words).
    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, Error> {
        self.check(x)?;
        self.check(y)?;
        let mut out = BTreeMap::new();
        for (a, s) in x.terms() {
            for (b, t) in y.terms() {
                self.mul_monomials(a, b, &(s * t), &mut out);
            }
        }
        Ok(AlgebraElement::from_terms(self.tag.clone(), self.letters(), out))
    }

    pub fn product(&self, xs: &[&AlgebraElement]) -> Result<AlgebraElement, Error> {
        let mut acc = self.one();
        for x in xs {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, x: &AlgebraElement, n: u32) -> Result<AlgebraElement, Error> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// `xy − yx`.
    pub fn commutator(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, Error> {
        Ok(&self.mul(x, y)? - &self.mul(y, x)?)
    }

    /// Triangular form with e-words and f-words in Serre normal form.
    pub fn normalize(&self, x: &AlgebraElement) -> Result<AlgebraElement, Error> {
        self.check(x)?;
        let mut rs = self.rewrite.lock().expect("rewrite lock");
        let mut out = BTreeMap::new();
        let mut seen_f: HashMap<Word, Vec<(Word, QScalar)>> = HashMap::new();
        let mut seen_e: HashMap<Word, Vec<(Word, QScalar)>> = HashMap::new();
        for (m, c) in x.terms() {
            if !m.f.is_empty() && !seen_f.contains_key(&m.f) {
                seen_f.insert(m.f.clone(), rs.normal_form(&m.f)?);
            }
            if !m.e.is_empty() && !seen_e.contains_key(&m.e) {
                seen_e.insert(m.e.clone(), rs.normal_form(&m.e)?);
            }
            let trivial = |w: &Word| vec![(w.clone(), QScalar::one())];
            let nf = seen_f.get(&m.f).cloned().unwrap_or_else(|| trivial(&m.f));
            let ne = seen_e.get(&m.e).cloned().unwrap_or_else(|| trivial(&m.e));
            for (fw, s) in &nf {
                for (ew, t) in &ne {
                    let key = Monomial {
                        f: fw.clone(),
                        cartan: m.cartan.clone(),
                        e: ew.clone(),
                    };
                    add(&mut out, key, &(c * s) * t);
                }
            }
        }
        Ok(AlgebraElement::from_terms(self.tag.clone(), self.letters(), out))
    }

    /// `x` and `y` have the same normal form.
    pub fn equal(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<bool, Error> {
        Ok(self.normalize(&(x - y))?.is_zero())
    }

    /// Serre element `Σ_r (−1)^r q^{r c_ij} [1−a_ij; r]_{q_i} x_i^{1−a−r} x_j x_i^r`
    /// in e-letters (`positive`) or f-letters.
    pub fn serre_element(&self, i: usize, j: usize, positive: bool) -> AlgebraElement {
        let p = serre_poly(i, j, self.cartan.a[i][j], self.c[i][j], self.cartan.d[i]);
        let mut out = self.zero();
        for (w, c) in p {
            let mut m = Monomial::unit(self.letters());
            if positive {
                m.e = w;
            } else {
                m.f = w;
            }
            out.add_term(m, c);
        }
        out
    }

    /// `e_i f_j − q^{c_ji} f_j e_i − δ_ij (K_i − K_i^{-1})/(q_i − q_i^{-1})`,
    /// written as a formal combination of words (not straightened).
    pub fn mixed_relation_terms(&self, i: usize, j: usize) -> Vec<(Vec<AlgebraElement>, QScalar)> {
        let mut out = vec![
            (vec![self.e(i), self.f(j)], QScalar::one()),
            (vec![self.f(j), self.e(i)], -QScalar::q_pow_int(self.exchange(i, j))),
        ];
        if i == j {
            let di = self.cartan.d[i];
            let inv = (&QScalar::q_pow_int(di) - &QScalar::q_pow_int(-di)).inv();
            out.push((vec![self.k(i, 1)], -inv.clone()));
            out.push((vec![self.k(i, -1)], inv));
        }
        out
    }

    /// Letter rank used by the rewriting order.
    pub fn letter_rank(&self) -> &[usize] {
        &self.letter_rank
    }

    /// Cartan exponent is zero.
    pub fn is_zero_cartan(y: &[Q]) -> bool {
        y.iter().all(Zero::is_zero)
    }
}

fn add(acc: &mut BTreeMap<Monomial, QScalar>, m: Monomial, c: QScalar) {
    if c.is_zero() {
        return;
    }
    match acc.entry(m) {
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
