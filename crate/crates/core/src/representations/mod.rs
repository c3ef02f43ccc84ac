//! Finite-dimensional representations in weight bases.
//!
//! JSON schema:
//!
//! ```json
//! { "dim": 2, "weights": [[1], [-1]],
//!   "E": [[["0", "1"], ["0", "0"]]], "F": [[["0", "0"], ["1", "0"]]],
//!   "label": "sl2-vector" }
//! ```
//!
//! `weights[k][i]` is `μ_k(H_i)`. `E` and `F` are lists of matrices (one per
//! simple root); in rank one a bare matrix is accepted.

mod matrix;

use std::path::Path;

use serde_json::{json, Value};

pub use matrix::QMatrix;

use crate::cartan_root::{CartanDatum, Series};
use crate::qalgebra::{AlgebraElement, Realization};
use crate::qscalar::serre_coefficients;
use crate::ratmat::RatMatrix;
use crate::{Error, QScalar, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub label: String,
    pub dim: usize,
    pub weights: Vec<Vec<i64>>,
    pub e: Vec<QMatrix>,
    pub f: Vec<QMatrix>,
}

/// Names of the violated relations (empty when the data is valid).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, name: &str, detail: String) {
        self.failures.push(format!("{name}: {detail}"));
    }
}

fn boolean_nilpotent(ms: &[QMatrix], n: usize) -> bool {
    let mut adj = vec![vec![false; n]; n];
    for m in ms {
        for (r, s) in m.support() {
            adj[r][s] = true;
        }
    }
    let mut p = adj.clone();
    for _ in 1..n {
        let mut next = vec![vec![false; n]; n];
        for i in 0..n {
            for k in 0..n {
                if p[i][k] {
                    for j in 0..n {
                        next[i][j] |= adj[k][j];
                    }
                }
            }
        }
        p = next;
    }
    p.iter().flatten().all(|x| !x)
}

impl Representation {
    pub fn rank(&self) -> usize {
        self.e.len()
    }

    /// `μ_k(Y_p)` for every basis vector.
    pub fn weights_on_y(&self, cartan: &CartanDatum) -> Vec<Vec<Q>> {
        self.weights.iter().map(|w| cartan.weight_on_y(w)).collect()
    }

    /// Diagonal matrix of `e^{h Σ y_p Y_p}`.
    pub fn cartan_diag(&self, cartan: &CartanDatum, y: &[Q]) -> QMatrix {
        QMatrix::diag(
            self.weights_on_y(cartan)
                .iter()
                .map(|mu| QScalar::q_pow(mu.iter().zip(y).map(|(a, b)| a * b).sum()))
                .collect(),
        )
    }

    /// `K_i = diag(q_i^{μ(H_i)})`.
    pub fn k_matrix(&self, cartan: &CartanDatum, i: usize, power: i64) -> QMatrix {
        QMatrix::diag(
            self.weights
                .iter()
                .map(|w| QScalar::q_pow_int(power * cartan.d[i] * w[i]))
                .collect(),
        )
    }

    /// Images of `e_i`, `f_i` of the realization twisted by `n`:
    /// `e_i ↦ E_i Π_p L_p^{n_ip}`, `f_i ↦ Π_p L_p^{−n_ip} F_i`.
    pub fn coxeter_generators(&self, cartan: &CartanDatum, n: &RatMatrix) -> (Vec<QMatrix>, Vec<QMatrix>) {
        let l = self.rank();
        let mut e = Vec::with_capacity(l);
        let mut f = Vec::with_capacity(l);
        for i in 0..l {
            let lp = self.cartan_diag(cartan, &n[i]);
            let neg: Vec<Q> = n[i].iter().map(|v| -v).collect();
            let lm = self.cartan_diag(cartan, &neg);
            e.push(&self.e[i] * &lp);
            f.push(&lm * &self.f[i]);
        }
        (e, f)
    }

    /// Evaluate a single-leg element; `n` must be given for Coxeter elements.
    pub fn eval(&self, cartan: &CartanDatum, n: Option<&RatMatrix>, x: &AlgebraElement) -> Result<QMatrix, Error> {
        let (e, f) = match (&x.tag().realization, n) {
            (Realization::Standard, _) => (self.e.clone(), self.f.clone()),
            (Realization::Coxeter { .. }, Some(n)) => self.coxeter_generators(cartan, n),
            (Realization::Coxeter { .. }, None) => {
                return Err(Error::Precondition("Coxeter element evaluated without n".into()))
            }
        };
        if x.tag().legs != 1 {
            return Err(Error::Precondition("evaluation of a tensor-power element".into()));
        }
        let mut out = QMatrix::zero(self.dim);
        for (m, c) in x.terms() {
            let mut acc = QMatrix::identity(self.dim).scale(c);
            for &i in &m.f {
                acc = &acc * &f[i];
            }
            acc = &acc * &self.cartan_diag(cartan, &m.cartan);
            for &i in &m.e {
                acc = &acc * &e[i];
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Check every defining relation exactly, reporting all failures.
    pub fn validate(&self, cartan: &CartanDatum) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let l = cartan.rank;
        let n = self.dim;
        if self.e.len() != l || self.f.len() != l {
            rep.fail("shape", format!("expected {l} E and F matrices"));
            return rep;
        }
        if self.weights.len() != n || self.weights.iter().any(|w| w.len() != l) {
            rep.fail("shape", "weight list does not match dim and rank".into());
            return rep;
        }
        if self.e.iter().chain(&self.f).any(|m| m.dim() != n) {
            rep.fail("shape", format!("matrices must be {n}x{n}"));
            return rep;
        }
        // weight shifts: E_i raises by α_i, whose H_j-values are a_ji
        for i in 0..l {
            for (name, m, sign) in [("E", &self.e[i], 1), ("F", &self.f[i], -1)] {
                for (r, s) in m.support() {
                    let ok = (0..l).all(|j| self.weights[r][j] == self.weights[s][j] + sign * cartan.a[j][i]);
                    if !ok {
                        rep.fail(
                            "K-conjugation",
                            format!("{name}_{} entry ({r},{s}) does not shift the weight by ±α_{}", i + 1, i + 1),
                        );
                    }
                }
            }
        }
        for i in 0..l {
            for j in 0..l {
                let comm = &(&self.e[i] * &self.f[j]) - &(&self.f[j] * &self.e[i]);
                let rhs = if i == j {
                    let d = cartan.d[i];
                    let den = &QScalar::q_pow_int(d) - &QScalar::q_pow_int(-d);
                    (&self.k_matrix(cartan, i, 1) - &self.k_matrix(cartan, i, -1)).scale(&den.inv())
                } else {
                    QMatrix::zero(n)
                };
                if comm != rhs {
                    rep.fail("[E,F]", format!("[E_{}, F_{}] is wrong", i + 1, j + 1));
                }
            }
        }
        for i in 0..l {
            for j in 0..l {
                if i == j {
                    continue;
                }
                let coefs = serre_coefficients(cartan.a[i][j], 0, cartan.d[i]);
                let m = (1 - cartan.a[i][j]) as u32;
                for (name, gens) in [("E", &self.e), ("F", &self.f)] {
                    let mut acc = QMatrix::zero(n);
                    for (r, c) in coefs.iter().enumerate() {
                        let r = r as u32;
                        let t = &(&gens[i].pow(m - r) * &gens[j]) * &gens[i].pow(r);
                        acc = &acc + &t.scale(c);
                    }
                    if !acc.is_zero() {
                        rep.fail("Serre", format!("{name} Serre relation ({}, {}) fails", i + 1, j + 1));
                    }
                }
            }
        }
        if !boolean_nilpotent(&self.e, n) || !boolean_nilpotent(&self.f, n) {
            rep.fail("nilpotency", "E or F words of length dim do not vanish".into());
        }
        rep
    }

    /// `V ⊕ W`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.dim + other.dim;
        let embed = |a: &QMatrix, b: &QMatrix| {
            let mut m = QMatrix::zero(n);
            for (r, s) in a.support() {
                m.set(r, s, a.get(r, s).clone());
            }
            for (r, s) in b.support() {
                m.set(self.dim + r, self.dim + s, b.get(r, s).clone());
            }
            m
        };
        Self {
            label: format!("{}+{}", self.label, other.label),
            dim: n,
            weights: self.weights.iter().chain(&other.weights).cloned().collect(),
            e: self.e.iter().zip(&other.e).map(|(a, b)| embed(a, b)).collect(),
            f: self.f.iter().zip(&other.f).map(|(a, b)| embed(a, b)).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mat = |m: &QMatrix| -> Value {
            m.rows()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>())
                .collect::<Vec<_>>()
                .into()
        };
        json!({
            "dim": self.dim,
            "weights": self.weights,
            "E": self.e.iter().map(mat).collect::<Vec<_>>(),
            "F": self.f.iter().map(mat).collect::<Vec<_>>(),
            "label": self.label,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let bad = |why: &str| Error::Parse(format!("representation: {why}"));
        let dim = v["dim"].as_u64().ok_or_else(|| bad("missing dim"))? as usize;
        let weights: Vec<Vec<i64>> =
            serde_json::from_value(v["weights"].clone()).map_err(|_| bad("weights must be integer lists"))?;
        let scalar = |x: &Value| -> Result<QScalar, Error> {
            match x {
                Value::String(s) => Ok(s.parse()?),
                Value::Number(n) => n
                    .as_i64()
                    .map(QScalar::from_int)
                    .ok_or_else(|| bad("non-integer numeric entry")),
                _ => Err(bad("matrix entries must be scalar strings")),
            }
        };
        let matrix = |x: &Value| -> Result<QMatrix, Error> {
            let rows = x.as_array().ok_or_else(|| bad("matrix must be a list of rows"))?;
            let rows: Vec<Vec<QScalar>> = rows
                .iter()
                .map(|r| {
                    r.as_array()
                        .ok_or_else(|| bad("row must be a list"))?
                        .iter()
                        .map(scalar)
                        .collect()
                })
                .collect::<Result<_, _>>()?;
            let m = QMatrix::from_rows(rows).ok_or_else(|| bad("matrix is not square"))?;
            if m.dim() != dim {
                return Err(bad("matrix size differs from dim"));
            }
            Ok(m)
        };
        // a list of matrices has depth 3, a bare matrix depth 2
        let matrices = |x: &Value| -> Result<Vec<QMatrix>, Error> {
            let arr = x.as_array().ok_or_else(|| bad("E/F missing"))?;
            let depth3 = arr
                .first()
                .and_then(Value::as_array)
                .and_then(|r| r.first())
                .map_or(false, Value::is_array);
            if depth3 {
                arr.iter().map(matrix).collect()
            } else {
                Ok(vec![matrix(x)?])
            }
        };
        Ok(Self {
            label: v["label"].as_str().unwrap_or("custom").to_string(),
            dim,
            weights,
            e: matrices(&v["E"])?,
            f: matrices(&v["F"])?,
        })
    }
}

/// Read and validate; any violated relation rejects the file.
pub fn load_rep(path: &Path, cartan: &CartanDatum) -> Result<Representation, Error> {
    let text = std::fs::read_to_string(path)?;
    let v: Value = serde_json::from_str(&text)?;
    let rep = Representation::from_json(&v)?;
    let report = rep.validate(cartan);
    if !report.is_ok() {
        return Err(Error::Representation(report.failures.join("; ")));
    }
    Ok(rep)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == k {
            out.push((0..n).filter(|&b| mask & (1 << b) != 0).collect());
        }
    }
    out.sort();
    out
}

/// `Λ^k` of the vector representation of `sl(rank+1)`, basis of
/// `k`-subsets; every nonzero entry of `E_i`, `F_i` is `1`.
pub fn fundamental_sl(rank: usize, k: usize) -> Result<Representation, Error> {
    let n = rank + 1;
    if k == 0 || k > rank {
        return Err(Error::Unsupported(format!("fundamental:{k} of sl({n})")));
    }
    let basis = subsets(n, k);
    let index = |s: &Vec<usize>| basis.iter().position(|b| b == s).expect("subset in basis");
    let dim = basis.len();
    let weights = basis
        .iter()
        .map(|s| {
            (0..rank)
                .map(|i| i64::from(s.contains(&i)) - i64::from(s.contains(&(i + 1))))
                .collect()
        })
        .collect();
    let mut e = vec![QMatrix::zero(dim); rank];
    let mut f = vec![QMatrix::zero(dim); rank];
    for (col, s) in basis.iter().enumerate() {
        for i in 0..rank {
            if s.contains(&(i + 1)) && !s.contains(&i) {
                let mut t: Vec<usize> = s.iter().map(|&x| if x == i + 1 { i } else { x }).collect();
                t.sort();
                e[i].set(index(&t), col, QScalar::one());
            }
            if s.contains(&i) && !s.contains(&(i + 1)) {
                let mut t: Vec<usize> = s.iter().map(|&x| if x == i { i + 1 } else { x }).collect();
                t.sort();
                f[i].set(index(&t), col, QScalar::one());
            }
        }
    }
    Ok(Representation {
        label: format!("sl{n}-fundamental{k}"),
        dim,
        weights,
        e,
        f,
    })
}

/// Built-in representations: `fundamental:k`, `vector` (= `fundamental:1`),
/// `dual` (= `fundamental:rank`) for type `A`, rank at most 4.
pub fn builtin_rep(series: Series, rank: usize, which: &str) -> Result<Representation, Error> {
    if series != Series::A || rank > 4 {
        return Err(Error::Unsupported(format!(
            "built-in representations exist for A1..A4 only, not {series}{rank}"
        )));
    }
    let k = match which.trim() {
        "vector" => 1,
        "dual" => rank,
        w => w
            .strip_prefix("fundamental:")
            .and_then(|k| k.parse::<usize>().ok())
            .ok_or_else(|| Error::Unsupported(format!("unknown representation '{w}'")))?,
    };
    fundamental_sl(rank, k)
}

/// `true` when no diagonal entry survives (strictly weight-shifting).
pub fn is_weight_shifting(m: &QMatrix) -> bool {
    (0..m.dim()).all(|i| m.get(i, i).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan_root::build_cartan;

    fn s(x: &str) -> QScalar {
        x.parse().unwrap()
    }

    #[test]
    fn sl2_vector() {
        let c = build_cartan(Series::A, 1).unwrap();
        let v = builtin_rep(Series::A, 1, "fundamental:1").unwrap();
        assert_eq!(v.weights, vec![vec![1], vec![-1]]);
        assert_eq!(v.e[0], QMatrix::unit(2, 0, 1));
        assert_eq!(v.f[0], QMatrix::unit(2, 1, 0));
        assert!(v.validate(&c).is_ok());
    }

    #[test]
    fn sl3_fundamentals() {
        let c = build_cartan(Series::A, 2).unwrap();
        let v = builtin_rep(Series::A, 2, "vector").unwrap();
        assert_eq!(v.weights, vec![vec![1, 0], vec![-1, 1], vec![0, -1]]);
        assert!(v.validate(&c).is_ok());
        let d = builtin_rep(Series::A, 2, "dual").unwrap();
        assert_eq!(d.dim, 3);
        assert!(d.validate(&c).is_ok());
    }

    #[test]
    fn all_builtins_validate() {
        for r in 1..=4 {
            let c = build_cartan(Series::A, r).unwrap();
            for k in 1..=r {
                let v = fundamental_sl(r, k).unwrap();
                let rep = v.validate(&c);
                assert!(rep.is_ok(), "A{r} fundamental {k}: {:?}", rep.failures);
            }
        }
    }

    #[test]
    fn swapped_e_f_names_commutator() {
        let c = build_cartan(Series::A, 1).unwrap();
        let mut v = fundamental_sl(1, 1).unwrap();
        std::mem::swap(&mut v.e, &mut v.f);
        let rep = v.validate(&c);
        assert!(rep.failures.iter().any(|f| f.starts_with("[E,F]")));
    }

    #[test]
    fn wrong_weights_name_k_conjugation() {
        let c = build_cartan(Series::A, 2).unwrap();
        let mut v = fundamental_sl(2, 1).unwrap();
        v.weights.swap(0, 2);
        let rep = v.validate(&c);
        assert!(rep.failures.iter().any(|f| f.starts_with("K-conjugation")));
    }

    #[test]
    fn json_round_trip_and_rank_one_shape() {
        let v = fundamental_sl(2, 1).unwrap();
        assert_eq!(Representation::from_json(&v.to_json()).unwrap(), v);
        let bare = json!({
            "dim": 2, "weights": [[1], [-1]],
            "E": [["0", "1"], ["0", "0"]], "F": [["0", "0"], ["1", "0"]], "label": "x"
        });
        let r = Representation::from_json(&bare).unwrap();
        assert_eq!(r.e.len(), 1);
        assert_eq!(r.e[0].get(0, 1), &s("1"));
    }

    #[test]
    fn unsupported_builtin() {
        assert!(builtin_rep(Series::B, 2, "vector").is_err());
        assert!(builtin_rep(Series::A, 2, "fundamental:3").is_err());
    }
}
