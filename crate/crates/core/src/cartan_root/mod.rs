//! Cartan data, root systems, normal orderings and Coxeter data.
//!
//! Labeling follows Bourbaki. The Cartan matrix is `a_ij = ⟨α_j, α_i^∨⟩`, so
//! that `b_ij = d_i a_ij = (α_i, α_j)` with `(α_i, α_i) = 2 d_i`:
//!
//! * `B_l`: `α_1 … α_{l-1}` long (`d = 2`), `α_l` short (`d = 1`);
//! * `C_l`: `α_1 … α_{l-1}` short (`d = 1`), `α_l` long (`d = 2`);
//! * `F_4`: `α_1, α_2` long, `α_3, α_4` short;
//! * `G_2`: `α_1` short (`d = 1`), `α_2` long (`d = 3`);
//! * `D_l`, `E_l`: `α_{l-2}` (resp. `α_4`) is the branch node.

mod coxeter;
mod ordering;
mod roots;

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde_json::{json, Value};

pub use coxeter::{cayley_coeffs, canonical_n, solve_n, CayleyData, CoxeterDatum};
pub use ordering::{find_normal_ordering, NormalOrdering, DEFAULT_SEARCH_RANK};
pub use roots::{build_root_system, RootSystem};

use crate::ratmat::{self, RatMatrix};
use crate::{Error, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Series {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => Series::A,
            "B" => Series::B,
            "C" => Series::C,
            "D" => Series::D,
            "E" => Series::E,
            "F" => Series::F,
            "G" => Series::G,
            _ => {
                return Err(Error::InvalidType {
                    series: s.to_string(),
                    rank: 0,
                })
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDatum {
    /// `None` for data assembled by hand (direct sums used for tensor powers).
    pub series: Option<Series>,
    pub rank: usize,
    pub a: Vec<Vec<i64>>,
    pub d: Vec<i64>,
    pub b: Vec<Vec<i64>>,
    a_inv: RatMatrix,
}

impl CartanDatum {
    /// Build from a Cartan matrix and symmetrizers, checking every invariant.
    pub fn from_matrix(series: Option<Series>, a: Vec<Vec<i64>>, d: Vec<i64>) -> Result<Self, Error> {
        let rank = a.len();
        let bad = |why: &str| Error::Domain(format!("invalid Cartan datum: {why}"));
        if rank == 0 || d.len() != rank || a.iter().any(|r| r.len() != rank) {
            return Err(bad("shape"));
        }
        if d.iter().any(|&x| x <= 0) || d.iter().fold(0i64, |g, x| g.gcd(x)) != 1 {
            return Err(bad("symmetrizers must be coprime positive integers"));
        }
        let mut b = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            if a[i][i] != 2 {
                return Err(bad("a_ii != 2"));
            }
            for j in 0..rank {
                if i != j && (a[i][j] > 0 || (a[i][j] == 0) != (a[j][i] == 0)) {
                    return Err(bad("off-diagonal sign/zero pattern"));
                }
                b[i][j] = d[i] * a[i][j];
            }
        }
        for i in 0..rank {
            for j in 0..rank {
                if b[i][j] != b[j][i] {
                    return Err(bad("d_i a_ij is not symmetric"));
                }
            }
        }
        let a_inv = ratmat::inverse(&ratmat::from_int(&a)).ok_or_else(|| bad("singular"))?;
        Ok(Self {
            series,
            rank,
            a,
            d,
            b,
            a_inv,
        })
    }

    /// Block-diagonal sum of `k` copies; the Cartan datum of `g^{⊕k}`.
    pub fn power(&self, k: usize) -> Self {
        let n = self.rank * k;
        let mut a = vec![vec![0i64; n]; n];
        let mut d = vec![0i64; n];
        for c in 0..k {
            for i in 0..self.rank {
                d[c * self.rank + i] = self.d[i];
                for j in 0..self.rank {
                    a[c * self.rank + i][c * self.rank + j] = self.a[i][j];
                }
            }
        }
        Self::from_matrix(None, a, d).expect("block sum of a valid datum is valid")
    }

    pub fn label(&self) -> String {
        match self.series {
            Some(s) => format!("{s}{}", self.rank),
            None => format!("custom{}", self.rank),
        }
    }

    pub fn a_inverse(&self) -> &RatMatrix {
        &self.a_inv
    }

    /// `(β, γ)` for roots given in simple-root coordinates.
    pub fn pairing(&self, m: &[i64], n: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if m[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += m[i] * self.b[i][j] * n[j];
            }
        }
        s
    }

    /// `Y`-coordinates of `H_i`: `H_i = Σ_j (a_ij / d_j) Y_j`.
    pub fn h_in_y(&self, i: usize) -> Vec<Q> {
        (0..self.rank).map(|j| Q::new(self.a[i][j], self.d[j])).collect()
    }

    /// `Y`-coordinates of `β^∨ = Σ_i m_i d_i H_i` for `β = Σ m_i α_i`.
    pub fn root_in_y(&self, m: &[i64]) -> Vec<Q> {
        (0..self.rank)
            .map(|j| {
                let s: i64 = (0..self.rank).map(|i| m[i] * self.b[i][j]).sum();
                Q::new(s, self.d[j])
            })
            .collect()
    }

    /// Same as [`root_in_y`](Self::root_in_y) for rational root coordinates.
    pub fn rat_root_in_y(&self, m: &[Q]) -> Vec<Q> {
        (0..self.rank)
            .map(|j| {
                let s: Q = (0..self.rank).map(|i| m[i] * Q::from_integer(self.b[i][j])).sum();
                s / Q::from_integer(self.d[j])
            })
            .collect()
    }

    /// `μ(Y_p)` for a weight given by its values `μ(H_j)`.
    pub fn weight_on_y(&self, mu_h: &[i64]) -> Vec<Q> {
        (0..self.rank)
            .map(|p| {
                let s: Q = (0..self.rank)
                    .map(|j| self.a_inv[p][j] * Q::from_integer(mu_h[j]))
                    .sum();
                s * Q::from_integer(self.d[p])
            })
            .collect()
    }

    /// `λ(x)` for `λ = Σ m_i α_i` and `x = Σ y_p Y_p` (uses `α_i(Y_p) = d_i δ_ip`).
    pub fn root_on_y(&self, m: &[Q], y: &[Q]) -> Q {
        (0..self.rank)
            .map(|i| m[i] * Q::from_integer(self.d[i]) * y[i])
            .sum()
    }

    /// Gram matrix `(Y_p, Y_r) = d_r (a^{-1})_{rp}`.
    pub fn y_gram(&self) -> RatMatrix {
        (0..self.rank)
            .map(|p| {
                (0..self.rank)
                    .map(|r| self.a_inv[r][p] * Q::from_integer(self.d[r]))
                    .collect()
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "series": self.series.map(|s| s.to_string()),
            "rank": self.rank,
            "a": self.a,
            "d": self.d,
            "b": self.b,
        })
    }
}

fn from_b(series: Series, d: Vec<i64>, b: Vec<Vec<i64>>) -> Result<CartanDatum, Error> {
    let a = b
        .iter()
        .enumerate()
        .map(|(i, row)| row.iter().map(|x| x / d[i]).collect())
        .collect();
    CartanDatum::from_matrix(Some(series), a, d)
}

fn edges_to_b(d: &[i64], edges: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let n = d.len();
    let mut b = vec![vec![0i64; n]; n];
    for i in 0..n {
        b[i][i] = 2 * d[i];
    }
    for &(i, j, v) in edges {
        b[i][j] = v;
        b[j][i] = v;
    }
    b
}

/// Standard Cartan datum of a simple Lie algebra (Bourbaki labeling).
pub fn build_cartan(series: Series, rank: usize) -> Result<CartanDatum, Error> {
    let invalid = || Error::InvalidType {
        series: series.to_string(),
        rank,
    };
    let chain = |n: usize, v: i64| -> Vec<(usize, usize, i64)> {
        (0..n.saturating_sub(1)).map(|i| (i, i + 1, v)).collect()
    };
    match series {
        Series::A if rank >= 1 => {
            let d = vec![1; rank];
            let b = edges_to_b(&d, &chain(rank, -1));
            from_b(series, d, b)
        }
        Series::B if rank >= 2 => {
            let mut d = vec![2; rank];
            d[rank - 1] = 1;
            let b = edges_to_b(&d, &chain(rank, -2));
            from_b(series, d, b)
        }
        Series::C if rank >= 2 => {
            let mut d = vec![1; rank];
            d[rank - 1] = 2;
            let mut e = chain(rank, -1);
            e[rank - 2].2 = -2;
            let b = edges_to_b(&d, &e);
            from_b(series, d, b)
        }
        Series::D if rank >= 4 => {
            let d = vec![1; rank];
            let mut e = chain(rank - 1, -1);
            e.push((rank - 3, rank - 1, -1));
            let b = edges_to_b(&d, &e);
            from_b(series, d, b)
        }
        Series::E if (6..=8).contains(&rank) => {
            let d = vec![1; rank];
            let mut e = vec![(0, 2, -1), (1, 3, -1), (2, 3, -1)];
            e.extend((3..rank - 1).map(|i| (i, i + 1, -1)));
            let b = edges_to_b(&d, &e);
            from_b(series, d, b)
        }
        Series::F if rank == 4 => {
            let d = vec![2, 2, 1, 1];
            let b = edges_to_b(&d, &[(0, 1, -2), (1, 2, -2), (2, 3, -1)]);
            from_b(series, d, b)
        }
        Series::G if rank == 2 => {
            let d = vec![1, 3];
            let b = edges_to_b(&d, &[(0, 1, -3)]);
            from_b(series, d, b)
        }
        _ => Err(invalid()),
    }
}

/// Validate that `pi` is a permutation of `0..rank`.
pub fn check_permutation(pi: &[usize], rank: usize) -> Result<(), Error> {
    let mut seen = vec![false; rank];
    if pi.len() != rank {
        return Err(Error::InvalidPermutation(pi.to_vec()));
    }
    for &p in pi {
        if p >= rank || seen[p] {
            return Err(Error::InvalidPermutation(pi.to_vec()));
        }
        seen[p] = true;
    }
    Ok(())
}

pub(crate) fn q_json(x: &Q) -> Value {
    Value::String(ratmat::q_to_string(x))
}

pub(crate) fn qmat_json(m: &RatMatrix) -> Value {
    Value::Array(
        m.iter()
            .map(|r| Value::Array(r.iter().map(q_json).collect()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_and_a1() {
        let a2 = build_cartan(Series::A, 2).unwrap();
        assert_eq!(a2.a, vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(a2.d, vec![1, 1]);
        let a1 = build_cartan(Series::A, 1).unwrap();
        assert_eq!(a1.a, vec![vec![2]]);
        assert_eq!(a1.d, vec![1]);
    }

    #[test]
    fn b2_labeling_is_symmetric() {
        // oracle: try both labelings of the B2 diagram, keep the one whose b is symmetric
        let b2 = build_cartan(Series::B, 2).unwrap();
        assert_eq!(b2.d, vec![2, 1]);
        assert_eq!(b2.a, vec![vec![2, -1], vec![-2, 2]]);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(b2.b[i][j], b2.b[j][i]);
            }
        }
        // the other labeling with the same a fails symmetry
        assert!(CartanDatum::from_matrix(None, b2.a.clone(), vec![1, 2]).is_err());
    }

    #[test]
    fn all_types_validate() {
        for (s, r) in [
            (Series::A, 4),
            (Series::B, 3),
            (Series::C, 3),
            (Series::D, 4),
            (Series::D, 5),
            (Series::E, 6),
            (Series::E, 7),
            (Series::E, 8),
            (Series::F, 4),
            (Series::G, 2),
        ] {
            let c = build_cartan(s, r).unwrap();
            assert_eq!(c.rank, r);
        }
        assert!(build_cartan(Series::G, 3).is_err());
        assert!(build_cartan(Series::D, 3).is_err());
        assert!(build_cartan(Series::A, 0).is_err());
    }

    #[test]
    fn y_coordinates() {
        let a2 = build_cartan(Series::A, 2).unwrap();
        // d_1 H_1 = K_1 exponent: b_1j / d_j
        assert_eq!(a2.root_in_y(&[1, 0]), vec![Q::from(2), Q::from(-1)]);
        // vector representation weights of sl3: μ(Y) for μ(H) = (1, 0)
        assert_eq!(a2.weight_on_y(&[1, 0]), vec![Q::new(2, 3), Q::new(1, 3)]);
    }

    #[test]
    fn permutations() {
        assert!(check_permutation(&[1, 0], 2).is_ok());
        assert!(check_permutation(&[1, 1], 2).is_err());
        assert!(check_permutation(&[0], 2).is_err());
    }
}
