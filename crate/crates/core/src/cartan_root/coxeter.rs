use num_traits::Zero;
use serde_json::{json, Value};

use super::{check_permutation, qmat_json, CartanDatum};
use crate::ratmat::{self, RatMatrix};
use crate::{Error, Q};

/// Output of [`cayley_coeffs`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyData {
    pub eps: Vec<Vec<i64>>,
    pub c: Vec<Vec<i64>>,
    /// `s_π` acting on the `H` basis (column `j` is `s_π(H_j)`).
    pub s_matrix: RatMatrix,
    /// `s_π` acting on simple roots (column `j` is `s_π(α_j)`).
    pub s_roots: RatMatrix,
    /// `(1 + s_π)(1 − s_π)^{-1}` on simple roots.
    pub cayley_roots: RatMatrix,
}

fn simple_reflection(c: &CartanDatum, i: usize) -> RatMatrix {
    // s_i(α_j) = α_j − a_ij α_i
    let mut m = ratmat::identity(c.rank);
    for j in 0..c.rank {
        m[i][j] -= Q::from_integer(c.a[i][j]);
    }
    m
}

/// Coxeter element `s_π = s_{π(1)} ⋯ s_{π(l)}` on simple roots.
pub fn coxeter_element(c: &CartanDatum, pi: &[usize]) -> RatMatrix {
    pi.iter().fold(ratmat::identity(c.rank), |acc, &i| {
        ratmat::mul(&acc, &simple_reflection(c, i))
    })
}

/// `ε^π_ij` and `c^π_ij = ε_ij b_ij`, cross-checked entry-wise against the
/// pairing `((1+s_π)(1−s_π)^{-1} α_i, α_j)` computed by linear algebra.
pub fn cayley_coeffs(cartan: &CartanDatum, pi: &[usize]) -> Result<CayleyData, Error> {
    check_permutation(pi, cartan.rank)?;
    let l = cartan.rank;
    let mut pi_inv = vec![0; l];
    for (t, &p) in pi.iter().enumerate() {
        pi_inv[p] = t;
    }
    let s = coxeter_element(cartan, pi);
    let id = ratmat::identity(l);
    let one_minus = ratmat::sub(&id, &s);
    let inv = ratmat::inverse(&one_minus)
        .ok_or_else(|| Error::Domain("1 - s_π is singular".into()))?;
    let cayley = ratmat::mul(&ratmat::add(&id, &s), &inv);

    let mut eps = vec![vec![0i64; l]; l];
    let mut c = vec![vec![0i64; l]; l];
    for i in 0..l {
        for j in 0..l {
            eps[i][j] = match pi_inv[i].cmp(&pi_inv[j]) {
                std::cmp::Ordering::Less => -1,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => 1,
            };
            c[i][j] = eps[i][j] * cartan.b[i][j];
            let direct: Q = (0..l)
                .map(|k| cayley[k][i] * Q::from_integer(cartan.b[k][j]))
                .sum();
            if direct != Q::from_integer(c[i][j]) {
                return Err(Error::CayleyMismatch {
                    i,
                    j,
                    lemma: c[i][j].to_string(),
                    direct: ratmat::q_to_string(&direct),
                });
            }
        }
    }
    let s_matrix = (0..l)
        .map(|k| {
            (0..l)
                .map(|j| s[k][j] * Q::new(cartan.d[k], cartan.d[j]))
                .collect()
        })
        .collect();
    Ok(CayleyData {
        eps,
        c,
        s_matrix,
        s_roots: s,
        cayley_roots: cayley,
    })
}

/// Canonical solution of `d_j n_ij − d_i n_ji = c_ij`: `n_ij = c_ij / d_j`
/// when `α_i` precedes `α_j` in `π`, zero otherwise.
pub fn solve_n(cartan: &CartanDatum, pi: &[usize], c: &[Vec<i64>]) -> Result<RatMatrix, Error> {
    check_permutation(pi, cartan.rank)?;
    let l = cartan.rank;
    let mut pi_inv = vec![0; l];
    for (t, &p) in pi.iter().enumerate() {
        pi_inv[p] = t;
    }
    let mut n = vec![vec![Q::zero(); l]; l];
    for i in 0..l {
        for j in 0..l {
            if c[i][j] != -c[j][i] {
                return Err(Error::Domain("c is not antisymmetric".into()));
            }
            if pi_inv[i] < pi_inv[j] {
                n[i][j] = Q::new(c[i][j], cartan.d[j]);
            }
        }
    }
    debug_assert!(eqpi_residual(cartan, &n, c).iter().flatten().all(Zero::is_zero));
    Ok(n)
}

/// `d_j n_ij − d_i n_ji − c_ij`, entry-wise.
pub fn eqpi_residual(cartan: &CartanDatum, n: &RatMatrix, c: &[Vec<i64>]) -> RatMatrix {
    let l = cartan.rank;
    (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    Q::from_integer(cartan.d[j]) * n[i][j] - Q::from_integer(cartan.d[i]) * n[j][i]
                        - Q::from_integer(c[i][j])
                })
                .collect()
        })
        .collect()
}

/// Map any solution `n` to the canonical one (the symmetric part is dropped).
pub fn canonical_n(cartan: &CartanDatum, pi: &[usize], n: &RatMatrix) -> Result<RatMatrix, Error> {
    let l = cartan.rank;
    let mut c = vec![vec![0i64; l]; l];
    for i in 0..l {
        for j in 0..l {
            let v = Q::from_integer(cartan.d[j]) * n[i][j] - Q::from_integer(cartan.d[i]) * n[j][i];
            if !v.is_integer() {
                return Err(Error::Domain("n does not solve the twist equation".into()));
            }
            c[i][j] = v.to_integer();
        }
    }
    solve_n(cartan, pi, &c)
}

/// Everything attached to a Coxeter element `s_π`.
#[derive(Clone, Debug)]
pub struct CoxeterDatum {
    pub cartan: CartanDatum,
    /// 0-based permutation: `s_π = s_{pi[0]} ⋯ s_{pi[l-1]}`.
    pub pi: Vec<usize>,
    pub s_matrix: RatMatrix,
    pub eps: Vec<Vec<i64>>,
    pub c: Vec<Vec<i64>>,
    pub n: RatMatrix,
    /// Row `i`: `K H_i = Σ_j (n_ij / d_i) Y_j`.
    pub k_coords: RatMatrix,
    /// Common denominator of all fractional `q`-exponents.
    pub denominator: i64,
    cayley_roots: RatMatrix,
}

impl CoxeterDatum {
    pub fn new(cartan: &CartanDatum, pi: &[usize]) -> Result<Self, Error> {
        let cd = cayley_coeffs(cartan, pi)?;
        let n = solve_n(cartan, pi, &cd.c)?;
        Self::with_n(cartan, pi, cd, n)
    }

    /// Use a caller-supplied solution `n` (it must satisfy the twist equation).
    pub fn with_n(cartan: &CartanDatum, pi: &[usize], cd: CayleyData, n: RatMatrix) -> Result<Self, Error> {
        if eqpi_residual(cartan, &n, &cd.c).iter().flatten().any(|x| !x.is_zero()) {
            return Err(Error::Domain("n does not solve d_j n_ij - d_i n_ji = c_ij".into()));
        }
        let l = cartan.rank;
        let k_coords: RatMatrix = (0..l)
            .map(|i| (0..l).map(|j| n[i][j] / Q::from_integer(cartan.d[i])).collect())
            .collect();
        let mut dt = Self {
            cartan: cartan.clone(),
            pi: pi.to_vec(),
            s_matrix: cd.s_matrix,
            eps: cd.eps,
            c: cd.c,
            n,
            k_coords,
            denominator: 1,
            cayley_roots: cd.cayley_roots,
        };
        let mut all: Vec<Q> = Vec::new();
        all.extend(dt.n.iter().flatten());
        all.extend(dt.k_coords.iter().flatten());
        for i in 0..l {
            all.extend(dt.cayley_h_in_y(i));
            all.extend(dt.twist_g_in_y(i));
            let e: Vec<i64> = (0..l).map(|j| i64::from(i == j)).collect();
            all.extend(cartan.weight_on_y(&e));
        }
        all.extend(dt.cayley_roots.iter().flatten());
        dt.denominator = ratmat::lcm_denominators(all.iter());
        Ok(dt)
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank
    }

    pub fn cayley_roots(&self) -> &RatMatrix {
        &self.cayley_roots
    }

    /// `Y`-coordinates of `((1+s)/(1−s)) H_i`: `c_ij / (d_i d_j)`.
    pub fn cayley_h_in_y(&self, i: usize) -> Vec<Q> {
        (0..self.rank())
            .map(|j| Q::new(self.c[i][j], self.cartan.d[i] * self.cartan.d[j]))
            .collect()
    }

    /// `Y`-coordinates of `((1+s)/(1−s)) β^∨` for `β = Σ m_i α_i`.
    pub fn cayley_root_in_y(&self, m: &[i64]) -> Vec<Q> {
        (0..self.rank())
            .map(|j| {
                let s: i64 = (0..self.rank()).map(|i| m[i] * self.c[i][j]).sum();
                Q::new(s, self.cartan.d[j])
            })
            .collect()
    }

    /// `Y`-coordinates of `d_i (2/(1−s)) H_i`, the group-like in `Δ(e_i)`.
    pub fn twist_g_in_y(&self, i: usize) -> Vec<Q> {
        (0..self.rank())
            .map(|j| Q::new(self.cartan.b[i][j] + self.c[i][j], self.cartan.d[j]))
            .collect()
    }

    /// `Y`-coordinates of `K β^∨ = Σ_{i,j} m_i n_ij Y_j`.
    pub fn k_root_in_y(&self, m: &[i64]) -> Vec<Q> {
        (0..self.rank())
            .map(|j| (0..self.rank()).map(|i| Q::from_integer(m[i]) * self.n[i][j]).sum())
            .collect()
    }

    /// Row `i` of `n` as a `Y`-exponent: `Π_p L_p^{n_ip}`.
    pub fn n_row(&self, i: usize) -> Vec<Q> {
        self.n[i].clone()
    }

    pub fn is_identity_twist(&self) -> bool {
        self.n.iter().flatten().all(Zero::is_zero)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "cartan": self.cartan.to_json(),
            "pi": self.pi.iter().map(|p| p + 1).collect::<Vec<_>>(),
            "s_matrix": qmat_json(&self.s_matrix),
            "eps": self.eps,
            "c": self.c,
            "n": qmat_json(&self.n),
            "K": qmat_json(&self.k_coords),
            "D": self.denominator,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::{build_cartan, Series};
    use super::*;
    use num_traits::One;

    #[test]
    fn a1_identity() {
        let c = build_cartan(Series::A, 1).unwrap();
        let cd = cayley_coeffs(&c, &[0]).unwrap();
        assert_eq!(cd.c, vec![vec![0]]);
        assert_eq!(solve_n(&c, &[0], &cd.c).unwrap(), vec![vec![Q::zero()]]);
    }

    #[test]
    fn a2_both_permutations() {
        let c = build_cartan(Series::A, 2).unwrap();
        let id = cayley_coeffs(&c, &[0, 1]).unwrap();
        assert_eq!(id.eps, vec![vec![0, -1], vec![1, 0]]);
        assert_eq!(id.c, vec![vec![0, 1], vec![-1, 0]]);
        let rev = cayley_coeffs(&c, &[1, 0]).unwrap();
        assert_eq!(rev.c, vec![vec![0, -1], vec![1, 0]]);
    }

    #[test]
    fn a2_n_solution_and_canonicalizer() {
        let c = build_cartan(Series::A, 2).unwrap();
        let cd = cayley_coeffs(&c, &[0, 1]).unwrap();
        let n = solve_n(&c, &[0, 1], &cd.c).unwrap();
        let expect = vec![vec![Q::zero(), Q::one()], vec![Q::zero(), Q::zero()]];
        assert_eq!(n, expect);
        assert!(eqpi_residual(&c, &n, &cd.c).iter().flatten().all(Zero::is_zero));
        let mut shifted = n.clone();
        shifted[0][1] += Q::new(1, 2);
        shifted[1][0] += Q::new(1, 2);
        assert!(eqpi_residual(&c, &shifted, &cd.c).iter().flatten().all(Zero::is_zero));
        assert_eq!(canonical_n(&c, &[0, 1], &shifted).unwrap(), expect);
    }

    #[test]
    fn datum_denominator_and_k() {
        let c = build_cartan(Series::A, 2).unwrap();
        let dt = CoxeterDatum::new(&c, &[0, 1]).unwrap();
        assert_eq!(dt.k_coords[0][1], Q::one());
        // Cayley transform of A2 has thirds; weights have thirds
        assert_eq!(dt.denominator, 3);
        // K β^∨ for α_1 + α_2
        assert_eq!(dt.k_root_in_y(&[1, 1]), vec![Q::zero(), Q::one()]);
    }

    #[test]
    fn eps_is_antisymmetric_everywhere() {
        for (s, r) in [(Series::A, 3), (Series::B, 3), (Series::C, 3), (Series::G, 2), (Series::D, 4), (Series::F, 4)] {
            let c = build_cartan(s, r).unwrap();
            let pis: Vec<Vec<usize>> = vec![(0..r).collect(), (0..r).rev().collect()];
            for pi in pis {
                let cd = cayley_coeffs(&c, &pi).unwrap();
                for i in 0..r {
                    assert_eq!(cd.eps[i][i], 0);
                    for j in 0..r {
                        assert_eq!(cd.eps[i][j], -cd.eps[j][i]);
                    }
                }
            }
        }
    }
}
