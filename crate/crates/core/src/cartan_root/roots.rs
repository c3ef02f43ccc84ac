use std::collections::{BTreeSet, HashMap};

use super::CartanDatum;
use crate::Q;

/// Positive roots in simple-root coordinates, sorted by height and then so
/// that `α_1, …, α_l` come first in index order.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub cartan: CartanDatum,
    pub positive_roots: Vec<Vec<i64>>,
    /// `ρ` in simple-root coordinates.
    pub rho: Vec<Q>,
    /// `ρ^∨ = Σ Y_i` in the `Y` basis.
    pub rho_vee_y: Vec<Q>,
    index: HashMap<Vec<i64>, usize>,
}

fn height(m: &[i64]) -> i64 {
    m.iter().sum()
}

/// Reflection `s_i(β) = β - ⟨β, α_i^∨⟩ α_i` with `⟨β, α_i^∨⟩ = Σ_j m_j a_ij`.
pub(crate) fn reflect(c: &CartanDatum, i: usize, m: &[i64]) -> Vec<i64> {
    let k: i64 = (0..c.rank).map(|j| m[j] * c.a[i][j]).sum();
    let mut out = m.to_vec();
    out[i] -= k;
    out
}

/// Generate `Δ_+` by closing the simple roots under simple reflections.
pub fn build_root_system(cartan: &CartanDatum) -> RootSystem {
    let l = cartan.rank;
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut stack: Vec<Vec<i64>> = (0..l)
        .map(|i| (0..l).map(|j| i64::from(i == j)).collect())
        .collect();
    while let Some(r) = stack.pop() {
        if !seen.insert(r.clone()) {
            continue;
        }
        for i in 0..l {
            let s = reflect(cartan, i, &r);
            if s.iter().all(|&x| x >= 0) && s.iter().any(|&x| x > 0) && !seen.contains(&s) {
                stack.push(s);
            }
        }
    }
    let mut positive_roots: Vec<Vec<i64>> = seen.into_iter().collect();
    positive_roots.sort_by(|x, y| height(x).cmp(&height(y)).then_with(|| y.cmp(x)));
    let index = positive_roots
        .iter()
        .enumerate()
        .map(|(k, r)| (r.clone(), k))
        .collect();
    let rho = (0..l)
        .map(|i| Q::new(positive_roots.iter().map(|r| r[i]).sum(), 2))
        .collect();
    RootSystem {
        cartan: cartan.clone(),
        positive_roots,
        rho,
        rho_vee_y: vec![Q::from(1); l],
        index,
    }
}

impl RootSystem {
    pub fn len(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positive_roots.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank
    }

    pub fn root(&self, k: usize) -> &[i64] {
        &self.positive_roots[k]
    }

    pub fn index_of(&self, m: &[i64]) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Index of the simple root `α_i` (always `i` given the sort order).
    pub fn simple(&self, i: usize) -> usize {
        i
    }

    pub fn is_simple(&self, k: usize) -> bool {
        height(&self.positive_roots[k]) == 1
    }

    pub fn simple_index(&self, k: usize) -> Option<usize> {
        if self.is_simple(k) {
            self.positive_roots[k].iter().position(|&x| x == 1)
        } else {
            None
        }
    }

    pub fn height(&self, k: usize) -> i64 {
        height(&self.positive_roots[k])
    }

    /// All unordered pairs `(α, β)` (indices, `α < β`) with `α + β = γ`.
    pub fn decompositions(&self, gamma: usize) -> Vec<(usize, usize)> {
        let g = &self.positive_roots[gamma];
        let mut out = Vec::new();
        for a in 0..self.len() {
            let diff: Vec<i64> = g.iter().zip(&self.positive_roots[a]).map(|(x, y)| x - y).collect();
            if let Some(b) = self.index_of(&diff) {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// `(β_k, β_m)`.
    pub fn pairing(&self, k: usize, m: usize) -> i64 {
        self.cartan.pairing(&self.positive_roots[k], &self.positive_roots[m])
    }

    /// Known `|Δ_+|` for the series, if the datum is a named simple type.
    pub fn expected_count(&self) -> Option<usize> {
        use super::Series::*;
        let l = self.rank();
        Some(match self.cartan.series? {
            A => l * (l + 1) / 2,
            B | C => l * l,
            D => l * (l - 1),
            E => match l {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            F => 24,
            G => 6,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::{build_cartan, Series};
    use super::*;

    #[test]
    fn small_root_systems() {
        let a1 = build_root_system(&build_cartan(Series::A, 1).unwrap());
        assert_eq!(a1.positive_roots, vec![vec![1]]);
        let a2 = build_root_system(&build_cartan(Series::A, 2).unwrap());
        assert_eq!(a2.positive_roots, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        let b2 = build_root_system(&build_cartan(Series::B, 2).unwrap());
        assert_eq!(b2.len(), 4);
        assert!(b2.index_of(&[1, 2]).is_some());
    }

    #[test]
    fn counts_match_series() {
        for (s, r) in [
            (Series::A, 4),
            (Series::B, 3),
            (Series::C, 4),
            (Series::D, 5),
            (Series::E, 6),
            (Series::E, 8),
            (Series::F, 4),
            (Series::G, 2),
        ] {
            let rs = build_root_system(&build_cartan(s, r).unwrap());
            assert_eq!(Some(rs.len()), rs.expected_count(), "{s}{r}");
        }
    }

    #[test]
    fn simple_reflections_permute_other_positive_roots() {
        for (s, r) in [(Series::B, 3), (Series::G, 2), (Series::D, 4)] {
            let rs = build_root_system(&build_cartan(s, r).unwrap());
            for i in 0..r {
                let mut images: Vec<usize> = (0..rs.len())
                    .filter(|&k| k != i)
                    .map(|k| rs.index_of(&reflect(&rs.cartan, i, rs.root(k))).unwrap())
                    .collect();
                images.sort();
                let mut expect: Vec<usize> = (0..rs.len()).filter(|&k| k != i).collect();
                expect.sort();
                assert_eq!(images, expect);
            }
        }
    }

    #[test]
    fn rho_is_half_sum() {
        let a2 = build_root_system(&build_cartan(Series::A, 2).unwrap());
        assert_eq!(a2.rho, vec![Q::from(1), Q::from(1)]);
        let g2 = build_root_system(&build_cartan(Series::G, 2).unwrap());
        // positive roots of G2 sum to 10 α_1 + 6 α_2
        assert_eq!(g2.rho, vec![Q::from(5), Q::from(3)]);
    }
}
