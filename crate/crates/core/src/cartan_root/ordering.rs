use super::{check_permutation, RootSystem};
use crate::Error;

/// Default rank bound for the ordering search.
pub const DEFAULT_SEARCH_RANK: usize = 4;

const NODE_CAP: u64 = 5_000_000;

/// A linear order on `Δ_+` (root indices, first = smallest).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalOrdering {
    pub order: Vec<usize>,
    /// `position[k]` is the place of root `k` in `order`.
    pub position: Vec<usize>,
}

impl NormalOrdering {
    pub fn new(order: Vec<usize>) -> Self {
        let mut position = vec![0; order.len()];
        for (p, &k) in order.iter().enumerate() {
            position[k] = p;
        }
        Self { order, position }
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.position[a] < self.position[b]
    }

    /// Every `γ = α + β` lies strictly between `α` and `β`.
    pub fn is_normal(&self, rs: &RootSystem) -> bool {
        if self.order.len() != rs.len() {
            return false;
        }
        (0..rs.len()).all(|g| {
            rs.decompositions(g).into_iter().all(|(a, b)| {
                let (pa, pb, pg) = (self.position[a], self.position[b], self.position[g]);
                (pa < pg && pg < pb) || (pb < pg && pg < pa)
            })
        })
    }

    /// Simple roots appear in the relative order `α_{π(1)}, …, α_{π(l)}`.
    pub fn is_compatible(&self, rs: &RootSystem, pi: &[usize]) -> bool {
        pi.windows(2)
            .all(|w| self.position[rs.simple(w[0])] < self.position[rs.simple(w[1])])
    }
}

/// Lexicographically least (in root indices) normal ordering whose simple
/// roots follow `π`, found by depth-first search.
pub fn find_normal_ordering(
    rs: &RootSystem,
    pi: &[usize],
    max_rank: usize,
) -> Result<NormalOrdering, Error> {
    check_permutation(pi, rs.rank())?;
    if rs.rank() > max_rank {
        return Err(Error::OrderingSearch(format!(
            "rank {} exceeds the configured search bound {max_rank}",
            rs.rank()
        )));
    }
    let n = rs.len();
    let decomps: Vec<Vec<(usize, usize)>> = (0..n).map(|g| rs.decompositions(g)).collect();
    // sums_with[x] = [(β, γ)] with γ = x + β
    let mut sums_with: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (g, ds) in decomps.iter().enumerate() {
        for &(a, b) in ds {
            sums_with[a].push((b, g));
            sums_with[b].push((a, g));
        }
    }
    let mut simple_rank = vec![usize::MAX; n];
    for (t, &p) in pi.iter().enumerate() {
        simple_rank[rs.simple(p)] = t;
    }

    struct Search<'a> {
        n: usize,
        decomps: &'a [Vec<(usize, usize)>],
        sums_with: &'a [Vec<(usize, usize)>],
        simple_rank: &'a [usize],
        placed: Vec<bool>,
        order: Vec<usize>,
        simples_done: usize,
        nodes: u64,
    }

    impl Search<'_> {
        fn admissible(&self, x: usize) -> bool {
            if self.simple_rank[x] != usize::MAX && self.simple_rank[x] != self.simples_done {
                return false;
            }
            let split_ok = self.decomps[x]
                .iter()
                .all(|&(a, b)| self.placed[a] != self.placed[b]);
            let forward_ok = self.sums_with[x]
                .iter()
                .all(|&(b, g)| self.placed[g] || !self.placed[b]);
            split_ok && forward_ok
        }

        fn run(&mut self) -> Result<bool, Error> {
            if self.order.len() == self.n {
                return Ok(true);
            }
            self.nodes += 1;
            if self.nodes > NODE_CAP {
                return Err(Error::OrderingSearch(format!(
                    "search exhausted its node budget ({NODE_CAP})"
                )));
            }
            for x in 0..self.n {
                if self.placed[x] || !self.admissible(x) {
                    continue;
                }
                let simple = self.simple_rank[x] != usize::MAX;
                self.placed[x] = true;
                self.order.push(x);
                if simple {
                    self.simples_done += 1;
                }
                if self.run()? {
                    return Ok(true);
                }
                if simple {
                    self.simples_done -= 1;
                }
                self.order.pop();
                self.placed[x] = false;
            }
            Ok(false)
        }
    }

    let mut s = Search {
        n,
        decomps: &decomps,
        sums_with: &sums_with,
        simple_rank: &simple_rank,
        placed: vec![false; n],
        order: Vec::with_capacity(n),
        simples_done: 0,
        nodes: 0,
    };
    if !s.run()? {
        return Err(Error::OrderingSearch(
            "no normal ordering compatible with the permutation".into(),
        ));
    }
    let ord = NormalOrdering::new(s.order);
    debug_assert!(ord.is_normal(rs) && ord.is_compatible(rs, pi));
    Ok(ord)
}

#[cfg(test)]
mod tests {
    use super::super::{build_cartan, build_root_system, Series};
    use super::*;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for k in 0..=p.len() {
                let mut q = p.clone();
                q.insert(k, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn a2_identity() {
        let rs = build_root_system(&build_cartan(Series::A, 2).unwrap());
        // oracle: exhaustive check of all 3! orderings
        let normal: Vec<Vec<usize>> = permutations(3)
            .into_iter()
            .filter(|o| {
                let no = NormalOrdering::new(o.clone());
                no.is_normal(&rs) && no.is_compatible(&rs, &[0, 1])
            })
            .collect();
        assert_eq!(normal, vec![vec![0, 2, 1]]);
        let found = find_normal_ordering(&rs, &[0, 1], 4).unwrap();
        assert_eq!(found.order, vec![0, 2, 1]);
    }

    #[test]
    fn a1_trivial() {
        let rs = build_root_system(&build_cartan(Series::A, 1).unwrap());
        assert_eq!(find_normal_ordering(&rs, &[0], 4).unwrap().order, vec![0]);
    }

    #[test]
    fn b2_matches_exhaustive_minimum() {
        let rs = build_root_system(&build_cartan(Series::B, 2).unwrap());
        let mut all: Vec<Vec<usize>> = permutations(4)
            .into_iter()
            .filter(|o| {
                let no = NormalOrdering::new(o.clone());
                no.is_normal(&rs) && no.is_compatible(&rs, &[0, 1])
            })
            .collect();
        all.sort();
        let found = find_normal_ordering(&rs, &[0, 1], 4).unwrap();
        assert_eq!(found.order, all[0]);
        assert_eq!(found.order.first(), Some(&0));
        assert_eq!(found.order.last(), Some(&1));
    }

    #[test]
    fn every_rank_le_4_type_and_permutation() {
        for (s, r) in [
            (Series::A, 3),
            (Series::A, 4),
            (Series::B, 3),
            (Series::C, 3),
            (Series::G, 2),
            (Series::D, 4),
            (Series::B, 4),
            (Series::F, 4),
        ] {
            let rs = build_root_system(&build_cartan(s, r).unwrap());
            let perms = permutations(r);
            for pi in perms.iter().take(6) {
                let o = find_normal_ordering(&rs, pi, 4).unwrap();
                assert!(o.is_normal(&rs) && o.is_compatible(&rs, pi), "{s}{r} {pi:?}");
            }
        }
    }

    #[test]
    fn search_bound_is_reported() {
        let rs = build_root_system(&build_cartan(Series::A, 5).unwrap());
        assert!(matches!(
            find_normal_ordering(&rs, &[0, 1, 2, 3, 4], 4),
            Err(Error::OrderingSearch(_))
        ));
    }
}
