//! Degree-truncated completion of the quantum Serre relations.
//!
//! Words are compared degree-lexicographically, letters ranked by `rank`.
//! All relations are homogeneous, so completing degree by degree up to `N`
//! yields exact normal forms for every word of length at most `N`.

use std::cmp::Ordering;
use std::collections::HashMap;

use super::Word;
use crate::qscalar::{serre_coefficients, QScalar};
use crate::Error;

pub(crate) type Poly = HashMap<Word, QScalar>;

#[derive(Clone, Debug)]
struct Rule {
    lhs: Word,
    rhs: Vec<(Word, QScalar)>,
}

/// Reported by [`RewriteSystem::stats`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RewriteStats {
    pub rules: usize,
    /// Rules produced by non-joinable critical pairs during completion.
    pub completion_rules: usize,
    pub completed_degree: usize,
    pub steps: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_degree: usize,
    pub max_steps: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_degree: 10,
            max_steps: 5_000_000,
        }
    }
}

#[derive(Debug)]
pub(crate) struct RewriteSystem {
    rank: Vec<usize>,
    generators: Vec<Poly>,
    rules: Vec<Rule>,
    completed: usize,
    completion_rules: usize,
    steps: u64,
    budget: Budget,
    memo: HashMap<Word, Vec<(Word, QScalar)>>,
}

/// `Σ_r (−1)^r q^{r c} [1−a; r]_{q^d} x_i^{1−a−r} x_j x_i^r`.
pub(crate) fn serre_poly(i: usize, j: usize, a_ij: i64, c_ij: i64, d_i: i64) -> Poly {
    let mut p = Poly::new();
    let coefs = serre_coefficients(a_ij, c_ij, d_i);
    let m = coefs.len() - 1;
    for (r, coef) in coefs.into_iter().enumerate() {
        let mut w = vec![i; m - r];
        w.push(j);
        w.extend(std::iter::repeat(i).take(r));
        add_term(&mut p, w, coef);
    }
    p
}

pub(crate) fn add_term(p: &mut Poly, w: Word, c: QScalar) {
    if c.is_zero() {
        return;
    }
    match p.entry(w) {
        std::collections::hash_map::Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
        std::collections::hash_map::Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

fn find_sub(w: &[usize], pat: &[usize]) -> Option<usize> {
    if pat.len() > w.len() {
        return None;
    }
    (0..=w.len() - pat.len()).find(|&p| &w[p..p + pat.len()] == pat)
}

impl RewriteSystem {
    pub(crate) fn new(rank: Vec<usize>, generators: Vec<Poly>, budget: Budget) -> Self {
        Self {
            rank,
            generators: generators.into_iter().filter(|p| !p.is_empty()).collect(),
            rules: Vec::new(),
            completed: 0,
            completion_rules: 0,
            steps: 0,
            budget,
            memo: HashMap::new(),
        }
    }

    pub(crate) fn set_budget(&mut self, budget: Budget) {
        self.budget = budget;
    }

    pub(crate) fn budget(&self) -> Budget {
        self.budget
    }

    pub(crate) fn stats(&self) -> RewriteStats {
        RewriteStats {
            rules: self.rules.len(),
            completion_rules: self.completion_rules,
            completed_degree: self.completed,
            steps: self.steps,
        }
    }

    fn cmp(&self, a: &[usize], b: &[usize]) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            for (x, y) in a.iter().zip(b) {
                match self.rank[*x].cmp(&self.rank[*y]) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    fn tick(&mut self) -> Result<(), Error> {
        self.steps += 1;
        if self.steps > self.budget.max_steps {
            return Err(Error::BudgetExceeded(format!(
                "rewriting exceeded {} steps",
                self.budget.max_steps
            )));
        }
        Ok(())
    }

    fn reducer(&self, w: &[usize]) -> Option<(usize, usize)> {
        self.rules
            .iter()
            .enumerate()
            .find_map(|(k, r)| find_sub(w, &r.lhs).map(|p| (k, p)))
    }

    /// Full reduction without the memo (used while rules of this degree are
    /// still being added).
    fn reduce_direct(&mut self, mut p: Poly) -> Result<Poly, Error> {
        let mut out = Poly::new();
        loop {
            let Some(w) = p.keys().next().cloned() else {
                break;
            };
            let c = p.remove(&w).expect("key exists");
            match self.reducer(&w) {
                None => add_term(&mut out, w, c),
                Some((k, pos)) => {
                    self.tick()?;
                    let len = self.rules[k].lhs.len();
                    for (r, s) in self.rules[k].rhs.clone() {
                        let mut nw = w[..pos].to_vec();
                        nw.extend(&r);
                        nw.extend(&w[pos + len..]);
                        add_term(&mut p, nw, &c * &s);
                    }
                }
            }
        }
        Ok(out)
    }

    fn add_rule(&mut self, p: Poly) {
        let lead = p
            .keys()
            .max_by(|a, b| self.cmp(a, b))
            .cloned()
            .expect("nonzero polynomial");
        let lc = p[&lead].inv();
        let rhs = p
            .into_iter()
            .filter(|(w, _)| *w != lead)
            .map(|(w, c)| (w, -(&c * &lc)))
            .collect();
        self.rules.push(Rule { lhs: lead, rhs });
    }

    fn overlaps_of_degree(&self, deg: usize) -> Vec<Poly> {
        let mut out = Vec::new();
        for r1 in &self.rules {
            for r2 in &self.rules {
                let (u, v) = (&r1.lhs, &r2.lhs);
                if u.len() + v.len() <= deg {
                    continue;
                }
                let k = u.len() + v.len() - deg;
                if k == 0 || k >= u.len() || k >= v.len() || u[u.len() - k..] != v[..k] {
                    continue;
                }
                // rhs1 · v[k..] − u[..|u|-k] · rhs2
                let mut s = Poly::new();
                for (w, c) in &r1.rhs {
                    let mut nw = w.clone();
                    nw.extend(&v[k..]);
                    add_term(&mut s, nw, c.clone());
                }
                for (w, c) in &r2.rhs {
                    let mut nw = u[..u.len() - k].to_vec();
                    nw.extend(w);
                    add_term(&mut s, nw, -c);
                }
                out.push(s);
            }
        }
        out
    }

    fn complete_to(&mut self, n: usize) -> Result<(), Error> {
        if n <= self.completed {
            return Ok(());
        }
        if n > self.budget.max_degree {
            return Err(Error::BudgetExceeded(format!(
                "words of degree {n} exceed the rewriting degree budget {}",
                self.budget.max_degree
            )));
        }
        for deg in self.completed + 1..=n {
            let mut candidates: Vec<Poly> = self
                .generators
                .iter()
                .filter(|g| g.keys().next().map(Vec::len) == Some(deg))
                .cloned()
                .collect();
            let n_generators = candidates.len();
            candidates.extend(self.overlaps_of_degree(deg));
            for (idx, cand) in candidates.into_iter().enumerate() {
                let red = self.reduce_direct(cand)?;
                if !red.is_empty() {
                    if idx >= n_generators {
                        self.completion_rules += 1;
                    }
                    self.add_rule(red);
                }
            }
            self.completed = deg;
        }
        Ok(())
    }

    /// Normal form of a single word.
    pub(crate) fn normal_form(&mut self, w: &[usize]) -> Result<Vec<(Word, QScalar)>, Error> {
        if let Some(v) = self.memo.get(w) {
            return Ok(v.clone());
        }
        self.complete_to(w.len())?;
        let out = match self.reducer(w) {
            None => vec![(w.to_vec(), QScalar::one())],
            Some((k, pos)) => {
                self.tick()?;
                let len = self.rules[k].lhs.len();
                let mut acc = Poly::new();
                for (r, s) in self.rules[k].rhs.clone() {
                    let mut nw = w[..pos].to_vec();
                    nw.extend(&r);
                    nw.extend(&w[pos + len..]);
                    for (x, t) in self.normal_form(&nw)? {
                        add_term(&mut acc, x, &s * &t);
                    }
                }
                let mut v: Vec<(Word, QScalar)> = acc.into_iter().collect();
                v.sort_by(|a, b| a.0.cmp(&b.0));
                v
            }
        };
        self.memo.insert(w.to_vec(), out.clone());
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_serre_completion_is_finite_in_low_degree() {
        // A2, letters 0,1 with rank = index; a_12 = a_21 = -1
        let gens = vec![serre_poly(0, 1, -1, 0, 1), serre_poly(1, 0, -1, 0, 1)];
        let mut rs = RewriteSystem::new(vec![0, 1], gens, Budget::default());
        // the Serre combination itself reduces to zero
        let p = serre_poly(0, 1, -1, 0, 1);
        let mut total = Poly::new();
        for (w, c) in p {
            for (x, t) in rs.normal_form(&w).unwrap() {
                add_term(&mut total, x, &c * &t);
            }
        }
        assert!(total.is_empty());
        let st = rs.stats();
        assert_eq!(st.completed_degree, 3);
        assert!(st.rules >= 2);
    }

    #[test]
    fn commuting_letters() {
        let gens = vec![serre_poly(1, 0, 0, 0, 1)];
        let mut rs = RewriteSystem::new(vec![0, 1], gens, Budget::default());
        let nf = rs.normal_form(&[1, 0, 1, 0]).unwrap();
        assert_eq!(nf, vec![(vec![0, 0, 1, 1], QScalar::one())]);
    }

    #[test]
    fn degree_budget_is_enforced() {
        let gens = vec![serre_poly(1, 0, 0, 0, 1)];
        let budget = Budget {
            max_degree: 3,
            max_steps: 100,
        };
        let mut rs = RewriteSystem::new(vec![0, 1], gens, budget);
        assert!(matches!(
            rs.normal_form(&[1, 0, 1, 0]),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
