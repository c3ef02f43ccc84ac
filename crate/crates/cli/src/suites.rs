use std::thread;
use std::time::Instant;

use anyhow::{anyhow, Result};
use clap::ValueEnum;
use serde_json::{json, Value};

use qtoda::cartan_root::{cayley_coeffs, Series};
use qtoda::coxeter_hopf::CoxeterSetup;
use qtoda::representations::builtin_rep;
use qtoda::toda_ops::{check_commutativity, classical_limit, compare_classical, toda_hamiltonian};
use qtoda::Error;

use crate::config::SessionConfig;
use crate::{central_element, operator};
use crate::cache::Cache;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Serre,
    Cayley,
    Rootsh,
    Centrality,
    Invariance,
    Commutativity,
    Yangbaxter,
    Antipode,
    ClassicalLimit,
}

impl Suite {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Debug)]
pub enum Status {
    Pass,
    Fail,
    BudgetExceeded,
    Error,
}

impl Status {
    fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::BudgetExceeded => "budget-exceeded",
            Status::Error => "error",
        }
    }
}

pub struct SuiteResult {
    pub suite: Suite,
    pub status: Status,
    pub detail: String,
    pub seconds: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        matches!(self.status, Status::Pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.name(),
            "status": self.status.as_str(),
            "detail": self.detail,
            "seconds": (self.seconds * 1000.0).round() / 1000.0,
        })
    }
}

fn verdict(ok: bool, pass: impl Into<String>, fail: impl Into<String>) -> (Status, String) {
    if ok {
        (Status::Pass, pass.into())
    } else {
        (Status::Fail, fail.into())
    }
}

fn run_one(suite: Suite, cfg: &SessionConfig, setup: Option<&CoxeterSetup>, cache: &Cache) -> Result<(Status, String)> {
    let need = || setup.ok_or_else(|| anyhow!("Coxeter setup unavailable"));
    let l = cfg.rank();
    Ok(match suite {
        Suite::Cayley => {
            let cd = cayley_coeffs(&cfg.cartan, &cfg.pi)?;
            (Status::Pass, format!("ε·b agrees with the Cayley pairing, c = {:?}", cd.c))
        }
        Suite::Serre => {
            let s = need()?;
            let bad = s.check_psi_relations()?;
            let mut vanish = Vec::new();
            for i in 0..l {
                for j in (0..l).filter(|&j| j != i) {
                    if !cfg.chi.apply(&s.coxeter.serre_element(i, j, true))?.is_zero() {
                        vanish.push(format!("χ(S+_{}{})", i + 1, j + 1));
                    }
                    if !cfg.chibar.apply(&s.coxeter.serre_element(i, j, false))?.is_zero() {
                        vanish.push(format!("χ̄(S-_{}{})", i + 1, j + 1));
                    }
                }
            }
            verdict(
                bad.is_empty() && vanish.is_empty(),
                "ψ maps every relation to 0; characters vanish on Serre elements",
                format!("failing relations {bad:?}, non-vanishing {vanish:?}"),
            )
        }
        Suite::Rootsh => {
            let s = need()?;
            let vals = s.character_on_roots(&cfg.chi, &cfg.chibar)?;
            let bad: Vec<String> = vals
                .iter()
                .enumerate()
                .filter(|(k, (x, y))| !s.roots.is_simple(*k) && !(x.is_zero() && y.is_zero()))
                .map(|(k, (x, y))| format!("{:?}: χ = {x}, χ̄ = {y}", s.roots.root(k)))
                .collect();
            verdict(bad.is_empty(), format!("{} non-simple roots vanish", vals.len() - l), bad.join("; "))
        }
        Suite::Centrality => {
            let s = need()?;
            let rep = cfg.representation()?;
            let c = central_element(cache, cfg, s, &rep)?;
            let bad = s.centrality_failures(&c)?;
            verdict(
                bad.is_empty(),
                format!("C_V ({} terms) commutes with every generator", c.len()),
                format!("[C_V, g] ≠ 0 for {bad:?}"),
            )
        }
        Suite::Invariance => {
            let s = need()?;
            let rep = cfg.representation()?;
            let x = s.projected_central_element(&rep, &cfg.chi)?;
            let mut bad = Vec::new();
            for i in 0..l {
                let y = s.dot_action(&s.coxeter.e(i), &x, &cfg.chi)?;
                if !s.coxeter.normalize(&y)?.is_zero() {
                    bad.push(format!("e_{}", i + 1));
                }
            }
            verdict(bad.is_empty(), "e_i · ρ_χ(C_V) = 0 for all i", format!("nonzero for {bad:?}"))
        }
        Suite::Commutativity => {
            let s = need()?;
            if cfg.series != Series::A {
                return Err(Error::Unsupported("commutativity uses the built-in sl(n) fundamentals".into()).into());
            }
            let ops = (1..=l)
                .map(|k| {
                    let rep = builtin_rep(Series::A, l, &format!("fundamental:{k}"))?;
                    Ok(toda_hamiltonian(s, &rep, &cfg.chi, &cfg.chibar)?)
                })
                .collect::<Result<Vec<_>>>()?;
            let rep = check_commutativity(&ops);
            verdict(
                rep.passed(),
                format!("{} fundamental Hamiltonians commute pairwise", ops.len()),
                rep.failures
                    .iter()
                    .map(|(i, j, c)| format!("[M_{}, M_{}] = {c}", i + 1, j + 1))
                    .collect::<Vec<_>>()
                    .join("; "),
            )
        }
        Suite::Yangbaxter => {
            let s = need()?;
            let rep = cfg.representation()?;
            let yb = s.yang_baxter_holds(&rep)?;
            let ss = s.r_matrix_antipode_full(&rep, &rep)? == s.r_matrix_full(&rep, &rep)?;
            verdict(
                yb && ss,
                "Yang-Baxter and (S⊗S)R = R hold on V⊗V",
                format!("Yang-Baxter: {yb}, (S⊗S)R = R: {ss}"),
            )
        }
        Suite::Antipode => {
            let s = need()?;
            let sq = s.antipode_square_check()?;
            let bad: Vec<String> = s
                .hopf_axiom_checks()?
                .into_iter()
                .chain(sq.checks)
                .filter(|c| !c.passed)
                .map(|c| c.name)
                .collect();
            verdict(bad.is_empty(), "Hopf axioms and S² = Ad e^{2hρ^∨} hold", format!("failing {bad:?}"))
        }
        Suite::ClassicalLimit => {
            let s = need()?;
            let rep = cfg.representation()?;
            let op = operator(cache, cfg, s, &rep)?;
            let cmp = compare_classical(&classical_limit(&op, 2)?, &cfg.cartan, &cfg.chi, &cfg.chibar)?;
            verdict(
                cmp.passed(),
                format!(
                    "h^0 = {}, N = {}, constant = {}",
                    cmp.identity_h0,
                    cmp.normalization.as_ref().map_or("none".into(), ToString::to_string),
                    cmp.additive_constant
                ),
                format!("{cmp:?}"),
            )
        }
    })
}

/// Runs the suites on separate threads; results come back in `suites` order.
pub fn run(suites: &[Suite], cfg: &SessionConfig, cache: &Cache) -> Vec<SuiteResult> {
    let setup = if suites.iter().any(|&s| s != Suite::Cayley) {
        Some(cfg.setup())
    } else {
        None
    };
    let (setup, setup_err) = match setup {
        Some(Ok(s)) => (Some(s), None),
        Some(Err(e)) => (None, Some(e)),
        None => (None, None),
    };
    thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&suite| {
                let setup = setup.as_ref();
                let setup_err = setup_err.as_ref();
                scope.spawn(move || {
                    let t = Instant::now();
                    let out = match (suite, setup_err) {
                        (Suite::Cayley, _) | (_, None) => run_one(suite, cfg, setup, cache),
                        (_, Some(e)) => Err(anyhow!("{e:#}")),
                    };
                    let (status, detail) = match out {
                        Ok(x) => x,
                        Err(e) => {
                            let budget = e.chain().any(|c| matches!(c.downcast_ref::<Error>(), Some(Error::BudgetExceeded(_))))
                                || setup_err.is_some_and(|s| s.chain().any(|c| matches!(c.downcast_ref::<Error>(), Some(Error::BudgetExceeded(_)))));
                            (if budget { Status::BudgetExceeded } else { Status::Error }, format!("{e:#}"))
                        }
                    };
                    SuiteResult {
                        suite,
                        status,
                        detail,
                        seconds: t.elapsed().as_secs_f64(),
                    }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    })
}
