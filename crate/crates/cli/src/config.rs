use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use qtoda::cartan_root::{build_cartan, build_root_system, CartanDatum, NormalOrdering, Series};
use qtoda::coxeter_hopf::{Character, CoxeterSetup, Direction};
use qtoda::qalgebra::Budget;
use qtoda::representations::{builtin_rep, load_rep, Representation};
use qtoda::QScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Text,
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Cartan type (A..G)
    #[arg(long = "type", default_value = "A")]
    pub series: String,
    #[arg(long, default_value_t = 1)]
    pub rank: usize,
    /// Coxeter permutation, 1-based, e.g. "2,1" (default: identity)
    #[arg(long)]
    pub pi: Option<String>,
    /// χ(e_i) values, comma separated scalar strings (default: all 1)
    #[arg(long)]
    pub chi: Option<String>,
    /// χ̄(f_i) values, comma separated scalar strings (default: all 1)
    #[arg(long)]
    pub chibar: Option<String>,
    /// Built-in representation: vector, dual or fundamental:k
    #[arg(long, default_value = "vector")]
    pub rep: String,
    /// Representation JSON file (overrides --rep)
    #[arg(long)]
    pub rep_file: Option<PathBuf>,
    /// Normal ordering as positive roots in simple-root coordinates, e.g. "1,0;1,1;0,1"
    #[arg(long)]
    pub ordering: Option<String>,
    #[arg(long)]
    pub budget_degree: Option<usize>,
    #[arg(long)]
    pub budget_steps: Option<u64>,
    /// Bypass the on-disk cache
    #[arg(long)]
    pub no_cache: bool,
}

/// Validated configuration.
#[derive(Debug, Clone)]
pub struct SessionConfig {
    pub cartan: CartanDatum,
    pub series: Series,
    /// 0-based.
    pub pi: Vec<usize>,
    pub chi: Character,
    pub chibar: Character,
    pub rep_selector: String,
    pub rep_file: Option<PathBuf>,
    pub ordering: Option<NormalOrdering>,
    pub budget: Budget,
    pub use_cache: bool,
}

fn parse_list<T>(s: &str, what: &str, f: impl Fn(&str) -> Option<T>) -> Result<Vec<T>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| f(t).ok_or_else(|| anyhow!("invalid {what} entry '{t}'")))
        .collect()
}

fn parse_character(s: Option<&str>, dir: Direction, rank: usize, name: &str) -> Result<Character> {
    let Some(s) = s else {
        return Ok(Character::trivial(dir, rank));
    };
    let values: Vec<QScalar> = s
        .split(',')
        .map(|t| t.trim().parse::<QScalar>().map_err(|e| anyhow!("--{name} value '{}': {e}", t.trim())))
        .collect::<Result<_>>()?;
    if values.len() != rank {
        bail!("--{name} needs {rank} values, got {}", values.len());
    }
    Character::new(dir, values).map_err(|e| anyhow!("--{name}: {e}"))
}

impl CommonArgs {
    /// Errors here are usage errors.
    pub fn resolve(&self) -> Result<SessionConfig> {
        let series: Series = self.series.parse().map_err(|e| anyhow!("--type: {e}"))?;
        let cartan = build_cartan(series, self.rank).map_err(|e| anyhow!("--type/--rank: {e}"))?;
        let l = self.rank;
        let pi = match &self.pi {
            None => (0..l).collect(),
            Some(s) => {
                let p = parse_list(s, "--pi", |t| t.parse::<usize>().ok())?;
                let mut sorted = p.clone();
                sorted.sort_unstable();
                if sorted != (1..=l).collect::<Vec<_>>() {
                    bail!("--pi {s} is not a permutation of 1..{l}");
                }
                p.into_iter().map(|x| x - 1).collect()
            }
        };
        let chi = parse_character(self.chi.as_deref(), Direction::Positive, l, "chi")?;
        let chibar = parse_character(self.chibar.as_deref(), Direction::Negative, l, "chibar")?;
        if let Some(p) = &self.rep_file {
            if !p.is_file() {
                bail!("--rep-file {} does not exist", p.display());
            }
        }
        let ordering = match &self.ordering {
            None => None,
            Some(s) => {
                let rs = build_root_system(&cartan);
                let order = s
                    .split(';')
                    .map(|r| {
                        let m = parse_list(r, "--ordering", |t| t.parse::<i64>().ok())?;
                        rs.index_of(&m).ok_or_else(|| anyhow!("--ordering: {r} is not a positive root"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Some(NormalOrdering::new(order))
            }
        };
        let mut budget = Budget::default();
        if let Some(d) = self.budget_degree {
            budget.max_degree = d;
        }
        if let Some(s) = self.budget_steps {
            budget.max_steps = s;
        }
        Ok(SessionConfig {
            cartan,
            series,
            pi,
            chi,
            chibar,
            rep_selector: self.rep.clone(),
            rep_file: self.rep_file.clone(),
            ordering,
            budget,
            use_cache: !self.no_cache,
        })
    }
}

impl SessionConfig {
    pub fn rank(&self) -> usize {
        self.cartan.rank
    }

    pub fn setup(&self) -> Result<CoxeterSetup> {
        let s = CoxeterSetup::new(&self.cartan, &self.pi, self.ordering.clone()).context("coxeter_hopf: building the Coxeter setup")?;
        s.standard.set_budget(self.budget);
        s.coxeter.set_budget(self.budget);
        Ok(s)
    }

    pub fn representation(&self) -> Result<Representation> {
        match &self.rep_file {
            Some(p) => load_rep(p, &self.cartan).with_context(|| format!("representations: loading {}", p.display())),
            None => builtin_rep(self.series, self.rank(), &self.rep_selector).context("representations"),
        }
    }

    /// Settings echoed in summaries and artifacts.
    pub fn echo(&self, setup: Option<&CoxeterSetup>) -> Value {
        let scalars = |c: &Character| c.values.iter().map(ToString::to_string).collect::<Vec<_>>();
        let mut v = json!({
            "type": self.series.to_string(),
            "rank": self.rank(),
            "pi": self.pi.iter().map(|x| x + 1).collect::<Vec<_>>(),
            "chi": scalars(&self.chi),
            "chibar": scalars(&self.chibar),
            "rep": match &self.rep_file {
                Some(p) => p.display().to_string(),
                None => self.rep_selector.clone(),
            },
            "budget": {"degree": self.budget.max_degree, "steps": self.budget.max_steps},
        });
        if let Some(s) = setup {
            v["ordering"] = s.ordering.order.iter().map(|&k| json!(s.roots.root(k))).collect();
            v["D"] = json!(s.datum.denominator);
        }
        v
    }
}

pub const CONVENTIONS: &[&str] = &[
    "T_x f(y) = f(y + x), shifts in Y (fundamental coweight) coordinates",
    "characters e^{-h λ(y)} with λ in simple-root coordinates, written left of shifts",
    "T_μ e^{-hλ} = q^{-λ(μ)} e^{-hλ} T_μ, λ(μ) = Σ λ_i d_i μ_i",
    "c_ij = ε_ij d_i a_ij, e_i f_j = q^{c_ji} f_j e_i",
    "R = E0 Π_β exp_{q_β^{-1}}(...) in normal-ordering order, trace over the representation leg of R21 R (1 ⊗ e^{2hρ^∨})",
];
