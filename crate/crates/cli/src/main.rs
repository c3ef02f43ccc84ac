mod cache;
mod config;
mod suites;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qtoda::coxeter_hopf::CoxeterSetup;
use qtoda::qalgebra::AlgebraElement;
use qtoda::ratmat;
use qtoda::representations::Representation;
use qtoda::toda_ops::{toda_hamiltonian, DifferenceOperator};
use qtoda::Q;

use cache::Cache;
use config::{CommonArgs, Format, SessionConfig, CONVENTIONS};
use suites::Suite;

const CACHE_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "qtoda", version, about = "Quantum Toda Hamiltonians from Coxeter realizations")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the Hamiltonian attached to a representation
    Toda {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Output file (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites
    Check {
        #[command(flatten)]
        common: CommonArgs,
        /// Suites to run, repeatable or comma separated (default: all)
        #[arg(long, value_enum, value_delimiter = ',')]
        suite: Vec<Suite>,
        /// Write the JSON report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Inspect or clear the result cache
    Cache {
        #[arg(value_enum, default_value = "path")]
        action: CacheAction,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CacheAction {
    Path,
    List,
    Clear,
}

fn cache_key(kind: &str, cfg: &SessionConfig, setup: &CoxeterSetup, rep: &Representation, with_chars: bool) -> Value {
    let mut key = json!({
        "kind": kind,
        "version": CACHE_VERSION,
        "type": cfg.series.to_string(),
        "rank": cfg.rank(),
        "pi": cfg.pi,
        "n": setup.datum.n.iter().map(|r| r.iter().map(ratmat::q_to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "ordering": setup.ordering.order,
        "rep": rep.to_json(),
    });
    if with_chars {
        let echo = cfg.echo(None);
        key["chi"] = echo["chi"].clone();
        key["chibar"] = echo["chibar"].clone();
    }
    key
}

pub(crate) fn central_element(cache: &Cache, cfg: &SessionConfig, s: &CoxeterSetup, rep: &Representation) -> Result<AlgebraElement> {
    cache.get_or_compute(
        &cache_key("central", cfg, s, rep, false),
        |v| AlgebraElement::from_json(&s.coxeter, v).ok(),
        AlgebraElement::to_json,
        || s.central_element(rep).context("coxeter_hopf: central element"),
    )
}

pub(crate) fn operator(cache: &Cache, cfg: &SessionConfig, s: &CoxeterSetup, rep: &Representation) -> Result<DifferenceOperator> {
    let d = &cfg.cartan.d;
    cache.get_or_compute(
        &cache_key("operator", cfg, s, rep, true),
        |v| DifferenceOperator::from_json(d, v).ok(),
        DifferenceOperator::to_json,
        || toda_hamiltonian(s, rep, &cfg.chi, &cfg.chibar).context("toda_ops: Hamiltonian"),
    )
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_toda(cfg: &SessionConfig, format: Format, out: Option<&PathBuf>) -> Result<()> {
    let cache = Cache::open(cfg.use_cache);
    let setup = cfg.setup()?;
    let rep = cfg.representation()?;
    let op = operator(&cache, cfg, &setup, &rep)?;
    let mut exps: Vec<Q> = rep.weights_on_y(&cfg.cartan).into_iter().flatten().collect();
    exps.push(Q::new(1, setup.datum.denominator));
    let d = ratmat::lcm_denominators(exps.iter());
    let mut settings = cfg.echo(Some(&setup));
    settings["D"] = json!(d);
    settings["format"] = json!(format.to_possible_value().expect("named").get_name());
    let text = match format {
        Format::Json => {
            let doc = json!({
                "settings": settings,
                "conventions": CONVENTIONS,
                "terms": op.to_json(),
            });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Format::Latex => op.to_latex() + "\n",
        Format::Text => op.to_string() + "\n",
    };
    emit(out, &text)?;
    eprintln!("{} terms, D = {d}", op.len());
    eprintln!("settings: {settings}");
    for c in CONVENTIONS {
        eprintln!("convention: {c}");
    }
    Ok(())
}

fn cmd_check(cfg: &SessionConfig, suites: &[Suite], out: Option<&PathBuf>) -> Result<bool> {
    let mut suites = if suites.is_empty() {
        Suite::value_variants().to_vec()
    } else {
        suites.to_vec()
    };
    suites.sort();
    suites.dedup();
    let cache = Cache::open(cfg.use_cache);
    let results = suites::run(&suites, cfg, &cache);
    let passed = results.iter().all(suites::SuiteResult::passed);
    let report = json!({
        "settings": cfg.echo(None),
        "suites": results.iter().map(suites::SuiteResult::to_json).collect::<Vec<_>>(),
        "passed": passed,
    });
    emit(out, &(serde_json::to_string_pretty(&report)? + "\n"))?;
    for r in &results {
        let tag = if r.passed() { "PASS" } else { "FAIL" };
        eprintln!("[{tag}] {} ({:.1}s): {}", r.suite.name(), r.seconds, r.detail);
    }
    eprintln!("{}/{} suites passed", results.iter().filter(|r| r.passed()).count(), results.len());
    Ok(passed)
}

fn cmd_cache(action: CacheAction) -> Result<()> {
    let cache = Cache::open(true);
    let Some(dir) = cache.dir() else {
        anyhow::bail!("no cache directory: set {}", cache::CACHE_ENV);
    };
    match action {
        CacheAction::Path => println!("{}", dir.display()),
        CacheAction::List => {
            for p in cache.entries()? {
                println!("{}", p.display());
            }
        }
        CacheAction::Clear => {
            let entries = cache.entries()?;
            for p in &entries {
                fs::remove_file(p)?;
            }
            eprintln!("removed {} entries", entries.len());
        }
    }
    Ok(())
}

fn resolve(common: &CommonArgs) -> SessionConfig {
    match common.resolve() {
        Ok(c) => c,
        Err(e) => Cli::command()
            .error(clap::error::ErrorKind::ValueValidation, format!("{e:#}"))
            .exit(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Command::Toda { common, format, out } => cmd_toda(&resolve(common), *format, out.as_ref()).map(|()| true),
        Command::Check { common, suite, out } => cmd_check(&resolve(common), suite, out.as_ref()),
        Command::Cache { action } => cmd_cache(*action).map(|()| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
