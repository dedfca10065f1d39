//! `cycprod`: inspect factorizations of finite groups and verify the
//! structural claims over the built-in corpus.
//!
//! Exit codes: 0 when everything checked holds, 1 when a check fails, 2 on
//! usage or input errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use cycprod::factor::{self, Factorization};
use cycprod::structure::{self, DecompositionRecord};
use cycprod::verify::{self, Check};
use cycprod::{corpus, formats, subgroup, Elem, FiniteGroup, Limits};

#[derive(Parser, Debug)]
#[command(name = "cycprod", version, about = "Products of cyclic subgroups in finite groups")]
struct Cli {
    /// Largest group order accepted or generated.
    #[arg(long, global = true, env = "CYCPROD_MAX_ORDER", default_value_t = 128)]
    max_order: usize,

    /// Worker threads for `verify` (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Write the JSON result to this file instead of standard output.
    #[arg(long, global = true)]
    json: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit the corpus manifest.
    Gen,
    /// List the factorizations G = AB with A, B cyclic.
    Factor { file: PathBuf },
    /// Decompose G = (S × T) ⋊ H for one or every cyclic factorization.
    Decompose {
        file: PathBuf,
        /// Generator of A (element index).
        #[arg(long, requires = "b")]
        a: Option<u32>,
        /// Generator of B (element index).
        #[arg(long, requires = "a")]
        b: Option<u32>,
    },
    /// Print the Prüfer rank.
    Rank { file: PathBuf },
    /// Print whether the group is supersoluble.
    Supersoluble { file: PathBuf },
    /// Check that the cyclic subgroups generated by the given elements
    /// permute pairwise and multiply to the whole group.
    Multi {
        file: PathBuf,
        #[arg(required = true)]
        gens: Vec<u32>,
    },
    /// Run the checks over the corpus.
    Verify {
        /// Comma-separated check names; all checks by default.
        #[arg(long)]
        check: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn limits(cli: &Cli) -> Limits {
    Limits {
        max_order: cli.max_order,
        assoc_check_bound: cli.max_order,
        lattice_bound: cli.max_order,
    }
}

fn load(path: &Path, limits: &Limits) -> Result<FiniteGroup> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    formats::parse_group(&text, limits).with_context(|| format!("parsing {}", path.display()))
}

fn emit(cli: &Cli, value: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match &cli.json {
        Some(path) => std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display())),
        None => print_line(&text),
    }
}

/// Writes one line to stdout; a closed pipe is not an error.
fn print_line(text: &str) -> Result<()> {
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn factorization_json(g: &FiniteGroup, f: &Factorization) -> Value {
    let gen = |s: &cycprod::ElementSet| {
        s.iter()
            .find(|&x| g.elem_order(x) as usize == s.len())
            .map(|x| x.0)
    };
    json!({
        "a": f.a.to_indices(),
        "b": f.b.to_indices(),
        "aGenerator": gen(&f.a),
        "bGenerator": gen(&f.b),
    })
}

/// Returns whether everything checked held.
fn run(cli: &Cli) -> Result<bool> {
    let limits = limits(cli);
    match &cli.command {
        Command::Gen => {
            let config = corpus::CorpusConfig::with_max_order(cli.max_order);
            let entries = corpus::generate_corpus(&config)?;
            let manifest = corpus::manifest(&entries);
            if cli.json.is_some() {
                eprintln!("{} groups, corpus hash {}", entries.len(), manifest.corpus_hash);
            }
            emit(cli, &serde_json::to_value(&manifest)?)?;
            Ok(true)
        }
        Command::Factor { file } => {
            let g = load(file, &limits)?;
            let fs = factor::find_cyclic_factorizations(&g);
            let list: Vec<Value> = fs.iter().map(|f| factorization_json(&g, f)).collect();
            emit(cli, &json!({ "order": g.order(), "factorizations": list }))?;
            Ok(true)
        }
        Command::Decompose { file, a, b } => {
            let g = load(file, &limits)?;
            let fs = match (a, b) {
                (Some(a), Some(b)) => {
                    let x = g.check_elem(Elem(*a))?;
                    let y = g.check_elem(Elem(*b))?;
                    let f = Factorization::new(&g, subgroup::cyclic_subgroup(&g, x), subgroup::cyclic_subgroup(&g, y));
                    vec![f?]
                }
                _ => factor::find_cyclic_factorizations(&g),
            };
            if fs.is_empty() {
                bail!("the group has no factorization into two cyclic subgroups");
            }
            let mut ok = true;
            let mut records: Vec<DecompositionRecord> = Vec::new();
            for f in &fs {
                let report = structure::decompose(&g, f)?;
                ok &= report.holds();
                records.push(report.to_record(g.order()));
            }
            let value = if a.is_some() {
                serde_json::to_value(&records[0])?
            } else {
                serde_json::to_value(&records)?
            };
            emit(cli, &value)?;
            Ok(ok)
        }
        Command::Rank { file } => {
            let g = load(file, &limits)?;
            let r = cycprod::prufer_rank(&g, &limits)?;
            match cli.json {
                Some(_) => emit(cli, &json!({ "order": g.order(), "pruferRank": r }))?,
                None => print_line(&r.to_string())?,
            }
            Ok(true)
        }
        Command::Supersoluble { file } => {
            let g = load(file, &limits)?;
            let s = structure::is_supersoluble(&g);
            match cli.json {
                Some(_) => emit(cli, &json!({ "order": g.order(), "supersoluble": s }))?,
                None => print_line(&s.to_string())?,
            }
            Ok(true)
        }
        Command::Multi { file, gens } => {
            let g = load(file, &limits)?;
            let mut factors = Vec::with_capacity(gens.len());
            for &x in gens {
                let x = g.check_elem(Elem(x))?;
                factors.push(subgroup::cyclic_subgroup(&g, x));
            }
            let mp = match factor::build_multi_product(&g, factors) {
                Ok(mp) => mp,
                Err(e) => {
                    emit(cli, &json!({ "order": g.order(), "valid": false, "reason": e.to_string() }))?;
                    return Ok(false);
                }
            };
            let supersoluble = structure::is_supersoluble(&g);
            let report = factor::largest_prime_sylow_normal(&g, &mp);
            emit(
                cli,
                &json!({
                    "order": g.order(),
                    "valid": true,
                    "supersoluble": supersoluble,
                    "largestPrime": report.prime,
                    "normalSylow": report.p_is_normal_sylow,
                    "complement": report.q_is_complement,
                }),
            )?;
            Ok(supersoluble && report.holds())
        }
        Command::Verify { check } => {
            let checks = match check {
                Some(list) => (verify::parse_checks(list))?,
                None => Check::ALL.to_vec(),
            };
            if checks.is_empty() {
                bail!("no checks selected");
            }
            let config = corpus::CorpusConfig::with_max_order(cli.max_order);
            let start = Instant::now();
            let mut entries = corpus::generate_corpus(&config)?;
            let report = verify::run_checks(&mut entries, &checks, cli.jobs, &config)?;
            eprintln!(
                "{} groups, {} pass, {} fail, {} skipped in {:.1}s",
                report.entries.len(),
                report.summary.pass,
                report.summary.fail,
                report.summary.skipped,
                start.elapsed().as_secs_f64()
            );
            for c in &checks {
                let name = c.name();
                let (mut p, mut f, mut s) = (0, 0, 0);
                for e in &report.entries {
                    match e.results.get(name).map(|v| v.status) {
                        Some(cycprod::Status::Pass) => p += 1,
                        Some(cycprod::Status::Fail) => f += 1,
                        Some(cycprod::Status::Skipped) => s += 1,
                        None => {}
                    }
                }
                eprintln!("  {name:<14} {p:>5} pass {f:>5} fail {s:>5} skipped");
            }
            for (name, bad) in report.failures() {
                eprintln!("  FAIL {name}: {}", bad.join(", "));
            }
            if let Some(path) = &cli.json {
                let text = serde_json::to_string_pretty(&report)?;
                std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(report.all_passed())
        }
    }
}
