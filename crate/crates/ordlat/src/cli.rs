//! Argument parsing and command dispatch.
//!
//! Exit status: 0 success, 1 a check failed, 2 usage or invalid input,
//! 3 capacity or budget exhausted (including `unknown` verdicts).

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ordlat_core::completions::{chain_ideals, downsets, fdown, ideals, iterate_id, FamilyPoset};
use ordlat_core::verification::{
    atoms_non_ideal_preimage, build_atoms_lattice, build_chain_bundle, build_idemb_tower,
    check_idemb_tower, replay_atoms_kurepa, Corpus,
};
use ordlat_core::{Limits, Poset};
use serde_json::json;

use crate::dot::hasse_dot;
use crate::formats::{canonical_hash, family_to_json, read_poset, FamilyJson, PosetJson};
use crate::ordexpr::evaluate;
use crate::suites::{run_suite, Suite, SuiteConfig};
use crate::UsageError;

#[derive(Debug, Parser)]
#[command(
    name = "ordlat",
    version,
    about = "Finite posets, their ideal completions, and exhaustive checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Node budget for each backtracking search.
    #[arg(long, env = "ORDLAT_BUDGET", default_value_t = Limits::DEFAULT_BUDGET, global = true)]
    pub budget: u64,
    /// Reserved; every algorithm is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// All posets up to isomorphism with at most --max-n elements.
    Gen {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
    /// Compute a family of downsets of a poset.
    Complete {
        #[arg(long, value_enum)]
        op: CompletionOp,
        /// Iteration count for `idpow`.
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[command(flatten)]
        source: Source,
    },
    /// Run a check suite; exits nonzero on any failing or unknown verdict.
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        /// Class preset for lemma51: chains3, chains3+antichain, connected+antichain.
        #[arg(long, default_value = "chains3")]
        x: String,
        /// Number of atoms for the kurepa suite.
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Check this poset file instead of the corpus.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Build one of the counterexample constructions.
    Counterexample {
        #[arg(long, value_enum)]
        name: Construction,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Base lattice for idemb-tower (default: one point).
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Evaluate an ordinal expression, e.g. "w^2*3 + w + 5", "id(w+1)",
    /// "cof(w^2)", "cofinal(w,w1)".
    Ordinal {
        #[arg(long)]
        expr: String,
    },
    /// Emit the Hasse diagram of a poset or family as DOT.
    Render {
        #[command(flatten)]
        source: Source,
        /// Render a family JSON file instead.
        #[arg(long, conflicts_with_all = ["input", "poset"])]
        family: Option<PathBuf>,
    },
}

#[derive(Debug, clap::Args)]
pub struct Source {
    /// Poset JSON file.
    #[arg(long, conflicts_with = "poset")]
    pub input: Option<PathBuf>,
    /// Built-in poset: chain:N, antichain:N, diamond, vee, corpus:ID,
    /// chain-bundle:K, atoms:K.
    #[arg(long)]
    pub poset: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CompletionOp {
    Down,
    /// id(P): nonempty ideals.
    #[value(name = "id")]
    IdNonempty,
    /// Id(P): ideals including the empty one.
    #[value(name = "Id")]
    Id,
    #[value(name = "chid")]
    ChIdNonempty,
    #[value(name = "chId")]
    ChId,
    Fdown,
    /// id applied --k times; the last stage is written.
    Idpow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    ChainBundle,
    Atoms,
    IdembTower,
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn read_file(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn builtin(spec: &str) -> Result<Poset> {
    let (name, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let num = || -> Result<usize> {
        arg.parse()
            .map_err(|_| usage(format!("{name} needs a size, as in {name}:3")))
    };
    Ok(match name {
        "chain" => Poset::chain(num()?)?,
        "antichain" => Poset::antichain(num()?)?,
        "diamond" => Poset::diamond(),
        "vee" => Poset::vee(),
        "chain-bundle" => build_chain_bundle(num()?)?,
        "atoms" => build_atoms_lattice(num()?)?.lattice,
        "corpus" => {
            let n: usize = arg
                .strip_prefix('n')
                .and_then(|r| r.split_once('-'))
                .and_then(|(n, _)| n.parse().ok())
                .ok_or_else(|| usage("corpus ids look like n4-7"))?;
            Corpus::generate(n)?
                .get(arg)
                .cloned()
                .ok_or_else(|| usage(format!("no corpus instance {arg}")))?
        }
        _ => return Err(usage(format!("unknown built-in poset {spec:?}"))),
    })
}

fn load(source: &Source) -> Result<Poset> {
    match (&source.input, &source.poset) {
        (Some(path), _) => {
            read_poset(&read_file(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
        }
        (None, Some(spec)) => builtin(spec),
        (None, None) => Err(usage("give a poset with --input FILE or --poset SPEC")),
    }
}

fn family_table(f: &FamilyPoset) -> String {
    let mut out = format!("{} family: {} sets\n", f.kind().name(), f.len());
    for (i, &s) in f.sets().iter().enumerate() {
        let above: Vec<String> = f
            .order()
            .hasse_covers()
            .into_iter()
            .filter(|&(a, _)| a == i)
            .map(|(_, b)| b.to_string())
            .collect();
        out += &format!(
            "{i:>3}  {}  covered by [{}]\n",
            f.base().format_set(s),
            above.join(",")
        );
    }
    out
}

fn poset_table(p: &Poset) -> String {
    let covers: Vec<String> = p
        .hasse_covers()
        .into_iter()
        .map(|(i, j)| format!("{}<{}", p.label(i), p.label(j)))
        .collect();
    format!("{} elements; covers: {}\n", p.len(), covers.join(" "))
}

/// Runs one command, returning its output and exit status.
pub fn execute(cli: &Cli) -> Result<(String, u8)> {
    let table = cli.format == Format::Table;
    match &cli.command {
        Command::Gen { max_n } => {
            let corpus = Corpus::generate(*max_n)?;
            let out = if table {
                let mut s = String::from(" n  count\n");
                for (n, c) in corpus.counts().iter().enumerate() {
                    s += &format!("{n:>2}  {c:>5}\n");
                }
                s
            } else {
                corpus
                    .iter()
                    .map(|(id, p)| {
                        let body = PosetJson::from_poset(p);
                        json!({"id": id, "n": body.n, "leq": body.leq}).to_string() + "\n"
                    })
                    .collect()
            };
            Ok((out, 0))
        }
        Command::Complete { op, k, source } => {
            let p = load(source)?;
            let f = match op {
                CompletionOp::Down => downsets(&p)?,
                CompletionOp::IdNonempty => ideals(&p, false)?,
                CompletionOp::Id => ideals(&p, true)?,
                CompletionOp::ChIdNonempty => chain_ideals(&p, false)?,
                CompletionOp::ChId => chain_ideals(&p, true)?,
                CompletionOp::Fdown => fdown(&p)?,
                CompletionOp::Idpow => {
                    if *k == 0 {
                        return Err(usage("idpow needs --k >= 1"));
                    }
                    ideals(&iterate_id(&p, k - 1)?, false)?
                }
            };
            Ok((
                if table {
                    family_table(&f)
                } else {
                    family_to_json(&f) + "\n"
                },
                0,
            ))
        }
        Command::Check {
            suite,
            max_n,
            x,
            k,
            input,
        } => {
            let instances = match input {
                Some(path) => {
                    let p = read_poset(&read_file(path)?)
                        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
                    Some(vec![(path.display().to_string(), p)])
                }
                None => None,
            };
            let cfg = SuiteConfig {
                max_n: *max_n,
                budget: cli.budget,
                x: x.clone(),
                k: *k,
            };
            let run = run_suite(*suite, &cfg, instances)?;
            let code = if run.any_fails() {
                1
            } else if run.any_unknown() {
                3
            } else {
                0
            };
            Ok((
                if table {
                    run.to_table()
                } else {
                    run.to_jsonl()
                },
                code,
            ))
        }
        Command::Counterexample { name, k, input } => {
            counterexample(*name, *k, input.as_ref(), table)
        }
        Command::Ordinal { expr } => {
            let v = evaluate(expr).map_err(|e| usage(e.to_string()))?;
            Ok((format!("{v}\n"), 0))
        }
        Command::Render { source, family } => {
            let out = match family {
                Some(path) => {
                    let f: FamilyJson = serde_json::from_str(&read_file(path)?)
                        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
                    hasse_dot(&f.order().map_err(|e| usage(e.to_string()))?, &f.kind)
                }
                None => hasse_dot(&load(source)?, "P"),
            };
            Ok((out, 0))
        }
    }
}

fn counterexample(
    name: Construction,
    k: usize,
    input: Option<&PathBuf>,
    table: bool,
) -> Result<(String, u8)> {
    match name {
        Construction::ChainBundle => {
            let p = build_chain_bundle(k)?;
            let id = ideals(&p, true)?;
            let with_bottom = p.adjoin_bounds(false, true)?;
            let iso = ordlat_core::morphisms::are_isomorphic(id.order(), &with_bottom).is_some();
            let out = if table {
                format!("{}Id(L) is L with a new bottom: {iso}\n", poset_table(&p))
            } else {
                json!({
                    "name": "chain-bundle", "k": k,
                    "poset": serde_json::to_value(PosetJson::from_poset(&p))?,
                    "hash": canonical_hash(&p),
                    "ideals_add_one_bottom": iso,
                })
                .to_string()
                    + "\n"
            };
            Ok((out, if iso { 0 } else { 1 }))
        }
        Construction::Atoms => {
            let a = build_atoms_lattice(k)?;
            let replay = replay_atoms_kurepa(&a)?;
            let pre = atoms_non_ideal_preimage(&a)?;
            let images: Vec<String> = (0..a.lattice.len())
                .map(|x| {
                    format!(
                        "f({}) = {}",
                        a.lattice.label(x),
                        a.lattice.format_set(a.ideals.sets()[a.map.apply(x)])
                    )
                })
                .collect();
            let out = if table {
                let mut s = poset_table(&a.lattice);
                s += &format!("map class: {}\n", a.map.class().name());
                for line in &images {
                    s += line;
                    s += "\n";
                }
                if let Some((_, set)) = pre {
                    s += &format!("non-ideal preimage: {}\n", a.lattice.format_set(set));
                }
                s += &format!("trace: {}\n", replay.render(&a.lattice));
                s += &format!("failure: {:?}\n", replay.failure);
                s
            } else {
                json!({
                    "name": "atoms", "k": k,
                    "poset": serde_json::to_value(PosetJson::from_poset(&a.lattice))?,
                    "ideals": serde_json::to_value(FamilyJson::from_family(&a.ideals))?,
                    "map": a.map.image(),
                    "map_class": a.map.class().name(),
                    "non_ideal_preimage": pre.map(|(_, s)| s.iter().collect::<Vec<_>>()),
                    "trace": replay.rendered(&a.lattice),
                    "failure": replay.failure.name(),
                    "failure_step": replay.failure.step(),
                })
                .to_string()
                    + "\n"
            };
            Ok((out, 0))
        }
        Construction::IdembTower => {
            let base = match input {
                Some(path) => read_poset(&read_file(path)?).map_err(|e| usage(e.to_string()))?,
                None => Poset::chain(1)?,
            };
            let tower = build_idemb_tower(&base, k)?;
            let report = check_idemb_tower("tower", &base, k)?;
            let ok = report.is_ok();
            let out = if table {
                format!(
                    "{}id(L') ≅ L' and id(L') embeds in L': {}\n",
                    poset_table(&tower),
                    report.verdict.name()
                )
            } else {
                json!({
                    "name": "idemb-tower", "k": k,
                    "poset": serde_json::to_value(PosetJson::from_poset(&tower))?,
                    "hash": canonical_hash(&tower),
                    "verdict": report.verdict.name(),
                })
                .to_string()
                    + "\n"
            };
            Ok((out, if ok { 0 } else { 1 }))
        }
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<ordlat_core::Error>() {
        Some(
            ordlat_core::Error::CapacityExceeded { .. } | ordlat_core::Error::BudgetExceeded { .. },
        ) => 3,
        Some(_) => 2,
        None => 1,
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli).and_then(|(text, code)| {
        match &cli.out {
            Some(path) => std::fs::write(path, &text)
                .with_context(|| format!("writing {}", path.display()))?,
            None => std::io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
