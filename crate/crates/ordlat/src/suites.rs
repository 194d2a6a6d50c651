//! Check suites over the corpus, fanned out per instance.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{Context, Result};
use ordlat_core::algebra::classify;
use ordlat_core::verification::{
    check_acc, check_atoms_lattice, check_down_vs_ideals_of_fdown, check_no_hom_onto_ideals,
    check_no_map_onto_downsets, check_no_strict_map_from_chain_ideals, check_strict_map_into_upset,
    check_xdown_closure, xdown_preset, CheckReport, Corpus, Verdict,
};
use ordlat_core::Poset;
use rayon::prelude::*;

use crate::formats::{canonical_hash, report_to_json};
use crate::UsageError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// No strictly isotone map from the chain-generated ideals into P.
    Thm21,
    /// No subsemilattice maps onto Id(S) (upper semilattices only).
    Thm31,
    /// Strictly isotone self-maps into proper principal up-sets.
    Cor23,
    /// No isotone map from a subset of P onto Down(P).
    Cor32,
    /// X-Down closure conditions for the class chosen with --x.
    Lemma51,
    /// P ≅ id(P) via the principal embedding, and P ≅ id³(P).
    Acc,
    /// Replay of the recursion on the atoms lattice M_k.
    Kurepa,
    /// Down(P) ≅ Id(fdown(P)).
    Idfd,
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub max_n: usize,
    pub budget: u64,
    /// Preset name for `lemma51`.
    pub x: String,
    /// Number of atoms for `kurepa`.
    pub k: usize,
}

#[derive(Debug, Clone)]
pub struct Row {
    pub report: CheckReport,
    pub hash: Option<String>,
}

#[derive(Debug, Clone)]
pub struct SuiteRun {
    pub rows: Vec<Row>,
    /// Instances checked per poset size.
    pub sizes: BTreeMap<usize, usize>,
}

impl SuiteRun {
    pub fn reports(&self) -> impl Iterator<Item = &CheckReport> {
        self.rows.iter().map(|r| &r.report)
    }

    pub fn any_fails(&self) -> bool {
        self.reports().any(|r| r.verdict == Verdict::Fails)
    }

    pub fn any_unknown(&self) -> bool {
        self.reports()
            .any(|r| matches!(r.verdict, Verdict::Unknown { .. }))
    }

    /// `63+16+5+2+1+1 instances: holds` (sizes from largest to smallest).
    pub fn summary(&self) -> String {
        let sizes: Vec<String> = self.sizes.values().rev().map(usize::to_string).collect();
        let mut verdicts: BTreeMap<&str, usize> = BTreeMap::new();
        for r in self.reports() {
            *verdicts.entry(r.verdict.name()).or_default() += 1;
        }
        let verdict = if verdicts.len() == 1 {
            verdicts.keys().next().unwrap().to_string()
        } else {
            let parts: Vec<String> = verdicts.iter().map(|(k, v)| format!("{k}={v}")).collect();
            parts.join(" ")
        };
        let count = if sizes.is_empty() {
            self.rows.len().to_string()
        } else {
            sizes.join("+")
        };
        format!("{count} instances: {verdict}")
    }

    pub fn to_jsonl(&self) -> String {
        self.rows
            .iter()
            .map(|r| report_to_json(&r.report, r.hash.as_deref()) + "\n")
            .collect()
    }

    pub fn to_table(&self) -> String {
        let header = ["check", "instance", "verdict", "note"];
        let cells: Vec<[String; 4]> = self
            .reports()
            .map(|r| {
                [
                    r.check.clone(),
                    r.instance.clone(),
                    r.verdict.name().into(),
                    r.note.clone(),
                ]
            })
            .collect();
        let mut widths = header.map(str::len);
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut out = String::new();
        let mut line = |row: [&str; 4]| {
            let mut s = String::new();
            for (i, (c, w)) in row.iter().zip(widths).enumerate() {
                if i + 1 == row.len() {
                    s += c;
                } else {
                    let _ = write!(s, "{c:<w$}  ");
                }
            }
            out += s.trim_end();
            out += "\n";
        };
        line(header);
        for row in &cells {
            line([&row[0], &row[1], &row[2], &row[3]]);
        }
        out += &self.summary();
        out += "\n";
        out
    }
}

type Checker = fn(&str, &Poset, u64) -> ordlat_core::Result<CheckReport>;

fn per_instance(instances: &[(String, Poset)], budget: u64, check: Checker) -> Result<Vec<Row>> {
    instances
        .par_iter()
        .map(|(id, p)| {
            let report = check(id, p, budget).with_context(|| format!("instance {id}"))?;
            Ok(Row {
                report,
                hash: Some(canonical_hash(p)),
            })
        })
        .collect()
}

fn sizes_of(instances: &[(String, Poset)]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for (_, p) in instances {
        *m.entry(p.len()).or_default() += 1;
    }
    m
}

/// Runs `suite` over `instances`, or over the corpus up to `max_n` when
/// none are given. Rows come back in instance order.
pub fn run_suite(
    suite: Suite,
    cfg: &SuiteConfig,
    instances: Option<Vec<(String, Poset)>>,
) -> Result<SuiteRun> {
    let corpus_instances = || -> Result<Vec<(String, Poset)>> {
        Ok(match &instances {
            Some(v) => v.clone(),
            None => Corpus::generate(cfg.max_n)?
                .iter()
                .map(|(id, p)| (id, p.clone()))
                .collect(),
        })
    };
    let b = cfg.budget;
    let run = |inst: Vec<(String, Poset)>, check: Checker| -> Result<SuiteRun> {
        Ok(SuiteRun {
            rows: per_instance(&inst, b, check)?,
            sizes: sizes_of(&inst),
        })
    };
    match suite {
        Suite::Thm21 => run(corpus_instances()?, check_no_strict_map_from_chain_ideals),
        Suite::Thm31 => {
            let inst = corpus_instances()?
                .into_iter()
                .filter(|(_, p)| classify(p).has_joins())
                .collect();
            run(inst, check_no_hom_onto_ideals)
        }
        Suite::Cor23 => run(corpus_instances()?, check_strict_map_into_upset),
        Suite::Cor32 => run(corpus_instances()?, check_no_map_onto_downsets),
        Suite::Acc => run(corpus_instances()?, |id, p, _| check_acc(id, p)),
        Suite::Idfd => run(corpus_instances()?, |id, p, _| {
            check_down_vs_ideals_of_fdown(id, p)
        }),
        Suite::Kurepa => {
            let report = check_atoms_lattice(cfg.k)?;
            Ok(SuiteRun {
                rows: vec![Row { report, hash: None }],
                sizes: BTreeMap::new(),
            })
        }
        Suite::Lemma51 => {
            if instances.is_some() {
                return Err(UsageError(
                    "lemma51 runs over the generated corpus; --input is not supported".into(),
                )
                .into());
            }
            let Some(xs) = xdown_preset(&cfg.x) else {
                return Err(UsageError(format!(
                    "unknown class preset {:?} (chains3, chains3+antichain, connected+antichain)",
                    cfg.x
                ))
                .into());
            };
            let corpus = Corpus::generate(cfg.max_n)?;
            let outcome = check_xdown_closure(&corpus, &xs, &cfg.x, b)?;
            Ok(SuiteRun {
                rows: outcome
                    .reports
                    .into_iter()
                    .map(|report| Row { report, hash: None })
                    .collect(),
                sizes: BTreeMap::new(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(max_n: usize) -> SuiteConfig {
        SuiteConfig {
            max_n,
            budget: ordlat_core::Limits::DEFAULT_BUDGET,
            x: "chains3".into(),
            k: 3,
        }
    }

    #[test]
    fn thm21_summary() {
        let run = run_suite(Suite::Thm21, &cfg(4), None).unwrap();
        assert_eq!(run.summary(), "16+5+2+1+1 instances: holds");
        assert!(!run.any_fails() && !run.any_unknown());
    }

    #[test]
    fn cor23_is_vacuous() {
        let run = run_suite(Suite::Cor23, &cfg(3), None).unwrap();
        assert_eq!(run.summary(), "5+2+1+1 instances: vacuous");
    }

    #[test]
    fn table_is_aligned() {
        let run = run_suite(Suite::Acc, &cfg(2), None).unwrap();
        let t = run.to_table();
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines[0], "check  instance  verdict  note");
        assert_eq!(lines[1], "acc    n0-0      holds");
        assert_eq!(lines.last().unwrap(), &"2+1+1 instances: holds");
    }

    #[test]
    fn unknown_preset_is_rejected() {
        let mut c = cfg(2);
        c.x = "bogus".into();
        assert!(run_suite(Suite::Lemma51, &c, None).is_err());
    }
}
