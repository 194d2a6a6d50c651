//! Acceptance criteria, one PASS/FAIL line each. A plain binary (no test
//! harness), so the lines always show: `cargo test -p ordlat --test acceptance`.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use ordlat_core::algebra::classify;
use ordlat_core::completions::{downsets, fdown, ideals, iterate_id, principal_embedding};
use ordlat_core::morphisms::{are_isomorphic, exists_map, KurepaFailure, MapClass};
use ordlat_core::ordinal::{
    id_order_type, product_has_cofinal_chain, ChainDescriptor, CnfOrdinal, Cofinality,
};
use ordlat_core::verification::{
    build_atoms_lattice, check_no_hom_onto_ideals, check_no_strict_map_from_chain_ideals,
    check_strict_map_into_upset, check_xdown_closure, replay_atoms_kurepa, xdown_preset, Corpus,
    Verdict, Witness,
};
use ordlat_core::{Limits, Poset};

const BUDGET: u64 = Limits::DEFAULT_BUDGET;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Posets on `n` points up to isomorphism, by testing every relation and
/// keying classes by the least adjacency matrix over all relabelings.
fn brute_force_count(n: usize) -> usize {
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for k in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|p| {
                (0..=k).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    q
                })
            })
            .collect();
    }
    let mut classes = BTreeSet::new();
    for bits in 0u64..1 << off.len() {
        let mut m = vec![vec![false; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = true;
        }
        for (k, &(i, j)) in off.iter().enumerate() {
            m[i][j] = bits >> k & 1 == 1;
        }
        let poset = (0..n).all(|i| {
            (0..n).all(|j| {
                (i == j || !(m[i][j] && m[j][i]))
                    && (0..n).all(|k| !(m[i][j] && m[j][k]) || m[i][k])
            })
        });
        if poset {
            let key = perms
                .iter()
                .map(|p| {
                    (0..n * n)
                        .map(|c| m[p[c / n]][p[c % n]])
                        .collect::<Vec<_>>()
                })
                .min()
                .unwrap();
            classes.insert(key);
        }
    }
    classes.len()
}

fn criterion_1(corpus: &Corpus) -> Outcome {
    let start = Instant::now();
    let brute: Vec<usize> = (0..=4).map(brute_force_count).collect();
    let counts = corpus.counts();
    if counts != [1, 1, 2, 5, 16, 63] || counts[..5] != brute[..] {
        return outcome(
            false,
            format!("corpus counts {counts:?}, brute force {brute:?}"),
        );
    }
    let (mut witnesses, mut unknown) = (0, 0);
    for (id, p) in corpus.iter() {
        let r = check_no_strict_map_from_chain_ideals(&id, p, BUDGET).unwrap();
        // The same question with Id(P) in place of ch-Id(P).
        let id_p = ideals(p, true).unwrap();
        let direct = exists_map(id_p.order(), p, MapClass::StrictlyIsotone, BUDGET).unwrap();
        match r.verdict {
            Verdict::Holds if direct.is_none() => {}
            Verdict::Unknown { .. } => unknown += 1,
            _ => witnesses += 1,
        }
    }
    let t = start.elapsed();
    outcome(
        witnesses == 0 && unknown == 0 && t <= Duration::from_secs(300),
        format!("{} posets (counts {counts:?}), {witnesses} witnesses, {unknown} budget exhaustions, {t:.2?}", corpus.len()),
    )
}

fn criterion_2(corpus: &Corpus) -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    for (id, p) in corpus.iter().filter(|(_, p)| classify(p).has_joins()) {
        checked += 1;
        let r = check_no_hom_onto_ideals(&id, p, BUDGET).unwrap();
        if r.verdict != Verdict::Holds {
            bad.push(id);
        }
    }
    let t = start.elapsed();
    outcome(
        bad.is_empty() && t <= Duration::from_secs(600),
        format!(
            "{checked} upper semilattices, {} witnesses {bad:?}, {t:.2?}",
            bad.len()
        ),
    )
}

fn criterion_3(corpus: &Corpus) -> Outcome {
    let mut bad = Vec::new();
    for (id, p) in corpus.iter() {
        let d = principal_embedding(p).unwrap();
        let id3 = iterate_id(p, 3).unwrap();
        if d.class() != MapClass::Isomorphism || are_isomorphic(p, &id3).is_none() {
            bad.push(id);
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} posets, failures {bad:?}", corpus.len()),
    )
}

fn criterion_4(corpus: &Corpus) -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for (id, p) in corpus.iter().filter(|(_, p)| p.len() <= 4) {
        n += 1;
        let down = downsets(p).unwrap();
        let idf = ideals(fdown(p).unwrap().order(), true).unwrap();
        if are_isomorphic(down.order(), idf.order()).is_none() {
            bad.push(id);
        }
    }
    outcome(
        bad.is_empty(),
        format!("{n} posets with <= 4 elements, failures {bad:?}"),
    )
}

fn criterion_5() -> Outcome {
    let a = build_atoms_lattice(3).unwrap();
    let replay = replay_atoms_kurepa(&a).unwrap();
    let trace = replay.render(&a.lattice);
    let strict = a.map.class() >= MapClass::StrictlyIsotone && a.map.is_injective();
    let ok = strict
        && trace == "∅, {0}, {a0,0}, {a1,a0,0}"
        && replay.failure == KurepaFailure::NotAnIdealOfChains { step: 3 };
    outcome(
        ok,
        format!(
            "map {} injective={}, trace {trace}, {:?}",
            a.map.class().name(),
            a.map.is_injective(),
            replay.failure
        ),
    )
}

fn criterion_6(corpus: &Corpus) -> Outcome {
    let hits: Vec<String> = corpus
        .iter()
        .filter(|(id, p)| {
            check_strict_map_into_upset(id, p, BUDGET).unwrap().verdict != Verdict::Vacuous
        })
        .map(|(id, _)| id)
        .collect();
    outcome(
        hits.is_empty(),
        format!("{} posets, (x, g) found on {hits:?}", corpus.len()),
    )
}

fn criterion_7(corpus: &Corpus) -> Outcome {
    let chains = xdown_preset("chains3").unwrap();
    let o = check_xdown_closure(corpus, &chains, "chains3", BUDGET).unwrap();
    let first = o.i_a
        && o.i_b
        && o.ii_a
        && o.ii_b
        && o.ii_c
        && o.ii_d
        && o.reports.iter().all(|r| r.verdict == Verdict::Holds);

    let mixed = xdown_preset("chains3+antichain").unwrap();
    let m = check_xdown_closure(corpus, &mixed, "chains3+antichain", BUDGET).unwrap();
    let witness_ok = match &m.i_a_witness {
        Witness::NonIdeal { instance, set } => {
            let p: &Poset = corpus.get(instance).expect("witness names a corpus poset");
            p.is_downset(*set) && !p.is_directed(*set)
        }
        _ => false,
    };
    outcome(
        first && !m.i_a && !m.i_b && witness_ok,
        format!(
            "chains<=3: i.b={} ii.a={} ii.b={} ii.c={} ii.d={}; with 2-antichain: i.a={} witness {:?}",
            o.i_b, o.ii_a, o.ii_b, o.ii_c, o.ii_d, m.i_a, m.i_a_witness
        ),
    )
}

/// Order type of the nonempty initial segments of `ω·a + b`, from finite
/// truncations: every ω-block is cut to `n` points, the segments `[0, γ)`
/// with `1 <= γ <= α` are listed block by block, and a block whose size
/// grows with `n` is an ω; the types are then concatenated.
fn id_by_truncation(a: u64, b: u64) -> CnfOrdinal {
    let blocks = |n: u64| -> Vec<u64> {
        // Block i holds the γ = ω·i + j; the last block stops at j = b.
        let mut v: Vec<u64> = (0..a).map(|i| if i == 0 { n - 1 } else { n }).collect();
        v.push(if a == 0 { b } else { b + 1 });
        v
    };
    let (small, large) = (blocks(20), blocks(21));
    // Concatenate: an ω absorbs the finite run before it.
    let (mut omegas, mut tail) = (0u64, 0u64);
    for (s, l) in small.iter().zip(&large) {
        if s != l {
            omegas += 1;
            tail = 0;
        } else {
            tail += s;
        }
    }
    let mut terms = Vec::new();
    if omegas > 0 {
        terms.push((CnfOrdinal::one(), omegas));
    }
    if tail > 0 {
        terms.push((CnfOrdinal::zero(), tail));
    }
    CnfOrdinal::from_terms(terms).unwrap()
}

fn criterion_8() -> Outcome {
    let d = |c| ChainDescriptor::new(c);
    let (w, w1) = (Cofinality::Regular(0), Cofinality::Regular(1));
    let rule = !product_has_cofinal_chain(&[d(w), d(w1)]).unwrap()
        && product_has_cofinal_chain(&[d(w), d(w)]).unwrap();
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for a in 0..=3u64 {
        for b in 0..=if a == 3 { 0 } else { 6 } {
            let alpha = CnfOrdinal::from_terms(
                [(CnfOrdinal::one(), a), (CnfOrdinal::zero(), b)]
                    .into_iter()
                    .filter(|t| t.1 > 0)
                    .collect(),
            )
            .unwrap();
            checked += 1;
            if id_order_type(&alpha) != id_by_truncation(a, b) {
                mismatches.push(alpha.to_string());
            }
        }
    }
    let named = id_order_type(&CnfOrdinal::finite(3)).to_string() == "3"
        && id_order_type(&CnfOrdinal::omega()).to_string() == "w+1"
        && id_order_type(&"w+1".parse_ordinal()).to_string() == "w+2";
    outcome(
        rule && named && mismatches.is_empty(),
        format!("cofinal(w,w1)=false cofinal(w,w)=true: {rule}; {checked} ordinals <= w*3, mismatches {mismatches:?}"),
    )
}

trait ParseOrdinal {
    fn parse_ordinal(&self) -> CnfOrdinal;
}

impl ParseOrdinal for str {
    fn parse_ordinal(&self) -> CnfOrdinal {
        match ordlat::ordexpr::evaluate(self).unwrap() {
            ordlat::ordexpr::Evaluated::Ordinal(a) => a,
            other => panic!("not an ordinal: {other}"),
        }
    }
}

fn full_suite_output() -> Vec<u8> {
    let mut out = Vec::new();
    let exe = env!("CARGO_BIN_EXE_ordlat");
    let runs: Vec<Vec<&str>> = vec![
        vec!["check", "--suite", "thm21"],
        vec!["check", "--suite", "thm31"],
        vec!["check", "--suite", "cor23"],
        vec!["check", "--suite", "cor32"],
        vec!["check", "--suite", "acc"],
        vec!["check", "--suite", "idfd", "--max-n", "4"],
        vec!["check", "--suite", "lemma51", "--x", "chains3"],
        vec!["check", "--suite", "lemma51", "--x", "chains3+antichain"],
        vec!["check", "--suite", "kurepa", "--k", "3"],
        vec!["gen", "--max-n", "5"],
        vec!["counterexample", "--name", "atoms", "--k", "3"],
    ];
    for args in runs {
        let o = Command::new(exe)
            .args(&args)
            .args(["--format", "jsonl"])
            .output()
            .expect("binary runs");
        assert!(o.status.success(), "{args:?} exited with {}", o.status);
        out.extend(o.stdout);
    }
    out
}

fn criterion_9() -> Outcome {
    let (a, b) = (full_suite_output(), full_suite_output());
    outcome(
        a == b && !a.is_empty(),
        format!("{} bytes of JSON lines, identical: {}", a.len(), a == b),
    )
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let corpus = Corpus::generate(5).unwrap();
    let criteria: Vec<Criterion> = vec![
        (
            "1 no strictly isotone Id(P) -> P, n <= 5",
            Box::new(|| criterion_1(&corpus)),
        ),
        (
            "2 no subsemilattice onto Id(S), n <= 5",
            Box::new(|| criterion_2(&corpus)),
        ),
        (
            "3 d_P: P ≅ id(P) and id^3(P) ≅ P",
            Box::new(|| criterion_3(&corpus)),
        ),
        (
            "4 Down(P) ≅ Id(fdown(P)), n <= 4",
            Box::new(|| criterion_4(&corpus)),
        ),
        ("5 atoms lattice M_3 replay", Box::new(criterion_5)),
        (
            "6 strict map into a proper up-set: none",
            Box::new(|| criterion_6(&corpus)),
        ),
        ("7 X-Down closure lemma", Box::new(|| criterion_7(&corpus))),
        ("8 ordinal calculus", Box::new(criterion_8)),
        ("9 deterministic output", Box::new(criterion_9)),
    ];
    let mut failed = Vec::new();
    for (name, run) in &criteria {
        let o = run();
        println!(
            "{} criterion {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            failed.push(*name);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
