use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use super::{CheckReport, Corpus, Verdict, Witness};
use crate::algebra::{classify, for_each_semilattice_hom, subsemilattices, SemilatticeStructure};
use crate::completions::{
    chain_ideals, downsets, fdown, ideals, iterate_id, principal_embedding, x_down_with,
    FamilyPoset,
};
use crate::morphisms::{are_isomorphic, exists_map, for_each_map, MapClass};
use crate::{ElemSet, Error, Limits, Poset, Result};

/// Largest poset on which [`check_no_map_onto_downsets`] enumerates every map
/// instead of relying on the counting argument alone.
pub const ONTO_DOWNSETS_EXHAUSTIVE_MAX_N: usize = 4;

/// Turns a budget failure into an `unknown` verdict.
fn budgeted(
    check: &str,
    instance: &str,
    budget: u64,
    r: Result<CheckReport>,
) -> Result<CheckReport> {
    match r {
        Err(Error::BudgetExceeded { .. }) => Ok(CheckReport::new(
            check,
            instance,
            Verdict::Unknown { budget },
        )),
        other => other,
    }
}

/// No strictly isotone map `ch-Id(P) -> P`.
pub fn check_no_strict_map_from_chain_ideals(
    instance: &str,
    p: &Poset,
    budget: u64,
) -> Result<CheckReport> {
    const CHECK: &str = "thm21";
    budgeted(
        CHECK,
        instance,
        budget,
        (|| {
            let chid = chain_ideals(p, true)?;
            let note = format!("|ch-Id(P)| = {}", chid.len());
            Ok(
                match exists_map(chid.order(), p, MapClass::StrictlyIsotone, budget)? {
                    Some(f) => CheckReport::fails(
                        CHECK,
                        instance,
                        Witness::Map {
                            image: f.image().to_vec(),
                        },
                    ),
                    None => CheckReport::new(CHECK, instance, Verdict::Holds),
                }
                .with_note(note),
            )
        })(),
    )
}

/// No subsemilattice of the upper semilattice `p` maps homomorphically
/// onto `Id(P)`.
pub fn check_no_hom_onto_ideals(instance: &str, p: &Poset, budget: u64) -> Result<CheckReport> {
    const CHECK: &str = "thm31";
    let s = classify(p);
    if !s.has_joins() {
        return Err(Error::NotUpperSemilattice);
    }
    budgeted(
        CHECK,
        instance,
        budget,
        (|| {
            let id = ideals(p, true)?;
            let t = classify(id.order());
            let mut used = 0u64;
            let mut checked = 0usize;
            for sub in subsemilattices(&s)? {
                checked += 1;
                let s0 = classify(&p.induced(sub).0);
                let mut found = None;
                used +=
                    for_each_semilattice_hom(&s0, &t, true, budget.saturating_sub(used), |h| {
                        found = Some(h.to_vec());
                        ControlFlow::Break(())
                    })?;
                if let Some(image) = found {
                    return Ok(CheckReport::fails(
                        CHECK,
                        instance,
                        Witness::SubsetMap { subset: sub, image },
                    ));
                }
            }
            Ok(CheckReport::new(CHECK, instance, Verdict::Holds)
                .with_note(format!("{checked} subsemilattices, |Id(S)| = {}", id.len())))
        })(),
    )
}

/// Searches for a nonminimal `x` and a strictly isotone `g : P -> P↑x`.
/// Any hit makes the report check the conclusion (no strictly isotone
/// `id(P) -> P`); no hit is a vacuous pass.
pub fn check_strict_map_into_upset(instance: &str, p: &Poset, budget: u64) -> Result<CheckReport> {
    const CHECK: &str = "cor23";
    budgeted(
        CHECK,
        instance,
        budget,
        (|| {
            for x in (0..p.len()).filter(|&x| !p.strict_down(x).is_empty()) {
                let (upset, back) = p.induced(p.up(x));
                if let Some(g) = exists_map(p, &upset, MapClass::StrictlyIsotone, budget)? {
                    let witness = Witness::UpsetMap {
                        x,
                        image: g.image().iter().map(|&i| back[i]).collect(),
                    };
                    let id = ideals(p, false)?;
                    let conclusion = exists_map(id.order(), p, MapClass::StrictlyIsotone, budget)?;
                    return Ok(match conclusion {
                        None => {
                            CheckReport::new(CHECK, instance, Verdict::Holds).with_witness(witness)
                        }
                        Some(_) => CheckReport::fails(CHECK, instance, witness),
                    });
                }
            }
            Ok(CheckReport::new(CHECK, instance, Verdict::Vacuous)
                .with_note("no strictly isotone map into a proper principal up-set"))
        })(),
    )
}

/// No isotone map from a subset of `P` onto `Down(P)`.
pub fn check_no_map_onto_downsets(instance: &str, p: &Poset, budget: u64) -> Result<CheckReport> {
    const CHECK: &str = "cor32";
    budgeted(
        CHECK,
        instance,
        budget,
        (|| {
            let down = downsets(p)?;
            // |Down(P)| >= |P| + 1 > |P0| already rules out a surjection.
            let counting = down.len() > p.len();
            if p.len() > ONTO_DOWNSETS_EXHAUSTIVE_MAX_N {
                return Ok(if counting {
                    CheckReport::new(CHECK, instance, Verdict::Holds).with_note("counting")
                } else {
                    CheckReport::new(CHECK, instance, Verdict::Unknown { budget })
                });
            }
            let target = down.order();
            let mut used = 0u64;
            for bits in 0..(1u64 << p.len()) {
                let subset = ElemSet::from_bits(bits);
                let (p0, _) = p.induced(subset);
                let mut hit = None;
                used += for_each_map(
                    &p0,
                    target,
                    MapClass::Isotone,
                    budget.saturating_sub(used),
                    |f| {
                        let img: ElemSet = f.iter().copied().collect();
                        if img == target.all() {
                            hit = Some(f.to_vec());
                            return ControlFlow::Break(());
                        }
                        ControlFlow::Continue(())
                    },
                )?;
                if let Some(image) = hit {
                    return Ok(CheckReport::fails(
                        CHECK,
                        instance,
                        Witness::SubsetMap { subset, image },
                    ));
                }
            }
            assert!(counting, "exhaustive search and counting argument disagree");
            Ok(CheckReport::new(CHECK, instance, Verdict::Holds).with_note("exhaustive"))
        })(),
    )
}

/// `d_P` is an isomorphism onto `id(P)` and `id³(P) ≅ P`.
pub fn check_acc(instance: &str, p: &Poset) -> Result<CheckReport> {
    const CHECK: &str = "acc";
    let d = principal_embedding(p)?;
    if d.class() != MapClass::Isomorphism {
        return Ok(CheckReport::fails(
            CHECK,
            instance,
            Witness::Map {
                image: d.image().to_vec(),
            },
        ));
    }
    let id3 = iterate_id(p, 3)?;
    Ok(match are_isomorphic(p, &id3) {
        Some(_) => CheckReport::new(CHECK, instance, Verdict::Holds),
        None => CheckReport::fails(
            CHECK,
            instance,
            Witness::Map {
                image: d.image().to_vec(),
            },
        )
        .with_note("id^3(P) is not isomorphic to P"),
    })
}

/// `Down(P) ≅ Id(fdown(P))`.
pub fn check_down_vs_ideals_of_fdown(instance: &str, p: &Poset) -> Result<CheckReport> {
    const CHECK: &str = "idfd";
    let down = downsets(p)?;
    let f = fdown(p)?;
    let id = ideals(f.order(), true)?;
    Ok(match are_isomorphic(down.order(), id.order()) {
        Some(iso) => CheckReport::new(CHECK, instance, Verdict::Holds).with_witness(Witness::Map {
            image: iso.image().to_vec(),
        }),
        None => CheckReport::fails(
            CHECK,
            instance,
            Witness::Trace(alloc::vec![
                format!("|Down(P)| = {}", down.len()),
                format!("|Id(fdown(P))| = {}", id.len()),
            ]),
        ),
    })
}

/// What [`check_xdown_closure`] observed for one class `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XDownOutcome {
    /// `X-Down(P) ⊆ Id(P)` on every test poset.
    pub i_a: bool,
    /// Every member of `X` is upward directed.
    pub i_b: bool,
    /// Every pair of members admits a map from a member with cofinal image
    /// in their product.
    pub ii_a: bool,
    /// `X-Down(S)` is closed under intersection for every corpus lower
    /// semilattice.
    pub ii_b: bool,
    /// `X-Down(S)` is a join-subsemilattice of `Id(S)` for every corpus
    /// upper semilattice.
    pub ii_c: bool,
    /// `X-Down(L)` is a sublattice of `Id(L)` for every corpus lattice.
    pub ii_d: bool,
    pub i_a_witness: Witness,
    pub i_b_witness: Witness,
    pub reports: Vec<CheckReport>,
}

/// Evaluates the conditions of the `X-Down` closure lemma on the corpus.
///
/// `(i.a)` is tested on the corpus and on the members of `X` themselves.
/// The reports say whether `(i.a) ⇔ (i.b)` held, and whether each closure
/// conclusion held where its hypotheses were met (otherwise `vacuous`,
/// with the observed value in the note).
pub fn check_xdown_closure(
    corpus: &Corpus,
    xs: &[Poset],
    instance: &str,
    budget: u64,
) -> Result<XDownOutcome> {
    let limits = Limits::with_budget(budget);

    let not_directed = xs.iter().position(|q| !q.is_directed(q.all()));
    let i_b = not_directed.is_none();
    let i_b_witness = not_directed.map_or(Witness::None, |member| Witness::NotDirected { member });

    let mut tests: Vec<(String, &Poset)> = corpus.iter().collect();
    tests.extend(xs.iter().enumerate().map(|(i, q)| (format!("X[{i}]"), q)));
    let mut i_a_witness = Witness::None;
    for (id, p) in &tests {
        let xd = x_down_with(p, xs, &limits)?;
        if let Some(&set) = xd.sets().iter().find(|&&s| !p.is_directed(s)) {
            i_a_witness = Witness::NonIdeal {
                instance: id.clone(),
                set,
            };
            break;
        }
    }
    let i_a = i_a_witness == Witness::None;

    let mut ii_a = true;
    let mut ii_a_witness = Witness::None;
    'pairs: for (i, q) in xs.iter().enumerate() {
        for (j, q2) in xs.iter().enumerate() {
            if !has_cofinal_map(xs, q, q2, budget)? {
                ii_a = false;
                ii_a_witness = Witness::NoCofinalMap {
                    first: i,
                    second: j,
                };
                break 'pairs;
            }
        }
    }

    let mut ii_b = (true, Witness::None);
    let mut ii_c = (true, Witness::None);
    let mut ii_d = (true, Witness::None);
    for (id, p) in corpus.iter() {
        let s = classify(p);
        if !(s.has_joins() || s.has_meets()) {
            continue;
        }
        let xd = x_down_with(p, xs, &limits)?;
        let idl = ideals(p, true)?;
        let t = classify(idl.order());
        if s.has_meets() && ii_b.0 {
            if let Some((a, b)) = first_pair(&xd, |a, b| Some(a.intersection(b))) {
                ii_b = (
                    false,
                    Witness::Pair {
                        instance: id.clone(),
                        a,
                        b,
                    },
                );
            }
        }
        if s.has_joins() && ii_c.0 {
            if let Some(w) = closure_failure(&id, &xd, &idl, &t, true) {
                ii_c = (false, w);
            }
        }
        if s.class() == crate::algebra::SemilatticeClass::Lattice && ii_d.0 {
            if let Some(w) = closure_failure(&id, &xd, &idl, &t, true)
                .or_else(|| closure_failure(&id, &xd, &idl, &t, false))
            {
                ii_d = (false, w);
            }
        }
    }

    let mut reports = Vec::new();
    let i_report = if i_a == i_b {
        CheckReport::new("lemma51.i", instance, Verdict::Holds).with_witness(i_a_witness.clone())
    } else {
        let w = if i_a_witness != Witness::None {
            i_a_witness.clone()
        } else {
            i_b_witness.clone()
        };
        CheckReport::fails("lemma51.i", instance, w)
    };
    reports.push(i_report.with_note(format!("i.a={i_a} i.b={i_b}")));
    let ii_note = |name: &str, v: bool| format!("ii.a={ii_a} i={} {name}={v}", i_a && i_b);
    for (check, (value, witness), needs_i) in [
        ("lemma51.ii_b", &ii_b, false),
        ("lemma51.ii_c", &ii_c, true),
        ("lemma51.ii_d", &ii_d, true),
    ] {
        let applies = ii_a && (!needs_i || (i_a && i_b));
        let name = &check[8..];
        let report = if !applies {
            CheckReport::new(check, instance, Verdict::Vacuous).with_witness(ii_a_witness.clone())
        } else if *value {
            CheckReport::new(check, instance, Verdict::Holds)
        } else {
            CheckReport::fails(check, instance, witness.clone())
        };
        reports.push(report.with_note(ii_note(name, *value)));
    }

    Ok(XDownOutcome {
        i_a,
        i_b,
        ii_a,
        ii_b: ii_b.0,
        ii_c: ii_c.0,
        ii_d: ii_d.0,
        i_a_witness,
        i_b_witness,
        reports,
    })
}

/// Some member of `xs` maps isotonely into `q × q2` with an image whose
/// downward closure is the whole product.
fn has_cofinal_map(xs: &[Poset], q: &Poset, q2: &Poset, budget: u64) -> Result<bool> {
    let prod = Poset::direct_product(q, q2)?;
    for r in xs {
        let mut cofinal = false;
        for_each_map(r, &prod, MapClass::Isotone, budget, |g| {
            let img: ElemSet = g.iter().copied().collect();
            cofinal = prod.down_closure(img) == prod.all();
            if cofinal {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        if cofinal {
            return Ok(true);
        }
    }
    Ok(false)
}

fn first_pair(
    family: &FamilyPoset,
    op: impl Fn(ElemSet, ElemSet) -> Option<ElemSet>,
) -> Option<(ElemSet, ElemSet)> {
    let sets = family.sets();
    for (i, &a) in sets.iter().enumerate() {
        for &b in &sets[i..] {
            match op(a, b) {
                Some(c) if family.contains(c) => {}
                _ => return Some((a, b)),
            }
        }
    }
    None
}

/// First pair of `xd` whose join (or meet) in `Id` leaves `xd`, or a member
/// of `xd` that is not an ideal.
fn closure_failure(
    instance: &str,
    xd: &FamilyPoset,
    idl: &FamilyPoset,
    t: &SemilatticeStructure,
    join: bool,
) -> Option<Witness> {
    if let Some(&set) = xd.sets().iter().find(|&&s| !idl.contains(s)) {
        return Some(Witness::NonIdeal {
            instance: instance.into(),
            set,
        });
    }
    let sets = idl.sets();
    first_pair(xd, |a, b| {
        let (i, j) = (idl.index_of(a)?, idl.index_of(b)?);
        let k = if join { t.join(i, j) } else { t.meet(i, j) }?;
        Some(sets[k])
    })
    .map(|(a, b)| Witness::Pair {
        instance: instance.into(),
        a,
        b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verification::xdown_preset;

    const B: u64 = Limits::DEFAULT_BUDGET;

    #[test]
    fn small_corpus_passes_every_check() {
        let c = Corpus::generate(4).unwrap();
        for (id, p) in c.iter() {
            assert_eq!(
                check_no_strict_map_from_chain_ideals(&id, p, B)
                    .unwrap()
                    .verdict,
                Verdict::Holds,
                "{id}"
            );
            assert_eq!(
                check_strict_map_into_upset(&id, p, B).unwrap().verdict,
                Verdict::Vacuous
            );
            assert_eq!(
                check_no_map_onto_downsets(&id, p, B).unwrap().verdict,
                Verdict::Holds
            );
            assert_eq!(check_acc(&id, p).unwrap().verdict, Verdict::Holds);
            assert_eq!(
                check_down_vs_ideals_of_fdown(&id, p).unwrap().verdict,
                Verdict::Holds
            );
            if classify(p).has_joins() {
                assert_eq!(
                    check_no_hom_onto_ideals(&id, p, B).unwrap().verdict,
                    Verdict::Holds
                );
            }
        }
    }

    #[test]
    fn hom_check_rejects_non_semilattices() {
        let p = Poset::antichain(2).unwrap();
        assert_eq!(
            check_no_hom_onto_ideals("x", &p, B),
            Err(Error::NotUpperSemilattice)
        );
    }

    #[test]
    fn tiny_budget_is_unknown() {
        let p = Poset::antichain(2).unwrap();
        let r = check_no_map_onto_downsets("a2", &p, 1).unwrap();
        assert_eq!(r.verdict, Verdict::Unknown { budget: 1 });
    }

    #[test]
    fn a_strict_map_into_an_id_order_would_be_reported() {
        // Sanity of the search direction: ch-Id(P) does map strictly into
        // itself shifted by a new top, which is not P.
        let p = Poset::chain(2).unwrap();
        let bigger = Poset::chain(4).unwrap();
        let chid = chain_ideals(&p, true).unwrap();
        assert!(
            exists_map(chid.order(), &bigger, MapClass::StrictlyIsotone, B)
                .unwrap()
                .is_some()
        );
    }

    #[test]
    fn lemma_presets() {
        let c = Corpus::generate(4).unwrap();
        let chains = xdown_preset("chains3").unwrap();
        let o = check_xdown_closure(&c, &chains, "chains3", B).unwrap();
        assert!(o.i_a && o.i_b && o.ii_a && o.ii_b && o.ii_c && o.ii_d);
        assert!(o.reports.iter().all(|r| r.verdict == Verdict::Holds));

        let mixed = xdown_preset("chains3+antichain").unwrap();
        let o = check_xdown_closure(&c, &mixed, "mixed", B).unwrap();
        assert!(!o.i_a && !o.i_b);
        match &o.i_a_witness {
            Witness::NonIdeal { instance, set } => {
                let p = c.get(instance).unwrap_or(&mixed[3]);
                assert!(p.is_downset(*set) && !p.is_directed(*set));
            }
            w => panic!("unexpected witness {w:?}"),
        }
        assert!(o.reports.iter().all(|r| r.is_ok()));

        let conn = xdown_preset("connected+antichain").unwrap();
        let o = check_xdown_closure(&c, &conn, "conn", B).unwrap();
        assert!(!o.ii_a);
    }
}
