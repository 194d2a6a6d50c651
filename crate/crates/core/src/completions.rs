//! Families of downsets ordered by inclusion: `Down`, `Id`, `id`, `ch-Id`,
//! `ch-id`, `fdown` and `X-Down`, together with the principal embedding and
//! compactness operators.
//!
//! Every family is enumerated from its definition and then sorted by
//! ascending bitmask; the induced order poset indexes sets in that order.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::morphisms::{for_each_map, MapClass, MonotoneMap};
use crate::{ElemSet, Error, Limits, Poset, Result, MAX_ELEMENTS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Down,
    Ideal,
    NonemptyIdeal,
    ChainIdeal,
    NonemptyChainIdeal,
    Fdown,
    XDown,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Down => "down",
            FamilyKind::Ideal => "ideal",
            FamilyKind::NonemptyIdeal => "nonempty_ideal",
            FamilyKind::ChainIdeal => "chain_ideal",
            FamilyKind::NonemptyChainIdeal => "nonempty_chain_ideal",
            FamilyKind::Fdown => "fdown",
            FamilyKind::XDown => "xdown",
        }
    }

    pub fn from_name(name: &str) -> Option<FamilyKind> {
        [
            FamilyKind::Down,
            FamilyKind::Ideal,
            FamilyKind::NonemptyIdeal,
            FamilyKind::ChainIdeal,
            FamilyKind::NonemptyChainIdeal,
            FamilyKind::Fdown,
            FamilyKind::XDown,
        ]
        .into_iter()
        .find(|k| k.name() == name)
    }
}

/// A family of subsets of `base`, ordered by inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyPoset {
    base: Poset,
    sets: Vec<ElemSet>,
    order: Poset,
    kind: FamilyKind,
}

impl FamilyPoset {
    /// Sorts and deduplicates `sets`, then builds the inclusion order. The
    /// order poset is labeled with the rendered sets.
    pub fn new(
        base: Poset,
        sets: impl IntoIterator<Item = ElemSet>,
        kind: FamilyKind,
    ) -> Result<Self> {
        let sets: Vec<ElemSet> = sets
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        for &s in &sets {
            base.check_set(s)?;
        }
        if sets.len() > MAX_ELEMENTS {
            return Err(Error::CapacityExceeded {
                what: "family order poset",
                limit: MAX_ELEMENTS,
            });
        }
        let up = sets
            .iter()
            .map(|&a| (0..sets.len()).filter(|&j| a.is_subset(sets[j])).collect())
            .collect();
        let labels = sets.iter().map(|&s| base.format_set(s)).collect();
        let order = Poset::from_up_sets(up).with_labels(labels)?;
        Ok(FamilyPoset {
            base,
            sets,
            order,
            kind,
        })
    }

    pub fn base(&self) -> &Poset {
        &self.base
    }

    pub fn sets(&self) -> &[ElemSet] {
        &self.sets
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn index_of(&self, set: ElemSet) -> Option<usize> {
        self.sets.binary_search(&set).ok()
    }

    pub fn contains(&self, set: ElemSet) -> bool {
        self.index_of(set).is_some()
    }

    /// Union of the member sets indexed by `members` (indices into the
    /// family).
    pub fn union_of(&self, members: ElemSet) -> ElemSet {
        members
            .iter()
            .fold(ElemSet::EMPTY, |acc, i| acc.union(self.sets[i]))
    }
}

fn cap_error(limit: usize) -> Error {
    Error::CapacityExceeded {
        what: "family size",
        limit,
    }
}

/// All downsets of `p`, enumerated by include/exclude decisions along a
/// linear extension.
pub fn downsets_with(p: &Poset, limits: &Limits) -> Result<FamilyPoset> {
    FamilyPoset::new(
        p.clone(),
        downset_masks(p, limits.family_cap)?,
        FamilyKind::Down,
    )
}

/// Raw downset enumeration, without building the inclusion order (which
/// is limited to 64 sets).
fn downset_masks(p: &Poset, cap: usize) -> Result<Vec<ElemSet>> {
    let order = p.linear_extension();
    let mut out = Vec::new();
    fn rec(
        p: &Poset,
        order: &[usize],
        k: usize,
        current: ElemSet,
        out: &mut Vec<ElemSet>,
        cap: usize,
    ) -> Result<()> {
        if k == order.len() {
            if out.len() >= cap {
                return Err(cap_error(cap));
            }
            out.push(current);
            return Ok(());
        }
        let x = order[k];
        rec(p, order, k + 1, current, out, cap)?;
        if p.strict_down(x).is_subset(current) {
            rec(p, order, k + 1, current.with(x), out, cap)?;
        }
        Ok(())
    }
    rec(p, &order, 0, ElemSet::EMPTY, &mut out, cap)?;
    Ok(out)
}

/// `Down(P)`: all downsets including `∅` and `P`.
pub fn downsets(p: &Poset) -> Result<FamilyPoset> {
    downsets_with(p, &Limits::default())
}

/// Upward directed downsets: `Id(P)` with `include_empty`, `id(P)` without.
pub fn ideals_with(p: &Poset, include_empty: bool, limits: &Limits) -> Result<FamilyPoset> {
    let sets = downset_masks(p, limits.family_cap)?
        .into_iter()
        .filter(|&d| (include_empty || !d.is_empty()) && p.is_directed(d));
    let kind = if include_empty {
        FamilyKind::Ideal
    } else {
        FamilyKind::NonemptyIdeal
    };
    FamilyPoset::new(p.clone(), sets.collect::<Vec<_>>(), kind)
}

pub fn ideals(p: &Poset, include_empty: bool) -> Result<FamilyPoset> {
    ideals_with(p, include_empty, &Limits::default())
}

/// Downsets generated by chains: `ch-Id(P)` with `include_empty` (the
/// empty chain generates `∅`), `ch-id(P)` without.
pub fn chain_ideals_with(p: &Poset, include_empty: bool, limits: &Limits) -> Result<FamilyPoset> {
    let mut found = BTreeSet::new();
    let mut chains = 0usize;
    fn rec(
        p: &Poset,
        next: usize,
        chain: ElemSet,
        found: &mut BTreeSet<ElemSet>,
        chains: &mut usize,
        cap: usize,
    ) -> Result<()> {
        *chains += 1;
        if *chains > cap {
            return Err(cap_error(cap));
        }
        found.insert(p.down_closure(chain));
        for x in next..p.len() {
            let comparable = p.up(x).union(p.down(x));
            if chain.is_subset(comparable) {
                rec(p, x + 1, chain.with(x), found, chains, cap)?;
            }
        }
        Ok(())
    }
    rec(
        p,
        0,
        ElemSet::EMPTY,
        &mut found,
        &mut chains,
        limits.family_cap,
    )?;
    if !include_empty {
        found.remove(&ElemSet::EMPTY);
    }
    let kind = if include_empty {
        FamilyKind::ChainIdeal
    } else {
        FamilyKind::NonemptyChainIdeal
    };
    FamilyPoset::new(p.clone(), found, kind)
}

pub fn chain_ideals(p: &Poset, include_empty: bool) -> Result<FamilyPoset> {
    chain_ideals_with(p, include_empty, &Limits::default())
}

/// `fdown(P)`: finite nonempty unions of principal downsets, built as the
/// union-closure of the principal downsets.
pub fn fdown_with(p: &Poset, limits: &Limits) -> Result<FamilyPoset> {
    let principal: Vec<ElemSet> = (0..p.len()).map(|x| p.down(x)).collect();
    let mut found: BTreeSet<ElemSet> = principal.iter().copied().collect();
    let mut frontier: Vec<ElemSet> = found.iter().copied().collect();
    while let Some(s) = frontier.pop() {
        for &d in &principal {
            let u = s.union(d);
            if found.insert(u) {
                if found.len() > limits.family_cap {
                    return Err(cap_error(limits.family_cap));
                }
                frontier.push(u);
            }
        }
    }
    FamilyPoset::new(p.clone(), found, FamilyKind::Fdown)
}

pub fn fdown(p: &Poset) -> Result<FamilyPoset> {
    fdown_with(p, &Limits::default())
}

/// Applies `id` `k` times, re-basing each stage on the previous order
/// poset. Labels are dropped.
pub fn iterate_id(p: &Poset, k: usize) -> Result<Poset> {
    let mut stage = p.clone().without_labels();
    for _ in 0..k {
        stage = ideals(&stage, false)?.order().clone().without_labels();
    }
    Ok(stage)
}

/// `d_P : x ↦ P↓{x}` into `id(P)`.
pub fn principal_embedding(p: &Poset) -> Result<MonotoneMap> {
    let id = ideals(p, false)?;
    let image = (0..p.len())
        .map(|x| {
            id.index_of(p.down(x)).ok_or(Error::InvalidArgument(
                "principal downset missing from id(P)",
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    MonotoneMap::new(p.clone(), id.order().clone(), image)
}

/// Elements `x` such that every nonempty directed subset whose least upper
/// bound majorizes `x` already contains an element majorizing `x`.
///
/// Enumerates every nonempty subset, so it is limited to
/// [`Limits::subset_enum_max_n`] elements.
pub fn compact_elements_with(p: &Poset, limits: &Limits) -> Result<ElemSet> {
    let n = p.len();
    if n > limits.subset_enum_max_n {
        return Err(Error::CapacityExceeded {
            what: "subset enumeration for compactness",
            limit: limits.subset_enum_max_n,
        });
    }
    let mut compact = p.all();
    for bits in 1..(1u64 << n) {
        let s = ElemSet::from_bits(bits);
        if !p.is_directed(s) {
            continue;
        }
        let Some(top) = p.lub(s) else { continue };
        let covered = p.down_closure(s);
        compact = compact.difference(p.down(top).difference(covered));
    }
    Ok(compact)
}

pub fn compact_elements(p: &Poset) -> Result<ElemSet> {
    compact_elements_with(p, &Limits::default())
}

/// `n`-compact elements: the compact elements of the subposet of
/// `(n-1)`-compact elements, starting from the compact elements at `n = 1`.
pub fn n_compact_elements(p: &Poset, n: usize) -> Result<ElemSet> {
    if n == 0 {
        return Err(Error::InvalidArgument("n-compactness needs n >= 1"));
    }
    let mut current = p.all();
    for _ in 0..n {
        let (sub, back) = p.induced(current);
        let c = compact_elements(&sub)?;
        current = c.iter().map(|i| back[i]).collect();
    }
    Ok(current)
}

/// The least compact element majorizing `a`, if that set has a minimum.
pub fn least_compact_above(p: &Poset, a: usize) -> Result<Option<usize>> {
    p.check_index(a)?;
    let c = compact_elements(p)?.intersection(p.up(a));
    Ok(p.least_of(c))
}

/// `X-Down(P)`: downsets `P↓f(Q)` for `Q` in `xs` and `f : Q -> P` isotone.
/// `limits.family_cap` bounds the number of maps enumerated and
/// `limits.budget` the search nodes per source poset.
pub fn x_down_with(p: &Poset, xs: &[Poset], limits: &Limits) -> Result<FamilyPoset> {
    let mut found = BTreeSet::new();
    let mut maps = 0usize;
    let mut over = false;
    for q in xs {
        for_each_map(q, p, MapClass::Isotone, limits.budget, |image| {
            maps += 1;
            if maps > limits.family_cap {
                over = true;
                return ControlFlow::Break(());
            }
            let img: ElemSet = image.iter().copied().collect();
            found.insert(p.down_closure(img));
            ControlFlow::Continue(())
        })?;
        if over {
            return Err(cap_error(limits.family_cap));
        }
    }
    FamilyPoset::new(p.clone(), found, FamilyKind::XDown)
}

pub fn x_down(p: &Poset, xs: &[Poset]) -> Result<FamilyPoset> {
    x_down_with(p, xs, &Limits::default())
}
