use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{CheckReport, Verdict, Witness};
use crate::algebra::{classify, SemilatticeClass};
use crate::completions::{ideals, iterate_id, FamilyPoset};
use crate::morphisms::{
    are_isomorphic, exists_map, kurepa_chain, Assigned, KurepaFailure, MapClass, MonotoneMap,
};
use crate::{ElemSet, Error, Poset, Result, MAX_ELEMENTS};

/// Disjoint union of chains of lengths `1..=k` between a new bottom and a
/// new top: a lattice on `2 + k(k+1)/2` elements whose ideal lattice
/// gains exactly one new bottom.
pub fn build_chain_bundle(k: usize) -> Result<Poset> {
    if k == 0 {
        return Err(Error::InvalidArgument("chain bundle needs k >= 1"));
    }
    if 2 + k * (k + 1) / 2 > MAX_ELEMENTS {
        return Err(Error::CapacityExceeded {
            what: "poset elements",
            limit: MAX_ELEMENTS,
        });
    }
    let chains = (1..=k)
        .map(|len| {
            let labels = (0..len).map(|i| format!("c{len}.{i}")).collect();
            Poset::chain(len)?.with_labels(labels)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut p = Poset::disjoint_union(&chains)?.adjoin_bounds(true, true)?;
    let n = p.len();
    let mut labels: Vec<String> = (0..n).map(|i| p.label(i)).collect();
    labels[0] = "0".into();
    labels[n - 1] = "1".into();
    p = p.with_labels(labels)?;
    Ok(p)
}

/// The lattice `M_k` (bottom, `k` pairwise incomparable atoms, top) with
/// the map `f : M_k -> Id(M_k)` given by `f(0) = ∅`, `f(a_0) = {0}`,
/// `f(a_{i+1}) = {a_i, 0}`, `f(1) = M_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomsLattice {
    /// Indices: `0` is the bottom, `i + 1` is `a_i`, `k + 1` is the top.
    pub lattice: Poset,
    /// `Id(M_k)`, including the empty ideal.
    pub ideals: FamilyPoset,
    pub map: MonotoneMap,
}

pub fn build_atoms_lattice(k: usize) -> Result<AtomsLattice> {
    if k < 2 {
        return Err(Error::InvalidArgument("atoms lattice needs k >= 2"));
    }
    if k + 2 > MAX_ELEMENTS {
        return Err(Error::CapacityExceeded {
            what: "poset elements",
            limit: MAX_ELEMENTS,
        });
    }
    let top = k + 1;
    let mut labels: Vec<String> = Vec::with_capacity(k + 2);
    labels.push("0".into());
    labels.extend((0..k).map(|i| format!("a{i}")));
    labels.push("1".into());
    let lattice =
        Poset::from_fn(k + 2, |x, y| x == y || x == 0 || y == top)?.with_labels(labels)?;
    let ideals = ideals(&lattice, true)?;
    let value = |x: usize| -> ElemSet {
        match x {
            0 => ElemSet::EMPTY,
            1 => ElemSet::singleton(0),
            x if x == top => lattice.all(),
            x => lattice.down(x - 1),
        }
    };
    let image = (0..k + 2)
        .map(|x| ideals.index_of(value(x)).expect("every value is an ideal"))
        .collect();
    let map = MonotoneMap::new(lattice.clone(), ideals.order().clone(), image)?;
    Ok(AtomsLattice {
        lattice,
        ideals,
        map,
    })
}

/// A principal ideal `I` of `Id(M_k)` (as a set of indices into
/// [`AtomsLattice::ideals`]) whose preimage `f⁻¹(I)` is not an ideal of
/// `M_k`, together with that preimage.
pub fn atoms_non_ideal_preimage(a: &AtomsLattice) -> Result<Option<(ElemSet, ElemSet)>> {
    let id_of_id = ideals(a.ideals.order(), true)?;
    Ok(id_of_id.sets().iter().find_map(|&i| {
        let pre = a.map.preimage(i);
        let is_ideal = a.lattice.is_downset(pre) && (pre.is_empty() || a.lattice.is_directed(pre));
        (!is_ideal).then_some((i, pre))
    }))
}

/// The recursion run on `Id(M_k)` with assignment `D ↦ M_k↓f⁻¹(D)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomsReplay {
    /// Subsets of `M_k` produced at each step, the last one included even
    /// when it is not an ideal.
    pub values: Vec<ElemSet>,
    pub failure: KurepaFailure,
}

impl AtomsReplay {
    /// Values as `∅, {0}, {a0,0}, ...`, members listed from the highest
    /// index down.
    pub fn render(&self, lattice: &Poset) -> String {
        self.rendered(lattice).join(", ")
    }

    pub fn rendered(&self, lattice: &Poset) -> Vec<String> {
        self.values
            .iter()
            .map(|&v| {
                if v.is_empty() {
                    return "∅".into();
                }
                let mut members: Vec<usize> = v.iter().collect();
                members.reverse();
                let names: Vec<String> = members.into_iter().map(|x| lattice.label(x)).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect()
    }
}

pub fn replay_atoms_kurepa(a: &AtomsLattice) -> Result<AtomsReplay> {
    let mut values = Vec::new();
    let trace = kurepa_chain(a.ideals.order(), |d| {
        let value = a.lattice.down_closure(a.map.preimage(d));
        values.push(value);
        Some(match a.ideals.index_of(value) {
            Some(i) => Assigned::Element(i),
            None => Assigned::NotAnElement,
        })
    })?;
    Ok(AtomsReplay {
        values,
        failure: trace.failure,
    })
}

/// Checks the atoms example for `M_k`: the map is strictly isotone,
/// injective and not onto, some ideal has a non-ideal preimage, and the
/// recursion stops on a non-ideal value. The trace is the witness.
pub fn check_atoms_lattice(k: usize) -> Result<CheckReport> {
    const CHECK: &str = "kurepa";
    let instance = format!("M_{k}");
    let a = build_atoms_lattice(k)?;
    let replay = replay_atoms_kurepa(&a)?;
    let trace = Witness::Trace(replay.rendered(&a.lattice));
    let ok = a.map.class() >= MapClass::StrictlyIsotone
        && a.map.is_injective()
        && !a.map.is_surjective()
        && atoms_non_ideal_preimage(&a)?.is_some()
        && matches!(replay.failure, KurepaFailure::NotAnIdealOfChains { .. });
    let note = match replay.failure.step() {
        Some(step) => format!("{} at step {step}", replay.failure.name()),
        None => replay.failure.name().into(),
    };
    Ok(if ok {
        CheckReport::new(CHECK, &instance, Verdict::Holds).with_witness(trace)
    } else {
        CheckReport::fails(CHECK, &instance, trace)
    }
    .with_note(note))
}

/// Disjoint union of `L, id(L), ..., id^N(L)` between a new bottom `0` and
/// a new top `1`.
pub fn build_idemb_tower(l: &Poset, n: usize) -> Result<Poset> {
    if l.is_empty() || classify(l).class() != SemilatticeClass::Lattice {
        return Err(Error::NotALattice);
    }
    let stages = (0..=n)
        .map(|i| iterate_id(l, i))
        .collect::<Result<Vec<_>>>()?;
    let total: usize = stages.iter().map(Poset::len).sum::<usize>() + 2;
    if total > MAX_ELEMENTS {
        return Err(Error::CapacityExceeded {
            what: "poset elements",
            limit: MAX_ELEMENTS,
        });
    }
    Poset::disjoint_union(&stages)?.adjoin_bounds(true, true)
}

/// The tower is a lattice with `id(L') ≅ L'` and an embedding
/// `id(L') -> L'`.
pub fn check_idemb_tower(instance: &str, l: &Poset, n: usize) -> Result<CheckReport> {
    const CHECK: &str = "idemb";
    let tower = build_idemb_tower(l, n)?;
    let id = iterate_id(&tower, 1)?;
    let is_lattice = classify(&tower).class() == SemilatticeClass::Lattice;
    let iso = are_isomorphic(&id, &tower);
    let emb = exists_map(&id, &tower, MapClass::Embedding, u64::MAX)?;
    Ok(match (is_lattice, iso, emb) {
        (true, Some(_), Some(e)) => {
            CheckReport::new(CHECK, instance, Verdict::Holds).with_witness(Witness::Map {
                image: e.image().to_vec(),
            })
        }
        (lat, iso, _) => CheckReport::fails(
            CHECK,
            instance,
            Witness::Trace(alloc::vec![
                format!("lattice={lat}"),
                format!("isomorphic={}", iso.is_some()),
            ]),
        ),
    })
}

/// Named classes `X` for the `X-Down` closure lemma:
/// `chains3` (chains with 1 to 3 elements), `chains3+antichain` (adds a
/// 2-element antichain) and `connected+antichain` (a 2-element antichain
/// with small connected posets).
pub fn xdown_preset(name: &str) -> Option<Vec<Poset>> {
    let chain = |n| Poset::chain(n).expect("small chain");
    let chains: Vec<Poset> = (1..=3).map(chain).collect();
    let antichain = Poset::antichain(2).expect("small antichain");
    match name {
        "chains3" => Some(chains),
        "chains3+antichain" => Some(chains.into_iter().chain([antichain]).collect()),
        "connected+antichain" => Some(
            [
                antichain,
                chain(1),
                chain(2),
                Poset::vee(),
                Poset::vee().dual(),
            ]
            .into(),
        ),
        _ => None,
    }
}
