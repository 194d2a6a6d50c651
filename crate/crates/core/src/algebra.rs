//! Join/meet tables, subsemilattices and upper-semilattice homomorphisms.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::completions::{fdown, FamilyPoset};
use crate::morphisms::{for_each_map, MapClass, MonotoneMap};
use crate::{ElemSet, Error, Poset, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemilatticeClass {
    Upper,
    Lower,
    Lattice,
    Neither,
}

impl SemilatticeClass {
    pub fn name(self) -> &'static str {
        match self {
            SemilatticeClass::Upper => "upper",
            SemilatticeClass::Lower => "lower",
            SemilatticeClass::Lattice => "lattice",
            SemilatticeClass::Neither => "neither",
        }
    }
}

/// Partial join and meet tables of a poset. `None` marks a missing bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilatticeStructure {
    base: Poset,
    join: Vec<Option<usize>>,
    meet: Vec<Option<usize>>,
    class: SemilatticeClass,
}

/// Computes least upper and greatest lower bounds of every pair.
pub fn classify(p: &Poset) -> SemilatticeStructure {
    let n = p.len();
    let mut join = vec![None; n * n];
    let mut meet = vec![None; n * n];
    for i in 0..n {
        for j in 0..n {
            let pair = ElemSet::singleton(i).with(j);
            join[i * n + j] = p.lub(pair);
            meet[i * n + j] = p.glb(pair);
        }
    }
    let upper = join.iter().all(Option::is_some);
    let lower = meet.iter().all(Option::is_some);
    let class = match (upper, lower) {
        (true, true) => SemilatticeClass::Lattice,
        (true, false) => SemilatticeClass::Upper,
        (false, true) => SemilatticeClass::Lower,
        (false, false) => SemilatticeClass::Neither,
    };
    SemilatticeStructure {
        base: p.clone(),
        join,
        meet,
        class,
    }
}

impl SemilatticeStructure {
    pub fn base(&self) -> &Poset {
        &self.base
    }

    pub fn class(&self) -> SemilatticeClass {
        self.class
    }

    #[inline]
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        self.join[i * self.base.len() + j]
    }

    #[inline]
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        self.meet[i * self.base.len() + j]
    }

    pub fn has_joins(&self) -> bool {
        matches!(
            self.class,
            SemilatticeClass::Upper | SemilatticeClass::Lattice
        )
    }

    pub fn has_meets(&self) -> bool {
        matches!(
            self.class,
            SemilatticeClass::Lower | SemilatticeClass::Lattice
        )
    }

    /// Join of a nonempty set using the pairwise table.
    pub fn join_all(&self, set: ElemSet) -> Option<usize> {
        let mut it = set.iter();
        let first = it.next()?;
        it.try_fold(first, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, set: ElemSet) -> Option<usize> {
        let mut it = set.iter();
        let first = it.next()?;
        it.try_fold(first, |acc, x| self.meet(acc, x))
    }

    /// Closed under the join table.
    pub fn is_join_closed(&self, set: ElemSet) -> bool {
        set.iter().all(|a| {
            set.iter()
                .all(|b| self.join(a, b).is_some_and(|j| set.contains(j)))
        })
    }

    pub fn is_meet_closed(&self, set: ElemSet) -> bool {
        set.iter().all(|a| {
            set.iter()
                .all(|b| self.meet(a, b).is_some_and(|m| set.contains(m)))
        })
    }

    /// Elements that are not the join of two strictly smaller elements.
    pub fn join_irreducibles(&self) -> ElemSet {
        let p = &self.base;
        (0..p.len())
            .filter(|&x| {
                let below = p.strict_down(x);
                below.is_empty() || self.join_all(below) != Some(x)
            })
            .collect()
    }
}

/// All join-closed subsets (including `∅` and singletons) in ascending
/// bitmask order.
pub fn subsemilattices(s: &SemilatticeStructure) -> Result<impl Iterator<Item = ElemSet> + '_> {
    if !s.has_joins() {
        return Err(Error::NotUpperSemilattice);
    }
    let n = s.base().len();
    if n >= 64 {
        return Err(Error::CapacityExceeded {
            what: "subsemilattice enumeration",
            limit: 63,
        });
    }
    Ok((0..1u64 << n)
        .map(ElemSet::from_bits)
        .filter(move |&set| s.is_join_closed(set)))
}

/// Enumerates the upper-semilattice homomorphisms `s0 -> t`.
///
/// Images of the join-irreducible elements of `s0` are fixed first, under
/// monotonicity pruning; every other image is then forced as the join of
/// the images of the irreducibles below it, and the full homomorphism
/// identity is checked on every pair. Surjectivity is checked on the
/// extended map. Returns the number of search nodes.
pub fn for_each_semilattice_hom<F>(
    s0: &SemilatticeStructure,
    t: &SemilatticeStructure,
    require_surjective: bool,
    budget: u64,
    mut visit: F,
) -> Result<u64>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if !s0.has_joins() || !t.has_joins() {
        return Err(Error::NotUpperSemilattice);
    }
    let src = s0.base();
    let irreducibles = s0.join_irreducibles();
    let (gens, gen_to_src) = src.induced(irreducibles);
    let mut src_to_gen = vec![usize::MAX; src.len()];
    for (g, &x) in gen_to_src.iter().enumerate() {
        src_to_gen[x] = g;
    }
    let below: Vec<ElemSet> = (0..src.len())
        .map(|x| src.down(x).intersection(irreducibles))
        .collect();
    let mut full = vec![0usize; src.len()];

    let nodes = for_each_map(&gens, t.base(), MapClass::Isotone, budget, |on_gens| {
        for x in 0..src.len() {
            let images: ElemSet = below[x].iter().map(|g| on_gens[src_to_gen[g]]).collect();
            full[x] = t
                .join_all(images)
                .expect("every element lies above an irreducible");
        }
        for x in 0..src.len() {
            for y in 0..src.len() {
                let xy = s0.join(x, y).expect("upper semilattice");
                if t.join(full[x], full[y]) != Some(full[xy]) {
                    return ControlFlow::Continue(());
                }
            }
        }
        if require_surjective {
            let img: ElemSet = full.iter().copied().collect();
            if img != t.base().all() {
                return ControlFlow::Continue(());
            }
        }
        visit(&full)
    })?;
    Ok(nodes)
}

/// All homomorphisms `s0 -> t` (surjective ones only if requested), in
/// enumeration order.
pub fn semilattice_homs(
    s0: &SemilatticeStructure,
    t: &SemilatticeStructure,
    require_surjective: bool,
    budget: u64,
) -> Result<Vec<MonotoneMap>> {
    let mut images = Vec::new();
    for_each_semilattice_hom(s0, t, require_surjective, budget, |h| {
        images.push(h.to_vec());
        ControlFlow::Continue(())
    })?;
    images
        .into_iter()
        .map(|img| MonotoneMap::new(s0.base().clone(), t.base().clone(), img))
        .collect()
}

/// `S↓f⁻¹(I)`: `f` maps the subsemilattice `s0_members` of `s` (as its
/// induced poset, ascending index order) into the order poset of an ideal
/// family, and `ideal` is a set of family indices.
pub fn induced_ideal_map(
    s: &Poset,
    s0_members: ElemSet,
    f: &MonotoneMap,
    ideal: ElemSet,
) -> Result<ElemSet> {
    s.check_set(s0_members)?;
    if s0_members.len() != f.source().len() {
        return Err(Error::InvalidArgument(
            "map source does not match the subsemilattice",
        ));
    }
    f.target().check_set(ideal)?;
    let members: Vec<usize> = s0_members.iter().collect();
    let pre: ElemSet = f.preimage(ideal).iter().map(|i| members[i]).collect();
    Ok(s.down_closure(pre))
}

/// Checks that `fdown(P)` is free over `P` relative to every upper
/// semilattice in `battery`: isotone maps `P -> T` and homomorphisms
/// `fdown(P) -> T` correspond bijectively via "extend by joining images"
/// and "restrict along the principal embedding".
pub fn check_free_property_against(p: &Poset, battery: &[Poset], budget: u64) -> Result<bool> {
    let f: FamilyPoset = fdown(p)?;
    let fs = classify(f.order());
    if !fs.has_joins() {
        return Ok(false);
    }
    let principal: Vec<usize> = (0..p.len())
        .map(|x| {
            f.index_of(p.down(x))
                .expect("principal downsets lie in fdown")
        })
        .collect();
    for t in battery {
        let ts = classify(t);
        if !ts.has_joins() {
            return Err(Error::NotUpperSemilattice);
        }
        let mut homs: Vec<Vec<usize>> = Vec::new();
        for_each_semilattice_hom(&fs, &ts, false, budget, |h| {
            homs.push(h.to_vec());
            ControlFlow::Continue(())
        })?;
        let mut extended: Vec<Vec<usize>> = Vec::new();
        let mut ok = true;
        for_each_map(p, t, MapClass::Isotone, budget, |g| {
            let ext: Vec<usize> = f
                .sets()
                .iter()
                .map(|u| {
                    let images: ElemSet = u.iter().map(|x| g[x]).collect();
                    ts.join_all(images)
                        .expect("nonempty union in an upper semilattice")
                })
                .collect();
            let restricts = principal.iter().enumerate().all(|(x, &i)| ext[i] == g[x]);
            if !restricts || !homs.contains(&ext) {
                ok = false;
                return ControlFlow::Break(());
            }
            extended.push(ext);
            ControlFlow::Continue(())
        })?;
        if !ok {
            return Ok(false);
        }
        extended.sort();
        extended.dedup();
        homs.sort();
        if extended != homs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// [`check_free_property_against`] over all upper semilattices with one to
/// four elements.
pub fn check_free_property(p: &Poset) -> Result<bool> {
    let corpus = crate::verification::Corpus::generate(4)?;
    let battery: Vec<Poset> = corpus
        .iter()
        .filter(|(_, q)| !q.is_empty() && classify(q).has_joins())
        .map(|(_, q)| q.clone())
        .collect();
    check_free_property_against(p, &battery, crate::Limits::DEFAULT_BUDGET)
}
