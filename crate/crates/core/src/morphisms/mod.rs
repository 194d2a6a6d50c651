//! Maps between finite posets and exhaustive searches for them.
//!
//! A [`MonotoneMap`] always carries the strongest [`MapClass`] it satisfies,
//! recomputed from scratch whenever one is constructed, so a witness handed
//! out by a search is re-verified independently of the search that found it.

mod canonical;
mod kurepa;

use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::{ElemSet, Error, Poset, Result};

pub use canonical::{canonical_form, CanonicalForm};
pub use kurepa::{kurepa_chain, Assigned, KurepaFailure, KurepaStep, KurepaTrace};

/// Strength of an order-preserving map, weakest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MapClass {
    /// `x <= y` implies `f(x) <= f(y)`.
    Isotone,
    /// `x < y` implies `f(x) < f(y)`. Need not be injective.
    StrictlyIsotone,
    /// `x <= y` iff `f(x) <= f(y)`.
    Embedding,
    /// Bijective embedding.
    Isomorphism,
}

impl MapClass {
    pub fn name(self) -> &'static str {
        match self {
            MapClass::Isotone => "isotone",
            MapClass::StrictlyIsotone => "strictly_isotone",
            MapClass::Embedding => "embedding",
            MapClass::Isomorphism => "isomorphism",
        }
    }
}

/// A total isotone function between two posets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    source: Poset,
    target: Poset,
    image: Vec<usize>,
    class: MapClass,
}

impl MonotoneMap {
    /// Checks that `image` is an isotone map `source -> target` and records
    /// the strongest class it satisfies.
    pub fn new(source: Poset, target: Poset, image: Vec<usize>) -> Result<MonotoneMap> {
        let class = classify_map(&source, &target, &image)?;
        Ok(MonotoneMap {
            source,
            target,
            image,
            class,
        })
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn class(&self) -> MapClass {
        self.class
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn image_set(&self) -> ElemSet {
        self.image.iter().copied().collect()
    }

    /// `{ x | f(x) in set }`.
    pub fn preimage(&self, set: ElemSet) -> ElemSet {
        (0..self.image.len())
            .filter(|&x| set.contains(self.image[x]))
            .collect()
    }

    pub fn is_injective(&self) -> bool {
        self.image_set().len() == self.image.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_set() == self.target.all()
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &MonotoneMap) -> Result<MonotoneMap> {
        if self.target != *g.source() {
            return Err(Error::InvalidArgument(
                "composed maps do not share a middle poset",
            ));
        }
        let image = self.image.iter().map(|&y| g.apply(y)).collect();
        MonotoneMap::new(self.source.clone(), g.target.clone(), image)
    }
}

/// Strongest class satisfied by `image : source -> target`, or an error if
/// it is not even isotone.
pub fn classify_map(source: &Poset, target: &Poset, image: &[usize]) -> Result<MapClass> {
    if image.len() != source.len() {
        return Err(Error::MapArity {
            len: image.len(),
            n: source.len(),
        });
    }
    for &t in image {
        target.check_index(t)?;
    }
    let mut strict = true;
    let mut embedding = true;
    for x in 0..source.len() {
        for y in 0..source.len() {
            let (fx, fy) = (image[x], image[y]);
            if source.leq(x, y) && !target.leq(fx, fy) {
                return Err(Error::NotIsotone(x, y));
            }
            if source.lt(x, y) && !target.lt(fx, fy) {
                strict = false;
            }
            if source.leq(x, y) != target.leq(fx, fy) {
                embedding = false;
            }
        }
    }
    Ok(if embedding && source.len() == target.len() {
        MapClass::Isomorphism
    } else if embedding {
        MapClass::Embedding
    } else if strict {
        MapClass::StrictlyIsotone
    } else {
        MapClass::Isotone
    })
}

/// Backtracking enumeration of all maps `source -> target` satisfying
/// `class`.
///
/// Source elements are assigned in [`Poset::linear_extension`] order and
/// candidate targets in ascending index, so maps are visited in
/// lexicographic order of `(f(l_0), f(l_1), ..)` for that extension. The
/// visitor receives the map indexed by source element and may stop the
/// search early. Returns the number of nodes visited; exceeding `budget`
/// nodes is an error, never a silent truncation.
pub fn for_each_map<F>(
    source: &Poset,
    target: &Poset,
    class: MapClass,
    budget: u64,
    mut visit: F,
) -> Result<u64>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let mut search = Search::new(source, target, class, budget);
    if class == MapClass::Isomorphism && source.len() != target.len() {
        return Ok(0);
    }
    if class >= MapClass::Embedding && source.len() > target.len() {
        return Ok(0);
    }
    let _ = search.run(0, &mut visit)?;
    Ok(search.nodes)
}

/// First map of the requested class in the order of [`for_each_map`], or
/// `None` if the exhaustive search finds none.
pub fn exists_map(
    source: &Poset,
    target: &Poset,
    class: MapClass,
    budget: u64,
) -> Result<Option<MonotoneMap>> {
    let mut found = None;
    for_each_map(source, target, class, budget, |image| {
        found = Some(image.to_vec());
        ControlFlow::Break(())
    })?;
    match found {
        None => Ok(None),
        Some(image) => {
            let map = MonotoneMap::new(source.clone(), target.clone(), image)?;
            assert!(
                map.class() >= class,
                "search returned a {:?} map when {:?} was requested",
                map.class(),
                class
            );
            Ok(Some(map))
        }
    }
}

/// Per-element invariants preserved by isomorphisms.
fn profile(p: &Poset) -> Vec<(usize, usize, usize, usize)> {
    let h = p.heights();
    let d = p.depths();
    (0..p.len())
        .map(|x| (p.down(x).len(), p.up(x).len(), h[x], d[x]))
        .collect()
}

/// An isomorphism `a -> b` if one exists.
///
/// Cardinality and the sorted multiset of per-element (down-set size,
/// up-set size, height, depth) are compared before any backtracking.
pub fn are_isomorphic(a: &Poset, b: &Poset) -> Option<MonotoneMap> {
    if a.len() != b.len() {
        return None;
    }
    let mut pa = profile(a);
    let mut pb = profile(b);
    pa.sort_unstable();
    pb.sort_unstable();
    if pa != pb {
        return None;
    }
    exists_map(a, b, MapClass::Isomorphism, u64::MAX)
        .expect("an unbounded search cannot exhaust its budget")
}

struct Search<'a> {
    source: &'a Poset,
    target: &'a Poset,
    class: MapClass,
    budget: u64,
    nodes: u64,
    order: Vec<usize>,
    /// Source elements placed before position `k` that are incomparable to
    /// `order[k]`.
    earlier_incomparable: Vec<ElemSet>,
    /// Allowed targets for each source element from local invariants.
    allowed: Vec<ElemSet>,
    image: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(source: &'a Poset, target: &'a Poset, class: MapClass, budget: u64) -> Self {
        let order = source.linear_extension();
        let mut placed = ElemSet::EMPTY;
        let mut earlier_incomparable = Vec::with_capacity(order.len());
        for &x in &order {
            let comparable = source.up(x).union(source.down(x));
            earlier_incomparable.push(placed.difference(comparable));
            placed.insert(x);
        }

        let allowed = if class == MapClass::Isotone || source.is_empty() {
            vec![target.all(); source.len()]
        } else {
            let (hs, ds) = (source.heights(), source.depths());
            let (ht, dt) = (target.heights(), target.depths());
            (0..source.len())
                .map(|x| {
                    (0..target.len())
                        .filter(|&t| match class {
                            MapClass::Isotone => true,
                            MapClass::StrictlyIsotone => ht[t] >= hs[x] && dt[t] >= ds[x],
                            MapClass::Embedding => {
                                ht[t] >= hs[x]
                                    && dt[t] >= ds[x]
                                    && target.down(t).len() >= source.down(x).len()
                                    && target.up(t).len() >= source.up(x).len()
                            }
                            MapClass::Isomorphism => {
                                ht[t] == hs[x]
                                    && dt[t] == ds[x]
                                    && target.down(t).len() == source.down(x).len()
                                    && target.up(t).len() == source.up(x).len()
                            }
                        })
                        .collect()
                })
                .collect()
        };

        Search {
            source,
            target,
            class,
            budget,
            nodes: 0,
            order,
            earlier_incomparable,
            allowed,
            image: vec![usize::MAX; source.len()],
        }
    }

    fn candidates(&self, k: usize) -> ElemSet {
        let x = self.order[k];
        let mut mask = self.allowed[x];
        for y in self.source.strict_down(x).iter() {
            let fy = self.image[y];
            mask = mask.intersection(match self.class {
                MapClass::Isotone => self.target.up(fy),
                _ => self.target.strict_up(fy),
            });
        }
        if self.class >= MapClass::Embedding {
            for y in self.earlier_incomparable[k].iter() {
                let fy = self.image[y];
                mask = mask.difference(self.target.up(fy).union(self.target.down(fy)));
            }
        }
        mask
    }

    fn run<F>(&mut self, k: usize, visit: &mut F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        if k == self.order.len() {
            return Ok(visit(&self.image));
        }
        let x = self.order[k];
        for t in self.candidates(k).iter() {
            self.image[x] = t;
            if self.run(k + 1, visit)?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        self.image[x] = usize::MAX;
        Ok(ControlFlow::Continue(()))
    }
}
