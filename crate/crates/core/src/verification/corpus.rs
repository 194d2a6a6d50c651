use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::completions::downsets;
use crate::morphisms::canonical_form;
use crate::{ElemSet, Error, Poset, Result};

/// Largest size [`Corpus::generate`] accepts. Sizes 0..=6 give
/// 1, 1, 2, 5, 16, 63, 318 posets.
pub const DEFAULT_CORPUS_CEILING: usize = 6;

/// All posets with at most `max_n` elements, one per isomorphism class.
///
/// Each poset is stored in canonical form (unlabeled, index order a linear
/// extension). Within a size, posets are sorted by canonical code, and the
/// instance identifier `n{size}-{position}` is stable across runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    max_n: usize,
    by_size: Vec<Vec<Poset>>,
}

impl Corpus {
    /// Grows the corpus one element at a time: every poset on `n + 1`
    /// elements arises from one on `n` by adding a maximal element above
    /// some downset. Duplicates are removed by canonical code.
    pub fn generate(max_n: usize) -> Result<Corpus> {
        if max_n > DEFAULT_CORPUS_CEILING {
            return Err(Error::CapacityExceeded {
                what: "corpus size",
                limit: DEFAULT_CORPUS_CEILING,
            });
        }
        let mut by_size = alloc::vec![alloc::vec![Poset::empty()]];
        for n in 0..max_n {
            let mut next: BTreeMap<Vec<u64>, Poset> = BTreeMap::new();
            for parent in &by_size[n] {
                for &d in downsets(parent)?.sets() {
                    let child = extend_by_maximal(parent, d);
                    let c = canonical_form(&child);
                    next.entry(c.code).or_insert(c.poset);
                }
            }
            by_size.push(next.into_values().collect());
        }
        Ok(Corpus { max_n, by_size })
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// Posets with exactly `n` elements.
    pub fn of_size(&self, n: usize) -> &[Poset] {
        self.by_size.get(n).map_or(&[], |v| v.as_slice())
    }

    pub fn counts(&self) -> Vec<usize> {
        self.by_size.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.by_size.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(instance id, poset)` by ascending size, then canonical code.
    pub fn iter(&self) -> impl Iterator<Item = (String, &Poset)> + '_ {
        self.by_size.iter().enumerate().flat_map(|(n, ps)| {
            ps.iter()
                .enumerate()
                .map(move |(i, p)| (format!("n{n}-{i}"), p))
        })
    }

    pub fn get(&self, id: &str) -> Option<&Poset> {
        let (n, i) = id.strip_prefix('n')?.split_once('-')?;
        self.by_size
            .get(n.parse::<usize>().ok()?)?
            .get(i.parse::<usize>().ok()?)
    }
}

fn extend_by_maximal(p: &Poset, below: ElemSet) -> Poset {
    let n = p.len();
    let mut down: Vec<ElemSet> = (0..n).map(|x| p.down(x)).collect();
    down.push(below.with(n));
    Poset::from_down_sets(down)
}
