use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::{ElemSet, Poset};

/// A canonical relabeling: isomorphic posets get identical `poset` and
/// `code`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    /// The relabeled poset, without labels. Its index order is a linear
    /// extension.
    pub poset: Poset,
    /// Certificate: old element `i` becomes `relabel[i]`.
    pub relabel: Vec<usize>,
    /// Strict down-set masks of the canonical poset, one per element.
    pub code: Vec<u64>,
}

/// Stable partition refinement on down/up neighbourhoods. Colors are ranks of
/// sorted signatures, so they do not depend on the input labeling.
fn refine_colors(p: &Poset) -> Vec<u32> {
    let n = p.len();
    let mut colors: Vec<u32> = rank(
        &(0..n)
            .map(|x| (p.down(x).len(), p.up(x).len()))
            .collect::<Vec<_>>(),
    );
    let mut classes = count_distinct(&colors);
    loop {
        let sigs: Vec<(u32, Vec<u32>, Vec<u32>)> = (0..n)
            .map(|x| {
                let mut below: Vec<u32> = p.strict_down(x).iter().map(|y| colors[y]).collect();
                let mut above: Vec<u32> = p.strict_up(x).iter().map(|y| colors[y]).collect();
                below.sort_unstable();
                above.sort_unstable();
                (colors[x], below, above)
            })
            .collect();
        let next = rank(&sigs);
        let next_classes = count_distinct(&next);
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<u32> {
    let mut table: BTreeMap<T, u32> = sigs.iter().cloned().map(|s| (s, 0)).collect();
    for (r, v) in table.values_mut().enumerate() {
        *v = r as u32;
    }
    sigs.iter().map(|s| table[s]).collect()
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

struct Canonizer<'a> {
    p: &'a Poset,
    colors: Vec<u32>,
    order: Vec<usize>,
    keys: Vec<(u32, u64)>,
    best_keys: Option<Vec<(u32, u64)>>,
    best_order: Vec<usize>,
}

impl Canonizer<'_> {
    /// Swapping two unplaced, incomparable elements with identical
    /// neighbourhoods is an automorphism fixing everything placed so far.
    fn twins(&self, a: usize, b: usize) -> bool {
        self.p.strict_down(a).without(b) == self.p.strict_down(b).without(a)
            && self.p.strict_up(a).without(b) == self.p.strict_up(b).without(a)
    }

    fn prefix_cmp(&self) -> core::cmp::Ordering {
        match &self.best_keys {
            None => core::cmp::Ordering::Less,
            Some(best) => self.keys[..].cmp(&best[..self.keys.len()]),
        }
    }

    fn search(&mut self, placed: ElemSet) {
        let n = self.p.len();
        let k = self.order.len();
        if k == n {
            if self.prefix_cmp() == core::cmp::Ordering::Less {
                self.best_keys = Some(self.keys.clone());
                self.best_order = self.order.clone();
            }
            return;
        }
        let available: ElemSet = (0..n)
            .filter(|&x| !placed.contains(x) && self.p.strict_down(x).is_subset(placed))
            .collect();
        let min_color = available
            .iter()
            .map(|x| self.colors[x])
            .min()
            .expect("some element is always available");
        let candidates: Vec<usize> = available
            .iter()
            .filter(|&x| self.colors[x] == min_color)
            .collect();
        let mut tried: Vec<usize> = Vec::new();
        for t in candidates {
            if tried.iter().any(|&u| self.twins(t, u)) {
                continue;
            }
            tried.push(t);
            let row = self
                .order
                .iter()
                .enumerate()
                .filter(|&(_, &y)| self.p.lt(y, t))
                .fold(0u64, |acc, (j, _)| acc | 1 << j);
            self.keys.push((min_color, row));
            if self.prefix_cmp() != core::cmp::Ordering::Greater {
                self.order.push(t);
                self.search(placed.with(t));
                self.order.pop();
            }
            self.keys.pop();
        }
    }
}

/// Computes a canonical relabeling by minimizing, over all linear
/// extensions, the sequence of (refined color, strict down-set row) keys.
/// Worst-case exponential; symmetric "twin" elements are pruned.
pub fn canonical_form(p: &Poset) -> CanonicalForm {
    let mut c = Canonizer {
        p,
        colors: refine_colors(p),
        order: Vec::with_capacity(p.len()),
        keys: Vec::with_capacity(p.len()),
        best_keys: None,
        best_order: Vec::new(),
    };
    c.search(ElemSet::EMPTY);
    let mut relabel = alloc::vec![0; p.len()];
    for (pos, &old) in c.best_order.iter().enumerate() {
        relabel[old] = pos;
    }
    let poset = p
        .permuted(&relabel)
        .expect("canonical order is a permutation")
        .without_labels();
    let code = (0..poset.len())
        .map(|x| poset.strict_down(x).bits())
        .collect();
    CanonicalForm {
        poset,
        relabel,
        code,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphisms::are_isomorphic;
    use alloc::vec;

    #[test]
    fn relabelings_of_diamond_agree() {
        let d = Poset::diamond();
        let e = d.permuted(&[2, 0, 3, 1]).unwrap();
        let (cd, ce) = (canonical_form(&d), canonical_form(&e));
        assert_eq!(cd.poset, ce.poset);
        assert_eq!(cd.code, ce.code);
        assert_eq!(d.permuted(&cd.relabel).unwrap().without_labels(), cd.poset);
    }

    #[test]
    fn distinguishes_chain_from_antichain() {
        let a = canonical_form(&Poset::chain(2).unwrap());
        let b = canonical_form(&Poset::antichain(2).unwrap());
        assert_ne!(a.code, b.code);
    }

    #[test]
    fn canonical_order_is_linear_extension() {
        let p = Poset::from_generators(5, &[(4, 0), (3, 1), (4, 1), (2, 0)]).unwrap();
        let c = canonical_form(&p);
        for (i, j) in c.poset.hasse_covers() {
            assert!(i < j);
        }
        assert!(are_isomorphic(&p, &c.poset).is_some());
    }

    #[test]
    fn large_antichain_and_chain_are_fast() {
        let a = canonical_form(&Poset::antichain(64).unwrap());
        assert_eq!(a.code, vec![0u64; 64]);
        let c = canonical_form(&Poset::chain(64).unwrap());
        assert_eq!(c.poset, Poset::chain(64).unwrap());
    }
}
