//! Finite posets on the elements `0..n`.
//!
//! The full reflexive `<=` relation is stored twice, as a row of up-sets and
//! a row of down-sets, so comparability tests and closures are single mask
//! operations. Covers are derived on demand.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::{ElemSet, Error, Result, MAX_ELEMENTS};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    /// `up[i] = { j | i <= j }`
    up: Vec<ElemSet>,
    /// `down[i] = { j | j <= i }`
    down: Vec<ElemSet>,
    labels: Option<Vec<String>>,
}

impl core::fmt::Debug for Poset {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Poset")
            .field("n", &self.n)
            .field("covers", &self.hasse_covers())
            .finish()
    }
}

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_ELEMENTS {
        return Err(Error::CapacityExceeded {
            what: "poset element count",
            limit: MAX_ELEMENTS,
        });
    }
    Ok(())
}

impl Poset {
    /// Validates a square boolean relation as a partial order.
    ///
    /// Axioms are checked in the order reflexivity, antisymmetry,
    /// transitivity; the first violation (smallest witness indices) is
    /// reported.
    pub fn from_matrix<R: AsRef<[bool]>>(rows: &[R]) -> Result<Poset> {
        let n = rows.len();
        check_capacity(n)?;
        for (row, r) in rows.iter().enumerate() {
            let len = r.as_ref().len();
            if len != n {
                return Err(Error::NotSquare { row, len, n });
            }
        }
        Poset::from_fn(n, |i, j| rows[i].as_ref()[j])
    }

    /// Validates the relation `leq(i, j)` on `0..n` as a partial order.
    pub fn from_fn(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Poset> {
        check_capacity(n)?;
        let mut up = vec![ElemSet::EMPTY; n];
        for (i, row) in up.iter_mut().enumerate() {
            for j in 0..n {
                if leq(i, j) {
                    row.insert(j);
                }
            }
        }
        for (i, row) in up.iter().enumerate() {
            if !row.contains(i) {
                return Err(Error::NotReflexive(i));
            }
        }
        for i in 0..n {
            for j in up[i].iter().filter(|&j| j > i) {
                if up[j].contains(i) {
                    return Err(Error::NotAntisymmetric(i, j));
                }
            }
        }
        for i in 0..n {
            for j in up[i].iter() {
                let missing = up[j].difference(up[i]);
                if let Some(k) = missing.first() {
                    return Err(Error::NotTransitive(i, j, k));
                }
            }
        }
        Ok(Poset::from_up_sets(up))
    }

    /// Builds a poset from an arbitrary generating relation by taking its
    /// reflexive-transitive closure, then checking antisymmetry.
    pub fn from_generators(n: usize, pairs: &[(usize, usize)]) -> Result<Poset> {
        check_capacity(n)?;
        let mut up: Vec<ElemSet> = (0..n).map(ElemSet::singleton).collect();
        for &(i, j) in pairs {
            for index in [i, j] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            up[i].insert(j);
        }
        // Warshall on bit rows.
        for k in 0..n {
            for i in 0..n {
                if up[i].contains(k) {
                    up[i] = up[i].union(up[k]);
                }
            }
        }
        Poset::from_fn(n, |i, j| up[i].contains(j))
    }

    /// Trusted constructor; `up` must already be a partial order.
    pub(crate) fn from_up_sets(up: Vec<ElemSet>) -> Poset {
        let n = up.len();
        let mut down = vec![ElemSet::EMPTY; n];
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        Poset {
            n,
            up,
            down,
            labels: None,
        }
    }

    pub(crate) fn from_down_sets(down: Vec<ElemSet>) -> Poset {
        let n = down.len();
        let mut up = vec![ElemSet::EMPTY; n];
        for (i, row) in down.iter().enumerate() {
            for j in row.iter() {
                up[j].insert(i);
            }
        }
        Poset {
            n,
            up,
            down,
            labels: None,
        }
    }

    pub fn empty() -> Poset {
        Poset::from_up_sets(Vec::new())
    }

    /// The chain `0 < 1 < .. < n-1`.
    pub fn chain(n: usize) -> Result<Poset> {
        check_capacity(n)?;
        Ok(Poset::from_up_sets(
            (0..n)
                .map(|i| ElemSet::full(n).difference(ElemSet::full(i)))
                .collect(),
        ))
    }

    pub fn antichain(n: usize) -> Result<Poset> {
        check_capacity(n)?;
        Ok(Poset::from_up_sets(
            (0..n).map(ElemSet::singleton).collect(),
        ))
    }

    /// `0 < a, b < 1` with elements indexed `0, a, b, 1`.
    pub fn diamond() -> Poset {
        Poset::from_generators(4, &[(0, 1), (0, 2), (1, 3), (2, 3)])
            .expect("diamond is a poset")
            .with_labels(
                ["0", "a", "b", "1"]
                    .iter()
                    .map(|s| String::from(*s))
                    .collect(),
            )
            .expect("four labels")
    }

    /// `0 < a, 0 < b` with elements indexed `0, a, b`.
    pub fn vee() -> Poset {
        Poset::from_generators(3, &[(0, 1), (0, 2)])
            .expect("vee is a poset")
            .with_labels(["0", "a", "b"].iter().map(|s| String::from(*s)).collect())
            .expect("three labels")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Poset> {
        if labels.len() != self.n {
            return Err(Error::InvalidArgument(
                "label count must equal element count",
            ));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Poset {
        self.labels = None;
        self
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of `i`, falling back to its index.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("{i}"),
        }
    }

    /// Renders a set of elements with labels, members in ascending index
    /// order.
    pub fn format_set(&self, set: ElemSet) -> String {
        let mut s = String::from("{");
        for (k, i) in set.iter().enumerate() {
            if k > 0 {
                s.push(',');
            }
            s.push_str(&self.label(i));
        }
        s.push('}');
        s
    }

    #[inline]
    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.n)
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.up[i].contains(j)
    }

    #[inline]
    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// `P↑{i}`, including `i`.
    #[inline]
    pub fn up(&self, i: usize) -> ElemSet {
        self.up[i]
    }

    /// `P↓{i}`, including `i`.
    #[inline]
    pub fn down(&self, i: usize) -> ElemSet {
        self.down[i]
    }

    #[inline]
    pub fn strict_up(&self, i: usize) -> ElemSet {
        self.up[i].without(i)
    }

    #[inline]
    pub fn strict_down(&self, i: usize) -> ElemSet {
        self.down[i].without(i)
    }

    /// Checks that every member of `set` is an element of this poset.
    pub fn check_set(&self, set: ElemSet) -> Result<()> {
        match set.difference(self.all()).first() {
            Some(index) => Err(Error::IndexOutOfRange { index, n: self.n }),
            None => Ok(()),
        }
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, n: self.n })
        }
    }

    /// `P↓X = { y | exists x in X, y <= x }`.
    pub fn down_closure(&self, set: ElemSet) -> ElemSet {
        debug_assert!(set.is_subset(self.all()));
        set.iter()
            .fold(ElemSet::EMPTY, |acc, x| acc.union(self.down[x]))
    }

    /// `P↑X = { y | exists x in X, x <= y }`.
    pub fn up_closure(&self, set: ElemSet) -> ElemSet {
        debug_assert!(set.is_subset(self.all()));
        set.iter()
            .fold(ElemSet::EMPTY, |acc, x| acc.union(self.up[x]))
    }

    pub fn is_downset(&self, set: ElemSet) -> bool {
        self.down_closure(set) == set
    }

    pub fn is_upset(&self, set: ElemSet) -> bool {
        self.up_closure(set) == set
    }

    /// Every pair of members has a common upper bound inside `set`.
    /// Vacuously true for the empty set and singletons.
    pub fn is_directed(&self, set: ElemSet) -> bool {
        debug_assert!(set.is_subset(self.all()));
        for a in set.iter() {
            for b in set.iter().filter(|&b| b > a) {
                if self.up[a]
                    .intersection(self.up[b])
                    .intersection(set)
                    .is_empty()
                {
                    return false;
                }
            }
        }
        true
    }

    /// Members are pairwise comparable.
    pub fn is_chain(&self, set: ElemSet) -> bool {
        set.iter()
            .all(|a| set.difference(self.up[a].union(self.down[a])).is_empty())
    }

    pub fn is_antichain(&self, set: ElemSet) -> bool {
        set.iter()
            .all(|a| self.up[a].union(self.down[a]).intersection(set) == ElemSet::singleton(a))
    }

    /// Common upper bounds of `set` (all of `P` for the empty set).
    pub fn upper_bounds(&self, set: ElemSet) -> ElemSet {
        set.iter()
            .fold(self.all(), |acc, x| acc.intersection(self.up[x]))
    }

    pub fn lower_bounds(&self, set: ElemSet) -> ElemSet {
        set.iter()
            .fold(self.all(), |acc, x| acc.intersection(self.down[x]))
    }

    /// Least element of `set`, if `set` has one.
    pub fn least_of(&self, set: ElemSet) -> Option<usize> {
        set.iter().find(|&x| set.is_subset(self.up[x]))
    }

    /// Greatest element of `set`, if `set` has one.
    pub fn greatest_of(&self, set: ElemSet) -> Option<usize> {
        set.iter().find(|&x| set.is_subset(self.down[x]))
    }

    /// Least upper bound of `set` in `P`.
    pub fn lub(&self, set: ElemSet) -> Option<usize> {
        self.least_of(self.upper_bounds(set))
    }

    /// Greatest lower bound of `set` in `P`.
    pub fn glb(&self, set: ElemSet) -> Option<usize> {
        self.greatest_of(self.lower_bounds(set))
    }

    pub fn minimal_elements(&self, set: ElemSet) -> ElemSet {
        set.iter()
            .filter(|&x| self.strict_down(x).intersection(set).is_empty())
            .collect()
    }

    pub fn maximal_elements(&self, set: ElemSet) -> ElemSet {
        set.iter()
            .filter(|&x| self.strict_up(x).intersection(set).is_empty())
            .collect()
    }

    /// Covering pairs `(i, j)`: `i < j` with nothing strictly between.
    /// Sorted ascending.
    pub fn hasse_covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            let above = self.strict_up(i);
            for j in above.iter() {
                let between = above.intersection(self.strict_down(j));
                if between.is_empty() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// A linear extension, choosing the smallest available index first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut placed = ElemSet::EMPTY;
        let mut order = Vec::with_capacity(self.n);
        while order.len() < self.n {
            let next = (0..self.n)
                .find(|&x| !placed.contains(x) && self.strict_down(x).is_subset(placed))
                .expect("a partial order always has an unplaced minimal element");
            placed.insert(next);
            order.push(next);
        }
        order
    }

    /// For each element, the number of elements in a longest chain ending
    /// strictly below it.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0; self.n];
        for x in self.linear_extension() {
            h[x] = self
                .strict_down(x)
                .iter()
                .map(|y| h[y] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }

    /// For each element, the number of elements in a longest chain starting
    /// strictly above it.
    pub fn depths(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for x in self.linear_extension().into_iter().rev() {
            d[x] = self
                .strict_up(x)
                .iter()
                .map(|y| d[y] + 1)
                .max()
                .unwrap_or(0);
        }
        d
    }

    /// Number of elements in a longest chain.
    pub fn longest_chain(&self) -> usize {
        self.heights().into_iter().map(|h| h + 1).max().unwrap_or(0)
    }

    pub fn is_total(&self) -> bool {
        self.is_chain(self.all())
    }

    /// The opposite order.
    pub fn dual(&self) -> Poset {
        Poset {
            n: self.n,
            up: self.down.clone(),
            down: self.up.clone(),
            labels: self.labels.clone(),
        }
    }

    /// The subposet on `members`, re-indexed in ascending order. Also
    /// returns the new-to-old index map.
    pub fn induced(&self, members: ElemSet) -> (Poset, Vec<usize>) {
        let old: Vec<usize> = members.iter().collect();
        let mut position = [usize::MAX; MAX_ELEMENTS];
        for (new, &o) in old.iter().enumerate() {
            position[o] = new;
        }
        let up = old
            .iter()
            .map(|&o| {
                self.up[o]
                    .intersection(members)
                    .iter()
                    .map(|j| position[j])
                    .collect()
            })
            .collect();
        let mut sub = Poset::from_up_sets(up);
        if let Some(l) = &self.labels {
            sub.labels = Some(old.iter().map(|&o| l[o].clone()).collect());
        }
        (sub, old)
    }

    /// Relabels so that old element `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Poset> {
        if perm.len() != self.n {
            return Err(Error::InvalidArgument(
                "permutation length must equal element count",
            ));
        }
        let mut inverse = vec![usize::MAX; self.n];
        for (i, &p) in perm.iter().enumerate() {
            if p >= self.n || inverse[p] != usize::MAX {
                return Err(Error::InvalidArgument("not a permutation"));
            }
            inverse[p] = i;
        }
        let up = (0..self.n)
            .map(|new| self.up[inverse[new]].iter().map(|j| perm[j]).collect())
            .collect();
        let mut p = Poset::from_up_sets(up);
        if let Some(l) = &self.labels {
            p.labels = Some(inverse.iter().map(|&o| l[o].clone()).collect());
        }
        Ok(p)
    }

    /// Disjoint union with no relations between blocks; block `k` occupies
    /// a contiguous index range following block `k-1`.
    pub fn disjoint_union(parts: &[Poset]) -> Result<Poset> {
        let n: usize = parts.iter().map(|p| p.n).sum();
        check_capacity(n)?;
        let mut up = Vec::with_capacity(n);
        let mut labels = Vec::with_capacity(n);
        let mut offset = 0;
        for p in parts {
            for i in 0..p.n {
                up.push(ElemSet::from_bits(if p.n == 0 {
                    0
                } else {
                    p.up[i].bits() << offset
                }));
                labels.push(p.label(i));
            }
            offset += p.n;
        }
        let mut out = Poset::from_up_sets(up);
        if parts.iter().any(|p| p.labels.is_some()) {
            out.labels = Some(labels);
        }
        Ok(out)
    }

    /// Componentwise order on `P × Q`; `(p, q)` has index `p * |Q| + q`.
    pub fn direct_product(p: &Poset, q: &Poset) -> Result<Poset> {
        let n = p.n.checked_mul(q.n).ok_or(Error::CapacityExceeded {
            what: "poset element count",
            limit: MAX_ELEMENTS,
        })?;
        check_capacity(n)?;
        let up = (0..n)
            .map(|ij| {
                let (i, j) = (ij / q.n, ij % q.n);
                let mut s = ElemSet::EMPTY;
                for a in p.up[i].iter() {
                    for b in q.up[j].iter() {
                        s.insert(a * q.n + b);
                    }
                }
                s
            })
            .collect();
        let mut out = Poset::from_up_sets(up);
        if p.labels.is_some() || q.labels.is_some() {
            out.labels = Some(
                (0..n)
                    .map(|ij| format!("({},{})", p.label(ij / q.n), q.label(ij % q.n)))
                    .collect(),
            );
        }
        Ok(out)
    }

    /// Adds a new least element (index 0, shifting the rest up) and/or a new
    /// greatest element (last index).
    pub fn adjoin_bounds(&self, add_top: bool, add_bottom: bool) -> Result<Poset> {
        let shift = usize::from(add_bottom);
        let n = self.n + shift + usize::from(add_top);
        check_capacity(n)?;
        let top = add_top.then_some(n - 1);
        let mut up = Vec::with_capacity(n);
        let mut labels = Vec::with_capacity(n);
        if add_bottom {
            up.push(ElemSet::full(n));
            labels.push(String::from("bot"));
        }
        for i in 0..self.n {
            let mut s = ElemSet::from_bits(self.up[i].bits() << shift);
            if let Some(t) = top {
                s.insert(t);
            }
            up.push(s);
            labels.push(self.label(i));
        }
        if let Some(t) = top {
            up.push(ElemSet::singleton(t));
            labels.push(String::from("top"));
        }
        let mut out = Poset::from_up_sets(up);
        if self.labels.is_some() {
            out.labels = Some(labels);
        }
        Ok(out)
    }
}
