use std::collections::BTreeSet;

use ordlat_core::algebra::classify;
use ordlat_core::completions::{chain_ideals, downsets, fdown, ideals};
use ordlat_core::morphisms::{are_isomorphic, canonical_form, MapClass, MonotoneMap};
use ordlat_core::verification::Corpus;
use ordlat_core::{ElemSet, Poset};
use proptest::prelude::*;

/// Random posets from random "i below j" pairs with i < j.
fn poset(max_n: usize) -> impl Strategy<Value = Poset> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        let len = pairs.len();
        prop::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let gens: Vec<_> = pairs
                .iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(&p, _)| p)
                .collect();
            Poset::from_generators(n, &gens).unwrap()
        })
    })
}

fn poset_and_set(max_n: usize) -> impl Strategy<Value = (Poset, ElemSet, ElemSet)> {
    poset(max_n).prop_flat_map(|p| {
        let full = p.all().bits();
        (Just(p), any::<u64>(), any::<u64>()).prop_map(move |(p, a, b)| {
            (
                p,
                ElemSet::from_bits(a & full),
                ElemSet::from_bits(b & full),
            )
        })
    })
}

fn poset_and_perm(max_n: usize) -> impl Strategy<Value = (Poset, Vec<usize>)> {
    poset(max_n).prop_flat_map(|p| {
        let n = p.len();
        (Just(p), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #[test]
    fn down_closure_is_a_closure_operator((p, a, b) in poset_and_set(8)) {
        let ca = p.down_closure(a);
        prop_assert!(a.is_subset(ca));
        prop_assert_eq!(p.down_closure(ca), ca);
        prop_assert!(p.is_downset(ca));
        prop_assert!(p.down_closure(a.intersection(b)).is_subset(ca));
        let cu = p.up_closure(a);
        prop_assert!(a.is_subset(cu) && p.up_closure(cu) == cu && p.is_upset(cu));
    }

    #[test]
    fn dual_is_an_involution(p in poset(8)) {
        prop_assert_eq!(p.dual().dual(), p.clone());
        for i in 0..p.len() {
            prop_assert_eq!(p.dual().up(i), p.down(i));
        }
    }

    #[test]
    fn covers_regenerate_the_order(p in poset(8)) {
        let covers = p.hasse_covers();
        prop_assert_eq!(Poset::from_generators(p.len(), &covers).unwrap(), p.clone());
        // No cover is implied by the others.
        for (k, _) in covers.iter().enumerate() {
            let mut rest = covers.clone();
            rest.remove(k);
            prop_assert_ne!(Poset::from_generators(p.len(), &rest).unwrap(), p.clone());
        }
    }

    #[test]
    fn canonical_form_is_relabeling_invariant((p, perm) in poset_and_perm(7)) {
        let q = p.permuted(&perm).unwrap();
        let (cp, cq) = (canonical_form(&p), canonical_form(&q));
        prop_assert_eq!(&cp.code, &cq.code);
        prop_assert_eq!(p.permuted(&cp.relabel).unwrap(), cp.poset.clone());
    }

    #[test]
    fn finite_families_collapse(p in poset(6)) {
        // Finite posets satisfy ACC: every nonempty ideal is principal, and
        // chain-generated ideals coincide with ideals.
        let id = ideals(&p, true).unwrap();
        let mut expected: BTreeSet<ElemSet> = (0..p.len()).map(|x| p.down(x)).collect();
        expected.insert(ElemSet::EMPTY);
        prop_assert_eq!(id.sets().iter().copied().collect::<BTreeSet<_>>(), expected);
        prop_assert_eq!(chain_ideals(&p, true).unwrap().sets().to_vec(), id.sets().to_vec());
        let down = downsets(&p).unwrap();
        let brute: Vec<ElemSet> = (0..1u64 << p.len()).map(ElemSet::from_bits).filter(|&s| p.is_downset(s)).collect();
        prop_assert_eq!(down.sets(), &brute[..]);
        let nonempty: Vec<ElemSet> = brute.into_iter().filter(|s| !s.is_empty()).collect();
        prop_assert_eq!(fdown(&p).unwrap().sets().to_vec(), nonempty);
    }

    #[test]
    fn downset_lattice_is_a_lattice(p in poset(5)) {
        let d = downsets(&p).unwrap();
        let s = classify(d.order());
        prop_assert!(s.has_joins() && s.has_meets());
        for (i, &a) in d.sets().iter().enumerate() {
            for (j, &b) in d.sets().iter().enumerate() {
                prop_assert_eq!(d.sets()[s.join(i, j).unwrap()], a.union(b));
                prop_assert_eq!(d.sets()[s.meet(i, j).unwrap()], a.intersection(b));
            }
        }
    }

    #[test]
    fn composition_keeps_the_weaker_class((p, perm) in poset_and_perm(6)) {
        let q = p.permuted(&perm).unwrap();
        let f = MonotoneMap::new(p.clone(), q.clone(), perm.clone()).unwrap();
        prop_assert_eq!(f.class(), MapClass::Isomorphism);
        let mut inv = vec![0; perm.len()];
        for (i, &j) in perm.iter().enumerate() {
            inv[j] = i;
        }
        let g = MonotoneMap::new(q, p.clone(), inv).unwrap();
        let id = f.then(&g).unwrap();
        prop_assert_eq!(id.image(), &(0..p.len()).collect::<Vec<_>>()[..]);
    }
}

/// Brute-force count of posets on `n` points up to isomorphism: every
/// reflexive relation is tested for the poset axioms, and classes are
/// keyed by the least encoding over all relabelings.
fn brute_force_count(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let perms = permutations(n);
    let mut classes = BTreeSet::new();
    for bits in 0u64..1 << pairs.len() {
        let leq = |i: usize, j: usize| {
            i == j
                || pairs
                    .iter()
                    .position(|&p| p == (i, j))
                    .is_some_and(|k| bits >> k & 1 == 1)
        };
        let ok = (0..n).all(|i| {
            (0..n).all(|j| i == j || !(leq(i, j) && leq(j, i)))
                && (0..n).all(|j| (0..n).all(|k| !(leq(i, j) && leq(j, k)) || leq(i, k)))
        });
        if !ok {
            continue;
        }
        let key = perms
            .iter()
            .map(|perm| {
                let mut m = vec![false; n * n];
                for i in 0..n {
                    for j in 0..n {
                        m[perm[i] * n + perm[j]] = leq(i, j);
                    }
                }
                m
            })
            .min()
            .unwrap();
        classes.insert(key);
    }
    classes.len()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn corpus_counts_match_brute_force() {
    let c = Corpus::generate(4).unwrap();
    let brute: Vec<usize> = (0..=4).map(brute_force_count).collect();
    assert_eq!(brute, [1, 1, 2, 5, 16]);
    assert_eq!(c.counts(), brute);
}

#[test]
fn corpus_members_are_pairwise_non_isomorphic() {
    let c = Corpus::generate(5).unwrap();
    for n in 0..=5 {
        let ps = c.of_size(n);
        for (i, a) in ps.iter().enumerate() {
            assert_eq!(canonical_form(a).poset, *a, "stored in canonical form");
            for b in &ps[i + 1..] {
                assert!(are_isomorphic(a, b).is_none());
            }
        }
    }
}
