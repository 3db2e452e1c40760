//! Property tests for the cover calculus over arbitrary random relations
//! (not just pseudobases): the auxiliarity and union laws and the
//! finite-interpolant reductions hold unconditionally, the transitive laws
//! after transitive closure.

use proptest::prelude::*;

use tightspec::carrier::{Carrier, Subset};
use tightspec::rel::{CoverKind, RelStructure};

fn arb_rel(max: usize) -> impl Strategy<Value = RelStructure> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |cells| {
            let carrier = Carrier::new((0..n).map(|i| format!("p{i}"))).unwrap();
            let edges: Vec<(usize, usize)> = cells
                .iter()
                .enumerate()
                .filter(|(_, b)| **b)
                .map(|(i, _)| (i / n, i % n))
                .collect();
            RelStructure::new(carrier, &edges).unwrap()
        })
    })
}

fn arb_mask(bits: u32) -> impl Strategy<Value = u128> {
    any::<u128>().prop_map(move |m| m & ((1u128 << bits) - 1))
}

fn brute_compact(rel: &RelStructure, q: Subset, r: Subset) -> bool {
    (0u128..(1 << rel.size())).any(|fm| {
        let f = rel.carrier().subset_from_mask(fm);
        rel.subset_prec(f, r).unwrap() && rel.dense_cover(q, f).unwrap()
    })
}

proptest! {
    #[test]
    fn covers_are_auxiliary_to_inclusion(rel in arb_rel(5), a in arb_mask(5), b in arb_mask(5), c in arb_mask(5)) {
        let q = rel.carrier().subset_from_mask(a & b);
        let q2 = rel.carrier().subset_from_mask(b);
        let r2 = rel.carrier().subset_from_mask(c);
        let r = rel.carrier().subset_from_mask(c | a);
        if rel.dense_cover(q2, r2).unwrap() {
            prop_assert!(rel.dense_cover(q, r).unwrap());
        }
        if rel.compact_cover(q2, r2).unwrap() {
            prop_assert!(rel.compact_cover(q, r).unwrap());
        }
    }

    #[test]
    fn unions_preserve_covers(rel in arb_rel(5), a in arb_mask(5), a2 in arb_mask(5), b in arb_mask(5), b2 in arb_mask(5)) {
        let (sa, sa2, sb, sb2) = (
            rel.carrier().subset_from_mask(a),
            rel.carrier().subset_from_mask(a2),
            rel.carrier().subset_from_mask(b),
            rel.carrier().subset_from_mask(b2),
        );
        if rel.dense_cover(sa, sa2).unwrap() && rel.dense_cover(sb, sb2).unwrap() {
            prop_assert!(rel.dense_cover(sa.union(sb), sa2.union(sb2)).unwrap());
        }
        if rel.compact_cover(sa, sa2).unwrap() && rel.compact_cover(sb, sb2).unwrap() {
            prop_assert!(rel.compact_cover(sa.union(sb), sa2.union(sb2)).unwrap());
        }
    }

    #[test]
    fn compact_cover_reduction_is_sound(rel in arb_rel(5), a in arb_mask(5), b in arb_mask(5)) {
        let q = rel.carrier().subset_from_mask(a);
        let r = rel.carrier().subset_from_mask(b);
        prop_assert_eq!(rel.compact_cover(q, r).unwrap(), brute_compact(&rel, q, r));
    }

    #[test]
    fn meet_cover_reduction_is_sound(rel in arb_rel(5), a in arb_mask(5), b in arb_mask(5)) {
        let q = rel.carrier().subset_from_mask(a);
        let r = rel.carrier().subset_from_mask(b);
        for kind in [CoverKind::Prec, CoverKind::Dense, CoverKind::Compact, CoverKind::Disjoint] {
            let brute = q.subsets().any(|f| {
                let m = rel.formal_meet(f).unwrap();
                match kind {
                    CoverKind::Prec => rel.subset_prec(m, r).unwrap(),
                    CoverKind::Dense => rel.dense_cover(m, r).unwrap(),
                    CoverKind::Compact => brute_compact(&rel, m, r),
                    CoverKind::Disjoint => rel.disjoint(m, r).unwrap(),
                }
            });
            prop_assert_eq!(rel.meet_cover(kind, q, r), brute);
        }
    }

    #[test]
    fn empty_set_is_minimum(rel in arb_rel(6), a in arb_mask(6)) {
        let q = rel.carrier().subset_from_mask(a);
        let empty = rel.carrier().empty();
        prop_assert!(rel.subset_prec(empty, q).unwrap());
        prop_assert!(rel.dense_cover(empty, q).unwrap());
        prop_assert!(rel.compact_cover(empty, q).unwrap());
        // and ≺-below the empty set forces emptiness
        prop_assert_eq!(rel.subset_prec(q, empty).unwrap(), q.is_empty());
    }

    #[test]
    fn transitive_closure_makes_covers_transitive(rel in arb_rel(4), a in arb_mask(4), b in arb_mask(4), c in arb_mask(4)) {
        let rel = rel.transitive_closure();
        let (sa, sb, sc) = (
            rel.carrier().subset_from_mask(a),
            rel.carrier().subset_from_mask(b),
            rel.carrier().subset_from_mask(c),
        );
        if rel.dense_cover(sa, sb).unwrap() && rel.dense_cover(sb, sc).unwrap() {
            prop_assert!(rel.dense_cover(sa, sc).unwrap());
        }
        if rel.compact_cover(sa, sb).unwrap() && rel.compact_cover(sb, sc).unwrap() {
            prop_assert!(rel.compact_cover(sa, sc).unwrap());
        }
        // compact covers imply dense covers under transitivity
        if rel.compact_cover(sa, sb).unwrap() {
            prop_assert!(rel.dense_cover(sa, sb).unwrap());
        }
    }
}
