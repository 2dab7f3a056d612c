mod common;

use std::collections::{HashMap, HashSet};

use partcalc::enumerate::{bell, enumerate, Predicate, DEFAULT_LIMIT};
use partcalc::named::*;
use partcalc::partition::compose;
use partcalc::Partition;
use proptest::prelude::*;

use common::*;

fn partition_in(upper: usize, lower: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0u32..6, upper + lower).prop_map(move |labels| Partition::from_labels(upper, lower, &labels))
}

fn any_partition() -> impl Strategy<Value = Partition> {
    (0usize..=3, 0usize..=3).prop_flat_map(|(k, l)| partition_in(k, l))
}

/// `(p, q, r)` composable as `r · q · p`.
fn composable_triple() -> impl Strategy<Value = (Partition, Partition, Partition)> {
    (0usize..=3, 0usize..=3, 0usize..=3, 0usize..=3)
        .prop_flat_map(|(a, b, c, d)| (partition_in(a, b), partition_in(b, c), partition_in(c, d)))
}

proptest! {
    #[test]
    fn involution_and_reflection_are_involutive(p in any_partition()) {
        prop_assert_eq!(p.involute().involute(), p.clone());
        prop_assert_eq!(p.reflect().reflect(), p.clone());
        prop_assert_eq!(p.involute().reflect(), p.reflect().involute());
    }

    #[test]
    fn reflection_reverses_tensor(p in any_partition(), q in any_partition()) {
        prop_assert_eq!(p.tensor(&q).reflect(), q.reflect().tensor(&p.reflect()));
        prop_assert_eq!(p.tensor(&q).involute(), p.involute().tensor(&q.involute()));
    }

    #[test]
    fn composition_matches_graph_oracle((p, q, _r) in composable_triple()) {
        let out = compose(&q, &p).unwrap();
        let (expected, loops) = graph_compose(&q, &p);
        prop_assert_eq!(out.result, expected);
        prop_assert_eq!(out.removed_loops, loops);
    }

    #[test]
    fn involution_reverses_composition((p, q, _r) in composable_triple()) {
        let qp = compose(&q, &p).unwrap();
        let flipped = compose(&p.involute(), &q.involute()).unwrap();
        prop_assert_eq!(flipped.result, qp.result.involute());
        prop_assert_eq!(flipped.removed_loops, qp.removed_loops);
    }

    #[test]
    fn composition_is_associative_with_additive_loops((p, q, r) in composable_triple()) {
        let qp = compose(&q, &p).unwrap();
        let left = compose(&r, &qp.result).unwrap();
        let rq = compose(&r, &q).unwrap();
        let right = compose(&rq.result, &p).unwrap();
        prop_assert_eq!(&left.result, &right.result);
        prop_assert_eq!(qp.removed_loops + left.removed_loops, rq.removed_loops + right.removed_loops);
    }

    #[test]
    fn identity_is_neutral(p in any_partition()) {
        let top = compose(&Partition::identity_power(p.lower()), &p).unwrap();
        let bottom = compose(&p, &Partition::identity_power(p.upper())).unwrap();
        prop_assert_eq!(&top.result, &p);
        prop_assert_eq!(&bottom.result, &p);
        prop_assert_eq!(top.removed_loops + bottom.removed_loops, 0);
    }

    #[test]
    fn noncrossing_matches_crossing_pattern(p in any_partition()) {
        prop_assert_eq!(p.is_noncrossing(), brute_noncrossing(&p));
    }

    #[test]
    fn literal_round_trip(p in any_partition()) {
        let text = p.to_string();
        prop_assert_eq!(text.parse::<Partition>().unwrap(), p);
    }
}

#[test]
fn associativity_exhaustive_small() {
    let by_shape = |k, l| brute_partitions(k, l);
    for a in 0..=2 {
        for b in 0..=2 {
            for c in 0..=2 {
                for d in 0..=2 {
                    let (ps, qs, rs) = (by_shape(a, b), by_shape(b, c), by_shape(c, d));
                    for p in &ps {
                        for q in &qs {
                            let qp = compose(q, p).unwrap();
                            for r in &rs {
                                let rq = compose(r, q).unwrap();
                                let left = compose(r, &qp.result).unwrap();
                                let right = compose(&rq.result, p).unwrap();
                                assert_eq!(left.result, right.result);
                                assert_eq!(qp.removed_loops + left.removed_loops, rq.removed_loops + right.removed_loops);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn enumeration_matches_insertion_oracle() {
    for total in 0..=6 {
        for k in 0..=total {
            let l = total - k;
            let lib: HashSet<Partition> = enumerate(Predicate::All, k, l, DEFAULT_LIMIT).unwrap().into_iter().collect();
            let brute: HashSet<Partition> = brute_partitions(k, l).into_iter().collect();
            assert_eq!(lib.len() as u128, bell(total));
            assert_eq!(lib, brute, "P({k},{l})");
        }
    }
}

#[test]
fn noncrossing_counts_are_catalan() {
    for total in 0..=7 {
        for k in 0..=total {
            let count = enumerate(Predicate::Noncrossing, k, total - k, DEFAULT_LIMIT).unwrap().len();
            assert_eq!(count as u64, catalan(total), "P({k},{})", total - k);
        }
    }
}

#[test]
fn canonical_form_identifies_equal_partitions() {
    // Distinct block orders and label values give one value and one hash.
    let mut seen: HashMap<Partition, usize> = HashMap::new();
    for p in up_to(5) {
        let relabelled: Vec<u32> = p.labels().iter().map(|x| 10 - x).collect();
        let q = Partition::from_labels(p.upper(), p.lower(), &relabelled);
        assert_eq!(q, p);
        *seen.entry(q).or_default() += 1;
    }
    assert!(seen.values().all(|&c| c == 1));
}

#[test]
fn one_block_generators_are_graded() {
    for m in 1..=6 {
        let b = block(m);
        assert!(b.is_noncrossing());
        assert!(b.grading_ok(m));
        assert_eq!(b.involute().upper(), m);
    }
    assert!(!block(3).grading_ok(2));
}

#[test]
fn named_partitions() {
    assert_eq!(compose(&copair(), &pair()).unwrap().removed_loops, 1);
    assert_eq!(compose(&copair(), &pair()).unwrap().result, empty());
    assert_eq!(compose(&pair(), &copair()).unwrap().result, tau(2));
    assert!(!crossline().is_noncrossing());
    assert_eq!(fourblock().census().sizes, vec![4]);
}
