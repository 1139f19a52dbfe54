use std::collections::HashSet;

use exprcount_core::oracle::{
    enumerate_grammar, enumerate_tree_classes, enumerate_tree_classes_naive,
    enumerate_tree_classes_with, OracleConfig,
};
use exprcount_core::{compute_table, BigCount, Fraction, GrammarKind};
use num_bigint::BigInt;
use num_traits::{One, Signed};

fn coefficient_lemma_holds(f: &Fraction) -> bool {
    let small = |c: &BigInt| c.abs() <= BigInt::one();
    let (p, q) = (f.numerator(), f.denominator());
    p.terms().all(|(_, c)| small(c))
        && q.terms().all(|(_, c)| small(c))
        && p.terms()
            .all(|(m, _)| q.coefficient(m) == BigInt::default())
}

fn as_set(v: &[Fraction]) -> HashSet<Fraction> {
    v.iter().cloned().collect()
}

#[test]
fn tree_classes_match_recurrence() {
    let table = compute_table(4).unwrap();
    for k in 1..=4 {
        let classes = enumerate_tree_classes(k).unwrap();
        assert_eq!(
            BigCount::from(classes.len()),
            table.row(k).unwrap().a,
            "k = {k}"
        );
    }
}

#[test]
fn shared_subtree_evaluation_matches_per_tree_evaluation_at_four() {
    let naive = enumerate_tree_classes_naive(4, &OracleConfig::default()).unwrap();
    assert_eq!(naive.len(), 1466);
    assert_eq!(naive, enumerate_tree_classes(4).unwrap());
}

#[test]
fn sequential_enumeration_at_four() {
    let seq = enumerate_tree_classes_with(4, &OracleConfig::sequential()).unwrap();
    assert_eq!(seq, enumerate_tree_classes(4).unwrap());
}

#[test]
fn grammar_lists_have_recurrence_lengths_and_no_duplicates() {
    let table = compute_table(4).unwrap();
    for k in 1..=4 {
        let row = table.row(k).unwrap();
        for (kind, expected) in [
            (GrammarKind::Sum, &row.s),
            (GrammarKind::Product, &row.p),
            (GrammarKind::Pi2, &row.q),
            (GrammarKind::Pi1, &row.r),
        ] {
            let list = enumerate_grammar(k, kind).unwrap();
            assert_eq!(&BigCount::from(list.len()), expected, "k = {k}, {kind:?}");
            assert_eq!(
                as_set(&list).len(),
                list.len(),
                "duplicate in k = {k}, {kind:?}"
            );
        }
    }
}

#[test]
fn grammar_union_equals_tree_classes() {
    for k in 1..=4 {
        let sums = as_set(&enumerate_grammar(k, GrammarKind::Sum).unwrap());
        let products = as_set(&enumerate_grammar(k, GrammarKind::Product).unwrap());
        if k >= 2 {
            assert!(
                sums.is_disjoint(&products),
                "sum and product overlap at k = {k}"
            );
        }
        let union: HashSet<_> = sums.union(&products).cloned().collect();
        let trees: HashSet<_> = enumerate_tree_classes(k).unwrap().iter().cloned().collect();
        assert_eq!(union, trees, "k = {k}");
    }
}

#[test]
fn sign_classes_pair_up() {
    for k in 1..=4 {
        let classes = enumerate_tree_classes(k).unwrap();
        assert!(classes.iter().all(|f| classes.contains(&-f)));
        let sums = as_set(&enumerate_grammar(k, GrammarKind::Sum).unwrap());
        assert_eq!(sums.len() % 2, 0);
        assert!(sums.iter().all(|f| sums.contains(&-f)));
    }
}

#[test]
fn pi_lists_hold_one_representative_per_sign() {
    for k in 2..=4 {
        for kind in [GrammarKind::Pi1, GrammarKind::Pi2] {
            let list = enumerate_grammar(k, kind).unwrap();
            let set = as_set(&list);
            assert!(list.iter().all(|f| !set.contains(&-f)), "k = {k}, {kind:?}");
        }
    }
}

#[test]
fn coefficient_lemma_on_all_classes() {
    for k in 1..=4 {
        let classes = enumerate_tree_classes(k).unwrap();
        assert!(classes.iter().all(coefficient_lemma_holds), "k = {k}");
    }
}

#[test]
fn corollaries_on_enumerated_expressions() {
    let mut pool: Vec<Fraction> = Vec::new();
    for k in 1..=3 {
        pool.extend(enumerate_tree_classes(k).unwrap().iter().cloned());
    }
    let mut checked = 0;
    for f1 in &pool {
        for f2 in &pool {
            let diff = f1.sub(f2);
            if diff.vars().is_empty() {
                assert_eq!(f1, f2, "constant difference between distinct expressions");
            }
            let quot = f1.div(f2).unwrap();
            if quot.vars().is_empty() {
                assert!(f1.equal_up_to_sign(f2), "constant quotient: {f1} / {f2}");
                checked += 1;
            }
        }
    }
    assert!(checked >= pool.len());
}
