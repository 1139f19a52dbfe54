//! Uniqueness theorems checked on every tree with three (and four) distinct
//! variables: top-level decompositions of equal expressions must match
//! under some permutation of the operands.

use std::collections::HashMap;

use exprcount_core::oracle::{decompose, for_each_tree};
use exprcount_core::Fraction;
use itertools::Itertools;

fn sign_key(f: &Fraction) -> Fraction {
    let neg = -f;
    if &neg < f {
        neg
    } else {
        f.clone()
    }
}

/// Searches for a permutation pi with `b[pi(i)] ~ a[i]` for all i.
fn permutation_witness(
    a: &[Fraction],
    b: &[Fraction],
    same: impl Fn(&Fraction, &Fraction) -> bool,
) -> bool {
    a.len() == b.len()
        && (0..b.len())
            .permutations(b.len())
            .any(|pi| a.iter().enumerate().all(|(i, f)| same(&b[pi[i]], f)))
}

fn check_sums(k: usize) -> usize {
    let mut groups: HashMap<Fraction, Vec<Vec<Fraction>>> = HashMap::new();
    for_each_tree(k, |t| {
        if let Some(summands) = decompose::summands(t).unwrap() {
            let value = t.evaluate().unwrap();
            groups.entry(value).or_default().push(summands);
        }
    });
    let mut pairs = 0;
    for decomps in groups.values() {
        // Compare against a bounded set of distinct decompositions.
        let distinct: Vec<_> = decomps.iter().unique().take(12).collect();
        for (a, b) in distinct.iter().tuple_combinations() {
            assert!(
                permutation_witness(a, b, |x, y| x == y),
                "sum decompositions {a:?} vs {b:?}"
            );
            pairs += 1;
        }
    }
    pairs
}

fn check_products(k: usize) -> usize {
    type Factors = (Vec<Fraction>, Vec<Fraction>);
    let mut groups: HashMap<Fraction, Vec<Factors>> = HashMap::new();
    for_each_tree(k, |t| {
        if let Some(factors) = decompose::factors(t).unwrap() {
            groups
                .entry(sign_key(&t.evaluate().unwrap()))
                .or_default()
                .push(factors);
        }
    });
    let up_to_sign = |x: &Fraction, y: &Fraction| x.equal_up_to_sign(y);
    let mut pairs = 0;
    for decomps in groups.values() {
        let distinct: Vec<_> = decomps.iter().unique().take(12).collect();
        for ((n1, d1), (n2, d2)) in distinct.iter().tuple_combinations() {
            assert!(
                permutation_witness(n1, n2, up_to_sign) && permutation_witness(d1, d2, up_to_sign),
                "product decompositions {n1:?}/{d1:?} vs {n2:?}/{d2:?}"
            );
            pairs += 1;
        }
    }
    pairs
}

fn check_sum_vs_product(k: usize) {
    let mut sum_values = std::collections::HashSet::new();
    let mut product_values = std::collections::HashSet::new();
    for_each_tree(k, |t| {
        let v = t.evaluate().unwrap();
        if decompose::summands(t).unwrap().is_some() {
            sum_values.insert(v);
        } else {
            product_values.insert(v);
        }
    });
    assert!(sum_values.is_disjoint(&product_values));
}

#[test]
fn equal_sums_have_permuted_summands() {
    assert!(check_sums(2) > 0);
    assert!(check_sums(3) > 0);
}

#[test]
fn products_equal_up_to_sign_have_matching_factors() {
    assert!(check_products(2) > 0);
    assert!(check_products(3) > 0);
}

#[test]
fn sums_never_equal_products() {
    check_sum_vs_product(2);
    check_sum_vs_product(3);
}

#[test]
fn theorems_hold_at_four_variables() {
    assert!(check_sums(4) > 0);
    assert!(check_products(4) > 0);
    check_sum_vs_product(4);
}
