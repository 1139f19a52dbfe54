//! Proptest strategies for polynomials and fractions over a few variables.

use num_bigint::BigInt;
use proptest::prelude::*;

use crate::expr::{BinOp, Expr};
use crate::symbolic::{Fraction, Monomial, Polynomial, Var};

/// Monomial over `vars` with each exponent in `0..=max_exp`.
pub fn monomial(vars: Vec<Var>, max_exp: u32) -> impl Strategy<Value = Monomial> {
    let n = vars.len();
    proptest::collection::vec(0..=max_exp, n)
        .prop_map(move |exps| Monomial::from_pairs(vars.iter().copied().zip(exps)))
}

/// Polynomial with up to `max_terms` terms over `vars`, small coefficients.
pub fn polynomial(vars: Vec<Var>, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((monomial(vars, 2), -3i64..=3), 0..=max_terms).prop_map(|terms| {
        Polynomial::from_terms(terms.into_iter().map(|(m, c)| (m, BigInt::from(c))))
    })
}

pub fn nonzero_polynomial(vars: Vec<Var>, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    polynomial(vars, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

/// Canonical fraction over `vars`.
pub fn fraction(vars: Vec<Var>) -> impl Strategy<Value = Fraction> {
    (polynomial(vars.clone(), 3), nonzero_polynomial(vars, 3))
        .prop_map(|(n, d)| Fraction::new(n, d).expect("nonzero denominator"))
}

pub fn nonzero_fraction(vars: Vec<Var>) -> impl Strategy<Value = Fraction> {
    fraction(vars).prop_filter("nonzero", |f| !f.is_zero())
}

/// Nonzero fraction whose variables all lie in `vars` and include at least
/// one of them.
pub fn nonconstant_fraction(vars: Vec<Var>) -> impl Strategy<Value = Fraction> {
    nonzero_fraction(vars).prop_filter("nonconstant", |f| !f.is_constant())
}

/// `count` nonzero fractions on pairwise-disjoint blocks of three
/// variables: the i-th uses `x(3i+1)..x(3i+3)`.
pub fn disjoint_fractions(count: usize) -> impl Strategy<Value = Vec<Fraction>> {
    (0..count)
        .map(|i| {
            let base = 3 * i as Var;
            nonzero_fraction(vec![base + 1, base + 2, base + 3]).boxed()
        })
        .collect::<Vec<_>>()
}

/// Random expression tree with one leaf per entry of `labels`, in
/// left-to-right order. Operators and unary minus are chosen at random.
fn tree_over(labels: Vec<Var>) -> BoxedStrategy<Expr> {
    let n = labels.len();
    let leaf = |v: Var| prop_oneof![Just(Expr::Var(v)), Just(Expr::neg(Expr::Var(v)))].boxed();
    if n == 1 {
        return leaf(labels[0]);
    }
    (1..n, 0..4usize, any::<bool>())
        .prop_flat_map(move |(split, op, negate)| {
            let (l, r) = (labels[..split].to_vec(), labels[split..].to_vec());
            (tree_over(l), tree_over(r)).prop_map(move |(l, r)| {
                let node = Expr::binary(BinOp::ALL[op], l, r);
                if negate {
                    Expr::neg(node)
                } else {
                    node
                }
            })
        })
        .boxed()
}

/// Tree whose leaves are `x1..xk` in a random order, each exactly once.
pub fn distinct_var_tree(max_k: usize) -> impl Strategy<Value = Expr> {
    (1..=max_k)
        .prop_flat_map(|k| Just((1..=k as Var).collect::<Vec<_>>()).prop_shuffle())
        .prop_flat_map(tree_over)
}

/// Tree with up to `max_leaves` leaves drawn from `x1..x3`, repeats allowed.
pub fn tree_with_repeats(max_leaves: usize) -> impl Strategy<Value = Expr> {
    proptest::collection::vec(1..=3 as Var, 1..=max_leaves).prop_flat_map(tree_over)
}
