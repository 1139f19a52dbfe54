//! Randomized law suites shared by the integration tests and the acceptance
//! runner. Each suite draws `cases` inputs from a deterministic generator.

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestError, TestRng, TestRunner};

use crate::expr::{parse, Expr};
use crate::strategies::{
    disjoint_fractions, distinct_var_tree, fraction, nonzero_fraction, nonzero_polynomial,
    polynomial, tree_with_repeats,
};
use crate::symbolic::{poly_gcd, Fraction, Polynomial, VarSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    SumVars,
    ProductVars,
    Derivatives,
    FieldLaws,
    Canonicalization,
    Expressions,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::SumVars,
        Suite::ProductVars,
        Suite::Derivatives,
        Suite::FieldLaws,
        Suite::Canonicalization,
        Suite::Expressions,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SumVars => "vars of disjoint sums",
            Suite::ProductVars => "vars of disjoint products and quotients",
            Suite::Derivatives => "derivative laws",
            Suite::FieldLaws => "field laws",
            Suite::Canonicalization => "canonicalization",
            Suite::Expressions => "expression invariants",
        }
    }
}

/// Runs `suite` on `cases` random inputs. Returns the failing input and
/// message on the first counterexample (after shrinking).
pub fn run_suite(suite: Suite, cases: u32) -> Result<(), String> {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    let mut runner = TestRunner::new_with_rng(config, rng);
    match suite {
        Suite::SumVars => report(
            runner.run(&(2..=4usize).prop_flat_map(disjoint_fractions), |fs| {
                sum_vars(&fs)
            }),
        ),
        Suite::ProductVars => {
            let input = (2..=4usize, 0..=4usize).prop_flat_map(|(n, split)| {
                disjoint_fractions(n).prop_map(move |fs| (fs, split.min(n)))
            });
            report(runner.run(&input, |(fs, split)| product_vars(&fs, split)))
        }
        Suite::Derivatives => report(runner.run(
            &(
                fraction(vars()),
                fraction(vars()),
                nonzero_fraction(vars()),
                -3i64..=3,
                1..=4u32,
            ),
            |(f, g, h, c, v)| derivatives(&f, &g, &h, c, v),
        )),
        Suite::FieldLaws => report(runner.run(
            &(fraction(vars()), fraction(vars()), fraction(vars())),
            |(f, g, h)| field_laws(&f, &g, &h),
        )),
        Suite::Canonicalization => report(runner.run(
            &(
                polynomial(vars(), 3),
                nonzero_polynomial(vars(), 3),
                nonzero_polynomial(vars(), 2),
                fraction(vars()),
            ),
            |(r, s, a, g)| canonicalization(r, s, a, &g),
        )),
        Suite::Expressions => report(
            runner.run(&(tree_with_repeats(6), distinct_var_tree(5)), |(t, d)| {
                expressions(&t, &d)
            }),
        ),
    }
}

fn report<T: std::fmt::Debug>(outcome: Result<(), TestError<T>>) -> Result<(), String> {
    outcome.map_err(|e| match e {
        TestError::Fail(reason, input) => format!("{reason}; input: {input:?}"),
        TestError::Abort(reason) => format!("aborted: {reason}"),
    })
}

fn vars() -> Vec<u32> {
    vec![1, 2, 3]
}

fn union_vars(fs: &[Fraction]) -> VarSet {
    fs.iter().flat_map(|f| f.vars()).collect()
}

fn sum_vars(fs: &[Fraction]) -> Result<(), TestCaseError> {
    let sum = fs.iter().skip(1).fold(fs[0].clone(), |acc, f| acc.add(f));
    prop_assert_eq!(sum.vars(), union_vars(fs));
    Ok(())
}

/// Multiplies the first `split` fractions and divides by the rest.
fn product_vars(fs: &[Fraction], split: usize) -> Result<(), TestCaseError> {
    let mut acc = Fraction::one();
    for (i, f) in fs.iter().enumerate() {
        acc = if i < split {
            acc.mul(f)
        } else {
            acc.div(f).expect("nonzero factor")
        };
    }
    prop_assert_eq!(acc.vars(), union_vars(fs));
    Ok(())
}

fn derivatives(
    f: &Fraction,
    g: &Fraction,
    h: &Fraction,
    c: i64,
    v: u32,
) -> Result<(), TestCaseError> {
    let d = |x: &Fraction| x.partial_derivative(v);
    let c = Fraction::constant(c);
    prop_assert_eq!(d(&c.mul(f).add(g)), c.mul(&d(f)).add(&d(g)));
    prop_assert_eq!(d(&f.mul(g)), d(f).mul(g).add(&f.mul(&d(g))));
    let quotient = d(&f.div(h).unwrap());
    let expected = d(f).mul(h).sub(&f.mul(&d(h))).div(&h.mul(h)).unwrap();
    prop_assert_eq!(quotient, expected);
    prop_assert_eq!(d(f).is_zero(), !f.vars().contains(&v));
    Ok(())
}

fn field_laws(f: &Fraction, g: &Fraction, h: &Fraction) -> Result<(), TestCaseError> {
    prop_assert_eq!(f.add(g).add(h), f.add(&g.add(h)));
    prop_assert_eq!(f.mul(g).mul(h), f.mul(&g.mul(h)));
    prop_assert_eq!(f.add(g), g.add(f));
    prop_assert_eq!(f.mul(g), g.mul(f));
    prop_assert_eq!(f.mul(&g.add(h)), f.mul(g).add(&f.mul(h)));
    prop_assert_eq!(f.sub(g).add(g), f.clone());
    if !g.is_zero() {
        prop_assert_eq!(f.div(g).unwrap().mul(g), f.clone());
    }
    Ok(())
}

fn canonicalization(
    r: Polynomial,
    s: Polynomial,
    a: Polynomial,
    g: &Fraction,
) -> Result<(), TestCaseError> {
    let gcd = poly_gcd(&r, &s);
    prop_assert!(r.div_exact(&gcd).is_some() && s.div_exact(&gcd).is_some());
    let f = Fraction::new(r.clone(), s.clone()).unwrap();
    prop_assert_eq!(
        &Fraction::new(f.numerator().clone(), f.denominator().clone()).unwrap(),
        &f
    );
    prop_assert_eq!(&Fraction::new(&a * &r, &a * &s).unwrap(), &f);
    // The gcd-reduced operations agree with building the unreduced fraction.
    let (p1, q1, p2, q2) = (
        f.numerator(),
        f.denominator(),
        g.numerator(),
        g.denominator(),
    );
    let naive_sum = Fraction::new(&(p1 * q2) + &(p2 * q1), q1 * q2).unwrap();
    prop_assert_eq!(f.add(g), naive_sum);
    prop_assert_eq!(f.mul(g), Fraction::new(p1 * p2, q1 * q2).unwrap());
    Ok(())
}

fn expressions(tree: &Expr, distinct: &Expr) -> Result<(), TestCaseError> {
    if let Ok(value) = tree.evaluate() {
        prop_assert_eq!(
            tree.eliminate_subtraction().evaluate().unwrap(),
            value.clone()
        );
        let (reparsed, _) = parse(&tree.render()).unwrap();
        prop_assert_eq!(reparsed.evaluate().unwrap(), value);
    }
    let value = distinct.evaluate();
    prop_assert!(
        value.is_ok(),
        "distinct-variable tree failed: {}",
        distinct.render()
    );
    let (reparsed, _) = parse(&distinct.render()).unwrap();
    prop_assert_eq!(&reparsed, distinct);
    Ok(())
}
