//! Fixtures shared by the benchmarks.

use exprcount_core::{parse, Fraction};

/// Canonical fractions of a few expressions on up to six variables.
pub fn sample_fractions() -> Vec<Fraction> {
    [
        "x1 / x2 + x3",
        "(x1 - x2) * (x3 + x4)",
        "x1 * x2 / (x3 - x4 * x5)",
        "(x1 + x2 / x3) / (x4 - x5 * x6)",
        "x2 * (x4 + x6) - x1 / (x3 + x5)",
    ]
    .iter()
    .map(|text| {
        parse(text)
            .and_then(|(tree, _)| tree.evaluate())
            .expect("fixture evaluates")
    })
    .collect()
}
