//! Exact arithmetic in `Z[X]` and its fraction field `Z(X)`.
//!
//! Polynomials are sparse maps from [`Monomial`] to nonzero [`BigInt`]
//! coefficients. Monomials are ordered graded-lexicographically with `x1 > x2 > ...`,
//! which fixes the leading term used both by the GCD normalization and the
//! sign convention of canonical fractions: a canonical [`Fraction`] has coprime
//! numerator and denominator and a denominator whose leading coefficient is
//! positive.
//!
//! [`BigInt`]: num_bigint::BigInt

mod fraction;
mod gcd;
mod monomial;
mod polynomial;

pub use fraction::{canonicalize, frac_op, FracOp, Fraction};
pub use gcd::poly_gcd;
pub use monomial::Monomial;
pub use polynomial::Polynomial;

use std::collections::BTreeSet;

/// Variable index; `x1` is `1`.
pub type Var = u32;

/// Set of variables contained by a polynomial or fraction.
pub type VarSet = BTreeSet<Var>;
