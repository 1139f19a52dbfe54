//! Counting inequivalent arithmetic expressions on distinct variables.
//!
//! The crate has four parts:
//!
//! * [`counting`]: the quadratic recurrence producing the sum-type,
//!   Π2-type, Π1-type, product-type and total counts for every `k <= n`.
//! * [`symbolic`]: exact arithmetic in `Z[X]` and its fraction field, with a
//!   canonical coprime representation used to decide equivalence.
//! * [`expr`]: expression trees, an infix parser and printer, subtraction
//!   elimination, and evaluation into canonical fractions.
//! * [`oracle`]: brute-force enumeration of equivalence classes, used to
//!   cross-check the recurrence at small sizes.

pub mod counting;
pub mod error;
pub mod expr;
pub mod oracle;
pub mod symbolic;

#[cfg(any(test, feature = "arbitrary"))]
pub mod laws;
#[cfg(any(test, feature = "arbitrary"))]
pub mod strategies;

pub use counting::{
    compute_table, compute_table_instrumented, next_pascal_row, BigCount, OpCounts, PascalRow,
    SequenceRow, SequenceTable,
};
pub use error::{Error, Result};
pub use expr::{parse, parse_many, render, BinOp, Expr, NameMap};
pub use oracle::{enumerate_grammar, enumerate_tree_classes, oracle_count, ClassSet, GrammarKind};
pub use symbolic::{Fraction, Monomial, Polynomial, Var, VarSet};
