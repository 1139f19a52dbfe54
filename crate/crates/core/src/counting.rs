//! Quadratic-time recurrence for the number of inequivalent expressions.
//!
//! For every `k` the engine tracks five counts on `k` fixed variables:
//!
//! * `S_k`: sum-type expressions,
//! * `Q_k`: Π2-type expressions (products of at least two sums), up to sign,
//! * `R_k`: Π1-type expressions (Π2-type or sum-type), up to sign,
//! * `P_k`: product-type expressions,
//! * `A_k = S_k + P_k`: all inequivalent expressions.
//!
//! Only two rows of Pascal's triangle are alive at any time, so the number
//! of stored big integers stays linear in `n` while the number of big-integer
//! operations is quadratic.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

/// One row of Pascal's triangle: `C(k, 0), ..., C(k, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PascalRow(Vec<BigCount>);

impl PascalRow {
    /// Row zero, `[1]`.
    pub fn zero() -> Self {
        PascalRow(vec![BigCount::one()])
    }

    /// Wraps explicit entries. Returns `None` unless they form a valid row
    /// (unit ends, symmetric, summing to `2^k`).
    pub fn from_entries(entries: Vec<BigCount>) -> Option<Self> {
        let row = PascalRow(entries);
        row.is_valid().then_some(row)
    }

    pub fn k(&self) -> usize {
        self.0.len() - 1
    }

    pub fn entries(&self) -> &[BigCount] {
        &self.0
    }

    pub fn get(&self, j: usize) -> &BigCount {
        &self.0[j]
    }

    fn is_valid(&self) -> bool {
        let n = self.0.len();
        if n == 0 || !self.0[0].is_one() || !self.0[n - 1].is_one() {
            return false;
        }
        if (0..n / 2).any(|j| self.0[j] != self.0[n - 1 - j]) {
            return false;
        }
        let sum: BigCount = self.0.iter().sum();
        sum == BigCount::one() << (n - 1)
    }
}

/// Computes row `k + 1` from row `k` via `C(k+1, j) = C(k, j) + C(k, j-1)`.
pub fn next_pascal_row(row: &PascalRow) -> PascalRow {
    let k = row.k();
    let mut next = Vec::with_capacity(k + 2);
    next.push(BigCount::one());
    for j in 1..=k {
        next.push(&row.0[j] + &row.0[j - 1]);
    }
    next.push(BigCount::one());
    PascalRow(next)
}

/// The five counts for one `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceRow {
    pub k: usize,
    pub s: BigCount,
    pub q: BigCount,
    pub r: BigCount,
    pub p: BigCount,
    pub a: BigCount,
}

impl SequenceRow {
    /// The trivial values for a single variable.
    pub fn base() -> Self {
        SequenceRow {
            k: 1,
            s: 2u32.into(),
            q: 1u32.into(),
            r: 1u32.into(),
            p: 2u32.into(),
            a: 2u32.into(),
        }
    }
}

/// Counts for `k = 1..=n`. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceTable {
    rows: Vec<SequenceRow>,
}

impl SequenceTable {
    /// Builds a table from explicit rows, checking that they are numbered
    /// `1..=n` and satisfy the table invariants.
    pub fn from_rows(rows: Vec<SequenceRow>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Domain(
                "a sequence table needs at least one row".into(),
            ));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.k != i + 1 {
                return Err(Error::Domain(format!(
                    "row {} is labelled k = {}",
                    i + 1,
                    row.k
                )));
            }
            // x1 and -x1 are both sum-type and product-type, so the split
            // only holds from two variables on.
            if row.k >= 2 && row.a != &row.s + &row.p {
                return Err(Error::Domain(format!("A != S + P at k = {}", row.k)));
            }
        }
        Ok(SequenceTable { rows })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SequenceRow] {
        &self.rows
    }

    /// Row for `k`, 1-based.
    pub fn row(&self, k: usize) -> Option<&SequenceRow> {
        k.checked_sub(1).and_then(|i| self.rows.get(i))
    }

    pub fn a(&self) -> impl Iterator<Item = &BigCount> {
        self.rows.iter().map(|r| &r.a)
    }

    /// The table restricted to `1..=m`.
    pub fn prefix(&self, m: usize) -> Option<SequenceTable> {
        (1..=self.n()).contains(&m).then(|| SequenceTable {
            rows: self.rows[..m].to_vec(),
        })
    }
}

/// Big-integer operation counters collected by [`compute_table_instrumented`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub multiplications: u64,
    pub additions: u64,
    pub divisions: u64,
    /// Largest number of Pascal-triangle entries alive at once.
    pub peak_pascal_entries: usize,
}

impl fmt::Display for OpCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "multiplications={} additions={} divisions={} peak_pascal_entries={}",
            self.multiplications, self.additions, self.divisions, self.peak_pascal_entries
        )
    }
}

fn halve_exact(value: BigCount, k: usize, what: &'static str) -> Result<BigCount> {
    let (half, rem) = value.div_rem(&BigCount::from(2u32));
    if !rem.is_zero() {
        return Err(Error::InexactDivision { k, what });
    }
    Ok(half)
}

/// Computes the counts for `k = prefix.len() + 1` from the counts for all
/// smaller `k` and Pascal rows `k - 1` and `k`.
pub fn advance(
    prefix: &[SequenceRow],
    row_km1: &PascalRow,
    row_k: &PascalRow,
) -> Result<SequenceRow> {
    advance_counted(prefix, row_km1, row_k, &mut OpCounts::default())
}

fn advance_counted(
    prefix: &[SequenceRow],
    row_km1: &PascalRow,
    row_k: &PascalRow,
    ops: &mut OpCounts,
) -> Result<SequenceRow> {
    let k = prefix.len() + 1;
    if k < 2 {
        return Err(Error::Domain("advance needs the k = 1 row".into()));
    }
    if row_km1.k() != k - 1 || row_k.k() != k {
        return Err(Error::Domain(format!(
            "advance to k = {k} needs Pascal rows {} and {k}, got {} and {}",
            k - 1,
            row_km1.k(),
            row_k.k()
        )));
    }
    // prefix[j - 1] holds the counts for j variables.
    let at = |j: usize| &prefix[j - 1];
    let terms = (k - 1) as u64;

    let mut s = BigCount::zero();
    for j in 1..k {
        s += &at(j).p * &at(k - j).a * row_km1.get(j - 1);
    }

    let mut twice_q = BigCount::zero();
    for j in 1..k {
        twice_q += &at(j).s * &at(k - j).r * row_km1.get(j - 1);
    }
    let q = halve_exact(twice_q, k, "the Π2 sum")?;

    let mut half_p = q.clone();
    for j in 1..k {
        half_p += &at(j).r * &at(k - j).r * row_k.get(j);
    }
    let p = half_p * 2u32;

    let r = &q + halve_exact(s.clone(), k, "S_k")?;
    let a = &s + &p;

    ops.multiplications += 6 * terms + 1;
    ops.additions += 3 * terms + 2;
    ops.divisions += 2;

    Ok(SequenceRow { k, s, q, r, p, a })
}

/// Computes the table for `k = 1..=n`.
pub fn compute_table(n: usize) -> Result<SequenceTable> {
    compute_table_instrumented(n).map(|(table, _)| table)
}

/// Same as [`compute_table`], also reporting big-integer operation counts.
pub fn compute_table_instrumented(n: usize) -> Result<(SequenceTable, OpCounts)> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let mut ops = OpCounts::default();
    let mut rows = Vec::with_capacity(n);
    rows.push(SequenceRow::base());

    let mut row_km1 = next_pascal_row(&PascalRow::zero());
    let mut row_k = next_pascal_row(&row_km1);
    ops.additions += 1;

    for k in 2..=n {
        ops.peak_pascal_entries = ops.peak_pascal_entries.max(row_km1.0.len() + row_k.0.len());
        let row = advance_counted(&rows, &row_km1, &row_k, &mut ops)?;
        rows.push(row);
        if k == n {
            break;
        }
        // Row k-1 is released before row k+1 is built.
        drop(row_km1);
        let next = next_pascal_row(&row_k);
        ops.additions += k as u64;
        ops.peak_pascal_entries = ops.peak_pascal_entries.max(row_k.0.len() + next.0.len());
        row_km1 = row_k;
        row_k = next;
    }

    Ok((SequenceTable { rows }, ops))
}
