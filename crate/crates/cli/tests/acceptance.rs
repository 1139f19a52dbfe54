//! Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Run with `cargo test -p exprcount-cli --test acceptance`.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use exprcount_cli::run;
use exprcount_core::laws::{run_suite, Suite};
use exprcount_core::oracle::{enumerate_grammar, enumerate_tree_classes_with, OracleConfig};
use exprcount_core::{compute_table, compute_table_instrumented, BigCount, Fraction, GrammarKind};
use num_bigint::BigInt;

const ORACLE_EXPECTED: [u32; 4] = [2, 10, 94, 1466];
const GRAMMAR_MAX_K: usize = 3;
const LEMMA_MAX_K: usize = 4;
const PROPERTY_CASES: u32 = 1000;
const LARGE_N: usize = 1000;
const LARGE_N_BUDGET: Duration = Duration::from_secs(60);
const SCALING_NS: (usize, usize) = (256, 512);
const SCALING_TARGET: f64 = 4.0;
const SCALING_TOLERANCE: f64 = 0.10;

type Verdict = Result<String, String>;
type Check = (&'static str, fn() -> Verdict);

fn base_values() -> Verdict {
    let table = compute_table(1).map_err(|e| e.to_string())?;
    let row = table.row(1).ok_or("missing row 1")?;
    let got = [&row.s, &row.q, &row.r, &row.p, &row.a].map(|v| v.to_string());
    if got == ["2", "1", "1", "2", "2"] {
        Ok("S=2 Q=1 R=1 P=2 A=2".into())
    } else {
        Err(format!("got S,Q,R,P,A = {got:?}"))
    }
}

fn oracle_agreement() -> Verdict {
    let table = compute_table(ORACLE_EXPECTED.len()).map_err(|e| e.to_string())?;
    let config = OracleConfig::default();
    let mut report = Vec::new();
    for (i, expected) in ORACLE_EXPECTED.iter().enumerate() {
        let k = i + 1;
        let start = Instant::now();
        let oracle = BigCount::from(
            enumerate_tree_classes_with(k, &config)
                .map_err(|e| e.to_string())?
                .len(),
        );
        let recurrence = &table.row(k).ok_or("missing row")?.a;
        if &oracle != recurrence || oracle != BigCount::from(*expected) {
            return Err(format!(
                "k={k}: oracle {oracle}, recurrence {recurrence}, expected {expected}"
            ));
        }
        report.push(format!("A_{k}={oracle} ({:.1?})", start.elapsed()));
    }
    Ok(report.join(", "))
}

fn grammar_tree_equality() -> Verdict {
    for k in 1..=GRAMMAR_MAX_K {
        let sums = enumerate_grammar(k, GrammarKind::Sum).map_err(|e| e.to_string())?;
        let products = enumerate_grammar(k, GrammarKind::Product).map_err(|e| e.to_string())?;
        let sum_set: HashSet<&Fraction> = sums.iter().collect();
        let product_set: HashSet<&Fraction> = products.iter().collect();
        if sum_set.len() != sums.len() || product_set.len() != products.len() {
            return Err(format!("k={k}: duplicates in grammar output"));
        }
        let trees =
            enumerate_tree_classes_with(k, &OracleConfig::default()).map_err(|e| e.to_string())?;
        let union: HashSet<&Fraction> = sum_set.union(&product_set).copied().collect();
        let tree_set: HashSet<&Fraction> = trees.iter().collect();
        if union != tree_set {
            return Err(format!(
                "k={k}: grammar {} classes, trees {}",
                union.len(),
                tree_set.len()
            ));
        }
    }
    Ok(format!("k<={GRAMMAR_MAX_K}, no duplicates"))
}

fn coefficient_lemma() -> Verdict {
    let small = |c: &BigInt| (-1..=1).contains(&i32::try_from(c).unwrap_or(i32::MAX));
    let mut checked = 0;
    for k in 1..=LEMMA_MAX_K {
        for f in enumerate_tree_classes_with(k, &OracleConfig::default())
            .map_err(|e| e.to_string())?
            .iter()
        {
            let (p, q) = (f.numerator(), f.denominator());
            let disjoint = p
                .terms()
                .all(|(m, _)| q.coefficient(m) == BigInt::default());
            if !(p.terms().all(|(_, c)| small(c)) && q.terms().all(|(_, c)| small(c)) && disjoint) {
                return Err(format!("k={k}: {f}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} class fractions, k<={LEMMA_MAX_K}"))
}

fn property_suites() -> Verdict {
    let mut names = Vec::new();
    for suite in Suite::ALL {
        run_suite(suite, PROPERTY_CASES).map_err(|e| format!("{}: {e}", suite.name()))?;
        names.push(suite.name());
    }
    Ok(format!("{PROPERTY_CASES} cases each: {}", names.join("; ")))
}

fn exact_divisions() -> Verdict {
    let start = Instant::now();
    let table = compute_table(LARGE_N).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if table.n() != LARGE_N {
        return Err(format!("table has {} rows", table.n()));
    }
    if elapsed > LARGE_N_BUDGET {
        return Err(format!(
            "n={LARGE_N} took {elapsed:.1?}, budget {LARGE_N_BUDGET:?}"
        ));
    }
    let digits = table
        .row(LARGE_N)
        .map(|r| r.a.to_string().len())
        .unwrap_or(0);
    Ok(format!(
        "n={LARGE_N} in {elapsed:.1?}, A_{LARGE_N} has {digits} digits"
    ))
}

fn scaling() -> Verdict {
    let muls = |n| {
        compute_table_instrumented(n)
            .map(|(_, ops)| ops.multiplications)
            .map_err(|e| e.to_string())
    };
    let (small, large) = (muls(SCALING_NS.0)?, muls(SCALING_NS.1)?);
    let ratio = large as f64 / small as f64;
    let msg = format!("multiplications {large}/{small} = {ratio:.3}");
    if (ratio - SCALING_TARGET).abs() <= SCALING_TARGET * SCALING_TOLERANCE {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn equiv_code(a: &str, b: &str) -> i32 {
    run(
        ["exprcount", "equiv", a, b],
        &mut Vec::new(),
        &mut Vec::new(),
    )
}

fn equivalence_vectors() -> Verdict {
    let pairs = [
        ("a+b", "a-(-b)"),
        ("(a-b)*(c-d)", "(d-c)*(b-a)"),
        ("(a*b)/c", "b/(c/a)"),
    ];
    for (a, b) in pairs {
        if equiv_code(a, b) != 0 {
            return Err(format!("{a} vs {b} not equivalent"));
        }
    }
    if equiv_code("a+b", "a*b") != 1 {
        return Err("a+b vs a*b not reported inequivalent".into());
    }
    Ok("3 equivalent pairs, a+b vs a*b inequivalent".into())
}

fn main() {
    let criteria: [Check; 8] = [
        ("base values", base_values),
        ("oracle agreement", oracle_agreement),
        ("grammar/tree set equality", grammar_tree_equality),
        ("coefficient lemma", coefficient_lemma),
        ("property suites", property_suites),
        ("exact divisions", exact_divisions),
        ("scaling", scaling),
        ("equivalence vectors", equivalence_vectors),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
