//! Multivariate GCD over the integers.
//!
//! The polynomial is viewed as univariate in its lowest-index variable with
//! coefficients in the ring of the remaining variables; contents are split
//! off recursively and the primitive parts are reduced with a subresultant
//! pseudo-remainder sequence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Polynomial, Var};

/// GCD of `p` and `q` in `Z[X]`, normalized to a positive leading
/// coefficient. `gcd(p, 0)` is `p` normalized and `gcd(0, 0)` is zero.
pub fn poly_gcd(p: &Polynomial, q: &Polynomial) -> Polynomial {
    gcd_inner(p, q).normalize_sign()
}

fn gcd_inner(p: &Polynomial, q: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return q.clone();
    }
    if q.is_zero() {
        return p.clone();
    }
    let (pv, qv) = (p.vars(), q.vars());
    // A common factor can only involve shared variables.
    if pv.is_disjoint(&qv) {
        return Polynomial::constant(p.integer_content().gcd(&q.integer_content()));
    }
    let v = *pv.union(&qv).next().expect("nonconstant operand");
    match (pv.contains(&v), qv.contains(&v)) {
        (true, false) => gcd_inner(&content_in(p, v), q),
        (false, true) => gcd_inner(p, &content_in(q, v)),
        _ => {
            let (cp, pp) = split_content(p, v);
            let (cq, pq) = split_content(q, v);
            let c = gcd_inner(&cp, &cq);
            if image_degree(&pp, &pq) == Some(0) {
                return c;
            }
            let g = primitive_prs(pp, pq);
            &c * &Polynomial::from_univariate(&g, v)
        }
    }
}

/// Degree in the main variable of the gcd of integer images of `a` and `b`,
/// found by substituting small integers for the other variables. The true
/// gcd has at most this degree as long as neither leading coefficient
/// vanishes at the chosen point.
fn image_degree(a: &[Polynomial], b: &[Polynomial]) -> Option<usize> {
    const ATTEMPTS: i64 = 4;
    for attempt in 0..ATTEMPTS {
        let point = |w: Var| BigInt::from(2 + attempt + 3 * i64::from(w));
        let (ia, ib) = (specialize(a, &point), specialize(b, &point));
        let lead_ok = |img: &[Polynomial], orig: &[Polynomial]| img.len() == orig.len();
        if lead_ok(&ia, a) && lead_ok(&ib, b) {
            return Some(primitive_prs(ia, ib).len() - 1);
        }
    }
    None
}

/// Evaluates every coefficient at `point`, dropping leading zeros.
fn specialize(coeffs: &[Polynomial], point: &impl Fn(Var) -> BigInt) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = coeffs
        .iter()
        .map(|c| {
            let value: BigInt = c
                .terms()
                .map(|(m, k)| {
                    m.powers()
                        .iter()
                        .fold(k.clone(), |acc, &(w, e)| acc * point(w).pow(e))
                })
                .sum();
            Polynomial::constant(value)
        })
        .collect();
    trim(&mut out);
    out
}

/// GCD of the coefficients of `p` viewed as a polynomial in `v`.
fn content_in(p: &Polynomial, v: Var) -> Polynomial {
    univariate_content(&p.to_univariate(v))
}

fn univariate_content(coeffs: &[Polynomial]) -> Polynomial {
    let mut g = Polynomial::zero();
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        g = gcd_inner(&g, c);
        if g.as_constant().is_some_and(|c| c.is_one() || (-c).is_one()) {
            break;
        }
    }
    g.normalize_sign()
}

/// Returns `(content, primitive part)` of `p` in `v`, the latter as
/// univariate coefficients.
fn split_content(p: &Polynomial, v: Var) -> (Polynomial, Vec<Polynomial>) {
    let coeffs = p.to_univariate(v);
    let content = univariate_content(&coeffs);
    (content.clone(), divide_coeffs(coeffs, &content))
}

fn divide_coeffs(coeffs: Vec<Polynomial>, by: &Polynomial) -> Vec<Polynomial> {
    if by.is_one() {
        return coeffs;
    }
    coeffs
        .iter()
        .map(|c| c.div_exact(by).expect("content divides every coefficient"))
        .collect()
}

fn primitive_part(coeffs: Vec<Polynomial>) -> Vec<Polynomial> {
    let content = univariate_content(&coeffs);
    let mut pp = divide_coeffs(coeffs, &content);
    // Fix the sign by the top coefficient so the sequence stays deterministic.
    if pp
        .last()
        .and_then(|c| c.leading_coefficient())
        .is_some_and(|c| c < &BigInt::zero())
    {
        pp = pp.into_iter().map(|c| -c).collect();
    }
    pp
}

fn trim(coeffs: &mut Vec<Polynomial>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}

/// Pseudo-remainder of `a` by `b` in `v`: the remainder of
/// `lc(b)^(deg a - deg b + 1) * a`.
fn pseudo_remainder(mut a: Vec<Polynomial>, b: &[Polynomial]) -> Vec<Polynomial> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut steps = a.len() - db;
    while a.len() > db {
        let da = a.len() - 1;
        let la = a[da].clone();
        for c in a.iter_mut() {
            *c = &*c * lb;
        }
        let shift = da - db;
        for (j, bj) in b.iter().enumerate() {
            a[j + shift] = &a[j + shift] - &(&la * bj);
        }
        trim(&mut a);
        steps -= 1;
    }
    if steps > 0 && !a.is_empty() {
        let factor = pow(lb, steps);
        a = a.iter().map(|c| c * &factor).collect();
    }
    a
}

fn pow(p: &Polynomial, e: usize) -> Polynomial {
    (0..e).fold(Polynomial::one(), |acc, _| &acc * p)
}

fn exact(p: &Polynomial, by: &Polynomial) -> Polynomial {
    p.div_exact(by).expect("subresultant division is exact")
}

/// GCD of two primitive polynomials in `v`, as univariate coefficients,
/// via the subresultant remainder sequence.
fn primitive_prs(mut a: Vec<Polynomial>, mut b: Vec<Polynomial>) -> Vec<Polynomial> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = Polynomial::one();
    let mut h = Polynomial::one();
    loop {
        let delta = a.len() - b.len();
        let r = pseudo_remainder(a, &b);
        if r.is_empty() {
            return primitive_part(b);
        }
        if r.len() == 1 {
            return vec![Polynomial::one()];
        }
        let divisor = &g * &pow(&h, delta);
        a = b;
        b = r.iter().map(|c| exact(c, &divisor)).collect();
        g = a.last().expect("nonzero").clone();
        h = if delta == 0 {
            h
        } else {
            exact(&pow(&g, delta), &pow(&h, delta - 1))
        };
    }
}
