use std::fmt;
use std::ops::Neg;

use num_traits::Signed;

use super::{poly_gcd, Polynomial, Var, VarSet};
use crate::error::{Error, Result};

/// Element of `Z(X)` in canonical form.
///
/// Numerator and denominator are coprime and the denominator's leading
/// coefficient (graded-lex) is positive, so structural equality is equality
/// in the field. Zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fraction {
    num: Polynomial,
    den: Polynomial,
}

/// The four field operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FracOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Fraction {
    /// Canonical form of `num / den`.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Fraction> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Ok(Fraction::with_sign_convention(num, den))
    }

    /// Applies the sign convention to an already coprime pair.
    fn with_sign_convention(num: Polynomial, den: Polynomial) -> Fraction {
        if den.leading_coefficient().is_some_and(|c| c.is_negative()) {
            Fraction {
                num: -num,
                den: -den,
            }
        } else {
            Fraction { num, den }
        }
    }

    pub fn zero() -> Fraction {
        Fraction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Fraction {
        Fraction::from_polynomial(Polynomial::one())
    }

    pub fn var(v: Var) -> Fraction {
        Fraction::from_polynomial(Polynomial::var(v))
    }

    pub fn from_polynomial(p: Polynomial) -> Fraction {
        Fraction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: i64) -> Fraction {
        Fraction::from_polynomial(Polynomial::from(c))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True if the fraction contains no variable.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Variables contained by the numerator or the denominator.
    pub fn vars(&self) -> VarSet {
        let mut vars = self.num.vars();
        vars.extend(self.den.vars());
        vars
    }

    pub fn add(&self, other: &Fraction) -> Fraction {
        let (p1, q1, p2, q2) = (&self.num, &self.den, &other.num, &other.den);
        let g = poly_gcd(q1, q2);
        if g.is_one() {
            // Coprime canonical denominators give a coprime result directly.
            let num = &(p1 * q2) + &(p2 * q1);
            if num.is_zero() {
                return Fraction::zero();
            }
            return Fraction::with_sign_convention(num, q1 * q2);
        }
        let q1g = q1.div_exact(&g).expect("gcd divides q1");
        let q2g = q2.div_exact(&g).expect("gcd divides q2");
        let t = &(p1 * &q2g) + &(p2 * &q1g);
        if t.is_zero() {
            return Fraction::zero();
        }
        let h = poly_gcd(&t, &g);
        let num = t.div_exact(&h).expect("gcd divides t");
        let den = &q1g * &q2.div_exact(&h).expect("gcd divides q2");
        Fraction::with_sign_convention(num, den)
    }

    pub fn sub(&self, other: &Fraction) -> Fraction {
        self.add(&-other)
    }

    pub fn mul(&self, other: &Fraction) -> Fraction {
        if self.is_zero() || other.is_zero() {
            return Fraction::zero();
        }
        let g1 = poly_gcd(&self.num, &other.den);
        let g2 = poly_gcd(&other.num, &self.den);
        let div = |p: &Polynomial, g: &Polynomial| p.div_exact(g).expect("gcd divides operand");
        let num = &div(&self.num, &g1) * &div(&other.num, &g2);
        let den = &div(&self.den, &g2) * &div(&other.den, &g1);
        Fraction::with_sign_convention(num, den)
    }

    pub fn recip(&self) -> Result<Fraction> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Fraction::with_sign_convention(
            self.den.clone(),
            self.num.clone(),
        ))
    }

    pub fn div(&self, other: &Fraction) -> Result<Fraction> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn apply(&self, op: FracOp, other: &Fraction) -> Result<Fraction> {
        match op {
            FracOp::Add => Ok(self.add(other)),
            FracOp::Sub => Ok(self.sub(other)),
            FracOp::Mul => Ok(self.mul(other)),
            FracOp::Div => self.div(other),
        }
    }

    /// Formal partial derivative by the quotient rule, computed as
    /// `p'/q - (p/q)(q'/q)` so that every gcd involves only the smaller parts.
    pub fn partial_derivative(&self, v: Var) -> Fraction {
        let over_den =
            |p: Polynomial| Fraction::new(p, self.den.clone()).expect("nonzero denominator");
        let dp = over_den(self.num.derivative(v));
        if !self.den.contains_var(v) {
            return dp;
        }
        dp.sub(&self.mul(&over_den(self.den.derivative(v))))
    }

    /// `self == other` or `self == -other`.
    pub fn equal_up_to_sign(&self, other: &Fraction) -> bool {
        self == other || (self.den == other.den && self.num == -&other.num)
    }
}

/// Applies a field operation and returns the canonical result.
pub fn frac_op(op: FracOp, f: &Fraction, g: &Fraction) -> Result<Fraction> {
    f.apply(op, g)
}

/// Canonical form of `num / den`.
pub fn canonicalize(num: Polynomial, den: Polynomial) -> Result<Fraction> {
    Fraction::new(num, den)
}

impl Neg for &Fraction {
    type Output = Fraction;
    fn neg(self) -> Fraction {
        Fraction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Fraction {
    type Output = Fraction;
    fn neg(self) -> Fraction {
        Fraction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl fmt::Display for Fraction {
    /// `(numerator)/(denominator)` with terms in descending graded-lex order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: Var) -> Polynomial {
        Polynomial::var(i)
    }

    fn fx(i: Var) -> Fraction {
        Fraction::var(i)
    }

    fn frac(n: Polynomial, d: Polynomial) -> Fraction {
        Fraction::new(n, d).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        let f = frac(&(&x(1) * &x(2)) + &(&x(1) * &x(3)), x(1));
        assert_eq!(f.numerator(), &(&x(2) + &x(3)));
        assert!(f.denominator().is_one());

        let f = frac(-x(1), -x(2));
        assert_eq!((f.numerator(), f.denominator()), (&x(1), &x(2)));

        let f = frac(x(1), Polynomial::from(-1));
        assert_eq!(
            (f.numerator(), f.denominator()),
            (&-x(1), &Polynomial::one())
        );

        assert_eq!(
            Fraction::new(x(1), Polynomial::zero()),
            Err(Error::ZeroDenominator)
        );
        assert_eq!(frac(Polynomial::zero(), -x(3)), Fraction::zero());
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let f = frac(&(&x(1) * &x(1)) - &(&x(2) * &x(2)), &x(2) - &x(1));
        assert_eq!(f.to_string(), "(-x1 - x2)/(1)");
        assert_eq!(frac(f.numerator().clone(), f.denominator().clone()), f);
    }

    #[test]
    fn field_operations() {
        let a = fx(1).div(&fx(2)).unwrap();
        let sum = a.add(&fx(3));
        assert_eq!(sum, frac(&x(1) + &(&x(2) * &x(3)), x(2)));
        assert_eq!(sum.to_string(), "(x2*x3 + x1)/(x2)");

        let inv = fx(2).div(&fx(1)).unwrap();
        assert_eq!(a.mul(&inv), Fraction::one());
        assert_eq!(fx(1).div(&Fraction::zero()), Err(Error::DivisionByZero));
        assert_eq!(
            fx(1).apply(FracOp::Div, &Fraction::zero()),
            Err(Error::DivisionByZero)
        );
        assert_eq!(a.sub(&a), Fraction::zero());
        // 1/2 + 1/2 over shared integer denominators
        let half = frac(Polynomial::one(), Polynomial::from(2));
        assert_eq!(half.add(&half), Fraction::one());
    }

    #[test]
    fn vars_examples() {
        let f = fx(1).div(&fx(2)).unwrap().add(&fx(3));
        assert_eq!(f.vars().into_iter().collect::<Vec<_>>(), vec![1, 2, 3]);
        assert!(Fraction::one().vars().is_empty());
        assert_eq!((-fx(4)).vars().into_iter().collect::<Vec<_>>(), vec![4]);
    }

    #[test]
    fn derivative_examples() {
        let f = fx(1).mul(&fx(2));
        assert_eq!(f.partial_derivative(1), fx(2));
        let q = fx(1).div(&fx(2)).unwrap();
        assert_eq!(q.partial_derivative(2), frac(-x(1), &x(2) * &x(2)));
        assert_eq!(q.partial_derivative(3), Fraction::zero());
        assert_eq!(
            Fraction::zero().partial_derivative(1).to_string(),
            "(0)/(1)"
        );
    }

    #[test]
    fn up_to_sign() {
        let a = fx(1).sub(&fx(2));
        let b = fx(2).sub(&fx(1));
        assert!(a.equal_up_to_sign(&b));
        assert!(!fx(1).add(&fx(2)).equal_up_to_sign(&a));
        assert!(a.equal_up_to_sign(&a));
    }
}
