//! Formal fractions of polynomials.
//!
//! There is no multivariate gcd here: a `RatFrac` is a pair `num/den` and two
//! fractions are equal when `num1 * den2 = num2 * den1`. `reduce` removes the
//! cheap common factors (scalars, monomials, known linear forms).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::cyclotomic::CycNum;
use super::poly::MPoly;
use super::{AlgebraError, ArithOp};

#[derive(Clone, Debug)]
pub struct RatFrac {
    num: MPoly,
    den: MPoly,
}

impl RatFrac {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self, AlgebraError> {
        if num.nvars() != den.nvars() {
            return Err(AlgebraError::ArityMismatch { expected: num.nvars(), found: den.nvars() });
        }
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            let n = num.nvars();
            return RatFrac { num, den: MPoly::one(n) };
        }
        RatFrac { num, den }
    }

    pub fn from_poly(p: MPoly) -> Self {
        let n = p.nvars();
        RatFrac { num: p, den: MPoly::one(n) }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(MPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(MPoly::one(nvars))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn into_parts(self) -> (MPoly, MPoly) {
        (self.num, self.den)
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.den == other.den {
            let num = self.num.checked_add(&other.num)?;
            return Ok(Self::normalized(num, self.den.clone()));
        }
        if let Some(c) = other.den.scalar_ratio(&self.den) {
            // other.den = c * self.den
            let num = self.num.checked_add(&other.num.scale(&c.inverse()?))?;
            return Ok(Self::normalized(num, self.den.clone()));
        }
        let num = self.num.checked_mul(&other.den)?.checked_add(&other.num.checked_mul(&self.den)?)?;
        Ok(Self::normalized(num, self.den.checked_mul(&other.den)?))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.nvars() != other.nvars() {
            return Err(AlgebraError::ArityMismatch { expected: self.nvars(), found: other.nvars() });
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars()));
        }
        let num = self.num.checked_mul(&other.num)?;
        let den = match (self.den.is_constant(), other.den.is_constant()) {
            (true, true) | (false, true) => self.den.scale(&other.den.constant_coeff()),
            (true, false) => other.den.scale(&self.den.constant_coeff()),
            (false, false) => self.den.checked_mul(&other.den)?,
        };
        Ok(Self::normalized(num, den))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        if other.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let inv = RatFrac { num: other.den.clone(), den: other.num.clone() };
        self.checked_mul(&inv)
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    pub fn mul_poly(&self, p: &MPoly) -> Self {
        Self::normalized(&self.num * p, self.den.clone())
    }

    /// Quotient rule.
    pub fn partial(&self, j: usize) -> Self {
        if self.den.is_constant() {
            return Self::normalized(self.num.partial(j), self.den.clone());
        }
        let dn = self.num.partial(j);
        let dd = self.den.partial(j);
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Self::normalized(num, &self.den * &self.den)
    }

    /// Applies a substitution to numerator and denominator; fails if the
    /// denominator is sent to zero.
    pub fn substitute(&self, images: &[MPoly]) -> Result<Self, AlgebraError> {
        let num = self.num.substitute(images)?;
        let den = self.den.substitute(images)?;
        Self::new(num, den)
    }

    /// Best-effort simplification; the result is always equal to the input.
    pub fn reduce(&self) -> Self {
        self.reduce_with(&[])
    }

    /// Like `reduce`, additionally trial-dividing by the given factors.
    pub fn reduce_with(&self, factors: &[MPoly]) -> Self {
        let n = self.nvars();
        if self.num.is_zero() {
            return Self::zero(n);
        }
        let lc = self.den.leading_term().map(|(_, c)| c.clone()).expect("nonzero denominator");
        let lc_inv = lc.inverse().expect("nonzero leading coefficient");
        let mut num = self.num.scale(&lc_inv);
        let mut den = self.den.scale(&lc_inv);

        let g = num.monomial_content();
        let h = den.monomial_content();
        let common = super::poly::Monomial(g.0.iter().zip(&h.0).map(|(a, b)| *a.min(b)).collect());
        if common.degree() > 0 {
            num = num.div_monomial(&common);
            den = den.div_monomial(&common);
        }

        for f in factors {
            if f.is_constant() || f.nvars() != n {
                continue;
            }
            while !den.is_constant() {
                match (den.div_exact(f), num.div_exact(f)) {
                    (Some(d), Some(q)) => {
                        den = d;
                        num = q;
                    }
                    _ => break,
                }
            }
        }

        if !den.is_constant() {
            if let Some(q) = num.div_exact(&den) {
                return Self::from_poly(q);
            }
            if !num.is_constant() {
                if let Some(q) = den.div_exact(&num) {
                    let c = q.leading_term().map(|(_, c)| c.clone()).unwrap();
                    let c_inv = c.inverse().expect("nonzero");
                    return RatFrac { num: MPoly::constant(n, c_inv.clone()), den: q.scale(&c_inv) };
                }
            }
        }
        if den.is_constant() {
            let c = den.constant_coeff().inverse().expect("nonzero");
            return Self::from_poly(num.scale(&c));
        }
        RatFrac { num, den }
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.den.is_constant() && self.den.constant_coeff().is_one() {
            return self.num.to_string_with(names);
        }
        format!("({})/({})", self.num.to_string_with(names), self.den.to_string_with(names))
    }
}

/// `a op b`; dividing by a fraction with zero numerator is an error.
pub fn frac_arith(a: &RatFrac, b: &RatFrac, op: ArithOp) -> Result<RatFrac, AlgebraError> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

pub fn frac_reduce(a: &RatFrac) -> RatFrac {
    a.reduce()
}

impl PartialEq for RatFrac {
    fn eq(&self, other: &Self) -> bool {
        if self.nvars() != other.nvars() {
            return false;
        }
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.den == other.den {
            return self.num == other.num;
        }
        if let Some(c) = other.den.scalar_ratio(&self.den) {
            return other.num == self.num.scale(&c);
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFrac {}

impl fmt::Display for RatFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = super::poly::default_var_names("x", self.nvars());
        f.write_str(&self.to_string_with(&names))
    }
}

macro_rules! forward_frac_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&RatFrac> for &RatFrac {
            type Output = RatFrac;
            fn $method(self, rhs: &RatFrac) -> RatFrac {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<RatFrac> for RatFrac {
            type Output = RatFrac;
            fn $method(self, rhs: RatFrac) -> RatFrac {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_frac_binop!(Add, add, checked_add);
forward_frac_binop!(Sub, sub, checked_sub);
forward_frac_binop!(Mul, mul, checked_mul);

impl Neg for &RatFrac {
    type Output = RatFrac;
    fn neg(self) -> RatFrac {
        RatFrac { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFrac {
    type Output = RatFrac;
    fn neg(self) -> RatFrac {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        MPoly::parse(s, 2, 1).unwrap()
    }

    fn f(n: &str, d: &str) -> RatFrac {
        RatFrac::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn reciprocal_product_is_one() {
        assert_eq!(&f("x1", "x2") * &f("x2", "x1"), RatFrac::one(2));
    }

    #[test]
    fn additive_identity_and_antisymmetry() {
        let a = f("x1^2 + 3", "x1 - x2");
        assert_eq!(&a + &RatFrac::zero(2), a);
        let s = &f("1", "x1 - x2") + &f("1", "x2 - x1");
        assert_eq!(s, RatFrac::zero(2));
        assert!(s.is_zero());
    }

    #[test]
    fn zero_denominators_are_rejected() {
        assert_eq!(RatFrac::new(p("x1"), MPoly::zero(2)).unwrap_err(), AlgebraError::DivisionByZero);
        assert_eq!(frac_arith(&f("x1", "1"), &RatFrac::zero(2), ArithOp::Div), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn reduce_examples() {
        let r = frac_reduce(&f("2*x1^2", "2*x1"));
        assert_eq!(r.num(), &p("x1"));
        assert!(r.den().constant_coeff().is_one() && r.den().is_constant());

        let g = f("x1^2 - x2^2", "x1 - x2");
        let r = g.reduce_with(&[p("x1 - x2")]);
        assert_eq!(r.num(), &p("x1 + x2"));
        assert!(r.is_polynomial());
        // Oracle: cross-multiplication against the unreduced input.
        assert_eq!(r.num() * g.den(), g.num() * r.den());

        let z = frac_reduce(&f("0", "x1 + 5"));
        assert!(z.is_zero());
        assert!(z.den().constant_coeff().is_one());

        // A fraction with no discoverable common factor stays equal.
        let h = f("x1 + x2", "x1 - x2");
        assert_eq!(h.reduce(), h);
    }

    #[test]
    fn quotient_rule() {
        // d/dx1 (x1 / (x1 - x2)) = -x2 / (x1 - x2)^2
        let d = f("x1", "x1 - x2").partial(0);
        assert_eq!(d, f("-x2", "x1^2 - 2*x1*x2 + x2^2"));
    }
}
