//! Arbitrary-precision rationals.
//!
//! `Rat` is `num_rational::BigRational`, which already keeps the fraction
//! reduced with a positive denominator. This module adds the checked
//! operations and the text form shared by the rest of the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, ArithOp};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact `a op b`; division by zero is reported instead of panicking.
pub fn rat_arith(a: &Rat, b: &Rat, op: ArithOp) -> Result<Rat, AlgebraError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => {
            if b.is_zero() {
                return Err(AlgebraError::DivisionByZero);
            }
            a / b
        }
    })
}

/// Prints `a` or `a/b`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `a`, `-a`, `a/b`. Whitespace around the slash is not accepted.
pub fn parse_rat(s: &str) -> Result<Rat, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rat::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(AlgebraError::DivisionByZero);
            }
            Ok(Rat::new(n, d))
        }
    }
}

pub(crate) fn is_negative(r: &Rat) -> bool {
    r.is_negative()
}
