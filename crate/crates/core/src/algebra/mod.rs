//! Exact scalar, polynomial, fraction and matrix arithmetic.

pub mod cyclotomic;
pub mod frac;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod rat;
pub mod text;

pub use cyclotomic::{cyc_arith, CycNum};
pub use frac::{frac_arith, frac_reduce, RatFrac};
pub use matrix::{solve_cramer, Matrix, Ring};
pub use poly::{poly_arith, MPoly, Monomial};
pub use rat::{rat_arith, Rat};

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible conductors {0} and {1}; lift explicitly")]
    ConductorMismatch(u32, u32),
    #[error("unsupported conductor {0}")]
    UnsupportedConductor(u32),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported operation: {0}")]
    Unsupported(&'static str),
}
