//! Invariant derivations `d_i` with `d_i(e_j) = delta_ij`.
//!
//! With `M_ij = d e_i / d x_j`, the system `M F_i = E_i` is solved by
//! Cramer's rule and `d_i = sum_k f_ik d_k`. Every coefficient has the
//! denominator `J' = det M`.

mod diffop;
mod generators;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::groups::GroupError;
use crate::invariants::InvariantError;

pub use diffop::{DiffOp, MAX_ORDER};
pub use generators::{
    build_weyl_generators, verify_generators, verify_operators, CheckReport, VerificationReport, WeylGenerators,
};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum WeylError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("operator order {order} exceeds the supported maximum {cap}")]
    OrderCap { order: u32, cap: u32 },
    #[error("the Jacobian matrix is singular")]
    SingularJacobian,
    #[error("verification failed: {}", .0.summary())]
    VerificationFailed(Box<VerificationReport>),
}
