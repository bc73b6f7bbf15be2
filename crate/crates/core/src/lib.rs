//! Exact computation of invariant Weyl generators for finite pseudo-reflection
//! groups.
//!
//! The pipeline is:
//!
//! 1. [`groups`]: build a finite matrix group over a cyclotomic field and
//!    classify its pseudo-reflections.
//! 2. [`invariants`]: fundamental invariants `e_1..e_n`, the Jacobian matrix,
//!    its determinant and the product of reflecting hyperplane forms.
//! 3. [`weyl`]: the derivations `d_i` with `d_i(e_j) = delta_ij`, obtained by
//!    Cramer's rule against the Jacobian, and their verification.
//!
//! [`crossprod`] holds the shift cross product into which the Weyl algebra embeds.

pub mod algebra;
pub mod crossprod;
pub mod groups;
pub mod invariants;
pub mod laws;
pub mod random;
pub mod report;
pub mod weyl;

pub use algebra::{AlgebraError, ArithOp, CycNum, MPoly, Matrix, RatFrac};
