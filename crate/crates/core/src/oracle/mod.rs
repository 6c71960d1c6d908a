//! Independent brute-force validation path.
//!
//! `dense` builds finite sections of the operators entry by entry from the
//! basis action with plain integer arithmetic and never touches the
//! rational-function machinery; `check` compares those sections against the
//! banded calculus.

mod check;
mod dense;

pub use check::{consistency_check_pair, consistency_check_symbol, MismatchReport};
pub use dense::{max_positive_shift, oracle_matrix, oracle_product_safe, DenseMatrix};
