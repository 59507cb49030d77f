//! Exact counting of solutions of `a_1 x_1 + ... + a_k x_k = b (mod n)` whose
//! coordinates are pairwise distinct.
//!
//! The closed form lives in [`congruence`]; [`oracle`] provides three
//! independent hypothesis-free counters and [`graph_enum`] the labeled-graph
//! tables and series identities the closed form rests on.

pub mod arith;
pub mod cli;
pub mod congruence;
mod error;
pub mod graph_enum;
pub mod oracle;

pub use arith::{ExactCount, ExactInt};
pub use congruence::{
    check_condition, distinct_count, distinct_count_formula, lehmer_count, ConditionReport,
    CongruenceInstance, Method,
};
pub use error::{Error, Result};
