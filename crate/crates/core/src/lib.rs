//! Finite permutation group computations around soluble subgroups:
//! stabilizer chains, derived series and soluble radicals, S-connection of
//! factorized groups, prime and soluble graphs, and the arithmetic of
//! classical simple groups (orders, primitive prime divisors, independence
//! certificates).

mod bigser;
pub mod config;
pub mod connection;
pub mod error;
pub mod graphs;
pub mod groupio;
pub mod liearith;
pub mod permcore;
pub mod structure;

pub use config::Budget;
pub use error::{Error, Result};
pub use permcore::{PermGroup, Permutation};
