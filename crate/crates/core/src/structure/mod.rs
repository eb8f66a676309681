//! Derived series, solubility, normal closures, commutator subgroups,
//! soluble radicals, p-closure and subgroup cores.

mod pclosed;
mod radical;
mod series;

pub use pclosed::{core_of_subgroup, is_p_closed, non_mersenne_prime_in_range, PClosure};
pub use radical::{
    has_trivial_radical, insoluble_conjugate_pair, insoluble_two_generated, normal_subgroups,
    quotient_action, radical_gkps, soluble_radical, verify_radical, PairOracle, RadicalMethod,
};
pub use series::{
    commutator_of_subgroups, derived_series, derived_subgroup, intersection, is_soluble,
    is_soluble_pair, normal_closure, DerivedSeries,
};
