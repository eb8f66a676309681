use serde::{Deserialize, Serialize};

/// Resource limits. Exceeding any of them yields [`crate::Error::Budget`],
/// never a partial or guessed answer.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Budget {
    /// Largest group order for which every element may be listed.
    pub max_enumeration_order: u64,
    /// Largest permutation degree accepted on input.
    pub max_degree: usize,
    /// Largest group order for subgroup-lattice enumeration and brute-force radicals.
    pub max_subgroup_order: u64,
    /// Largest number of (a, b) pair checks in a connection test.
    pub max_pair_checks: u64,
    /// Primes below this bound are scanned when looking for the smallest primitive divisor.
    pub ppd_search_bound: u64,
    /// Pollard rho iterations spent per composite cofactor.
    pub rho_iterations: u64,
    /// Elliptic curves tried on a cofactor that rho could not split.
    pub ecm_curves: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_enumeration_order: 2_000_000,
            max_degree: 256,
            max_subgroup_order: 2000,
            max_pair_checks: 100_000_000,
            ppd_search_bound: 1 << 22,
            rho_iterations: 200_000,
            ecm_curves: 120,
        }
    }
}

/// Hard ceiling on permutation degree: element orders are tracked in `u128`.
pub const DEGREE_CEILING: usize = 1024;
