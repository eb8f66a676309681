use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use super::series::{closure_under, intersection};
use crate::config::Budget;
use crate::error::{Error, Result};
use crate::liearith::arith::{is_mersenne_prime, is_prime};
use crate::permcore::{conjugate_subgroup, PermGroup, Permutation};

/// Outcome of a p-closure test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PClosure {
    /// The p-elements generate a p-group: the Sylow p-subgroup is normal.
    Closed,
    NotClosed,
    /// `p` does not divide the order; closed in the trivial sense.
    Vacuous,
}

impl PClosure {
    pub fn holds(self) -> bool {
        self != PClosure::NotClosed
    }
}

/// Does `H` have a normal Sylow `p`-subgroup?
pub fn is_p_closed(h: &PermGroup, p: u64, budget: &Budget) -> Result<PClosure> {
    if !is_prime(p) {
        return Err(Error::InvalidParameters(format!("{p} is not prime")));
    }
    let order = h.order();
    let pb = BigUint::from(p);
    if !(order % &pb).is_zero() {
        return Ok(PClosure::Vacuous);
    }
    let gens: Vec<Permutation> = h.nontrivial_generators().cloned().collect();
    let closed = if !(order % (&pb * &pb)).is_zero() {
        // Sylow subgroup of order p: it is normal iff the normal closure of
        // one element of order p has order p.
        let mut x = None;
        h.for_each_element(|g| {
            let o = g.order();
            if o % p as u128 == 0 {
                x = Some(g.pow((o / p as u128) as i64));
                false
            } else {
                true
            }
        });
        let x = x.expect("Cauchy: an element of order p exists");
        *closure_under(h.degree(), &gens, vec![x]).order() == pb
    } else {
        let els = h.elements(budget)?;
        let mut k = PermGroup::trivial(h.degree());
        for i in 1..els.len() {
            let g = els.perm(i);
            if g.is_p_element(p) && !k.contains_unchecked(&g) {
                k.extend_unchecked(g);
            }
        }
        is_p_power(k.order(), &pb)
    };
    Ok(if closed {
        PClosure::Closed
    } else {
        PClosure::NotClosed
    })
}

fn is_p_power(n: &BigUint, p: &BigUint) -> bool {
    let mut n = n.clone();
    while (&n % p).is_zero() {
        n /= p;
    }
    n.is_one()
}

/// Smallest prime `p` with `n/2 < p ≤ n` that is not of the form `2^k − 1`.
pub fn non_mersenne_prime_in_range(n: u64) -> Option<u64> {
    (n / 2 + 1..=n).find(|&p| is_prime(p) && !is_mersenne_prime(p))
}

/// Largest normal subgroup of `G` inside `A`.
pub fn core_of_subgroup(g: &PermGroup, a: &PermGroup, budget: &Budget) -> Result<PermGroup> {
    if !a.is_subgroup_of(g) {
        return Err(Error::NotASubgroup("A is not contained in G".into()));
    }
    let mut core = a.clone();
    loop {
        let mut changed = false;
        for s in g.nontrivial_generators() {
            let conj = conjugate_subgroup(&core, s)?;
            if !core.is_subgroup_of(&conj) {
                core = intersection(&core, &conj, budget)?;
                changed = true;
            }
        }
        if !changed {
            return Ok(core);
        }
    }
}
