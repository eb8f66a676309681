use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::arith::{has_order, is_prime, is_prime_big, prime_divisors_u64};
use super::ecm::{ecm, rho};
use crate::config::Budget;
use crate::error::{Error, Result};

fn mobius(n: u64) -> i32 {
    let f = super::arith::factor_u64(n);
    let mut d = f.clone();
    d.dedup();
    if d.len() != f.len() {
        0
    } else if d.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The cyclotomic value `Φ_k(p)`.
pub fn cyclotomic_value(p: u64, k: u64) -> BigUint {
    let (mut num, mut den) = (BigUint::one(), BigUint::one());
    let pb = BigUint::from(p);
    for d in (1..=k).filter(|d| k.is_multiple_of(*d)) {
        let term = pb.pow(d as u32) - BigUint::one();
        match mobius(k / d) {
            1 => num *= term,
            -1 => den *= term,
            _ => {}
        }
    }
    num / den
}

/// Product of the primitive prime divisors of `p^k − 1` (with multiplicity):
/// `Φ_k(p)` with every prime factor of `k` removed. Equal to 1 exactly when
/// no primitive prime divisor exists.
pub fn primitive_part(p: u64, k: u64) -> BigUint {
    let mut phi = cyclotomic_value(p, k);
    for l in prime_divisors_u64(k) {
        let lb = BigUint::from(l);
        while !phi.is_zero() && (&phi % &lb).is_zero() {
            phi /= &lb;
        }
    }
    phi
}

/// Smallest primitive prime divisor of `p^k − 1`, or `None` when there is
/// none (`k = 2` with `p` Mersenne, and `(p, k) = (2, 6)`).
///
/// Candidates `r ≡ 1 (mod k)` below the search bound are tested directly;
/// past the bound the remaining primitive part is split by Pollard rho and
/// then the elliptic curve method. If both fail the answer is reported as a
/// budget error.
pub fn zsigmondy(p: u64, k: u64, budget: &Budget) -> Result<Option<BigUint>> {
    if !is_prime(p) {
        return Err(Error::InvalidParameters(format!("{p} is not prime")));
    }
    if k < 2 {
        return Err(Error::InvalidParameters(format!(
            "exponent {k} must be at least 2"
        )));
    }
    let star = primitive_part(p, k);
    if star.is_one() {
        return Ok(None);
    }
    if is_prime_big(&star) {
        return Ok(Some(star));
    }
    let mut r = k + 1;
    while r < budget.ppd_search_bound {
        if is_prime(r) && has_order(p % r, k, r) {
            return Ok(Some(BigUint::from(r)));
        }
        r += k;
    }
    smallest_factor(&star, budget).map(Some)
}

fn smallest_factor(n: &BigUint, budget: &Budget) -> Result<BigUint> {
    if is_prime_big(n) {
        return Ok(n.clone());
    }
    let d = rho(n, budget.rho_iterations)
        .or_else(|| ecm(n, budget.ecm_curves))
        .ok_or_else(|| {
            Error::budget(
                "primitive prime divisor factoring",
                format!("{} bits", n.bits()),
                format!(
                    "{} rho steps and {} curves",
                    budget.rho_iterations, budget.ecm_curves
                ),
            )
        })?;
    let a = smallest_factor(&d, budget)?;
    let b = smallest_factor(&(n / &d), budget)?;
    Ok(a.min(b))
}

/// Checks the defining property of a primitive prime divisor directly.
pub fn is_primitive_divisor(r: &BigUint, p: u64, k: u64) -> bool {
    if !is_prime_big(r) {
        return false;
    }
    let pb = BigUint::from(p);
    if !pb.modpow(&BigUint::from(k), r).is_one() {
        return false;
    }
    let mut pi = BigUint::one();
    for _ in 1..k {
        pi = (pi * &pb) % r;
        if pi.is_one() {
            return false;
        }
    }
    true
}

/// Residue of `r` modulo `k`, for the `r ≡ 1 (mod k)` check.
pub fn residue(r: &BigUint, k: u64) -> u64 {
    (r % k).to_u64().unwrap_or(0)
}
