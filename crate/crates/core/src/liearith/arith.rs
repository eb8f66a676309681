//! Integer helpers: primality, factoring, valuations, modular powers.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const BIG_BASES: [u32; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Primality for big integers: exact below 2⁶⁴, strong-probable-prime to 20
/// fixed bases above (deterministic below 3.3·10²⁴).
pub fn is_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for a in BIG_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Exponent of `p` in `n` (with `v_p(0)` reported as 0).
pub fn valuation(n: &BigUint, p: u64) -> u32 {
    if n.is_zero() || p < 2 {
        return 0;
    }
    let p = BigUint::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub fn valuation_u64(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// `(p, e)` with `q = p^e`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = smallest_prime_factor(q);
    let e = valuation_u64(q, p);
    (p.checked_pow(e) == Some(q)).then_some((p, e))
}

fn smallest_prime_factor(n: u64) -> u64 {
    factor_u64(n).first().copied().unwrap_or(n)
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_divisors_u64(n: u64) -> Vec<u64> {
    let mut f = factor_u64(n);
    f.dedup();
    f
}

/// Prime factors with multiplicity, ascending.
pub fn factor_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while n.is_multiple_of(p) {
            out.push(p);
            n /= p;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            out.push(m);
            continue;
        }
        let d = (1..).find_map(|c| rho_u64(m, c)).unwrap();
        stack.push(d);
        stack.push(m / d);
    }
    out.sort_unstable();
    out
}

/// One Pollard–Brent attempt with increment `c`; `None` on failure.
fn rho_u64(n: u64, c: u64) -> Option<u64> {
    if n.is_multiple_of(2) {
        return Some(2);
    }
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
    let mut steps = 0u64;
    while d == 1 {
        x = f(x);
        y = f(f(y));
        d = x.abs_diff(y).gcd(&n);
        steps += 1;
        if steps > 1 << 20 {
            return None;
        }
    }
    (d != n).then_some(d)
}

/// Distinct prime factors of a big integer whose prime factors are all at
/// most `bound` (used for permutation group orders, where `bound` is the degree).
pub fn small_prime_divisors(n: &BigUint, bound: u64) -> Vec<u64> {
    primes_up_to(bound)
        .into_iter()
        .filter(|&p| (n % p).is_zero())
        .collect()
}

/// Multiplicative order of `a` modulo prime `r`, given that it divides `k`:
/// true iff `a^k ≡ 1` and `a^(k/ℓ) ≢ 1` for each prime `ℓ | k`.
pub fn has_order(a: u64, k: u64, r: u64) -> bool {
    if pow_mod(a, k, r) != 1 {
        return false;
    }
    prime_divisors_u64(k)
        .into_iter()
        .all(|l| pow_mod(a, k / l, r) != 1)
}

pub fn is_mersenne_prime(p: u64) -> bool {
    is_prime(p) && (p + 1).is_power_of_two()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..20_000 {
            assert_eq!(is_prime(n), trial_is_prime(n), "{n}");
        }
        assert!(is_prime(2_305_843_009_213_693_951));
        assert!(!is_prime(3_215_031_751));
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn big_primality() {
        let m127 = (BigUint::one() << 127u32) - BigUint::one();
        assert!(is_prime_big(&m127));
        let m67 = (BigUint::one() << 67u32) - BigUint::one();
        assert!(!is_prime_big(&m67));
    }

    #[test]
    fn factoring() {
        assert_eq!(factor_u64(1023), vec![3, 11, 31]);
        assert_eq!(factor_u64(600851475143), vec![71, 839, 1471, 6857]);
        let n = 4_294_967_291u64 * 4_294_967_279;
        assert_eq!(factor_u64(n), vec![4_294_967_279, 4_294_967_291]);
    }

    #[test]
    fn valuations_and_prime_powers() {
        assert_eq!(valuation(&BigUint::from(20158709760u64), 7), 2);
        assert_eq!(valuation(&BigUint::from(8u32), 2), 3);
        assert_eq!(prime_power(32), Some((2, 5)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(25), Some((5, 2)));
    }

    #[test]
    fn orders_mod_r() {
        assert!(has_order(2, 10, 11));
        assert!(!has_order(2, 10, 31));
        assert!(has_order(2, 5, 31));
        assert!(is_mersenne_prime(7) && !is_mersenne_prime(15) && !is_mersenne_prime(5));
    }
}
