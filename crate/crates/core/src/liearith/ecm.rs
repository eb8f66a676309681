//! Splitting large composites: Pollard–Brent rho and Lenstra's elliptic
//! curve method on Montgomery curves `By² = x³ + Ax² + x` (x-only
//! arithmetic, Suyama parametrization, baby-step giant-step second stage).
//!
//! Both run over fixed-width Montgomery residues when the modulus fits in
//! 512 bits, over `BigUint` otherwise.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::arith::primes_up_to;

/// Arithmetic modulo an odd `n`. Elements may be stored in any
/// representation `x ↦ x·R` with `gcd(R, n) = 1`, so gcds with `n` are
/// unaffected.
trait ModRing {
    type E: Clone;
    fn modulus(&self) -> &BigUint;
    fn lift(&self, x: &BigUint) -> Self::E;
    fn raw(&self, x: &Self::E) -> BigUint;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;

    fn gcd_n(&self, a: &Self::E) -> BigUint {
        self.raw(a).gcd(self.modulus())
    }
}

struct BigRing<'a> {
    n: &'a BigUint,
}

impl ModRing for BigRing<'_> {
    type E = BigUint;
    fn modulus(&self) -> &BigUint {
        self.n
    }
    fn lift(&self, x: &BigUint) -> BigUint {
        x % self.n
    }
    fn raw(&self, x: &BigUint) -> BigUint {
        x.clone()
    }
    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % self.n
    }
    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        let s = a + b;
        if &s >= self.n {
            s - self.n
        } else {
            s
        }
    }
    fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a >= b {
            a - b
        } else {
            a + self.n - b
        }
    }
    fn is_zero(&self, a: &BigUint) -> bool {
        a.is_zero()
    }
}

/// Montgomery residues in `N` 64-bit limbs, `R = 2^(64N)`.
struct Mont<const N: usize> {
    n: [u64; N],
    ninv: u64,
    r2: [u64; N],
    big: BigUint,
}

fn limbs<const N: usize>(x: &BigUint) -> [u64; N] {
    let mut out = [0u64; N];
    for (o, d) in out.iter_mut().zip(x.iter_u64_digits()) {
        *o = d;
    }
    out
}

impl<const N: usize> Mont<N> {
    fn new(n: &BigUint) -> Self {
        let n_l = limbs::<N>(n);
        // Newton iteration for n⁻¹ mod 2^64
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(n_l[0].wrapping_mul(inv)));
        }
        let r2 = (BigUint::one() << (128 * N)) % n;
        Mont {
            n: n_l,
            ninv: inv.wrapping_neg(),
            r2: limbs(&r2),
            big: n.clone(),
        }
    }

    fn geq_n(&self, t: &[u64; N]) -> bool {
        for i in (0..N).rev() {
            if t[i] != self.n[i] {
                return t[i] > self.n[i];
            }
        }
        true
    }

    fn sub_n(&self, t: &mut [u64; N]) {
        let mut borrow = 0u64;
        for i in 0..N {
            let (d1, b1) = t[i].overflowing_sub(self.n[i]);
            let (d2, b2) = d1.overflowing_sub(borrow);
            t[i] = d2;
            borrow = (b1 | b2) as u64;
        }
    }

    fn redc_mul(&self, a: &[u64; N], b: &[u64; N]) -> [u64; N] {
        let mut t = [0u64; N];
        let mut top: u64 = 0;
        for &bi in b.iter() {
            let mut c: u128 = 0;
            for j in 0..N {
                let s = t[j] as u128 + (a[j] as u128) * (bi as u128) + c;
                t[j] = s as u64;
                c = s >> 64;
            }
            let s = top as u128 + c;
            top = s as u64;
            let top2 = (s >> 64) as u64;
            let m = t[0].wrapping_mul(self.ninv);
            let s = t[0] as u128 + (m as u128) * (self.n[0] as u128);
            let mut c = s >> 64;
            for j in 1..N {
                let s = t[j] as u128 + (m as u128) * (self.n[j] as u128) + c;
                t[j - 1] = s as u64;
                c = s >> 64;
            }
            let s = top as u128 + c;
            t[N - 1] = s as u64;
            top = top2 + (s >> 64) as u64;
        }
        if top != 0 || self.geq_n(&t) {
            self.sub_n(&mut t);
        }
        t
    }
}

impl<const N: usize> ModRing for Mont<N> {
    type E = [u64; N];
    fn modulus(&self) -> &BigUint {
        &self.big
    }
    fn lift(&self, x: &BigUint) -> [u64; N] {
        self.redc_mul(&limbs(&(x % &self.big)), &self.r2)
    }
    fn raw(&self, x: &[u64; N]) -> BigUint {
        let mut out = BigUint::zero();
        for &d in x.iter().rev() {
            out = (out << 64u32) + BigUint::from(d);
        }
        out
    }
    fn mul(&self, a: &[u64; N], b: &[u64; N]) -> [u64; N] {
        self.redc_mul(a, b)
    }
    fn add(&self, a: &[u64; N], b: &[u64; N]) -> [u64; N] {
        let mut t = [0u64; N];
        let mut carry = 0u64;
        for i in 0..N {
            let (s1, c1) = a[i].overflowing_add(b[i]);
            let (s2, c2) = s1.overflowing_add(carry);
            t[i] = s2;
            carry = (c1 | c2) as u64;
        }
        if carry != 0 || self.geq_n(&t) {
            self.sub_n(&mut t);
        }
        t
    }
    fn sub(&self, a: &[u64; N], b: &[u64; N]) -> [u64; N] {
        let mut t = [0u64; N];
        let mut borrow = 0u64;
        for i in 0..N {
            let (d1, b1) = a[i].overflowing_sub(b[i]);
            let (d2, b2) = d1.overflowing_sub(borrow);
            t[i] = d2;
            borrow = (b1 | b2) as u64;
        }
        if borrow != 0 {
            let mut carry = 0u64;
            for i in 0..N {
                let (s1, c1) = t[i].overflowing_add(self.n[i]);
                let (s2, c2) = s1.overflowing_add(carry);
                t[i] = s2;
                carry = (c1 | c2) as u64;
            }
        }
        t
    }
    fn is_zero(&self, a: &[u64; N]) -> bool {
        a.iter().all(|&d| d == 0)
    }
}

/// Runs `$body` with `$r` bound to the narrowest ring that holds `$n`.
macro_rules! with_ring {
    ($n:expr, $r:ident => $body:expr) => {{
        let n: &BigUint = $n;
        match n.bits() {
            0..=127 => {
                let $r = Mont::<2>::new(n);
                $body
            }
            128..=191 => {
                let $r = Mont::<3>::new(n);
                $body
            }
            192..=255 => {
                let $r = Mont::<4>::new(n);
                $body
            }
            256..=319 => {
                let $r = Mont::<5>::new(n);
                $body
            }
            320..=511 => {
                let $r = Mont::<8>::new(n);
                $body
            }
            _ => {
                let $r = BigRing { n };
                $body
            }
        }
    }};
}

fn nontrivial(g: BigUint, n: &BigUint) -> Option<BigUint> {
    (!g.is_one() && &g != n && !g.is_zero()).then_some(g)
}

/// Pollard–Brent rho on an odd composite, at most `iterations` steps for
/// each of four increments.
pub fn rho(n: &BigUint, iterations: u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    with_ring!(n, r => rho_in(&r, iterations))
}

fn rho_in<R: ModRing>(r: &R, iterations: u64) -> Option<BigUint> {
    let n = r.modulus();
    const M: u64 = 128;
    for c in 1u32..=4 {
        let c = r.lift(&BigUint::from(c));
        let f = |x: &R::E| r.add(&r.mul(x, x), &c);
        let mut y = r.lift(&BigUint::from(2u32));
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = r.lift(&BigUint::one());
        let mut g = BigUint::one();
        let (mut len, mut spent) = (1u64, 0u64);
        while g.is_one() && spent < iterations {
            x = y.clone();
            for _ in 0..len {
                y = f(&y);
            }
            let mut k = 0;
            while k < len && g.is_one() {
                ys = y.clone();
                for _ in 0..M.min(len - k) {
                    y = f(&y);
                    q = r.mul(&q, &r.sub(&x, &y));
                }
                g = r.gcd_n(&q);
                k += M;
                spent += M;
            }
            len *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = r.gcd_n(&r.sub(&x, &ys));
                if !g.is_one() {
                    break;
                }
            }
        }
        if let Some(d) = nontrivial(g, n) {
            return Some(d);
        }
    }
    None
}

#[derive(Clone)]
struct Pt<E> {
    x: E,
    z: E,
}

struct Curve<'a, R: ModRing> {
    r: &'a R,
    a24: R::E,
}

impl<R: ModRing> Curve<'_, R> {
    fn dbl(&self, p: &Pt<R::E>) -> Pt<R::E> {
        let r = self.r;
        let s = r.add(&p.x, &p.z);
        let d = r.sub(&p.x, &p.z);
        let s2 = r.mul(&s, &s);
        let d2 = r.mul(&d, &d);
        let t = r.sub(&s2, &d2);
        let x = r.mul(&s2, &d2);
        let z = r.mul(&t, &r.add(&d2, &r.mul(&self.a24, &t)));
        Pt { x, z }
    }

    /// `p + q` given `p − q`.
    fn add(&self, p: &Pt<R::E>, q: &Pt<R::E>, diff: &Pt<R::E>) -> Pt<R::E> {
        let r = self.r;
        let u = r.mul(&r.sub(&p.x, &p.z), &r.add(&q.x, &q.z));
        let v = r.mul(&r.add(&p.x, &p.z), &r.sub(&q.x, &q.z));
        let s = r.add(&u, &v);
        let d = r.sub(&u, &v);
        let x = r.mul(&diff.z, &r.mul(&s, &s));
        let z = r.mul(&diff.x, &r.mul(&d, &d));
        Pt { x, z }
    }

    fn ladder(&self, p: &Pt<R::E>, k: u64) -> Pt<R::E> {
        if k == 1 {
            return p.clone();
        }
        let (mut lo, mut hi) = (p.clone(), self.dbl(p));
        for bit in (0..63 - k.leading_zeros()).rev() {
            if (k >> bit) & 1 == 1 {
                lo = self.add(&hi, &lo, p);
                hi = self.dbl(&hi);
            } else {
                hi = self.add(&hi, &lo, p);
                lo = self.dbl(&lo);
            }
        }
        lo
    }
}

struct PrimeTable {
    primes: Vec<u64>,
    sieve: Vec<bool>,
    b2: u64,
}

impl PrimeTable {
    fn new(b2: u64) -> Self {
        let primes = primes_up_to(b2);
        let mut sieve = vec![false; b2 as usize + 1];
        for &p in &primes {
            sieve[p as usize] = true;
        }
        PrimeTable { primes, sieve, b2 }
    }
}

/// One curve with Suyama parameter `sigma`: a proper divisor of `n` or `None`.
fn curve_with<R: ModRing>(r: &R, sigma: u64, b1: u64, table: &PrimeTable) -> Option<BigUint> {
    let n = r.modulus();
    let b2 = table.b2;
    let big = BigRing { n };
    let sg = BigUint::from(sigma) % n;
    let u = big.sub(&big.mul(&sg, &sg), &BigUint::from(5u32));
    let v = big.mul(&BigUint::from(4u32), &sg);
    let u3 = big.mul(&big.mul(&u, &u), &u);
    let vmu = big.sub(&v, &u);
    let num = big.mul(
        &big.mul(&big.mul(&vmu, &vmu), &vmu),
        &big.add(&big.mul(&BigUint::from(3u32), &u), &v),
    );
    let den = big.mul(&big.mul(&BigUint::from(16u32), &u3), &v);
    let g = den.gcd(n);
    if !g.is_one() {
        return nontrivial(g, n);
    }
    let inv = den.modinv(n)?;
    let a24 = r.lift(&((num * inv) % n));
    let curve = Curve { r, a24 };
    let mut q = Pt {
        x: r.lift(&u3),
        z: r.lift(&big.mul(&big.mul(&v, &v), &v)),
    };

    for &p in table.primes.iter().take_while(|&&p| p <= b1) {
        let mut pe = p;
        while pe <= b1 / p {
            pe *= p;
        }
        q = curve.ladder(&q, pe);
    }
    if let Some(g) = nontrivial(r.gcd_n(&q.z), n) {
        return Some(g);
    }
    if r.is_zero(&q.z) || b2 <= b1 {
        return None;
    }

    // Stage 2: primes b1 < ℓ ≤ b2 written as ℓ = m·D ± j.
    const D: u64 = 210;
    let baby_idx: Vec<u64> = (1..D / 2).step_by(2).filter(|j| j.gcd(&D) == 1).collect();
    let q2 = curve.dbl(&q);
    let mut baby: Vec<Option<Pt<R::E>>> = vec![None; (D / 2) as usize];
    let mut prev = q.clone();
    let mut cur = curve.add(&q2, &q, &q);
    baby[1] = Some(prev.clone());
    let mut j = 3;
    while j < D / 2 {
        baby[j as usize] = Some(cur.clone());
        let next = curve.add(&cur, &q2, &prev);
        prev = cur;
        cur = next;
        j += 2;
    }
    let qd = curve.ladder(&q, D);
    let m0 = (b1 / D).max(1);
    let mut g_prev = if m0 == 1 {
        None
    } else {
        Some(curve.ladder(&q, (m0 - 1) * D))
    };
    let mut g_cur = curve.ladder(&q, m0 * D);
    let mut acc = r.lift(&BigUint::one());
    let hit = |l: u64| l > b1 && l <= b2 && table.sieve[l as usize];
    let mut m = m0;
    while m * D <= b2 + D {
        let base = m * D;
        for &j in &baby_idx {
            if hit(base + j) || (base > j && hit(base - j)) {
                let b = baby[j as usize].as_ref().expect("baby step");
                let t = r.sub(&r.mul(&g_cur.x, &b.z), &r.mul(&b.x, &g_cur.z));
                acc = r.mul(&acc, &t);
            }
        }
        let next = match &g_prev {
            None => curve.dbl(&g_cur),
            Some(gp) => curve.add(&g_cur, &qd, gp),
        };
        g_prev = Some(std::mem::replace(&mut g_cur, next));
        m += 1;
    }
    nontrivial(r.gcd_n(&acc), n)
}

/// Runs up to `curves` curves with a rising smoothness bound. Curve `i`
/// uses `sigma = 6 + i`, so the search is deterministic.
pub fn ecm(n: &BigUint, curves: u32) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    with_ring!(n, r => ecm_in(&r, curves))
}

fn ecm_in<R: ModRing>(r: &R, curves: u32) -> Option<BigUint> {
    let mut table: Option<PrimeTable> = None;
    for i in 0..curves {
        let b1 = match i {
            0..8 => 2_000,
            8..40 => 11_000,
            _ => 50_000,
        };
        if table.as_ref().is_none_or(|t| t.b2 != 100 * b1) {
            table = Some(PrimeTable::new(100 * b1));
        }
        if let Some(d) = curve_with(r, 6 + i as u64, b1, table.as_ref().expect("table built")) {
            return Some(d);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn is_proper_divisor(d: &BigUint, n: &BigUint) -> bool {
        d > &BigUint::one() && d < n && (n % d).is_zero()
    }

    #[test]
    fn ecm_splits_semiprimes() {
        // 2^31 − 1 times 2^61 − 1
        let n = BigUint::from(2_147_483_647u64) * BigUint::from(2_305_843_009_213_693_951u64);
        assert!(is_proper_divisor(&ecm(&n, 60).unwrap(), &n));
        // the same through the BigUint ring
        let d = ecm_in(&BigRing { n: &n }, 60).unwrap();
        assert!(is_proper_divisor(&d, &n));
    }

    #[test]
    fn rho_splits_small_factors() {
        let big = BigUint::from(1_000_000_007u64)
            * BigUint::from(998_244_353u64)
            * BigUint::from(1_000_000_009u64);
        assert!(is_proper_divisor(&rho(&big, 1_000_000).unwrap(), &big));
        let wide = (BigUint::one() << 300u32) + BigUint::from(1u32);
        assert!(is_proper_divisor(&rho(&wide, 100_000).unwrap(), &wide));
    }

    #[test]
    fn ladder_matches_repeated_addition() {
        let n = BigUint::from(1_000_000_007u64);
        let r = BigRing { n: &n };
        let c = Curve {
            r: &r,
            a24: BigUint::from(12345u32),
        };
        let p = Pt {
            x: BigUint::from(7u32),
            z: BigUint::one(),
        };
        let proj = |a: &Pt<BigUint>| (&a.x * a.z.modinv(&n).unwrap()) % &n;
        let mut prev = p.clone();
        let mut cur = c.dbl(&p);
        for k in 3..40u64 {
            let next = c.add(&cur, &p, &prev);
            prev = cur;
            cur = next;
            assert_eq!(proj(&cur), proj(&c.ladder(&p, k)), "k={k}");
        }
    }

    fn odd_modulus(limbs: Vec<u64>) -> BigUint {
        let mut n = BigUint::zero();
        for d in limbs {
            n = (n << 64u32) + BigUint::from(d);
        }
        n | BigUint::one()
    }

    proptest! {
        #[test]
        fn montgomery_agrees_with_biguint(
            nl in proptest::collection::vec(any::<u64>(), 3),
            al in proptest::collection::vec(any::<u64>(), 3),
            bl in proptest::collection::vec(any::<u64>(), 3),
        ) {
            let n = odd_modulus(nl);
            prop_assume!(n.bits() > 128);
            let a = odd_modulus(al) % &n;
            let b = odd_modulus(bl) % &n;
            let m = Mont::<3>::new(&n);
            let big = BigRing { n: &n };
            let back = |x: &[u64; 3]| m.raw(&m.mul(x, &limbs(&BigUint::one())));
            let (ma, mb) = (m.lift(&a), m.lift(&b));
            prop_assert_eq!(back(&m.mul(&ma, &mb)), big.mul(&a, &b));
            prop_assert_eq!(back(&m.add(&ma, &mb)), big.add(&a, &b));
            prop_assert_eq!(back(&m.sub(&ma, &mb)), big.sub(&a, &b));
        }
    }
}
