use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::arith::{factor_u64, is_prime_big, valuation};
use super::lie::{family_primes, Family, LieSpec};
use crate::config::Budget;
use crate::error::{Error, Result};

/// p-adic valuations of `|N|`, `|B̃ ∩ N|`, `|Out N|`, and the exponent they
/// force into `|A ∩ N|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PPartBound {
    pub p: u64,
    pub n_exp: u32,
    pub b_exp: u32,
    pub out_exp: u32,
    pub guaranteed_exp: u32,
}

/// From `|N| = |A∩N|·|B̃∩N|·|N : …|`-type counting: `p^(v_p|N| − v_p|B̃∩N| − v_p|Out|)`
/// divides `|A ∩ N|` (floored at 0).
pub fn l1_bound(
    p: u64,
    order_n: &BigUint,
    order_bcap: &BigUint,
    order_out: &BigUint,
) -> Result<PPartBound> {
    if order_n.is_zero() || order_bcap.is_zero() || order_out.is_zero() {
        return Err(Error::InvalidParameters("orders must be positive".into()));
    }
    let (n_exp, b_exp, out_exp) = (
        valuation(order_n, p),
        valuation(order_bcap, p),
        valuation(order_out, p),
    );
    let guaranteed_exp = n_exp.saturating_sub(b_exp + out_exp);
    Ok(PPartBound {
        p,
        n_exp,
        b_exp,
        out_exp,
        guaranteed_exp,
    })
}

/// One alternative in the classification of maximal soluble subgroups: the set of primes a
/// soluble subgroup containing an `r`-element may involve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseCheck {
    pub case: u8,
    /// Human-readable description of the prime set, e.g. `π(5) ∪ π(2^5−1)`.
    pub set: String,
    pub applies: bool,
    pub contains_s: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AckCertificate {
    pub spec: String,
    #[serde(serialize_with = "crate::bigser::big")]
    pub r: BigUint,
    #[serde(serialize_with = "crate::bigser::big")]
    pub s: BigUint,
    pub certified: bool,
    pub reason: String,
    pub cases: Vec<CaseCheck>,
}

/// Membership of `s` in a union of `π(x)` terms and explicit primes.
struct PiUnion<'a> {
    s: &'a BigUint,
    parts: Vec<String>,
    hit: bool,
}

impl<'a> PiUnion<'a> {
    fn new(s: &'a BigUint) -> Self {
        PiUnion {
            s,
            parts: Vec::new(),
            hit: false,
        }
    }
    fn pi(mut self, label: String, x: BigUint) -> Self {
        self.hit |= !x.is_zero() && (&x % self.s).is_zero();
        self.parts.push(format!("π({label})"));
        self
    }
    fn primes(mut self, ps: &[&BigUint]) -> Self {
        self.hit |= ps.contains(&self.s);
        let names: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
        self.parts.push(format!("{{{}}}", names.join(",")));
        self
    }
    fn finish(self, case: u8, applies: bool) -> CaseCheck {
        CaseCheck {
            case,
            set: self.parts.join(" ∪ "),
            applies,
            contains_s: self.hit,
        }
    }
}

/// Exponent `l` with `x = 2^l`, if `x` is a power of two.
fn log2_exact(x: u64) -> Option<u64> {
    x.is_power_of_two().then(|| x.trailing_zeros() as u64)
}

fn cases(spec: &LieSpec, r: &BigUint, s: &BigUint) -> Vec<CaseCheck> {
    let (n, q) = (spec.dim, spec.q);
    let qb = BigUint::from(q);
    let qp = |k: u64| qb.pow(k as u32);
    let two = BigUint::from(2u32);
    let prime_field = spec.e == 1;
    let bu = |x: u64| BigUint::from(x);
    let r_is = |x: u64| r == &bu(x);
    let mut out = Vec::new();
    match spec.family {
        Family::Linear => {
            out.push(
                PiUnion::new(s)
                    .pi(n.to_string(), bu(n))
                    .pi(format!("{q}^{n}-1"), qp(n) - 1u32)
                    .finish(1, true),
            );
            let l = log2_exact(n);
            let applies = l.is_some() && r_is(n + 1) && prime_field;
            let l = l.unwrap_or(0);
            out.push(
                PiUnion::new(s)
                    .pi(format!("{q}-1"), bu(q - 1))
                    .pi(l.to_string(), bu(l))
                    .primes(&[&two, r])
                    .finish(2, applies),
            );
        }
        Family::Unitary => {
            let applies = n % 2 == 0 && n >= 4;
            out.push(
                PiUnion::new(s)
                    .pi((n - 1).to_string(), bu(n - 1))
                    .pi(format!("{q}^{}+1", n - 1), qp(n - 1) + 1u32)
                    .finish(1, applies),
            );
        }
        Family::Symplectic | Family::OddOrthogonal | Family::MinusOrthogonal => {
            out.push(
                PiUnion::new(s)
                    .pi(n.to_string(), bu(n))
                    .pi(format!("{q}^{n}+1"), qp(n) + 1u32)
                    .primes(&[&two])
                    .finish(1, true),
            );
            let l = log2_exact(n);
            let applies = l.is_some() && r_is(2 * n + 1) && prime_field;
            let l = l.unwrap_or(0);
            out.push(
                PiUnion::new(s)
                    .pi(format!("{q}-1"), bu(q - 1))
                    .pi((l + 1).to_string(), bu(l + 1))
                    .primes(&[&two, r])
                    .finish(2, applies),
            );
        }
        Family::PlusOrthogonal => {
            out.push(
                PiUnion::new(s)
                    .pi((n - 1).to_string(), bu(n - 1))
                    .pi(format!("{q}^{}+1", n - 1), qp(n - 1) + 1u32)
                    .pi(format!("{q}+1"), bu(q + 1))
                    .primes(&[&two])
                    .finish(1, true),
            );
            let l2 = log2_exact(n - 1);
            let applies2 = l2.is_some() && r_is(2 * n - 1) && prime_field;
            let l2 = l2.unwrap_or(0);
            out.push(
                PiUnion::new(s)
                    .pi(format!("{q}^2-1"), qp(2) - 1u32)
                    .pi((l2 + 1).to_string(), bu(l2 + 1))
                    .primes(&[&two, r])
                    .finish(2, applies2),
            );
            let l3 = log2_exact(n);
            let applies3 = l3.is_some() && r_is(2 * n - 1) && prime_field;
            let l3 = l3.unwrap_or(0);
            out.push(
                PiUnion::new(s)
                    .pi(format!("{q}-1"), bu(q - 1))
                    .pi((l3 + 1).to_string(), bu(l3 + 1))
                    .primes(&[&two, r])
                    .finish(3, applies3),
            );
        }
    }
    out
}

fn decide(spec: &LieSpec, r: &BigUint, s: &BigUint, cases: Vec<CaseCheck>) -> AckCertificate {
    let applicable: Vec<&CaseCheck> = cases.iter().filter(|c| c.applies).collect();
    let (certified, reason) = if applicable.is_empty() {
        (
            false,
            format!("no maximal-soluble-subgroup case list covers {spec}"),
        )
    } else if let Some(c) = applicable.iter().find(|c| c.contains_s) {
        (false, format!("{s} lies in case {} set {}", c.case, c.set))
    } else {
        let sets: Vec<String> = applicable.iter().map(|c| c.set.clone()).collect();
        (true, format!("{s} lies outside {}", sets.join(" and ")))
    };
    AckCertificate {
        spec: spec.to_string(),
        r: r.clone(),
        s: s.clone(),
        certified,
        reason,
        cases,
    }
}

/// Independence certificate for `(r, s)` in the simple group `spec`: `r` must
/// be the family's `r` prime; certified iff `s` avoids every prime set that
/// an applicable case allows for a soluble subgroup of order divisible by `r`.
pub fn ack_certificate(
    spec: &LieSpec,
    r: &BigUint,
    s: &BigUint,
    budget: &Budget,
) -> Result<AckCertificate> {
    let expected = family_primes(spec, budget)?.r;
    match &expected {
        Some(e) if e == r => {}
        Some(e) => {
            return Err(Error::InvalidParameters(format!(
                "r = {r} but the family prime r of {spec} is {e}"
            )))
        }
        None => {
            return Err(Error::InvalidParameters(format!(
                "{spec} has no family prime r; got r = {r}"
            )))
        }
    }
    if r == s {
        return Err(Error::InvalidParameters("s must differ from r".into()));
    }
    if !is_prime_big(s) {
        return Err(Error::InvalidParameters(format!("s = {s} is not prime")));
    }
    Ok(decide(spec, r, s, cases(spec, r, s)))
}

/// Group-level check used when the family prime `r` does not exist and a
/// substitute pair `(r, s)` is supplied: the arithmetic case sets are
/// evaluated as usual, and independence is certified through the absence of
/// an element of order `r·s` in `GL_n(q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubstituteCertificate {
    pub arithmetic: AckCertificate,
    /// A soluble `{r,s}`-subgroup of order divisible by `rs` must be
    /// `C_s ⋊ (r-group)` with the `r`-part centralizing: true when this
    /// reduction to cyclic subgroups holds for the order of `N`.
    pub reduces_to_element: bool,
    /// Least dimension over `GF(q)` of a semisimple element of order `rs`.
    pub min_dimension: u64,
    pub element_of_order_rs: bool,
    pub certified: bool,
}

/// Linear family only, `r` and `s` primes not dividing `q`.
pub fn substitute_certificate(spec: &LieSpec, r: u64, s: u64) -> Result<SubstituteCertificate> {
    if spec.family != Family::Linear {
        return Err(Error::InvalidParameters(
            "substitute certificates cover the linear family".into(),
        ));
    }
    if r == s || spec.q.is_multiple_of(r) || spec.q.is_multiple_of(s) {
        return Err(Error::InvalidParameters(
            "r, s must be distinct primes coprime to q".into(),
        ));
    }
    let (rb, sb) = (BigUint::from(r), BigUint::from(s));
    if !is_prime_big(&rb) || !is_prime_big(&sb) {
        return Err(Error::InvalidParameters("r and s must be prime".into()));
    }
    let arithmetic = decide(spec, &rb, &sb, cases(spec, &rb, &sb));
    let order = spec.order();
    let (vr, vs) = (valuation(&order, r), valuation(&order, s));
    // With |N|_s = s, r ∤ s−1 and r^i ≢ 1 (mod s) for i ≤ v_r, Sylow's
    // theorem makes C_s normal in any {r,s}-subgroup, and the r-part then
    // centralizes it, producing an element of order rs.
    let reduces_to_element =
        vs == 1 && !(s - 1).is_multiple_of(r) && (1..=vr).all(|i| super::arith::pow_mod(r, i as u64, s) != 1);
    let min_dimension = min_semisimple_dimension(spec.q, r * s);
    let element_of_order_rs = min_dimension <= spec.dim;
    let certified = reduces_to_element && !element_of_order_rs;
    Ok(SubstituteCertificate {
        arithmetic,
        reduces_to_element,
        min_dimension,
        element_of_order_rs,
        certified,
    })
}

/// Least `d` such that `GL_d(q)` has a semisimple element of order `m`
/// (`gcd(m, q) = 1`): the prime-power parts of `m` are grouped into blocks,
/// each block `b` costing the multiplicative order of `q` mod `b`.
pub fn min_semisimple_dimension(q: u64, m: u64) -> u64 {
    let mut parts: Vec<u64> = Vec::new();
    let f = factor_u64(m);
    let mut i = 0;
    while i < f.len() {
        let mut pp = 1;
        let p = f[i];
        while i < f.len() && f[i] == p {
            pp *= p;
            i += 1;
        }
        parts.push(pp);
    }
    fn best(parts: &[u64], q: u64) -> u64 {
        let Some((&first, rest)) = parts.split_first() else {
            return 0;
        };
        // Assign `first` to a block with some subset of the rest.
        let mut out = u64::MAX;
        for mask in 0u32..(1 << rest.len()) {
            let mut block = first;
            let mut others = Vec::new();
            for (j, &x) in rest.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    block *= x;
                } else {
                    others.push(x);
                }
            }
            out = out.min(mult_order(q, block) + best(&others, q));
        }
        out
    }
    best(&parts, q)
}

fn mult_order(q: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let qm = q % m;
    let mut x = qm;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * qm as u128) % m as u128) as u64;
        k += 1;
    }
    k
}

/// `|N| / x` as a big integer, for fixture arithmetic.
pub fn divide_exact(n: &BigUint, x: u64) -> Result<BigUint> {
    if (n % x).to_u64() != Some(0) {
        return Err(Error::InvalidParameters(format!("{x} does not divide {n}")));
    }
    Ok(n / x)
}
