use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::arith::prime_power;
use super::zsigmondy::zsigmondy;
use crate::config::Budget;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `L_n(q) = PSL_n(q)`.
    Linear,
    /// `U_n(q) = PSU_n(q)`.
    Unitary,
    /// `PSp_{2m}(q)`.
    Symplectic,
    /// `Ω_{2m+1}(q)`, `q` odd.
    OddOrthogonal,
    /// `PΩ⁻_{2m}(q)`.
    MinusOrthogonal,
    /// `PΩ⁺_{2m}(q)`.
    PlusOrthogonal,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Linear,
        Family::Unitary,
        Family::Symplectic,
        Family::OddOrthogonal,
        Family::MinusOrthogonal,
        Family::PlusOrthogonal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Linear => "linear",
            Family::Unitary => "unitary",
            Family::Symplectic => "symplectic",
            Family::OddOrthogonal => "odd_orthogonal",
            Family::MinusOrthogonal => "minus_orthogonal",
            Family::PlusOrthogonal => "plus_orthogonal",
        }
    }

    /// Least admissible dimension parameter.
    pub fn min_dim(self) -> u64 {
        match self {
            Family::Linear | Family::Symplectic => 2,
            Family::Unitary | Family::OddOrthogonal => 3,
            Family::MinusOrthogonal | Family::PlusOrthogonal => 4,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let f = match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "linear" | "l" | "psl" => Family::Linear,
            "unitary" | "u" | "psu" => Family::Unitary,
            "symplectic" | "s" | "psp" => Family::Symplectic,
            "odd_orthogonal" | "o" | "omega" => Family::OddOrthogonal,
            "minus_orthogonal" | "o_minus" => Family::MinusOrthogonal,
            "plus_orthogonal" | "o_plus" => Family::PlusOrthogonal,
            _ => return Err(Error::InvalidParameters(format!("unknown family {s:?}"))),
        };
        Ok(f)
    }
}

/// A classical simple group: family, dimension parameter (`n` for linear
/// and unitary, `m` otherwise) and field size `q = p^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LieSpec {
    pub family: Family,
    pub dim: u64,
    pub q: u64,
    pub p: u64,
    pub e: u64,
}

impl LieSpec {
    /// Validates the dimension constraints and that `q` is a prime power.
    /// The non-simple small cases `L₂(2)`, `L₂(3)`, `U₃(2)` and `PSp₄(2)`
    /// are rejected.
    pub fn new(family: Family, dim: u64, q: u64) -> Result<Self> {
        let (p, e) = prime_power(q)
            .ok_or_else(|| Error::InvalidParameters(format!("q = {q} is not a prime power")))?;
        if dim < family.min_dim() {
            return Err(Error::InvalidParameters(format!(
                "{family} needs dimension parameter ≥ {}",
                family.min_dim()
            )));
        }
        if family == Family::OddOrthogonal && p == 2 {
            return Err(Error::InvalidParameters(
                "odd_orthogonal needs q odd".into(),
            ));
        }
        let not_simple = matches!(
            (family, dim, q),
            (Family::Linear, 2, 2)
                | (Family::Linear, 2, 3)
                | (Family::Unitary, 3, 2)
                | (Family::Symplectic, 2, 2)
        );
        if not_simple {
            return Err(Error::InvalidParameters(format!(
                "{family}({dim}, {q}) is not simple"
            )));
        }
        // Exponents below are `u32`; keep `dim·e` comfortably inside.
        if dim > 10_000 {
            return Err(Error::InvalidParameters(format!(
                "dimension {dim} too large"
            )));
        }
        Ok(LieSpec {
            family,
            dim,
            q,
            p,
            e: e as u64,
        })
    }

    fn qb(&self) -> BigUint {
        BigUint::from(self.q)
    }

    fn q_pow(&self, k: u64) -> BigUint {
        self.qb().pow(k as u32)
    }

    /// The central quotient `d` in `|N| = |full group| / d`.
    pub fn d(&self) -> u64 {
        let (q, n) = (self.q, self.dim);
        match self.family {
            Family::Linear => n.gcd(&(q - 1)),
            Family::Unitary => n.gcd(&(q + 1)),
            Family::Symplectic => 2u64.gcd(&(q - 1)),
            Family::OddOrthogonal => 2,
            Family::MinusOrthogonal => gcd_big_u64(&(self.q_pow(n) + 1u32), 4),
            Family::PlusOrthogonal => gcd_big_u64(&(self.q_pow(n) - 1u32), 4),
        }
    }

    /// `|N|`.
    pub fn order(&self) -> BigUint {
        let n = self.dim;
        let one = BigUint::one();
        let mut acc = BigUint::one();
        match self.family {
            Family::Linear => {
                acc *= self.q_pow(n * (n - 1) / 2);
                for i in 2..=n {
                    acc *= self.q_pow(i) - &one;
                }
            }
            Family::Unitary => {
                acc *= self.q_pow(n * (n - 1) / 2);
                for i in 2..=n {
                    acc *= if i % 2 == 0 {
                        self.q_pow(i) - &one
                    } else {
                        self.q_pow(i) + &one
                    };
                }
            }
            Family::Symplectic | Family::OddOrthogonal => {
                acc *= self.q_pow(n * n);
                for i in 1..=n {
                    acc *= self.q_pow(2 * i) - &one;
                }
            }
            Family::MinusOrthogonal | Family::PlusOrthogonal => {
                acc *= self.q_pow(n * (n - 1));
                acc *= if self.family == Family::MinusOrthogonal {
                    self.q_pow(n) + &one
                } else {
                    self.q_pow(n) - &one
                };
                for i in 1..n {
                    acc *= self.q_pow(2 * i) - &one;
                }
            }
        }
        acc / self.d()
    }

    /// `|Out(N)|`.
    pub fn out_order(&self) -> u64 {
        let (d, e) = (self.d(), self.e);
        match self.family {
            Family::Linear if self.dim == 2 => d * e,
            Family::Linear | Family::Unitary => 2 * d * e,
            Family::Symplectic if self.dim == 2 && self.p == 2 => 2 * e,
            Family::Symplectic => d * e,
            Family::OddOrthogonal => 2 * e,
            Family::MinusOrthogonal => 2 * d * e,
            Family::PlusOrthogonal if self.dim == 4 => 6 * d * e,
            Family::PlusOrthogonal => 2 * d * e,
        }
    }

    /// Exponents `k` (of `p^k − 1`) whose primitive prime divisors define
    /// the primes `r`, `s`, `t`; `None` where the family has no such prime.
    pub fn prime_exponents(&self) -> [Option<u64>; 3] {
        let (n, e) = (self.dim, self.e);
        match self.family {
            Family::Linear => [
                Some(e * n),
                Some(e * (n - 1)),
                (n >= 4).then(|| e * (n - 2)),
            ],
            Family::Unitary => [Some(2 * e * (n - 1)), Some(e * n), None],
            Family::Symplectic | Family::OddOrthogonal => {
                [Some(2 * e * n), Some(e * n), Some(2 * e * (n - 1))]
            }
            Family::MinusOrthogonal => [Some(2 * e * n), None, Some(2 * e * (n - 1))],
            Family::PlusOrthogonal => [Some(2 * e * (n - 1)), Some(e * n), Some(e * (n - 1))],
        }
    }
}

impl fmt::Display for LieSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, q) = (self.dim, self.q);
        match self.family {
            Family::Linear => write!(f, "L{n}({q})"),
            Family::Unitary => write!(f, "U{n}({q})"),
            Family::Symplectic => write!(f, "PSp{}({q})", 2 * n),
            Family::OddOrthogonal => write!(f, "O{}({q})", 2 * n + 1),
            Family::MinusOrthogonal => write!(f, "O-{}({q})", 2 * n),
            Family::PlusOrthogonal => write!(f, "O+{}({q})", 2 * n),
        }
    }
}

fn gcd_big_u64(a: &BigUint, b: u64) -> u64 {
    use num_traits::ToPrimitive;
    (a % b).to_u64().unwrap().gcd(&b)
}

/// `(|N|, |Out N|)`.
pub fn simple_group_order(spec: &LieSpec) -> (BigUint, u64) {
    (spec.order(), spec.out_order())
}

/// The primes `r`, `s`, `t` attached to a family: each is the smallest
/// primitive prime divisor of its prescribed `p^k − 1`, absent when the
/// family does not define it or when no primitive divisor exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyPrimes {
    #[serde(serialize_with = "crate::bigser::opt_big")]
    pub r: Option<BigUint>,
    #[serde(serialize_with = "crate::bigser::opt_big")]
    pub s: Option<BigUint>,
    #[serde(serialize_with = "crate::bigser::opt_big")]
    pub t: Option<BigUint>,
}

pub fn family_primes(spec: &LieSpec, budget: &Budget) -> Result<FamilyPrimes> {
    let slot = |k: Option<u64>| -> Result<Option<BigUint>> {
        match k {
            Some(k) if k >= 2 => zsigmondy(spec.p, k, budget),
            _ => Ok(None),
        }
    };
    let [r, s, t] = spec.prime_exponents();
    Ok(FamilyPrimes {
        r: slot(r)?,
        s: slot(s)?,
        t: slot(t)?,
    })
}
