//! Arithmetic of the classical simple groups: orders and outer automorphism
//! orders, primitive prime divisors, the family primes `r`, `s`, `t`, the
//! p-part bound and independence certificates.
//!
//! Orders, with `q = p^e` and `d` the order of the centre removed:
//!
//! | family | `|N|·d` | `d` | `|Out N|` |
//! |---|---|---|---|
//! | `L_n(q)` | `q^{n(n−1)/2} ∏_{i=2}^{n} (q^i − 1)` | `(n, q−1)` | `2de` (`n ≥ 3`), `de` (`n = 2`) |
//! | `U_n(q)` | `q^{n(n−1)/2} ∏_{i=2}^{n} (q^i − (−1)^i)` | `(n, q+1)` | `2de` |
//! | `PSp_{2m}(q)` | `q^{m²} ∏_{i=1}^{m} (q^{2i} − 1)` | `(2, q−1)` | `de`, or `2e` if `m = 2`, `p = 2` |
//! | `Ω_{2m+1}(q)`, `q` odd | as `PSp_{2m}(q)` | `2` | `2e` |
//! | `PΩ⁻_{2m}(q)` | `q^{m(m−1)} (q^m + 1) ∏_{i=1}^{m−1} (q^{2i} − 1)` | `(4, q^m+1)` | `2de` |
//! | `PΩ⁺_{2m}(q)` | `q^{m(m−1)} (q^m − 1) ∏_{i=1}^{m−1} (q^{2i} − 1)` | `(4, q^m−1)` | `2de`, or `6de` if `m = 4` |
//!
//! Family primes are primitive prime divisors of `p^k − 1` for:
//!
//! | family | `r` | `s` | `t` |
//! |---|---|---|---|
//! | linear | `en` | `e(n−1)` | `e(n−2)`, `n ≥ 4` |
//! | unitary | `2e(n−1)` | `en` | - |
//! | symplectic, odd orthogonal | `2em` | `em` | `2e(m−1)` |
//! | minus orthogonal | `2em` | - | `2e(m−1)` |
//! | plus orthogonal | `2e(m−1)` | `em` | `e(m−1)` |

pub mod arith;
mod certificates;
mod ecm;
mod lie;
mod zsigmondy;

pub use certificates::{
    ack_certificate, divide_exact, l1_bound, min_semisimple_dimension, substitute_certificate,
    AckCertificate, CaseCheck, PPartBound, SubstituteCertificate,
};
pub use lie::{family_primes, simple_group_order, Family, FamilyPrimes, LieSpec};
pub use zsigmondy::{cyclotomic_value, is_primitive_divisor, primitive_part, residue, zsigmondy};
