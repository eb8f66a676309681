//! Serialization of big integers: a JSON number when it fits in `u64`,
//! otherwise a decimal string.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serializer;

pub fn big<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match x.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

pub fn opt_big<S: Serializer>(x: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => big(v, s),
        None => s.serialize_none(),
    }
}
