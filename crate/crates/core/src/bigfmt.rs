//! Serde helpers that write big integers as decimal strings.

use num_bigint::BigUint;
use serde::Serializer;

pub(crate) fn decimal<S: Serializer>(value: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}
