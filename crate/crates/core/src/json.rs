//! Serde helpers that write arbitrary-precision integers as bare JSON numbers.

use num_bigint::BigUint;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use serde_json::Number;

pub(crate) fn number(v: &BigUint) -> Number {
    v.to_string().parse().expect("decimal digits form a JSON number")
}

pub(crate) fn big<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    number(v).serialize(s)
}

pub(crate) fn big_opt<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => number(v).serialize(s),
        None => s.serialize_none(),
    }
}

pub(crate) fn big_seq<'a, S, I>(items: I, s: S) -> Result<S::Ok, S::Error>
where
    S: Serializer,
    I: IntoIterator<Item = &'a BigUint>,
    I::IntoIter: ExactSizeIterator,
{
    let items = items.into_iter();
    let mut seq = s.serialize_seq(Some(items.len()))?;
    for v in items {
        seq.serialize_element(&number(v))?;
    }
    seq.end()
}

pub(crate) fn big_vec<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    big_seq(v, s)
}

pub(crate) fn big_vec_opt<S: Serializer>(v: &Option<Vec<BigUint>>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => big_seq(v, s),
        None => s.serialize_none(),
    }
}

pub(crate) fn big_pairs<S: Serializer>(v: &[(BigUint, BigUint)], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (a, b) in v {
        seq.serialize_element(&[number(a), number(b)])?;
    }
    seq.end()
}

pub(crate) fn window<S: Serializer>(w: &crate::sets::Window, s: S) -> Result<S::Ok, S::Error> {
    [number(w.lo()), number(w.hi())].serialize(s)
}

pub(crate) fn density<S: Serializer>(d: &crate::sets::DensityValue, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&d.to_string())
}
