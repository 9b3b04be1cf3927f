//! Serialization helpers: exact rationals always render as `"p"` or `"p/q"`
//! strings, never as floats.

use crate::exact::Rational;
use num::One;
use serde::ser::SerializeSeq;
use serde::Serializer;

/// `"p/q"` (or `"p"` when the denominator is one).
pub fn rational_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(r))
}

pub fn rational_vec<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for r in v {
        seq.serialize_element(&rational_string(r))?;
    }
    seq.end()
}

pub fn rational_opt<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&rational_string(r)),
        None => s.serialize_none(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::{int, rat};

    #[test]
    fn renders_integers_without_denominator() {
        assert_eq!(rational_string(&int(-7)), "-7");
        assert_eq!(rational_string(&rat(3, 2)), "3/2");
        assert_eq!(rational_string(&rat(-9, 6)), "-3/2");
    }
}
