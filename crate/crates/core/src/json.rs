//! JSON encoding of arbitrary-precision integers.
//!
//! Integers that fit in an `i64` are written as JSON numbers; larger ones are
//! written as decimal strings. Both encodings are accepted on input. Use with
//! `#[serde(with = "crate::json::int")]` on any field whose type is a
//! `BigInt`, or a `Vec`/array nesting of them.

use std::fmt;
use std::marker::PhantomData;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

/// Types built from nested sequences of `BigInt`.
pub trait IntTree: Sized {
    fn ser<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error>;
    fn de<'de, D: Deserializer<'de>>(d: D) -> Result<Self, D::Error>;
}

struct Ser<'a, T>(&'a T);

impl<T: IntTree> Serialize for Ser<'_, T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.ser(s)
    }
}

struct De<T>(T);

impl<'de, T: IntTree> Deserialize<'de> for De<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        T::de(d).map(De)
    }
}

impl IntTree for BigInt {
    fn ser<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.to_string()),
        }
    }

    fn de<'de, D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = BigInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigInt, E> {
                Ok(v.into())
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigInt, E> {
                Ok(v.into())
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<BigInt, E> {
                v.trim()
                    .parse()
                    .map_err(|_| E::custom(format!("not an integer: {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

impl<T: IntTree> IntTree for Vec<T> {
    fn ser<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for x in self {
            seq.serialize_element(&Ser(x))?;
        }
        seq.end()
    }

    fn de<'de, D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V<T>(PhantomData<T>);
        impl<'de, T: IntTree> Visitor<'de> for V<T> {
            type Value = Vec<T>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a sequence")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut a: A) -> Result<Vec<T>, A::Error> {
                let mut out = Vec::new();
                while let Some(De(x)) = a.next_element::<De<T>>()? {
                    out.push(x);
                }
                Ok(out)
            }
        }
        d.deserialize_seq(V(PhantomData))
    }
}

impl<T: IntTree, const N: usize> IntTree for [T; N] {
    fn ser<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(N))?;
        for x in self {
            seq.serialize_element(&Ser(x))?;
        }
        seq.end()
    }

    fn de<'de, D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<T>::de(d)?;
        let len = v.len();
        v.try_into()
            .map_err(|_| de::Error::invalid_length(len, &format!("{N} elements").as_str()))
    }
}

impl<A: IntTree, B: IntTree> IntTree for (A, B) {
    fn ser<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&Ser(&self.0))?;
        seq.serialize_element(&Ser(&self.1))?;
        seq.end()
    }

    fn de<'de, D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V<A, B>(PhantomData<(A, B)>);
        impl<'de, A: IntTree, B: IntTree> Visitor<'de> for V<A, B> {
            type Value = (A, B);
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a pair")
            }
            fn visit_seq<S: SeqAccess<'de>>(self, mut a: S) -> Result<(A, B), S::Error> {
                let De(x) = a
                    .next_element::<De<A>>()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let De(y) = a
                    .next_element::<De<B>>()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                Ok((x, y))
            }
        }
        d.deserialize_seq(V(PhantomData))
    }
}

/// `serde(with = ...)` adapter.
pub mod int {
    use super::IntTree;
    use serde::{Deserializer, Serializer};

    pub fn serialize<T: IntTree, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        v.ser(s)
    }

    pub fn deserialize<'de, T: IntTree, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
        T::de(d)
    }
}
