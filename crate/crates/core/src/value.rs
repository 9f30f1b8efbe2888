use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

/// Result of a diversity measure: a finite real or negative infinity.
///
/// Negative infinity only comes out of Energy on inputs with a duplicate
/// pair. NaN is never constructed. Serialized as a JSON number, or the string
/// `"-inf"`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasureValue(f64);

impl MeasureValue {
    pub const NEG_INFINITY: MeasureValue = MeasureValue(f64::NEG_INFINITY);

    /// Panics on NaN or +inf, which no measure produces.
    pub fn new(v: f64) -> Self {
        assert!(!v.is_nan() && v != f64::INFINITY, "measure value must be finite or -inf, got {v}");
        MeasureValue(v)
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_neg_inf(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    /// `self - other`, with `-inf - -inf` taken as 0.
    pub fn margin_over(self, other: MeasureValue) -> f64 {
        if self.is_neg_inf() && other.is_neg_inf() {
            0.0
        } else {
            self.0 - other.0
        }
    }
}

impl From<f64> for MeasureValue {
    fn from(v: f64) -> Self {
        MeasureValue::new(v)
    }
}

impl Eq for MeasureValue {}

impl PartialOrd for MeasureValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MeasureValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl fmt::Display for MeasureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_neg_inf() {
            f.write_str("-inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl Serialize for MeasureValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.is_neg_inf() {
            s.serialize_str("-inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for MeasureValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = MeasureValue;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number or \"-inf\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<MeasureValue, E> {
                Ok(MeasureValue(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<MeasureValue, E> {
                Ok(MeasureValue(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<MeasureValue, E> {
                Ok(MeasureValue(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<MeasureValue, E> {
                match v {
                    "-inf" => Ok(MeasureValue::NEG_INFINITY),
                    other => Err(E::invalid_value(de::Unexpected::Str(other), &self)),
                }
            }
        }
        d.deserialize_any(V)
    }
}
