//! Serde adapters that carry big integers as decimal strings.

use serde::{de, Deserialize, Deserializer, Serializer};

use crate::Natural;

pub fn serialize<S: Serializer>(value: &Natural, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(value)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Natural, D::Error> {
    let text = String::deserialize(d)?;
    parse(&text).map_err(de::Error::custom)
}

/// Parses a plain decimal string. Signs, whitespace, hex and exponents are
/// all rejected.
pub fn parse(text: &str) -> Result<Natural, String> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("expected a decimal integer, got {text:?}"));
    }
    Natural::parse_bytes(text.as_bytes(), 10).ok_or_else(|| format!("bad decimal {text:?}"))
}

pub mod vec {
    use serde::ser::SerializeSeq;
    use serde::{de, Deserialize, Deserializer, Serializer};

    use crate::Natural;

    pub fn serialize<S: Serializer>(values: &[Natural], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&v.to_str_radix(10))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Natural>, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        items
            .iter()
            .map(|t| super::parse(t).map_err(de::Error::custom))
            .collect()
    }
}

pub mod option {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use crate::Natural;

    pub fn serialize<S: Serializer>(value: &Option<Natural>, s: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => s.collect_str(v),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Natural>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| super::parse(&t).map_err(de::Error::custom))
            .transpose()
    }
}
