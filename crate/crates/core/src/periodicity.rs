//! Closed-form minimal period `π(F_j, e)` of `F_i^e mod F_j`.
//!
//! | j              | e                 | period |
//! |----------------|-------------------|--------|
//! | 0              | any               | none   |
//! | 1, 2           | any               | 1      |
//! | 3              | any               | 3      |
//! | 6              | odd               | 12     |
//! | 6              | 2                 | 6      |
//! | 6              | even, ≥ 4         | 3      |
//! | even, ≥ 4      | even              | j      |
//! | even, ≥ 4      | odd               | 2j     |
//! | odd, ≥ 5       | ≡ 0 (mod 4)       | j      |
//! | odd, ≥ 5       | ≡ 2 (mod 4)       | 2j     |
//! | odd, ≥ 5       | odd               | 4j     |

use std::fmt;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Exponent, Index, Result};

/// Which clause of the case analysis produced a period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseLabel {
    #[serde(rename = "J0")]
    J0,
    #[serde(rename = "J1_J2")]
    J1J2,
    #[serde(rename = "J3")]
    J3,
    #[serde(rename = "J6_ODD")]
    J6Odd,
    #[serde(rename = "J6_E2")]
    J6E2,
    #[serde(rename = "J6_EVEN_GE4")]
    J6EvenGe4,
    #[serde(rename = "EVEN_EVEN")]
    EvenEven,
    #[serde(rename = "EVEN_ODD")]
    EvenOdd,
    #[serde(rename = "ODD_E0MOD4")]
    OddE0Mod4,
    #[serde(rename = "ODD_E2MOD4")]
    OddE2Mod4,
    #[serde(rename = "ODD_ODD")]
    OddOdd,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 11] = [
        CaseLabel::J0,
        CaseLabel::J1J2,
        CaseLabel::J3,
        CaseLabel::J6Odd,
        CaseLabel::J6E2,
        CaseLabel::J6EvenGe4,
        CaseLabel::EvenEven,
        CaseLabel::EvenOdd,
        CaseLabel::OddE0Mod4,
        CaseLabel::OddE2Mod4,
        CaseLabel::OddOdd,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::J0 => "J0",
            CaseLabel::J1J2 => "J1_J2",
            CaseLabel::J3 => "J3",
            CaseLabel::J6Odd => "J6_ODD",
            CaseLabel::J6E2 => "J6_E2",
            CaseLabel::J6EvenGe4 => "J6_EVEN_GE4",
            CaseLabel::EvenEven => "EVEN_EVEN",
            CaseLabel::EvenOdd => "EVEN_ODD",
            CaseLabel::OddE0Mod4 => "ODD_E0MOD4",
            CaseLabel::OddE2Mod4 => "ODD_E2MOD4",
            CaseLabel::OddOdd => "ODD_ODD",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    NotPeriodic,
    Period(u64),
}

// Serialized as the string "not_periodic" or a bare integer.
impl Serialize for Outcome {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Outcome::NotPeriodic => s.serialize_str("not_periodic"),
            Outcome::Period(p) => s.serialize_u64(*p),
        }
    }
}

impl<'de> Deserialize<'de> for Outcome {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Period(u64),
            Tag(String),
        }
        match Raw::deserialize(d)? {
            Raw::Period(0) => Err(de::Error::custom("period must be positive")),
            Raw::Period(p) => Ok(Outcome::Period(p)),
            Raw::Tag(t) if t == "not_periodic" => Ok(Outcome::NotPeriodic),
            Raw::Tag(t) => Err(de::Error::custom(format!("unknown outcome {t:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodResult {
    pub j: Index,
    pub e: Exponent,
    pub outcome: Outcome,
    pub case_label: CaseLabel,
}

impl PeriodResult {
    pub fn period(&self) -> Option<u64> {
        match self.outcome {
            Outcome::Period(p) => Some(p),
            Outcome::NotPeriodic => None,
        }
    }
}

/// Closed-form minimal period of `F_i^e mod F_j`.
///
/// Only the parity of `j`, and the parity and residue mod 4 of `e`, enter
/// the dispatch beyond the small special cases.
pub fn period_closed_form(j: Index, e: Exponent) -> Result<PeriodResult> {
    if e == 0 {
        return Err(Error::domain("exponent e must be at least 1"));
    }
    let period = |p: u64| Outcome::Period(p);
    let (outcome, case_label) = match j {
        0 => (Outcome::NotPeriodic, CaseLabel::J0),
        1 | 2 => (period(1), CaseLabel::J1J2),
        3 => (period(3), CaseLabel::J3),
        6 => match e {
            _ if e % 2 == 1 => (period(12), CaseLabel::J6Odd),
            2 => (period(6), CaseLabel::J6E2),
            _ => (period(3), CaseLabel::J6EvenGe4),
        },
        _ => {
            let j_times = |k: u64| {
                j.checked_mul(k)
                    .map(Outcome::Period)
                    .ok_or_else(|| Error::domain(format!("period {k}*{j} overflows u64")))
            };
            if j % 2 == 0 {
                if e % 2 == 0 {
                    (j_times(1)?, CaseLabel::EvenEven)
                } else {
                    (j_times(2)?, CaseLabel::EvenOdd)
                }
            } else {
                match e % 4 {
                    0 => (j_times(1)?, CaseLabel::OddE0Mod4),
                    2 => (j_times(2)?, CaseLabel::OddE2Mod4),
                    _ => (j_times(4)?, CaseLabel::OddOdd),
                }
            }
        }
    };
    Ok(PeriodResult {
        j,
        e,
        outcome,
        case_label,
    })
}

/// Whether `π(F_j, q·e)` divides `π(F_j, e)`.
pub fn period_divisibility_check(j: Index, e: Exponent, q: u64) -> Result<bool> {
    if j == 0 {
        return Err(Error::domain("F_0 = 0 gives a sequence with no period"));
    }
    if q == 0 {
        return Err(Error::domain("multiplier q must be at least 1"));
    }
    let qe = q
        .checked_mul(e)
        .ok_or_else(|| Error::domain(format!("q*e = {q}*{e} overflows u64")))?;
    let base = period_closed_form(j, e)?.period();
    let multiple = period_closed_form(j, qe)?.period();
    match (base, multiple) {
        (Some(p), Some(pq)) => Ok(p % pq == 0),
        _ => unreachable!("j >= 1 always has a period"),
    }
}
