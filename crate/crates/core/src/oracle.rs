//! Brute-force period detection.
//!
//! Everything here is computed by stepping the recurrence one index at a
//! time. Nothing in this module consults the closed forms in
//! [`crate::periodicity`] or [`crate::residue_tables`], so agreement between
//! the two is meaningful.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::fibcore::FibPair;
use crate::{Error, Exponent, Index, Natural, Result};

pub const DEFAULT_J_MAX: Index = 25;

/// Smallest `k ≥ 1` with `(F_k, F_{k+1}) ≡ (0, 1) (mod m)`.
pub fn pisano_period(m: &Natural) -> Result<u64> {
    let mut pair = FibPair::start(m)?;
    loop {
        pair.step();
        if pair.f_n.is_zero() && pair.f_n1.is_one() {
            return Ok(pair.n);
        }
    }
}

/// `F_j` by plain repeated addition.
fn fib_by_addition(j: Index) -> Natural {
    let mut a = Natural::zero();
    let mut b = Natural::one();
    for _ in 0..j {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

fn power_window(modulus: &Natural, e: Exponent, n: u64) -> Result<Vec<Natural>> {
    let mut pair = FibPair::start(modulus)?;
    let exponent = Natural::from(e);
    let mut out = Vec::with_capacity(n as usize);
    for _ in 0..n {
        out.push(pair.f_n.modpow(&exponent, modulus));
        pair.step();
    }
    Ok(out)
}

/// First `n` terms of `F_i^e mod F_j`.
pub fn sequence_prefix(j: Index, e: Exponent, n: u64) -> Result<Vec<Natural>> {
    if j < 3 {
        return Err(Error::domain(format!(
            "j = {j}: modulus F_j is below 2, use the base cases"
        )));
    }
    if e == 0 {
        return Err(Error::domain("exponent e must be at least 1"));
    }
    if n == 0 {
        return Err(Error::domain("prefix length must be at least 1"));
    }
    power_window(&fib_by_addition(j), e, n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DivisorVerdict {
    Holds,
    Fails,
}

/// Outcome of testing one candidate period `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorCheck {
    pub d: u64,
    pub verdict: DivisorVerdict,
    /// First `i` with `window[(i + d) mod p0] != window[i]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_index: Option<u64>,
}

/// Evidence for a brute-force minimal period.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OracleTrace {
    #[serde(with = "crate::decimal")]
    pub modulus: Natural,
    pub pisano: u64,
    pub power_period: u64,
    /// Every divisor of `pisano` up to and including `power_period`, ascending.
    pub checked_divisors: Vec<DivisorCheck>,
}

impl OracleTrace {
    /// Re-checks the trace's structural invariants.
    pub fn is_consistent(&self) -> bool {
        let divisors = divisors(self.pisano);
        let expected: Vec<u64> = divisors
            .into_iter()
            .take_while(|&d| d <= self.power_period)
            .collect();
        let listed: Vec<u64> = self.checked_divisors.iter().map(|c| c.d).collect();
        self.pisano % self.power_period == 0
            && listed == expected
            && self.checked_divisors.iter().all(|c| {
                if c.d < self.power_period {
                    c.verdict == DivisorVerdict::Fails && c.witness_index.is_some()
                } else {
                    c.verdict == DivisorVerdict::Holds && c.witness_index.is_none()
                }
            })
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Brute-force period search with a guard on `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    j_max: Index,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            j_max: DEFAULT_J_MAX,
        }
    }
}

impl Oracle {
    pub fn new(j_max: Index) -> Self {
        Oracle { j_max }
    }

    pub fn j_max(&self) -> Index {
        self.j_max
    }

    /// Minimal period of `F_i^e mod F_j`, searched over divisors of the
    /// Pisano period of `F_j`.
    ///
    /// The sequence starts at the recurring state `(0, 1)`, so it is purely
    /// periodic with period `pisano`. One stored window of that length is
    /// compared against its own rotations.
    pub fn minimal_period_bruteforce(&self, j: Index, e: Exponent) -> Result<OracleTrace> {
        if j < 3 {
            return Err(Error::domain(format!(
                "j = {j}: modulus F_j is below 2, use the base cases"
            )));
        }
        if j > self.j_max {
            return Err(Error::ResourceGuard {
                what: format!("oracle index j = {j}"),
                limit: self.j_max,
            });
        }
        if e == 0 {
            return Err(Error::domain("exponent e must be at least 1"));
        }
        let modulus = fib_by_addition(j);
        let pisano = pisano_period(&modulus)?;
        let window = power_window(&modulus, e, pisano)?;
        let len = window.len();

        let mut checked_divisors = Vec::new();
        for d in divisors(pisano) {
            let shift = d as usize;
            let witness = (0..len).find(|&i| window[(i + shift) % len] != window[i]);
            match witness {
                Some(i) => checked_divisors.push(DivisorCheck {
                    d,
                    verdict: DivisorVerdict::Fails,
                    witness_index: Some(i as u64),
                }),
                None => {
                    checked_divisors.push(DivisorCheck {
                        d,
                        verdict: DivisorVerdict::Holds,
                        witness_index: None,
                    });
                    return Ok(OracleTrace {
                        modulus,
                        pisano,
                        power_period: d,
                        checked_divisors,
                    });
                }
            }
        }
        unreachable!("pisano itself is always a period of the window")
    }
}

/// [`Oracle::minimal_period_bruteforce`] with the default guard.
pub fn minimal_period_bruteforce(j: Index, e: Exponent) -> Result<OracleTrace> {
    Oracle::default().minimal_period_bruteforce(j, e)
}
