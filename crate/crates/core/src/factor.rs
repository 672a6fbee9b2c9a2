//! Trial-division factorization sized for Fibonacci numbers at desk scale.

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::Natural;

/// Trial divisors are taken up to this bound before the cofactor is examined.
pub const TRIAL_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeFactor {
    #[serde(with = "crate::decimal")]
    pub prime: Natural,
    pub multiplicity: u32,
    /// Smallest `i ≥ 1` with `prime | F_i`.
    pub rank_of_apparition: u64,
}

/// Result of factoring: prime powers found, and whatever could not be split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(Natural, u32)>,
    /// `1` when the factorization is complete.
    pub cofactor: Natural,
}

fn push(factors: &mut Vec<(Natural, u32)>, p: Natural) {
    match factors.last_mut() {
        Some((q, k)) if *q == p => *k += 1,
        _ => factors.push((p, 1)),
    }
}

/// Divides out every `d` in `2..=limit` with `d² ≤ n`. Only primes can
/// divide at the point they are reached.
fn trial_u64(n: &mut u64, from: u64, limit: u64, factors: &mut Vec<(Natural, u32)>) {
    let mut d = from;
    while d <= limit && d.saturating_mul(d) <= *n {
        while *n % d == 0 {
            *n /= d;
            push(factors, Natural::from(d));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if *n > 1 && (*n as u128) < (d as u128) * (d as u128) {
        push(factors, Natural::from(*n));
        *n = 1;
    }
}

/// Factors `n` by trial division up to [`TRIAL_BOUND`]. A cofactor that fits
/// in 64 bits is then tested with deterministic Miller–Rabin; if composite,
/// trial division continues up to its square root. A larger cofactor is
/// returned unsplit.
pub fn factorize(n: &Natural) -> Factorization {
    let mut factors = Vec::new();
    if n.is_zero() || n.is_one() {
        return Factorization {
            factors,
            cofactor: n.clone(),
        };
    }

    let mut rest = n.clone();
    if let Some(mut small) = rest.to_u64() {
        trial_u64(&mut small, 2, TRIAL_BOUND, &mut factors);
        rest = Natural::from(small);
    } else {
        let mut d = 2u64;
        while d <= TRIAL_BOUND {
            let dn = Natural::from(d);
            while rest.is_multiple_of(&dn) {
                rest /= &dn;
                push(&mut factors, dn.clone());
            }
            if let Some(mut small) = rest.to_u64() {
                let next = if d == 2 { 3 } else { d + 2 };
                trial_u64(&mut small, next, TRIAL_BOUND, &mut factors);
                rest = Natural::from(small);
                break;
            }
            d += if d == 2 { 1 } else { 2 };
        }
    }

    if let Some(mut small) = rest.to_u64() {
        if small > 1 {
            if primal_check::miller_rabin(small) {
                push(&mut factors, rest.clone());
            } else {
                trial_u64(&mut small, TRIAL_BOUND + 1, u64::MAX, &mut factors);
            }
            rest = Natural::one();
        }
    }
    Factorization {
        factors,
        cofactor: rest,
    }
}
