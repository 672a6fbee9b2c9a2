//! Exact and modular Fibonacci evaluation.
//!
//! Both paths use fast doubling over the binary expansion of the index,
//! most significant bit first:
//!
//! ```text
//! F(2k)   = F(k) * (2 F(k+1) - F(k))
//! F(2k+1) = F(k)^2 + F(k+1)^2
//! ```

use num_traits::{One, Zero};

use crate::{Error, Exponent, Index, Natural, Result};

/// Consecutive pair `(F_n mod m, F_{n+1} mod m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FibPair {
    pub n: Index,
    pub f_n: Natural,
    pub f_n1: Natural,
    pub modulus: Natural,
}

impl FibPair {
    /// The pair at index 0, `(0, 1)`.
    pub fn start(modulus: &Natural) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(FibPair {
            n: 0,
            f_n: Natural::zero(),
            f_n1: Natural::one(),
            modulus: modulus.clone(),
        })
    }

    /// Advances one index with a single addition.
    pub fn step(&mut self) {
        let mut next = &self.f_n + &self.f_n1;
        if next >= self.modulus {
            next -= &self.modulus;
        }
        self.f_n = std::mem::replace(&mut self.f_n1, next);
        self.n += 1;
    }

    #[must_use]
    pub fn advanced(&self) -> Self {
        let mut next = self.clone();
        next.step();
        next
    }
}

fn check_modulus(m: &Natural) -> Result<()> {
    if *m < Natural::from(2u32) {
        return Err(Error::InvalidModulus(m.clone()));
    }
    Ok(())
}

/// Returns `F_n` exactly.
pub fn fib_exact(n: Index) -> Natural {
    let mut a = Natural::zero();
    let mut b = Natural::one();
    for bit in (0..Index::BITS - n.leading_zeros()).rev() {
        let two_b = &b << 1;
        let c = &a * (two_b - &a);
        let d = &a * &a + &b * &b;
        if (n >> bit) & 1 == 1 {
            b = &c + &d;
            a = d;
        } else {
            a = c;
            b = d;
        }
    }
    a
}

/// Returns `(F_n mod m, F_{n+1} mod m)` in `O(log n)` multiplications.
pub fn fib_pair_mod(n: Index, m: &Natural) -> Result<FibPair> {
    check_modulus(m)?;
    let mut a = Natural::zero();
    let mut b = Natural::one();
    for bit in (0..Index::BITS - n.leading_zeros()).rev() {
        // 2b - a stays nonnegative after adding m since a < m.
        let twice_b_minus_a = ((&b << 1) + m - &a) % m;
        let c = (&a * twice_b_minus_a) % m;
        let d = (&a * &a + &b * &b) % m;
        if (n >> bit) & 1 == 1 {
            let mut sum = &c + &d;
            if sum >= *m {
                sum -= m;
            }
            a = d;
            b = sum;
        } else {
            a = c;
            b = d;
        }
    }
    Ok(FibPair {
        n,
        f_n: a,
        f_n1: b,
        modulus: m.clone(),
    })
}

/// Returns `F_n mod m` in `[0, m)`.
pub fn fib_mod(n: Index, m: &Natural) -> Result<Natural> {
    fib_pair_mod(n, m).map(|p| p.f_n)
}

/// Returns `a^e mod m`; `a^0` is `1 mod m`.
pub fn pow_mod(a: &Natural, e: Exponent, m: &Natural) -> Result<Natural> {
    check_modulus(m)?;
    Ok(a.modpow(&Natural::from(e), m))
}
