//! One full minimal period of normalized residues `ρ_i(F_j, e)`.
//!
//! For `e = 1` and `e = 2` the tables are assembled from exact Fibonacci
//! values `F_0..=F_j` by case analysis on `i`; no modular recurrence is
//! stepped. Other exponents are powered directly, with the period taken from
//! [`period_closed_form`].

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::fibcore::{fib_exact, fib_mod, pow_mod};
use crate::periodicity::period_closed_form;
use crate::{Error, Exponent, Index, Natural, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueTable {
    pub j: Index,
    pub e: Exponent,
    #[serde(with = "crate::decimal")]
    pub modulus: Natural,
    pub period: u64,
    #[serde(with = "crate::decimal::vec")]
    pub residues: Vec<Natural>,
}

impl ResidueTable {
    /// Residue at any index, using periodicity.
    pub fn at(&self, i: u64) -> &Natural {
        &self.residues[(i % self.period) as usize]
    }
}

/// Closed-form clause that produced a table entry, numbered within the
/// even-`j` or odd-`j` case split. Displays as `even.n` or `odd.n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Clause {
    Even(u8),
    Odd(u8),
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Clause::Even(n) => write!(f, "even.{n}"),
            Clause::Odd(n) => write!(f, "odd.{n}"),
        }
    }
}

fn check_j(j: Index) -> Result<()> {
    if j < 4 {
        return Err(Error::domain(format!(
            "j = {j}: closed-form tables start at j = 4"
        )));
    }
    Ok(())
}

/// `F_0..=F_j`, computed once.
fn fib_prefix(j: Index) -> Vec<Natural> {
    (0..=j).map(fib_exact).collect()
}

fn table(j: Index, e: Exponent, modulus: Natural, entries: Vec<(Natural, Clause)>) -> (ResidueTable, Vec<Clause>) {
    let (residues, clauses): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
    let table = ResidueTable {
        j,
        e,
        modulus,
        period: residues.len() as u64,
        residues,
    };
    (table, clauses)
}

/// `e = 1` table with the clause used for each entry.
pub fn residues_e1_annotated(j: Index) -> Result<(ResidueTable, Vec<Clause>)> {
    check_j(j)?;
    let f = fib_prefix(j);
    let fj = &f[j as usize];
    let ju = j as usize;
    let zero = Natural::zero;
    let mut entries = Vec::with_capacity(4 * ju);

    if j % 2 == 0 {
        for i in 0..2 * ju {
            entries.push(match i {
                _ if i < ju => (f[i].clone(), Clause::Even(1)),
                _ if i == ju => (zero(), Clause::Even(2)),
                _ if i % 2 == 1 => (f[2 * ju - i].clone(), Clause::Even(3)),
                _ => (fj - &f[2 * ju - i], Clause::Even(4)),
            });
        }
    } else {
        for i in 0..4 * ju {
            entries.push(match i {
                _ if i < ju => (f[i].clone(), Clause::Odd(1)),
                _ if i == ju => (zero(), Clause::Odd(2)),
                _ if i < 2 * ju && i % 2 == 0 => (f[2 * ju - i].clone(), Clause::Odd(3)),
                _ if i < 2 * ju => (fj - &f[2 * ju - i], Clause::Odd(4)),
                _ if i == 2 * ju => (zero(), Clause::Odd(5)),
                _ if i < 3 * ju => (fj - &f[i - 2 * ju], Clause::Odd(6)),
                _ if i == 3 * ju => (zero(), Clause::Odd(7)),
                _ if i % 2 == 0 => (fj - &f[4 * ju - i], Clause::Odd(8)),
                _ => (f[4 * ju - i].clone(), Clause::Odd(9)),
            });
        }
    }
    Ok(table(j, 1, fj.clone(), entries))
}

/// One period of `F_i mod F_j`: length `2j` for even `j`, `4j` for odd `j`.
pub fn residues_e1(j: Index) -> Result<ResidueTable> {
    residues_e1_annotated(j).map(|(t, _)| t)
}

/// `e = 2` table with the clause used for each entry.
pub fn residues_e2_annotated(j: Index) -> Result<(ResidueTable, Vec<Clause>)> {
    check_j(j)?;
    let f = fib_prefix(j);
    let fj = &f[j as usize];
    let ju = j as usize;
    let t = ju / 2;
    let sq = |k: usize| &f[k] * &f[k];
    let mut entries: Vec<(Natural, Clause)> = Vec::with_capacity(2 * ju);

    if j % 2 == 0 {
        for i in 0..ju {
            entries.push(if i <= t {
                (sq(i), Clause::Even(1))
            } else {
                (sq(ju - i), Clause::Even(2))
            });
        }
    } else {
        for i in 0..2 * ju {
            let entry = match i {
                _ if i <= t + 1 => (sq(i), Clause::Odd(1)),
                _ if i < ju => (fj - sq(ju - i), Clause::Odd(2)),
                _ if i == ju => (Natural::zero(), Clause::Odd(3)),
                _ => (entries[2 * ju - i].0.clone(), Clause::Odd(4)),
            };
            entries.push(entry);
        }
    }
    Ok(table(j, 2, fj.clone(), entries))
}

/// One period of `F_i^2 mod F_j`: length `j` for even `j`, `2j` for odd `j`.
pub fn residues_e2(j: Index) -> Result<ResidueTable> {
    residues_e2_annotated(j).map(|(t, _)| t)
}

/// One period of `F_i^e mod F_j` for any `e ≥ 1`, by direct powering.
pub fn residues_general(j: Index, e: Exponent) -> Result<ResidueTable> {
    check_j(j)?;
    let period = period_closed_form(j, e)?
        .period()
        .expect("j >= 4 always has a period");
    let modulus = fib_exact(j);
    let residues = (0..period)
        .map(|k| pow_mod(&fib_mod(k, &modulus)?, e, &modulus))
        .collect::<Result<Vec<_>>>()?;
    Ok(ResidueTable {
        j,
        e,
        modulus,
        period,
        residues,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn nats(v: &[u64]) -> Vec<Natural> {
        v.iter().map(|&x| Natural::from(x)).collect()
    }

    /// Stepped recurrence mod F_j, for comparison only.
    fn iterate(j: u64, len: usize) -> Vec<Natural> {
        let m = fib_exact(j);
        let (mut a, mut b) = (Natural::zero(), Natural::one());
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            out.push(a.clone());
            let next = (&a + &b) % &m;
            a = std::mem::replace(&mut b, next);
        }
        out
    }

    #[test]
    fn e1_small_tables() {
        assert_eq!(residues_e1(4).unwrap().residues, nats(&[0, 1, 1, 2, 0, 2, 2, 1]));
        assert_eq!(
            residues_e1(5).unwrap().residues,
            nats(&[0, 1, 1, 2, 3, 0, 3, 3, 1, 4, 0, 4, 4, 3, 2, 0, 2, 2, 4, 1])
        );
        assert_eq!(
            residues_e1(6).unwrap().residues,
            nats(&[0, 1, 1, 2, 3, 5, 0, 5, 5, 2, 7, 1])
        );
        let t7 = residues_e1(7).unwrap();
        assert_eq!(t7.period, 28);
        assert_eq!(t7.modulus, Natural::from(13u32));
        assert_eq!(
            t7.residues,
            nats(&[
                0, 1, 1, 2, 3, 5, 8, 0, 8, 8, 3, 11, 1, 12, 0, 12, 12, 11, 10, 8, 5, 0, 5, 5, 10,
                2, 12, 1
            ])
        );
    }

    #[test]
    fn e2_small_tables() {
        assert_eq!(residues_e2(6).unwrap().residues, nats(&[0, 1, 1, 4, 1, 1]));
        assert_eq!(
            residues_e2(7).unwrap().residues,
            nats(&[0, 1, 1, 4, 9, 12, 12, 0, 12, 12, 9, 4, 1, 1])
        );
        let t8 = residues_e2(8).unwrap();
        assert_eq!(t8.modulus, Natural::from(21u32));
        assert_eq!(t8.residues, nats(&[0, 1, 1, 4, 9, 4, 1, 1]));
    }

    #[test]
    fn general_examples() {
        assert_eq!(
            residues_general(6, 3).unwrap().residues,
            nats(&[0, 1, 1, 0, 3, 5, 0, 5, 5, 0, 7, 1])
        );
        assert_eq!(residues_general(6, 4).unwrap().residues, nats(&[0, 1, 1]));
        // brute-force oracle output for F_i^5 mod 34
        let t = residues_general(9, 5).unwrap();
        assert_eq!(t.period, 36);
        assert_eq!(
            t.residues,
            nats(&[
                0, 1, 1, 32, 5, 31, 26, 13, 21, 0, 21, 21, 26, 3, 5, 2, 1, 33, 0, 33, 33, 2, 29, 3,
                8, 21, 13, 0, 13, 13, 8, 31, 29, 32, 33, 1
            ])
        );
        assert_eq!(
            residues_general(8, 3).unwrap().residues,
            nats(&[0, 1, 1, 8, 6, 20, 8, 13, 0, 13, 13, 20, 15, 8, 20, 1])
        );
    }

    #[test]
    fn small_j_rejected() {
        for j in 0..4 {
            assert!(matches!(residues_e1(j), Err(Error::OutOfDomain(_))));
            assert!(matches!(residues_e2(j), Err(Error::OutOfDomain(_))));
            assert!(matches!(residues_general(j, 3), Err(Error::OutOfDomain(_))));
        }
        assert!(residues_general(7, 0).is_err());
    }

    #[test]
    fn annotations() {
        let (_, clauses) = residues_e1_annotated(5).unwrap();
        assert_eq!(clauses[5], Clause::Odd(2));
        assert_eq!(clauses[6], Clause::Odd(3));
        assert_eq!(clauses[7], Clause::Odd(4));
        assert_eq!(clauses[10], Clause::Odd(5));
        assert_eq!(clauses[15], Clause::Odd(7));
        assert_eq!(clauses[19], Clause::Odd(9));
        assert_eq!(clauses[19].to_string(), "odd.9");
        let (_, clauses) = residues_e2_annotated(6).unwrap();
        assert_eq!(clauses.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            ["even.1", "even.1", "even.1", "even.1", "even.2", "even.2"]);
    }

    #[test]
    fn e1_matches_iteration() {
        for j in 4..=30 {
            let t = residues_e1(j).unwrap();
            assert_eq!(t.period, if j % 2 == 0 { 2 * j } else { 4 * j });
            // one period plus the restart (0, 1)
            let stepped = iterate(j, t.period as usize + 2);
            assert_eq!(&stepped[..t.period as usize], &t.residues[..], "j={j}");
            assert_eq!(stepped[t.period as usize], Natural::zero());
            assert!(stepped[t.period as usize + 1].is_one());
        }
    }

    #[test]
    fn e2_is_square_of_e1() {
        for j in 4..=30 {
            let t1 = residues_e1(j).unwrap();
            let t2 = residues_e2(j).unwrap();
            for k in 0..t1.period.max(t2.period) {
                let sq = (t1.at(k) * t1.at(k)) % &t1.modulus;
                assert_eq!(t2.at(k), &sq, "j={j} k={k}");
            }
        }
    }

    #[test]
    fn e2_mirror_for_odd_j() {
        for j in (5..=29).step_by(2) {
            let t = residues_e2(j).unwrap();
            for i in j + 1..2 * j {
                assert_eq!(t.residues[i as usize], t.residues[(2 * j - i) as usize]);
            }
        }
    }

    #[test]
    fn general_matches_closed_forms() {
        for j in 4..=30 {
            assert_eq!(residues_general(j, 1).unwrap(), residues_e1(j).unwrap());
            assert_eq!(residues_general(j, 2).unwrap(), residues_e2(j).unwrap());
        }
    }

    #[test]
    fn zeros_exactly_at_multiples_of_j() {
        for j in (4..=30).filter(|&j| j != 6) {
            for e in 1..=6 {
                let t = residues_general(j, e).unwrap();
                for (i, r) in t.residues.iter().enumerate() {
                    assert_eq!(r.is_zero(), i as u64 % j == 0, "j={j} e={e} i={i}");
                }
            }
        }
    }

    #[test]
    fn table_invariants() {
        for j in 4..=40 {
            for t in [residues_e1(j).unwrap(), residues_e2(j).unwrap(), residues_general(j, 5).unwrap()] {
                assert_eq!(t.residues.len() as u64, t.period);
                assert!(t.residues[0].is_zero());
                assert!(t.residues[1].is_one());
                assert!(t.residues.iter().all(|r| r < &t.modulus));
            }
        }
    }

    #[test]
    fn large_j_stays_exact() {
        let t = residues_e1(120).unwrap();
        assert_eq!(t.modulus, fib_exact(120));
        assert_eq!(t.residues[239], Natural::one());
        assert_eq!(t.residues[238], fib_exact(120) - 1u32);
    }

    #[test]
    fn serde_shape() {
        let t = residues_e2(6).unwrap();
        let text = serde_json::to_string(&t).unwrap();
        assert_eq!(
            text,
            r#"{"j":6,"e":2,"modulus":"8","period":6,"residues":["0","1","1","4","1","1"]}"#
        );
        assert_eq!(serde_json::from_str::<ResidueTable>(&text).unwrap(), t);
    }
}
