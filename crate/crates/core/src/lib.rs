//! Residues and minimal periods of the power Fibonacci sequences
//! `F_i^e mod F_j`.
//!
//! The crate is split along the lines of the computation:
//!
//! - [`fibcore`]: exact and modular Fibonacci evaluation (fast doubling).
//! - [`residue_tables`]: one full period of normalized residues, built from
//!   closed-form case analysis for `e = 1` and `e = 2`.
//! - [`periodicity`]: the closed-form minimal period `π(F_j, e)`.
//! - [`oracle`]: brute-force period detection that never consults the
//!   closed forms.
//! - [`identities`]: instance checks of the Fibonacci identities the closed
//!   forms rest on, plus the primitive prime divisor statement.
//! - [`scan`]: the closed form versus oracle agreement grid.

pub mod decimal;
mod error;
pub mod factor;
pub mod fibcore;
pub mod identities;
pub mod oracle;
pub mod periodicity;
pub mod residue_tables;
pub mod scan;

pub use error::{Error, Result};
pub use fibcore::{fib_exact, fib_mod, fib_pair_mod, pow_mod, FibPair};
pub use identities::{
    primitive_prime_divisor, IdentityName, PrimitiveDivisorResult, Verdict, VerificationReport,
};
pub use oracle::{minimal_period_bruteforce, pisano_period, sequence_prefix, Oracle, OracleTrace};
pub use periodicity::{period_closed_form, period_divisibility_check, CaseLabel, Outcome, PeriodResult};
pub use residue_tables::{residues_e1, residues_e2, residues_general, ResidueTable};

/// Arbitrary-precision nonnegative integer used for every Fibonacci value
/// and modulus.
pub type Natural = num_bigint::BigUint;

/// Index into the Fibonacci sequence.
pub type Index = u64;

/// Exponent `e` of the power sequence.
pub type Exponent = u64;
