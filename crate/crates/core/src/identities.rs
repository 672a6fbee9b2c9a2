//! Instance checks of the Fibonacci identities used by the closed forms.
//!
//! Each `check_*` function evaluates both sides of one identity at one input
//! tuple with exact integers and returns an [`Evaluation`]. [`sweep`] runs an
//! identity over many inputs in parallel and folds the results into a
//! [`VerificationReport`] in input order.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::factor::{factorize, PrimeFactor};
use crate::fibcore::{fib_exact, fib_mod, pow_mod};
use crate::{Error, Exponent, Index, Natural, Result};

/// Default upper bound on `j` for [`primitive_prime_divisor`].
pub const DEFAULT_J_FACT_MAX: Index = 80;

/// Integer in sign-and-magnitude form. Zero is never negative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signed {
    negative: bool,
    magnitude: Natural,
}

impl Signed {
    pub fn new(negative: bool, magnitude: Natural) -> Self {
        let negative = negative && !magnitude.is_zero();
        Signed {
            negative,
            magnitude,
        }
    }

    pub fn positive(magnitude: Natural) -> Self {
        Signed::new(false, magnitude)
    }

    /// `a - b`.
    pub fn difference(a: &Natural, b: &Natural) -> Self {
        if a >= b {
            Signed::positive(a - b)
        } else {
            Signed::new(true, b - a)
        }
    }

    /// Multiplies by `(-1)^exponent`.
    #[must_use]
    pub fn times_sign_power(self, exponent: u64) -> Self {
        let flip = exponent % 2 == 1;
        Signed::new(self.negative ^ flip, self.magnitude)
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn magnitude(&self) -> &Natural {
        &self.magnitude
    }

    fn parse(text: &str) -> std::result::Result<Self, String> {
        let (negative, digits) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        crate::decimal::parse(digits).map(|m| Signed::new(negative, m))
    }
}

impl From<Natural> for Signed {
    fn from(value: Natural) -> Self {
        Signed::positive(value)
    }
}

impl Ord for Signed {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.negative, other.negative) {
            (false, false) => self.magnitude.cmp(&other.magnitude),
            (true, true) => other.magnitude.cmp(&self.magnitude),
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Signed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Signed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        write!(f, "{}", self.magnitude)
    }
}

impl Serialize for Signed {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Signed {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Signed::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// How the two sides of an identity are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    Less,
}

/// Both sides of one identity at one input tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Evaluation {
    pub inputs: Vec<u64>,
    pub lhs: Signed,
    pub rhs: Signed,
    pub relation: Relation,
}

impl Evaluation {
    fn new(inputs: Vec<u64>, lhs: impl Into<Signed>, rhs: impl Into<Signed>, relation: Relation) -> Self {
        Evaluation {
            inputs,
            lhs: lhs.into(),
            rhs: rhs.into(),
            relation,
        }
    }

    pub fn holds(&self) -> bool {
        match self.relation {
            Relation::Equal => self.lhs == self.rhs,
            Relation::Less => self.lhs < self.rhs,
        }
    }
}

fn flag(b: bool) -> Natural {
    if b {
        Natural::one()
    } else {
        Natural::zero()
    }
}

/// `gcd(F_n, F_m) = F_gcd(n, m)`.
pub fn check_gcd_identity(n: Index, m: Index) -> Result<Evaluation> {
    if n == 0 && m == 0 {
        return Err(Error::domain("gcd identity needs (n, m) != (0, 0)"));
    }
    let lhs = fib_exact(n).gcd(&fib_exact(m));
    let rhs = fib_exact(n.gcd(&m));
    Ok(Evaluation::new(vec![n, m], lhs, rhs, Relation::Equal))
}

/// `F_{n+m} = F_{n-1} F_m + F_n F_{m+1}`.
pub fn check_addition(n: Index, m: Index) -> Result<Evaluation> {
    if n == 0 {
        return Err(Error::domain("addition formula needs n >= 1"));
    }
    let lhs = fib_exact(n + m);
    let rhs = fib_exact(n - 1) * fib_exact(m) + fib_exact(n) * fib_exact(m + 1);
    Ok(Evaluation::new(vec![n, m], lhs, rhs, Relation::Equal))
}

/// `F_n² - F_{n-r} F_{n+r} = (-1)^{n-r} F_r²`.
pub fn check_catalan(n: Index, r: Index) -> Result<Evaluation> {
    if r > n {
        return Err(Error::domain(format!("Catalan identity needs r <= n, got r={r} n={n}")));
    }
    let fnn = fib_exact(n);
    let lhs = Signed::difference(&(&fnn * &fnn), &(fib_exact(n - r) * fib_exact(n + r)));
    let fr = fib_exact(r);
    let rhs = Signed::positive(&fr * &fr).times_sign_power(n - r);
    Ok(Evaluation::new(vec![n, r], lhs, rhs, Relation::Equal))
}

/// `F_n² - F_{n-1} F_{n+1} = (-1)^{n-1}`.
pub fn check_cassini(n: Index) -> Result<Evaluation> {
    if n == 0 {
        return Err(Error::domain("Cassini identity needs n >= 1"));
    }
    let fnn = fib_exact(n);
    let lhs = Signed::difference(&(&fnn * &fnn), &(fib_exact(n - 1) * fib_exact(n + 1)));
    let rhs = Signed::positive(Natural::one()).times_sign_power(n - 1);
    Ok(Evaluation::new(vec![n], lhs, rhs, Relation::Equal))
}

/// The four items of the square lemma for `k ≥ 2`, `0 ≤ α ≤ k`:
///
/// 1. `F_k² < F_{2k}`
/// 2. `F_{k+α}² ≡ F_{k-α}² (mod F_{2k})`
/// 3. `F_{k+1}² < F_{2k+1}`
/// 4. `F_{k+1+α}² ≡ -F_{k-α}² (mod F_{2k+1})`
pub fn check_square_lemma(k: Index, alpha: Index) -> Result<[Evaluation; 4]> {
    if k < 2 || alpha > k {
        return Err(Error::domain(format!(
            "square lemma needs k >= 2 and 0 <= alpha <= k, got k={k} alpha={alpha}"
        )));
    }
    let sq = |i: Index| {
        let f = fib_exact(i);
        &f * &f
    };
    let inputs = vec![k, alpha];
    let f2k = fib_exact(2 * k);
    let f2k1 = fib_exact(2 * k + 1);

    let bound_even = Evaluation::new(inputs.clone(), sq(k), f2k.clone(), Relation::Less);
    let congruence_even = Evaluation::new(
        inputs.clone(),
        sq(k + alpha) % &f2k,
        sq(k - alpha) % &f2k,
        Relation::Equal,
    );
    let bound_odd = Evaluation::new(inputs.clone(), sq(k + 1), f2k1.clone(), Relation::Less);
    // -x mod m represented as (m - x mod m) mod m
    let negated = (&f2k1 - sq(k - alpha) % &f2k1) % &f2k1;
    let congruence_odd = Evaluation::new(
        inputs,
        sq(k + 1 + alpha) % &f2k1,
        negated,
        Relation::Equal,
    );
    Ok([bound_even, congruence_even, bound_odd, congruence_odd])
}

/// One index of the zero-position biconditional: `lhs` is 1 when
/// `F_i^e ≡ 0 (mod F_j)`, `rhs` is 1 when `j | i`.
pub fn zero_position_case(j: Index, e: Exponent, i: Index) -> Result<Evaluation> {
    if j < 4 || e == 0 {
        return Err(Error::domain(format!(
            "zero positions need j >= 4 and e >= 1, got j={j} e={e}"
        )));
    }
    let m = fib_exact(j);
    let is_zero = pow_mod(&fib_mod(i, &m)?, e, &m)?.is_zero();
    Ok(Evaluation::new(
        vec![j, e, i],
        flag(is_zero),
        flag(i % j == 0),
        Relation::Equal,
    ))
}

/// Scans `i ∈ [0, i_max]` for `F_i^e ≡ 0 (mod F_j) ⇔ j | i`.
///
/// `j = 6` is outside the statement's hypothesis; the report is
/// [`Verdict::NotApplicable`] and carries the first index where the
/// biconditional breaks (`i = 3` for `e ≥ 3`), if any.
pub fn check_zero_positions(j: Index, e: Exponent, i_max: u64) -> Result<VerificationReport> {
    let domain = format!("j={j}, e={e}, 0 <= i <= {i_max}");
    let cases: Vec<Vec<u64>> = (0..=i_max).map(|i| vec![j, e, i]).collect();
    if j == 6 {
        let evals = cases
            .iter()
            .map(|c| zero_position_case(c[0], c[1], c[2]))
            .collect::<Result<Vec<_>>>()?;
        let witness = evals.into_iter().find(|ev| !ev.holds());
        return Ok(VerificationReport {
            identity: IdentityName::ZeroPositions,
            domain,
            cases: i_max + 1,
            verdict: Verdict::NotApplicable {
                reason: "j = 6 is excluded: F_3 = 2 and F_6 = 2^3".into(),
                witness,
            },
        });
    }
    sweep(IdentityName::ZeroPositions, domain, cases)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityName {
    Gcd,
    Addition,
    Catalan,
    Cassini,
    /// `F_k² < F_{2k}`
    SquareBoundEven,
    /// `F_{k+α}² ≡ F_{k-α}² (mod F_{2k})`
    SquareCongruenceEven,
    /// `F_{k+1}² < F_{2k+1}`
    SquareBoundOdd,
    /// `F_{k+1+α}² ≡ -F_{k-α}² (mod F_{2k+1})`
    SquareCongruenceOdd,
    ZeroPositions,
    /// A primitive prime divisor exists exactly when `j != 12`.
    PrimitiveDivisor,
}

impl IdentityName {
    pub const ALL: [IdentityName; 10] = [
        IdentityName::Gcd,
        IdentityName::Addition,
        IdentityName::Catalan,
        IdentityName::Cassini,
        IdentityName::SquareBoundEven,
        IdentityName::SquareCongruenceEven,
        IdentityName::SquareBoundOdd,
        IdentityName::SquareCongruenceOdd,
        IdentityName::ZeroPositions,
        IdentityName::PrimitiveDivisor,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityName::Gcd => "gcd",
            IdentityName::Addition => "addition",
            IdentityName::Catalan => "catalan",
            IdentityName::Cassini => "cassini",
            IdentityName::SquareBoundEven => "square_bound_even",
            IdentityName::SquareCongruenceEven => "square_congruence_even",
            IdentityName::SquareBoundOdd => "square_bound_odd",
            IdentityName::SquareCongruenceOdd => "square_congruence_odd",
            IdentityName::ZeroPositions => "zero_positions",
            IdentityName::PrimitiveDivisor => "primitive_divisor",
        }
    }

    /// Evaluates the identity at one input tuple.
    pub fn evaluate(self, inputs: &[u64]) -> Result<Evaluation> {
        let arity = match self {
            IdentityName::Cassini | IdentityName::PrimitiveDivisor => 1,
            IdentityName::ZeroPositions => 3,
            _ => 2,
        };
        if inputs.len() != arity {
            return Err(Error::domain(format!(
                "{} takes {arity} input(s), got {}",
                self.as_str(),
                inputs.len()
            )));
        }
        let square_item = |item: usize| -> Result<Evaluation> {
            let [a, b, c, d] = check_square_lemma(inputs[0], inputs[1])?;
            Ok([a, b, c, d].into_iter().nth(item).expect("four items"))
        };
        match self {
            IdentityName::Gcd => check_gcd_identity(inputs[0], inputs[1]),
            IdentityName::Addition => check_addition(inputs[0], inputs[1]),
            IdentityName::Catalan => check_catalan(inputs[0], inputs[1]),
            IdentityName::Cassini => check_cassini(inputs[0]),
            IdentityName::SquareBoundEven => square_item(0),
            IdentityName::SquareCongruenceEven => square_item(1),
            IdentityName::SquareBoundOdd => square_item(2),
            IdentityName::SquareCongruenceOdd => square_item(3),
            IdentityName::ZeroPositions => zero_position_case(inputs[0], inputs[1], inputs[2]),
            IdentityName::PrimitiveDivisor => {
                let j = inputs[0];
                let found = primitive_prime_divisor(j)?.primitive_prime.is_some();
                Ok(Evaluation::new(vec![j], flag(found), flag(j != 12), Relation::Equal))
            }
        }
    }
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Verdict {
    AllPass,
    Counterexample(Evaluation),
    NotApplicable {
        reason: String,
        witness: Option<Evaluation>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "ReportRecord", try_from = "ReportRecord")]
pub struct VerificationReport {
    pub identity: IdentityName,
    pub domain: String,
    pub cases: u64,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::AllPass
    }

    /// Re-evaluates a recorded counterexample; `Some(true)` means it still
    /// fails.
    pub fn reproduce(&self) -> Option<Result<bool>> {
        match &self.verdict {
            Verdict::Counterexample(ev) => {
                Some(self.identity.evaluate(&ev.inputs).map(|again| !again.holds()))
            }
            _ => None,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ReportRecord {
    identity: IdentityName,
    domain: String,
    cases: u64,
    verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    counterexample: Option<Evaluation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

impl From<VerificationReport> for ReportRecord {
    fn from(r: VerificationReport) -> Self {
        let (verdict, counterexample, reason) = match r.verdict {
            Verdict::AllPass => ("all_pass", None, None),
            Verdict::Counterexample(ev) => ("counterexample", Some(ev), None),
            Verdict::NotApplicable { reason, witness } => ("not_applicable", witness, Some(reason)),
        };
        ReportRecord {
            identity: r.identity,
            domain: r.domain,
            cases: r.cases,
            verdict: verdict.to_string(),
            counterexample,
            reason,
        }
    }
}

impl TryFrom<ReportRecord> for VerificationReport {
    type Error = String;

    fn try_from(r: ReportRecord) -> std::result::Result<Self, String> {
        let verdict = match r.verdict.as_str() {
            "all_pass" => Verdict::AllPass,
            "counterexample" => Verdict::Counterexample(
                r.counterexample
                    .ok_or("counterexample verdict without a counterexample")?,
            ),
            "not_applicable" => Verdict::NotApplicable {
                reason: r.reason.unwrap_or_default(),
                witness: r.counterexample,
            },
            other => return Err(format!("unknown verdict {other:?}")),
        };
        Ok(VerificationReport {
            identity: r.identity,
            domain: r.domain,
            cases: r.cases,
            verdict,
        })
    }
}

/// Evaluates `identity` on every input tuple and reports the first failure
/// in input order. Evaluation runs on the current rayon pool.
pub fn sweep(
    identity: IdentityName,
    domain: impl Into<String>,
    cases: Vec<Vec<u64>>,
) -> Result<VerificationReport> {
    if cases.is_empty() {
        return Err(Error::domain("a sweep needs at least one case"));
    }
    let evals = cases
        .par_iter()
        .map(|c| identity.evaluate(c))
        .collect::<Result<Vec<_>>>()?;
    let verdict = match evals.into_iter().find(|ev| !ev.holds()) {
        Some(ev) => Verdict::Counterexample(ev),
        None => Verdict::AllPass,
    };
    Ok(VerificationReport {
        identity,
        domain: domain.into(),
        cases: cases.len() as u64,
        verdict,
    })
}

/// Fixed-seed sample of distinct `(n, m)` pairs with `n, m ≤ max`, excluding
/// `(0, 0)`.
pub fn sample_pairs(count: usize, max: u64, seed: u64) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::BTreeSet::new();
    let available = ((max + 1) * (max + 1) - 1) as usize;
    let mut out = Vec::with_capacity(count.min(available));
    while out.len() < count.min(available) {
        let pair = (rng.random_range(0..=max), rng.random_range(0..=max));
        if pair != (0, 0) && seen.insert(pair) {
            out.push(vec![pair.0, pair.1]);
        }
    }
    out
}

/// The full set of identity sweeps at their standard ranges, in a fixed
/// order.
pub fn standard_suites() -> Result<Vec<VerificationReport>> {
    let mut reports = vec![
        sweep(
            IdentityName::Gcd,
            "200 sampled pairs (n, m), 0 <= n, m <= 60",
            sample_pairs(200, 60, 0x5eed),
        )?,
        sweep(
            IdentityName::Addition,
            "1 <= n <= 80, 0 <= m <= 80",
            (1..=80).flat_map(|n| (0..=80).map(move |m| vec![n, m])).collect(),
        )?,
        sweep(
            IdentityName::Catalan,
            "0 <= r <= n <= 80",
            (0..=80).flat_map(|n| (0..=n).map(move |r| vec![n, r])).collect(),
        )?,
        sweep(
            IdentityName::Cassini,
            "1 <= n <= 120",
            (1..=120).map(|n| vec![n]).collect(),
        )?,
    ];
    let lemma_cases: Vec<Vec<u64>> = (2..=30)
        .flat_map(|k| (0..=k).map(move |a| vec![k, a]))
        .collect();
    for item in [
        IdentityName::SquareBoundEven,
        IdentityName::SquareCongruenceEven,
        IdentityName::SquareBoundOdd,
        IdentityName::SquareCongruenceOdd,
    ] {
        reports.push(sweep(item, "2 <= k <= 30, 0 <= alpha <= k", lemma_cases.clone())?);
    }
    reports.push(sweep(
        IdentityName::ZeroPositions,
        "4 <= j <= 20, j != 6, 1 <= e <= 5, 0 <= i <= 5j",
        (4..=20u64)
            .filter(|&j| j != 6)
            .flat_map(|j| (1..=5).flat_map(move |e| (0..=5 * j).map(move |i| vec![j, e, i])))
            .collect(),
    )?);
    reports.push(check_zero_positions(6, 3, 12)?);
    reports.push(sweep(
        IdentityName::PrimitiveDivisor,
        "3 <= j <= 40, primitive prime exists iff j != 12",
        (3..=40).map(|j| vec![j]).collect(),
    )?);
    Ok(reports)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimitiveDivisorResult {
    pub j: Index,
    #[serde(with = "crate::decimal::option")]
    pub primitive_prime: Option<Natural>,
    pub rank_of_apparition: Option<Index>,
    pub factor_trace: Vec<PrimeFactor>,
}

/// Smallest `i` in `1..=limit` with `q | F_i`, by stepping `F_i mod q`.
fn rank_of_apparition(q: &Natural, limit: Index) -> Option<Index> {
    let (mut a, mut b) = (Natural::zero(), Natural::one() % q);
    for i in 1..=limit {
        let next = (&a + &b) % q;
        a = std::mem::replace(&mut b, next);
        if a.is_zero() {
            return Some(i);
        }
    }
    None
}

/// Primitive prime divisor of `F_j` with the default range guard.
pub fn primitive_prime_divisor(j: Index) -> Result<PrimitiveDivisorResult> {
    primitive_prime_divisor_within(j, DEFAULT_J_FACT_MAX)
}

/// Factors `F_j` and returns its smallest prime factor that divides no
/// earlier `F_i`, if one exists.
pub fn primitive_prime_divisor_within(j: Index, j_fact_max: Index) -> Result<PrimitiveDivisorResult> {
    if j < 3 {
        return Err(Error::domain(format!("primitive divisors are defined for j >= 3, got {j}")));
    }
    let fj = fib_exact(j);
    if j > j_fact_max {
        return Err(Error::ResourceGuard {
            what: format!("factorization of F_{j}"),
            limit: j_fact_max,
        });
    }
    let factorization = factorize(&fj);
    let factor_trace: Vec<PrimeFactor> = factorization
        .factors
        .into_iter()
        .map(|(prime, multiplicity)| {
            let rank = rank_of_apparition(&prime, j).expect("every prime factor of F_j divides F_j");
            PrimeFactor {
                prime,
                multiplicity,
                rank_of_apparition: rank,
            }
        })
        .collect();
    if !factorization.cofactor.is_one() {
        return Err(Error::FactorizationLimit {
            j,
            partial: factor_trace,
            cofactor: factorization.cofactor,
        });
    }
    let primitive = factor_trace.iter().find(|f| f.rank_of_apparition == j);
    Ok(PrimitiveDivisorResult {
        j,
        primitive_prime: primitive.map(|f| f.prime.clone()),
        rank_of_apparition: primitive.map(|f| f.rank_of_apparition),
        factor_trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    fn int(v: i64) -> Signed {
        Signed::new(v < 0, Natural::from(v.unsigned_abs()))
    }

    #[test]
    fn signed_basics() {
        assert_eq!(Signed::difference(&nat(64), &nat(63)), int(1));
        assert_eq!(Signed::difference(&nat(63), &nat(64)), int(-1));
        assert_eq!(Signed::new(true, nat(0)), int(0));
        assert!(int(-5) < int(-2));
        assert!(int(-2) < int(0));
        assert_eq!(int(-38).to_string(), "-38");
        assert_eq!(int(3).times_sign_power(5), int(-3));
        assert_eq!(Signed::parse("-12").unwrap(), int(-12));
        assert!(Signed::parse("--1").is_err());
    }

    #[test]
    fn gcd_examples() {
        let ev = check_gcd_identity(10, 15).unwrap();
        assert_eq!((ev.lhs.clone(), ev.rhs.clone()), (int(5), int(5)));
        assert!(ev.holds());
        let ev = check_gcd_identity(12, 8).unwrap();
        assert_eq!(ev.lhs, int(3));
        assert!(ev.holds());
        assert!(check_gcd_identity(9, 9).unwrap().holds());
        assert!(check_gcd_identity(0, 7).unwrap().holds());
        assert!(check_gcd_identity(0, 0).is_err());
    }

    #[test]
    fn addition_examples() {
        let ev = check_addition(7, 5).unwrap();
        assert_eq!(ev.lhs, int(144));
        assert!(ev.holds());
        let ev = check_addition(1, 0).unwrap();
        assert_eq!(ev.rhs, int(1));
        for k in 1..40 {
            assert!(check_addition(k, k).unwrap().holds());
        }
        assert!(check_addition(0, 3).is_err());
    }

    #[test]
    fn catalan_examples() {
        let ev = check_catalan(6, 2).unwrap();
        assert_eq!((ev.lhs.clone(), ev.rhs.clone()), (int(1), int(1)));
        let ev = check_catalan(5, 5).unwrap();
        assert_eq!(ev.rhs, int(25));
        assert!(ev.holds());
        let ev = check_catalan(7, 0).unwrap();
        assert_eq!(ev.lhs, int(0));
        assert!(ev.holds());
        // odd n - r gives a negative right-hand side
        let ev = check_catalan(6, 3).unwrap();
        assert_eq!(ev.rhs, int(-4));
        assert!(ev.holds());
        assert!(check_catalan(3, 4).is_err());
    }

    #[test]
    fn cassini_examples() {
        assert_eq!(check_cassini(1).unwrap().lhs, int(1));
        assert_eq!(check_cassini(7).unwrap().lhs, int(1));
        assert_eq!(check_cassini(8).unwrap().lhs, int(-1));
        // F_{j+1}² ≡ 1 (mod F_j) for even j
        for j in (4..=40).step_by(2) {
            assert!(check_cassini(j + 1).unwrap().holds());
            let f = fib_exact(j + 1);
            assert!(((&f * &f) % fib_exact(j)).is_one());
        }
        assert!(check_cassini(0).is_err());
    }

    #[test]
    fn square_lemma_examples() {
        let items = check_square_lemma(2, 0).unwrap();
        assert!(items.iter().all(Evaluation::holds));
        let items = check_square_lemma(3, 2).unwrap();
        assert_eq!((items[1].lhs.clone(), items[1].rhs.clone()), (int(1), int(1)));
        let items = check_square_lemma(3, 1).unwrap();
        assert_eq!((items[3].lhs.clone(), items[3].rhs.clone()), (int(12), int(12)));
        assert!(check_square_lemma(1, 0).is_err());
        assert!(check_square_lemma(4, 5).is_err());
    }

    #[test]
    fn zero_positions() {
        let r = check_zero_positions(12, 2, 60).unwrap();
        assert!(r.passed());
        assert_eq!(r.cases, 61);
        assert!(check_zero_positions(9, 4, 0).unwrap().passed());
        let r = check_zero_positions(6, 3, 12).unwrap();
        match r.verdict {
            Verdict::NotApplicable { witness: Some(w), .. } => {
                assert_eq!(w.inputs, vec![6, 3, 3]);
                assert_eq!(w.lhs, int(1));
                assert_eq!(w.rhs, int(0));
            }
            other => panic!("unexpected verdict {other:?}"),
        }
        assert!(check_zero_positions(3, 1, 5).is_err());
    }

    #[test]
    fn zero_positions_full_range() {
        for j in (4..=20).filter(|&j| j != 6) {
            for e in 1..=5 {
                assert!(check_zero_positions(j, e, 5 * j).unwrap().passed(), "j={j} e={e}");
            }
        }
    }

    #[test]
    fn primitive_divisor_examples() {
        let r = primitive_prime_divisor(12).unwrap();
        assert_eq!(r.primitive_prime, None);
        assert_eq!(r.rank_of_apparition, None);
        let trace: Vec<(u64, u32, u64)> = r
            .factor_trace
            .iter()
            .map(|f| (f.prime.to_u64().unwrap(), f.multiplicity, f.rank_of_apparition))
            .collect();
        assert_eq!(trace, vec![(2, 4, 3), (3, 2, 4)]);

        let r = primitive_prime_divisor(10).unwrap();
        assert_eq!(r.primitive_prime, Some(nat(11)));
        assert_eq!(r.rank_of_apparition, Some(10));
        assert_eq!(primitive_prime_divisor(9).unwrap().primitive_prime, Some(nat(17)));
        assert_eq!(primitive_prime_divisor(3).unwrap().primitive_prime, Some(nat(2)));
        assert_eq!(primitive_prime_divisor(6).unwrap().primitive_prime, None);
    }

    #[test]
    fn primitive_divisor_guard() {
        assert!(primitive_prime_divisor(81).unwrap_err().is_resource_guard());
        assert!(primitive_prime_divisor(2).is_err());
    }

    #[test]
    fn primitive_divisor_up_to_80() {
        for j in 3..=80 {
            let r = primitive_prime_divisor(j).unwrap();
            let product = r
                .factor_trace
                .iter()
                .fold(Natural::one(), |acc, f| acc * f.prime.pow(f.multiplicity));
            assert_eq!(product, fib_exact(j));
            // 6 and 12 are the only exceptions from 1 up (F_1 = F_2 = 1 aside)
            assert_eq!(r.primitive_prime.is_none(), j == 6 || j == 12, "j={j}");
            if let Some(p) = &r.primitive_prime {
                for i in 1..j {
                    assert!(!(fib_exact(i) % p).is_zero());
                }
            }
        }
    }

    #[test]
    fn sweep_reports_first_failure_in_order() {
        let r = sweep(IdentityName::Cassini, "1..=5", (1..=5).map(|n| vec![n]).collect()).unwrap();
        assert!(r.passed());
        // F_6 = 8 has no primitive prime divisor, contrary to the j != 12
        // statement; j = 12 fails too but comes later.
        let r = sweep(
            IdentityName::PrimitiveDivisor,
            "3 <= j <= 14",
            (3..=14).map(|j| vec![j]).collect(),
        )
        .unwrap();
        match &r.verdict {
            Verdict::Counterexample(ev) => assert_eq!(ev.inputs, vec![6]),
            other => panic!("unexpected verdict {other:?}"),
        }
        assert_eq!(r.reproduce().unwrap().unwrap(), true);
        assert!(sweep(IdentityName::Cassini, "none", vec![]).is_err());
        assert!(IdentityName::Gcd.evaluate(&[1]).is_err());
    }

    #[test]
    fn counterexample_reproduces() {
        let ev = Evaluation::new(vec![5], int(2), int(3), Relation::Equal);
        let report = VerificationReport {
            identity: IdentityName::Cassini,
            domain: "fabricated".into(),
            cases: 1,
            verdict: Verdict::Counterexample(ev),
        };
        // the real identity holds at n = 5, so the recorded failure does not reproduce
        assert_eq!(report.reproduce().unwrap().unwrap(), false);
    }

    #[test]
    fn sample_pairs_are_distinct_and_deterministic() {
        let a = sample_pairs(200, 60, 1);
        assert_eq!(a, sample_pairs(200, 60, 1));
        let set: std::collections::BTreeSet<_> = a.iter().cloned().collect();
        assert_eq!(set.len(), 200);
        assert!(a.iter().all(|p| p[0] <= 60 && p[1] <= 60 && p != &vec![0, 0]));
        assert_eq!(sample_pairs(10, 1, 0).len(), 3);
    }

    #[test]
    fn standard_suites_only_fail_at_f6() {
        let reports = standard_suites().unwrap();
        for r in &reports {
            match &r.verdict {
                Verdict::AllPass => {}
                Verdict::NotApplicable { .. } => assert_eq!(r.identity, IdentityName::ZeroPositions),
                Verdict::Counterexample(ev) => {
                    assert_eq!(r.identity, IdentityName::PrimitiveDivisor);
                    assert_eq!(ev.inputs, vec![6]);
                }
            }
        }
        assert_eq!(reports[0].cases, 200);
    }

    #[test]
    fn report_serde_shape() {
        let r = check_zero_positions(6, 3, 12).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["identity"], "zero_positions");
        assert_eq!(v["verdict"], "not_applicable");
        assert_eq!(v["counterexample"]["inputs"], serde_json::json!([6, 3, 3]));
        assert_eq!(serde_json::from_value::<VerificationReport>(v).unwrap(), r);

        let r = sweep(IdentityName::Catalan, "n=6", vec![vec![6, 3]]).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(
            text,
            r#"{"identity":"catalan","domain":"n=6","cases":1,"verdict":"all_pass"}"#
        );

        let p = primitive_prime_divisor(12).unwrap();
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v["primitive_prime"], serde_json::Value::Null);
        assert_eq!(v["factor_trace"][0]["prime"], "2");
        assert_eq!(serde_json::from_value::<PrimitiveDivisorResult>(v).unwrap(), p);
    }
}
