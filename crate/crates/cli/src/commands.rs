use std::fmt::Write as _;
use std::time::{Duration, Instant};

use fibpow::identities::{self, IdentityName, Verdict};
use fibpow::oracle::{DivisorVerdict, Oracle};
use fibpow::residue_tables::{residues_e1_annotated, residues_e2_annotated, residues_general, Clause};
use fibpow::scan::{agreement_grid, GridCell};
use fibpow::{
    fib_mod, period_closed_form, Error, Natural, OracleTrace, PeriodResult, ResidueTable,
    VerificationReport,
};
use serde::{Deserialize, Serialize};

use crate::args::{Command, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    /// A closed form and the oracle (or an identity) disagree.
    Disagreement,
}

pub struct Output {
    pub text: String,
    pub status: Status,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Guard(String),
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        if err.is_resource_guard() {
            CliError::Guard(err.to_string())
        } else {
            CliError::Usage(err.to_string())
        }
    }
}

type CmdResult = Result<Output, CliError>;

fn ok(text: String) -> CmdResult {
    Ok(Output {
        text,
        status: Status::Success,
    })
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output types serialize")
}

pub fn run(command: Command, format: Format, oracle: &Oracle) -> CmdResult {
    match command {
        Command::Period { j, e, verify } => period(j, e, verify, format, oracle),
        Command::Table { j, e, annotate } => table(j, e, annotate, format),
        Command::Oracle { j, e } => oracle_trace(j, e, format, oracle),
        Command::Verify { identity } => verify(identity.as_deref(), format),
        Command::Scan { j_range, e_range } => scan(j_range, e_range, format, oracle),
        Command::Bench {
            modulus,
            n_exponents,
        } => bench(&modulus, &n_exponents, format),
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifiedPeriod {
    pub result: PeriodResult,
    pub oracle: Option<OracleTrace>,
    pub agree: Option<bool>,
}

fn period(j: u64, e: u64, verify: bool, format: Format, oracle: &Oracle) -> CmdResult {
    let result = period_closed_form(j, e)?;
    let trace = if verify && j >= 3 {
        Some(oracle.minimal_period_bruteforce(j, e)?)
    } else {
        None
    };
    let agree = trace
        .as_ref()
        .map(|t| result.period() == Some(t.power_period));
    let status = if agree == Some(false) {
        Status::Disagreement
    } else {
        Status::Success
    };
    let outcome = match result.period() {
        Some(p) => p.to_string(),
        None => "not periodic".to_string(),
    };

    let text = match format {
        Format::Json if verify => json(&VerifiedPeriod {
            result,
            oracle: trace,
            agree,
        }),
        Format::Json => json(&result),
        Format::Csv => {
            let mut s = String::from("j,e,outcome,case_label");
            if verify {
                s.push_str(",oracle,agree");
            }
            let _ = write!(s, "\n{j},{e},{outcome},{}", result.case_label);
            if verify {
                match (&trace, agree) {
                    (Some(t), Some(a)) => {
                        let _ = write!(s, ",{},{a}", t.power_period);
                    }
                    _ => s.push_str(",,"),
                }
            }
            s
        }
        Format::Plain => {
            let mut s = format!("pi(F_{j}, {e}) = {outcome}  [{}]", result.case_label);
            if verify {
                match (&trace, agree) {
                    (Some(t), Some(a)) => {
                        let _ = write!(
                            s,
                            "\noracle: {} (modulus {}, pisano {})\nagree: {}",
                            t.power_period,
                            t.modulus,
                            t.pisano,
                            if a { "yes" } else { "NO" }
                        );
                    }
                    _ => s.push_str("\noracle: not applicable (F_j < 2)"),
                }
            }
            s
        }
    };
    Ok(Output { text, status })
}

fn base_case_note(j: u64) -> &'static str {
    match j {
        0 => "F_0 = 0: F_i^e grows without bound, so the sequence is not periodic",
        1 | 2 => "F_j = 1: every residue is 0, the sequence is [0]",
        _ => "F_3 = 2: the sequence is [0, 1, 1] for every e",
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TableOut {
    #[serde(flatten)]
    pub table: ResidueTable,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clauses: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn table(j: u64, e: u64, annotate: bool, format: Format) -> CmdResult {
    if e == 0 {
        return Err(CliError::Usage("exponent e must be at least 1".into()));
    }
    let (table, clauses, note): (Option<ResidueTable>, Option<Vec<Clause>>, Option<&str>) = match j {
        0 => (None, None, Some(base_case_note(0))),
        1..=3 => {
            let residues: Vec<Natural> = if j == 3 {
                [0u32, 1, 1].into_iter().map(Natural::from).collect()
            } else {
                vec![Natural::from(0u32)]
            };
            let t = ResidueTable {
                j,
                e,
                modulus: fibpow::fib_exact(j),
                period: residues.len() as u64,
                residues,
            };
            (Some(t), None, Some(base_case_note(j)))
        }
        _ => match e {
            1 => {
                let (t, c) = residues_e1_annotated(j)?;
                (Some(t), annotate.then_some(c), None)
            }
            2 => {
                let (t, c) = residues_e2_annotated(j)?;
                (Some(t), annotate.then_some(c), None)
            }
            _ => {
                let note = annotate.then_some("clause annotations exist only for e = 1 and e = 2");
                (Some(residues_general(j, e)?), None, note)
            }
        },
    };
    let clause_names = clauses.map(|cs| cs.iter().map(ToString::to_string).collect::<Vec<_>>());

    let text = match format {
        Format::Json => match table {
            Some(table) => json(&TableOut {
                table,
                clauses: clause_names,
                note: note.map(str::to_string),
            }),
            None => json(&serde_json::json!({ "j": j, "e": e, "note": note })),
        },
        Format::Csv => {
            let mut s = String::from(if clause_names.is_some() { "i,rho,case" } else { "i,rho" });
            if let Some(t) = &table {
                for (i, r) in t.residues.iter().enumerate() {
                    let _ = write!(s, "\n{i},{r}");
                    if let Some(names) = &clause_names {
                        let _ = write!(s, ",{}", names[i]);
                    }
                }
            }
            s
        }
        Format::Plain => {
            let mut s = String::new();
            if let Some(note) = note {
                let _ = writeln!(s, "{note}");
            }
            if let Some(t) = &table {
                let _ = write!(s, "F_{j} = {}, e = {e}, period {}", t.modulus, t.period);
                match &clause_names {
                    Some(names) => {
                        for (i, (r, c)) in t.residues.iter().zip(names).enumerate() {
                            let _ = write!(s, "\n{i:>4}  {r:>8}  ({c})");
                        }
                    }
                    None => {
                        let items: Vec<String> = t.residues.iter().map(ToString::to_string).collect();
                        let _ = write!(s, "\n[{}]", items.join(", "));
                    }
                }
            }
            s.trim_end().to_string()
        }
    };
    ok(text)
}

fn oracle_trace(j: u64, e: u64, format: Format, oracle: &Oracle) -> CmdResult {
    let trace = oracle.minimal_period_bruteforce(j, e)?;
    let text = match format {
        Format::Json => json(&trace),
        Format::Csv => {
            let mut s = String::from("d,verdict,witness_index");
            for c in &trace.checked_divisors {
                let verdict = match c.verdict {
                    DivisorVerdict::Holds => "holds",
                    DivisorVerdict::Fails => "fails",
                };
                let witness = c.witness_index.map(|w| w.to_string()).unwrap_or_default();
                let _ = write!(s, "\n{},{verdict},{witness}", c.d);
            }
            s
        }
        Format::Plain => {
            let mut s = format!(
                "modulus F_{j} = {}\npisano period {}\nminimal period of e = {e} power sequence: {}",
                trace.modulus, trace.pisano, trace.power_period
            );
            for c in &trace.checked_divisors {
                match c.witness_index {
                    Some(w) => {
                        let _ = write!(s, "\n  d = {:>4}: fails at i = {w}", c.d);
                    }
                    None => {
                        let _ = write!(s, "\n  d = {:>4}: holds", c.d);
                    }
                }
            }
            s
        }
    };
    ok(text)
}

fn verify(identity: Option<&str>, format: Format) -> CmdResult {
    let wanted = match identity {
        Some(name) => Some(
            IdentityName::ALL
                .into_iter()
                .find(|i| i.as_str() == name)
                .ok_or_else(|| {
                    let names: Vec<&str> = IdentityName::ALL.iter().map(|i| i.as_str()).collect();
                    CliError::Usage(format!(
                        "unknown identity {name:?}; expected one of {}",
                        names.join(", ")
                    ))
                })?,
        ),
        None => None,
    };
    let reports: Vec<VerificationReport> = identities::standard_suites()?
        .into_iter()
        .filter(|r| wanted.is_none_or(|w| w == r.identity))
        .collect();
    let failed = reports
        .iter()
        .any(|r| matches!(r.verdict, Verdict::Counterexample(_)));

    let text = match format {
        Format::Json => json(&reports),
        Format::Csv => {
            let mut s = String::from("identity,domain,cases,verdict,inputs,lhs,rhs");
            for r in &reports {
                let (verdict, ev) = match &r.verdict {
                    Verdict::AllPass => ("all_pass", None),
                    Verdict::Counterexample(ev) => ("counterexample", Some(ev)),
                    Verdict::NotApplicable { witness, .. } => ("not_applicable", witness.as_ref()),
                };
                let _ = write!(s, "\n{},\"{}\",{},{verdict}", r.identity, r.domain, r.cases);
                match ev {
                    Some(ev) => {
                        let inputs: Vec<String> = ev.inputs.iter().map(u64::to_string).collect();
                        let _ = write!(s, ",{},{},{}", inputs.join(" "), ev.lhs, ev.rhs);
                    }
                    None => s.push_str(",,,"),
                }
            }
            s
        }
        Format::Plain => {
            let mut lines = Vec::new();
            for r in &reports {
                let verdict = match &r.verdict {
                    Verdict::AllPass => "pass".to_string(),
                    Verdict::Counterexample(ev) => format!(
                        "COUNTEREXAMPLE at {:?}: lhs {} vs rhs {}",
                        ev.inputs, ev.lhs, ev.rhs
                    ),
                    Verdict::NotApplicable { reason, witness } => match witness {
                        Some(w) => format!("not applicable ({reason}); witness {:?}", w.inputs),
                        None => format!("not applicable ({reason})"),
                    },
                };
                lines.push(format!(
                    "{:<24} {:>6} cases  {:<48} {verdict}",
                    r.identity.as_str(),
                    r.cases,
                    r.domain
                ));
            }
            lines.join("\n")
        }
    };
    Ok(Output {
        text,
        status: if failed {
            Status::Disagreement
        } else {
            Status::Success
        },
    })
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ScanOut {
    pub cells: Vec<GridCell>,
    pub all_agree: bool,
}

fn scan(
    j_range: std::ops::RangeInclusive<u64>,
    e_range: std::ops::RangeInclusive<u64>,
    format: Format,
    oracle: &Oracle,
) -> CmdResult {
    let cells = agreement_grid(j_range, e_range, oracle)?;
    let all_agree = cells.iter().all(|c| c.agree);
    let text = match format {
        Format::Json => json(&ScanOut {
            cells,
            all_agree,
        }),
        Format::Csv => {
            let mut s = String::from("j,e,case_label,closed_form,oracle,agree");
            for c in &cells {
                let _ = write!(
                    s,
                    "\n{},{},{},{},{},{}",
                    c.j, c.e, c.case_label, c.closed_form, c.oracle, c.agree
                );
            }
            s
        }
        Format::Plain => {
            let mut s = String::new();
            for c in &cells {
                let _ = writeln!(
                    s,
                    "j={:<3} e={:<3} {:<12} closed form {:>4}  oracle {:>4}  {}",
                    c.j,
                    c.e,
                    c.case_label.as_str(),
                    c.closed_form,
                    c.oracle,
                    if c.agree { "ok" } else { "DISAGREE" }
                );
            }
            let disagreements = cells.iter().filter(|c| !c.agree).count();
            let _ = write!(s, "{} cells, {disagreements} disagreement(s)", cells.len());
            s
        }
    };
    Ok(Output {
        text,
        status: if all_agree {
            Status::Success
        } else {
            Status::Disagreement
        },
    })
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Timing {
    pub n: String,
    pub nanos: u64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BenchOut {
    pub modulus: String,
    pub timings: Vec<Timing>,
    pub sublinear: bool,
}

/// Fastest of several runs.
fn time_fib_mod(n: u64, m: &Natural) -> Result<Duration, Error> {
    let mut best = Duration::MAX;
    for _ in 0..25 {
        let start = Instant::now();
        std::hint::black_box(fib_mod(std::hint::black_box(n), m)?);
        best = best.min(start.elapsed());
    }
    Ok(best)
}

fn bench(modulus: &Natural, exponents: &[u32], format: Format) -> CmdResult {
    if exponents.is_empty() {
        return Err(CliError::Usage("need at least one exponent".into()));
    }
    let mut ns = Vec::with_capacity(exponents.len());
    for &k in exponents {
        let n = 10u64
            .checked_pow(k)
            .ok_or_else(|| CliError::Usage(format!("10^{k} does not fit in a 64-bit index")))?;
        ns.push(n);
    }
    let mut timings = Vec::with_capacity(ns.len());
    for &n in &ns {
        timings.push((n, time_fib_mod(n, modulus)?));
    }

    // Logarithmic cost: time should track the bit length of n, not n.
    // Allow 4x slack over the bit-length ratio.
    let (n_lo, t_lo) = timings.iter().min_by_key(|(n, _)| *n).copied().expect("non-empty");
    let (n_hi, t_hi) = timings.iter().max_by_key(|(n, _)| *n).copied().expect("non-empty");
    let bits = |n: u64| f64::from(u64::BITS - n.leading_zeros()).max(1.0);
    let allowed = 4.0 * bits(n_hi) / bits(n_lo);
    let sublinear = t_hi.as_nanos() as f64 <= allowed * (t_lo.as_nanos().max(1) as f64);

    let text = match format {
        Format::Json => json(&BenchOut {
            modulus: modulus.to_string(),
            timings: timings
                .iter()
                .map(|(n, t)| Timing {
                    n: n.to_string(),
                    nanos: t.as_nanos() as u64,
                })
                .collect(),
            sublinear,
        }),
        Format::Csv => {
            let mut s = String::from("n,nanos");
            for (n, t) in &timings {
                let _ = write!(s, "\n{n},{}", t.as_nanos());
            }
            s
        }
        Format::Plain => {
            let mut s = format!("fib_mod with modulus {modulus}");
            for (n, t) in &timings {
                let _ = write!(s, "\n  n = {n:>20}  {:>10.3} us", t.as_nanos() as f64 / 1e3);
            }
            let _ = write!(s, "\nsub-linear growth: {}", if sublinear { "yes" } else { "NO" });
            s
        }
    };
    Ok(Output {
        text,
        status: if sublinear {
            Status::Success
        } else {
            Status::Disagreement
        },
    })
}
