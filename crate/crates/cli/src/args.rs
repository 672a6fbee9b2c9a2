use std::ops::RangeInclusive;

use clap::{Parser, Subcommand, ValueEnum};
use fibpow::Natural;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "fibpow",
    version,
    about = "Periods and residues of F_i^e mod F_j, checked against brute force"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,

    /// Largest j the brute-force oracle will accept.
    #[arg(long, default_value_t = fibpow::oracle::DEFAULT_J_MAX, global = true)]
    pub j_max: u64,

    /// Worker threads for sweeps (default: available processors).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form minimal period of F_i^e mod F_j.
    Period {
        j: u64,
        e: u64,
        /// Also run the brute-force oracle and compare.
        #[arg(long)]
        verify: bool,
    },
    /// One full period of residues.
    Table {
        j: u64,
        e: u64,
        /// Name the closed-form clause behind each entry (e = 1 or 2).
        #[arg(long)]
        annotate: bool,
    },
    /// Brute-force minimal period with its divisor evidence.
    Oracle { j: u64, e: u64 },
    /// Run the identity sweeps.
    Verify {
        /// Only run sweeps for this identity.
        #[arg(long)]
        identity: Option<String>,
    },
    /// Closed form versus oracle over a grid, e.g. `scan 4..22 1..8`.
    Scan {
        #[arg(value_parser = parse_range)]
        j_range: RangeInclusive<u64>,
        #[arg(value_parser = parse_range)]
        e_range: RangeInclusive<u64>,
    },
    /// Time F_n mod m for n = 10^k.
    Bench {
        /// Decimal modulus, at least 2.
        #[arg(long, default_value = "144", value_parser = parse_natural)]
        modulus: Natural,
        /// Comma-separated powers of ten to use as indices.
        #[arg(long, value_delimiter = ',', default_values_t = [6u32, 9, 12, 15, 18])]
        n_exponents: Vec<u32>,
    },
}

/// `a..b` (inclusive) or a single value `a`.
pub fn parse_range(text: &str) -> Result<RangeInclusive<u64>, String> {
    let bound = |s: &str| {
        s.parse::<u64>()
            .map_err(|e| format!("bad range bound {s:?}: {e}"))
    };
    let range = match text.split_once("..") {
        Some((lo, hi)) => bound(lo)?..=bound(hi.strip_prefix('=').unwrap_or(hi))?,
        None => {
            let v = bound(text)?;
            v..=v
        }
    };
    if range.is_empty() {
        return Err(format!("empty range {text:?}"));
    }
    Ok(range)
}

fn parse_natural(text: &str) -> Result<Natural, String> {
    fibpow::decimal::parse(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("4..22").unwrap(), 4..=22);
        assert_eq!(parse_range("4..=22").unwrap(), 4..=22);
        assert_eq!(parse_range("6").unwrap(), 6..=6);
        assert!(parse_range("9..4").is_err());
        assert!(parse_range("a..4").is_err());
        assert!(parse_range("-1..4").is_err());
    }
}
