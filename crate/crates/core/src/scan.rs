//! Closed form versus oracle agreement over a grid of `(j, e)`.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::oracle::Oracle;
use crate::periodicity::{period_closed_form, CaseLabel};
use crate::{Error, Exponent, Index, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridCell {
    pub j: Index,
    pub e: Exponent,
    pub case_label: CaseLabel,
    pub closed_form: u64,
    pub oracle: u64,
    pub agree: bool,
}

/// Compares [`period_closed_form`] with the oracle on every cell of
/// `js × es`. Cells run on the current rayon pool; the result is ordered by
/// `(j, e)`.
pub fn agreement_grid(
    js: RangeInclusive<Index>,
    es: RangeInclusive<Exponent>,
    oracle: &Oracle,
) -> Result<Vec<GridCell>> {
    if js.is_empty() || es.is_empty() {
        return Err(Error::domain("empty scan range"));
    }
    if *js.start() < 3 {
        return Err(Error::domain(format!(
            "scan starts at j = {}, the oracle needs j >= 3",
            js.start()
        )));
    }
    if *es.start() == 0 {
        return Err(Error::domain("exponent e must be at least 1"));
    }
    if *js.end() > oracle.j_max() {
        return Err(Error::ResourceGuard {
            what: format!("scan up to j = {}", js.end()),
            limit: oracle.j_max(),
        });
    }
    let cells: Vec<(Index, Exponent)> = js
        .flat_map(|j| es.clone().map(move |e| (j, e)))
        .collect();
    cells
        .par_iter()
        .map(|&(j, e)| {
            let closed = period_closed_form(j, e)?;
            let closed_form = closed.period().expect("j >= 3 always has a period");
            let oracle = oracle.minimal_period_bruteforce(j, e)?.power_period;
            Ok(GridCell {
                j,
                e,
                case_label: closed.case_label,
                closed_form,
                oracle,
                agree: closed_form == oracle,
            })
        })
        .collect()
}
