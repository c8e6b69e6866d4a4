//! Subshift descriptions and exact enumeration of their languages.

mod language;
mod spec;

use serde::Serialize;

pub use language::{standard_word, window_set, Level, Limits, Subshift};
pub use spec::{SpecKind, SubshiftSpec};

use crate::error::{Error, Result};
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AperiodicityCheck {
    pub max_period: usize,
    pub window: usize,
    pub aperiodic: bool,
    /// A word `v` whose periodic extension of the window length is admissible.
    pub witness: Option<Word>,
}

/// Default window for [`is_aperiodic_up_to`]: long enough that the bounded
/// powers found in Sturmian and primitive substitution languages do not
/// pass for periodic points.
pub fn aperiodicity_window(max_period: usize) -> usize {
    (8 * max_period).max(64)
}

/// Looks for an admissible periodic pattern of period at most `max_period`
/// across a window of length `window`.
pub fn is_aperiodic_up_to(sub: &Subshift, max_period: usize, window: usize) -> Result<AperiodicityCheck> {
    if max_period == 0 || window < 2 * max_period {
        return Err(Error::InvalidInput(format!(
            "need window ≥ 2·max_period ≥ 2, got window {window}, max_period {max_period}"
        )));
    }
    let big = sub.factors(window)?;
    for p in 1..=max_period {
        for v in sub.factors(p)?.iter() {
            if big.binary_search(&v.periodic(window)).is_ok() {
                return Ok(AperiodicityCheck {
                    max_period,
                    window,
                    aperiodic: false,
                    witness: Some(v.clone()),
                });
            }
        }
    }
    Ok(AperiodicityCheck {
        max_period,
        window,
        aperiodic: true,
        witness: None,
    })
}


/// Minimal period of `w` relative to the subshift: the smallest
/// `1 ≤ ℓ < |w|` with `[w] ∩ σ^ℓ[w] ≠ ∅`, i.e. `w` overlaps itself at
/// shift ℓ and the overlapped word `w[..ℓ]·w` is admissible. Falls back to
/// `|w|`. `l` counts the admissible overlap shifts plus one.
pub fn subshift_period(sub: &Subshift, w: &Word) -> Result<crate::words::PeriodData> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let n = w.len();
    let mut shifts = Vec::new();
    for s in 1..n {
        if w.letters()[..n - s] == w.letters()[s..] && sub.contains(&w.prefix(s).concat(w))? {
            shifts.push(s);
        }
    }
    let ell = shifts.first().copied().unwrap_or(n);
    let k = n / ell;
    Ok(crate::words::PeriodData {
        ell,
        v: w.prefix(ell),
        k,
        v_hat: w.factor(k * ell, n - k * ell),
        l: 1 + shifts.len(),
    })
}
