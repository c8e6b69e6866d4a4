//! Empirical tables for the decay `|v_n| μ([w_n]) → 0` along chosen words.

use serde::Serialize;

use crate::complexity::right_special;
use crate::error::Result;
use crate::scalar::{serialize_scalar, Scalar};
use crate::subshift::{aperiodicity_window, is_aperiodic_up_to, subshift_period, SpecKind, Subshift};
use crate::words::{minimal_period, occurrences, periodization_measure, Word};

/// How the reference word `w_n ∈ L(n)` is picked at each level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WordChooser {
    /// Every member of `Q_n`, falling back to the first word of `L(n)` when
    /// there is none.
    #[default]
    RightSpecial,
    /// The first member of `Q_n` (or of `L(n)`).
    FirstRightSpecial,
    /// The first word of `L(n)` in letter order.
    FirstWord,
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct LetterFrequency<S> {
    pub letter: char,
    /// `ν_{v_n}([a])`.
    #[serde(serialize_with = "serialize_scalar")]
    pub nu_v: S,
    /// Frequency of `a` in the sample.
    #[serde(serialize_with = "serialize_scalar")]
    pub mu_hat: S,
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct KeylemRow<S> {
    pub n: usize,
    pub word: Word,
    pub right_special: bool,
    /// Least `ℓ` with `[w] ∩ σ^ℓ[w] ≠ ∅` in the subshift.
    pub ell: usize,
    /// Least self-overlap of `w` as a bare word.
    pub ell_word: usize,
    pub v: Word,
    pub letters: Vec<LetterFrequency<S>>,
    /// `N(w | sample) / |sample|`.
    #[serde(serialize_with = "serialize_scalar")]
    pub mu_hat: S,
    #[serde(serialize_with = "serialize_scalar")]
    pub v_len_times_mu_hat: S,
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct KeylemTable<S> {
    pub chooser: WordChooser,
    pub sample_length: usize,
    pub rows: Vec<KeylemRow<S>>,
    /// `ℓ` of the first chosen word strictly increases with the level.
    pub ell_increasing: bool,
    pub aperiodic: bool,
    pub notes: Vec<String>,
}

const SAMPLE_LENGTH: usize = 1 << 20;

pub fn keylem_decay<S: Scalar>(sub: &Subshift, levels: &[usize], chooser: WordChooser) -> Result<KeylemTable<S>> {
    let sample = sub.sample_word(SAMPLE_LENGTH)?;
    let mut notes = vec!["empirical: frequencies are estimated from a finite admissible word".to_string()];
    match &sample {
        None => notes.push("no canonical sample for this kind; μ̂ left at zero".into()),
        Some(_) => match &sub.spec().kind {
            SpecKind::Sturmian { .. } => notes.push("sturmian: uniquely ergodic, so the case μ ≠ ν is vacuous".into()),
            SpecKind::Substitution { primitive: true, .. } => {
                notes.push("primitive substitution: uniquely ergodic, so the case μ ≠ ν is vacuous".into())
            }
            _ => {}
        },
    }
    let letters = sub.alphabet_letters().to_vec();
    let mut rows = Vec::new();
    let mut firsts: Vec<usize> = Vec::new();
    let max_level = levels.iter().copied().max().unwrap_or(0);
    let aperiodic = if max_level == 0 {
        true
    } else {
        is_aperiodic_up_to(sub, max_level, aperiodicity_window(max_level))?.aperiodic
    };
    if !aperiodic {
        notes.push(format!("aperiodicity fails: a periodic point of period ≤ {max_level} is admissible, so ℓ need not grow"));
    }

    for &n in levels {
        let special = right_special(sub, n)?.q;
        let (words, is_special) = match (chooser, special.is_empty()) {
            (WordChooser::FirstWord, _) | (_, true) => (vec![sub.factors(n)?[0].clone()], false),
            (WordChooser::FirstRightSpecial, false) => (vec![special[0].clone()], true),
            (WordChooser::RightSpecial, false) => (special, true),
        };
        for (i, w) in words.into_iter().enumerate() {
            let rel = subshift_period(sub, &w)?;
            let comb = minimal_period(&w)?;
            let mu_hat = match &sample {
                Some(x) => S::ratio(occurrences(&w, x)? as i64, x.len() as i64),
                None => S::zero(),
            };
            let freqs = letters
                .iter()
                .map(|&a| {
                    let a_word = Word::new(vec![a]);
                    Ok(LetterFrequency {
                        letter: a as char,
                        nu_v: periodization_measure(&rel.v, &a_word)?,
                        mu_hat: match &sample {
                            Some(x) => S::ratio(occurrences(&a_word, x)? as i64, x.len() as i64),
                            None => S::zero(),
                        },
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if i == 0 {
                firsts.push(rel.ell);
            }
            rows.push(KeylemRow {
                n,
                v_len_times_mu_hat: mu_hat.clone() * S::from_usize(rel.ell).expect("length fits scalar"),
                word: w,
                right_special: is_special,
                ell: rel.ell,
                ell_word: comb.ell,
                v: rel.v,
                letters: freqs,
                mu_hat,
            });
        }
    }
    Ok(KeylemTable {
        chooser,
        sample_length: sample.map_or(0, |x| x.len()),
        rows,
        ell_increasing: firsts.windows(2).all(|p| p[0] < p[1]),
        aperiodic,
        notes,
    })
}
