//! Exact Birkhoff averages along arithmetic progressions of shifts.

use std::collections::BTreeSet;

use serde::Serialize;

use super::cylinder::CylinderFunction;
use crate::error::{Error, Result};
use crate::scalar::{serialize_scalar, Scalar};
use crate::subshift::{SpecKind, Subshift, SubshiftSpec};
use crate::words::Word;

#[derive(Debug, Clone)]
pub struct BirkhoffAverage<S> {
    /// `(1/count) Σ_{k<count} f ∘ σ^{k·step}` on the window.
    pub average: CylinderFunction<S>,
    pub step: usize,
    pub count: usize,
    /// Number of window words the statistic ranges over.
    pub words_considered: usize,
    pub min: S,
    pub max: S,
}

impl<S: Scalar> BirkhoffAverage<S> {
    /// `max - min` of the average over the considered words.
    pub fn deviation(&self) -> S {
        self.max.clone() - self.min.clone()
    }
}

/// Averages `f` along shifts `0, step, …, (count-1)·step` and records the
/// spread of the result over the window words accepted by `restrict`
/// (all words when `None`).
pub fn birkhoff_average<S: Scalar>(
    sub: &Subshift,
    f: &CylinderFunction<S>,
    step: usize,
    count: usize,
    window: (i64, i64),
    restrict: Option<&dyn Fn(&Word) -> bool>,
) -> Result<BirkhoffAverage<S>> {
    if count == 0 {
        return Err(Error::InvalidInput("birkhoff average needs count ≥ 1".into()));
    }
    let (a, b) = window;
    let (fa, fb) = f.window();
    let reach = fb + ((count - 1) * step) as i64;
    if fa < a || reach > b {
        return Err(Error::WindowTooSmall {
            a,
            b,
            need_a: fa,
            need_b: reach,
        });
    }
    let flen = (fb - fa + 1) as usize;
    let scale = S::ratio(1, count as i64);
    let average = CylinderFunction::from_fn(sub, window, |u| {
        let total = (0..count).fold(S::zero(), |acc, k| {
            let start = (fa - a) as usize + k * step;
            acc + f.value(&u.factor(start, flen)).cloned().unwrap_or_else(S::zero)
        });
        total * scale.clone()
    })?;
    let considered: Vec<&Word> = average
        .values()
        .keys()
        .filter(|u| restrict.is_none_or(|r| r(u)))
        .collect();
    let (min, max) = average
        .min_max(considered.iter().copied())
        .ok_or_else(|| Error::InvalidInput("no window word satisfies the restriction".into()))?;
    Ok(BirkhoffAverage {
        words_considered: considered.len(),
        average,
        step,
        count,
        min,
        max,
    })
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct DecayRow<S> {
    pub p: usize,
    pub window_length: usize,
    pub restricted_words: usize,
    #[serde(serialize_with = "serialize_scalar")]
    pub min: S,
    #[serde(serialize_with = "serialize_scalar")]
    pub max: S,
    #[serde(serialize_with = "serialize_scalar")]
    pub deviation: S,
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct CyclicityEvidence<S> {
    pub n: usize,
    pub block_length: usize,
    pub p_max: usize,
    pub rows: Vec<DecayRow<S>>,
}

impl<S: Scalar> CyclicityEvidence<S> {
    pub fn deviation(&self, p: usize) -> Option<&S> {
        self.rows.get(p.checked_sub(1)?).map(|r| &r.deviation)
    }

    /// First pair `p < q` with `q ≥ factor·p`, `p ≥ from`, where the
    /// deviation went up. `None` means non-increasing up to that smoothing.
    pub fn smoothed_increase(&self, from: usize, factor: usize) -> Option<(usize, usize)> {
        let ps = from..=self.p_max;
        for p in ps.clone() {
            for q in ps.clone().filter(|&q| q >= factor * p) {
                if self.deviation(q)? > self.deviation(p)? {
                    return Some((p, q));
                }
            }
        }
        None
    }
}

/// For `p = 1 … p_max`, the spread of `(1/p) Σ_{k<p} f_n ∘ σ^{k·2ⁿ}`,
/// `f_n = χ_[ζⁿ(0)]`, over points of `ζⁿ(X)` read on `[0, p·2ⁿ - 1]`,
/// i.e. over the words `ζⁿ(y)`, `y ∈ L(p)`.
pub fn thue_morse_cyclicity_evidence<S: Scalar>(sub: &Subshift, n: usize, p_max: usize) -> Result<CyclicityEvidence<S>> {
    let tm = match SubshiftSpec::thue_morse().kind {
        SpecKind::Substitution { rules, .. } => rules,
        _ => unreachable!("thue_morse is a substitution"),
    };
    let rules = match &sub.spec().kind {
        SpecKind::Substitution { rules, .. } if *rules == tm => tm,
        _ => return Err(Error::InvalidInput("cyclicity evidence is defined for the Thue–Morse subshift".into())),
    };
    if p_max == 0 || n >= 20 {
        return Err(Error::InvalidInput(format!("need p_max ≥ 1 and n < 20, got n={n}, p_max={p_max}")));
    }
    let image = |w: &Word| -> Word {
        (0..n).fold(w.clone(), |w, _| {
            Word::new(w.letters().iter().flat_map(|b| rules[b].letters().iter().copied()).collect())
        })
    };
    let block = 1usize << n;
    let f = CylinderFunction::<S>::indicator(sub, &image(&Word::from("0")))?;
    let mut rows = Vec::with_capacity(p_max);
    for p in 1..=p_max {
        let len = p * block;
        let blocks: BTreeSet<Word> = sub.factors(p)?.iter().map(&image).collect();
        let avg = birkhoff_average(sub, &f, block, p, (0, len as i64 - 1), Some(&|u: &Word| blocks.contains(u)))?;
        rows.push(DecayRow {
            p,
            window_length: len,
            restricted_words: avg.words_considered,
            deviation: avg.deviation(),
            min: avg.min,
            max: avg.max,
        });
    }
    Ok(CyclicityEvidence {
        n,
        block_length: block,
        p_max,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type F = CylinderFunction<Rational>;

    fn q(a: i64, b: i64) -> Rational {
        Rational::ratio(a, b)
    }

    #[test]
    fn constants_are_invariant() {
        let s = Subshift::new(SubshiftSpec::thue_morse());
        let one = F::one(&s).unwrap();
        for (step, count) in [(1, 1), (1, 5), (3, 4)] {
            let avg = birkhoff_average(&s, &one, step, count, (0, 12), None).unwrap();
            assert_eq!(avg.deviation(), q(0, 1));
            assert_eq!(avg.min, q(1, 1));
        }
    }

    #[test]
    fn periodic_average_is_exact() {
        let s = Subshift::new(SubshiftSpec::periodic("ab".into()).unwrap());
        let f = F::indicator(&s, &"a".into()).unwrap();
        let avg = birkhoff_average(&s, &f, 1, 2, (0, 1), None).unwrap();
        assert_eq!((avg.min.clone(), avg.deviation()), (q(1, 2), q(0, 1)));
    }

    #[test]
    fn window_must_hold_all_shifts() {
        let s = Subshift::new(SubshiftSpec::thue_morse());
        let f = F::indicator(&s, &"01".into()).unwrap();
        assert!(matches!(
            birkhoff_average(&s, &f, 2, 4, (0, 6), None),
            Err(Error::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn thue_morse_pairs_approach_one_third() {
        // on ζ(X) the pair 01 at even positions reads ζ(0), so the
        // average tends to μ([01]) computed along even positions only;
        // over all points the spread still narrows around 1/3
        let s = Subshift::new(SubshiftSpec::thue_morse());
        let f = F::indicator(&s, &"01".into()).unwrap();
        let dev = |p: usize| birkhoff_average(&s, &f, 2, p, (0, 2 * p as i64), None).unwrap();
        let (small, large) = (dev(2), dev(24));
        assert!(large.deviation() < small.deviation());
        assert!(large.min <= q(1, 2) && large.max >= q(1, 4));
    }

    #[test]
    fn evidence_trivial_cases() {
        let s = Subshift::new(SubshiftSpec::thue_morse());
        let e = thue_morse_cyclicity_evidence::<Rational>(&s, 1, 1).unwrap();
        assert_eq!(e.rows[0].deviation, q(1, 1));
        let zero = thue_morse_cyclicity_evidence::<Rational>(&s, 0, 16).unwrap();
        let last = &zero.rows[15];
        assert!(last.min <= q(1, 2) && last.max >= q(1, 2));
        assert!(last.deviation <= q(1, 4));
    }

    #[test]
    fn evidence_decays_for_n_one() {
        let s = Subshift::new(SubshiftSpec::thue_morse());
        let e = thue_morse_cyclicity_evidence::<Rational>(&s, 1, 32).unwrap();
        assert!(e.rows[31].deviation <= e.rows[0].deviation);
        assert_eq!(e.smoothed_increase(4, 2), None);
    }

    #[test]
    fn rejects_other_subshifts() {
        let s = Subshift::new(SubshiftSpec::fibonacci(20));
        assert!(thue_morse_cyclicity_evidence::<Rational>(&s, 1, 2).is_err());
    }
}
