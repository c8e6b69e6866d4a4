//! Complexity function, right-special words and the good-scale set.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::subshift::Subshift;
use crate::words::Word;

/// `p(n)`, the number of admissible words of length `n`.
pub fn complexity(sub: &Subshift, n: usize) -> Result<usize> {
    Ok(sub.factors(n)?.len())
}

/// Right-special words `Q_n` and their one-letter extensions `Q'_{n+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialWords {
    pub level: usize,
    pub q: Vec<Word>,
    pub q_prime: Vec<Word>,
}

pub fn right_special(sub: &Subshift, n: usize) -> Result<SpecialWords> {
    let level = sub.factors(n)?;
    let next = sub.factors(n + 1)?;
    let mut q = Vec::new();
    let mut q_prime = Vec::new();
    // next is sorted, so extensions of one word are contiguous
    let mut i = 0;
    while i < next.len() {
        let prefix = next[i].prefix(n);
        let mut j = i;
        while j < next.len() && next[j].letters()[..n] == *prefix.letters() {
            j += 1;
        }
        if j - i >= 2 {
            q_prime.extend(next[i..j].iter().cloned());
            q.push(prefix);
        }
        i = j;
    }
    let (p_n, p_next) = (level.len() as i64, next.len() as i64);
    if q_prime.len() as i64 != q.len() as i64 + p_next - p_n {
        return Err(Error::Consistency(format!(
            "#Q'_{} = {} but #Q_{} + p({}) - p({}) = {}",
            n + 1,
            q_prime.len(),
            n,
            n + 1,
            n,
            q.len() as i64 + p_next - p_n
        )));
    }
    Ok(SpecialWords { level: n, q, q_prime })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoodScales {
    pub k: usize,
    pub bound: usize,
    pub members: Vec<usize>,
}

/// Whether `n` satisfies `p(n+1) < (k+1)(n+1)` and `p(n+1) - p(n) ≤ k`.
pub fn is_good_scale(sub: &Subshift, n: usize, k: usize) -> Result<bool> {
    let (p, p_next) = (complexity(sub, n)?, complexity(sub, n + 1)?);
    Ok(p_next < (k + 1) * (n + 1) && p_next <= p + k)
}

/// Members of the good-scale set below `bound`.
pub fn good_scales(sub: &Subshift, k: usize, bound: usize) -> Result<GoodScales> {
    if k == 0 || bound < 2 {
        return Err(Error::InvalidInput("good_scales needs k ≥ 1 and bound ≥ 2".into()));
    }
    let mut members = Vec::new();
    for n in 1..bound {
        if is_good_scale(sub, n, k)? {
            members.push(n);
        }
    }
    Ok(GoodScales { k, bound, members })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HittingReport {
    pub n: usize,
    pub k: usize,
    /// Length of the words checked, `(k+2)(n+1)`.
    pub length: usize,
    pub words_checked: usize,
    pub special: Vec<Word>,
    pub passed: bool,
    pub counterexample: Option<Word>,
    pub note: Option<String>,
}

/// Checks that every admissible word of length `(k+2)(n+1)` contains a
/// right-special `n`-word.
pub fn check_hitting(sub: &Subshift, n: usize, k: usize) -> Result<HittingReport> {
    let special = right_special(sub, n)?.q;
    let length = (k + 2) * (n + 1);
    let words = sub.factors(length)?;
    let counterexample = words
        .iter()
        .find(|w| !w.letters().windows(n).any(|win| special.binary_search(&Word::new(win.to_vec())).is_ok()))
        .cloned();
    let note = if special.is_empty() {
        Some(format!(
            "Q_{n} is empty: the subshift is eventually periodic at this scale, so the aperiodicity hypothesis fails"
        ))
    } else if !is_good_scale(sub, n, k)? {
        Some(format!("n = {n} is not a good scale for k = {k}"))
    } else {
        None
    };
    Ok(HittingReport {
        n,
        k,
        length,
        words_checked: words.len(),
        special,
        passed: counterexample.is_none(),
        counterexample,
        note,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoshernitzanBound {
    /// Scales examined: `[from, to)`.
    pub from: usize,
    pub to: usize,
    /// `min ⌈p(n)/n⌉` over the examined scales.
    pub k: usize,
    /// Scales attaining the minimum.
    pub witnesses: Vec<usize>,
    /// `min ⌈p(n)/n⌉` over all `1 ≤ n < N`, small-scale transients included.
    pub k_all_scales: usize,
    pub complexities: Vec<usize>,
    pub statement: String,
}

/// Finite-scale evidence for `liminf p(n)/n ≤ k`: the minimum of
/// `⌈p(n)/n⌉` over the upper half `[⌈N/2⌉, N)` of the scales.
pub fn boshernitzan_bound(sub: &Subshift, bound: usize) -> Result<BoshernitzanBound> {
    if bound < 4 {
        return Err(Error::InvalidInput("boshernitzan_bound needs N ≥ 4".into()));
    }
    let complexities = (1..bound).map(|n| complexity(sub, n)).collect::<Result<Vec<_>>>()?;
    let ratio = |n: usize| complexities[n - 1].div_ceil(n);
    let from = bound.div_ceil(2);
    let k = (from..bound).map(ratio).min().expect("nonempty range");
    let witnesses = (from..bound).filter(|&n| ratio(n) == k).collect();
    let k_all_scales = (1..bound).map(ratio).min().expect("nonempty range");
    Ok(BoshernitzanBound {
        from,
        to: bound,
        k,
        witnesses,
        k_all_scales,
        complexities,
        statement: format!(
            "finite-scale evidence only: p(n) ≤ {k}·n at scales in [{from}, {bound}); if liminf p(n)/n ≤ {k} and the subshift is aperiodic, it has at most {k} ergodic measures"
        ),
    })
}
