//! Level-indexed languages `L(n)` with a monotone cache.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use super::spec::{SpecKind, SubshiftSpec};
use crate::error::{Error, Result};
use crate::words::Word;

/// Explicit enumeration caps. Exceeding one is an error, never a silent
/// truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Longest word length the language may be enumerated at.
    pub max_level: usize,
    /// Largest number of words a single level may hold.
    pub max_words: usize,
    /// Largest number of columns (window words) in a certificate matrix.
    pub max_ambient: usize,
    /// Longest generated word (standard words, substitution iterates).
    pub max_generated: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_level: 1024,
            max_words: 2_000_000,
            max_ambient: 20_000,
            max_generated: 1 << 24,
        }
    }
}

/// Sorted, deduplicated words of one length.
pub type Level = Arc<Vec<Word>>;

/// A subshift together with its lazily computed language.
///
/// `factors(n)` is deterministic, so independent instances agree without
/// coordination; the cache only grows.
#[derive(Debug)]
pub struct Subshift {
    spec: SubshiftSpec,
    limits: Limits,
    cache: Mutex<BTreeMap<usize, Level>>,
    sturmian_word: OnceLock<Result<Word>>,
    substitution_pairs: OnceLock<Result<Vec<Word>>>,
    sft_states: OnceLock<Result<SftGraph>>,
}

#[derive(Debug, Clone)]
struct SftGraph {
    /// State length.
    width: usize,
    states: BTreeSet<Word>,
    forbidden: Vec<Word>,
}

impl Subshift {
    pub fn new(spec: SubshiftSpec) -> Self {
        Self::with_limits(spec, Limits::default())
    }

    pub fn with_limits(spec: SubshiftSpec, limits: Limits) -> Self {
        Subshift {
            spec,
            limits,
            cache: Mutex::new(BTreeMap::new()),
            sturmian_word: OnceLock::new(),
            substitution_pairs: OnceLock::new(),
            sft_states: OnceLock::new(),
        }
    }

    pub fn spec(&self) -> &SubshiftSpec {
        &self.spec
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn alphabet_letters(&self) -> &[u8] {
        self.spec.alphabet.symbols()
    }

    /// Largest level computed so far.
    pub fn horizon(&self) -> usize {
        self.cache.lock().expect("cache lock").keys().next_back().copied().unwrap_or(0)
    }

    /// `L(n)`, sorted.
    pub fn factors(&self, n: usize) -> Result<Level> {
        if n == 0 {
            return Err(Error::InvalidInput("level must be ≥ 1".into()));
        }
        if n > self.limits.max_level {
            return Err(Error::ResourceCap {
                what: "language level",
                requested: n,
                limit: self.limits.max_level,
            });
        }
        if let Some(level) = self.cache.lock().expect("cache lock").get(&n) {
            return Ok(level.clone());
        }
        let words = self.compute(n)?;
        if words.len() > self.limits.max_words {
            return Err(Error::ResourceCap {
                what: "words per level",
                requested: words.len(),
                limit: self.limits.max_words,
            });
        }
        let level = Arc::new(words);
        self.cache.lock().expect("cache lock").insert(n, level.clone());
        Ok(level)
    }

    pub fn contains(&self, w: &Word) -> Result<bool> {
        if w.is_empty() {
            return Ok(true);
        }
        Ok(self.factors(w.len())?.binary_search(w).is_ok())
    }

    /// Admissible one-letter right extensions of `w`.
    pub fn right_extensions(&self, w: &Word) -> Result<Vec<u8>> {
        let next = self.factors(w.len() + 1)?;
        Ok(self
            .alphabet_letters()
            .iter()
            .copied()
            .filter(|&a| next.binary_search(&w.with(a)).is_ok())
            .collect())
    }

    fn compute(&self, n: usize) -> Result<Vec<Word>> {
        match &self.spec.kind {
            SpecKind::PeriodicSeed { generator } => Ok(window_set(&generator.periodic(generator.len() + n - 1), n)),
            SpecKind::Sturmian { .. } => self.sturmian_level(n),
            SpecKind::Substitution { rules, seed, .. } => self.substitution_level(rules, *seed, n),
            SpecKind::Sft { forbidden } => self.sft_level(forbidden, n),
        }
    }

    fn sturmian_level(&self, n: usize) -> Result<Vec<Word>> {
        let word = self
            .sturmian_word
            .get_or_init(|| match &self.spec.kind {
                SpecKind::Sturmian { cf } => standard_word(cf, self.limits.max_generated),
                _ => unreachable!(),
            })
            .clone()?;
        let mut len = (2 * n + 2).min(word.len());
        loop {
            let level = if len >= n {
                window_set(&word.prefix(len), n)
            } else {
                Vec::new()
            };
            if level.len() == n + 1 {
                return Ok(level);
            }
            if len == word.len() {
                return Err(Error::CfTooShort {
                    level: n,
                    found: level.len(),
                    expected: n + 1,
                });
            }
            len = (2 * len).min(word.len());
        }
    }

    /// Two-letter factors of the language, as a least fixed point under
    /// the substitution.
    fn substitution_pairs(&self, rules: &BTreeMap<u8, Word>, seed: u8) -> Result<Vec<Word>> {
        self.substitution_pairs
            .get_or_init(|| {
                let mut iterate = Word::new(vec![seed]);
                while iterate.len() < 2 {
                    let next = apply(rules, &iterate);
                    if next == iterate {
                        return Err(Error::InvalidInput(
                            "substitution iterates of the seed never reach length 2".into(),
                        ));
                    }
                    iterate = next;
                }
                let mut pairs: BTreeSet<Word> = window_set(&iterate, 2).into_iter().collect();
                let mut frontier: Vec<Word> = pairs.iter().cloned().collect();
                while let Some(p) = frontier.pop() {
                    for q in window_set(&apply(rules, &p), 2) {
                        if pairs.insert(q.clone()) {
                            frontier.push(q);
                        }
                    }
                }
                Ok(pairs.into_iter().collect())
            })
            .clone()
    }

    fn substitution_level(&self, rules: &BTreeMap<u8, Word>, seed: u8, n: usize) -> Result<Vec<Word>> {
        let pairs = self.substitution_pairs(rules, seed)?;
        let letters: BTreeSet<u8> = pairs.iter().flat_map(|p| p.letters().iter().copied()).collect();
        if n == 1 {
            return Ok(letters.into_iter().map(|b| Word::new(vec![b])).collect());
        }
        // Once every image block has length ≥ n-1, an n-factor meets at most
        // two consecutive blocks, so it is a factor of ζ^j(ab) for a pair ab.
        let mut blocks: Vec<Word> = pairs.clone();
        let mut images: Vec<Word> = letters.iter().map(|&b| Word::new(vec![b])).collect();
        let mut shortest = 1usize;
        let mut stalled = 0;
        while shortest < n - 1 {
            images = images.iter().map(|w| apply(rules, w)).collect();
            blocks = blocks.iter().map(|p| apply(rules, p)).collect();
            let next = images.iter().map(Word::len).min().unwrap_or(0);
            if next > shortest {
                stalled = 0;
            } else {
                stalled += 1;
                if stalled > letters.len() {
                    // some letter never grows
                    return self.substitution_level_by_iteration(rules, seed, n);
                }
            }
            shortest = next;
            let longest = blocks.iter().map(Word::len).max().unwrap_or(0);
            if longest > self.limits.max_generated {
                return Err(Error::ResourceCap {
                    what: "substitution iterate length",
                    requested: longest,
                    limit: self.limits.max_generated,
                });
            }
        }
        let mut out = BTreeSet::new();
        for b in &blocks {
            out.extend(window_set(b, n));
        }
        Ok(out.into_iter().collect())
    }

    /// Factors of `ζ^k(seed)` accumulated until two further iterations add
    /// nothing.
    fn substitution_level_by_iteration(&self, rules: &BTreeMap<u8, Word>, seed: u8, n: usize) -> Result<Vec<Word>> {
        let mut iterate = Word::new(vec![seed]);
        let mut seen = BTreeSet::new();
        let mut quiet = 0;
        while quiet < 2 || iterate.len() < n {
            let before = seen.len();
            seen.extend(window_set(&iterate, n));
            quiet = if seen.len() == before && iterate.len() >= n { quiet + 1 } else { 0 };
            let next = apply(rules, &iterate);
            if next.len() > self.limits.max_generated {
                return Err(Error::ResourceCap {
                    what: "substitution iterate length",
                    requested: next.len(),
                    limit: self.limits.max_generated,
                });
            }
            if next == iterate && iterate.len() < n {
                break;
            }
            iterate = next;
        }
        Ok(seen.into_iter().collect())
    }

    fn sft_graph(&self, forbidden: &[Word]) -> Result<SftGraph> {
        self.sft_states
            .get_or_init(|| {
                let longest = forbidden.iter().map(Word::len).max().unwrap_or(1);
                let width = longest.saturating_sub(1).max(1);
                let letters = self.alphabet_letters();
                let count = letters.len().checked_pow(width as u32).unwrap_or(usize::MAX);
                if count > self.limits.max_words {
                    return Err(Error::ResourceCap {
                        what: "sft states",
                        requested: count,
                        limit: self.limits.max_words,
                    });
                }
                let mut states: Vec<Word> = vec![Word::empty()];
                for _ in 0..width {
                    states = states
                        .iter()
                        .flat_map(|w| letters.iter().map(move |&a| w.with(a)))
                        .filter(|w| avoids(w, forbidden))
                        .collect();
                }
                let mut states: BTreeSet<Word> = states.into_iter().collect();
                loop {
                    let keep: BTreeSet<Word> = states
                        .iter()
                        .filter(|s| {
                            let out = letters.iter().any(|&a| {
                                let e = s.with(a);
                                avoids(&e, forbidden) && states.contains(&e.suffix(width))
                            });
                            let inc = letters.iter().any(|&a| {
                                let e = Word::new(vec![a]).concat(s);
                                avoids(&e, forbidden) && states.contains(&e.prefix(width))
                            });
                            out && inc
                        })
                        .cloned()
                        .collect();
                    if keep.len() == states.len() {
                        break;
                    }
                    states = keep;
                }
                Ok(SftGraph {
                    width,
                    states,
                    forbidden: forbidden.to_vec(),
                })
            })
            .clone()
    }

    fn sft_level(&self, forbidden: &[Word], n: usize) -> Result<Vec<Word>> {
        let g = self.sft_graph(forbidden)?;
        if n <= g.width {
            let mut out = BTreeSet::new();
            for s in &g.states {
                out.extend(window_set(s, n));
            }
            return Ok(out.into_iter().collect());
        }
        let prev = self.factors(n - 1)?;
        let mut out = Vec::new();
        for w in prev.iter() {
            for &a in self.alphabet_letters() {
                let e = w.suffix(g.width).with(a);
                if avoids(&e, &g.forbidden) && g.states.contains(&e.suffix(g.width)) {
                    out.push(w.with(a));
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// A long admissible word for frequency estimates: the standard word,
    /// a substitution iterate, or the repeated generator. SFTs have no
    /// canonical generic point and yield `None`.
    pub fn sample_word(&self, min_len: usize) -> Result<Option<Word>> {
        match &self.spec.kind {
            SpecKind::PeriodicSeed { generator } => Ok(Some(generator.periodic(min_len.max(generator.len())))),
            SpecKind::Sturmian { cf } => {
                let w = self
                    .sturmian_word
                    .get_or_init(|| standard_word(cf, self.limits.max_generated))
                    .clone()?;
                Ok(Some(w))
            }
            SpecKind::Substitution { rules, seed, .. } => {
                let mut w = Word::new(vec![*seed]);
                while w.len() < min_len {
                    let next = apply(rules, &w);
                    if next.len() <= w.len() || next.len() > self.limits.max_generated {
                        break;
                    }
                    w = next;
                }
                Ok(Some(w))
            }
            SpecKind::Sft { .. } => Ok(None),
        }
    }
}

fn apply(rules: &BTreeMap<u8, Word>, w: &Word) -> Word {
    Word::new(w.letters().iter().flat_map(|b| rules[b].letters().iter().copied()).collect())
}

fn avoids(w: &Word, forbidden: &[Word]) -> bool {
    forbidden.iter().all(|f| !w.contains_factor(f))
}

/// Sorted distinct factors of length `n`.
pub fn window_set(w: &Word, n: usize) -> Vec<Word> {
    if n > w.len() {
        return Vec::new();
    }
    let set: BTreeSet<&[u8]> = w.letters().windows(n).collect();
    set.into_iter().map(|s| Word::new(s.to_vec())).collect()
}

/// The standard word `s_K` for coefficients `a_0 … a_{K-1}`, with
/// `s_{-1} = 1`, `s_0 = 0` and `s_{k+1} = s_k^{a_k} s_{k-1}`.
///
/// Every `s_k` with `k ≥ 1` is a prefix of the characteristic word, so
/// generation stops at the last `s_k` no longer than `cap`. A cap below
/// `|s_1|` is an error.
pub fn standard_word(cf: &[u64], cap: usize) -> Result<Word> {
    let mut prev = Word::from("1");
    let mut cur = Word::from("0");
    for (i, &a) in cf.iter().enumerate() {
        let len = (cur.len() as u128) * a as u128 + prev.len() as u128;
        if len > cap as u128 {
            if i == 0 {
                return Err(Error::ResourceCap {
                    what: "standard word length",
                    requested: usize::try_from(len).unwrap_or(usize::MAX),
                    limit: cap,
                });
            }
            break;
        }
        let next = cur.repeat(a as usize).concat(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}
