//! Finite words over a small printable alphabet.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An ordered set of distinct printable ASCII symbols.
///
/// Symbols are kept in byte order, which is also the canonical word order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<u8>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let mut out = Vec::new();
        for c in symbols {
            out.push(letter_byte(c)?);
        }
        out.sort_unstable();
        out.dedup();
        Ok(Alphabet { symbols: out })
    }

    pub fn binary() -> Self {
        Alphabet { symbols: vec![b'0', b'1'] }
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn contains(&self, letter: u8) -> bool {
        self.symbols.binary_search(&letter).is_ok()
    }

    pub fn index_of(&self, letter: u8) -> Option<usize> {
        self.symbols.binary_search(&letter).ok()
    }

    /// Checks that every letter of `w` belongs to the alphabet.
    pub fn check(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|&&b| !self.contains(b)) {
            Some(&b) => Err(Error::InvalidInput(format!(
                "letter {:?} of {w} is outside the alphabet",
                b as char
            ))),
            None => Ok(()),
        }
    }
}

fn letter_byte(c: char) -> Result<u8> {
    if c.is_ascii_graphic() {
        Ok(c as u8)
    } else {
        Err(Error::BadLetter(c))
    }
}

/// A finite word. Letters are printable ASCII bytes; the derived ordering is
/// the lexicographic order induced by the alphabet order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.chars().map(letter_byte).collect::<Result<Vec<_>>>().map(Word)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.0
    }

    /// The factor of length `len` starting at `start`.
    pub fn factor(&self, start: usize, len: usize) -> Word {
        Word(self.0[start..start + len].to_vec())
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix(&self, len: usize) -> Word {
        Word(self.0[self.0.len() - len..].to_vec())
    }

    pub fn push(&mut self, letter: u8) {
        self.0.push(letter);
    }

    pub fn with(&self, letter: u8) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(letter);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }

    /// The length-`len` prefix of the periodic word `self^∞`.
    pub fn periodic(&self, len: usize) -> Word {
        assert!(!self.is_empty(), "periodic extension of the empty word");
        Word(self.0.iter().copied().cycle().take(len).collect())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn contains_factor(&self, u: &Word) -> bool {
        u.is_empty() || self.0.windows(u.len()).any(|win| win == u.letters())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // letters are ASCII by construction
        f.write_str(std::str::from_utf8(&self.0).unwrap_or("<non-ascii>"))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl From<&str> for Word {
    /// Panics on non-printable input; use [`Word::parse`] for untrusted text.
    fn from(s: &str) -> Self {
        Word::parse(s).expect("printable ASCII word")
    }
}

/// Minimal-period data of a word `w = v^K v̂`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodData {
    /// Minimal period ℓ, equal to `|w|` when `w` has no self-overlap.
    pub ell: usize,
    /// The primitive prefix of length ℓ.
    pub v: Word,
    /// `⌊|w| / ℓ⌋`.
    pub k: usize,
    /// Proper prefix of `v` completing `v^K` to `w`.
    pub v_hat: Word,
    /// One plus the number of self-overlap shifts in `[1, |w|)`.
    pub l: usize,
}

impl PeriodData {
    pub fn reconstruct(&self) -> Word {
        self.v.repeat(self.k).concat(&self.v_hat)
    }
}

/// Number of (possibly overlapping) occurrences of `u` in `v`.
pub fn occurrences(u: &Word, v: &Word) -> Result<usize> {
    if u.is_empty() {
        return Err(Error::EmptyWord);
    }
    if u.len() > v.len() {
        return Ok(0);
    }
    Ok(v.letters().windows(u.len()).filter(|w| *w == u.letters()).count())
}

fn has_overlap(w: &[u8], shift: usize) -> bool {
    w[..w.len() - shift] == w[shift..]
}

pub fn minimal_period(w: &Word) -> Result<PeriodData> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let n = w.len();
    let overlaps: Vec<usize> = (1..n).filter(|&s| has_overlap(w.letters(), s)).collect();
    // min ∅ = |w|
    let ell = overlaps.first().copied().unwrap_or(n);
    let k = n / ell;
    Ok(PeriodData {
        ell,
        v: w.prefix(ell),
        k,
        v_hat: w.factor(k * ell, n - k * ell),
        l: 1 + overlaps.len(),
    })
}

/// `ν_w([u])`: the frequency of `u` along the periodic point `w̄`.
pub fn periodization_measure<S: Scalar>(w: &Word, u: &Word) -> Result<S> {
    if w.is_empty() || u.is_empty() {
        return Err(Error::EmptyWord);
    }
    let cyclic = w.periodic(w.len() + u.len() - 1);
    let count = occurrences(u, &cyclic)?;
    Ok(S::ratio(count as i64, w.len() as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use itertools::Itertools;
    use proptest::prelude::*;

    fn all_binary(len: usize) -> impl Iterator<Item = Word> {
        (0..1u32 << len).map(move |bits| {
            Word::new((0..len).map(|i| if bits >> i & 1 == 1 { b'b' } else { b'a' }).collect())
        })
    }

    #[test]
    fn occurrence_counts() {
        assert_eq!(occurrences(&"ab".into(), &"abab".into()).unwrap(), 2);
        assert_eq!(occurrences(&"aa".into(), &"aaa".into()).unwrap(), 2);
        assert_eq!(occurrences(&"01".into(), &"0110100110010110".into()).unwrap(), 5);
        assert_eq!(occurrences(&"abc".into(), &"ab".into()).unwrap(), 0);
        assert_eq!(occurrences(&Word::empty(), &"ab".into()), Err(Error::EmptyWord));
    }

    #[test]
    fn thue_morse_prefix_count_by_scan() {
        let tm: Word = "0110100110010110".into();
        let scan = (0..tm.len() - 1)
            .filter(|&i| tm.letters()[i] == b'0' && tm.letters()[i + 1] == b'1')
            .count();
        assert_eq!(scan, 5);
    }

    #[test]
    fn period_examples() {
        let p = minimal_period(&"abab".into()).unwrap();
        assert_eq!((p.ell, p.v.to_string(), p.k, p.v_hat.to_string(), p.l), (2, "ab".into(), 2, "".into(), 2));
        let p = minimal_period(&"aaa".into()).unwrap();
        assert_eq!((p.ell, p.v.to_string(), p.k, p.v_hat.to_string(), p.l), (1, "a".into(), 3, "".into(), 3));
        let p = minimal_period(&"101".into()).unwrap();
        assert_eq!((p.ell, p.v.to_string(), p.k, p.v_hat.to_string(), p.l), (2, "10".into(), 1, "1".into(), 2));
        let p = minimal_period(&"100".into()).unwrap();
        assert_eq!((p.ell, p.k, p.l), (3, 1, 1));
        assert_eq!(minimal_period(&Word::empty()), Err(Error::EmptyWord));
    }

    #[test]
    fn periodization_examples() {
        let m: Rational = periodization_measure(&"ab".into(), &"a".into()).unwrap();
        assert_eq!(m, Rational::ratio(1, 2));
        let m: Rational = periodization_measure(&"ab".into(), &"ba".into()).unwrap();
        assert_eq!(m, Rational::ratio(1, 2));
        let m: Rational = periodization_measure(&"aab".into(), &"aa".into()).unwrap();
        assert_eq!(m, Rational::ratio(1, 3));
    }

    #[test]
    fn periodization_sums_to_one() {
        for w in ["a", "ab", "aab", "abaab", "babba"] {
            let w = Word::from(w);
            for m in 1..=4 {
                let total: Rational = (0..m)
                    .map(|_| *b"ab")
                    .multi_cartesian_product()
                    .map(|u| periodization_measure::<Rational>(&w, &Word::new(u)).unwrap())
                    .sum();
                assert_eq!(total, Rational::ratio(1, 1), "w={w} m={m}");
            }
        }
    }

    #[test]
    fn reconstruction_is_exact_up_to_twenty() {
        for len in 1..=20 {
            for w in all_binary(len) {
                let p = minimal_period(&w).unwrap();
                assert_eq!(p.reconstruct(), w);
                assert!(p.v_hat.len() < p.v.len());
                assert!(p.k >= 1);
            }
        }
    }

    /// `⌊|w|/ℓ⌋ ≥ L` fails for words with a long border that is not a
    /// multiple of the minimal period. What does hold is that the overlaps
    /// at multiples of ℓ number at most K, and any other overlap shift
    /// exceeds `|w| − ℓ`.
    #[test]
    fn overlap_count_versus_power() {
        let p = minimal_period(&"abaaba".into()).unwrap();
        assert_eq!((p.ell, p.k, p.l), (3, 2, 3));
        assert!(p.k < p.l);

        for len in 1..=16 {
            for w in all_binary(len) {
                let p = minimal_period(&w).unwrap();
                let shifts: Vec<usize> = (1..len).filter(|&s| has_overlap(w.letters(), s)).collect();
                let multiples = shifts.iter().filter(|&&s| s % p.ell == 0).count();
                assert!(multiples <= p.k);
                assert!(shifts.iter().all(|&s| s % p.ell == 0 || s > len - p.ell));
                // N(u|w) ≥ K·N(u|v) for |u| < ℓ
                if p.ell > 1 {
                    let u = w.prefix(1);
                    assert!(occurrences(&u, &w).unwrap() >= p.k * occurrences(&u, &p.v).unwrap());
                }
            }
        }
    }

    proptest! {
        #[test]
        fn occurrences_bounded(u in "[ab]{1,4}", v in "[ab]{0,12}") {
            let (u, v) = (Word::from(u.as_str()), Word::from(v.as_str()));
            let n = occurrences(&u, &v).unwrap();
            if u.len() <= v.len() {
                prop_assert!(n <= v.len() - u.len() + 1);
            } else {
                prop_assert_eq!(n, 0);
            }
        }
    }
}
