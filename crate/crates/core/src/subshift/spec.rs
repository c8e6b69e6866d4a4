//! Declarative subshift descriptions and the line-oriented spec format.
//!
//! ```text
//! # Thue-Morse
//! kind=substitution
//! 0->01
//! 1->10
//! seed=0
//! ```
//!
//! Statements are separated by newlines or `;`. Recognized keys are
//! `kind`, `seed`, `cf`, `forbid`, `generator` and `alphabet`; a statement
//! of the form `<letter>-><word>` is a substitution rule.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::words::{Alphabet, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecKind {
    Substitution {
        rules: BTreeMap<u8, Word>,
        seed: u8,
        primitive: bool,
    },
    /// Continued-fraction coefficients of the slope; generated through
    /// standard words `s_{k+1} = s_k^{a_k} s_{k-1}`.
    Sturmian { cf: Vec<u64> },
    Sft { forbidden: Vec<Word> },
    /// The orbit closure of the periodic point built from `generator`.
    PeriodicSeed { generator: Word },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubshiftSpec {
    pub alphabet: Alphabet,
    pub kind: SpecKind,
}

impl SubshiftSpec {
    pub fn substitution(rules: &[(char, &str)], seed: char) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &(a, img) in rules {
            map.insert(a as u8, Word::parse(img)?);
        }
        Self::from_rules(map, seed as u8, None)
    }

    fn from_rules(rules: BTreeMap<u8, Word>, seed: u8, alphabet: Option<Alphabet>) -> Result<Self> {
        let letters = rules
            .iter()
            .flat_map(|(a, img)| std::iter::once(*a).chain(img.letters().iter().copied()))
            .chain(std::iter::once(seed));
        let derived = Alphabet::new(letters.map(char::from))?;
        let alphabet = merge_alphabet(alphabet, derived)?;
        for (a, img) in &rules {
            if img.is_empty() {
                return Err(Error::InvalidInput(format!("rule for {:?} has an empty image", *a as char)));
            }
        }
        if let Some(missing) = alphabet.symbols().iter().find(|s| !rules.contains_key(s)) {
            return Err(Error::InvalidInput(format!("no rule for letter {:?}", *missing as char)));
        }
        let primitive = is_primitive(&alphabet, &rules);
        Ok(SubshiftSpec {
            alphabet,
            kind: SpecKind::Substitution { rules, seed, primitive },
        })
    }

    pub fn sturmian(cf: Vec<u64>) -> Result<Self> {
        if cf.is_empty() {
            return Err(Error::InvalidInput("empty continued fraction".into()));
        }
        if cf.contains(&0) {
            return Err(Error::InvalidInput("continued-fraction coefficients must be ≥ 1".into()));
        }
        Ok(SubshiftSpec {
            alphabet: Alphabet::binary(),
            kind: SpecKind::Sturmian { cf },
        })
    }

    pub fn sft(forbidden: Vec<Word>, alphabet: Option<Alphabet>) -> Result<Self> {
        if forbidden.iter().any(Word::is_empty) {
            return Err(Error::InvalidInput("forbidden words must be nonempty".into()));
        }
        let derived = Alphabet::new(
            forbidden
                .iter()
                .flat_map(|w| w.letters().iter().map(|&b| b as char))
                .chain(['0', '1']),
        )?;
        let alphabet = match alphabet {
            Some(a) => {
                for w in &forbidden {
                    a.check(w)?;
                }
                a
            }
            None => derived,
        };
        Ok(SubshiftSpec {
            alphabet,
            kind: SpecKind::Sft { forbidden },
        })
    }

    pub fn periodic(generator: Word) -> Result<Self> {
        if generator.is_empty() {
            return Err(Error::EmptyWord);
        }
        let alphabet = Alphabet::new(generator.letters().iter().map(|&b| b as char))?;
        Ok(SubshiftSpec {
            alphabet,
            kind: SpecKind::PeriodicSeed { generator },
        })
    }

    pub fn thue_morse() -> Self {
        Self::substitution(&[('0', "01"), ('1', "10")], '0').expect("valid rules")
    }

    /// Golden-ratio slope with `terms` unit coefficients.
    pub fn fibonacci(terms: usize) -> Self {
        Self::sturmian(vec![1; terms]).expect("valid cf")
    }

    pub fn golden_mean() -> Self {
        Self::sft(vec![Word::from("11")], None).expect("valid sft")
    }

    /// `None` for kinds other than substitution.
    pub fn is_primitive(&self) -> Option<bool> {
        match &self.kind {
            SpecKind::Substitution { primitive, .. } => Some(*primitive),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            SpecKind::Substitution { .. } => "substitution",
            SpecKind::Sturmian { .. } => "sturmian",
            SpecKind::Sft { .. } => "sft",
            SpecKind::PeriodicSeed { .. } => "periodic_seed",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut kind: Option<(usize, String)> = None;
        let mut rules = BTreeMap::new();
        let mut seed = None;
        let mut cf = None;
        let mut forbid = None;
        let mut generator = None;
        let mut alphabet = None;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            for stmt in content.split(';').map(str::trim).filter(|s| !s.is_empty()) {
                let perr = |message: String| Error::Parse { line, message };
                if let Some((lhs, rhs)) = stmt.split_once("->") {
                    let (lhs, rhs) = (lhs.trim(), rhs.trim());
                    let mut chars = lhs.chars();
                    let (Some(a), None) = (chars.next(), chars.next()) else {
                        return Err(perr(format!("rule source {lhs:?} must be a single letter")));
                    };
                    let img = Word::parse(rhs).map_err(|e| perr(e.to_string()))?;
                    if img.is_empty() {
                        return Err(perr(format!("rule for {a:?} has an empty image")));
                    }
                    if !a.is_ascii_graphic() {
                        return Err(perr(Error::BadLetter(a).to_string()));
                    }
                    if rules.insert(a as u8, img).is_some() {
                        return Err(perr(format!("duplicate rule for {a:?}")));
                    }
                    continue;
                }
                let Some((key, value)) = stmt.split_once('=') else {
                    return Err(perr(format!("unrecognized statement {stmt:?}")));
                };
                let (key, value) = (key.trim(), value.trim());
                match key {
                    "kind" => kind = Some((line, value.to_string())),
                    "seed" => {
                        let mut chars = value.chars();
                        match (chars.next(), chars.next()) {
                            (Some(c), None) if c.is_ascii_graphic() => seed = Some(c as u8),
                            _ => return Err(perr(format!("seed {value:?} must be a single letter"))),
                        }
                    }
                    "cf" => {
                        let terms = value
                            .split(',')
                            .map(|t| {
                                let t = t.trim();
                                match t.parse::<u64>() {
                                    Ok(v) if v >= 1 => Ok(v),
                                    _ => Err(perr(format!("invalid continued-fraction term {t:?}"))),
                                }
                            })
                            .collect::<Result<Vec<_>>>()?;
                        cf = Some(terms);
                    }
                    "forbid" => {
                        let words = value
                            .split(',')
                            .map(|t| {
                                let w = Word::parse(t.trim()).map_err(|e| perr(e.to_string()))?;
                                if w.is_empty() {
                                    Err(perr("empty forbidden word".into()))
                                } else {
                                    Ok(w)
                                }
                            })
                            .collect::<Result<Vec<_>>>()?;
                        forbid.get_or_insert_with(Vec::new).extend(words);
                    }
                    "generator" => generator = Some(Word::parse(value).map_err(|e| perr(e.to_string()))?),
                    "alphabet" => {
                        alphabet = Some(Alphabet::new(value.chars().filter(|c| *c != ',' && !c.is_whitespace())).map_err(|e| perr(e.to_string()))?)
                    }
                    other => return Err(perr(format!("unknown key {other:?}"))),
                }
            }
        }

        let Some((kind_line, kind)) = kind else {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: "missing kind=".into(),
            });
        };
        let at = |message: String| Error::Parse { line: kind_line, message };
        match kind.as_str() {
            "substitution" => {
                if rules.is_empty() {
                    return Err(at("substitution without rules".into()));
                }
                let seed = seed.unwrap_or_else(|| *rules.keys().next().expect("nonempty"));
                Self::from_rules(rules, seed, alphabet).map_err(|e| at(e.to_string()))
            }
            "sturmian" => {
                let cf = cf.ok_or_else(|| at("sturmian spec needs cf=".into()))?;
                Self::sturmian(cf).map_err(|e| at(e.to_string()))
            }
            "sft" => {
                let forbid = forbid.ok_or_else(|| at("sft spec needs forbid=".into()))?;
                Self::sft(forbid, alphabet).map_err(|e| at(e.to_string()))
            }
            "periodic_seed" => {
                let g = generator.ok_or_else(|| at("periodic_seed spec needs generator=".into()))?;
                Self::periodic(g).map_err(|e| at(e.to_string()))
            }
            other => Err(at(format!("unknown kind {other:?}"))),
        }
    }
}

fn merge_alphabet(given: Option<Alphabet>, derived: Alphabet) -> Result<Alphabet> {
    match given {
        None => Ok(derived),
        Some(a) => {
            if let Some(&b) = derived.symbols().iter().find(|&&b| !a.contains(b)) {
                return Err(Error::InvalidInput(format!("letter {:?} missing from alphabet=", b as char)));
            }
            Ok(a)
        }
    }
}

/// Some power of the incidence matrix is positive. Powers up to the
/// Wielandt bound `(n-1)^2 + 1` suffice.
fn is_primitive(alphabet: &Alphabet, rules: &BTreeMap<u8, Word>) -> bool {
    let n = alphabet.len();
    let idx = |b: u8| alphabet.index_of(b).expect("letter in alphabet");
    let mut base = vec![vec![false; n]; n];
    for (&a, img) in rules {
        for &b in img.letters() {
            base[idx(a)][idx(b)] = true;
        }
    }
    let mut power = base.clone();
    let bound = (n - 1) * (n - 1) + 1;
    for _ in 0..bound {
        if power.iter().all(|r| r.iter().all(|&x| x)) {
            return true;
        }
        let mut next = vec![vec![false; n]; n];
        for i in 0..n {
            for k in 0..n {
                if power[i][k] {
                    for j in 0..n {
                        next[i][j] |= base[k][j];
                    }
                }
            }
        }
        power = next;
    }
    false
}
