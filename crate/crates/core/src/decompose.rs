//! Decomposition of short cylinders into shifted cylinders of `Q'_{n+1}`
//! words, with exhaustive verification on a finite window.
//!
//! Coordinates: the target `[w]` fixes `x_0 … x_{|w|-1}`; a piece
//! `σ^t[q]` fixes `x_{-t} … x_{-t+|q|-1}`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::complexity::{is_good_scale, right_special};
use crate::error::{Error, Result};
use crate::subshift::{subshift_period, Subshift};
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ShiftedCylinder {
    pub t: usize,
    pub q: Word,
}

impl ShiftedCylinder {
    pub fn new(t: usize, q: Word) -> Self {
        ShiftedCylinder { t, q }
    }

    /// First and last fixed coordinate.
    pub fn span(&self) -> (i64, i64) {
        let start = -(self.t as i64);
        (start, start + self.q.len() as i64 - 1)
    }

    /// Membership of a point whose coordinates `[a, a + |u| - 1]` read `u`.
    /// The window must cover [`Self::span`].
    pub fn matches(&self, u: &Word, a: i64) -> bool {
        let (lo, _) = self.span();
        let off = (lo - a) as usize;
        u.letters()[off..off + self.q.len()] == *self.q.letters()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub target: Word,
    pub level: usize,
    pub k: usize,
    pub pieces: Vec<ShiftedCylinder>,
    /// Smallest window covering the target and every piece.
    pub window: (i64, i64),
}

impl Decomposition {
    /// Builds a decomposition from explicit pieces, e.g. to test a
    /// candidate family.
    pub fn from_pieces(target: Word, level: usize, k: usize, mut pieces: Vec<ShiftedCylinder>) -> Self {
        pieces.sort();
        pieces.dedup();
        let window = covering_window(&target, &pieces);
        Decomposition {
            target,
            level,
            k,
            pieces,
            window,
        }
    }
}

fn covering_window(target: &Word, pieces: &[ShiftedCylinder]) -> (i64, i64) {
    let mut a = 0i64;
    let mut b = target.len() as i64 - 1;
    for p in pieces {
        let (lo, hi) = p.span();
        a = a.min(lo);
        b = b.max(hi);
    }
    (a, b)
}

/// Decomposes `[w]` (with `|w| < n`) into pieces `σ^t[q]`, `q ∈ Q'_{n+1}`.
///
/// For each admissible left context, `K` is the last position `≤ n-2` at
/// which a right-special `n`-word ends; the piece is the `(n+1)`-word
/// ending at `K+1`, placed at offset `t = n-1-K`. Scanning to `n-2` rather
/// than `|w|-1` keeps every piece determining coordinates `0 … n-2`, so no
/// right-special word starts strictly between the piece and coordinate 0.
pub fn decompose_cylinder(sub: &Subshift, w: &Word, n: usize, k: usize) -> Result<Decomposition> {
    let l = w.len();
    if l == 0 {
        return Err(Error::EmptyWord);
    }
    if l >= n {
        return Err(Error::InvalidInput(format!("target length {l} must be below the level {n}")));
    }
    if !sub.contains(w)? {
        return Err(Error::InvalidInput(format!("{w} is not an admissible word")));
    }
    if !is_good_scale(sub, n, k)? {
        return Err(Error::NotGoodScale { n, k });
    }
    let special = right_special(sub, n)?.q;
    if special.is_empty() {
        return Err(Error::NoSpecialWords { level: n });
    }

    // Any (k+2)(n+1) admissible letters contain a right-special n-word, so
    // this much left context always produces a hit.
    let horizon = (k + 2) * (n + 1) + n;
    let total = horizon + n;
    let contexts = sub.factors(total)?;

    let mut pieces = BTreeSet::new();
    let mut checked = BTreeSet::new();
    for u in contexts.iter().filter(|u| u.letters()[horizon..horizon + l] == *w.letters()) {
        let letters = u.letters();
        // coordinate c sits at index c + horizon; hits end at coordinates ≤ n-2
        let hit = (n - 1..horizon + n - 1)
            .rev()
            .find(|&end| special.binary_search(&Word::new(letters[end + 1 - n..=end].to_vec())).is_ok());
        let Some(end) = hit else {
            return Err(Error::NoSpecialHit { context: u.to_string() });
        };
        let j = end as i64 - horizon as i64;
        let piece = ShiftedCylinder::new((n as i64 - 1 - j) as usize, Word::new(letters[end + 1 - n..=end + 1].to_vec()));
        if checked.insert(piece.clone()) {
            check_determinism(sub, &piece, w, &special)?;
        }
        pieces.insert(piece);
    }
    Ok(Decomposition::from_pieces(w.clone(), n, k, pieces.into_iter().collect()))
}

/// The piece must force every letter up to coordinate `n-2` through
/// non-special words, and agree with the target.
fn check_determinism(sub: &Subshift, piece: &ShiftedCylinder, w: &Word, special: &[Word]) -> Result<()> {
    let n = piece.q.len() - 1;
    let (lo, hi) = piece.span();
    let mut known = piece.q.clone();
    let mut last = hi;
    let fail = || Error::PieceNotDeterministic {
        t: piece.t,
        q: piece.q.to_string(),
    };
    while last < n as i64 - 2 {
        let tail = known.suffix(n);
        if special.binary_search(&tail).is_ok() {
            return Err(fail());
        }
        let ext = sub.right_extensions(&tail)?;
        if ext.len() != 1 {
            return Err(fail());
        }
        known.push(ext[0]);
        last += 1;
    }
    for c in 0.max(lo)..w.len() as i64 {
        if known.letters()[(c - lo) as usize] != w.letters()[c as usize] {
            return Err(fail());
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionChecks {
    /// Every target point lies in some piece.
    pub covered: bool,
    /// No point lies in two pieces.
    pub disjoint: bool,
    /// Every piece lies inside the target.
    pub contained: bool,
    /// `t ≤ (k+2)(n+1)` for every piece.
    pub offset_bound: bool,
    /// `t ≤ |v(q)|` for every piece whose period `|v(q)| < n+1`, the period
    /// taken relative to the subshift (see [`subshift_period`]).
    pub dense3: bool,
}

impl PartitionChecks {
    pub fn all(&self) -> bool {
        self.covered && self.disjoint && self.contained && self.offset_bound && self.dense3
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub window: (i64, i64),
    pub words_checked: usize,
    pub checks: PartitionChecks,
    /// First window word violating coverage, disjointness or containment.
    pub witness: Option<Word>,
}

/// Exhaustively compares the target cylinder with the union of pieces on
/// every admissible word of the window.
pub fn verify_partition(sub: &Subshift, d: &Decomposition, window: Option<(i64, i64)>) -> Result<PartitionReport> {
    let (a, b) = window.unwrap_or(d.window);
    let (need_a, need_b) = d.window;
    if a > need_a || b < need_b {
        return Err(Error::WindowTooSmall { a, b, need_a, need_b });
    }
    let len = (b - a + 1) as usize;
    let words = sub.factors(len)?;
    let target = ShiftedCylinder::new(0, d.target.clone());

    let mut covered = true;
    let mut disjoint = true;
    let mut contained = true;
    let mut witness = None;
    for u in words.iter() {
        let in_target = target.matches(u, a);
        let hits = d.pieces.iter().filter(|p| p.matches(u, a)).count();
        let bad_cover = in_target && hits == 0;
        let bad_disjoint = hits > 1;
        let bad_contain = !in_target && hits > 0;
        covered &= !bad_cover;
        disjoint &= !bad_disjoint;
        contained &= !bad_contain;
        if witness.is_none() && (bad_cover || bad_disjoint || bad_contain) {
            witness = Some(u.clone());
        }
    }

    let n = d.level;
    let offset_bound = d.pieces.iter().all(|p| p.t <= (d.k + 2) * (n + 1));
    let mut dense3 = true;
    for p in &d.pieces {
        let period = subshift_period(sub, &p.q)?;
        if period.ell < n + 1 && p.t > period.ell {
            dense3 = false;
        }
    }
    Ok(PartitionReport {
        window: (a, b),
        words_checked: words.len(),
        checks: PartitionChecks {
            covered,
            disjoint,
            contained,
            offset_bound,
            dense3,
        },
        witness,
    })
}

/// Serialized form: `{target, level, pieces:[{t,q}], verified_window, checks}`.
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionRecord {
    pub target: Word,
    pub level: usize,
    pub pieces: Vec<ShiftedCylinder>,
    pub verified_window: Option<(i64, i64)>,
    pub checks: Option<PartitionChecks>,
}

impl DecompositionRecord {
    pub fn new(d: &Decomposition, report: Option<&PartitionReport>) -> Self {
        DecompositionRecord {
            target: d.target.clone(),
            level: d.level,
            pieces: d.pieces.clone(),
            verified_window: report.map(|r| r.window),
            checks: report.map(|r| r.checks.clone()),
        }
    }
}
