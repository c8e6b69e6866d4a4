//! Functions depending on finitely many coordinates of a subshift point.

use std::collections::BTreeMap;

use crate::decompose::ShiftedCylinder;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::subshift::Subshift;
use crate::words::Word;

/// A function of the coordinates `x_a … x_b`, stored by its value on
/// every admissible window word.
#[derive(Debug, Clone, PartialEq)]
pub struct CylinderFunction<S> {
    window: (i64, i64),
    values: BTreeMap<Word, S>,
}

impl<S: Scalar> CylinderFunction<S> {
    /// Tabulates `f` on the admissible words of `window`.
    pub fn from_fn(sub: &Subshift, window: (i64, i64), mut f: impl FnMut(&Word) -> S) -> Result<Self> {
        let (a, b) = window;
        if b < a {
            return Err(Error::InvalidInput(format!("empty window [{a}, {b}]")));
        }
        let words = sub.factors((b - a + 1) as usize)?;
        Ok(CylinderFunction {
            window,
            values: words.iter().map(|w| (w.clone(), f(w))).collect(),
        })
    }

    pub fn constant(sub: &Subshift, value: S) -> Result<Self> {
        Self::from_fn(sub, (0, 0), |_| value.clone())
    }

    pub fn one(sub: &Subshift) -> Result<Self> {
        Self::constant(sub, S::one())
    }

    /// `χ_[q]`, fixing coordinates `0 … |q|-1`.
    pub fn indicator(sub: &Subshift, q: &Word) -> Result<Self> {
        if q.is_empty() {
            return Err(Error::EmptyWord);
        }
        Self::from_fn(sub, (0, q.len() as i64 - 1), |u| if u == q { S::one() } else { S::zero() })
    }

    /// Indicator of `σ^t[q]`, i.e. `χ_[q] ∘ σ^{-t}`.
    pub fn shifted_indicator(sub: &Subshift, piece: &ShiftedCylinder) -> Result<Self> {
        Ok(Self::indicator(sub, &piece.q)?.shift(-(piece.t as i64)))
    }

    /// `x ↦ (-1)^{x_0}` on a binary alphabet: `+1` on the first letter,
    /// `-1` on the second.
    pub fn sign(sub: &Subshift) -> Result<Self> {
        let letters = sub.alphabet_letters();
        if letters.len() != 2 {
            return Err(Error::InvalidInput("sign function needs a binary alphabet".into()));
        }
        let first = letters[0];
        Self::from_fn(sub, (0, 0), |u| if u.letters()[0] == first { S::one() } else { -S::one() })
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    pub fn values(&self) -> &BTreeMap<Word, S> {
        &self.values
    }

    /// Value on a window word; `None` if the word is not admissible.
    pub fn value(&self, u: &Word) -> Option<&S> {
        self.values.get(u)
    }

    /// The same function viewed on a larger window.
    pub fn refine(&self, sub: &Subshift, window: (i64, i64)) -> Result<Self> {
        let (a, b) = self.window;
        let (na, nb) = window;
        if na > a || nb < b {
            return Err(Error::WindowTooSmall {
                a: na,
                b: nb,
                need_a: a,
                need_b: b,
            });
        }
        let off = (a - na) as usize;
        let len = (b - a + 1) as usize;
        let mut out = BTreeMap::new();
        for u in sub.factors((nb - na + 1) as usize)?.iter() {
            let sub_word = u.factor(off, len);
            let v = self
                .values
                .get(&sub_word)
                .ok_or_else(|| Error::Consistency(format!("factor {sub_word} of admissible {u} missing from L")))?;
            out.insert(u.clone(), v.clone());
        }
        Ok(CylinderFunction { window, values: out })
    }

    /// `f ∘ σ^j`: the window moves by `j`, values are unchanged.
    pub fn shift(&self, j: i64) -> Self {
        CylinderFunction {
            window: (self.window.0 + j, self.window.1 + j),
            values: self.values.clone(),
        }
    }

    /// Values in the sorted order of the window's words.
    pub fn vector(&self) -> Vec<S> {
        self.values.values().cloned().collect()
    }

    pub fn scale(&self, c: &S) -> Self {
        CylinderFunction {
            window: self.window,
            values: self.values.iter().map(|(w, v)| (w.clone(), v.clone() * c.clone())).collect(),
        }
    }

    /// Pointwise sum over the union window.
    pub fn add(&self, sub: &Subshift, other: &Self) -> Result<Self> {
        let window = union(self.window, other.window);
        let (x, y) = (self.refine(sub, window)?, other.refine(sub, window)?);
        Ok(CylinderFunction {
            window,
            values: x
                .values
                .into_iter()
                .zip(y.values)
                .map(|((w, a), (_, b))| (w, a + b))
                .collect(),
        })
    }

    /// Equality as functions on the subshift.
    pub fn same_function(&self, sub: &Subshift, other: &Self) -> Result<bool> {
        let window = union(self.window, other.window);
        Ok(self.refine(sub, window)?.values == other.refine(sub, window)?.values)
    }

    pub fn min_max<'a>(&'a self, words: impl IntoIterator<Item = &'a Word>) -> Option<(S, S)> {
        let mut it = words.into_iter().filter_map(|w| self.values.get(w));
        let first = it.next()?.clone();
        Some(it.fold((first.clone(), first), |(lo, hi), v| {
            (
                if *v < lo { v.clone() } else { lo },
                if *v > hi { v.clone() } else { hi },
            )
        }))
    }
}

pub(crate) fn union(a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
    (a.0.min(b.0), a.1.max(b.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subshift::SubshiftSpec;
    use crate::Rational;
    use proptest::prelude::*;

    fn fib() -> Subshift {
        Subshift::new(SubshiftSpec::fibonacci(20))
    }

    fn q(v: i64) -> Rational {
        Rational::ratio(v, 1)
    }

    fn table(f: &CylinderFunction<Rational>) -> Vec<(String, Rational)> {
        f.values().iter().map(|(w, v)| (w.to_string(), v.clone())).collect()
    }

    #[test]
    fn refine_indicator_of_zero() {
        let f = fib();
        let chi = CylinderFunction::<Rational>::indicator(&f, &"0".into()).unwrap();
        let r = chi.refine(&f, (0, 1)).unwrap();
        assert_eq!(table(&r), vec![("00".into(), q(1)), ("01".into(), q(1)), ("10".into(), q(0))]);
    }

    #[test]
    fn refine_constant_and_two_sided() {
        let f = fib();
        let one = CylinderFunction::<Rational>::one(&f).unwrap().refine(&f, (-3, 4)).unwrap();
        assert!(one.values().values().all(|v| *v == q(1)));
        let chi = CylinderFunction::<Rational>::indicator(&f, &"10".into()).unwrap();
        let r = chi.refine(&f, (-1, 1)).unwrap();
        let ones: Vec<String> = r.values().iter().filter(|(_, v)| **v == q(1)).map(|(w, _)| w.to_string()).collect();
        // L(3) = {001, 010, 100, 101}; only x10 words with x admissible
        assert_eq!(ones, ["010"]);
        assert!(chi.refine(&f, (1, 3)).is_err());
    }

    #[test]
    fn shifted_sign() {
        let f = fib();
        let s = CylinderFunction::<Rational>::sign(&f).unwrap().shift(1);
        assert_eq!(s.window(), (1, 1));
        let r = s.refine(&f, (0, 1)).unwrap();
        assert_eq!(table(&r), vec![("00".into(), q(1)), ("01".into(), q(-1)), ("10".into(), q(1))]);
        assert_eq!(s.shift(0), s);
    }

    #[test]
    fn shifted_indicator_matches_cylinder_semantics() {
        let f = fib();
        let p = ShiftedCylinder::new(2, "100".into());
        let g = CylinderFunction::<Rational>::shifted_indicator(&f, &p).unwrap();
        assert_eq!(g.window(), (-2, 0));
        let r = g.refine(&f, (-4, 2)).unwrap();
        for (u, v) in r.values() {
            assert_eq!(*v == q(1), p.matches(u, -4));
        }
    }

    proptest! {
        #[test]
        fn refine_is_functorial(a in -3i64..=0, b in 0i64..=3, da in 0i64..=2, db in 0i64..=2) {
            let f = fib();
            let chi = CylinderFunction::<Rational>::indicator(&f, &"01".into()).unwrap();
            let w1 = (a.min(0), b.max(1));
            let w2 = (w1.0 - da, w1.1 + db);
            let twice = chi.refine(&f, w1).unwrap().refine(&f, w2).unwrap();
            prop_assert_eq!(twice, chi.refine(&f, w2).unwrap());
        }

        #[test]
        fn shifts_compose(i in -5i64..5, j in -5i64..5) {
            let f = fib();
            let s = CylinderFunction::<Rational>::sign(&f).unwrap();
            prop_assert_eq!(s.shift(i).shift(j), s.shift(i + j));
        }
    }
}
