//! Exact span and rank certificates for shifted families of cylinder
//! functions, restricted to a finite window.

use serde::Serialize;

use super::cylinder::CylinderFunction;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{serialize_scalar, Scalar};
use crate::subshift::Subshift;
use crate::words::Word;

/// Rank of `{f ∘ σ^j : f ∈ family, lo ≤ j ≤ hi}` restricted to a window.
#[derive(Debug, Clone, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct SpanCertificate<S> {
    pub family_size: usize,
    pub shift_range: (i64, i64),
    pub window: (i64, i64),
    pub rank: usize,
    /// `p(b - a + 1)`, the number of admissible window words.
    pub ambient_dimension: usize,
    /// Rows indexed by (member, shift), columns by window words. Present
    /// only when requested.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "serialize_matrix")]
    pub matrix: Option<Vec<Vec<S>>>,
}

impl<S> SpanCertificate<S> {
    pub fn without_matrix(mut self) -> Self {
        self.matrix = None;
        self
    }
}

fn serialize_matrix<S: Scalar, Ser: serde::Serializer>(m: &Option<Vec<Vec<S>>>, ser: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
    let rows: Option<Vec<Vec<String>>> = m
        .as_ref()
        .map(|m| m.iter().map(|r| r.iter().map(Scalar::to_report_string).collect()).collect());
    serde::Serialize::serialize(&rows, ser)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct Coefficient<S> {
    /// Index into the family.
    pub member: usize,
    pub shift: i64,
    #[serde(serialize_with = "serialize_scalar")]
    pub value: S,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct WordWeight<S> {
    pub word: Word,
    #[serde(serialize_with = "serialize_scalar")]
    pub weight: S,
}

/// Outcome of a span-membership test on a window.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct Membership<S> {
    pub member: bool,
    pub window: (i64, i64),
    /// Non-zero coefficients of a combination equal to the target on the window.
    pub coefficients: Vec<Coefficient<S>>,
    /// When not a member: a signed measure on window words annihilating
    /// every shifted family member but not the target.
    pub separating: Option<Vec<WordWeight<S>>>,
}

/// Rows of the family matrix, their `(member, shift)` labels and the
/// ambient dimension.
struct FamilyRows<S> {
    labels: Vec<(usize, i64)>,
    rows: Vec<Vec<S>>,
    ambient: usize,
}

fn family_rows<S: Scalar>(
    sub: &Subshift,
    family: &[CylinderFunction<S>],
    shifts: (i64, i64),
    window: (i64, i64),
) -> Result<FamilyRows<S>> {
    let (lo, hi) = shifts;
    if hi < lo {
        return Err(Error::InvalidInput(format!("empty shift range [{lo}, {hi}]")));
    }
    let ambient = ambient_dimension(sub, window)?;
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    for (i, f) in family.iter().enumerate() {
        for j in lo..=hi {
            rows.push(f.shift(j).refine(sub, window)?.vector());
            labels.push((i, j));
        }
    }
    Ok(FamilyRows { labels, rows, ambient })
}

fn ambient_dimension(sub: &Subshift, (a, b): (i64, i64)) -> Result<usize> {
    if b < a {
        return Err(Error::InvalidInput(format!("empty window [{a}, {b}]")));
    }
    let dim = sub.factors((b - a + 1) as usize)?.len();
    let limit = sub.limits().max_ambient;
    if dim > limit {
        return Err(Error::ResourceCap {
            what: "ambient dimension",
            requested: dim,
            limit,
        });
    }
    Ok(dim)
}

pub fn span_rank<S: Scalar>(
    sub: &Subshift,
    family: &[CylinderFunction<S>],
    shift_range: (i64, i64),
    window: (i64, i64),
) -> Result<SpanCertificate<S>> {
    let FamilyRows { rows, ambient, .. } = family_rows(sub, family, shift_range, window)?;
    let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(rows.clone()).rank() };
    Ok(SpanCertificate {
        family_size: family.len(),
        shift_range,
        window,
        rank,
        ambient_dimension: ambient,
        matrix: Some(rows),
    })
}

/// Rank of an explicit list of functions on a window.
pub fn functions_rank<S: Scalar>(sub: &Subshift, functions: &[CylinderFunction<S>], window: (i64, i64)) -> Result<SpanCertificate<S>> {
    span_rank(sub, functions, (0, 0), window)
}

pub fn span_contains<S: Scalar>(
    sub: &Subshift,
    family: &[CylinderFunction<S>],
    shift_range: (i64, i64),
    target: &CylinderFunction<S>,
    window: (i64, i64),
) -> Result<Membership<S>> {
    let FamilyRows { labels, rows, .. } = family_rows(sub, family, shift_range, window)?;
    let b = target.refine(sub, window)?.vector();
    let words = sub.factors((window.1 - window.0 + 1) as usize)?;
    // columns of the system are the shifted members
    let system = if rows.is_empty() {
        Matrix::zeros(b.len(), 0)
    } else {
        Matrix::from_rows(rows).transpose()
    };
    if let Some(x) = system.solve(&b) {
        let coefficients = labels
            .into_iter()
            .zip(x)
            .filter(|(_, v)| !v.is_negligible())
            .map(|((member, shift), value)| Coefficient { member, shift, value })
            .collect();
        return Ok(Membership {
            member: true,
            window,
            coefficients,
            separating: None,
        });
    }
    let y = system
        .separating_vector(&b)
        .ok_or_else(|| Error::Consistency("inconsistent system without a separating vector".into()))?;
    let separating = words
        .iter()
        .zip(y)
        .filter(|(_, v)| !v.is_negligible())
        .map(|(w, weight)| WordWeight { word: w.clone(), weight })
        .collect();
    Ok(Membership {
        member: false,
        window,
        coefficients: Vec::new(),
        separating: Some(separating),
    })
}

/// Evaluates `Σ c · member ∘ σ^shift` on the window.
pub fn combine<S: Scalar>(
    sub: &Subshift,
    family: &[CylinderFunction<S>],
    coefficients: &[Coefficient<S>],
    window: (i64, i64),
) -> Result<CylinderFunction<S>> {
    let mut acc = CylinderFunction::constant(sub, S::zero())?.refine(sub, window)?;
    for c in coefficients {
        let f = family
            .get(c.member)
            .ok_or_else(|| Error::InvalidInput(format!("no family member {}", c.member)))?;
        acc = acc.add(sub, &f.shift(c.shift).scale(&c.value))?;
    }
    acc.refine(sub, window)
}
