//! Rank certificate behind simple spectrum for Sturmian subshifts.

use serde::Serialize;

use super::cylinder::CylinderFunction;
use super::span::functions_rank;
use crate::error::{Error, Result};
use crate::subshift::{SpecKind, Subshift};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankLevel {
    pub n: usize,
    pub rank: usize,
    pub complexity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SturmianCertificate {
    pub n_max: usize,
    pub levels: Vec<RankLevel>,
    pub verdict: String,
}

/// Checks that `{𝟙} ∪ {f∘σ^k : k < n}`, `f(x) = (-1)^{x_0}`, has rank
/// `n + 1 = p(n)` on the window `[0, n-1]` for every `n ≤ n_max`.
pub fn sturmian_simplicity_certificate(sub: &Subshift, n_max: usize) -> Result<SturmianCertificate> {
    if !matches!(sub.spec().kind, SpecKind::Sturmian { .. }) {
        return Err(Error::InvalidInput(format!(
            "simplicity certificate needs a sturmian spec, got {}",
            sub.spec().kind_name()
        )));
    }
    let one = CylinderFunction::<Rational>::one(sub)?;
    let f = CylinderFunction::<Rational>::sign(sub)?;
    let mut levels = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut fns = vec![one.clone()];
        fns.extend((0..n as i64).map(|k| f.shift(k)));
        let cert = functions_rank(sub, &fns, (0, n as i64 - 1))?;
        if cert.rank != n + 1 || cert.ambient_dimension != n + 1 {
            return Err(Error::RankDeficiency {
                level: n,
                rank: cert.rank,
                expected: n + 1,
            });
        }
        levels.push(RankLevel {
            n,
            rank: cert.rank,
            complexity: cert.ambient_dimension,
        });
    }
    Ok(SturmianCertificate {
        n_max,
        levels,
        verdict: format!("simplicity certificate at scale {n_max}: rank n+1 = p(n) for 1 ≤ n ≤ {n_max}"),
    })
}
