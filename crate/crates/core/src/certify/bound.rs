//! Finite-scale instantiation of the multiplicity bound: every short
//! cylinder is a sum of shifted `Q'_{n+1}` cylinders.

use serde::Serialize;

use super::cylinder::CylinderFunction;
use super::span::{combine, span_contains, Coefficient};
use crate::complexity::{is_good_scale, right_special};
use crate::decompose::{decompose_cylinder, verify_partition, Decomposition, PartitionChecks, ShiftedCylinder};
use crate::error::{Error, Result};
use crate::subshift::{aperiodicity_window, is_aperiodic_up_to, AperiodicityCheck, Subshift};
use crate::words::Word;
use crate::Rational;

#[derive(Debug, Clone, Serialize)]
pub struct CylinderCertificate {
    pub target: Word,
    pub pieces: Vec<ShiftedCylinder>,
    pub window: (i64, i64),
    pub partition: PartitionChecks,
    /// The pieces with coefficient 1 reproduce `χ_[w]` wordwise.
    pub indicator_sum: bool,
    /// An independent exact solve finds `χ_[w]` in the shifted span.
    pub span_member: bool,
}

impl CylinderCertificate {
    pub fn passed(&self) -> bool {
        self.partition.all() && self.indicator_sum && self.span_member
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MultiplicityBound {
    pub k: usize,
    pub n: usize,
    /// The witness family: indicators of these words.
    pub family: Vec<Word>,
    pub family_size: usize,
    pub bound: usize,
    pub aperiodicity: AperiodicityCheck,
    pub certificates: Vec<CylinderCertificate>,
    pub passed: bool,
    pub verdict: String,
}

/// Coefficient-1 certificate of `χ_[w] = Σ χ_[q] ∘ σ^{-t}` over the pieces.
pub fn decomposition_coefficients(family: &[Word], d: &Decomposition) -> Result<Vec<Coefficient<Rational>>> {
    d.pieces
        .iter()
        .map(|p| {
            let member = family
                .iter()
                .position(|q| *q == p.q)
                .ok_or_else(|| Error::InvalidInput(format!("piece word {} outside the family", p.q)))?;
            Ok(Coefficient {
                member,
                shift: -(p.t as i64),
                value: Rational::from_integer(1.into()),
            })
        })
        .collect()
}

pub fn multiplicity_upper_bound(sub: &Subshift, k: usize, n: usize) -> Result<MultiplicityBound> {
    if !is_good_scale(sub, n, k)? {
        return Err(Error::NotGoodScale { n, k });
    }
    let aperiodicity = is_aperiodic_up_to(sub, n + 1, aperiodicity_window(n + 1))?;
    if !aperiodicity.aperiodic {
        return Err(Error::InvalidInput(format!(
            "subshift contains the periodic point of {}",
            aperiodicity.witness.as_ref().map(ToString::to_string).unwrap_or_default()
        )));
    }
    let family = right_special(sub, n)?.q_prime;
    let functions = family
        .iter()
        .map(|q| CylinderFunction::<Rational>::indicator(sub, q))
        .collect::<Result<Vec<_>>>()?;

    let mut certificates = Vec::new();
    for len in 1..n {
        for w in sub.factors(len)?.iter() {
            let d = decompose_cylinder(sub, w, n, k)?;
            let report = verify_partition(sub, &d, None)?;
            let target = CylinderFunction::<Rational>::indicator(sub, w)?;
            let ones = decomposition_coefficients(&family, &d)?;
            let indicator_sum = combine(sub, &functions, &ones, d.window)?.same_function(sub, &target)?;
            let t_min = d.pieces.iter().map(|p| p.t).min().unwrap_or(0) as i64;
            let t_max = d.pieces.iter().map(|p| p.t).max().unwrap_or(0) as i64;
            let span = span_contains(sub, &functions, (-t_max, -t_min), &target, d.window)?;
            let span_member = span.member && combine(sub, &functions, &span.coefficients, d.window)?.same_function(sub, &target)?;
            certificates.push(CylinderCertificate {
                target: w.clone(),
                pieces: d.pieces,
                window: d.window,
                partition: report.checks,
                indicator_sum,
                span_member,
            });
        }
    }
    let bound = 2 * k;
    let passed = family.len() <= bound && certificates.iter().all(CylinderCertificate::passed);
    let verdict = if passed {
        format!("Mult ≤ ♯Q'_{} = {} ≤ 2k = {bound} at scale {n}", n + 1, family.len())
    } else {
        format!("certificate failed at scale {n}")
    };
    Ok(MultiplicityBound {
        k,
        n,
        family_size: family.len(),
        family,
        bound,
        aperiodicity,
        certificates,
        passed,
        verdict,
    })
}
