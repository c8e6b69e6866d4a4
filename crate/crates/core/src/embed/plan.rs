//! The affine embedding of the invariant-measure simplex of a permutation
//! into `([0,1]^d)^ℤ`, with an exact injectivity check.

use num_integer::Integer;
use serde::Serialize;

use super::perm::{FiniteMeasure, PermutationSystem};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbeddingCase {
    /// The cycle lengths share a factor: one coordinate per cycle.
    CommonFactor,
    /// Coprime lengths: one cycle is spread over all `k-1` coordinates.
    Coprime,
}

/// The sequence `j ↦ pattern[(j + phase) mod period]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicSequence {
    pub phase: usize,
    pub period: usize,
    pub pattern: String,
}

impl PeriodicSequence {
    pub fn zero() -> Self {
        PeriodicSequence {
            phase: 0,
            period: 1,
            pattern: "0".into(),
        }
    }

    /// `σˡ((1 0^{r-1})^∞)`.
    pub fn pulse(r: usize, l: usize) -> Self {
        PeriodicSequence {
            phase: l % r,
            period: r,
            pattern: format!("1{}", "0".repeat(r - 1)),
        }
    }

    pub fn at(&self, j: i64) -> bool {
        let idx = (j + self.phase as i64).rem_euclid(self.period as i64) as usize;
        self.pattern.as_bytes()[idx] == b'1'
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingPlan {
    pub dimension: usize,
    pub case: EmbeddingCase,
    /// Cycle spread over every coordinate in the coprime case.
    pub distinguished: Option<usize>,
    /// Least common period of every coordinate sequence.
    pub period: usize,
    /// `points[x][c]` is coordinate `c` of the image of `δ_x`.
    pub points: Vec<Vec<PeriodicSequence>>,
}

/// `(d, case)` from the gcd of the cycle lengths.
pub fn embedding_dimension(sys: &PermutationSystem) -> (usize, EmbeddingCase) {
    let lengths = sys.cycle_lengths();
    let g = lengths.iter().fold(0, |a, r| a.gcd(r));
    if g > 1 {
        (lengths.len(), EmbeddingCase::CommonFactor)
    } else {
        (lengths.len().saturating_sub(1), EmbeddingCase::Coprime)
    }
}

pub fn build_embedding(sys: &PermutationSystem) -> EmbeddingPlan {
    build_embedding_as(sys, embedding_dimension(sys).1)
}

/// The plan of the given case regardless of the gcd rule, e.g. to exhibit
/// failures below the sharp dimension.
///
/// In the coprime case the spread cycle is the last one of length
/// `r ≠ size/2`; with kernel vectors constant on cycles, that length rules
/// out the mass-zero kernel `(−c on the others, c on it)`. When every cycle
/// has `r = size/2` the spread cycle is sent to `0^∞` instead.
pub fn build_embedding_as(sys: &PermutationSystem, case: EmbeddingCase) -> EmbeddingPlan {
    let lengths = sys.cycle_lengths();
    let k = lengths.len();
    let size = sys.size();
    let (dimension, distinguished) = match case {
        EmbeddingCase::CommonFactor => (k, None),
        EmbeddingCase::Coprime => {
            let pick = (0..k).rev().find(|&i| 2 * lengths[i] != size).unwrap_or(k.saturating_sub(1));
            (k.saturating_sub(1), (k > 0).then_some(pick))
        }
    };
    let spread_is_zero = distinguished.is_some_and(|i| 2 * lengths[i] == size);
    // coordinate of each non-distinguished cycle, in cycle order
    let coordinate = |i: usize| match distinguished {
        Some(dist) if i > dist => i - 1,
        _ => i,
    };
    let points = (0..size)
        .map(|x| {
            let (i, l) = sys.position(x);
            let r = lengths[i];
            if Some(i) == distinguished {
                let seq = if spread_is_zero {
                    PeriodicSequence::zero()
                } else {
                    PeriodicSequence::pulse(r, l)
                };
                vec![seq; dimension]
            } else {
                let mut row = vec![PeriodicSequence::zero(); dimension];
                row[coordinate(i)] = PeriodicSequence::pulse(r, l);
                row
            }
        })
        .collect();
    EmbeddingPlan {
        dimension,
        case,
        distinguished,
        period: sys.period(),
        points,
    }
}

/// `Ψ(μ)` on coordinates `range.0 ..= range.1`: row `c` is coordinate `c`.
pub fn psi_eval<S: Scalar>(plan: &EmbeddingPlan, mu: &FiniteMeasure<S>, range: (i64, i64)) -> Result<Vec<Vec<S>>> {
    if mu.weights().len() != plan.points.len() {
        return Err(Error::InvalidInput(format!(
            "measure on {} points, plan on {}",
            mu.weights().len(),
            plan.points.len()
        )));
    }
    let (a, b) = range;
    let rows: Vec<Vec<S>> = (0..plan.dimension)
        .map(|c| {
            (a..=b)
                .map(|j| {
                    plan.points
                        .iter()
                        .zip(mu.weights())
                        .filter(|(p, _)| p[c].at(j))
                        .fold(S::zero(), |acc, (_, w)| acc + w.clone())
                })
                .collect()
        })
        .collect();
    debug_assert!(rows.iter().all(|row| {
        let p = plan.period;
        row.iter().zip(row.iter().skip(p)).all(|(x, y)| x == y)
    }));
    Ok(rows)
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct InjectivityCertificate<S> {
    pub dimension: usize,
    /// Length of the period window the map is evaluated on.
    pub period: usize,
    pub injective: bool,
    /// Number of independent mass-zero signed measures with image zero.
    pub kernel_dimension: usize,
    /// Two distinct measures with the same image, when not injective.
    pub witness: Option<(FiniteMeasure<S>, FiniteMeasure<S>)>,
}

/// Injectivity of `Ψ` on the simplex: the one-period evaluation matrix,
/// stacked with the total-mass row, must have trivial kernel.
pub fn injectivity_certificate<S: Scalar>(plan: &EmbeddingPlan) -> InjectivityCertificate<S> {
    let size = plan.points.len();
    let mut rows: Vec<Vec<S>> = Vec::new();
    for c in 0..plan.dimension {
        for j in 0..plan.period as i64 {
            rows.push(
                plan.points
                    .iter()
                    .map(|p| if p[c].at(j) { S::one() } else { S::zero() })
                    .collect(),
            );
        }
    }
    rows.push(vec![S::one(); size]);
    let kernel = if size == 0 { Vec::new() } else { Matrix::from_rows(rows).null_space() };
    let witness = kernel.first().map(|z| {
        let pos: Vec<S> = z.iter().map(|v| if *v > S::zero() { v.clone() } else { S::zero() }).collect();
        let neg: Vec<S> = z.iter().map(|v| if *v < S::zero() { -v.clone() } else { S::zero() }).collect();
        (
            FiniteMeasure::normalized(pos).expect("kernel vector has positive part"),
            FiniteMeasure::normalized(neg).expect("kernel vector has negative part"),
        )
    });
    InjectivityCertificate {
        dimension: plan.dimension,
        period: plan.period,
        injective: kernel.is_empty(),
        kernel_dimension: kernel.len(),
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use itertools::Itertools;
    use proptest::prelude::*;

    fn sys(s: &str) -> PermutationSystem {
        PermutationSystem::parse(s).unwrap()
    }

    fn q(a: i64, b: i64) -> Rational {
        Rational::ratio(a, b)
    }

    #[test]
    fn dimensions() {
        assert_eq!(embedding_dimension(&sys("(1 2)(3 4 5 6)")), (2, EmbeddingCase::CommonFactor));
        assert_eq!(embedding_dimension(&sys("(1 2)(3 4 5)")), (1, EmbeddingCase::Coprime));
        assert_eq!(embedding_dimension(&PermutationSystem::identity(2)), (1, EmbeddingCase::Coprime));
        assert_eq!(embedding_dimension(&PermutationSystem::identity(1)), (0, EmbeddingCase::Coprime));
        assert_eq!(embedding_dimension(&sys("(1 2)")), (1, EmbeddingCase::CommonFactor));
    }

    #[test]
    fn two_cycle_plan() {
        let p = build_embedding(&sys("(1 2)"));
        assert_eq!(p.points[0], vec![PeriodicSequence::pulse(2, 0)]);
        let seq = |x: usize| (0..4).map(|j| p.points[x][0].at(j)).collect::<Vec<_>>();
        assert_eq!(seq(0), [true, false, true, false]);
        assert_eq!(seq(1), [false, true, false, true]);
    }

    #[test]
    fn coprime_plan_carries_both_periods() {
        let s = sys("(1 2)(3 4 5)");
        let p = build_embedding(&s);
        assert_eq!((p.dimension, p.distinguished, p.period), (1, Some(1), 6));
        assert_eq!(p.points[0][0].period, 2);
        assert_eq!(p.points[2][0], PeriodicSequence::pulse(3, 0));
        assert!(injectivity_certificate::<Rational>(&p).injective);
    }

    #[test]
    fn common_factor_plan_is_injective_and_sharp() {
        let s = sys("(1 2)(3 4 5 6)");
        assert!(injectivity_certificate::<Rational>(&build_embedding(&s)).injective);
        let forced = build_embedding_as(&s, EmbeddingCase::Coprime);
        assert_eq!(forced.dimension, 1);
        let cert = injectivity_certificate::<Rational>(&forced);
        assert!(!cert.injective);
        let (mu, nu) = cert.witness.unwrap();
        assert_ne!(mu, nu);
        let range = (0, forced.period as i64 - 1);
        assert_eq!(psi_eval(&forced, &mu, range).unwrap(), psi_eval(&forced, &nu, range).unwrap());
    }

    #[test]
    fn two_fixed_points_and_degenerate_point() {
        let two = build_embedding(&PermutationSystem::identity(2));
        assert_eq!(two.dimension, 1);
        assert!(injectivity_certificate::<Rational>(&two).injective);
        let one = build_embedding(&PermutationSystem::identity(1));
        assert_eq!(one.dimension, 0);
        assert!(injectivity_certificate::<Rational>(&one).injective);
    }

    #[test]
    fn balanced_spread_cycle_is_avoided() {
        // with the last cycle spread, lengths (1, 2, 3) give r_k = r_1 + r_2
        let s = sys("(2 3)(4 5 6)");
        let p = build_embedding(&s);
        assert_eq!(p.distinguished, Some(1));
        assert!(injectivity_certificate::<Rational>(&p).injective);
    }

    #[test]
    fn psi_on_simple_measures() {
        let s = sys("(1 2)(3 4 5)");
        let p = build_embedding(&s);
        let dirac = FiniteMeasure::<Rational>::dirac(5, 3);
        let row = psi_eval(&p, &dirac, (0, 5)).unwrap();
        let expect: Vec<Rational> = (0..6).map(|j| if p.points[3][0].at(j) { q(1, 1) } else { q(0, 1) }).collect();
        assert_eq!(row[0], expect);
        let uni = FiniteMeasure::<Rational>::cycle_uniform(&s, 1);
        assert!(psi_eval(&p, &uni, (-4, 4)).unwrap()[0].iter().all(|v| *v == q(1, 3)));
        let two = sys("(1 2)");
        let half = FiniteMeasure::new(vec![q(1, 2), q(1, 2)]).unwrap();
        assert!(psi_eval(&build_embedding(&two), &half, (0, 3)).unwrap()[0].iter().all(|v| *v == q(1, 2)));
    }

    #[test]
    fn gcd_rule_plans_are_injective_up_to_size_seven() {
        for size in 1..=7 {
            for perm in (0..size).permutations(size) {
                let s = PermutationSystem::new(perm).unwrap();
                let cert = injectivity_certificate::<Rational>(&build_embedding(&s));
                assert!(cert.injective, "{}", s.notation());
            }
        }
    }

    proptest! {
        #[test]
        fn psi_is_equivariant(perm in Just((0..7).collect::<Vec<usize>>()).prop_shuffle(),
                              weights in prop::collection::vec(1i64..20, 7),
                              start in -10i64..10) {
            let s = PermutationSystem::new(perm).unwrap();
            let plan = build_embedding(&s);
            let mu = FiniteMeasure::normalized(weights.into_iter().map(|w| q(w, 1)).collect()).unwrap();
            let lhs = psi_eval(&plan, &mu.push_forward(&s), (start, start + 12)).unwrap();
            let rhs = psi_eval(&plan, &mu, (start + 1, start + 13)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
