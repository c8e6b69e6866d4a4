//! Permutations of a finite set, their cycles and invariant measures.

use num_integer::Integer;
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{serialize_scalars, Scalar};

/// A bijection of `{0, …, size-1}` with its cycle decomposition.
///
/// Cycles start at their smallest element and are sorted by it; the base
/// point `e_i` of a cycle is that element, and `cycles[i][l] = Tˡ e_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationSystem {
    perm: Vec<usize>,
    cycles: Vec<Vec<usize>>,
    /// `(cycle index, position in cycle)` of every point.
    position: Vec<(usize, usize)>,
}

impl PermutationSystem {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let size = perm.len();
        let mut seen = vec![false; size];
        for &y in &perm {
            if y >= size || std::mem::replace(&mut seen[y], true) {
                return Err(Error::NotBijective(format!("{perm:?} is not a permutation of 0..{size}")));
            }
        }
        let mut cycles = Vec::new();
        let mut position = vec![(0, 0); size];
        let mut done = vec![false; size];
        for start in 0..size {
            if done[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !done[x] {
                done[x] = true;
                position[x] = (cycles.len(), cycle.len());
                cycle.push(x);
                x = perm[x];
            }
            cycles.push(cycle);
        }
        Ok(PermutationSystem { perm, cycles, position })
    }

    pub fn identity(size: usize) -> Self {
        Self::new((0..size).collect()).expect("identity is a bijection")
    }

    /// Cycle notation `(1 2)(3 4 5)` or a one-line image list `2,1,4,5,3`,
    /// both 1-based. In cycle notation the size is the largest point named.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let number = |tok: &str| -> Result<usize> {
            match tok.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v - 1),
                _ => Err(Error::Parse {
                    line: 1,
                    message: format!("bad point '{tok}' (points are 1-based integers)"),
                }),
            }
        };
        let split = |s: &str| -> Vec<String> {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(str::to_string)
                .collect()
        };
        if !text.starts_with('(') {
            let images = split(text).iter().map(|t| number(t)).collect::<Result<Vec<_>>>()?;
            return Self::new(images);
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').and_then(|r| r.split_once(')')).ok_or_else(|| Error::Parse {
                line: 1,
                message: format!("expected '(…)' at '{rest}'"),
            })?;
            cycles.push(split(body.0).iter().map(|t| number(t)).collect::<Result<_>>()?);
            rest = body.1.trim_start();
        }
        let size = cycles.iter().flatten().map(|&x| x + 1).max().unwrap_or(0);
        let mut perm: Vec<usize> = (0..size).collect();
        let mut moved = vec![false; size];
        for c in &cycles {
            for (i, &x) in c.iter().enumerate() {
                if std::mem::replace(&mut moved[x], true) {
                    return Err(Error::NotBijective(format!("point {} appears twice", x + 1)));
                }
                perm[x] = c[(i + 1) % c.len()];
            }
        }
        Self::new(perm)
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn image(&self, x: usize) -> usize {
        self.perm[x]
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    pub fn base_points(&self) -> Vec<usize> {
        self.cycles.iter().map(|c| c[0]).collect()
    }

    /// `(i, l)` with `x = Tˡ e_i`.
    pub fn position(&self, x: usize) -> (usize, usize) {
        self.position[x]
    }

    /// Least common multiple of the cycle lengths.
    pub fn period(&self) -> usize {
        self.cycle_lengths().into_iter().fold(1, |a, r| a.lcm(&r))
    }

    pub fn power(&self, p: usize) -> Self {
        let perm = (0..self.size())
            .map(|x| (0..p).fold(x, |y, _| self.perm[y]))
            .collect();
        Self::new(perm).expect("powers of bijections are bijections")
    }

    /// 1-based cycle notation, fixed points included.
    pub fn notation(&self) -> String {
        self.cycles
            .iter()
            .map(|c| format!("({})", c.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ")))
            .collect()
    }
}

impl Serialize for PermutationSystem {
    fn serialize<Ser: serde::Serializer>(&self, ser: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        let one_based = |v: &[usize]| v.iter().map(|x| x + 1).collect::<Vec<_>>();
        let mut s = ser.serialize_struct("PermutationSystem", 4)?;
        s.serialize_field("size", &self.size())?;
        s.serialize_field("notation", &self.notation())?;
        s.serialize_field("cycle_lengths", &self.cycle_lengths())?;
        s.serialize_field("base_points", &one_based(&self.base_points()))?;
        s.end()
    }
}

/// A probability vector on the points.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct FiniteMeasure<S> {
    #[serde(serialize_with = "serialize_scalars")]
    weights: Vec<S>,
}

impl<S: Scalar> FiniteMeasure<S> {
    pub fn new(weights: Vec<S>) -> Result<Self> {
        if weights.iter().any(|w| *w < S::zero()) {
            return Err(Error::InvalidInput("measure weights must be non-negative".into()));
        }
        let total = weights.iter().fold(S::zero(), |a, w| a + w.clone());
        if !(total - S::one()).is_negligible() {
            return Err(Error::InvalidInput("measure weights must sum to 1".into()));
        }
        Ok(FiniteMeasure { weights })
    }

    /// Normalizes non-negative weights with positive total.
    pub fn normalized(weights: Vec<S>) -> Result<Self> {
        let total = weights.iter().fold(S::zero(), |a, w| a + w.clone());
        if total.is_negligible() || total < S::zero() {
            return Err(Error::InvalidInput("weights have no positive mass".into()));
        }
        Self::new(weights.into_iter().map(|w| w / total.clone()).collect())
    }

    pub fn dirac(size: usize, x: usize) -> Self {
        let mut w = vec![S::zero(); size];
        w[x] = S::one();
        FiniteMeasure { weights: w }
    }

    /// Uniform measure on one cycle.
    pub fn cycle_uniform(sys: &PermutationSystem, cycle: usize) -> Self {
        let c = &sys.cycles()[cycle];
        let mut w = vec![S::zero(); sys.size()];
        for &x in c {
            w[x] = S::ratio(1, c.len() as i64);
        }
        FiniteMeasure { weights: w }
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    /// `T_* μ`, with `(T_* μ)(T x) = μ(x)`.
    pub fn push_forward(&self, sys: &PermutationSystem) -> Self {
        let mut w = vec![S::zero(); self.weights.len()];
        for (x, v) in self.weights.iter().enumerate() {
            w[sys.image(x)] = v.clone();
        }
        FiniteMeasure { weights: w }
    }

    pub fn is_invariant(&self, sys: &PermutationSystem) -> bool {
        self.push_forward(sys) == *self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicityCertificate {
    /// Number of cycles, i.e. of ergodic measures.
    pub multiplicity: usize,
    pub size: usize,
    /// `dim (U_T - I)(ℚ^X)`, expected `size - k`.
    pub coboundary_rank: usize,
    /// `size - coboundary_rank`.
    pub quotient_dimension: usize,
    /// Averages of the cycle indicators over each cycle form the identity.
    pub average_matrix_is_identity: bool,
    /// Coboundaries and cycle indicators together span all functions.
    pub complement_spans: bool,
}

impl MultiplicityCertificate {
    pub fn passed(&self) -> bool {
        self.quotient_dimension == self.multiplicity && self.average_matrix_is_identity && self.complement_spans
    }
}

/// Multiplicity of a permutation with its coboundary certificate, over `S`.
pub fn finite_mult<S: Scalar>(sys: &PermutationSystem) -> MultiplicityCertificate {
    let n = sys.size();
    // (U f)(x) = f(T x); columns of U - I span the coboundaries
    let mut m = Matrix::<S>::zeros(n, n);
    for x in 0..n {
        m.set(x, sys.image(x), m.get(x, sys.image(x)).clone() + S::one());
        m.set(x, x, m.get(x, x).clone() - S::one());
    }
    let coboundary_rank = m.rank();
    let k = sys.cycle_count();
    let indicator = |i: usize| -> Vec<S> {
        (0..n)
            .map(|x| if sys.position(x).0 == i { S::one() } else { S::zero() })
            .collect()
    };
    let average_matrix_is_identity = (0..k).all(|i| {
        (0..k).all(|j| {
            let f = indicator(j);
            let c = &sys.cycles()[i];
            let avg = c.iter().fold(S::zero(), |a, &x| a + f[x].clone()) / S::from_usize(c.len()).expect("fits");
            avg == if i == j { S::one() } else { S::zero() }
        })
    });
    let mut columns = m.transpose().to_rows();
    columns.extend((0..k).map(indicator));
    let complement_spans = n == 0 || Matrix::from_rows(columns).rank() == n;
    MultiplicityCertificate {
        multiplicity: k,
        size: n,
        coboundary_rank,
        quotient_dimension: n - coboundary_rank,
        average_matrix_is_identity,
        complement_spans,
    }
}

/// `dim Fix(T_*^p)`: the number of cycles of `T^p`, minus one.
pub fn fix_dimension(sys: &PermutationSystem, p: usize) -> Result<usize> {
    if p == 0 {
        return Err(Error::InvalidInput("power must be at least 1".into()));
    }
    Ok(sys.power(p).cycle_count().saturating_sub(1))
}
