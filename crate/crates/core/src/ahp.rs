//! Pairwise-comparison mathematics for the Analytic Hierarchy Process.
//!
//! A [`ComparisonMatrix`] holds Saaty-scale judgments `m[i][j]` ("how much more
//! important is `i` than `j`"). Priorities are the normalized principal
//! eigenvector, computed by power iteration. [`consistency`] reports Saaty's
//! consistency index and ratio, and [`synthesize`] combines criterion weights
//! with per-criterion alternative weights.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result, Violation, ViolationKind};

/// Smallest judgment on the Saaty scale.
pub const SAATY_MIN: f64 = 1.0 / 9.0;
/// Largest judgment on the Saaty scale.
pub const SAATY_MAX: f64 = 9.0;

/// Relative tolerance on `m[j][i] * m[i][j] == 1`.
pub const RECIPROCITY_TOLERANCE: f64 = 1e-12;

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 10_000;
pub const DEFAULT_CONSISTENCY_THRESHOLD: f64 = 0.10;

/// Saaty's random consistency index, indexed by matrix dimension (0 and 1 unused).
pub const RANDOM_INDEX: [f64; 11] = [
    0.0, 0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49,
];

/// Largest dimension covered by [`RANDOM_INDEX`].
pub const MAX_CONSISTENCY_DIMENSION: usize = RANDOM_INDEX.len() - 1;

/// Square matrix of pairwise judgments, stored row-major.
///
/// Construction only checks the shape. Use [`validate`] to check the diagonal,
/// reciprocity and scale bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl ComparisonMatrix {
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::Structural(format!(
                "comparison matrix needs at least 2 rows, got {n}"
            )));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::Structural(format!(
                    "matrix is not square: row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            entries.extend_from_slice(row);
        }
        Ok(Self { n, entries })
    }

    /// Perfectly consistent matrix `m[i][j] = weights[i] / weights[j]`.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        let n = weights.len();
        if n < 2 {
            return Err(Error::Structural(format!(
                "comparison matrix needs at least 2 weights, got {n}"
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
            return Err(Error::Domain(format!("weights must be positive, got {w}")));
        }
        let mut entries = Vec::with_capacity(n * n);
        for wi in weights {
            for wj in weights {
                entries.push(wi / wj);
            }
        }
        for i in 0..n {
            entries[i * n + i] = 1.0;
        }
        Ok(Self { n, entries })
    }

    /// Identity judgments: every alternative equally important.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::from_weights(&vec![1.0; n])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.n + col]
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: f64) {
        self.entries[row * self.n + col] = value;
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.entries[row * self.n..(row + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks_exact(self.n)
    }

    /// Transpose with every entry inverted. Identity on reciprocal matrices.
    pub fn reciprocal_transpose(&self) -> Self {
        let n = self.n;
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = 1.0 / self.get(i, j);
            }
        }
        Self { n, entries }
    }

    fn mul_vec(&self, v: &[f64], out: &mut [f64]) {
        for (o, row) in out.iter_mut().zip(self.rows()) {
            *o = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
    }
}

/// Normalized priority vector: non-negative entries summing to 1.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    /// Tolerance on the unit-sum invariant.
    pub const SUM_TOLERANCE: f64 = 1e-9;

    /// Checks the invariants without rescaling.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !(**w >= 0.0 && w.is_finite())) {
            return Err(Error::Domain(format!(
                "weights must be non-negative, got {w}"
            )));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > Self::SUM_TOLERANCE {
            return Err(Error::Domain(format!("weights must sum to 1, got {sum}")));
        }
        Ok(Self(weights))
    }

    /// Scales non-negative values to sum to 1.
    pub fn normalized(values: Vec<f64>) -> Result<Self> {
        if let Some(w) = values.iter().find(|w| !(**w >= 0.0 && w.is_finite())) {
            return Err(Error::Domain(format!(
                "weights must be non-negative, got {w}"
            )));
        }
        let sum: f64 = values.iter().sum();
        if sum <= 0.0 {
            return Err(Error::Domain("cannot normalize an all-zero vector".into()));
        }
        Ok(Self(values.into_iter().map(|v| v / sum).collect()))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl core::ops::Index<usize> for WeightVector {
    type Output = f64;

    fn index(&self, index: usize) -> &f64 {
        &self.0[index]
    }
}

/// Principal eigenvector of a comparison matrix together with its eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct PrincipalEigen {
    pub weights: WeightVector,
    pub lambda_max: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConsistencyReport {
    pub lambda_max: f64,
    pub consistency_index: f64,
    pub consistency_ratio: f64,
    pub is_consistent: bool,
}

/// Checks the diagonal, reciprocity and Saaty bounds of `matrix`.
///
/// Non-positive or non-finite entries are a domain error. Every other broken
/// invariant is collected into [`Error::Invalid`].
pub fn validate(matrix: &ComparisonMatrix) -> Result<()> {
    let n = matrix.dim();
    for i in 0..n {
        for j in 0..n {
            let v = matrix.get(i, j);
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!(
                    "entry ({i}, {j}) must be positive and finite, got {v}"
                )));
            }
        }
    }

    let lo = SAATY_MIN * (1.0 - RECIPROCITY_TOLERANCE);
    let hi = SAATY_MAX * (1.0 + RECIPROCITY_TOLERANCE);
    let mut violations = Vec::new();
    for i in 0..n {
        let d = matrix.get(i, i);
        if d != 1.0 {
            violations.push(Violation {
                row: i,
                col: i,
                kind: ViolationKind::Diagonal,
                value: d,
            });
        }
        for j in 0..n {
            let v = matrix.get(i, j);
            if i != j && !(lo..=hi).contains(&v) {
                violations.push(Violation {
                    row: i,
                    col: j,
                    kind: ViolationKind::OutOfScale,
                    value: v,
                });
            }
        }
        for j in (i + 1)..n {
            let product = matrix.get(i, j) * matrix.get(j, i);
            if (product - 1.0).abs() > RECIPROCITY_TOLERANCE {
                violations.push(Violation {
                    row: j,
                    col: i,
                    kind: ViolationKind::Reciprocity,
                    value: matrix.get(j, i),
                });
            }
        }
    }

    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::Invalid(violations))
    }
}

/// Normalized dominant eigenvector by power iteration.
///
/// Starts from the uniform vector and renormalizes to unit sum every step.
/// Stops once successive iterates differ by less than `tol` in max-norm.
/// `lambda_max` is the mean of `(M v)_i / v_i` at the converged iterate.
pub fn principal_eigenvector(
    matrix: &ComparisonMatrix,
    tol: f64,
    max_iter: usize,
) -> Result<PrincipalEigen> {
    validate(matrix)?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }

    let n = matrix.dim();
    let mut current = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    let mut residual = f64::INFINITY;

    for iteration in 1..=max_iter {
        matrix.mul_vec(&current, &mut next);
        let sum: f64 = next.iter().sum();
        next.iter_mut().for_each(|x| *x /= sum);
        residual = current
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        core::mem::swap(&mut current, &mut next);

        if residual < tol {
            matrix.mul_vec(&current, &mut next);
            let lambda_max =
                next.iter().zip(&current).map(|(mv, v)| mv / v).sum::<f64>() / n as f64;
            return Ok(PrincipalEigen {
                weights: WeightVector(current),
                lambda_max,
                iterations: iteration,
            });
        }
    }

    Err(Error::Convergence {
        iterations: max_iter,
        residual,
        last_iterate: current,
    })
}

/// Consistency index `(lambda_max - n) / (n - 1)` and ratio `CI / RI(n)`.
///
/// For `n = 2` the ratio is defined as 0.
pub fn consistency(matrix: &ComparisonMatrix, threshold: f64) -> Result<ConsistencyReport> {
    let eigen = principal_eigenvector(matrix, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER)?;
    consistency_from_eigen(matrix.dim(), eigen.lambda_max, threshold)
}

pub(crate) fn consistency_from_eigen(
    n: usize,
    lambda_max: f64,
    threshold: f64,
) -> Result<ConsistencyReport> {
    if n > MAX_CONSISTENCY_DIMENSION {
        return Err(Error::UnsupportedDimension(n));
    }
    if !(threshold >= 0.0 && threshold.is_finite()) {
        return Err(Error::Domain(format!(
            "consistency threshold must be non-negative, got {threshold}"
        )));
    }
    let consistency_index = (lambda_max - n as f64) / (n as f64 - 1.0);
    let consistency_ratio = if n == 2 {
        0.0
    } else {
        consistency_index / RANDOM_INDEX[n]
    };
    Ok(ConsistencyReport {
        lambda_max,
        consistency_index,
        consistency_ratio,
        is_consistent: consistency_ratio <= threshold,
    })
}

/// Global priorities `score[s] = sum_a w_a * conditional[a][s]`.
///
/// Row `a` of `conditional` holds the weights of every alternative under
/// criterion `a` and must sum to 1.
pub fn synthesize<R: AsRef<[f64]>>(
    attribute_weights: &WeightVector,
    conditional: &[R],
) -> Result<WeightVector> {
    if conditional.len() != attribute_weights.len() {
        return Err(Error::Structural(format!(
            "{} attribute weights but {} conditional rows",
            attribute_weights.len(),
            conditional.len()
        )));
    }
    let Some(first) = conditional.first() else {
        return Err(Error::Structural("no attributes to synthesize".into()));
    };
    let sources = first.as_ref().len();

    let mut scores = vec![0.0; sources];
    for (a, (row, &w)) in conditional
        .iter()
        .zip(attribute_weights.as_slice())
        .enumerate()
    {
        let row = row.as_ref();
        if row.len() != sources {
            return Err(Error::Structural(format!(
                "conditional row {a} has {} entries, expected {sources}",
                row.len()
            )));
        }
        let sum: f64 = row.iter().sum();
        if (sum - 1.0).abs() > WeightVector::SUM_TOLERANCE {
            return Err(Error::Domain(format!(
                "conditional row {a} sums to {sum}, expected 1"
            )));
        }
        for (score, c) in scores.iter_mut().zip(row) {
            *score += w * c;
        }
    }
    WeightVector::new(scores)
}
