//! Validated distance and similarity matrices.
//!
//! A [`DistanceMatrix`] obeys three conditions: nonnegative entries with a
//! zero diagonal, zero-distance consistency (`d_ij = 0` implies
//! `d_ik = d_jk` for every `k`), and symmetry. The triangle inequality is not
//! required. Zero distance is then an equivalence relation whose classes are
//! the [`DuplicateClasses`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;

/// Default PSD slack for [`validate_similarity_matrix`].
pub const DEFAULT_EPS_PSD: f64 = 1e-9;

/// Tolerance on `s_ii = 1`.
const DIAGONAL_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DistanceMatrix {
    d: Vec<Vec<f64>>,
}

impl DistanceMatrix {
    /// Validate with exact-zero duplicate semantics.
    pub fn new(raw: Vec<Vec<f64>>) -> Result<Self> {
        validate_distance_matrix(raw, 0.0)
    }

    /// Build from a symmetric generator `f(i, j)` queried for `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut d = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = f(i, j);
                d[i][j] = v;
                d[j][i] = v;
            }
        }
        Self::new(d)
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i][j]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.d
    }

    pub fn into_rows(self) -> Vec<Vec<f64>> {
        self.d
    }

    /// Upper-triangle entries `(i, j, d_ij)` with `i < j`, row-major.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let n = self.n();
        (0..n).flat_map(move |i| ((i + 1)..n).map(move |j| (i, j, self.d[i][j])))
    }

    pub fn has_duplicate_pair(&self) -> bool {
        self.pairs().any(|(_, _, v)| v == 0.0)
    }

    /// Relabel: entry `(i, j)` of the result is `d[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> DistanceMatrix {
        let n = self.n();
        assert_eq!(perm.len(), n);
        let d = (0..n).map(|i| (0..n).map(|j| self.d[perm[i]][perm[j]]).collect()).collect();
        DistanceMatrix { d }
    }

    pub fn duplicate_classes(&self) -> DuplicateClasses {
        duplicate_classes(self)
    }

    /// Sorted distinct positive off-diagonal values.
    pub fn distinct_positive_values(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.pairs().map(|(_, _, x)| x).filter(|&x| x > 0.0).collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }
}

/// Check the three distance-matrix conditions.
///
/// Entries with `|d| <= zero_tol` are snapped to exactly zero first and the
/// diagonal is forced to zero. With `zero_tol = 0` only exact zeros count as
/// coincidence.
pub fn validate_distance_matrix(raw: Vec<Vec<f64>>, zero_tol: f64) -> Result<DistanceMatrix> {
    if zero_tol.is_nan() || zero_tol < 0.0 {
        return Err(Error::InvalidParameter(format!("zero_tol must be >= 0, got {zero_tol}")));
    }
    let mut d = check_square(raw)?;
    let n = d.len();
    for (i, row) in d.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            if !x.is_finite() {
                return Err(Error::NonFinite(i + 1, j + 1));
            }
            if x.abs() <= zero_tol || i == j {
                *x = 0.0;
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if d[i][j] < 0.0 {
                return Err(Error::NegativeEntry(i + 1, j + 1));
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if d[i][j] != d[j][i] {
                return Err(Error::AsymmetricEntry(i + 1, j + 1));
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if d[i][j] == 0.0 {
                if let Some(k) = (0..n).find(|&k| d[i][k] != d[j][k]) {
                    return Err(Error::InconsistentDuplicate(i + 1, j + 1, k + 1));
                }
            }
        }
    }
    Ok(DistanceMatrix { d })
}

fn check_square(raw: Vec<Vec<f64>>) -> Result<Vec<Vec<f64>>> {
    let n = raw.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    for (i, row) in raw.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare { row: i + 1, len: row.len(), expected: n });
        }
    }
    Ok(raw)
}

/// Partition of indices by the zero-distance equivalence relation.
///
/// Classes are listed in order of their smallest member; members ascend.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DuplicateClasses {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl DuplicateClasses {
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Smallest member of each class.
    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }
}

pub fn duplicate_classes(d: &DistanceMatrix) -> DuplicateClasses {
    let n = d.n();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let members: Vec<usize> = (i..n).filter(|&j| d.get(i, j) == 0.0).collect();
        for &j in &members {
            class_of[j] = id;
        }
        classes.push(members);
    }
    DuplicateClasses { classes, class_of }
}

/// Symmetric PSD similarity matrix with unit diagonal.
///
/// The eigenvalues computed during validation are kept (descending) since
/// spectral measures need them anyway.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimilarityMatrix {
    s: Vec<Vec<f64>>,
    #[serde(skip)]
    eigenvalues: Vec<f64>,
}

impl SimilarityMatrix {
    pub fn new(raw: Vec<Vec<f64>>) -> Result<Self> {
        validate_similarity_matrix(raw, DEFAULT_EPS_PSD)
    }

    pub fn n(&self) -> usize {
        self.s.len()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.s[i][j]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.s
    }

    /// Eigenvalues of `S` (not scaled), descending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn permuted(&self, perm: &[usize]) -> Result<SimilarityMatrix> {
        let n = self.n();
        assert_eq!(perm.len(), n);
        let s = (0..n).map(|i| (0..n).map(|j| self.s[perm[i]][perm[j]]).collect()).collect();
        SimilarityMatrix::new(s)
    }
}

/// Check unit diagonal, symmetry and positive semi-definiteness
/// (smallest eigenvalue `>= -eps_psd`).
pub fn validate_similarity_matrix(raw: Vec<Vec<f64>>, eps_psd: f64) -> Result<SimilarityMatrix> {
    if eps_psd.is_nan() || eps_psd < 0.0 {
        return Err(Error::InvalidParameter(format!("eps_psd must be >= 0, got {eps_psd}")));
    }
    let mut s = check_square(raw)?;
    let n = s.len();
    for (i, row) in s.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::NonFinite(i + 1, j + 1));
            }
        }
    }
    for (i, row) in s.iter_mut().enumerate() {
        if (row[i] - 1.0).abs() > DIAGONAL_TOL {
            return Err(Error::DiagonalNotOne(i + 1));
        }
        row[i] = 1.0;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if s[i][j] != s[j][i] {
                return Err(Error::AsymmetricEntry(i + 1, j + 1));
            }
        }
    }
    let eigenvalues = linalg::symmetric_eigenvalues(&s)?;
    let min = eigenvalues.last().copied().unwrap_or(0.0);
    if min < -eps_psd {
        return Err(Error::NotPsd(min));
    }
    Ok(SimilarityMatrix { s, eigenvalues })
}

/// Gaussian kernel `s_ij = exp(-d_ij^2 / sigma^2)`.
///
/// PSD for Euclidean inputs; other distance matrices may fail validation.
pub fn rbf_similarity_from_distances(d: &DistanceMatrix, sigma: f64) -> Result<SimilarityMatrix> {
    if !sigma.is_finite() || sigma <= 0.0 {
        return Err(Error::InvalidParameter(format!("sigma must be positive, got {sigma}")));
    }
    let s2 = sigma * sigma;
    let s = d.rows().iter().map(|row| row.iter().map(|&x| (-x * x / s2).exp()).collect()).collect();
    SimilarityMatrix::new(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_valid() {
        let d = DistanceMatrix::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(d.n(), 2);
    }

    #[test]
    fn inconsistent_duplicate() {
        let err = DistanceMatrix::new(vec![vec![0.0, 0.0, 1.0], vec![0.0, 0.0, 2.0], vec![1.0, 2.0, 0.0]]).unwrap_err();
        assert_eq!(err, Error::InconsistentDuplicate(1, 2, 3));
    }

    #[test]
    fn consistent_duplicate_classes() {
        let d = DistanceMatrix::new(vec![vec![0.0, 0.0, 1.0], vec![0.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]]).unwrap();
        assert_eq!(d.duplicate_classes().classes(), &[vec![0, 1], vec![2]]);
    }

    #[test]
    fn error_paths() {
        assert!(matches!(DistanceMatrix::new(vec![vec![0.0, 1.0], vec![1.0]]), Err(Error::NotSquare { row: 2, .. })));
        assert_eq!(
            DistanceMatrix::new(vec![vec![0.0, -1.0], vec![-1.0, 0.0]]).unwrap_err(),
            Error::NegativeEntry(1, 2)
        );
        assert_eq!(
            DistanceMatrix::new(vec![vec![0.0, 1.0], vec![2.0, 0.0]]).unwrap_err(),
            Error::AsymmetricEntry(1, 2)
        );
        assert_eq!(DistanceMatrix::new(vec![]).unwrap_err(), Error::Empty);
    }

    #[test]
    fn snapping_tolerance() {
        let raw = vec![vec![0.0, 1e-12, 1.0], vec![1e-12, 0.0, 1.0], vec![1.0, 1.0, 0.0]];
        let d = validate_distance_matrix(raw.clone(), 1e-9).unwrap();
        assert_eq!(d.get(0, 1), 0.0);
        assert_eq!(d.duplicate_classes().len(), 2);
        assert_eq!(validate_distance_matrix(raw, 0.0).unwrap().duplicate_classes().len(), 3);
    }

    #[test]
    fn triangle_inequality_not_required() {
        DistanceMatrix::new(vec![vec![0.0, 1.0, 10.0], vec![1.0, 0.0, 1.0], vec![10.0, 1.0, 0.0]]).unwrap();
    }

    #[test]
    fn classes_extremes() {
        let all_zero = DistanceMatrix::new(vec![vec![0.0; 4]; 4]).unwrap();
        assert_eq!(all_zero.duplicate_classes().classes(), &[vec![0, 1, 2, 3]]);
        let distinct = DistanceMatrix::from_fn(4, |i, j| (i + j) as f64 + 1.0).unwrap();
        assert_eq!(distinct.duplicate_classes().len(), 4);
    }

    #[test]
    fn similarity_validation() {
        let id = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        SimilarityMatrix::new(id).unwrap();
        SimilarityMatrix::new(vec![vec![1.0, 0.2, 0.6], vec![0.2, 1.0, 0.7], vec![0.6, 0.7, 1.0]]).unwrap();
        match SimilarityMatrix::new(vec![vec![1.0, 2.0], vec![2.0, 1.0]]) {
            Err(Error::NotPsd(m)) => assert!((m + 1.0).abs() < 1e-12),
            other => panic!("expected NotPsd, got {other:?}"),
        }
        assert_eq!(SimilarityMatrix::new(vec![vec![0.5, 0.0], vec![0.0, 1.0]]).unwrap_err(), Error::DiagonalNotOne(1));
        assert_eq!(
            SimilarityMatrix::new(vec![vec![1.0, 0.1], vec![0.2, 1.0]]).unwrap_err(),
            Error::AsymmetricEntry(1, 2)
        );
    }

    #[test]
    fn rbf_kernel() {
        let zero = DistanceMatrix::new(vec![vec![0.0; 3]; 3]).unwrap();
        let s = rbf_similarity_from_distances(&zero, 1.0).unwrap();
        assert!(s.rows().iter().flatten().all(|&x| x == 1.0));

        let two = DistanceMatrix::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let s = rbf_similarity_from_distances(&two, 1.0).unwrap();
        assert!((s.get(0, 1) - (-1.0f64).exp()).abs() < 1e-15);

        assert!(rbf_similarity_from_distances(&two, 0.0).is_err());
    }
}
