//! Polynomial-time measures: the distance-based family (Average through
//! Unique), the discontinuous `Unique + (1 - e^-Average)` construction, and
//! the similarity-based family (Vendi, DPP, RKE, Species).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{DistanceMatrix, SimilarityMatrix};
use crate::value::MeasureValue;

/// Eigenvalues below this are treated as exact zeros in spectral measures.
pub const EIGEN_CLAMP: f64 = 1e-12;

/// Order `q` of the Species measure: `q >= 0`, `q != 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpeciesOrder(f64);

impl SpeciesOrder {
    pub fn new(q: f64) -> Result<Self> {
        if q.is_finite() && q >= 0.0 && q != 1.0 {
            Ok(SpeciesOrder(q))
        } else {
            Err(Error::InvalidOrder(q))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Exponent `gamma > 0` of the Energy measure.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EnergyExponent(f64);

impl EnergyExponent {
    pub fn new(gamma: f64) -> Result<Self> {
        if gamma.is_finite() && gamma > 0.0 {
            Ok(EnergyExponent(gamma))
        } else {
            Err(Error::InvalidParameter(format!("energy exponent must be > 0, got {gamma}")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

fn need(d: &DistanceMatrix, min: usize) -> Result<usize> {
    let n = d.n();
    if n < min {
        Err(Error::NTooSmall { n, min })
    } else {
        Ok(n)
    }
}

fn pair_sum(d: &DistanceMatrix) -> f64 {
    d.pairs().map(|(_, _, v)| v).sum()
}

pub fn average(d: &DistanceMatrix) -> Result<MeasureValue> {
    let n = need(d, 2)? as f64;
    Ok(MeasureValue::new(2.0 * pair_sum(d) / (n * (n - 1.0))))
}

pub fn sum_average(d: &DistanceMatrix) -> Result<MeasureValue> {
    let n = need(d, 2)? as f64;
    Ok(MeasureValue::new(pair_sum(d) / n))
}

pub fn diameter(d: &DistanceMatrix) -> Result<MeasureValue> {
    need(d, 2)?;
    let max = d.pairs().map(|(_, _, v)| v).fold(f64::NEG_INFINITY, f64::max);
    Ok(MeasureValue::new(max))
}

pub fn sum_diameter(d: &DistanceMatrix) -> Result<MeasureValue> {
    let n = need(d, 2)?;
    let total = (0..n).map(|i| (0..n).filter(|&j| j != i).map(|j| d.get(i, j)).fold(f64::NEG_INFINITY, f64::max)).sum();
    Ok(MeasureValue::new(total))
}

pub fn bottleneck(d: &DistanceMatrix) -> Result<MeasureValue> {
    need(d, 2)?;
    let min = d.pairs().map(|(_, _, v)| v).fold(f64::INFINITY, f64::min);
    Ok(MeasureValue::new(min))
}

pub fn sum_bottleneck(d: &DistanceMatrix) -> Result<MeasureValue> {
    let n = need(d, 2)?;
    let total = (0..n).map(|i| (0..n).filter(|&j| j != i).map(|j| d.get(i, j)).fold(f64::INFINITY, f64::min)).sum();
    Ok(MeasureValue::new(total))
}

/// Negative mean inverse-power distance; `-inf` when any pair coincides.
pub fn energy(d: &DistanceMatrix, gamma: EnergyExponent) -> Result<MeasureValue> {
    let n = need(d, 2)? as f64;
    if d.has_duplicate_pair() {
        return Ok(MeasureValue::NEG_INFINITY);
    }
    let g = gamma.get();
    let s: f64 = d.pairs().map(|(_, _, v)| v.powf(-g)).sum();
    Ok(MeasureValue::new(-2.0 * s / (n * (n - 1.0))))
}

/// Fraction of distinct elements: number of duplicate classes over `n`.
pub fn unique(d: &DistanceMatrix) -> Result<MeasureValue> {
    let n = need(d, 1)?;
    Ok(MeasureValue::new(d.duplicate_classes().len() as f64 / n as f64))
}

/// `Unique(X) + 1 - exp(-Average(X))`: monotone and unique, but jumps by
/// `1/n` whenever a duplicate splits.
pub fn unique_plus_bounded(d: &DistanceMatrix) -> Result<MeasureValue> {
    let avg = average(d)?.get();
    let u = unique(d)?.get();
    Ok(MeasureValue::new(u - (-avg).exp_m1()))
}

/// Eigenvalues of `S/n`, clamped at zero and sorted descending.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Shannon entropy with natural log and `0 log 0 = 0`.
    pub fn entropy(&self) -> f64 {
        -self.eigenvalues.iter().filter(|&&l| l > 0.0).map(|&l| l * l.ln()).sum::<f64>()
    }
}

pub fn sym_spectrum(s: &SimilarityMatrix) -> Result<Spectrum> {
    let n = s.n() as f64;
    let mut eigenvalues: Vec<f64> =
        s.eigenvalues().iter().map(|&l| l / n).map(|l| if l < EIGEN_CLAMP { 0.0 } else { l }).collect();
    eigenvalues.sort_by(|a, b| b.total_cmp(a));
    Ok(Spectrum { eigenvalues })
}

pub fn vendi_score(s: &SimilarityMatrix) -> Result<MeasureValue> {
    Ok(MeasureValue::new(sym_spectrum(s)?.entropy().exp()))
}

/// `det(S)`, in `[0, 1]` for valid inputs. Exactly zero when two elements
/// coincide (`s_ij = 1`, `i != j`).
pub fn dpp_det(s: &SimilarityMatrix) -> Result<MeasureValue> {
    let n = s.n();
    let dup = (0..n).any(|i| ((i + 1)..n).any(|j| s.get(i, j) == 1.0));
    if dup {
        return Ok(MeasureValue::new(0.0));
    }
    let det = linalg::determinant(s.rows());
    Ok(MeasureValue::new(det.clamp(0.0, 1.0)))
}

/// `-ln(mean of s_ij^2 over all ordered pairs, diagonal included)`.
pub fn rke(s: &SimilarityMatrix) -> Result<MeasureValue> {
    let n = s.n() as f64;
    let sq: f64 = s.rows().iter().flatten().map(|x| x * x).sum();
    Ok(MeasureValue::new(-(sq / (n * n)).ln()))
}

/// `(sum_i (sum_j s_ij)^(q-1))^(1/(1-q))` with the inner sum including `j = i`.
///
/// Row sums must be positive; negative similarities can break that.
pub fn species(s: &SimilarityMatrix, order: SpeciesOrder) -> Result<MeasureValue> {
    let q = order.get();
    let mut total = 0.0;
    for (row, r) in s.rows().iter().enumerate() {
        let sum: f64 = r.iter().sum();
        if sum.is_nan() || sum <= 0.0 {
            return Err(Error::NonPositiveRowSum { row: row + 1, sum });
        }
        total += sum.powf(q - 1.0);
    }
    Ok(MeasureValue::new(total.powf(1.0 / (1.0 - q))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d3(a: f64, b: f64, c: f64) -> DistanceMatrix {
        // d12 = a, d13 = b, d23 = c
        DistanceMatrix::new(vec![vec![0.0, a, b], vec![a, 0.0, c], vec![b, c, 0.0]]).unwrap()
    }

    fn two(x: f64) -> DistanceMatrix {
        DistanceMatrix::new(vec![vec![0.0, x], vec![x, 0.0]]).unwrap()
    }

    fn identity(n: usize) -> SimilarityMatrix {
        SimilarityMatrix::new((0..n).map(|i| (0..n).map(|j| f64::from(u8::from(i == j))).collect()).collect()).unwrap()
    }

    fn ones(n: usize) -> SimilarityMatrix {
        SimilarityMatrix::new(vec![vec![1.0; n]; n]).unwrap()
    }

    #[test]
    fn averages() {
        assert_eq!(average(&two(1.0)).unwrap().get(), 1.0);
        assert_eq!(sum_average(&two(1.0)).unwrap().get(), 0.5);
        assert_eq!(sum_average(&d3(1.0, 2.0, 3.0)).unwrap().get(), 2.0);
        let one = DistanceMatrix::new(vec![vec![0.0]]).unwrap();
        assert_eq!(average(&one).unwrap_err(), Error::NTooSmall { n: 1, min: 2 });
    }

    #[test]
    fn diameters() {
        let d = d3(1.0, 2.0, 3.0);
        assert_eq!(diameter(&d).unwrap().get(), 3.0);
        // Row maxima: max(1,2)=2, max(1,3)=3, max(2,3)=3.
        assert_eq!(sum_diameter(&d).unwrap().get(), 8.0);
    }

    #[test]
    fn bottlenecks() {
        let d = d3(0.0, 1.0, 1.0);
        assert_eq!(bottleneck(&d).unwrap().get(), 0.0);
        // Row minima: 0, 0, 1.
        assert_eq!(sum_bottleneck(&d).unwrap().get(), 1.0);
    }

    #[test]
    fn energies() {
        let g1 = EnergyExponent::new(1.0).unwrap();
        assert!(energy(&d3(0.0, 1.0, 1.0), g1).unwrap().is_neg_inf());
        let e = energy(&d3(1.0, 2.0, 3.0), g1).unwrap().get();
        assert!((e + 11.0 / 18.0).abs() < 1e-15);
        for g in [0.5, 1.0, 3.0] {
            assert_eq!(energy(&two(1.0), EnergyExponent::new(g).unwrap()).unwrap().get(), -1.0);
        }
        assert!(EnergyExponent::new(0.0).is_err());
    }

    #[test]
    fn unique_counts_classes() {
        assert_eq!(unique(&d3(1.0, 2.0, 3.0)).unwrap().get(), 1.0);
        assert!((unique(&d3(0.0, 1.0, 1.0)).unwrap().get() - 2.0 / 3.0).abs() < 1e-15);
        let all = DistanceMatrix::new(vec![vec![0.0; 5]; 5]).unwrap();
        assert_eq!(unique(&all).unwrap().get(), 0.2);
    }

    #[test]
    fn unique_plus_bounded_jump() {
        assert_eq!(unique_plus_bounded(&two(0.0)).unwrap().get(), 0.5);
        // Two distinct elements: Unique = 1, so the supremum is 2.
        let far = unique_plus_bounded(&two(20.0)).unwrap().get();
        assert!(far < 2.0 && far > 2.0 - 1e-8);
        // Approaching the duplicate boundary leaves a gap of 1/n = 1/2.
        let near = unique_plus_bounded(&two(1e-9)).unwrap().get();
        assert!((near - 0.5 - 0.5).abs() < 1e-8);
    }

    #[test]
    fn spectra() {
        let sp = sym_spectrum(&identity(3)).unwrap();
        for l in sp.eigenvalues() {
            assert!((l - 1.0 / 3.0).abs() < 1e-15);
        }
        let sp = sym_spectrum(&ones(3)).unwrap();
        assert!((sp.eigenvalues()[0] - 1.0).abs() < 1e-12);
        assert_eq!(&sp.eigenvalues()[1..], &[0.0, 0.0]);

        let s = SimilarityMatrix::new(vec![vec![1.0, 0.5], vec![0.5, 1.0]]).unwrap();
        let sp = sym_spectrum(&s).unwrap();
        assert!((sp.eigenvalues()[0] - 0.75).abs() < 1e-15);
        assert!((sp.eigenvalues()[1] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn vendi_extremes() {
        for n in 1..6 {
            assert!((vendi_score(&identity(n)).unwrap().get() - n as f64).abs() < 1e-9);
            assert!((vendi_score(&ones(n)).unwrap().get() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn dpp_values() {
        let s = SimilarityMatrix::new(vec![vec![1.0, 0.2, 0.6], vec![0.2, 1.0, 0.7], vec![0.6, 0.7, 1.0]]).unwrap();
        assert!((dpp_det(&s).unwrap().get() - 0.278).abs() < 1e-12);
        assert_eq!(dpp_det(&ones(3)).unwrap().get(), 0.0);
    }

    #[test]
    fn rke_identity() {
        assert!((rke(&identity(3)).unwrap().get() - 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn species_cases() {
        let q2 = SpeciesOrder::new(2.0).unwrap();
        let q0 = SpeciesOrder::new(0.0).unwrap();
        for n in 1..6 {
            let nf = n as f64;
            assert!((species(&identity(n), q2).unwrap().get() - 1.0 / nf).abs() < 1e-15);
            assert!((species(&identity(n), q0).unwrap().get() - nf).abs() < 1e-12);
            // Row sums are n, so (n * n)^(1/(1-2)) = 1/n^2.
            assert!((species(&ones(n), q2).unwrap().get() - 1.0 / (nf * nf)).abs() < 1e-15);
        }
        assert_eq!(SpeciesOrder::new(1.0).unwrap_err(), Error::InvalidOrder(1.0));
        assert!(SpeciesOrder::new(-0.5).is_err());
    }
}
