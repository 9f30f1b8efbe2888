//! Exact desk-scale solvers for the NP-hard measures.
//!
//! Every entry point refuses instances above its [`Limits`] instead of
//! falling back to a heuristic.

mod clique;
mod reduction;
mod tsp;
mod volume;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::DistanceMatrix;
use crate::value::MeasureValue;

pub use clique::{max_clique, CliqueSolution, Comparison, ThresholdGraph};
pub use reduction::{clique_size_from_profile, recover_clique_size, reduction_instance, Scheme, SimpleGraph};
pub use volume::{LogValue, VolumeProfile};

pub const DEFAULT_CLIQUE_N_MAX: usize = 24;
pub const DEFAULT_HELD_KARP_N_MAX: usize = 18;

/// Size limits for the exponential solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Clique search and subset enumeration (#Circles, MultiDimVolume,
    /// IntegralMaxClique). At most 64.
    pub clique_n_max: usize,
    /// Held-Karp (HamDiv).
    pub held_karp_n_max: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { clique_n_max: DEFAULT_CLIQUE_N_MAX, held_karp_n_max: DEFAULT_HELD_KARP_N_MAX }
    }
}

impl Limits {
    pub fn new(clique_n_max: usize, held_karp_n_max: usize) -> Result<Self> {
        if clique_n_max > 64 {
            return Err(Error::InvalidParameter(format!("clique_n_max {clique_n_max} exceeds 64")));
        }
        Ok(Limits { clique_n_max, held_karp_n_max })
    }
}

/// Largest subset whose pairwise distances all strictly exceed `t`.
pub fn circles(d: &DistanceMatrix, t: f64) -> Result<MeasureValue> {
    circles_with(d, t, &Limits::default())
}

pub fn circles_with(d: &DistanceMatrix, t: f64, limits: &Limits) -> Result<MeasureValue> {
    check_threshold(t)?;
    let g = ThresholdGraph::new(d, t, Comparison::Strict);
    Ok(MeasureValue::new(max_clique(&g, limits.clique_n_max)?.size as f64))
}

fn check_threshold(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("threshold must be >= 0, got {t}")))
    }
}

/// Length of the shortest Hamiltonian circuit.
pub fn ham_div(d: &DistanceMatrix) -> Result<MeasureValue> {
    ham_div_with(d, &Limits::default())
}

pub fn ham_div_with(d: &DistanceMatrix, limits: &Limits) -> Result<MeasureValue> {
    Ok(MeasureValue::new(tsp::shortest_circuit(d, limits.held_karp_n_max)?))
}

pub fn volume_profile(d: &DistanceMatrix) -> Result<VolumeProfile> {
    volume_profile_with(d, &Limits::default())
}

pub fn volume_profile_with(d: &DistanceMatrix, limits: &Limits) -> Result<VolumeProfile> {
    volume::volume_profile(d, limits.clique_n_max)
}

/// `sum_{k=2}^n m_k`.
pub fn multi_dim_volume(d: &DistanceMatrix) -> Result<MeasureValue> {
    multi_dim_volume_with(d, &Limits::default())
}

pub fn multi_dim_volume_with(d: &DistanceMatrix, limits: &Limits) -> Result<MeasureValue> {
    let p = volume_profile_with(d, limits)?;
    Ok(MeasureValue::new(p.iter().map(|(_, m)| m.exp()).sum()))
}

/// `sum_{k=2}^n m_k^(2/(k(k-1)))`: each term is the geometric mean of the
/// distances in the best size-`k` subset.
pub fn multi_dim_volume_normalized(d: &DistanceMatrix) -> Result<MeasureValue> {
    multi_dim_volume_normalized_with(d, &Limits::default())
}

pub fn multi_dim_volume_normalized_with(d: &DistanceMatrix, limits: &Limits) -> Result<MeasureValue> {
    let p = volume_profile_with(d, limits)?;
    let total = p.iter().map(|(k, m)| m.powf(2.0 / (k * (k - 1)) as f64)).sum();
    Ok(MeasureValue::new(total))
}

/// `w_t`: total edge weight of the maximum (size, then weight) clique of the
/// graph with edges `d_ij >= t`.
pub fn clique_weight_at(d: &DistanceMatrix, t: f64) -> Result<f64> {
    clique_weight_at_with(d, t, &Limits::default())
}

pub fn clique_weight_at_with(d: &DistanceMatrix, t: f64, limits: &Limits) -> Result<f64> {
    check_threshold(t)?;
    let g = ThresholdGraph::new(d, t, Comparison::NonStrict);
    Ok(max_clique(&g, limits.clique_n_max)?.total_weight)
}

/// `integral_0^inf w_t dt`, evaluated exactly.
///
/// `w_t` is a step function: on `(v_{i-1}, v_i]` between consecutive distinct
/// positive distances the graph does not change, so each piece contributes
/// `(v_i - v_{i-1}) * w_{v_i}`. Beyond the largest distance `w_t = 0`.
pub fn integral_max_clique(d: &DistanceMatrix) -> Result<MeasureValue> {
    integral_max_clique_with(d, &Limits::default())
}

pub fn integral_max_clique_with(d: &DistanceMatrix, limits: &Limits) -> Result<MeasureValue> {
    if d.n() > limits.clique_n_max {
        return Err(Error::InstanceTooLarge { n: d.n(), n_max: limits.clique_n_max });
    }
    let mut prev = 0.0;
    let mut total = 0.0;
    for v in d.distinct_positive_values() {
        total += (v - prev) * clique_weight_at_with(d, v, limits)?;
        prev = v;
    }
    Ok(MeasureValue::new(total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d3(a: f64, b: f64, c: f64) -> DistanceMatrix {
        DistanceMatrix::new(vec![vec![0.0, a, b], vec![a, 0.0, c], vec![b, c, 0.0]]).unwrap()
    }

    fn line(xs: &[f64]) -> DistanceMatrix {
        DistanceMatrix::from_fn(xs.len(), |i, j| (xs[i] - xs[j]).abs()).unwrap()
    }

    #[test]
    fn circles_on_a_line() {
        let d = line(&[0.0, 0.5, 1.0]);
        assert_eq!(circles(&d, 0.4).unwrap().get(), 3.0);
        assert_eq!(circles(&d, 0.6).unwrap().get(), 2.0);
        assert_eq!(circles(&d, 1.0).unwrap().get(), 1.0);
        assert_eq!(circles(&d, 5.0).unwrap().get(), 1.0);
        assert!(circles(&d, -1.0).is_err());
    }

    #[test]
    fn ham_div_values() {
        assert_eq!(ham_div(&line(&[0.0, 0.0, 1.0, 1.0])).unwrap().get(), 2.0);
        let h = ham_div(&line(&[0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0])).unwrap().get();
        assert!((h - 2.0).abs() < 1e-15);
        assert_eq!(ham_div(&d3(1.0, 2.0, 3.0)).unwrap().get(), 6.0);
        assert_eq!(ham_div(&line(&[0.0, 1.0])).unwrap_err(), Error::NTooSmall { n: 2, min: 3 });
        let big = DistanceMatrix::from_fn(19, |i, j| (i + j) as f64).unwrap();
        assert_eq!(ham_div(&big).unwrap_err(), Error::InstanceTooLarge { n: 19, n_max: 18 });
    }

    #[test]
    fn profiles() {
        let p = volume_profile(&d3(1.0, 2.0, 3.0)).unwrap();
        assert!((p.m(2) - 3.0).abs() < 1e-12);
        assert!((p.m(3) - 6.0).abs() < 1e-12);

        let p = volume_profile(&d3(0.0, 2.0, 2.0)).unwrap();
        assert!((p.m(2) - 2.0).abs() < 1e-12);
        assert!(p.log_m(3).is_zero());

        let dup = DistanceMatrix::new(vec![vec![0.0; 2]; 2]).unwrap();
        assert!(volume_profile(&dup).unwrap().log_m(2).is_zero());
    }

    #[test]
    fn multi_dim_volumes() {
        assert!((multi_dim_volume(&d3(1.0, 2.0, 3.0)).unwrap().get() - 9.0).abs() < 1e-12);
        assert!((multi_dim_volume(&d3(0.0, 2.0, 2.0)).unwrap().get() - 2.0).abs() < 1e-12);
        let zero = DistanceMatrix::new(vec![vec![0.0; 4]; 4]).unwrap();
        assert_eq!(multi_dim_volume(&zero).unwrap().get(), 0.0);

        let nrm = multi_dim_volume_normalized(&d3(1.0, 2.0, 3.0)).unwrap().get();
        assert!((nrm - (3.0 + 6f64.cbrt())).abs() < 1e-12);
        let two = DistanceMatrix::new(vec![vec![0.0, 5.0], vec![5.0, 0.0]]).unwrap();
        assert!((multi_dim_volume_normalized(&two).unwrap().get() - 5.0).abs() < 1e-12);
        assert_eq!(multi_dim_volume_normalized(&zero).unwrap().get(), 0.0);
    }

    #[test]
    fn integral_values() {
        assert_eq!(integral_max_clique(&d3(1.0, 1.0, 1.0)).unwrap().get(), 3.0);
        assert_eq!(integral_max_clique(&d3(0.0, 1.0, 1.0)).unwrap().get(), 1.0);
        let two = DistanceMatrix::new(vec![vec![0.0, 2.0], vec![2.0, 0.0]]).unwrap();
        assert_eq!(integral_max_clique(&two).unwrap().get(), 4.0);
        let zero = DistanceMatrix::new(vec![vec![0.0; 3]; 3]).unwrap();
        assert_eq!(integral_max_clique(&zero).unwrap().get(), 0.0);
    }

    #[test]
    fn limits_enforced() {
        let limits = Limits::new(4, 18).unwrap();
        let d = DistanceMatrix::from_fn(5, |_, _| 1.0).unwrap();
        assert!(matches!(multi_dim_volume_with(&d, &limits), Err(Error::InstanceTooLarge { .. })));
        assert!(matches!(integral_max_clique_with(&d, &limits), Err(Error::InstanceTooLarge { .. })));
        assert!(matches!(circles_with(&d, 0.5, &limits), Err(Error::InstanceTooLarge { .. })));
        assert!(Limits::new(65, 18).is_err());
    }
}
