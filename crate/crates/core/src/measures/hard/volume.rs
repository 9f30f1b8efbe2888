//! Maximum "volume" products `m_k` over size-`k` submultisets.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::DistanceMatrix;

/// A nonnegative number stored as a logarithm, with an explicit zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LogValue {
    Zero,
    Ln(f64),
}

impl LogValue {
    pub fn is_zero(self) -> bool {
        matches!(self, LogValue::Zero)
    }

    pub fn ln(self) -> f64 {
        match self {
            LogValue::Zero => f64::NEG_INFINITY,
            LogValue::Ln(l) => l,
        }
    }

    pub fn exp(self) -> f64 {
        match self {
            LogValue::Zero => 0.0,
            LogValue::Ln(l) => l.exp(),
        }
    }

    /// `value^p` for `p > 0`, with `0^p = 0`.
    pub fn powf(self, p: f64) -> f64 {
        match self {
            LogValue::Zero => 0.0,
            LogValue::Ln(l) => (l * p).exp(),
        }
    }
}

/// `m_2 .. m_n`: for each `k`, the largest product of pairwise distances
/// within any size-`k` submultiset. `m_k` is zero exactly when `k` exceeds
/// the number of duplicate classes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VolumeProfile {
    m: Vec<LogValue>,
}

impl VolumeProfile {
    /// Number of elements `n` the profile was computed for.
    pub fn n(&self) -> usize {
        self.m.len() + 1
    }

    /// `m_k` for `2 <= k <= n`, in log form.
    pub fn log_m(&self, k: usize) -> LogValue {
        assert!(k >= 2 && k <= self.n(), "k = {k} outside 2..={}", self.n());
        self.m[k - 2]
    }

    pub fn m(&self, k: usize) -> f64 {
        self.log_m(k).exp()
    }

    /// `(k, m_k)` pairs in log form.
    pub fn iter(&self) -> impl Iterator<Item = (usize, LogValue)> + '_ {
        self.m.iter().enumerate().map(|(i, &v)| (i + 2, v))
    }
}

pub(crate) fn volume_profile(d: &DistanceMatrix, n_max: usize) -> Result<VolumeProfile> {
    let n = d.n();
    if n > n_max {
        return Err(Error::InstanceTooLarge { n, n_max });
    }
    // Any subset holding two members of one class has product zero, so only
    // class representatives are searched.
    let reps = d.duplicate_classes().representatives();
    let c = reps.len();
    let ln: Vec<Vec<f64>> = reps.iter().map(|&i| reps.iter().map(|&j| d.get(i, j).ln()).collect()).collect();
    let mut best = vec![f64::NEG_INFINITY; c + 1];
    let mut chosen = Vec::with_capacity(c);
    enumerate(&ln, 0, &mut chosen, 0.0, &mut best);

    let m = (2..=n).map(|k| if k <= c { LogValue::Ln(best[k]) } else { LogValue::Zero }).collect();
    Ok(VolumeProfile { m })
}

fn enumerate(ln: &[Vec<f64>], from: usize, chosen: &mut Vec<usize>, acc: f64, best: &mut [f64]) {
    for v in from..ln.len() {
        let sum = acc + chosen.iter().map(|&u| ln[v][u]).sum::<f64>();
        chosen.push(v);
        let k = chosen.len();
        if sum > best[k] {
            best[k] = sum;
        }
        enumerate(ln, v + 1, chosen, sum, best);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_value_arith() {
        assert_eq!(LogValue::Zero.exp(), 0.0);
        assert_eq!(LogValue::Zero.powf(0.5), 0.0);
        assert!((LogValue::Ln(2f64.ln()).powf(3.0) - 8.0).abs() < 1e-12);
    }
}
