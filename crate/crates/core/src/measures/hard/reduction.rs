//! Distance instances built from unweighted graphs, and recovery of the
//! maximum clique size from measure values computed on them.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::DistanceMatrix;

use super::volume::VolumeProfile;

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<Vec<bool>>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Ok(SimpleGraph { n, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|u| ((u + 1)..self.n).map(move |v| (u, v))).filter(|&(u, v)| self.adj[u][v]).collect()
    }

    /// Parse the edge-list format: a header line `n m`, then `m` lines
    /// `u v` with 1-based vertices. Blank lines are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing `n m` header"))?;
        let [n, m] = two_ints(hline, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            let [u, v] = two_ints(line, l)?;
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::parse(line, format!("vertex out of range 1..={n}")));
            }
            edges.push((u - 1, v - 1));
        }
        if edges.len() != m {
            return Err(Error::parse(
                text.lines().count().max(1),
                format!("header announces {m} edges, found {}", edges.len()),
            ));
        }
        Self::new(n, &edges)
    }
}

impl fmt::Display for SimpleGraph {
    /// Writes the edge-list format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges = self.edges();
        writeln!(f, "{} {}", self.n, edges.len())?;
        for (u, v) in edges {
            writeln!(f, "{} {}", u + 1, v + 1)?;
        }
        Ok(())
    }
}

fn two_ints(line: usize, s: &str) -> Result<[usize; 2]> {
    let parts: Vec<&str> = s.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(Error::parse(line, "expected two integers"));
    }
    let a = parts[0].parse().map_err(|_| Error::parse(line, format!("bad integer `{}`", parts[0])))?;
    let b = parts[1].parse().map_err(|_| Error::parse(line, format!("bad integer `{}`", parts[1])))?;
    Ok([a, b])
}

/// Distance scheme of a reduction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Edges at `1.1 t`, non-edges at `0.9 t`, so that `#Circles(t)` with its
    /// strict comparison counts exactly the clique vertices.
    Circles { t: f64 },
    /// Edges at 3, non-edges at 2; clique size is the largest `k` with
    /// `m_k = 3^(k(k-1)/2)`.
    Mdv,
    /// Edges at 3, non-edges at 2; `Div = 2 sum d + 3 s(s-1)/2`.
    Imc,
}

pub fn reduction_instance(g: &SimpleGraph, scheme: Scheme) -> DistanceMatrix {
    let (edge, non_edge) = match scheme {
        Scheme::Circles { t } => (1.1 * t, 0.9 * t),
        Scheme::Mdv | Scheme::Imc => (3.0, 2.0),
    };
    DistanceMatrix::from_fn(g.n(), |u, v| if g.has_edge(u, v) { edge } else { non_edge })
        .expect("reduction distances are positive and symmetric")
}

/// Invert `div = 2 sum_{k<l} d_kl + 3 s(s-1)/2` for the clique size `s >= 1`.
pub fn recover_clique_size(div: f64, d: &DistanceMatrix) -> Result<usize> {
    let total: f64 = d.pairs().map(|(_, _, v)| v).sum();
    let pairs = (div - 2.0 * total) / 3.0;
    let tol = 1e-6 * div.abs().max(1.0);
    if pairs < -tol {
        return Err(Error::NoIntegerSolution(div));
    }
    // s(s-1)/2 = pairs  =>  s = (1 + sqrt(1 + 8 pairs)) / 2
    let s = ((1.0 + (1.0 + 8.0 * pairs.max(0.0)).sqrt()) / 2.0).round();
    let back = s * (s - 1.0) / 2.0;
    if (back - pairs).abs() * 3.0 > tol || s < 1.0 || s > d.n() as f64 {
        return Err(Error::NoIntegerSolution(div));
    }
    Ok(s as usize)
}

/// Largest `k` with `m_k = 3^(k(k-1)/2)`, compared in log space; 1 when no
/// `k >= 2` qualifies.
pub fn clique_size_from_profile(profile: &VolumeProfile) -> usize {
    let ln3 = 3f64.ln();
    profile
        .iter()
        .filter(|(k, m)| {
            let target = (k * (k - 1) / 2) as f64 * ln3;
            !m.is_zero() && (m.ln() - target).abs() <= 1e-9 * target.max(1.0)
        })
        .map(|(k, _)| k)
        .max()
        .unwrap_or(1)
}
