//! Threshold graphs and an exact maximum clique solver.
//!
//! The objective is lexicographic: most members, then largest total edge
//! weight, then the lexicographically smallest sorted member list. Cliques
//! are grown in increasing vertex order, so depth-first discovery order is
//! exactly that lexicographic order and the first optimum found wins ties.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::DistanceMatrix;

/// Which distances become edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `d_ij > t`
    Strict,
    /// `d_ij >= t`
    NonStrict,
}

#[derive(Clone, Debug)]
pub struct ThresholdGraph {
    n: usize,
    adj: Vec<u64>,
    weights: Vec<Vec<f64>>,
    threshold: f64,
    comparison: Comparison,
}

impl ThresholdGraph {
    /// Edge weights are the distances themselves. Panics beyond 64 vertices;
    /// the solver limits sit well below that.
    pub fn new(d: &DistanceMatrix, threshold: f64, comparison: Comparison) -> Self {
        let n = d.n();
        assert!(n <= 64, "threshold graphs are bitset-backed and hold at most 64 vertices");
        let mut adj = vec![0u64; n];
        for (i, j, v) in d.pairs() {
            let edge = match comparison {
                Comparison::Strict => v > threshold,
                Comparison::NonStrict => v >= threshold,
            };
            if edge {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
        ThresholdGraph { n, adj, weights: d.rows().to_vec(), threshold, comparison }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn comparison(&self) -> Comparison {
        self.comparison
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i] >> j & 1 == 1
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[i][j]
    }

    pub fn is_clique(&self, members: &[usize]) -> bool {
        members.iter().enumerate().all(|(a, &i)| members[a + 1..].iter().all(|&j| self.has_edge(i, j)))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CliqueSolution {
    pub members: Vec<usize>,
    pub size: usize,
    pub total_weight: f64,
}

pub fn max_clique(g: &ThresholdGraph, n_max: usize) -> Result<CliqueSolution> {
    if g.n > n_max {
        return Err(Error::InstanceTooLarge { n: g.n, n_max });
    }
    let mut search = Search { g, cur: Vec::with_capacity(g.n), cur_weight: 0.0, best: Vec::new(), best_weight: 0.0 };
    let all = if g.n == 64 { u64::MAX } else { (1u64 << g.n) - 1 };
    search.expand(all);
    let size = search.best.len();
    Ok(CliqueSolution { members: search.best, size, total_weight: search.best_weight })
}

struct Search<'a> {
    g: &'a ThresholdGraph,
    cur: Vec<usize>,
    cur_weight: f64,
    best: Vec<usize>,
    best_weight: f64,
}

impl Search<'_> {
    fn expand(&mut self, cand: u64) {
        if self.cur.len() > self.best.len() || (self.cur.len() == self.best.len() && self.cur_weight > self.best_weight)
        {
            self.best.clone_from(&self.cur);
            self.best_weight = self.cur_weight;
        }
        if cand == 0 || self.pruned(cand) {
            return;
        }
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let saved = self.cur_weight;
            self.cur_weight += self.cur.iter().map(|&c| self.g.weights[v][c]).sum::<f64>();
            self.cur.push(v);
            self.expand(rest & self.g.adj[v]);
            self.cur.pop();
            self.cur_weight = saved;
            if rest != 0 && self.pruned(rest) {
                return;
            }
        }
    }

    /// True if no clique extending `cur` with vertices of `cand` can beat the
    /// incumbent on (size, weight).
    fn pruned(&self, cand: u64) -> bool {
        let colors = greedy_color_bound(&self.g.adj, cand);
        let reach = self.cur.len() + colors;
        let best = self.best.len();
        if reach < best {
            return true;
        }
        if reach > best {
            return false;
        }
        let need = best - self.cur.len();
        let bound = self.cur_weight + self.weight_bound(cand, need);
        let slack = 1e-9 * self.best_weight.abs().max(1.0);
        bound < self.best_weight - slack
    }

    /// Upper bound on the weight added by exactly `r` more vertices from `cand`:
    /// best `r` links into the current clique plus the best `r(r-1)/2` edges
    /// inside `cand`.
    fn weight_bound(&self, cand: u64, r: usize) -> f64 {
        if r == 0 {
            return 0.0;
        }
        let verts: Vec<usize> = bits(cand).collect();
        let mut cross: Vec<f64> = verts.iter().map(|&v| self.cur.iter().map(|&c| self.g.weights[v][c]).sum()).collect();
        cross.sort_by(|a, b| b.total_cmp(a));
        let mut inner: Vec<f64> = Vec::new();
        for (a, &i) in verts.iter().enumerate() {
            for &j in &verts[a + 1..] {
                if self.g.has_edge(i, j) {
                    inner.push(self.g.weights[i][j]);
                }
            }
        }
        inner.sort_by(|a, b| b.total_cmp(a));
        let pairs = r * (r - 1) / 2;
        cross.iter().take(r).sum::<f64>() + inner.iter().take(pairs).sum::<f64>()
    }
}

fn bits(mut set: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let v = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(v)
        }
    })
}

/// Number of colour classes in a greedy sequential colouring of `cand`,
/// an upper bound on the largest clique inside it.
fn greedy_color_bound(adj: &[u64], cand: u64) -> usize {
    let mut uncolored = cand;
    let mut colors = 0;
    while uncolored != 0 {
        colors += 1;
        let mut open = uncolored;
        while open != 0 {
            let v = open.trailing_zeros() as usize;
            open &= open - 1;
            uncolored &= !(1u64 << v);
            open &= !adj[v];
        }
    }
    colors
}
