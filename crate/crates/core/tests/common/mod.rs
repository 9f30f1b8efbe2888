//! Brute-force oracles and input generators shared by the integration tests.
//! Nothing here calls into the solvers it checks.

#![allow(dead_code, clippy::needless_range_loop)]

use diversity::DistanceMatrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random valid distance matrix with `n` elements. Roughly half the time
/// there are duplicate classes; distances are drawn from a coarse grid so
/// that ties and threshold collisions actually happen.
pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
    let classes = if rng.random_bool(0.5) { n } else { rng.random_range(1..=n) };
    let mut labels: Vec<usize> = (0..n).map(|i| if i < classes { i } else { rng.random_range(0..classes) }).collect();
    labels.shuffle(rng);
    let coarse = rng.random_bool(0.5);
    let mut between = vec![vec![0.0; classes]; classes];
    for a in 0..classes {
        for b in a + 1..classes {
            let v = if coarse { rng.random_range(1..=8) as f64 * 0.25 } else { rng.random_range(0.05..2.0) };
            between[a][b] = v;
            between[b][a] = v;
        }
    }
    (0..n).map(|i| (0..n).map(|j| between[labels[i]][labels[j]]).collect()).collect()
}

pub fn matrix(raw: &[Vec<f64>]) -> DistanceMatrix {
    DistanceMatrix::new(raw.to_vec()).unwrap()
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
}

fn pairs(set: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    set.iter().enumerate().flat_map(move |(a, &i)| set[a + 1..].iter().map(move |&j| (i, j)))
}

/// `ln m_k` for k = 2..=n by enumerating every subset; `None` when every
/// size-k subset has a zero distance.
pub fn log_profile(d: &[Vec<f64>]) -> Vec<Option<f64>> {
    let n = d.len();
    let mut best: Vec<Option<f64>> = vec![None; n + 1];
    for s in subsets(n) {
        if s.len() < 2 || pairs(&s).any(|(i, j)| d[i][j] == 0.0) {
            continue;
        }
        let l: f64 = pairs(&s).map(|(i, j)| d[i][j].ln()).sum();
        let slot = &mut best[s.len()];
        if slot.is_none_or(|b| l > b) {
            *slot = Some(l);
        }
    }
    best.split_off(2)
}

pub fn mdv(d: &[Vec<f64>]) -> f64 {
    log_profile(d).iter().map(|m| m.map_or(0.0, f64::exp)).sum()
}

pub fn mdv_normalized(d: &[Vec<f64>]) -> f64 {
    log_profile(d)
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let k = (i + 2) as f64;
            m.map_or(0.0, |l| (l * 2.0 / (k * (k - 1.0))).exp())
        })
        .sum()
}

/// Weight of the best clique at threshold `t` (edges `d >= t`): most
/// members, then largest edge-weight sum.
pub fn clique_weight(d: &[Vec<f64>], t: f64) -> f64 {
    let mut best = (0usize, 0.0f64);
    for s in subsets(d.len()) {
        if pairs(&s).all(|(i, j)| d[i][j] >= t) {
            let w: f64 = pairs(&s).map(|(i, j)| d[i][j]).sum();
            if s.len() > best.0 || (s.len() == best.0 && w > best.1) {
                best = (s.len(), w);
            }
        }
    }
    best.1
}

/// Integral of the clique weight over t, evaluating the step function at the
/// midpoint of each interval between consecutive distinct distances.
pub fn imc(d: &[Vec<f64>]) -> f64 {
    let mut vals: Vec<f64> = d.iter().flatten().copied().filter(|&v| v > 0.0).collect();
    vals.sort_by(f64::total_cmp);
    vals.dedup();
    let mut prev = 0.0;
    let mut total = 0.0;
    for v in vals {
        total += (v - prev) * clique_weight(d, (v + prev) / 2.0);
        prev = v;
    }
    total
}

/// Largest subset with every pairwise distance strictly above `t`.
pub fn circles(d: &[Vec<f64>], t: f64) -> usize {
    subsets(d.len()).filter(|s| pairs(s).all(|(i, j)| d[i][j] > t)).map(|s| s.len()).max().unwrap_or(0)
}

/// Shortest Hamiltonian cycle over every permutation of `1..n` with 0 fixed.
pub fn ham_div(d: &[Vec<f64>]) -> f64 {
    let n = d.len();
    let mut perm: Vec<usize> = (1..n).collect();
    let mut best = f64::INFINITY;
    let tour = |p: &[usize]| {
        let mut len = d[0][p[0]] + d[p[p.len() - 1]][0];
        for w in p.windows(2) {
            len += d[w[0]][w[1]];
        }
        len
    };
    // Heap's algorithm.
    let m = perm.len();
    let mut c = vec![0; m];
    best = best.min(tour(&perm));
    let mut i = 0;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.min(tour(&perm));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

/// Random simple graph G(n, p) as an edge list.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Maximum clique size by enumerating all vertex subsets.
pub fn graph_clique_size(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    subsets(n).filter(|s| pairs(s).all(|(i, j)| adj[i][j])).map(|s| s.len()).max().unwrap_or(0)
}

/// `|a - b| <= tol * max(|a|, |b|, 1)`.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
