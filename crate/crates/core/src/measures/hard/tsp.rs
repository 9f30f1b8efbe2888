//! Shortest Hamiltonian circuit by Held-Karp dynamic programming.

use crate::error::{Error, Result};
use crate::matrix::DistanceMatrix;

/// Exact minimum tour length. `O(n^2 2^n)` time, `O(n 2^n)` memory.
pub(crate) fn shortest_circuit(d: &DistanceMatrix, n_max: usize) -> Result<f64> {
    let n = d.n();
    if n < 3 {
        return Err(Error::NTooSmall { n, min: 3 });
    }
    if n > n_max {
        return Err(Error::InstanceTooLarge { n, n_max });
    }
    // Element 0 anchors the tour; subsets range over elements 1..n, with
    // element k stored at bit k-1.
    let m = n - 1;
    let full = 1usize << m;
    let mut dp = vec![f64::INFINITY; full * m];
    for k in 0..m {
        dp[(1 << k) * m + k] = d.get(0, k + 1);
    }
    for mask in 1..full {
        for last in 0..m {
            let cur = dp[mask * m + last];
            if mask >> last & 1 == 0 || cur == f64::INFINITY {
                continue;
            }
            let mut free = !mask & (full - 1);
            while free != 0 {
                let next = free.trailing_zeros() as usize;
                free &= free - 1;
                let slot = &mut dp[(mask | 1 << next) * m + next];
                let cand = cur + d.get(last + 1, next + 1);
                if cand < *slot {
                    *slot = cand;
                }
            }
        }
    }
    let best = (0..m).map(|last| dp[(full - 1) * m + last] + d.get(last + 1, 0)).fold(f64::INFINITY, f64::min);
    Ok(best)
}
