mod common;

use common::*;
use diversity::matrix::rbf_similarity_from_distances;
use diversity::measures::hard::{
    circles, clique_weight_at, ham_div, integral_max_clique, max_clique, multi_dim_volume, multi_dim_volume_normalized,
    volume_profile, Comparison, ThresholdGraph,
};
use diversity::{DistanceMatrix, Measure, MeasureHandle};
use rand::Rng;

const REL: f64 = 1e-9;

#[test]
fn hard_measures_match_enumeration() {
    for seed in 100..150 {
        let mut r = rng(seed);
        let n = r.random_range(3..=9);
        let raw = random_matrix(&mut r, n);
        let d = matrix(&raw);

        let profile = volume_profile(&d).unwrap();
        for ((k, got), want) in profile.iter().zip(log_profile(&raw)) {
            match want {
                None => assert!(got.is_zero(), "seed {seed} k {k}"),
                Some(l) => assert!(close(got.ln(), l, REL), "seed {seed} k {k}: {} vs {l}", got.ln()),
            }
        }
        assert!(close(multi_dim_volume(&d).unwrap().get(), mdv(&raw), REL), "seed {seed}");
        assert!(close(multi_dim_volume_normalized(&d).unwrap().get(), mdv_normalized(&raw), REL), "seed {seed}");
        assert!(close(integral_max_clique(&d).unwrap().get(), imc(&raw), REL), "seed {seed}");
        assert!(close(ham_div(&d).unwrap().get(), common::ham_div(&raw), REL), "seed {seed}");
        for t in [0.0, 0.25, 0.5, 1.0, 1.7] {
            assert_eq!(circles(&d, t).unwrap().get(), common::circles(&raw, t) as f64, "seed {seed} t {t}");
            assert!(close(clique_weight_at(&d, t.max(1e-3)).unwrap(), clique_weight(&raw, t.max(1e-3)), REL));
        }
    }
}

#[test]
fn clique_solver_on_random_graphs() {
    for seed in 0..20 {
        let mut r = rng(seed);
        let edges = random_graph(&mut r, 10, 0.5);
        let d =
            DistanceMatrix::from_fn(10, |i, j| if edges.contains(&(i.min(j), i.max(j))) { 2.0 } else { 1.0 }).unwrap();
        let g = ThresholdGraph::new(&d, 1.5, Comparison::NonStrict);
        let sol = max_clique(&g, 24).unwrap();
        assert!(g.is_clique(&sol.members));
        assert_eq!(sol.size, graph_clique_size(10, &edges), "seed {seed}");
    }
}

#[test]
fn small_cases_by_hand() {
    let tri = matrix(&[vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 3.0], vec![2.0, 3.0, 0.0]]);
    assert_eq!(multi_dim_volume(&tri).unwrap().get(), 9.0);
    assert!((multi_dim_volume_normalized(&tri).unwrap().get() - (3.0 + 6f64.cbrt())).abs() < 1e-12);
    assert_eq!(ham_div(&tri).unwrap().get(), 6.0);

    let dup = matrix(&[vec![0.0, 0.0, 1.0], vec![0.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]]);
    assert_eq!(integral_max_clique(&dup).unwrap().get(), 1.0);
    let ones = matrix(&[vec![0.0, 1.0, 1.0], vec![1.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]]);
    assert_eq!(integral_max_clique(&ones).unwrap().get(), 3.0);
}

/// Eigenvalues of the Gaussian kernel on the line points 0, 1, 2 with
/// sigma = 1, as roots of the characteristic polynomial found by bisection.
#[test]
fn rbf_spectrum_matches_characteristic_polynomial() {
    let d = matrix(&[vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 1.0], vec![2.0, 1.0, 0.0]]);
    let s = rbf_similarity_from_distances(&d, 1.0).unwrap();
    let (a, b) = ((-1f64).exp(), (-4f64).exp());
    assert_eq!(s.get(0, 2), b);

    // det(S - x I) for S = [[1,a,b],[a,1,a],[b,a,1]]
    let p = |x: f64| {
        let y = 1.0 - x;
        y * (y * y - a * a) - a * (a * y - a * b) + b * (a * a - y * b)
    };
    let mut roots = Vec::new();
    let steps = 4000;
    for i in 0..steps {
        let (mut lo, mut hi) = (-1.0 + 4.0 * i as f64 / steps as f64, -1.0 + 4.0 * (i + 1) as f64 / steps as f64);
        if p(lo).signum() == p(hi).signum() {
            continue;
        }
        for _ in 0..100 {
            let mid = (lo + hi) / 2.0;
            if p(lo).signum() == p(mid).signum() {
                lo = mid
            } else {
                hi = mid
            }
        }
        roots.push((lo + hi) / 2.0);
    }
    roots.sort_by(|x, y| y.total_cmp(x));
    let mut got = s.eigenvalues().to_vec();
    got.sort_by(|x, y| y.total_cmp(x));
    assert_eq!(roots.len(), 3);
    for (g, w) in got.iter().zip(&roots) {
        assert!((g - w).abs() < 1e-10, "{got:?} vs {roots:?}");
    }
    assert!(roots.iter().all(|&r| r > 0.0));
}

/// Direct formulas for the polynomial measures on random inputs.
#[test]
fn poly_measures_match_formulas() {
    for seed in 0..30 {
        let mut r = rng(seed);
        let n = r.random_range(2..=9);
        let raw = random_matrix(&mut r, n);
        let d = matrix(&raw);
        let off: Vec<f64> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| raw[i][j]).collect();
        let row_max = |i: usize| (0..n).filter(|&j| j != i).map(|j| raw[i][j]).fold(f64::MIN, f64::max);
        let row_min = |i: usize| (0..n).filter(|&j| j != i).map(|j| raw[i][j]).fold(f64::MAX, f64::min);
        let eval = |name: &str| MeasureHandle::new(name.parse::<Measure>().unwrap()).eval_distance(&d).unwrap().get();

        let sum: f64 = off.iter().sum();
        assert!(close(eval("average"), sum / off.len() as f64, 1e-12));
        assert!(close(eval("sum_average"), sum / n as f64, 1e-12));
        assert_eq!(eval("diameter"), off.iter().cloned().fold(f64::MIN, f64::max));
        assert_eq!(eval("bottleneck"), off.iter().cloned().fold(f64::MAX, f64::min));
        assert!(close(eval("sum_diameter"), (0..n).map(row_max).sum(), 1e-12));
        assert!(close(eval("sum_bottleneck"), (0..n).map(row_min).sum(), 1e-12));
        let energy = eval("energy");
        if off.contains(&0.0) {
            assert_eq!(energy, f64::NEG_INFINITY);
        } else {
            let want = -off.iter().map(|v| 1.0 / v).sum::<f64>() / off.len() as f64;
            assert!(close(energy, want, 1e-12));
        }
    }
}
