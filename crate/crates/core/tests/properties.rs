mod common;

use std::f64::consts::TAU;

use diversity::axioms::generate::{angle_similarity, random_similarity_decrease};
use diversity::axioms::generate::{probe_rng, random_base, PerturbationPlan};
use diversity::measures::hard::{integral_max_clique, multi_dim_volume};
use diversity::optimize::{maximize, SearchConfig};
use diversity::points::{cosine_similarity_from_angles, distances_from_points};
use diversity::{validate_similarity_matrix, DistanceMatrix, Measure, MeasureHandle, PointConfiguration, Space};
use proptest::prelude::*;

fn square_points(max: usize) -> impl Strategy<Value = PointConfiguration> {
    prop::collection::vec((0.0..=1.0f64, 0.0..=1.0f64), 1..=max).prop_map(|ps| {
        PointConfiguration::new(Space::UnitSquare, ps.into_iter().map(|(x, y)| vec![x, y]).collect()).unwrap()
    })
}

/// Points drawn from a small lattice so that coincidences are common.
fn lattice_points(max: usize) -> impl Strategy<Value = PointConfiguration> {
    prop::collection::vec((0..3u8, 0..3u8), 2..=max).prop_map(|ps| {
        let pts = ps.into_iter().map(|(x, y)| vec![x as f64 / 2.0, y as f64 / 2.0]).collect();
        PointConfiguration::new(Space::UnitSquare, pts).unwrap()
    })
}

fn eval(name: &str, d: &DistanceMatrix) -> f64 {
    MeasureHandle::new(name.parse::<Measure>().unwrap()).eval_distance(d).unwrap().get()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn point_distances_are_valid(cfg in square_points(12)) {
        let d = distances_from_points(&cfg);
        // Revalidating the raw rows must succeed and change nothing.
        prop_assert_eq!(DistanceMatrix::new(d.rows().to_vec()).unwrap(), d);
    }

    #[test]
    fn duplicate_classes_partition(cfg in lattice_points(10)) {
        let d = distances_from_points(&cfg);
        let classes = d.duplicate_classes();
        let mut seen: Vec<usize> = classes.classes().iter().flatten().copied().collect();
        seen.sort();
        prop_assert_eq!(seen, (0..d.n()).collect::<Vec<_>>());
        for (a, ca) in classes.classes().iter().enumerate() {
            for &i in ca {
                for &j in ca { prop_assert_eq!(d.get(i, j), 0.0); }
                for cb in &classes.classes()[a + 1..] {
                    for &j in cb { prop_assert!(d.get(i, j) > 0.0); }
                }
            }
        }
    }

    #[test]
    fn cosine_matrices_are_psd(angles in prop::collection::vec(0.0..TAU, 1..=20)) {
        let cfg = PointConfiguration::from_scalars(Space::UnitCircle, &angles).unwrap();
        let s = cosine_similarity_from_angles(&cfg).unwrap();
        prop_assert!(validate_similarity_matrix(s.rows().to_vec(), 1e-9).is_ok());
    }

    #[test]
    fn sum_average_identity(cfg in lattice_points(10)) {
        let d = distances_from_points(&cfg);
        let n = d.n() as f64;
        let (avg, sum_avg) = (eval("average", &d), eval("sum_average", &d));
        prop_assert!((sum_avg - avg * (n - 1.0) / 2.0).abs() <= 1e-12 * sum_avg.abs().max(1.0));
    }

    #[test]
    fn measures_are_permutation_invariant(cfg in lattice_points(8), seed in any::<u64>()) {
        let d = distances_from_points(&cfg);
        let mut perm: Vec<usize> = (0..d.n()).collect();
        use rand::seq::SliceRandom;
        perm.shuffle(&mut common::rng(seed));
        let p = d.permuted(&perm);
        for name in ["average", "sum_diameter", "sum_bottleneck", "energy", "unique", "circles",
                     "multi_dim_volume", "integral_max_clique"] {
            let (a, b) = (eval(name, &d), eval(name, &p));
            prop_assert!(a == b || (a - b).abs() <= 1e-9 * a.abs().max(1.0), "{} {} {}", name, a, b);
        }
        if d.n() >= 3 {
            let (a, b) = (eval("ham_div", &d), eval("ham_div", &p));
            prop_assert!((a - b).abs() <= 1e-9 * a.max(1.0));
        }
    }

    #[test]
    fn perturbations_stay_valid_and_raise_monotone_measures(seed in any::<u64>(), n in 2usize..=7) {
        let mut rng = probe_rng(seed, 0);
        let base = random_base(&mut rng, n);
        let plan = PerturbationPlan::random(&base, &mut rng);
        let a = plan.apply().unwrap();
        for name in ["average", "sum_average"] {
            prop_assert!(eval(name, &a) > eval(name, &base));
        }
        prop_assert!(multi_dim_volume(&a).unwrap() > multi_dim_volume(&base).unwrap());
        prop_assert!(integral_max_clique(&a).unwrap() > integral_max_clique(&base).unwrap());
    }

    #[test]
    fn similarity_decreases_stay_psd(angles in prop::collection::vec(0.0..1.2f64, 2..=8), seed in any::<u64>()) {
        let s = angle_similarity(&angles);
        let t = random_similarity_decrease(&mut probe_rng(seed, 0), &s).unwrap();
        prop_assert!(validate_similarity_matrix(t.rows().to_vec(), 1e-9).is_ok());
        for i in 0..s.n() {
            for j in 0..s.n() { prop_assert!(t.get(i, j) <= s.get(i, j)); }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn trajectories_only_go_up(seed in any::<u64>(), n in 2usize..=6, which in 0usize..4) {
        let name = ["average", "energy", "sum_bottleneck", "multi_dim_volume"][which];
        let m = MeasureHandle::new(name.parse::<Measure>().unwrap());
        let cfg = SearchConfig { iterations: 300, restarts: 2, seed, ..SearchConfig::new(m, Space::UnitSquare, n) };
        let t = maximize(&cfg).unwrap();
        let mut prev = t.initial_value;
        for s in &t.steps {
            prop_assert!(s.value > prev);
            prev = s.value;
        }
        prop_assert_eq!(prev, t.final_value);
    }
}
