//! Random members of `D_n`, valid upward perturbations, and duplicate
//! replacements, for the falsifiers.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::matrix::{DistanceMatrix, SimilarityMatrix};
use crate::points::{cosine_similarity_from_angles, distances_from_points, PointConfiguration, Space};

/// Distances between distinct classes are drawn from this range.
pub const CLASS_DISTANCE: (f64, f64) = (0.5, 2.0);
/// Upward increments are drawn from this range.
pub const INCREMENT: (f64, f64) = (0.05, 0.5);
/// Angles for similarity probes stay in `[0, MAX_ANGLE]`, so every cosine
/// similarity is positive.
pub const MAX_ANGLE: f64 = 1.2;
/// Spacing of the lattice geometry (a 3 x 3 grid on the unit square).
pub const LATTICE_SPACING: f64 = 0.5;

/// Independent stream `stream` of the generator seeded with `seed`.
pub fn probe_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn uniform<R: Rng + ?Sized>(rng: &mut R, (lo, hi): (f64, f64)) -> f64 {
    rng.random_range(lo..=hi)
}

/// Surjective class labels `0..c` for `n` elements, in random order.
pub fn random_labels<R: Rng + ?Sized>(rng: &mut R, n: usize, c: usize) -> Vec<usize> {
    assert!(1 <= c && c <= n, "need 1 <= c <= n, got c = {c}, n = {n}");
    let mut labels: Vec<usize> = (0..n).map(|i| if i < c { i } else { rng.random_range(0..c) }).collect();
    labels.shuffle(rng);
    labels
}

/// Elements with equal labels coincide; each pair of classes gets its own
/// distance from [`CLASS_DISTANCE`].
pub fn class_matrix<R: Rng + ?Sized>(rng: &mut R, labels: &[usize]) -> DistanceMatrix {
    let c = labels.iter().max().map_or(0, |m| m + 1);
    let mut table = vec![vec![0.0; c]; c];
    for a in 0..c {
        for b in (a + 1)..c {
            let v = uniform(rng, CLASS_DISTANCE);
            table[a][b] = v;
            table[b][a] = v;
        }
    }
    DistanceMatrix::from_fn(labels.len(), |i, j| table[labels[i]][labels[j]])
        .expect("class matrices satisfy the matrix conditions")
}

/// A class matrix with a uniformly random number of classes in `1..=n`.
pub fn random_distance_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DistanceMatrix {
    let c = rng.random_range(1..=n);
    let labels = random_labels(rng, n, c);
    class_matrix(rng, &labels)
}

/// `n` points drawn with replacement from the 3 x 3 lattice on the unit
/// square. Ties and duplicates are common, which is the point.
pub fn lattice_points<R: Rng + ?Sized>(rng: &mut R, n: usize) -> PointConfiguration {
    let steps = (1.0 / LATTICE_SPACING).round() as usize + 1;
    let points = (0..n)
        .map(|_| {
            let x = rng.random_range(0..steps) as f64 * LATTICE_SPACING;
            let y = rng.random_range(0..steps) as f64 * LATTICE_SPACING;
            vec![x, y]
        })
        .collect();
    PointConfiguration::new(Space::UnitSquare, points).expect("lattice points lie in the unit square")
}

/// Either geometry, with equal odds.
pub fn random_base<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DistanceMatrix {
    if rng.random_bool(0.5) {
        random_distance_matrix(rng, n)
    } else {
        distances_from_points(&lattice_points(rng, n))
    }
}

/// A base matrix plus a set of symmetric increments `(i, j, eps)`, `i < j`,
/// `eps > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbationPlan {
    base: DistanceMatrix,
    deltas: Vec<(usize, usize, f64)>,
}

impl PerturbationPlan {
    pub fn new(base: DistanceMatrix, deltas: Vec<(usize, usize, f64)>) -> Self {
        PerturbationPlan { base, deltas }
    }

    pub fn base(&self) -> &DistanceMatrix {
        &self.base
    }

    pub fn deltas(&self) -> &[(usize, usize, f64)] {
        &self.deltas
    }

    /// Random valid plan. Whole class pairs are raised together (so
    /// duplicates stay consistent), and possibly one element is split out of
    /// its class with the same increment to every former classmate.
    pub fn random<R: Rng + ?Sized>(base: &DistanceMatrix, rng: &mut R) -> Self {
        let classes = base.duplicate_classes();
        let cls = classes.classes();
        let c = cls.len();
        let mut deltas = Vec::new();
        let raise = |a: usize, b: usize, eps: f64, deltas: &mut Vec<(usize, usize, f64)>| {
            for &i in &cls[a] {
                for &j in &cls[b] {
                    deltas.push((i.min(j), i.max(j), eps));
                }
            }
        };
        for a in 0..c {
            for b in (a + 1)..c {
                if rng.random_bool(0.5) {
                    let eps = uniform(rng, INCREMENT);
                    raise(a, b, eps, &mut deltas);
                }
            }
        }
        let multi: Vec<&Vec<usize>> = cls.iter().filter(|m| m.len() >= 2).collect();
        let split = !multi.is_empty() && (deltas.is_empty() || rng.random_bool(0.5));
        if split {
            let class = multi[rng.random_range(0..multi.len())];
            let i = class[rng.random_range(0..class.len())];
            let eps = uniform(rng, INCREMENT);
            for &j in class.iter().filter(|&&j| j != i) {
                deltas.push((i.min(j), i.max(j), eps));
            }
        }
        if deltas.is_empty() {
            // No multi-member class and no pair picked: c >= 2 here.
            let a = rng.random_range(0..c);
            let b = (a + rng.random_range(1..c)) % c;
            let eps = uniform(rng, INCREMENT);
            raise(a.min(b), a.max(b), eps, &mut deltas);
        }
        PerturbationPlan { base: base.clone(), deltas }
    }

    /// The perturbed matrix, revalidated.
    pub fn apply(&self) -> Result<DistanceMatrix> {
        let mut rows = self.base.rows().to_vec();
        for &(i, j, eps) in &self.deltas {
            rows[i][j] += eps;
            rows[j][i] += eps;
        }
        DistanceMatrix::new(rows)
    }
}

/// `(A, B)` for the uniqueness axiom on `n >= 3` elements: in `B` element 0
/// duplicates element 1; in `A` element 0 is replaced by a fresh element at
/// positive distance from everything. All other entries agree.
pub fn random_replacement_pair<R: Rng + ?Sized>(rng: &mut R, n: usize) -> (DistanceMatrix, DistanceMatrix) {
    assert!(n >= 3);
    let rest = random_base(rng, n - 1);
    let classes = rest.duplicate_classes();
    let fresh: Vec<f64> = (0..classes.len()).map(|_| uniform(rng, CLASS_DISTANCE)).collect();
    let a = DistanceMatrix::from_fn(n, |i, j| match i {
        0 => fresh[classes.class_of(j - 1)],
        _ => rest.get(i - 1, j - 1),
    });
    let b = DistanceMatrix::from_fn(n, |i, j| match i {
        0 => rest.get(0, j - 1),
        _ => rest.get(i - 1, j - 1),
    });
    (a.expect("fresh element keeps the conditions"), b.expect("copied element keeps the conditions"))
}

/// `n` angles in `[0, MAX_ANGLE]`, with a random number of distinct values.
pub fn random_angles<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let c = rng.random_range(1..=n);
    let labels = random_labels(rng, n, c);
    let values: Vec<f64> = (0..c).map(|_| rng.random_range(0.0..=MAX_ANGLE)).collect();
    labels.iter().map(|&l| values[l]).collect()
}

pub fn angle_similarity(angles: &[f64]) -> SimilarityMatrix {
    let cfg = PointConfiguration::from_scalars(Space::UnitCircle, angles).expect("angles in [0, 2pi)");
    cosine_similarity_from_angles(&cfg).expect("cosine kernel on the circle is PSD")
}

/// `S o (c J + (1 - c) B)` where `B` is the block-ones matrix of `labels`:
/// similarities inside a block are kept, across blocks scaled by `c`. A
/// Hadamard product of PSD matrices is PSD.
pub fn block_scaled(s: &SimilarityMatrix, labels: &[usize], c: f64) -> Result<SimilarityMatrix> {
    let n = s.n();
    let rows = (0..n)
        .map(|i| (0..n).map(|j| if labels[i] == labels[j] { s.get(i, j) } else { c * s.get(i, j) }).collect())
        .collect();
    SimilarityMatrix::new(rows)
}

/// A random strict decrease of some similarities: at least two blocks,
/// factor in `[0.5, 0.95]`.
pub fn random_similarity_decrease<R: Rng + ?Sized>(rng: &mut R, s: &SimilarityMatrix) -> Result<SimilarityMatrix> {
    let n = s.n();
    let blocks = rng.random_range(2..=n);
    let labels = random_labels(rng, n, blocks);
    let c = rng.random_range(0.5..=0.95);
    block_scaled(s, &labels, c)
}

/// Angle version of [`random_replacement_pair`]: `(A, B)` with
/// `theta_0 = theta_1` in `B` and a fresh `theta_0` in `A`.
pub fn random_angle_replacement<R: Rng + ?Sized>(rng: &mut R, n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 3);
    let rest = random_angles(rng, n - 1);
    let fresh = loop {
        let t = rng.random_range(0.0..=MAX_ANGLE);
        if rest.iter().all(|&r| (r - t).abs() > 1e-3) {
            break t;
        }
    };
    let mut a = vec![fresh];
    a.extend_from_slice(&rest);
    let mut b = vec![rest[0]];
    b.extend_from_slice(&rest);
    (a, b)
}
