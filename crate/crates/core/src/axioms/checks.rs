//! The falsifiers. Each one runs the targeted witnesses first, then a seeded
//! batch of random probes; probes run in parallel but the reported witness is
//! always the first violation in probe order.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::matrix::DistanceMatrix;
use crate::measures::{Input, Kernel, Kind, MeasureHandle};
use crate::points::{distances_from_points, PointConfiguration, Space};
use crate::value::MeasureValue;

use super::generate::{
    angle_similarity, block_scaled, probe_rng, random_angle_replacement, random_angles, random_base, random_labels,
    random_replacement_pair, random_similarity_decrease, PerturbationPlan, MAX_ANGLE,
};
use super::verdict::{Axiom, AxiomVerdict, Outcome, ProbePair, Witness};
use super::witnesses;

/// A probe passes only if `A` beats `B` by more than this.
pub const STRICT_MARGIN: f64 = 1e-12;

/// Random probes use collections of this many elements.
pub const PROBE_N: (usize, usize) = (3, 8);

// Streams per check keep the random probes of different axioms independent.
const MONO_STREAM: u64 = 1 << 32;
const UNIQ_STREAM: u64 = 2 << 32;
const CONT_STREAM: u64 = 3 << 32;

enum Probe {
    Pass(f64),
    Inconclusive(f64),
    Violated(Witness),
    Error,
}

fn judge(m: &MeasureHandle, pair: ProbePair, note: String) -> Probe {
    let Ok((a, b)) = pair.evaluate(m) else {
        return Probe::Error;
    };
    let diff = a.margin_over(b);
    if diff <= 0.0 {
        Probe::Violated(Witness::new(pair, a, b, note))
    } else if diff <= STRICT_MARGIN {
        Probe::Inconclusive(diff)
    } else {
        Probe::Pass(diff)
    }
}

fn probe_n<R: Rng + ?Sized>(rng: &mut R, m: &MeasureHandle) -> usize {
    let hi = PROBE_N.1.min(m.limits.clique_n_max).min(m.limits.held_karp_n_max).max(PROBE_N.0);
    rng.random_range(PROBE_N.0..=hi)
}

fn kernel_of(m: &MeasureHandle) -> Option<Kernel> {
    match m.kind() {
        Kind::DistanceBased => None,
        Kind::SimilarityBased => Some(Kernel::Cosine),
    }
}

fn summarize(
    m: &MeasureHandle,
    axiom: Axiom,
    budget: usize,
    seed: u64,
    probes: Vec<Probe>,
    heuristic: bool,
) -> AxiomVerdict {
    let mut verdict = AxiomVerdict {
        measure: m.name().to_string(),
        params: m.measure.params_json(),
        axiom,
        outcome: Outcome::NoViolationFound,
        witness: None,
        budget,
        probes: probes.len(),
        seed,
        kernel: kernel_of(m),
        inconclusive: 0,
        errors: 0,
        min_margin: None,
        heuristic,
    };
    for p in probes {
        match p {
            Probe::Violated(w) => {
                if verdict.witness.is_none() {
                    verdict.outcome = Outcome::Violated;
                    verdict.witness = Some(w);
                }
            }
            Probe::Pass(d) | Probe::Inconclusive(d) => {
                if matches!(p, Probe::Inconclusive(_)) {
                    verdict.inconclusive += 1;
                }
                verdict.min_margin = Some(verdict.min_margin.map_or(d, |x: f64| x.min(d)));
            }
            Probe::Error => verdict.errors += 1,
        }
    }
    verdict
}

fn run<F>(m: &MeasureHandle, targeted: Vec<(String, ProbePair)>, budget: usize, random: F) -> Vec<Probe>
where
    F: Fn(usize) -> (String, ProbePair) + Sync,
{
    let mut out: Vec<Probe> =
        targeted.into_iter().filter(|(_, p)| p.fits(m)).map(|(note, pair)| judge(m, pair, note)).collect();
    let random: Vec<Probe> = (0..budget)
        .into_par_iter()
        .map(|k| {
            let (note, pair) = random(k);
            judge(m, pair, note)
        })
        .collect();
    out.extend(random);
    out
}

/// Strict monotonicity: raising distances (or lowering similarities) must
/// raise the value.
pub fn check_monotonicity(m: &MeasureHandle, budget: usize, seed: u64) -> AxiomVerdict {
    let targeted = witnesses::monotonicity(&m.measure);
    let probes = run(m, targeted, budget, |k| {
        let mut rng = probe_rng(seed, MONO_STREAM + k as u64);
        let n = probe_n(&mut rng, m);
        match m.kind() {
            Kind::DistanceBased => {
                let b = random_base(&mut rng, n);
                let plan = PerturbationPlan::random(&b, &mut rng);
                let a = plan.apply().expect("plans preserve validity");
                (format!("random probe {k}"), ProbePair::Distance { a, b })
            }
            Kind::SimilarityBased => {
                let b = angle_similarity(&random_angles(&mut rng, n));
                let a = random_similarity_decrease(&mut rng, &b).expect("Hadamard products stay PSD");
                (format!("random probe {k}"), ProbePair::Similarity { a, b })
            }
        }
    });
    summarize(m, Axiom::Monotonicity, budget, seed, probes, false)
}

/// Uniqueness: replacing a duplicate by a fresh element must raise the value.
pub fn check_uniqueness(m: &MeasureHandle, budget: usize, seed: u64) -> AxiomVerdict {
    let targeted = witnesses::uniqueness(&m.measure);
    let probes = run(m, targeted, budget, |k| {
        let mut rng = probe_rng(seed, UNIQ_STREAM + k as u64);
        let n = probe_n(&mut rng, m);
        match m.kind() {
            Kind::DistanceBased => {
                let (a, b) = random_replacement_pair(&mut rng, n);
                (format!("random probe {k}"), ProbePair::Distance { a, b })
            }
            Kind::SimilarityBased => {
                let (a, b) = random_angle_replacement(&mut rng, n);
                let pair = ProbePair::Similarity { a: angle_similarity(&a), b: angle_similarity(&b) };
                (format!("random probe {k}"), pair)
            }
        }
    });
    summarize(m, Axiom::Uniqueness, budget, seed, probes, false)
}

/// Jump-detection thresholds for [`check_continuity`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ContinuityConfig {
    /// Gaps below `ratio * tol` at the finest step never count as jumps.
    pub tol: f64,
    pub ratio: f64,
    /// Evaluate at `eps_k = 2^-k` for `k = 1..=steps`.
    pub steps: u32,
    /// Directions tried per witness; the first one splits every duplicate.
    pub directions: usize,
}

impl Default for ContinuityConfig {
    fn default() -> Self {
        ContinuityConfig { tol: 1e-6, ratio: 10.0, steps: 20, directions: 4 }
    }
}

/// Gap between two values; if exactly one is `-inf`, compare `atan` images
/// so the gap stays finite.
fn gap(a: MeasureValue, b: MeasureValue) -> f64 {
    match (a.is_neg_inf(), b.is_neg_inf()) {
        (true, true) => 0.0,
        (false, false) => (a.get() - b.get()).abs(),
        _ => (a.get().atan() - b.get().atan()).abs(),
    }
}

/// A path `eps -> input` that converges to the witness as `eps -> 0`.
enum Direction {
    Distance(Vec<Vec<f64>>),
    Similarity(Vec<usize>),
}

impl Direction {
    fn at(&self, base: &Input, eps: f64) -> Result<Input> {
        Ok(match (self, base) {
            (Direction::Distance(delta), Input::Distance(d)) => {
                let rows = d
                    .rows()
                    .iter()
                    .zip(delta)
                    .map(|(r, dr)| r.iter().zip(dr).map(|(x, dx)| x + eps * dx).collect())
                    .collect();
                Input::Distance(DistanceMatrix::new(rows)?)
            }
            (Direction::Similarity(labels), Input::Similarity(s)) => {
                Input::Similarity(block_scaled(s, labels, 1.0 - eps)?)
            }
            _ => unreachable!("direction built for the witness kind"),
        })
    }
}

fn distance_direction<R: Rng + ?Sized>(rng: &mut R, d: &DistanceMatrix, index: usize) -> Vec<Vec<f64>> {
    let n = d.n();
    if index == 0 {
        // Every distance up by one: all duplicates split.
        return (0..n).map(|i| (0..n).map(|j| if i == j { 0.0 } else { 1.0 }).collect()).collect();
    }
    let classes = d.duplicate_classes();
    let c = classes.len();
    let min_pos = d.distinct_positive_values().first().copied().unwrap_or(1.0);
    // Odd directions keep duplicate classes intact; even ones split them.
    let keep = index % 2 == 1;
    let mut class_delta = vec![vec![0.0; c]; c];
    for a in 0..c {
        for b in (a + 1)..c {
            let v = rng.random_range(-min_pos..=1.0);
            class_delta[a][b] = v;
            class_delta[b][a] = v;
        }
    }
    let mut delta = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let (ci, cj) = (classes.class_of(i), classes.class_of(j));
            let v = if ci != cj {
                class_delta[ci][cj]
            } else if keep {
                0.0
            } else {
                rng.random_range(0.1..=1.0)
            };
            delta[i][j] = v;
            delta[j][i] = v;
        }
    }
    delta
}

fn continuity_path(m: &MeasureHandle, base: &Input, dir: &Direction, cfg: &ContinuityConfig, note: String) -> Probe {
    let Ok(v0) = m.evaluate(base) else {
        return Probe::Error;
    };
    let mut gaps = Vec::with_capacity(cfg.steps as usize);
    let mut last = None;
    for k in 1..=cfg.steps {
        let eps = 0.5f64.powi(k as i32);
        let Ok(x) = dir.at(base, eps) else {
            return Probe::Error;
        };
        let Ok(v) = m.evaluate(&x) else {
            return Probe::Error;
        };
        gaps.push(gap(v, v0));
        last = Some((x, v));
    }
    let Some((x, v)) = last else {
        return Probe::Pass(f64::INFINITY);
    };
    let g = *gaps.last().unwrap();
    let back = gaps.len().saturating_sub(6);
    let earlier = gaps[back];
    let jump = g > cfg.ratio * cfg.tol && earlier < 2.0 * g;
    if jump {
        let pair = match (x, base) {
            (Input::Distance(a), Input::Distance(b)) => ProbePair::Distance { a, b: b.clone() },
            (Input::Similarity(a), Input::Similarity(b)) => ProbePair::Similarity { a, b: b.clone() },
            _ => unreachable!(),
        };
        Probe::Violated(Witness::new(pair, v, v0, format!("{note}: gap {g:e} does not shrink")))
    } else {
        Probe::Pass(0.0)
    }
}

/// Continuity falsifier: follow paths `eps_k = 2^-k` into each witness and
/// flag gaps that stop shrinking. Heuristic by nature.
pub fn check_continuity(m: &MeasureHandle, witnesses: &[Input], seed: u64) -> AxiomVerdict {
    check_continuity_with(m, witnesses, seed, &ContinuityConfig::default())
}

pub fn check_continuity_with(
    m: &MeasureHandle,
    witnesses: &[Input],
    seed: u64,
    cfg: &ContinuityConfig,
) -> AxiomVerdict {
    let witnesses: Vec<Input> = witnesses
        .iter()
        .filter_map(|w| match (w, m.kind()) {
            (Input::Distance(_), Kind::DistanceBased) | (Input::Similarity(_), Kind::SimilarityBased) => {
                Some(w.clone())
            }
            (Input::Distance(d), Kind::SimilarityBased) => {
                m.kernel.and_then(|k| k.similarity(d).ok()).map(Input::Similarity)
            }
            (Input::Similarity(_), Kind::DistanceBased) => None,
        })
        .collect();
    let jobs: Vec<(usize, usize)> =
        (0..witnesses.len()).flat_map(|w| (0..cfg.directions).map(move |k| (w, k))).collect();
    let probes: Vec<Probe> = jobs
        .par_iter()
        .map(|&(w, k)| {
            let mut rng = probe_rng(seed, CONT_STREAM + (w * cfg.directions + k) as u64);
            let base = &witnesses[w];
            let dir = match base {
                Input::Distance(d) => Direction::Distance(distance_direction(&mut rng, d, k)),
                Input::Similarity(s) => {
                    let n = s.n();
                    let labels = if k == 0 {
                        (0..n).collect()
                    } else {
                        let blocks = rng.random_range(1..=n);
                        random_labels(&mut rng, n, blocks)
                    };
                    Direction::Similarity(labels)
                }
            };
            continuity_path(m, base, &dir, cfg, format!("witness {w}, direction {k}"))
        })
        .collect();
    let mut verdict = summarize(m, Axiom::Continuity, witnesses.len(), seed, probes, true);
    verdict.min_margin = None;
    verdict
}

/// Targeted boundary witnesses followed by `count` random ones (with
/// duplicates) for `m`.
pub fn default_continuity_witnesses(m: &MeasureHandle, count: usize, seed: u64) -> Vec<Input> {
    let mut out = witnesses::continuity(&m.measure);
    out.extend((0..count).map(|k| {
        let mut rng = probe_rng(seed, CONT_STREAM - 1 - k as u64);
        let n = probe_n(&mut rng, m);
        match m.kind() {
            Kind::DistanceBased => Input::Distance(random_base(&mut rng, n)),
            Kind::SimilarityBased => Input::Similarity(angle_similarity(&random_angles(&mut rng, n))),
        }
    }));
    out
}

/// Relative agreement used by the duplicate-placement check.
pub const PLACEMENT_TOL: f64 = 1e-9;

fn agree(a: MeasureValue, b: MeasureValue) -> bool {
    if a.is_neg_inf() || b.is_neg_inf() {
        return a.is_neg_inf() && b.is_neg_inf();
    }
    let scale = a.get().abs().max(b.get().abs());
    (a.get() - b.get()).abs() <= PLACEMENT_TOL * scale
}

/// All ways to write `n` as an ordered sum of `k` positive parts.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 1..=(left - (parts - 1)) {
            cur.push(first);
            rec(left - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 1 && n >= k {
        rec(n, k, &mut Vec::new(), &mut out);
    }
    out
}

type VariantBuilder = dyn Fn(&[usize]) -> Input + Sync;

/// `k` distinct random points, then every multiset of size `n` that uses
/// each of them at least once. A measure that only cares which elements are
/// present must give all of them the same value.
pub fn check_duplicate_placement_invariance(m: &MeasureHandle, k: usize, n: usize, seed: u64) -> AxiomVerdict {
    assert!(2 <= k && k < n, "need 2 <= k < n, got k = {k}, n = {n}");
    let mut rng = probe_rng(seed, 0);
    let variants = compositions(n, k);
    let make: Box<VariantBuilder> = match m.kind() {
        Kind::DistanceBased => {
            let pts = distinct_points(&mut rng, k, Space::UnitSquare);
            Box::new(move |mult: &[usize]| {
                let points = expand(&pts, mult);
                let cfg = PointConfiguration::new(Space::UnitSquare, points).expect("points in the square");
                Input::Distance(distances_from_points(&cfg))
            })
        }
        Kind::SimilarityBased => {
            let pts = distinct_points(&mut rng, k, Space::UnitSegment);
            Box::new(move |mult: &[usize]| {
                let angles: Vec<f64> = expand(&pts, mult).iter().map(|p| p[0] * MAX_ANGLE).collect();
                Input::Similarity(angle_similarity(&angles))
            })
        }
    };
    let values: Vec<(Input, Result<MeasureValue>)> = variants
        .par_iter()
        .map(|mult| {
            let input = make(mult);
            let v = m.evaluate(&input);
            (input, v)
        })
        .collect();
    let mut probes = Vec::with_capacity(values.len());
    let first = values.iter().find_map(|(i, v)| v.as_ref().ok().map(|v| (i, *v)));
    for (idx, (input, v)) in values.iter().enumerate() {
        let (Ok(v), Some((i0, v0))) = (v, first) else {
            probes.push(Probe::Error);
            continue;
        };
        if agree(*v, v0) {
            probes.push(Probe::Pass(PLACEMENT_TOL));
        } else {
            let pair = match (input, i0) {
                (Input::Distance(a), Input::Distance(b)) => ProbePair::Distance { a: a.clone(), b: b.clone() },
                (Input::Similarity(a), Input::Similarity(b)) => ProbePair::Similarity { a: a.clone(), b: b.clone() },
                _ => unreachable!(),
            };
            let note = format!("multiplicities {:?} vs {:?}", variants[idx], variants[0]);
            probes.push(Probe::Violated(Witness::new(pair, *v, v0, note)));
        }
    }
    let mut verdict = summarize(m, Axiom::DuplicatePlacement, variants.len(), seed, probes, false);
    verdict.min_margin = None;
    verdict
}

fn distinct_points<R: Rng + ?Sized>(rng: &mut R, k: usize, space: Space) -> Vec<Vec<f64>> {
    let mut pts: Vec<Vec<f64>> = Vec::with_capacity(k);
    while pts.len() < k {
        let p: Vec<f64> = (0..space.dim()).map(|_| rng.random_range(0.0..=1.0)).collect();
        if pts.iter().all(|q| space.distance(q, &p) > 0.05) {
            pts.push(p);
        }
    }
    pts
}

fn expand(pts: &[Vec<f64>], mult: &[usize]) -> Vec<Vec<f64>> {
    pts.iter().zip(mult).flat_map(|(p, &c)| std::iter::repeat_n(p.clone(), c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::Measure;

    fn handle(name: &str) -> MeasureHandle {
        MeasureHandle::new(name.parse::<Measure>().unwrap())
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(4, 2), vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
        // C(n-1, k-1)
        assert_eq!(compositions(8, 4).len(), 35);
        assert!(compositions(2, 3).is_empty());
    }

    #[test]
    fn diameter_monotonicity_fails_on_the_triangle() {
        let v = check_monotonicity(&handle("diameter"), 10, 1);
        assert!(v.is_violated());
        let w = v.witness.unwrap();
        assert_eq!(w.value_a, w.value_b);
        assert!(w.note.contains("2,2,1"));
    }

    #[test]
    fn average_is_monotone_under_budget() {
        let v = check_monotonicity(&handle("average"), 300, 7);
        assert_eq!(v.outcome, Outcome::NoViolationFound);
        assert!(v.min_margin.unwrap() > STRICT_MARGIN);
    }

    #[test]
    fn energy_uniqueness_fails_on_coinciding_triple() {
        let v = check_uniqueness(&handle("energy"), 10, 1);
        let w = v.witness.unwrap();
        assert!(w.value_a.is_neg_inf() && w.value_b.is_neg_inf());
    }

    #[test]
    fn unique_jumps_and_average_does_not() {
        let u = handle("unique");
        let w = default_continuity_witnesses(&u, 5, 3);
        assert!(check_continuity(&u, &w, 3).is_violated());
        let a = handle("average");
        assert!(!check_continuity(&a, &w, 3).is_violated());
        let e = handle("energy");
        assert!(!check_continuity(&e, &w, 3).is_violated());
    }

    #[test]
    fn circles_jumps_at_threshold() {
        let c = handle("circles");
        let w = witnesses::continuity(&c.measure);
        let v = check_continuity(&c, &w, 0);
        assert!(v.is_violated());
        assert!(v.witness.unwrap().replays(&c).unwrap());
    }

    #[test]
    fn placement_average_vs_volume() {
        let a = check_duplicate_placement_invariance(&handle("average"), 2, 4, 5);
        assert!(a.is_violated());
        let m = check_duplicate_placement_invariance(&handle("multi_dim_volume"), 3, 5, 5);
        assert!(!m.is_violated());
    }
}
