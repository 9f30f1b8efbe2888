//! Worked counterexamples: exact input constructions with expected values.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{DistanceMatrix, SimilarityMatrix};
use crate::measures::{Input, Measure, Params};
use crate::points::{distances_from_points, PointConfiguration, Space};
use crate::value::MeasureValue;

use super::generate::angle_similarity;

/// Tolerance for values quoted to three decimals.
pub const QUOTED_TOL: f64 = 5e-3;
/// Tolerance for values known in closed form.
pub const EXACT_TOL: f64 = 1e-9;

fn square(points: Vec<[f64; 2]>) -> DistanceMatrix {
    let cfg = PointConfiguration::new(Space::UnitSquare, points.into_iter().map(|p| p.to_vec()).collect())
        .expect("points in the unit square");
    distances_from_points(&cfg)
}

fn line(xs: &[f64]) -> DistanceMatrix {
    DistanceMatrix::from_fn(xs.len(), |i, j| (xs[i] - xs[j]).abs()).expect("points on a line")
}

/// `d12 = a`, `d13 = b`, `d23 = c`.
pub fn triple(a: f64, b: f64, c: f64) -> DistanceMatrix {
    DistanceMatrix::new(vec![vec![0.0, a, b], vec![a, 0.0, c], vec![b, c, 0.0]]).expect("valid triple")
}

/// Sixteen points, four on each corner of the unit square.
pub fn corners16() -> DistanceMatrix {
    let corners = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]];
    square(corners.iter().flat_map(|&c| std::iter::repeat_n(c, 4)).collect())
}

/// 4 x 4 grid with the given spacing, starting at the origin.
pub fn grid16(spacing: f64) -> DistanceMatrix {
    square(grid_points(spacing))
}

fn grid_points(spacing: f64) -> Vec<[f64; 2]> {
    (0..4).flat_map(|i| (0..4).map(move |j| [i as f64 * spacing, j as f64 * spacing])).collect()
}

/// The 1/3-spaced grid, exact at the far edges.
fn thirds_grid() -> Vec<[f64; 2]> {
    let t = [0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0];
    t.iter().flat_map(|&x| t.iter().map(move |&y| [x, y])).collect()
}

/// Eight points on each of two opposite corners.
pub fn opposite_corners16() -> DistanceMatrix {
    square(opposite_points())
}

fn opposite_points() -> Vec<[f64; 2]> {
    let mut p = vec![[0.0, 0.0]; 8];
    p.extend(vec![[1.0, 1.0]; 8]);
    p
}

/// [`opposite_corners16`] with the first point moved to the centre.
pub fn opposite_corners16_moved() -> DistanceMatrix {
    let mut p = opposite_points();
    p[0] = [0.5, 0.5];
    square(p)
}

/// [`corners16`] with the first point moved to the centre.
pub fn corners16_moved() -> DistanceMatrix {
    let corners = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]];
    let mut p: Vec<[f64; 2]> = corners.iter().flat_map(|&c| std::iter::repeat_n(c, 4)).collect();
    p[0] = [0.5, 0.5];
    square(p)
}

/// The 1/3 grid with one interior point replaced by a copy of the origin.
pub fn grid16_with_duplicate() -> DistanceMatrix {
    let mut p = thirds_grid();
    p[5] = [0.0, 0.0];
    square(p)
}

/// Two similarity matrices differing only in `s_12`.
pub fn dpp_pair() -> (SimilarityMatrix, SimilarityMatrix) {
    let s = SimilarityMatrix::new(vec![vec![1.0, 0.2, 0.6], vec![0.2, 1.0, 0.7], vec![0.6, 0.7, 1.0]]).expect("PSD");
    let s_hat =
        SimilarityMatrix::new(vec![vec![1.0, 0.3, 0.6], vec![0.3, 1.0, 0.7], vec![0.6, 0.7, 1.0]]).expect("PSD");
    (s, s_hat)
}

/// Four objects in two coinciding pairs with cross distance `cross`.
pub fn two_blocks(cross: f64) -> DistanceMatrix {
    DistanceMatrix::from_fn(4, |i, j| if i / 2 == j / 2 { 0.0 } else { cross }).expect("valid blocks")
}

/// Unit square sides with diagonals `d13` and `d24`.
pub fn square_cycle(d13: f64, d24: f64) -> DistanceMatrix {
    DistanceMatrix::from_fn(4, |i, j| match (i, j) {
        (0, 2) => d13,
        (1, 3) => d24,
        _ => 1.0,
    })
    .expect("valid cycle")
}

pub fn segment(xs: &[f64]) -> DistanceMatrix {
    line(xs)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expected {
    Value { value: f64, tol: f64 },
    NegInf,
}

impl Expected {
    fn holds(&self, v: MeasureValue) -> bool {
        match *self {
            Expected::Value { value, tol } => v.is_finite() && (v.get() - value).abs() <= tol,
            Expected::NegInf => v.is_neg_inf(),
        }
    }

    fn describe(&self) -> String {
        match self {
            Expected::Value { value, tol } => format!("{value} ± {tol:e}"),
            Expected::NegInf => "-inf".to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Check {
    Value {
        measure: Measure,
        input: usize,
        expected: Expected,
    },
    /// `measure(inputs[lower]) < measure(inputs[higher])`.
    Less {
        measure: Measure,
        lower: usize,
        higher: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedInput {
    pub label: &'static str,
    pub input: Input,
}

/// One registry entry.
#[derive(Clone, Debug, PartialEq)]
pub struct RegistryCase {
    pub id: &'static str,
    pub claim: &'static str,
    pub inputs: Vec<NamedInput>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub label: String,
    pub computed: Vec<MeasureValue>,
    pub expected: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseReport {
    pub id: &'static str,
    pub claim: &'static str,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl CaseReport {
    /// Compact summary of the computed values, at most `max` checks.
    pub fn summary(&self, max: usize) -> String {
        let shown: Vec<String> = self
            .checks
            .iter()
            .take(max)
            .map(|c| c.computed.iter().map(|v| format!("{:.4}", v.get())).collect::<Vec<_>>().join("/"))
            .collect();
        let more =
            if self.checks.len() > max { format!(" (+{} more)", self.checks.len() - max) } else { String::new() };
        format!("{}{more}", shown.join(", "))
    }
}

impl RegistryCase {
    pub fn run(&self) -> Result<CaseReport> {
        let eval = |m: &Measure, i: usize| -> Result<MeasureValue> {
            match &self.inputs[i].input {
                Input::Distance(d) => m.eval_distance(d, &Default::default()),
                Input::Similarity(s) => m.eval_similarity(s),
            }
        };
        let mut checks = Vec::with_capacity(self.checks.len());
        for c in &self.checks {
            checks.push(match c {
                Check::Value { measure, input, expected } => {
                    let v = eval(measure, *input)?;
                    CheckResult {
                        label: format!("{}({})", label_of(measure), self.inputs[*input].label),
                        computed: vec![v],
                        expected: expected.describe(),
                        pass: expected.holds(v),
                    }
                }
                Check::Less { measure, lower, higher } => {
                    let lo = eval(measure, *lower)?;
                    let hi = eval(measure, *higher)?;
                    CheckResult {
                        label: format!(
                            "{}: {} < {}",
                            label_of(measure),
                            self.inputs[*lower].label,
                            self.inputs[*higher].label
                        ),
                        computed: vec![lo, hi],
                        expected: "strictly less".to_string(),
                        pass: lo < hi,
                    }
                }
            });
        }
        let pass = checks.iter().all(|c| c.pass);
        Ok(CaseReport { id: self.id, claim: self.claim, checks, pass })
    }
}

fn label_of(m: &Measure) -> String {
    match m {
        Measure::Species { q } => format!("species[q={}]", q.get()),
        Measure::Circles { t } => format!("circles[t={t}]"),
        Measure::Energy { gamma } => format!("energy[gamma={}]", gamma.get()),
        other => other.name().to_string(),
    }
}

pub const CASE_IDS: [&str; 15] = [
    "average-corners",
    "diameter-corners",
    "sum-diameter-max",
    "bottleneck-duplicate",
    "sum-bottleneck-15+1",
    "energy-duplicate",
    "hamdiv-segments",
    "vendi-monotonicity",
    "vendi-uniqueness",
    "dpp-monotonicity",
    "rke-uniqueness",
    "species-q-scan",
    "sum-bottleneck-blocks",
    "diameter-triple",
    "circles-triple",
];

/// Registry knobs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RegistryOptions {
    /// Scan Species(q) at step 0.001 instead of 0.1.
    pub species_full_resolution: bool,
}

pub fn registry_case(id: &str) -> Result<RegistryCase> {
    registry_case_with(id, RegistryOptions::default())
}

pub fn all_cases(opts: RegistryOptions) -> Vec<RegistryCase> {
    CASE_IDS.iter().map(|id| registry_case_with(id, opts).expect("built-in case")).collect()
}

fn dist(label: &'static str, d: DistanceMatrix) -> NamedInput {
    NamedInput { label, input: Input::Distance(d) }
}

fn sim(label: &'static str, s: SimilarityMatrix) -> NamedInput {
    NamedInput { label, input: Input::Similarity(s) }
}

fn value(measure: Measure, input: usize, value: f64, tol: f64) -> Check {
    Check::Value { measure, input, expected: Expected::Value { value, tol } }
}

fn circles(t: f64) -> Measure {
    Measure::from_name("circles", Params { t: Some(t), ..Params::default() }).expect("t >= 0")
}

fn species(q: f64) -> Measure {
    Measure::from_name("species", Params { q: Some(q), ..Params::default() }).expect("q valid")
}

pub fn registry_case_with(id: &str, opts: RegistryOptions) -> Result<RegistryCase> {
    use Measure::*;
    let sqrt2 = 2f64.sqrt();
    let energy1 = Measure::from_name("energy", Params::default()).expect("gamma = 1");
    let case = |claim, inputs, checks| -> RegistryCase {
        let id = CASE_IDS.iter().copied().find(|c| *c == id).expect("known id");
        RegistryCase { id, claim, inputs, checks }
    };
    Ok(match id {
        "average-corners" => case(
            "Four points per corner maximizes Average and beats the evenly spread grid",
            vec![dist("corners", corners16()), dist("grid", grid16_thirds())],
            vec![
                value(Average, 0, (64.0 + 32.0 * sqrt2) / 120.0, EXACT_TOL),
                value(Average, 0, 0.9105, 1e-3),
                value(Average, 1, 0.71, 1e-2),
                Check::Less { measure: Average, lower: 1, higher: 0 },
            ],
        ),
        "diameter-corners" => case(
            "Two stacked opposite corners and the spread grid share the largest possible Diameter",
            vec![dist("opposite-corners", opposite_corners16()), dist("grid", grid16_thirds())],
            vec![value(Diameter, 0, 1.41, QUOTED_TOL), value(Diameter, 1, 1.41, QUOTED_TOL)],
        ),
        "sum-diameter-max" => case(
            "Stacking all points on two opposite corners maximizes SumDiameter",
            vec![dist("opposite-corners", opposite_corners16()), dist("grid", grid16_thirds())],
            vec![
                value(SumDiameter, 0, 16.0 * sqrt2, EXACT_TOL),
                Check::Less { measure: SumDiameter, lower: 1, higher: 0 },
            ],
        ),
        "bottleneck-duplicate" => case(
            "A single duplicate pushes Bottleneck below a tightly packed duplicate-free grid",
            vec![dist("tight-grid", grid16(0.11)), dist("grid-with-duplicate", grid16_with_duplicate())],
            vec![
                value(Bottleneck, 0, 0.11, QUOTED_TOL),
                value(Bottleneck, 1, 0.0, 0.0),
                Check::Less { measure: Bottleneck, lower: 1, higher: 0 },
            ],
        ),
        "sum-bottleneck-15+1" => case(
            "Fifteen stacked points plus one at distance r outscore a configuration of paired duplicates",
            vec![dist("fifteen-plus-one", fifteen_plus_one(0.1)), dist("paired", paired16())],
            vec![
                value(SumBottleneck, 0, 0.1, EXACT_TOL),
                value(SumBottleneck, 1, 0.0, 0.0),
                Check::Less { measure: SumBottleneck, lower: 1, higher: 0 },
            ],
        ),
        "energy-duplicate" => case(
            "Energy is -inf as soon as one duplicate exists",
            vec![dist("tight-grid", grid16(0.11)), dist("grid-with-duplicate", grid16_with_duplicate())],
            vec![
                Check::Value { measure: energy1, input: 1, expected: Expected::NegInf },
                Check::Less { measure: energy1, lower: 1, higher: 0 },
            ],
        ),
        "hamdiv-segments" => case(
            "HamDiv cannot tell 0,0,1,1 from 0,1/3,2/3,1 on the segment",
            vec![
                dist("0,0,1,1", segment(&[0.0, 0.0, 1.0, 1.0])),
                dist("0,1/3,2/3,1", segment(&[0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0])),
            ],
            vec![value(HamDiv, 0, 2.0, 0.0), value(HamDiv, 1, 2.0, 0.0)],
        ),
        "vendi-monotonicity" => case(
            "Moving the third point further away on the circle lowers Vendi",
            vec![
                sim("angles 0,0.6,2.0", angle_similarity(&[0.0, 0.6, 2.0])),
                sim("angles 0,0.6,2.1", angle_similarity(&[0.0, 0.6, 2.1])),
            ],
            vec![
                value(Vendi, 0, 1.941, QUOTED_TOL),
                value(Vendi, 1, 1.916, QUOTED_TOL),
                Check::Less { measure: Vendi, lower: 1, higher: 0 },
            ],
        ),
        "vendi-uniqueness" => case(
            "Replacing the middle point by a copy of the first raises Vendi",
            vec![
                sim("angles 0,0.2,0.5", angle_similarity(&[0.0, 0.2, 0.5])),
                sim("angles 0,0,0.5", angle_similarity(&[0.0, 0.0, 0.5])),
            ],
            vec![
                value(Vendi, 0, 1.187, QUOTED_TOL),
                value(Vendi, 1, 1.233, QUOTED_TOL),
                Check::Less { measure: Vendi, lower: 0, higher: 1 },
            ],
        ),
        "dpp-monotonicity" => {
            let (s, s_hat) = dpp_pair();
            case(
                "Lowering one similarity lowers the determinant",
                vec![sim("S (s12 = 0.2)", s), sim("S-hat (s12 = 0.3)", s_hat)],
                vec![
                    value(Dpp, 0, 0.278, 1e-3),
                    value(Dpp, 1, 0.312, 1e-3),
                    Check::Less { measure: Dpp, lower: 0, higher: 1 },
                ],
            )
        }
        "rke-uniqueness" => case(
            "Replacing a point by a duplicate of another raises RKE",
            vec![
                sim("angles 0,1.1,1.5", angle_similarity(&[0.0, 1.1, 1.5])),
                sim("angles 0,1.5,1.5", angle_similarity(&[0.0, 1.5, 1.5])),
            ],
            vec![
                value(Rke, 0, 0.564, QUOTED_TOL),
                value(Rke, 1, 0.584, QUOTED_TOL),
                Check::Less { measure: Rke, lower: 0, higher: 1 },
            ],
        ),
        "species-q-scan" => {
            let steps = if opts.species_full_resolution { 1000 } else { 10 };
            let checks = (0..=100 * steps)
                .filter(|&k| k != steps)
                .map(|k| Check::Less { measure: species(k as f64 / steps as f64), lower: 0, higher: 1 })
                .collect();
            case(
                "The same duplicate replacement raises Species(q) for every scanned order q",
                vec![
                    sim("angles 0,1.1,1.5", angle_similarity(&[0.0, 1.1, 1.5])),
                    sim("angles 0,1.5,1.5", angle_similarity(&[0.0, 1.5, 1.5])),
                ],
                checks,
            )
        }
        "sum-bottleneck-blocks" => case(
            "Raising the distance between two duplicate pairs, or splitting a triple, does not help SumBottleneck",
            vec![
                dist("blocks, cross 1", two_blocks(1.0)),
                dist("blocks, cross 2", two_blocks(2.0)),
                dist("line 0,0,0,10", segment(&[0.0, 0.0, 0.0, 10.0])),
                dist("line 0,0,9,10", segment(&[0.0, 0.0, 9.0, 10.0])),
            ],
            vec![
                value(SumBottleneck, 0, 0.0, 0.0),
                value(SumBottleneck, 1, 0.0, 0.0),
                value(SumBottleneck, 2, 10.0, 0.0),
                value(SumBottleneck, 3, 2.0, 0.0),
            ],
        ),
        "diameter-triple" => case(
            "Raising the short side of a 2,2,1 triangle leaves Diameter and SumDiameter unchanged",
            vec![dist("2,2,1", triple(2.0, 2.0, 1.0)), dist("2,2,2", triple(2.0, 2.0, 2.0))],
            vec![
                value(Diameter, 0, 2.0, 0.0),
                value(Diameter, 1, 2.0, 0.0),
                value(SumDiameter, 0, 6.0, 0.0),
                value(SumDiameter, 1, 6.0, 0.0),
            ],
        ),
        "circles-triple" => {
            let inputs = vec![dist("4,3,2", triple(4.0, 3.0, 2.0)), dist("4,4,2", triple(4.0, 4.0, 2.0))];
            let mut checks = Vec::new();
            for (t, expect) in [(1.0, 3.0), (2.5, 2.0), (3.5, 2.0), (5.0, 1.0)] {
                checks.push(value(circles(t), 0, expect, 0.0));
                checks.push(value(circles(t), 1, expect, 0.0));
            }
            case("Raising 3 to 4 in a 4,3,2 triangle never changes #Circles", inputs, checks)
        }
        other => return Err(Error::UnknownCase(other.to_string())),
    })
}

fn grid16_thirds() -> DistanceMatrix {
    square(thirds_grid())
}

/// Fifteen points at the origin and one at `(r, 0)`.
pub fn fifteen_plus_one(r: f64) -> DistanceMatrix {
    let mut p = vec![[0.0, 0.0]; 15];
    p.push([r, 0.0]);
    square(p)
}

/// Eight distinct locations, each holding two points.
pub fn paired16() -> DistanceMatrix {
    let t = [0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0];
    let spots: Vec<[f64; 2]> = t.iter().flat_map(|&x| [[x, 0.0], [x, 1.0]]).collect();
    square(spots.iter().flat_map(|&p| [p, p]).collect())
}
