use serde::Serialize;
use serde_json::Value;

use crate::error::Result;
use crate::matrix::{DistanceMatrix, SimilarityMatrix};
use crate::measures::{Kernel, Kind, MeasureHandle};
use crate::value::MeasureValue;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Monotonicity,
    Uniqueness,
    Continuity,
    DuplicatePlacement,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Monotonicity => "monotonicity",
            Axiom::Uniqueness => "uniqueness",
            Axiom::Continuity => "continuity",
            Axiom::DuplicatePlacement => "duplicate_placement",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Violated,
    NoViolationFound,
}

/// Two inputs fed to the measure: distances, or similarities.
#[derive(Clone, Debug, PartialEq)]
pub enum ProbePair {
    Distance { a: DistanceMatrix, b: DistanceMatrix },
    Similarity { a: SimilarityMatrix, b: SimilarityMatrix },
}

impl ProbePair {
    pub fn evaluate(&self, m: &MeasureHandle) -> Result<(MeasureValue, MeasureValue)> {
        match self {
            ProbePair::Distance { a, b } => Ok((m.eval_distance(a)?, m.eval_distance(b)?)),
            ProbePair::Similarity { a, b } => Ok((m.eval_similarity(a)?, m.eval_similarity(b)?)),
        }
    }

    /// Whether the handle can consume this pair.
    pub fn fits(&self, m: &MeasureHandle) -> bool {
        match self {
            ProbePair::Distance { .. } => m.kind() == Kind::DistanceBased || m.kernel.is_some(),
            ProbePair::Similarity { .. } => m.kind() == Kind::SimilarityBased,
        }
    }

    fn rows(&self) -> (Vec<Vec<f64>>, Vec<Vec<f64>>, &'static str) {
        match self {
            ProbePair::Distance { a, b } => (a.rows().to_vec(), b.rows().to_vec(), "distance"),
            ProbePair::Similarity { a, b } => (a.rows().to_vec(), b.rows().to_vec(), "similarity"),
        }
    }
}

/// A concrete pair that exhibits the violation. Replaying it means
/// evaluating the measure on `A` and `B` again.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    /// `distance` or `similarity`.
    pub input: &'static str,
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<f64>>,
    #[serde(rename = "valueA")]
    pub value_a: MeasureValue,
    #[serde(rename = "valueB")]
    pub value_b: MeasureValue,
    pub note: String,
    #[serde(skip)]
    pair: Option<ProbePair>,
}

impl Witness {
    pub fn new(pair: ProbePair, value_a: MeasureValue, value_b: MeasureValue, note: impl Into<String>) -> Self {
        let (a, b, input) = pair.rows();
        Witness { input, a, b, value_a, value_b, note: note.into(), pair: Some(pair) }
    }

    pub fn pair(&self) -> Option<&ProbePair> {
        self.pair.as_ref()
    }

    /// Re-evaluate and compare bit for bit with the stored values.
    pub fn replays(&self, m: &MeasureHandle) -> Result<bool> {
        let pair = match &self.pair {
            Some(p) => p.clone(),
            None => match self.input {
                "similarity" => ProbePair::Similarity {
                    a: SimilarityMatrix::new(self.a.clone())?,
                    b: SimilarityMatrix::new(self.b.clone())?,
                },
                _ => ProbePair::Distance {
                    a: DistanceMatrix::new(self.a.clone())?,
                    b: DistanceMatrix::new(self.b.clone())?,
                },
            },
        };
        let (va, vb) = pair.evaluate(m)?;
        Ok(va.get().to_bits() == self.value_a.get().to_bits() && vb.get().to_bits() == self.value_b.get().to_bits())
    }
}

/// Result of one falsifier run. `NoViolationFound` is a statement about the
/// probes that were tried, never a proof.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomVerdict {
    pub measure: String,
    pub params: Value,
    pub axiom: Axiom,
    pub outcome: Outcome,
    pub witness: Option<Witness>,
    /// Random probes requested.
    pub budget: usize,
    /// Probes actually evaluated, targeted ones included.
    pub probes: usize,
    pub seed: u64,
    pub kernel: Option<Kernel>,
    /// Probes whose margin fell in `(0, 1e-12]`.
    pub inconclusive: usize,
    /// Probes skipped because the measure rejected the input.
    pub errors: usize,
    /// Smallest margin among non-violating probes.
    pub min_margin: Option<f64>,
    /// True for checks that rest on heuristic thresholds.
    pub heuristic: bool,
}

impl AxiomVerdict {
    pub fn is_violated(&self) -> bool {
        self.outcome == Outcome::Violated
    }
}
