//! The measure-by-axiom property matrix, and comparison against the bundled
//! expectation.

use serde::{Deserialize, Serialize};

use crate::measures::MeasureHandle;

use super::checks::{check_continuity, check_monotonicity, check_uniqueness, default_continuity_witnesses};
use super::verdict::{Axiom, AxiomVerdict};

/// Expected pattern, one row per measure; `true` means the axiom holds.
pub const EXPECTED_PROPERTIES_JSON: &str = include_str!("../../data/expected_properties.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedRow {
    pub measure: String,
    pub monotonicity: bool,
    pub uniqueness: bool,
    pub continuity: bool,
}

impl ExpectedRow {
    pub fn get(&self, axiom: Axiom) -> Option<bool> {
        match axiom {
            Axiom::Monotonicity => Some(self.monotonicity),
            Axiom::Uniqueness => Some(self.uniqueness),
            Axiom::Continuity => Some(self.continuity),
            Axiom::DuplicatePlacement => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedTable {
    pub measures: Vec<ExpectedRow>,
}

impl ExpectedTable {
    pub fn bundled() -> Self {
        serde_json::from_str(EXPECTED_PROPERTIES_JSON).expect("bundled table parses")
    }

    pub fn row(&self, measure: &str) -> Option<&ExpectedRow> {
        self.measures.iter().find(|r| r.measure == measure)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyRow {
    pub measure: String,
    pub label: String,
    pub monotonicity: AxiomVerdict,
    pub uniqueness: AxiomVerdict,
    pub continuity: AxiomVerdict,
}

impl PropertyRow {
    pub fn verdicts(&self) -> [&AxiomVerdict; 3] {
        [&self.monotonicity, &self.uniqueness, &self.continuity]
    }

    /// `(holds?)` per axiom: no violation found counts as holding.
    pub fn pattern(&self) -> [bool; 3] {
        self.verdicts().map(|v| !v.is_violated())
    }
}

/// A cell where the run disagrees with the expectation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub measure: String,
    pub axiom: Axiom,
    pub expected_holds: bool,
    pub found_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyMatrix {
    pub budget: usize,
    pub seed: u64,
    pub rows: Vec<PropertyRow>,
}

/// Run all three falsifiers for each measure. Continuity uses the targeted
/// boundary witnesses plus `budget / directions` random witnesses, so each
/// axiom sees roughly `budget` probes.
pub fn property_matrix(measures: &[MeasureHandle], budget: usize, seed: u64) -> PropertyMatrix {
    let directions = super::checks::ContinuityConfig::default().directions;
    let rows = measures
        .iter()
        .map(|m| {
            let witnesses = default_continuity_witnesses(m, budget.div_ceil(directions), seed);
            PropertyRow {
                measure: m.name().to_string(),
                label: m.measure.label().to_string(),
                monotonicity: check_monotonicity(m, budget, seed),
                uniqueness: check_uniqueness(m, budget, seed),
                continuity: check_continuity(m, &witnesses, seed),
            }
        })
        .collect();
    PropertyMatrix { budget, seed, rows }
}

const AXIOMS: [Axiom; 3] = [Axiom::Monotonicity, Axiom::Uniqueness, Axiom::Continuity];

impl PropertyMatrix {
    /// Cells that differ from `expected`. Measures missing from the
    /// expectation are ignored.
    pub fn mismatches(&self, expected: &ExpectedTable) -> Vec<Mismatch> {
        let mut out = Vec::new();
        for row in &self.rows {
            let Some(exp) = expected.row(&row.measure) else { continue };
            for (axiom, found) in AXIOMS.iter().zip(row.pattern()) {
                let want = exp.get(*axiom).expect("table axioms");
                if want != found {
                    out.push(Mismatch {
                        measure: row.measure.clone(),
                        axiom: *axiom,
                        expected_holds: want,
                        found_holds: found,
                    });
                }
            }
        }
        out
    }

    /// Aligned plain-text table with ✓ / ✗ cells.
    pub fn to_text(&self) -> String {
        let head = ["Measure", "Monotonicity", "Uniqueness", "Continuity"];
        let w0 = self.rows.iter().map(|r| r.label.chars().count()).chain([head[0].len()]).max().unwrap_or(0);
        let mut out = format!("{:<w0$}  {:<12}  {:<10}  {:<10}\n", head[0], head[1], head[2], head[3]);
        for r in &self.rows {
            let [m, u, c] = r.pattern().map(|ok| if ok { "✓" } else { "✗" });
            out.push_str(&format!("{:<w0$}  {:<12}  {:<10}  {:<10}\n", r.label, m, u, c));
        }
        out
    }
}
