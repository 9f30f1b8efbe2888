//! Targeted witnesses tried before any random probe.
//!
//! Distance-based measures get the whole distance list: every pair is a
//! legitimate instance of its axiom, so measures that satisfy the axiom must
//! pass all of them. Similarity pairs depend on the sign of the entries, so
//! those are chosen per measure.

use crate::matrix::DistanceMatrix;
use crate::measures::{Input, Kind, Measure};

use super::generate::angle_similarity;
use super::registry::{
    corners16, corners16_moved, dpp_pair, opposite_corners16, opposite_corners16_moved, segment, square_cycle, triple,
    two_blocks,
};
use super::verdict::ProbePair;

fn dist(note: &str, a: DistanceMatrix, b: DistanceMatrix) -> (String, ProbePair) {
    (note.to_string(), ProbePair::Distance { a, b })
}

fn angles(note: &str, a: &[f64], b: &[f64]) -> (String, ProbePair) {
    (note.to_string(), ProbePair::Similarity { a: angle_similarity(a), b: angle_similarity(b) })
}

/// `(A, B)` pairs where `A` dominates `B` entrywise in distance (or is
/// entrywise lower in similarity), strictly somewhere.
pub fn monotonicity(m: &Measure) -> Vec<(String, ProbePair)> {
    match m.kind() {
        Kind::DistanceBased => vec![
            dist("triangle 2,2,1 raised to 2,2,2", triple(2.0, 2.0, 2.0), triple(2.0, 2.0, 1.0)),
            dist("duplicate pair at distance 1 raised to 2", triple(0.0, 2.0, 2.0), triple(0.0, 1.0, 1.0)),
            dist("two duplicate pairs, cross distance 1 raised to 2", two_blocks(2.0), two_blocks(1.0)),
            dist("triangle 4,3,2 with 3 raised to 4", triple(4.0, 4.0, 2.0), triple(4.0, 3.0, 2.0)),
            dist("triangle 1,2,3 with 3 raised to 4", triple(1.0, 2.0, 4.0), triple(1.0, 2.0, 3.0)),
            dist("unit 4-cycle, diagonal 1.1 raised to 1.2", square_cycle(1.2, 1.1), square_cycle(1.1, 1.1)),
        ],
        Kind::SimilarityBased => match m {
            Measure::Vendi => {
                vec![angles("circle angles 0,0.6,2.0 with the third moved to 2.1", &[0.0, 0.6, 2.1], &[0.0, 0.6, 2.0])]
            }
            _ => {
                let (s, s_hat) = dpp_pair();
                vec![("s12 lowered from 0.3 to 0.2".to_string(), ProbePair::Similarity { a: s, b: s_hat })]
            }
        },
    }
}

/// `(A, B)` pairs where `B` holds a duplicate and `A` replaces it with a
/// fresh element.
pub fn uniqueness(m: &Measure) -> Vec<(String, ProbePair)> {
    match m.kind() {
        Kind::DistanceBased => {
            let mut v = vec![
                dist("four per corner, one moved to the centre", corners16_moved(), corners16()),
                dist(
                    "eight per opposite corner, one moved to the centre",
                    opposite_corners16_moved(),
                    opposite_corners16(),
                ),
                dist("three coinciding, one moved to distance 1", triple(1.0, 1.0, 0.0), triple(0.0, 0.0, 0.0)),
                dist(
                    "line 0,0,0,10 with the third point moved to 9",
                    segment(&[0.0, 0.0, 9.0, 10.0]),
                    segment(&[0.0, 0.0, 0.0, 10.0]),
                ),
                dist(
                    "segment 0,0,1,1 with a duplicate moved to 0.5",
                    segment(&[0.0, 0.5, 1.0, 1.0]),
                    segment(&[0.0, 0.0, 1.0, 1.0]),
                ),
            ];
            if let Measure::Circles { t } = *m {
                if t > 0.0 {
                    v.push(dist("coinciding pair, one moved to t/10", segment(&[0.0, t / 10.0]), segment(&[0.0, 0.0])));
                }
            }
            v
        }
        Kind::SimilarityBased => vec![
            angles("angles 0,0,0.5 with the copy moved to 0.2", &[0.0, 0.2, 0.5], &[0.0, 0.0, 0.5]),
            angles("angles 0,1.5,1.5 with the copy moved to 1.1", &[0.0, 1.1, 1.5], &[0.0, 1.5, 1.5]),
            angles("three coinciding angles, one moved to 1", &[1.0, 0.0, 0.0], &[0.0, 0.0, 0.0]),
        ],
    }
}

/// Boundary configurations: a duplicate pair, and for #Circles a distance
/// sitting exactly on the threshold.
pub fn continuity(m: &Measure) -> Vec<Input> {
    match m.kind() {
        Kind::DistanceBased => {
            let mut v = vec![Input::Distance(triple(0.0, 1.0, 1.0))];
            if let Measure::Circles { t } = *m {
                if t > 0.0 {
                    v.push(Input::Distance(triple(t, 2.0 * t, 2.0 * t)));
                }
            }
            v
        }
        Kind::SimilarityBased => vec![Input::Similarity(angle_similarity(&[0.0, 0.0, 0.5]))],
    }
}
