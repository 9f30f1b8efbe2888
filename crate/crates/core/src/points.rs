//! Point configurations in the three bounded spaces and the matrices they
//! induce.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{DistanceMatrix, SimilarityMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    /// `[0,1]^2` with Euclidean distance.
    UnitSquare,
    /// Angles in `[0, 2pi)` with arc (geodesic) distance in radians.
    UnitCircle,
    /// `[0,1]` with absolute difference.
    UnitSegment,
}

impl Space {
    pub fn name(self) -> &'static str {
        match self {
            Space::UnitSquare => "unit_square",
            Space::UnitCircle => "unit_circle",
            Space::UnitSegment => "unit_segment",
        }
    }

    pub fn dim(self) -> usize {
        match self {
            Space::UnitSquare => 2,
            Space::UnitCircle | Space::UnitSegment => 1,
        }
    }

    /// Largest distance between two points of the space.
    pub fn diameter(self) -> f64 {
        match self {
            Space::UnitSquare => 2f64.sqrt(),
            Space::UnitCircle => PI,
            Space::UnitSegment => 1.0,
        }
    }

    pub fn contains(self, p: &[f64]) -> bool {
        p.len() == self.dim()
            && match self {
                Space::UnitSquare | Space::UnitSegment => p.iter().all(|&x| (0.0..=1.0).contains(&x)),
                Space::UnitCircle => (0.0..TAU).contains(&p[0]),
            }
    }

    /// Map an arbitrary coordinate tuple back into the space: clamp for the
    /// square and segment, wrap for the circle.
    pub fn project(self, p: &mut [f64]) {
        match self {
            Space::UnitSquare | Space::UnitSegment => {
                for x in p.iter_mut() {
                    *x = x.clamp(0.0, 1.0);
                }
            }
            Space::UnitCircle => {
                let w = p[0].rem_euclid(TAU);
                p[0] = if w >= TAU { 0.0 } else { w };
            }
        }
    }

    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            Space::UnitSquare => (a[0] - b[0]).hypot(a[1] - b[1]),
            Space::UnitSegment => (a[0] - b[0]).abs(),
            Space::UnitCircle => {
                let diff = (a[0] - b[0]).abs();
                diff.min(TAU - diff)
            }
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Space {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit_square" => Ok(Space::UnitSquare),
            "unit_circle" => Ok(Space::UnitCircle),
            "unit_segment" => Ok(Space::UnitSegment),
            other => Err(Error::UnknownSpace(other.to_string())),
        }
    }
}

/// `n` labeled points in one of the bounded spaces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawConfiguration")]
pub struct PointConfiguration {
    space: Space,
    points: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct RawConfiguration {
    space: Space,
    points: Vec<Vec<f64>>,
}

impl TryFrom<RawConfiguration> for PointConfiguration {
    type Error = Error;
    fn try_from(raw: RawConfiguration) -> Result<Self> {
        PointConfiguration::new(raw.space, raw.points)
    }
}

impl PointConfiguration {
    pub fn new(space: Space, points: Vec<Vec<f64>>) -> Result<Self> {
        for (index, p) in points.iter().enumerate() {
            if p.len() != space.dim() {
                return Err(Error::PointArity {
                    index: index + 1,
                    got: p.len(),
                    expected: space.dim(),
                    space: space.name(),
                });
            }
            if !space.contains(p) {
                return Err(Error::PointOutOfDomain { index: index + 1, space: space.name() });
            }
        }
        Ok(PointConfiguration { space, points })
    }

    /// Convenience for one-dimensional spaces.
    pub fn from_scalars(space: Space, xs: &[f64]) -> Result<Self> {
        Self::new(space, xs.iter().map(|&x| vec![x]).collect())
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// Replace point `i`, projecting it into the space first.
    pub(crate) fn set_point(&mut self, i: usize, mut p: Vec<f64>) {
        self.space.project(&mut p);
        self.points[i] = p;
    }
}

pub fn distances_from_points(cfg: &PointConfiguration) -> DistanceMatrix {
    let space = cfg.space();
    let pts = cfg.points();
    DistanceMatrix::from_fn(cfg.n(), |i, j| space.distance(&pts[i], &pts[j]))
        .expect("distances between points always satisfy the matrix conditions")
}

/// `s_ij = cos(arc distance between angles i and j)`.
pub fn cosine_similarity_from_angles(cfg: &PointConfiguration) -> Result<SimilarityMatrix> {
    if cfg.space() != Space::UnitCircle {
        return Err(Error::InvalidParameter(format!(
            "cosine similarity needs unit_circle points, got {}",
            cfg.space()
        )));
    }
    let d = distances_from_points(cfg);
    let s = d.rows().iter().map(|row| row.iter().map(|x| x.cos()).collect()).collect();
    SimilarityMatrix::new(s)
}
