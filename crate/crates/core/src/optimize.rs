//! Seeded hill climbing over point configurations.
//!
//! Each step moves one point (round-robin) to a proposal: half the time a
//! Gaussian jitter of the current position, otherwise a uniform draw from
//! the space. The move is kept only if the measure strictly increases.

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::MeasureHandle;
use crate::points::{distances_from_points, PointConfiguration, Space};
use crate::value::MeasureValue;

/// Iterations without an accepted move before the jitter scale halves.
pub const STALE_HALVING: usize = 5_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchConfig {
    pub measure: MeasureHandle,
    pub space: Space,
    pub n: usize,
    pub iterations: usize,
    /// Initial jitter standard deviation; `None` means 0.1 times the space
    /// diameter.
    pub proposal_scale: Option<f64>,
    pub restarts: usize,
    pub seed: u64,
}

impl SearchConfig {
    pub fn new(measure: MeasureHandle, space: Space, n: usize) -> Self {
        SearchConfig { measure, space, n, iterations: 20_000, proposal_scale: None, restarts: 8, seed: 0 }
    }

    pub fn scale(&self) -> f64 {
        self.proposal_scale.unwrap_or(0.1 * self.space.diameter())
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParameter(format!("n must be >= 2, got {}", self.n)));
        }
        if self.iterations == 0 || self.restarts == 0 {
            return Err(Error::InvalidParameter("iterations and restarts must be >= 1".into()));
        }
        let s = self.scale();
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::InvalidParameter(format!("proposal scale must be positive, got {s}")));
        }
        Ok(())
    }
}

/// One accepted move.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Step {
    pub iteration: usize,
    pub value: MeasureValue,
    pub moved_index: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    /// Which restart produced this trajectory.
    pub restart: usize,
    pub initial_value: MeasureValue,
    pub steps: Vec<Step>,
    pub final_config: PointConfiguration,
    pub final_value: MeasureValue,
}

impl Trajectory {
    /// `iteration,value,moved_index`, one accepted step per line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("iteration,value,moved_index\n");
        for s in &self.steps {
            let _ = writeln!(out, "{},{},{}", s.iteration, s.value, s.moved_index);
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        Ok(std::fs::write(path, self.to_csv())?)
    }
}

fn evaluate(m: &MeasureHandle, cfg: &PointConfiguration) -> Result<MeasureValue> {
    m.eval_distance(&distances_from_points(cfg))
}

fn uniform_point<R: Rng + ?Sized>(rng: &mut R, space: Space) -> Vec<f64> {
    match space {
        Space::UnitSquare => vec![rng.random::<f64>(), rng.random::<f64>()],
        Space::UnitSegment => vec![rng.random::<f64>()],
        Space::UnitCircle => vec![rng.random::<f64>() * TAU],
    }
}

fn climb(cfg: &SearchConfig, restart: usize) -> Result<Trajectory> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(restart as u64));
    let points = (0..cfg.n).map(|_| uniform_point(&mut rng, cfg.space)).collect();
    let mut current = PointConfiguration::new(cfg.space, points)?;
    let mut value = evaluate(&cfg.measure, &current)?;
    let initial_value = value;
    let mut scale = cfg.scale();
    let mut stale = 0;
    let mut steps = Vec::new();
    for it in 0..cfg.iterations {
        let i = it % cfg.n;
        let proposal = if rng.random_bool(0.5) {
            current.points()[i].iter().map(|&x| x + scale * rng.sample::<f64, _>(StandardNormal)).collect()
        } else {
            uniform_point(&mut rng, cfg.space)
        };
        let mut candidate = current.clone();
        candidate.set_point(i, proposal);
        let v = evaluate(&cfg.measure, &candidate)?;
        if v > value {
            current = candidate;
            value = v;
            stale = 0;
            steps.push(Step { iteration: it + 1, value, moved_index: i });
        } else {
            stale += 1;
            if stale == STALE_HALVING {
                scale /= 2.0;
                stale = 0;
            }
        }
    }
    Ok(Trajectory { restart, initial_value, steps, final_config: current, final_value: value })
}

/// Run every restart (in parallel) and keep the best: highest final value,
/// then lowest restart index. Deterministic for a given config.
pub fn maximize(cfg: &SearchConfig) -> Result<Trajectory> {
    cfg.validate()?;
    let runs: Vec<Result<Trajectory>> = (0..cfg.restarts).into_par_iter().map(|r| climb(cfg, r)).collect();
    let mut best: Option<Trajectory> = None;
    for run in runs {
        let t = run?;
        if best.as_ref().is_none_or(|b| t.final_value > b.final_value) {
            best = Some(t);
        }
    }
    Ok(best.expect("restarts >= 1"))
}

/// Fraction of points within `radius` of a corner of the unit square.
pub fn corner_mass(cfg: &PointConfiguration, radius: f64) -> Result<f64> {
    if cfg.space() != Space::UnitSquare {
        return Err(Error::InvalidParameter(format!("corner_mass needs unit_square points, got {}", cfg.space())));
    }
    if cfg.n() == 0 {
        return Ok(0.0);
    }
    let corners = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]];
    let near =
        cfg.points().iter().filter(|p| corners.iter().any(|c| Space::UnitSquare.distance(p, c) <= radius)).count();
    Ok(near as f64 / cfg.n() as f64)
}

const SVG_SIZE: f64 = 512.0;
const SVG_MARGIN: f64 = 32.0;

/// Static scatter plot: 512 x 512 view box, radius-4 points, the space's
/// boundary drawn.
pub fn to_svg(cfg: &PointConfiguration) -> String {
    let span = SVG_SIZE - 2.0 * SVG_MARGIN;
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {s} {s}\" width=\"{s}\" height=\"{s}\">\n",
        s = SVG_SIZE
    );
    let dot = |out: &mut String, x: f64, y: f64| {
        let _ = writeln!(out, "  <circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"4\" fill=\"black\"/>");
    };
    match cfg.space() {
        Space::UnitSquare => {
            let _ = writeln!(
                out,
                "  <rect x=\"{m}\" y=\"{m}\" width=\"{span}\" height=\"{span}\" fill=\"none\" stroke=\"gray\"/>",
                m = SVG_MARGIN
            );
            for p in cfg.points() {
                dot(&mut out, SVG_MARGIN + p[0] * span, SVG_MARGIN + (1.0 - p[1]) * span);
            }
        }
        Space::UnitCircle => {
            let c = SVG_SIZE / 2.0;
            let r = span / 2.0;
            let _ = writeln!(out, "  <circle cx=\"{c}\" cy=\"{c}\" r=\"{r}\" fill=\"none\" stroke=\"gray\"/>");
            for p in cfg.points() {
                dot(&mut out, c + r * p[0].cos(), c - r * p[0].sin());
            }
        }
        Space::UnitSegment => {
            let y = SVG_SIZE / 2.0;
            let _ = writeln!(
                out,
                "  <line x1=\"{m}\" y1=\"{y}\" x2=\"{e}\" y2=\"{y}\" stroke=\"gray\"/>",
                m = SVG_MARGIN,
                e = SVG_SIZE - SVG_MARGIN
            );
            for p in cfg.points() {
                dot(&mut out, SVG_MARGIN + p[0] * span, y);
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::Measure;

    fn search(name: &str, space: Space, n: usize, iterations: usize) -> SearchConfig {
        let m = MeasureHandle::new(name.parse::<Measure>().unwrap());
        SearchConfig { iterations, restarts: 2, seed: 11, ..SearchConfig::new(m, space, n) }
    }

    #[test]
    fn two_points_reach_the_ends() {
        for name in ["average", "diameter", "energy", "multi_dim_volume", "integral_max_clique"] {
            let t = maximize(&search(name, Space::UnitSegment, 2, 3000)).unwrap();
            let mut xs: Vec<f64> = t.final_config.points().iter().map(|p| p[0]).collect();
            xs.sort_by(f64::total_cmp);
            assert!(xs[0] < 0.01 && xs[1] > 0.99, "{name}: {xs:?}");
        }
    }

    #[test]
    fn steps_strictly_increase() {
        let t = maximize(&search("sum_bottleneck", Space::UnitSquare, 6, 2000)).unwrap();
        let mut prev = t.initial_value;
        for s in &t.steps {
            assert!(s.value > prev);
            prev = s.value;
        }
        assert_eq!(prev, t.final_value);
    }

    #[test]
    fn deterministic() {
        let cfg = search("energy", Space::UnitSquare, 5, 1000);
        assert_eq!(maximize(&cfg).unwrap(), maximize(&cfg).unwrap());
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(maximize(&search("average", Space::UnitSquare, 1, 10)).is_err());
        let big = search("ham_div", Space::UnitSegment, 19, 10);
        assert!(matches!(maximize(&big), Err(Error::InstanceTooLarge { .. })));
    }

    #[test]
    fn corner_mass_examples() {
        let corners: Vec<Vec<f64>> = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]
            .iter()
            .flat_map(|c| std::iter::repeat_n(c.to_vec(), 4))
            .collect();
        let cfg = PointConfiguration::new(Space::UnitSquare, corners).unwrap();
        assert_eq!(corner_mass(&cfg, 0.05).unwrap(), 1.0);

        let t = [0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0];
        let grid = t.iter().flat_map(|&x| t.iter().map(move |&y| vec![x, y])).collect();
        let cfg = PointConfiguration::new(Space::UnitSquare, grid).unwrap();
        assert_eq!(corner_mass(&cfg, 0.05).unwrap(), 0.25);

        let centre = PointConfiguration::new(Space::UnitSquare, vec![vec![0.5, 0.5]; 3]).unwrap();
        assert_eq!(corner_mass(&centre, 0.05).unwrap(), 0.0);
    }

    #[test]
    fn svg_shape() {
        let cfg = PointConfiguration::from_scalars(Space::UnitCircle, &[0.0, 1.0]).unwrap();
        let svg = to_svg(&cfg);
        assert!(svg.contains("viewBox=\"0 0 512 512\""));
        assert_eq!(svg.matches("r=\"4\"").count(), 2);
    }
}
