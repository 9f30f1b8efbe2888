//! Every measure behind one name-addressable handle.

pub mod hard;
pub mod poly;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::{rbf_similarity_from_distances, DistanceMatrix, SimilarityMatrix};
use crate::value::MeasureValue;

pub use hard::Limits;
pub use poly::{EnergyExponent, SpeciesOrder};

/// What a measure consumes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    DistanceBased,
    SimilarityBased,
}

/// A measure together with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Measure {
    Average,
    SumAverage,
    Diameter,
    SumDiameter,
    Bottleneck,
    SumBottleneck,
    Energy { gamma: EnergyExponent },
    Circles { t: f64 },
    Unique,
    UniquePlusBounded,
    HamDiv,
    Vendi,
    Dpp,
    Rke,
    Species { q: SpeciesOrder },
    MultiDimVolume,
    MultiDimVolumeNormalized,
    IntegralMaxClique,
}

/// Optional measure parameters as they arrive from a command line.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Params {
    pub gamma: Option<f64>,
    pub q: Option<f64>,
    pub t: Option<f64>,
}

pub const DEFAULT_GAMMA: f64 = 1.0;
pub const DEFAULT_Q: f64 = 2.0;
pub const DEFAULT_T: f64 = 1.0;

const NAMES: [&str; 18] = [
    "average",
    "sum_average",
    "diameter",
    "sum_diameter",
    "bottleneck",
    "sum_bottleneck",
    "energy",
    "circles",
    "unique",
    "unique_plus_bounded",
    "ham_div",
    "vendi",
    "dpp",
    "rke",
    "species",
    "multi_dim_volume",
    "multi_dim_volume_normalized",
    "integral_max_clique",
];

impl Measure {
    /// All accepted measure names.
    pub fn names() -> &'static [&'static str] {
        &NAMES
    }

    /// Build a measure from its name. Parameters a measure does not take are
    /// rejected; missing ones fall back to `gamma = 1`, `q = 2`, `t = 1`.
    pub fn from_name(name: &str, params: Params) -> Result<Measure> {
        let unused = |what: &str, given: Option<f64>| -> Result<()> {
            match given {
                Some(_) => Err(Error::InvalidParameter(format!("`{name}` takes no `{what}` parameter"))),
                None => Ok(()),
            }
        };
        let takes = match name {
            "energy" => "gamma",
            "species" => "q",
            "circles" => "t",
            _ => "",
        };
        if takes != "gamma" {
            unused("gamma", params.gamma)?;
        }
        if takes != "q" {
            unused("q", params.q)?;
        }
        if takes != "t" {
            unused("t", params.t)?;
        }
        Ok(match name {
            "average" => Measure::Average,
            "sum_average" => Measure::SumAverage,
            "diameter" => Measure::Diameter,
            "sum_diameter" => Measure::SumDiameter,
            "bottleneck" => Measure::Bottleneck,
            "sum_bottleneck" => Measure::SumBottleneck,
            "energy" => Measure::Energy { gamma: EnergyExponent::new(params.gamma.unwrap_or(DEFAULT_GAMMA))? },
            "circles" => {
                let t = params.t.unwrap_or(DEFAULT_T);
                if !(t.is_finite() && t >= 0.0) {
                    return Err(Error::InvalidParameter(format!("threshold must be >= 0, got {t}")));
                }
                Measure::Circles { t }
            }
            "unique" => Measure::Unique,
            "unique_plus_bounded" => Measure::UniquePlusBounded,
            "ham_div" => Measure::HamDiv,
            "vendi" => Measure::Vendi,
            "dpp" => Measure::Dpp,
            "rke" => Measure::Rke,
            "species" => Measure::Species { q: SpeciesOrder::new(params.q.unwrap_or(DEFAULT_Q))? },
            "multi_dim_volume" => Measure::MultiDimVolume,
            "multi_dim_volume_normalized" => Measure::MultiDimVolumeNormalized,
            "integral_max_clique" => Measure::IntegralMaxClique,
            other => return Err(Error::UnknownMeasure(other.to_string())),
        })
    }

    /// The sixteen measures of the property table, with `gamma = 1`,
    /// `t = 1` and `q = 2`.
    pub fn table() -> Vec<Measure> {
        let p = Params::default();
        [
            "average",
            "sum_average",
            "diameter",
            "sum_diameter",
            "bottleneck",
            "sum_bottleneck",
            "energy",
            "circles",
            "unique",
            "ham_div",
            "vendi",
            "dpp",
            "rke",
            "species",
            "multi_dim_volume",
            "integral_max_clique",
        ]
        .iter()
        .map(|n| Measure::from_name(n, p).expect("built-in names parse"))
        .collect()
    }

    pub fn name(&self) -> &'static str {
        match self {
            Measure::Average => "average",
            Measure::SumAverage => "sum_average",
            Measure::Diameter => "diameter",
            Measure::SumDiameter => "sum_diameter",
            Measure::Bottleneck => "bottleneck",
            Measure::SumBottleneck => "sum_bottleneck",
            Measure::Energy { .. } => "energy",
            Measure::Circles { .. } => "circles",
            Measure::Unique => "unique",
            Measure::UniquePlusBounded => "unique_plus_bounded",
            Measure::HamDiv => "ham_div",
            Measure::Vendi => "vendi",
            Measure::Dpp => "dpp",
            Measure::Rke => "rke",
            Measure::Species { .. } => "species",
            Measure::MultiDimVolume => "multi_dim_volume",
            Measure::MultiDimVolumeNormalized => "multi_dim_volume_normalized",
            Measure::IntegralMaxClique => "integral_max_clique",
        }
    }

    /// Human label used in tables.
    pub fn label(&self) -> &'static str {
        match self {
            Measure::Average => "Average",
            Measure::SumAverage => "SumAverage",
            Measure::Diameter => "Diameter",
            Measure::SumDiameter => "SumDiameter",
            Measure::Bottleneck => "Bottleneck",
            Measure::SumBottleneck => "SumBottleneck",
            Measure::Energy { .. } => "Energy",
            Measure::Circles { .. } => "#Circles",
            Measure::Unique => "Unique",
            Measure::UniquePlusBounded => "Unique+M'",
            Measure::HamDiv => "HamDiv",
            Measure::Vendi => "Vendi",
            Measure::Dpp => "DPP",
            Measure::Rke => "RKE",
            Measure::Species { .. } => "Species",
            Measure::MultiDimVolume => "MultiDimVolume",
            Measure::MultiDimVolumeNormalized => "MultiDimVolume (normalized)",
            Measure::IntegralMaxClique => "IntegralMaxClique",
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            Measure::Vendi | Measure::Dpp | Measure::Rke | Measure::Species { .. } => Kind::SimilarityBased,
            _ => Kind::DistanceBased,
        }
    }

    /// Whether evaluation runs an exponential exact solver.
    pub fn is_hard(&self) -> bool {
        matches!(
            self,
            Measure::Circles { .. }
                | Measure::HamDiv
                | Measure::MultiDimVolume
                | Measure::MultiDimVolumeNormalized
                | Measure::IntegralMaxClique
        )
    }

    /// Parameters as a JSON object, for reports.
    pub fn params_json(&self) -> Value {
        match self {
            Measure::Energy { gamma } => json!({ "gamma": gamma.get() }),
            Measure::Circles { t } => json!({ "t": t }),
            Measure::Species { q } => json!({ "q": q.get() }),
            _ => json!({}),
        }
    }

    pub fn eval_distance(&self, d: &DistanceMatrix, limits: &Limits) -> Result<MeasureValue> {
        match *self {
            Measure::Average => poly::average(d),
            Measure::SumAverage => poly::sum_average(d),
            Measure::Diameter => poly::diameter(d),
            Measure::SumDiameter => poly::sum_diameter(d),
            Measure::Bottleneck => poly::bottleneck(d),
            Measure::SumBottleneck => poly::sum_bottleneck(d),
            Measure::Energy { gamma } => poly::energy(d, gamma),
            Measure::Circles { t } => hard::circles_with(d, t, limits),
            Measure::Unique => poly::unique(d),
            Measure::UniquePlusBounded => poly::unique_plus_bounded(d),
            Measure::HamDiv => hard::ham_div_with(d, limits),
            Measure::MultiDimVolume => hard::multi_dim_volume_with(d, limits),
            Measure::MultiDimVolumeNormalized => hard::multi_dim_volume_normalized_with(d, limits),
            Measure::IntegralMaxClique => hard::integral_max_clique_with(d, limits),
            Measure::Vendi | Measure::Dpp | Measure::Rke | Measure::Species { .. } => Err(Error::InvalidParameter(
                format!("`{}` is similarity-based; give a similarity matrix or a kernel", self.name()),
            )),
        }
    }

    pub fn eval_similarity(&self, s: &SimilarityMatrix) -> Result<MeasureValue> {
        match *self {
            Measure::Vendi => poly::vendi_score(s),
            Measure::Dpp => poly::dpp_det(s),
            Measure::Rke => poly::rke(s),
            Measure::Species { q } => poly::species(s, q),
            _ => Err(Error::InvalidParameter(format!("`{}` is distance-based; it needs distances", self.name()))),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Measure::from_name(s, Params::default())
    }
}

/// How distances become similarities for similarity-based measures.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kernel", rename_all = "snake_case")]
pub enum Kernel {
    /// `s_ij = cos(d_ij)`; on circle angles this is the cosine kernel.
    Cosine,
    /// `s_ij = exp(-d_ij^2 / sigma^2)`.
    Rbf { sigma: f64 },
}

impl Kernel {
    pub fn similarity(&self, d: &DistanceMatrix) -> Result<SimilarityMatrix> {
        match *self {
            Kernel::Cosine => {
                let rows = d.rows().iter().map(|r| r.iter().map(|x| x.cos()).collect()).collect();
                SimilarityMatrix::new(rows)
            }
            Kernel::Rbf { sigma } => rbf_similarity_from_distances(d, sigma),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Kernel::Cosine => "cosine",
            Kernel::Rbf { .. } => "rbf",
        }
    }
}

/// A validated input of either kind.
#[derive(Clone, Debug, PartialEq)]
pub enum Input {
    Distance(DistanceMatrix),
    Similarity(SimilarityMatrix),
}

impl Input {
    pub fn n(&self) -> usize {
        match self {
            Input::Distance(d) => d.n(),
            Input::Similarity(s) => s.n(),
        }
    }
}

/// A measure plus everything needed to evaluate it: the kernel for
/// similarity-based measures fed distances, and the exact-solver limits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MeasureHandle {
    pub measure: Measure,
    pub kernel: Option<Kernel>,
    pub limits: Limits,
}

impl MeasureHandle {
    pub fn new(measure: Measure) -> Self {
        MeasureHandle { measure, kernel: None, limits: Limits::default() }
    }

    pub fn with_kernel(mut self, kernel: Kernel) -> Self {
        self.kernel = Some(kernel);
        self
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn name(&self) -> &'static str {
        self.measure.name()
    }

    pub fn kind(&self) -> Kind {
        self.measure.kind()
    }

    /// Evaluate on distances, going through the kernel if the measure is
    /// similarity-based. Without a kernel that is an error, never a silent
    /// default.
    pub fn eval_distance(&self, d: &DistanceMatrix) -> Result<MeasureValue> {
        match (self.kind(), self.kernel) {
            (Kind::DistanceBased, _) => self.measure.eval_distance(d, &self.limits),
            (Kind::SimilarityBased, Some(k)) => self.measure.eval_similarity(&k.similarity(d)?),
            (Kind::SimilarityBased, None) => Err(Error::InvalidParameter(format!(
                "`{}` on distance input needs an explicit kernel (cosine or rbf)",
                self.name()
            ))),
        }
    }

    pub fn eval_similarity(&self, s: &SimilarityMatrix) -> Result<MeasureValue> {
        self.measure.eval_similarity(s)
    }

    pub fn evaluate(&self, input: &Input) -> Result<MeasureValue> {
        match input {
            Input::Distance(d) => self.eval_distance(d),
            Input::Similarity(s) => self.eval_similarity(s),
        }
    }
}

impl From<Measure> for MeasureHandle {
    fn from(m: Measure) -> Self {
        MeasureHandle::new(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for &name in Measure::names() {
            let m: Measure = name.parse().unwrap();
            assert_eq!(m.name(), name);
        }
        assert!(matches!("nope".parse::<Measure>(), Err(Error::UnknownMeasure(_))));
        assert_eq!(Measure::table().len(), 16);
    }

    #[test]
    fn parameters_checked() {
        let p = Params { gamma: Some(2.0), ..Params::default() };
        assert!(Measure::from_name("average", p).is_err());
        assert!(Measure::from_name("energy", p).is_ok());
        let q1 = Params { q: Some(1.0), ..Params::default() };
        assert_eq!(Measure::from_name("species", q1).unwrap_err(), Error::InvalidOrder(1.0));
    }

    #[test]
    fn kernel_is_required() {
        let d = DistanceMatrix::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let h = MeasureHandle::new(Measure::Rke);
        assert!(h.eval_distance(&d).is_err());
        let v = h.with_kernel(Kernel::Rbf { sigma: 1.0 }).eval_distance(&d).unwrap().get();
        let s = (-1f64).exp();
        assert!((v - -((2.0 + 2.0 * s * s) / 4.0f64).ln()).abs() < 1e-12);
    }
}
