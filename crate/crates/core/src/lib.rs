#![allow(clippy::needless_range_loop)]

//! Diversity measures over pairwise distances.
//!
//! Inputs are validated [`DistanceMatrix`] or [`SimilarityMatrix`] values.
//! Polynomial measures live in [`measures::poly`], the exact exponential
//! solvers in [`measures::hard`], the axiom falsifiers and the
//! counterexample registry in [`axioms`], and the hill-climbing maximizer in
//! [`optimize`].

pub mod axioms;
pub mod cli;
mod error;
pub mod io;
mod linalg;
pub mod matrix;
pub mod measures;
pub mod optimize;
pub mod points;
mod value;

pub use error::{Error, Result};
pub use matrix::{
    duplicate_classes, validate_distance_matrix, validate_similarity_matrix, DistanceMatrix, DuplicateClasses,
    SimilarityMatrix,
};
pub use measures::{Input, Kernel, Kind, Measure, MeasureHandle, Params};
pub use points::{cosine_similarity_from_angles, distances_from_points, PointConfiguration, Space};
pub use value::MeasureValue;
