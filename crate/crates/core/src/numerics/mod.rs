//! Planar dynamics of `P(z) = λz + z²` with `|λ| = 1`: escape-time rendering, external rays,
//! periodic points, critical orbits and the one-sided semidistance between finite samples.
//!
//! Everything here is binary64. Only bounded-type and rational rotation numbers are
//! meaningful; Cremer parameters cannot be represented in floats.

mod map;
mod orbit;
mod periodic;
mod pgm;
mod ray;
mod render;

use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::Serializer;
use thiserror::Error;

pub use map::QuadraticMap;
pub use orbit::{critical_orbit, involution_cloud, semidistance, OrbitCloud, OrbitOrigin};
pub use periodic::{periodic_points, PeriodicPoint, PeriodicPointSet, SearchGrid, MAX_PERIOD};
pub use pgm::{encode_pgm, parse_pgm, write_pgm};
pub use ray::{trace_ray, RayParams, RayTrace};
pub use render::{
    escape_time, render_julia, shade, Image, RenderParams, Viewport, DEFAULT_ESCAPE_RADIUS,
};

/// Residual bound for fixed and periodic points.
pub const RESIDUAL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("newton iteration left its trust region at level {level}")]
    NewtonDiverged { level: usize, partial: Box<RayTrace> },
    #[error("found {found} of {expected} periodic points")]
    IncompleteRootSet { found: usize, expected: usize },
    #[error("orbit left the escape radius at index {index}")]
    OverflowEscape { index: usize },
    #[error("empty point set")]
    EmptySet,
    #[error("period must be between 1 and {max}, got {period}")]
    InvalidPeriod { period: usize, max: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed PGM: {0}")]
    Pgm(String),
}

impl NumericsError {
    /// Stable name used in error reports.
    pub fn name(&self) -> &'static str {
        match self {
            Self::NewtonDiverged { .. } => "NewtonDiverged",
            Self::IncompleteRootSet { .. } => "IncompleteRootSet",
            Self::OverflowEscape { .. } => "OverflowEscape",
            Self::EmptySet => "EmptySet",
            Self::InvalidPeriod { .. } => "InvalidPeriod",
            Self::InvalidParameter(_) => "InvalidParameter",
            Self::Pgm(_) => "Pgm",
        }
    }
}

/// `[re, im]`.
pub fn to_pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn to_pairs(points: &[Complex64]) -> Vec<[f64; 2]> {
    points.iter().copied().map(to_pair).collect()
}

pub(crate) fn serialize_complex<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(2))?;
    seq.serialize_element(&z.re)?;
    seq.serialize_element(&z.im)?;
    seq.end()
}

pub(crate) fn serialize_complex_opt<S: Serializer>(
    z: &Option<Complex64>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match z {
        Some(z) => serialize_complex(z, s),
        None => s.serialize_none(),
    }
}

pub(crate) fn serialize_complex_vec<S: Serializer>(
    points: &[Complex64],
    s: S,
) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(points.len()))?;
    for z in points {
        seq.serialize_element(&to_pair(*z))?;
    }
    seq.end()
}
