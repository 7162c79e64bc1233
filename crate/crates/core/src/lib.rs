//! Symbolic pullback combinatorics and planar dynamics of quadratic polynomials
//! `P(z) = e^{2πiα} z + z²` with an irrationally indifferent fixed point at the origin.
//!
//! - [`circle`]: exact angle doubling, critical leaves, rotational cycles.
//! - [`symbolic`]: itineraries of pullbacks, the trees `A_n`, strings and construction plans.
//! - [`numerics`]: escape-time rendering, external rays, periodic points, critical orbits.
//! - [`cli`]: the command-line front end and figure presets.

pub mod circle;
pub mod cli;
pub mod contfrac;
pub mod numerics;
pub mod symbolic;
