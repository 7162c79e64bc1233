use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{serialize_complex, NumericsError, QuadraticMap, RESIDUAL_TOLERANCE};

/// Largest period searched; `P^n(z) = z` has `2^n` roots.
pub const MAX_PERIOD: usize = 12;

/// Square grid of Newton seeds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchGrid {
    pub center: Complex64,
    pub half_width: f64,
    pub per_side: usize,
}

impl SearchGrid {
    /// Covers the filled Julia set, which lies within distance 2 of the critical point.
    pub fn covering(map: &QuadraticMap, per_side: usize) -> Self {
        Self {
            center: map.critical_point(),
            half_width: 2.0,
            per_side,
        }
    }

    fn seeds(&self) -> Vec<Complex64> {
        let n = self.per_side.max(1);
        let step = 2.0 * self.half_width / n as f64;
        (0..n * n)
            .map(|i| {
                let (row, col) = (i / n, i % n);
                self.center
                    + Complex64::new(
                        -self.half_width + (col as f64 + 0.5) * step,
                        -self.half_width + (row as f64 + 0.5) * step,
                    )
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PeriodicPoint {
    #[serde(serialize_with = "serialize_complex")]
    pub z: Complex64,
    /// `(P^n)'(z)`.
    #[serde(serialize_with = "serialize_complex")]
    pub multiplier: Complex64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodicPointSet {
    pub period: usize,
    pub expected: usize,
    pub complete: bool,
    pub points: Vec<PeriodicPoint>,
}

impl PeriodicPointSet {
    /// Points whose exact period is `period`, not a proper divisor of it.
    pub fn primitive(&self, map: &QuadraticMap) -> Vec<PeriodicPoint> {
        self.points
            .iter()
            .filter(|p| {
                (1..self.period)
                    .filter(|&d| self.period.is_multiple_of(d))
                    .all(|d| (map.iterate(p.z, d) - p.z).norm() > 1e-6)
            })
            .copied()
            .collect()
    }

    pub fn nearest(&self, z: Complex64) -> Option<&PeriodicPoint> {
        self.points
            .iter()
            .min_by(|a, b| (a.z - z).norm().total_cmp(&(b.z - z).norm()))
    }
}

/// Newton on `P^n(z) − z`, deflated by the roots already known.
fn deflated_newton(map: &QuadraticMap, n: usize, seed: Complex64, known: &[Complex64]) -> Option<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let mut z = seed;
    for _ in 0..200 {
        let (pz, dz) = map.iterate_with_derivative(z, n);
        let g = pz - z;
        if !g.is_finite() || g.norm() > 1e6 {
            return None;
        }
        if g.norm() == 0.0 {
            return Some(z);
        }
        let mut ratio = (dz - one) / g;
        for r in known {
            ratio -= one / (z - r);
        }
        let step = one / ratio;
        if !step.is_finite() {
            return None;
        }
        z -= step;
        if step.norm() <= 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    // Undeflated polish.
    for _ in 0..3 {
        let (pz, dz) = map.iterate_with_derivative(z, n);
        let step = (pz - z) / (dz - one);
        if step.is_finite() {
            z -= step;
        }
    }
    let residual = (map.iterate(z, n) - z).norm();
    (residual < RESIDUAL_TOLERANCE).then_some(z)
}

fn lex(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Sorts and drops points within `tol` of an earlier kept point.
fn merge(mut pts: Vec<Complex64>, tol: f64) -> Vec<Complex64> {
    pts.sort_by(lex);
    let mut kept: Vec<Complex64> = Vec::with_capacity(pts.len());
    for z in pts {
        let dup = kept
            .iter()
            .rev()
            .take_while(|k| z.re - k.re <= tol)
            .any(|k| (k - z).norm() <= tol);
        if !dup {
            kept.push(z);
        }
    }
    kept
}

/// Fixed points of `P^n`. Seeds run in parallel; a second pass deflates against the roots
/// found so far and repeats while it keeps finding new ones.
pub fn periodic_points(
    map: &QuadraticMap,
    n: usize,
    grid: &SearchGrid,
) -> Result<PeriodicPointSet, NumericsError> {
    if n == 0 || n > MAX_PERIOD {
        return Err(NumericsError::InvalidPeriod {
            period: n,
            max: MAX_PERIOD,
        });
    }
    let expected = 1usize << n;
    let seeds = grid.seeds();
    let mut roots = merge(
        seeds
            .par_iter()
            .filter_map(|&s| deflated_newton(map, n, s, &[]))
            .collect(),
        RESIDUAL_TOLERANCE,
    );
    while roots.len() < expected {
        let known = roots.clone();
        let fresh: Vec<Complex64> = seeds
            .par_iter()
            .filter_map(|&s| deflated_newton(map, n, s, &known))
            .filter(|z| known.iter().all(|k| (k - z).norm() > RESIDUAL_TOLERANCE))
            .collect();
        if fresh.is_empty() {
            break;
        }
        roots.extend(fresh);
        roots = merge(roots, RESIDUAL_TOLERANCE);
    }
    roots.truncate(expected);
    let complete = roots.len() == expected;
    if !complete {
        log::warn!(
            "{}",
            NumericsError::IncompleteRootSet {
                found: roots.len(),
                expected
            }
        );
    }
    let points = roots
        .into_iter()
        .map(|z| PeriodicPoint {
            z,
            multiplier: map.iterate_with_derivative(z, n).1,
        })
        .collect();
    Ok(PeriodicPointSet {
        period: n,
        expected,
        complete,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn period_one_is_the_fixed_points() {
        let p = QuadraticMap::golden_mean();
        let set = periodic_points(&p, 1, &SearchGrid::covering(&p, 8)).unwrap();
        assert!(set.complete);
        for f in p.fixed_points() {
            assert!(set.points.iter().any(|q| (q.z - f).norm() < 1e-9));
        }
    }

    #[test]
    fn period_two_against_quadratic_formula() {
        // With u = z + λ/2 the 2-cycle solves u² + u + 1 + c = 0.
        let p = QuadraticMap::from_rotation(0.27);
        let c = p.conjugate_parameter();
        let disc = (1.0 - 4.0 * (1.0 + c)).sqrt();
        let half = p.lambda() / 2.0;
        let cycle = [(-1.0 + disc) / 2.0 - half, (-1.0 - disc) / 2.0 - half];
        let set = periodic_points(&p, 2, &SearchGrid::covering(&p, 8)).unwrap();
        assert!(set.complete);
        assert_eq!(set.points.len(), 4);
        for z in cycle.into_iter().chain(p.fixed_points()) {
            assert!(set.points.iter().any(|q| (q.z - z).norm() < 1e-9), "{z}");
        }
        assert_eq!(set.primitive(&p).len(), 2);
    }

    #[test]
    fn residuals_and_completeness() {
        let p = QuadraticMap::golden_mean();
        for n in 3..=6 {
            let set = periodic_points(&p, n, &SearchGrid::covering(&p, 16)).unwrap();
            assert!(set.complete, "n = {n}: {}", set.points.len());
            for q in &set.points {
                assert!((p.iterate(q.z, n) - q.z).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn bad_period() {
        let p = QuadraticMap::golden_mean();
        let g = SearchGrid::covering(&p, 4);
        assert!(matches!(periodic_points(&p, 0, &g), Err(NumericsError::InvalidPeriod { .. })));
        assert!(matches!(periodic_points(&p, 13, &g), Err(NumericsError::InvalidPeriod { .. })));
    }
}
