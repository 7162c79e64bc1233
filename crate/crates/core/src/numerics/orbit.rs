use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{serialize_complex_vec, NumericsError, QuadraticMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OrbitOrigin {
    #[serde(rename = "critical orbit")]
    CriticalOrbit,
    #[serde(rename = "preimage cloud")]
    PreimageCloud,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitCloud {
    pub origin: OrbitOrigin,
    #[serde(serialize_with = "serialize_complex_vec")]
    pub points: Vec<Complex64>,
}

impl OrbitCloud {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn max_modulus(&self) -> f64 {
        self.points.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// `P(c), P²(c), …`, `count` points in all.
pub fn critical_orbit(map: &QuadraticMap, count: usize, escape_radius: f64) -> Result<OrbitCloud, NumericsError> {
    if count == 0 {
        return Err(NumericsError::EmptySet);
    }
    let mut points = Vec::with_capacity(count);
    let mut z = map.critical_point();
    for index in 0..count {
        z = map.evaluate(z);
        if z.norm().is_nan() || z.norm() > escape_radius {
            return Err(NumericsError::OverflowEscape { index });
        }
        points.push(z);
    }
    Ok(OrbitCloud {
        origin: OrbitOrigin::CriticalOrbit,
        points,
    })
}

/// Pointwise image under `z ↦ −λ − z`.
pub fn involution_cloud(map: &QuadraticMap, cloud: &OrbitCloud) -> OrbitCloud {
    OrbitCloud {
        origin: OrbitOrigin::PreimageCloud,
        points: cloud.points.iter().map(|&z| map.involution(z)).collect(),
    }
}

/// Distance from `a` to the nearest point of `sorted` (sorted by real part).
fn nearest_distance(sorted: &[Complex64], a: Complex64) -> f64 {
    let start = sorted.partition_point(|b| b.re < a.re);
    let mut best = f64::INFINITY;
    for b in &sorted[start..] {
        if b.re - a.re >= best {
            break;
        }
        best = best.min((b - a).norm());
    }
    for b in sorted[..start].iter().rev() {
        if a.re - b.re >= best {
            break;
        }
        best = best.min((b - a).norm());
    }
    best
}

/// `max_{a∈A} min_{b∈B} |a − b|`.
pub fn semidistance(a: &[Complex64], b: &[Complex64]) -> Result<f64, NumericsError> {
    if a.is_empty() || b.is_empty() {
        return Err(NumericsError::EmptySet);
    }
    let mut sorted = b.to_vec();
    sorted.sort_by(|x, y| x.re.total_cmp(&y.re));
    Ok(a.par_iter()
        .map(|&z| nearest_distance(&sorted, z))
        .reduce(|| 0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn brute(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter()
            .map(|x| b.iter().map(|y| (x - y).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    }

    #[test]
    fn semidistance_examples() {
        assert_eq!(semidistance(&[c(0.0, 0.0)], &[c(3.0, 0.0), c(4.0, 0.0)]).unwrap(), 3.0);
        let a = [c(0.0, 0.0), c(1.0, 1.0)];
        assert_eq!(semidistance(&a, &a).unwrap(), 0.0);
        let b = [c(0.0, 0.0), c(1.0, 1.0), c(5.0, 0.0)];
        assert_eq!(semidistance(&a, &b).unwrap(), 0.0);
        assert!(semidistance(&b, &a).unwrap() > 0.0);
        assert!(matches!(semidistance(&[], &a), Err(NumericsError::EmptySet)));
        assert!(matches!(semidistance(&a, &[]), Err(NumericsError::EmptySet)));
    }

    #[test]
    fn pruned_search_matches_brute_force() {
        let p = QuadraticMap::golden_mean();
        let orbit = critical_orbit(&p, 2000, 3.0).unwrap();
        let (a, b) = orbit.points.split_at(700);
        assert_eq!(semidistance(a, b).unwrap(), brute(a, b));
        assert_eq!(semidistance(b, a).unwrap(), brute(b, a));
    }

    #[test]
    fn orbit_basics() {
        let p = QuadraticMap::golden_mean();
        let orbit = critical_orbit(&p, 1000, 3.0).unwrap();
        let l = p.lambda();
        assert!((orbit.points[0] + l * l / 4.0).norm() < 1e-15);
        for w in orbit.points.windows(2) {
            assert!((p.evaluate(w[0]) - w[1]).norm() < 1e-12);
        }
        assert!(orbit.max_modulus() < 2.0);
        let mirrored = involution_cloud(&p, &orbit);
        assert_eq!(mirrored.origin, OrbitOrigin::PreimageCloud);
        for (z, w) in orbit.points.iter().zip(&mirrored.points) {
            assert!((p.evaluate(*z) - p.evaluate(*w)).norm() < 1e-12);
        }
    }

    #[test]
    fn escaping_orbit_is_reported() {
        let p = QuadraticMap::golden_mean();
        assert!(matches!(
            critical_orbit(&p, 10, 0.1),
            Err(NumericsError::OverflowEscape { index: 0 })
        ));
        assert!(matches!(critical_orbit(&p, 0, 3.0), Err(NumericsError::EmptySet)));
    }
}
