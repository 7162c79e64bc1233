use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use super::{serialize_complex_opt, serialize_complex_vec, NumericsError, QuadraticMap};
use crate::circle::Angle;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RayParams {
    /// Number of potential-halving levels.
    pub depth: usize,
    pub steps_per_level: usize,
    /// External radius of the first point.
    pub start_radius: f64,
    /// Successive levels closer than this count as landed.
    pub landing_tolerance: f64,
    pub max_newton: usize,
    /// How many times a step may be halved before giving up.
    pub max_bisections: usize,
}

impl Default for RayParams {
    fn default() -> Self {
        Self {
            depth: 60,
            steps_per_level: 8,
            start_radius: 1e5,
            landing_tolerance: 1e-11,
            max_newton: 64,
            max_bisections: 24,
        }
    }
}

/// Points of an external ray from the far field inwards.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RayTrace {
    pub angle: Angle,
    pub depth: usize,
    #[serde(serialize_with = "serialize_complex_vec")]
    pub points: Vec<Complex64>,
    /// `levels[k]` indexes the point at potential `log R / 2^k`. Tracing stops early once
    /// the ray has landed, so this may be shorter than `depth + 1`.
    #[serde(skip)]
    pub levels: Vec<usize>,
    #[serde(serialize_with = "serialize_complex_opt")]
    pub landing_estimate: Option<Complex64>,
}

impl RayTrace {
    /// The point at integer level `k`.
    pub fn level_point(&self, k: usize) -> Option<Complex64> {
        self.levels.get(k).map(|&i| self.points[i])
    }

    pub fn level_points(&self) -> Vec<Complex64> {
        self.levels.iter().map(|&i| self.points[i]).collect()
    }

    /// Deepest point reached.
    pub fn endpoint(&self) -> Option<Complex64> {
        self.points.last().copied()
    }
}

/// Approximate inverse of the Böttcher map near infinity.
fn inverse_bottcher(map: &QuadraticMap, w: Complex64) -> Complex64 {
    w - map.conjugate_parameter() / (2.0 * w) - map.lambda() / 2.0
}

/// External radius beyond which ray points are seeded from the inverse Böttcher map.
const FAR_FIELD: f64 = 8.0;

/// Newton steps below this (relative) size count as converged once they stop shrinking.
const NOISE_FLOOR: f64 = 1e-10;

/// `(P^n(z), (P^n)'(z))` with the derivative as `mantissa · 2^exponent`, since deep rays
/// overflow binary64.
fn iterate_scaled(map: &QuadraticMap, mut z: Complex64, n: usize) -> (Complex64, Complex64, i32) {
    let mut dz = Complex64::new(1.0, 0.0);
    let mut exponent = 0i32;
    for _ in 0..n {
        dz *= map.derivative(z);
        z = map.evaluate(z);
        let m = dz.norm();
        if m > 1e150 || (m < 1e-150 && m > 0.0) {
            let e = m.log2().floor() as i32;
            dz = dz.unscale(2f64.powi(e));
            exponent += e;
        }
    }
    (z, dz, exponent)
}

/// Solves `P^n(z) = target` by Newton from `seed`, never straying further than `trust`.
fn newton_pullback(
    map: &QuadraticMap,
    n: usize,
    target: Complex64,
    seed: Complex64,
    trust: f64,
    max_iter: usize,
) -> Option<Complex64> {
    let mut z = seed;
    let mut last = f64::INFINITY;
    for _ in 0..max_iter {
        let (fz, dfz, e) = iterate_scaled(map, z, n);
        if !(fz.is_finite() && dfz.is_finite()) || dfz.norm() == 0.0 {
            return None;
        }
        let step = ((fz - target) / dfz) * 2f64.powi(-e);
        z -= step;
        if (z - seed).norm() > trust {
            return None;
        }
        let size = step.norm();
        let scale = 1.0 + z.norm();
        // Deep levels carry rounding noise well above machine epsilon; stop once the
        // steps no longer shrink.
        if size <= 1e-15 * scale || (size <= NOISE_FLOOR * scale && size >= 0.5 * last) {
            return Some(z);
        }
        last = size;
    }
    (last <= NOISE_FLOOR * (1.0 + z.norm())).then_some(z)
}

/// Traces the external ray of `angle`.
///
/// At level `s` (fractional, in units of potential halvings) the ray point `z` satisfies
/// `P^n(z) = Ψ(R^{2^{n-s}} e^{2πi 2^n θ})` with `n = ⌈s⌉` and `Ψ` the inverse Böttcher
/// map, accurate because the right side stays beyond radius `R`.
pub fn trace_ray(map: &QuadraticMap, angle: &Angle, params: &RayParams) -> Result<RayTrace, NumericsError> {
    if params.depth == 0 || params.steps_per_level == 0 || !params.start_radius.is_finite() || params.start_radius <= 3.0 {
        return Err(NumericsError::InvalidParameter(
            "depth and steps_per_level must be positive and start_radius above 3".into(),
        ));
    }
    let log_r = params.start_radius.ln();
    let mut orbit = Vec::with_capacity(params.depth + 1);
    let mut theta = angle.clone();
    for _ in 0..=params.depth {
        orbit.push(theta.to_f64());
        theta = theta.double();
    }
    let target = |s: f64, n: usize| {
        let modulus = (log_r * (n as f64 - s).exp2()).exp();
        inverse_bottcher(map, Complex64::from_polar(modulus, TAU * orbit[n]))
    };

    let mut trace = RayTrace {
        angle: angle.clone(),
        depth: params.depth,
        points: vec![target(0.0, 0)],
        levels: vec![0],
        landing_estimate: None,
    };
    let nominal = 1.0 / params.steps_per_level as f64;
    let total = params.steps_per_level * params.depth;
    // Positions on the nominal grid are tracked as integers so levels land exactly.
    let mut grid = 0usize;
    let mut s = 0.0;
    let mut ds_prev = nominal;
    // Ratio of the last two displacements; ray points approach their landing point
    // (and leave infinity) roughly geometrically.
    let mut rho = Complex64::new(0.0, 0.0);
    let mut prev = trace.points[0];
    let mut cur = trace.points[0];
    while grid < total {
        let next_s = (grid + 1) as f64 * nominal;
        let mut ds = next_s - s;
        let mut accepted = None;
        for attempt in 0..=params.max_bisections {
            let s_try = s + ds;
            let n = s_try.ceil() as usize;
            let far_modulus = (log_r * (-s_try).exp2()).exp();
            let seed = if far_modulus > FAR_FIELD || trace.points.len() < 3 {
                // The inverse Böttcher map alone is accurate out here.
                inverse_bottcher(map, Complex64::from_polar(far_modulus, TAU * orbit[0]))
            } else {
                cur + (cur - prev) * rho * (ds / ds_prev)
            };
            // Half the spacing of adjacent seeds, taken over two steps so a sharp turn in
            // the ray is not mistaken for divergence.
            let spacing = if trace.points.len() > 1 { (cur - prev).norm() * (ds / ds_prev) } else { 0.0 };
            let trust = (0.5 * (seed - cur).norm())
                .max(spacing)
                .max(1e-11 * (1.0 + cur.norm()));
            if let Some(z) = newton_pullback(map, n, target(s_try, n), seed, trust, params.max_newton) {
                accepted = Some((s_try, z, attempt == 0));
                break;
            }
            ds *= 0.5;
        }
        let Some((s_new, z, reached)) = accepted else {
            let level = s.ceil() as usize;
            log::warn!("ray {} diverged at level {level}", trace.angle);
            return Err(NumericsError::NewtonDiverged {
                level,
                partial: Box::new(trace),
            });
        };
        let d = z - cur;
        let d_prev = cur - prev;
        rho = if trace.points.len() > 1 && d_prev.norm() > 0.0 && (s_new - s - ds_prev).abs() < 1e-12 {
            let r = d / d_prev;
            if r.norm() > 1.0 { r / r.norm() } else { r }
        } else {
            Complex64::new(0.5, 0.0)
        };
        ds_prev = s_new - s;
        prev = cur;
        cur = z;
        s = s_new;
        trace.points.push(z);
        if reached {
            grid += 1;
            s = next_s;
            if grid.is_multiple_of(params.steps_per_level) {
                trace.levels.push(trace.points.len() - 1);
                if let Some(z) = landed(&trace, params.landing_tolerance) {
                    // Going deeper would only resolve rounding noise.
                    trace.landing_estimate = Some(z);
                    return Ok(trace);
                }
            }
        }
    }
    Ok(trace)
}

fn landed(trace: &RayTrace, tolerance: f64) -> Option<Complex64> {
    let k = trace.levels.len();
    if k < 2 {
        return None;
    }
    let (a, b) = (trace.points[trace.levels[k - 2]], trace.points[trace.levels[k - 1]]);
    ((a - b).norm() < tolerance).then_some(b)
}
