//! The three figure presets.

use num_bigint::BigInt;
use num_complex::Complex64;
use serde::Serialize;

use super::CliError;
use crate::circle::{cantor_leaf_sturmian, leaf_itinerary, Angle, CriticalLeaf, LeafApprox};
use crate::contfrac::ContinuedFraction;
use crate::numerics::{
    render_julia, serialize_complex, serialize_complex_vec, trace_ray, Image, QuadraticMap,
    RayParams, RayTrace, RenderParams, Viewport, DEFAULT_ESCAPE_RADIUS,
};
use crate::symbolic::{build_tree, plan_construction, ConstructionPlan, Word};

/// Gray level of overlaid rays.
pub const RAY_SHADE: u8 = 128;

#[derive(Clone, Debug, PartialEq)]
pub struct Figure1Params {
    pub size: usize,
    pub max_iter: u32,
    /// Convergent of the golden mean whose rotational cycle gives the critical leaf.
    pub leaf_depth: usize,
    pub ray: RayParams,
}

impl Default for Figure1Params {
    fn default() -> Self {
        Self {
            size: 600,
            max_iter: 2000,
            // q = 4181.
            leaf_depth: 18,
            ray: RayParams {
                depth: 3000,
                steps_per_level: 4,
                ..RayParams::default()
            },
        }
    }
}

/// A traced ray reduced to its integer levels.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RaySummary {
    pub angle: Angle,
    pub levels: usize,
    #[serde(serialize_with = "serialize_complex")]
    pub endpoint: Complex64,
    pub distance_to_critical_point: f64,
    #[serde(serialize_with = "serialize_complex_vec")]
    pub points: Vec<Complex64>,
}

impl RaySummary {
    fn new(trace: &RayTrace, map: &QuadraticMap) -> Self {
        let endpoint = trace.endpoint().expect("a trace holds its starting point");
        Self {
            angle: trace.angle.clone(),
            levels: trace.levels.len() - 1,
            endpoint,
            distance_to_critical_point: (endpoint - map.critical_point()).norm(),
            points: trace.level_points(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Figure1Report {
    pub rotation: f64,
    #[serde(serialize_with = "serialize_complex")]
    pub critical_point: Complex64,
    pub leaf: LeafApprox,
    pub image: ImageSummary,
    pub rays: Vec<RaySummary>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ImageSummary {
    pub width: usize,
    pub height: usize,
    pub viewport: Viewport,
    pub max_iter: u32,
    pub interior_pixels: usize,
}

impl ImageSummary {
    pub fn new(image: &Image, max_iter: u32) -> Self {
        Self {
            width: image.width(),
            height: image.height(),
            viewport: image.viewport(),
            max_iter,
            interior_pixels: image.pixels().iter().filter(|&&v| v == 0).count(),
        }
    }
}

/// Golden-mean Julia set with the two rays at the critical-leaf angles drawn on top.
pub fn figure1(params: &Figure1Params) -> Result<(Image, Figure1Report), CliError> {
    let map = QuadraticMap::golden_mean();
    let cf = ContinuedFraction::golden_mean(params.leaf_depth.max(2) + 2);
    let leaf = cantor_leaf_sturmian(&cf, params.leaf_depth)?;
    let view = RenderParams {
        width: params.size,
        height: params.size,
        viewport: Viewport {
            center: map.critical_point(),
            span: 3.6,
        },
        max_iter: params.max_iter,
        escape_radius: DEFAULT_ESCAPE_RADIUS,
    };
    let mut image = render_julia(&map, &view);
    let traces = trace_pair(&map, &leaf.leaf, &params.ray)?;
    for t in &traces {
        image.draw_polyline(&t.points, RAY_SHADE);
    }
    let report = Figure1Report {
        rotation: map.rotation(),
        critical_point: map.critical_point(),
        leaf,
        image: ImageSummary::new(&image, params.max_iter),
        rays: traces.iter().map(|t| RaySummary::new(t, &map)).collect(),
    };
    Ok((image, report))
}

/// Both leaf rays, traced in parallel.
fn trace_pair(map: &QuadraticMap, leaf: &CriticalLeaf, params: &RayParams) -> Result<Vec<RayTrace>, CliError> {
    let (a, b) = rayon::join(
        || trace_ray(map, &leaf.alpha, params),
        || trace_ray(map, &leaf.beta, params),
    );
    Ok(vec![a?, b?])
}

/// The tree `A_n` as graph-file lines.
pub fn figure2_layout(n: usize) -> Result<String, CliError> {
    Ok(build_tree(n)?.to_graph_lines())
}

/// A periodic point of the worked example, located through its external ray.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodicRay {
    pub name: String,
    pub word: Word,
    pub period: usize,
    pub angle: Angle,
    /// The periodic point the ray lands on, refined by Newton on `P^period`.
    #[serde(serialize_with = "serialize_complex")]
    pub landing_point: Complex64,
    pub residual: f64,
    #[serde(serialize_with = "serialize_complex")]
    pub multiplier: Complex64,
    pub ray: RaySummary,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Figure3Report {
    pub plan: ConstructionPlan,
    pub leaf: LeafApprox,
    pub points: Vec<PeriodicRay>,
}

/// Smallest `k/(2^n − 1)` of exact period `n` whose leaf itinerary repeats `word`.
pub fn angle_with_itinerary(word: &Word, leaf: &CriticalLeaf) -> Result<Option<Angle>, CliError> {
    let n = word.len();
    if n == 0 || n > 24 {
        return Err(CliError::Usage(format!("word length {n} is outside 1..=24")));
    }
    let modulus = (1u64 << n) - 1;
    for k in 0..modulus {
        let theta = Angle::new(BigInt::from(k), BigInt::from(modulus))?;
        match leaf_itinerary(&theta, leaf, n) {
            Ok(symbols) if symbols == word.symbols() => return Ok(Some(theta)),
            Ok(_) | Err(crate::circle::CircleError::ExactHit { .. }) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(None)
}

fn refine_periodic(map: &QuadraticMap, mut z: Complex64, n: usize) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    for _ in 0..100 {
        let (pz, dz) = map.iterate_with_derivative(z, n);
        let step = (pz - z) / (dz - one);
        if !step.is_finite() {
            break;
        }
        z -= step;
        if step.norm() < 1e-15 {
            break;
        }
    }
    z
}

/// The plan for `x = (011)^` and `z = (0110111)^` with rays landing on both points.
pub fn figure3_report(leaf_depth: usize, ray: &RayParams) -> Result<Figure3Report, CliError> {
    let (u, v): (Word, Word) = ("011".parse()?, "0110111".parse()?);
    let plan = plan_construction(&u, &v)?;
    let map = QuadraticMap::golden_mean();
    let cf = ContinuedFraction::golden_mean(leaf_depth.max(2) + 2);
    let leaf = cantor_leaf_sturmian(&cf, leaf_depth)?;
    let mut points = Vec::new();
    for (name, word) in [("x", &plan.u_word), ("z", &plan.v_word)] {
        let angle = angle_with_itinerary(word, &leaf.leaf)?
            .ok_or_else(|| CliError::Usage(format!("no periodic angle has itinerary {word}")))?;
        let trace = trace_ray(&map, &angle, ray)?;
        let n = word.len();
        let landing_point = refine_periodic(&map, trace.endpoint().expect("nonempty trace"), n);
        let (pz, multiplier) = map.iterate_with_derivative(landing_point, n);
        points.push(PeriodicRay {
            name: name.to_string(),
            word: word.clone(),
            period: n,
            angle,
            landing_point,
            residual: (pz - landing_point).norm(),
            multiplier,
            ray: RaySummary::new(&trace, &map),
        });
    }
    Ok(Figure3Report { plan, leaf, points })
}
