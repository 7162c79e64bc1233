use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use super::figures::{self, Figure1Params};
use super::{budget_from_env, CliError, Output};
use crate::circle::{
    arc_distance, cantor_leaf, cantor_leaf_sturmian, growth_bound, rotational_cycle_with_budget,
    separation_time, steps_to_third, sturmian_cycle, Angle, CriticalLeaf, LeafApprox,
    DEFAULT_SEPARATION_CAP,
};
use crate::contfrac::ContinuedFraction;
use crate::numerics::{
    critical_orbit, encode_pgm, involution_cloud, periodic_points, render_julia, semidistance,
    trace_ray, QuadraticMap, RayParams, RenderParams, SearchGrid,
    Viewport,
};
use crate::symbolic::{
    basic_length, build_tree_with_budget, plan_construction, string_of, Itinerary, PullbackId,
    Word, DEFAULT_MAX_ORDER,
};

#[derive(Debug, Parser)]
#[command(name = "cremer-lab", version, about = "Pullback combinatorics and planar dynamics of λz + z²")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Add wall-clock timing to the report (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Rotation number of the map.
#[derive(Debug, Args, Clone)]
pub struct RotationArgs {
    /// Continued fraction, e.g. `1,1,1,1`.
    #[arg(long, conflicts_with = "alpha")]
    pub alpha_cf: Option<String>,
    /// Exact rational `p/q` or a decimal.
    #[arg(long)]
    pub alpha: Option<String>,
}

impl RotationArgs {
    /// Golden mean unless told otherwise.
    pub fn map(&self) -> Result<QuadraticMap, CliError> {
        if let Some(cf) = &self.alpha_cf {
            let cf: ContinuedFraction = cf.parse()?;
            return Ok(QuadraticMap::from_continued_fraction(&cf));
        }
        match &self.alpha {
            None => Ok(QuadraticMap::golden_mean()),
            Some(s) => {
                if let Ok(a) = s.parse::<Angle>() {
                    return Ok(QuadraticMap::from_angle(&a));
                }
                s.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .map(QuadraticMap::from_rotation)
                    .ok_or_else(|| CliError::Usage(format!("cannot read rotation number {s:?}")))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CycleMethod {
    /// Search every period-q cycle (bounded by the budget).
    BruteForce,
    /// Write the cycle down from its binary digits.
    Sturmian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TreeFormat {
    Json,
    Graph,
}

#[derive(Debug, Args, Clone)]
pub struct RayArgs {
    #[arg(long, default_value_t = 60)]
    pub depth: usize,
    #[arg(long, default_value_t = 8)]
    pub steps_per_level: usize,
    #[arg(long, default_value_t = 1e5)]
    pub radius: f64,
}

impl RayArgs {
    fn params(&self) -> RayParams {
        RayParams {
            depth: self.depth,
            steps_per_level: self.steps_per_level,
            start_radius: self.radius,
            ..RayParams::default()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Escape-time picture of the filled Julia set as binary PGM.
    RenderJulia {
        #[command(flatten)]
        rotation: RotationArgs,
        #[arg(long, default_value_t = 512)]
        width: usize,
        #[arg(long, default_value_t = 512)]
        height: usize,
        /// View centre; defaults to the critical point.
        #[arg(long, allow_hyphen_values = true)]
        center_re: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        center_im: Option<f64>,
        /// Plane width covered by the image.
        #[arg(long, default_value_t = 3.6)]
        span: f64,
        #[arg(long, default_value_t = 2000)]
        max_iter: u32,
        #[arg(long, default_value_t = 3.0)]
        escape_radius: f64,
        #[arg(long)]
        output: PathBuf,
    },
    /// External ray of an exact angle.
    TraceRay {
        #[command(flatten)]
        rotation: RotationArgs,
        #[arg(long)]
        angle: Angle,
        #[command(flatten)]
        ray: RayArgs,
    },
    /// Rotational cycle of doubling with rotation number p/q.
    RotationSet {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = CycleMethod::BruteForce)]
        method: CycleMethod,
    },
    /// Critical-leaf estimate at a continued-fraction convergent.
    CantorLeaf {
        /// Continued fraction of the rotation number (default: golden mean).
        #[arg(long)]
        alpha_cf: Option<String>,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = CycleMethod::BruteForce)]
        method: CycleMethod,
    },
    /// The tree of pullbacks of order at most n.
    PullbackTree {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = TreeFormat::Json)]
        format: TreeFormat,
    },
    /// Pullback string of a periodic point.
    String {
        /// Periodic word of the point's itinerary.
        #[arg(long)]
        word: Word,
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
    /// Construction data for two periodic points.
    Plan {
        #[arg(long)]
        u: Word,
        #[arg(long)]
        v: Word,
    },
    /// Steps until two angles fall on opposite sides of a critical leaf.
    Separation {
        #[arg(long)]
        theta: Angle,
        #[arg(long)]
        theta_prime: Angle,
        /// Leaf endpoint `alpha`; `beta` defaults to `alpha + 1/2`.
        #[arg(long, requires = "alpha")]
        beta: Option<Angle>,
        #[arg(long, conflicts_with = "leaf_depth")]
        alpha: Option<Angle>,
        /// Use the golden-mean leaf at this convergent instead.
        #[arg(long, default_value_t = 8)]
        leaf_depth: usize,
        #[arg(long, default_value_t = DEFAULT_SEPARATION_CAP)]
        cap: usize,
    },
    /// Forward orbit of the critical point.
    Orbit {
        #[command(flatten)]
        rotation: RotationArgs,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 3.0)]
        escape_radius: f64,
        /// Report the image under z ↦ −λ − z instead.
        #[arg(long)]
        involution: bool,
    },
    /// One-sided semidistance sup_a dist(a, B) between point sets.
    Semidistance {
        /// JSON file of [re, im] pairs, or an orbit report.
        #[arg(long, requires = "b", conflicts_with = "orbits")]
        a: Option<PathBuf>,
        #[arg(long)]
        b: Option<PathBuf>,
        /// Two critical-orbit lengths `A,B` instead of files.
        #[arg(long, value_delimiter = ',', num_args = 2)]
        orbits: Option<Vec<usize>>,
        #[command(flatten)]
        rotation: RotationArgs,
    },
    /// Fixed points of P^n by multi-start Newton.
    PeriodicPoints {
        #[command(flatten)]
        rotation: RotationArgs,
        #[arg(long)]
        period: usize,
        /// Seeds per side of the search grid.
        #[arg(long, default_value_t = 32)]
        grid: usize,
    },
    /// Golden-mean Julia set with the two rays at the critical-leaf angles.
    Figure1 {
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 600)]
        size: usize,
        #[arg(long, default_value_t = 2000)]
        max_iter: u32,
        #[arg(long, default_value_t = 18)]
        leaf_depth: usize,
        #[arg(long, default_value_t = 3000)]
        ray_depth: usize,
        #[arg(long, default_value_t = 4)]
        steps_per_level: usize,
    },
    /// The tree A_n as a graph file.
    Figure2Layout {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Construction plan for x = (011)^, z = (0110111)^ with rays toward both points.
    Figure3Report {
        #[arg(long, default_value_t = 18)]
        leaf_depth: usize,
        #[arg(long, default_value_t = 400)]
        ray_depth: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::RenderJulia { .. } => "render-julia",
            Self::TraceRay { .. } => "trace-ray",
            Self::RotationSet { .. } => "rotation-set",
            Self::CantorLeaf { .. } => "cantor-leaf",
            Self::PullbackTree { .. } => "pullback-tree",
            Self::String { .. } => "string",
            Self::Plan { .. } => "plan",
            Self::Separation { .. } => "separation",
            Self::Orbit { .. } => "orbit",
            Self::Semidistance { .. } => "semidistance",
            Self::PeriodicPoints { .. } => "periodic-points",
            Self::Figure1 { .. } => "figure1",
            Self::Figure2Layout { .. } => "figure2-layout",
            Self::Figure3Report { .. } => "figure3-report",
        }
    }
}

fn golden_or(cf: &Option<String>, min_len: usize) -> Result<ContinuedFraction, CliError> {
    match cf {
        Some(s) => Ok(s.parse()?),
        None => Ok(ContinuedFraction::golden_mean(min_len.max(2) + 2)),
    }
}

fn leaf_approx(cf: &ContinuedFraction, depth: usize, method: CycleMethod) -> Result<LeafApprox, CliError> {
    Ok(match method {
        CycleMethod::BruteForce => cantor_leaf(cf, depth, budget_from_env()?)?,
        CycleMethod::Sturmian => cantor_leaf_sturmian(cf, depth)?,
    })
}

#[derive(Serialize)]
struct StringPayload {
    source: Itinerary,
    basic_length: usize,
    elements: Vec<PullbackId>,
}

#[derive(Serialize)]
struct SeparationPayload {
    theta: Angle,
    theta_prime: Angle,
    leaf: CriticalLeaf,
    separation_time: usize,
    arc_distance: Angle,
    steps_to_third: Option<usize>,
    growth_bound: usize,
}

#[derive(Serialize)]
struct RenderPayload {
    output: String,
    #[serde(flatten)]
    image: figures::ImageSummary,
}

#[derive(Serialize)]
struct SemidistancePayload {
    a_len: usize,
    b_len: usize,
    semidistance: f64,
}

#[derive(Serialize)]
struct Figure1Payload<'a> {
    pgm: String,
    json: String,
    report: &'a figures::Figure1Report,
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, bytes)?;
    Ok(())
}

/// Accepts `[[re, im], ...]`, an orbit cloud `{"points": ...}`, or a full report whose
/// payload is one of those.
fn read_points(path: &Path) -> Result<Vec<Complex64>, CliError> {
    let value: serde_json::Value = serde_json::from_slice(&fs::read(path)?)?;
    let mut v = &value;
    if let Some(p) = v.get("payload") {
        v = p;
    }
    if let Some(p) = v.get("points") {
        v = p;
    }
    let pairs: Vec<[f64; 2]> = serde_json::from_value(v.clone())?;
    Ok(pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
}

pub(super) fn dispatch(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::RenderJulia {
            rotation,
            width,
            height,
            center_re,
            center_im,
            span,
            max_iter,
            escape_radius,
            output,
        } => {
            let map = rotation.map()?;
            if *escape_radius < 3.0 {
                return Err(CliError::Usage("escape radius must be at least 3".into()));
            }
            let c = map.critical_point();
            let params = RenderParams {
                width: *width,
                height: *height,
                viewport: Viewport {
                    center: Complex64::new(center_re.unwrap_or(c.re), center_im.unwrap_or(c.im)),
                    span: *span,
                },
                max_iter: *max_iter,
                escape_radius: *escape_radius,
            };
            let image = render_julia(&map, &params);
            write_file(output, &encode_pgm(&image))?;
            Output::payload(&RenderPayload {
                output: output.display().to_string(),
                image: figures::ImageSummary::new(&image, *max_iter),
            })
        }
        Command::TraceRay { rotation, angle, ray } => {
            let trace = trace_ray(&rotation.map()?, angle, &ray.params())?;
            Output::payload(&trace)
        }
        Command::RotationSet { p, q, method } => {
            let set = match method {
                CycleMethod::BruteForce => rotational_cycle_with_budget(*p, *q, budget_from_env()?)?,
                CycleMethod::Sturmian => sturmian_cycle(*p, *q)?,
            };
            Output::payload(&set)
        }
        Command::CantorLeaf { alpha_cf, depth, method } => {
            let cf = golden_or(alpha_cf, *depth)?;
            Output::payload(&leaf_approx(&cf, *depth, *method)?)
        }
        Command::PullbackTree { n, format } => {
            let tree = build_tree_with_budget(*n, DEFAULT_MAX_ORDER)?;
            match format {
                TreeFormat::Json => Output::payload(&tree),
                TreeFormat::Graph => Ok(Output::Text(tree.to_graph_lines())),
            }
        }
        Command::String { word, count } => {
            let source = Itinerary::periodic(word)?;
            let basic_length = basic_length(word)?;
            let s = string_of(&source, *count)?;
            Output::payload(&StringPayload {
                source,
                basic_length,
                elements: s.elements().to_vec(),
            })
        }
        Command::Plan { u, v } => Output::payload(&plan_construction(u, v)?),
        Command::Separation {
            theta,
            theta_prime,
            alpha,
            beta,
            leaf_depth,
            cap,
        } => {
            let leaf = match alpha {
                Some(a) => match beta {
                    Some(b) => CriticalLeaf::new(a.clone(), b.clone())?,
                    None => CriticalLeaf::diameter(a.clone())?,
                },
                None => {
                    let cf = ContinuedFraction::golden_mean(leaf_depth + 2);
                    cantor_leaf_sturmian(&cf, *leaf_depth)?.leaf
                }
            };
            let m = separation_time(theta, theta_prime, &leaf, *cap)?;
            let d = arc_distance(theta, theta_prime);
            Output::payload(&SeparationPayload {
                theta: theta.clone(),
                theta_prime: theta_prime.clone(),
                separation_time: m,
                steps_to_third: steps_to_third(theta, theta_prime),
                growth_bound: growth_bound(&d),
                arc_distance: Angle::from_ratio(d),
                leaf,
            })
        }
        Command::Orbit {
            rotation,
            count,
            escape_radius,
            involution,
        } => {
            let map = rotation.map()?;
            let cloud = critical_orbit(&map, *count, *escape_radius)?;
            if *involution {
                Output::payload(&involution_cloud(&map, &cloud))
            } else {
                Output::payload(&cloud)
            }
        }
        Command::Semidistance { a, b, orbits, rotation } => {
            let (pa, pb) = match (a, b, orbits) {
                (Some(a), Some(b), _) => (read_points(a)?, read_points(b)?),
                (_, _, Some(counts)) => {
                    let map = rotation.map()?;
                    let longest = counts.iter().copied().max().unwrap_or(0);
                    let cloud = critical_orbit(&map, longest, 3.0)?;
                    (cloud.points[..counts[0]].to_vec(), cloud.points[..counts[1]].to_vec())
                }
                _ => return Err(CliError::Usage("give --a and --b, or --orbits A,B".into())),
            };
            Output::payload(&SemidistancePayload {
                a_len: pa.len(),
                b_len: pb.len(),
                semidistance: semidistance(&pa, &pb)?,
            })
        }
        Command::PeriodicPoints { rotation, period, grid } => {
            let map = rotation.map()?;
            let set = periodic_points(&map, *period, &SearchGrid::covering(&map, *grid))?;
            Output::payload(&set)
        }
        Command::Figure1 {
            out_dir,
            size,
            max_iter,
            leaf_depth,
            ray_depth,
            steps_per_level,
        } => {
            let params = Figure1Params {
                size: *size,
                max_iter: *max_iter,
                leaf_depth: *leaf_depth,
                ray: RayParams {
                    depth: *ray_depth,
                    steps_per_level: *steps_per_level,
                    ..RayParams::default()
                },
            };
            let (image, report) = figures::figure1(&params)?;
            let pgm = out_dir.join("figure1.pgm");
            let json = out_dir.join("figure1.json");
            write_file(&pgm, &encode_pgm(&image))?;
            write_file(&json, (serde_json::to_string(&report)? + "\n").as_bytes())?;
            Output::payload(&Figure1Payload {
                pgm: pgm.display().to_string(),
                json: json.display().to_string(),
                report: &report,
            })
        }
        Command::Figure2Layout { n, output } => {
            let text = figures::figure2_layout(*n)?;
            match output {
                Some(path) => {
                    write_file(path, text.as_bytes())?;
                    Ok(Output::Text(String::new()))
                }
                None => Ok(Output::Text(text)),
            }
        }
        Command::Figure3Report {
            leaf_depth,
            ray_depth,
            output,
        } => {
            let ray = RayParams {
                depth: *ray_depth,
                ..RayParams::default()
            };
            let report = figures::figure3_report(*leaf_depth, &ray)?;
            if let Some(path) = output {
                write_file(path, (serde_json::to_string(&report)? + "\n").as_bytes())?;
            }
            Output::payload(&report)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_forms() {
        let parse = |args: &[&str]| {
            let cli = Cli::try_parse_from(["x", "orbit"].iter().chain(args)).unwrap();
            match cli.command {
                Command::Orbit { rotation, .. } => rotation.map().unwrap().rotation(),
                _ => unreachable!(),
            }
        };
        let golden = QuadraticMap::golden_mean().rotation();
        assert_eq!(parse(&[]), golden);
        assert!((parse(&["--alpha-cf", "1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1"]) - golden).abs() < 1e-15);
        assert_eq!(parse(&["--alpha", "13/21"]), 13.0 / 21.0);
        assert_eq!(parse(&["--alpha", "0.25"]), 0.25);
        assert!(Cli::try_parse_from(["x", "orbit", "--alpha", "1/2", "--alpha-cf", "2"]).is_err());
    }
}
