//! Periodic points by multi-start Newton, with multipliers.
//!
//!     cargo run --release --example periodic_points [MAX_PERIOD]

use cremer_lab::numerics::{periodic_points, QuadraticMap, SearchGrid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(8);
    let map = QuadraticMap::golden_mean();
    for n in 1..=max {
        let set = periodic_points(&map, n, &SearchGrid::covering(&map, 48))?;
        let primitive = set.primitive(&map);
        let repelling = primitive.iter().filter(|p| p.multiplier.norm() > 1.0 + 1e-9).count();
        let max_residual = set
            .points
            .iter()
            .map(|p| (map.iterate(p.z, n) - p.z).norm())
            .fold(0.0, f64::max);
        println!(
            "period {n:>2}: {:>4}/{:<4} roots, {:>4} of exact period ({repelling} repelling), max residual {max_residual:.1e}",
            set.points.len(),
            set.expected,
            primitive.len()
        );
    }
    Ok(())
}
