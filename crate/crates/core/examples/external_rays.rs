//! External rays: the fixed ray at angle 0 and the two rays at the critical-leaf angles.
//!
//!     cargo run --release --example external_rays

use cremer_lab::circle::{cantor_leaf_sturmian, Angle};
use cremer_lab::contfrac::ContinuedFraction;
use cremer_lab::numerics::{trace_ray, QuadraticMap, RayParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let map = QuadraticMap::golden_mean();
    let zero = trace_ray(&map, &Angle::zero(), &RayParams::default())?;
    let z = zero.landing_estimate.expect("the angle-0 ray converges");
    println!(
        "angle 0 lands at {z:.12} after {} levels; |P(z) - z| = {:.1e}, |P'(z)| = {:.3}",
        zero.levels.len() - 1,
        (map.evaluate(z) - z).norm(),
        map.derivative(z).norm()
    );

    let c = map.critical_point();
    let cf = ContinuedFraction::golden_mean(20);
    let deep = RayParams {
        depth: 3000,
        steps_per_level: 4,
        ..RayParams::default()
    };
    for depth in [7, 12, 18] {
        let leaf = cantor_leaf_sturmian(&cf, depth)?;
        println!("\nleaf at convergent {} (alpha ≈ {:.12})", leaf.convergent, leaf.leaf.alpha.to_f64());
        for angle in [&leaf.leaf.alpha, &leaf.leaf.beta] {
            let ray = trace_ray(&map, angle, &deep)?;
            let probes: Vec<String> = [100, 500, 1000, 2000, 3000]
                .iter()
                .filter_map(|&k| ray.level_point(k))
                .map(|p| format!("{:.2e}", (p - c).norm()))
                .collect();
            println!("  distance to the critical point at levels 100/500/1000/2000/3000: {}", probes.join(" "));
        }
    }
    Ok(())
}
