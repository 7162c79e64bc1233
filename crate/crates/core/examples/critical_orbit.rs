//! The critical orbit as a sample of the Siegel disk boundary, and semidistances between
//! samples of different lengths.
//!
//!     cargo run --release --example critical_orbit

use cremer_lab::numerics::{critical_orbit, involution_cloud, semidistance, QuadraticMap};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let map = QuadraticMap::golden_mean();
    let full = critical_orbit(&map, 100_000, 3.0)?;
    println!("100000 points, max modulus {:.6}", full.max_modulus());
    for n in [1_000, 10_000, 100_000] {
        let part = &full.points[..n];
        println!(
            "  ∂[orbit(1e5), orbit({n})] = {:.3e}   ∂[orbit({n}), orbit(1e5)] = {:.1e}",
            semidistance(&full.points, part)?,
            semidistance(part, &full.points)?
        );
    }
    // The involution image samples the boundary of the other preimage of the disk.
    let short = critical_orbit(&map, 2_000, 3.0)?;
    let mirror = involution_cloud(&map, &short);
    let worst = short
        .points
        .iter()
        .zip(&mirror.points)
        .map(|(z, w)| (map.evaluate(*z) - map.evaluate(*w)).norm())
        .fold(0.0, f64::max);
    println!("max |P(z) - P(ψ(z))| over 2000 points: {worst:.1e}");
    println!(
        "∂[orbit(2000), ψ(orbit(2000))] = {:.3e}",
        semidistance(&short.points, &mirror.points)?
    );
    Ok(())
}
