//! Rotational cycles of doubling and the critical-leaf estimates along the golden mean.
//!
//!     cargo run --release --example rotation_sets

use cremer_lab::circle::{
    cantor_leaf, cantor_leaf_sturmian, rotation_census, rotational_cycle, sturmian_cycle,
    DEFAULT_BRUTE_FORCE_BUDGET,
};
use cremer_lab::contfrac::ContinuedFraction;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (p, q) in [(1, 2), (1, 3), (2, 3), (2, 5), (3, 8)] {
        let set = rotational_cycle(p, q)?;
        let orbit: Vec<String> = set.orbit.iter().map(ToString::to_string).collect();
        println!("{p}/{q}: {{{}}}  major gap ({}, {})", orbit.join(", "), set.major_gap.start, set.major_gap.end);
        assert_eq!(set, sturmian_cycle(p, q)?);
    }

    let census = rotation_census(8, DEFAULT_BRUTE_FORCE_BUDGET)?;
    println!("\nperiod 8: {} cycles, rotational ones by p: {:?}", census.cycles, census.rotational);

    let cf = ContinuedFraction::golden_mean(24);
    println!("\ngolden mean leaf estimates");
    println!("{:>5} {:>7} {:>16} {:>16} {:>12}", "depth", "p/q", "alpha", "beta - alpha", "gap");
    for depth in 2..=16 {
        let leaf = if depth <= 7 {
            cantor_leaf(&cf, depth, DEFAULT_BRUTE_FORCE_BUDGET)?
        } else {
            cantor_leaf_sturmian(&cf, depth)?
        };
        let span = leaf.span();
        println!(
            "{depth:>5} {:>7} {:>16.12} {:>16.12} {:>12.9}",
            leaf.convergent.to_string(),
            leaf.leaf.alpha.to_f64(),
            num_traits::ToPrimitive::to_f64(&span).unwrap_or(f64::NAN),
            num_traits::ToPrimitive::to_f64(&leaf.major_gap.length()).unwrap_or(f64::NAN),
        );
    }
    Ok(())
}
