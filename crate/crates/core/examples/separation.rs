//! Arc distance under doubling and separation by the golden-mean critical leaf.
//!
//!     cargo run --example separation [THETA THETA']

use cremer_lab::circle::{
    arc_distance, cantor_leaf_sturmian, growth_bound, separation_time, steps_to_third, tent,
    Angle, DEFAULT_SEPARATION_CAP,
};
use cremer_lab::contfrac::ContinuedFraction;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let pairs: Vec<(Angle, Angle)> = match args.as_slice() {
        [a, b] => vec![(a.parse()?, b.parse()?)],
        _ => [("1/5", "2/5"), ("1/7", "1/6"), ("1/1000", "1/1001"), ("3/11", "7/25")]
            .iter()
            .map(|(a, b)| Ok((a.parse()?, b.parse()?)))
            .collect::<Result<_, cremer_lab::circle::CircleError>>()?,
    };
    let cf = ContinuedFraction::golden_mean(10);
    let leaf = cantor_leaf_sturmian(&cf, 8)?.leaf;
    println!("leaf ({}, {})", leaf.alpha, leaf.beta);

    for (a, b) in pairs {
        let d = arc_distance(&a, &b);
        println!("\n{a} vs {b}: distance {d}");
        let mut x = a.clone();
        let mut y = b.clone();
        for step in 0..4 {
            let next = arc_distance(&x.double(), &y.double());
            println!("  step {step}: d = {}, T(d) = {}, d(σx, σy) = {next}", arc_distance(&x, &y), tent(&arc_distance(&x, &y)));
            x = x.double();
            y = y.double();
        }
        println!("  reaches 1/3 after {:?} steps (bound {})", steps_to_third(&a, &b), growth_bound(&d));
        match separation_time(&a, &b, &leaf, DEFAULT_SEPARATION_CAP) {
            Ok(m) => println!("  separated by the leaf after {m} steps"),
            Err(e) => println!("  {e}"),
        }
    }
    Ok(())
}
