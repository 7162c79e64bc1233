//! The trees A_n: sizes, tree checks, and the A_5 graph file.
//!
//!     cargo run --example pullback_tree [MAX_N]

use cremer_lab::symbolic::build_tree;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_n: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(10);
    println!("{:>3} {:>6} {:>6}  tree  triangle-free", "n", "nodes", "edges");
    for n in 0..=max_n {
        let t = build_tree(n)?;
        println!(
            "{n:>3} {:>6} {:>6}  {:<5} {}",
            t.nodes().len(),
            t.edges().len(),
            t.is_tree(),
            t.is_triangle_free()
        );
    }

    let a2 = build_tree(2)?;
    println!("\nA_2:\n{}", a2.to_graph_lines());
    println!("A_5 neighbours of 01*:");
    let a5 = build_tree(5)?;
    let delta_prime = a5.index_of(&"01*".parse()?).expect("Δ' is a node");
    for i in a5.neighbors(delta_prime) {
        println!("  {}", a5.nodes()[i]);
    }
    Ok(())
}
