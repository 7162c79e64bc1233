//! Combinatorial data of the construction for two periodic points.
//!
//!     cargo run --example construction_plan [U V]

use cremer_lab::symbolic::{intersects, plan_construction, string_of, Itinerary, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (u, v): (Word, Word) = match args.as_slice() {
        [u, v] => (u.parse()?, v.parse()?),
        _ => ("011".parse()?, "0110111".parse()?),
    };
    let plan = plan_construction(&u, &v)?;
    println!("u = ({u})^  k = {}  w = {}", plan.k, plan.w);
    println!("v = ({v})^  l = {}  q = {}", plan.l, plan.q);
    println!("common prefix (m = {}):", plan.m);
    for p in &plan.common {
        println!("  {p}");
    }
    println!("last common pullback L = {}", plan.last_common);
    println!("order n = m + 3k + 3l = {}", plan.n);
    println!("m < min(w, q): {}", plan.assumption_holds);

    // Past the shared prefix the two strings never touch.
    let count = 30;
    let su = string_of(&Itinerary::periodic(&plan.u_word)?, plan.m + count)?;
    let sv = string_of(&Itinerary::periodic(&plan.v_word)?, plan.m + count)?;
    let (tu, tv) = (&su.elements()[plan.m..], &sv.elements()[plan.m..]);
    let touching = tu
        .iter()
        .flat_map(|a| tv.iter().map(move |b| (a, b)))
        .filter(|(a, b)| a == b || intersects(a, b))
        .count();
    println!("intersecting pairs among the next {count} elements of each string: {touching}");
    println!("\n{}", serde_json::to_string_pretty(&plan)?);
    Ok(())
}
