//! Pullback strings of the periodic points x = (011)^ and z = (0110111)^.
//!
//!     cargo run --example itinerary_strings [WORD] [COUNT]

use cremer_lab::symbolic::{basic_length, fragments, string_of, verify_shift_down, Itinerary, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let words: Vec<Word> = match args.next() {
        Some(w) => vec![w.parse()?],
        None => vec!["011".parse()?, "0110111".parse()?],
    };
    let count: usize = args.next().map(|c| c.parse()).transpose()?.unwrap_or(6);

    for word in &words {
        let source = Itinerary::periodic(word)?;
        let l = basic_length(word)?;
        let s = string_of(&source, count)?;
        println!("{source}: period {}, basic length {l}", word.primitive_root().len());
        for (j, e) in s.elements().iter().enumerate() {
            println!("  Δ^{} = {e}", j + 1);
        }
        for (i, f) in fragments(&s, l, count / l)?.iter().enumerate() {
            let labels: Vec<String> = f.iter().map(ToString::to_string).collect();
            println!("  fragment {}: {}", i + 1, labels.join("  "));
        }
        println!("  shift by the period moves the string down by {l}: {}", verify_shift_down(word, 10)?);
    }
    Ok(())
}
