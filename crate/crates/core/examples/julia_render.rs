//! Escape-time rendering to a binary PGM.
//!
//!     cargo run --release --example julia_render [OUT.pgm] [ROTATION]

use cremer_lab::numerics::{escape_time, render_julia, write_pgm, QuadraticMap, RenderParams};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let out = args.next().unwrap_or_else(|| "julia.pgm".into());
    let map = match args.next() {
        Some(r) => QuadraticMap::from_rotation(r.parse()?),
        None => QuadraticMap::golden_mean(),
    };
    let params = RenderParams::full_view(&map, 512);
    let image = render_julia(&map, &params);
    write_pgm(&image, std::io::BufWriter::new(std::fs::File::create(&out)?))?;
    let interior = image.pixels().iter().filter(|&&v| v == 0).count();
    println!("rotation {:.15}: {interior} of {} pixels bounded, written to {out}", map.rotation(), image.pixels().len());

    // Probes near the fixed point stay bounded; the involution preserves escape times.
    for r in [0.02, 0.1, 0.2] {
        let z = Complex64::from_polar(r, 1.0);
        println!(
            "  |z| = {r}: escape {:?}, mirrored {:?}",
            escape_time(&map, z, 10_000, 3.0),
            escape_time(&map, map.involution(z), 10_000, 3.0)
        );
    }
    Ok(())
}
