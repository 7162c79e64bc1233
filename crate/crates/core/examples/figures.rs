//! Writes the three figure presets into a directory.
//!
//!     cargo run --release --example figures [OUT_DIR]

use std::fs;
use std::path::PathBuf;

use cremer_lab::cli::figures::{figure1, figure2_layout, figure3_report, Figure1Params};
use cremer_lab::numerics::{encode_pgm, RayParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    fs::create_dir_all(&dir)?;

    let (image, report) = figure1(&Figure1Params::default())?;
    fs::write(dir.join("figure1.pgm"), encode_pgm(&image))?;
    fs::write(dir.join("figure1.json"), serde_json::to_string(&report)?)?;
    for ray in &report.rays {
        println!("figure 1: ray {:.12} ends {:.2e} from the critical point", ray.angle.to_f64(), ray.distance_to_critical_point);
    }

    fs::write(dir.join("figure2.graph"), figure2_layout(5)?)?;
    println!("figure 2: A_5 written");

    let f3 = figure3_report(18, &RayParams { depth: 400, ..RayParams::default() })?;
    for p in &f3.points {
        println!("figure 3: {} = ({})^ via angle {} lands at {:.9}", p.name, p.word, p.angle, p.landing_point);
    }
    fs::write(dir.join("figure3.json"), serde_json::to_string_pretty(&f3)?)?;
    println!("written to {}", dir.display());
    Ok(())
}
