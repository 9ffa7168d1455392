//! Classify the built-in witness curves and print their flags and
//! residuals.
//!
//! Run with `cargo run --example classify_curves`.

use salko::classify::{classify_curve, Tolerances};
use salko::fixtures::witness_specs;

fn main() {
    let tol = Tolerances::default();
    println!(
        "{:<16} {:>9} {:>9} {:>9} {:>9}  flags",
        "curve", "max|D0|", "max|D1|", "max|D2|", "max|D3|"
    );
    for (name, spec) in witness_specs() {
        let report = classify_curve(&spec, 200, &tol).expect("witnesses classify");
        let f = report.flags;
        let mut flags = Vec::new();
        if f.great_circle_on_sphere {
            flags.push("great-circle");
        }
        if f.slant_helix_salkowski {
            flags.push("slant-helix");
        }
        if f.general_helix {
            flags.push("helix");
        }
        if f.planar {
            flags.push("planar");
        }
        if f.unit_curvature {
            flags.push("kappa=1");
        }
        if f.degenerate {
            flags.push("degenerate");
        }
        println!(
            "{:<16} {:>9.1e} {:>9.1e} {:>9.1e} {:>9.1e}  {}",
            name,
            report.stats.d0.max,
            report.stats.d1.max,
            report.stats.d2.max,
            report.stats.d3.max,
            flags.join(", ")
        );
    }
}
