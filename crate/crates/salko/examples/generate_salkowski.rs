//! Generate a constant-curvature slant helix from its torsion law and
//! export it as CSV and SVG.
//!
//! Run with `cargo run --example generate_salkowski`; writes
//! `salkowski.csv` and `salkowski.svg` into the working directory.

use salko::generate::{generate_salkowski, SalkowskiParams};
use salko::output::{curve_to_csv, points_to_svg, write_atomic, Plane};
use std::path::Path;

fn main() {
    let params = SalkowskiParams::new(1.0, Some(1.0), 0.0, None).unwrap();
    let curve = generate_salkowski(&params, [-0.9, 0.9], 2048).unwrap();

    write_atomic(Path::new("salkowski.csv"), &curve_to_csv(&curve).unwrap()).unwrap();
    write_atomic(
        Path::new("salkowski.svg"),
        &points_to_svg(&curve.positions, Plane::Xy),
    )
    .unwrap();

    let tau = curve.tau.as_ref().unwrap();
    let sigma = curve.sigma.as_ref().unwrap();
    println!(
        "generated {} samples; kappa = {}, tau in [{:.4}, {:.4}], sigma = {:.6} (constant)",
        curve.len(),
        params.a,
        tau.iter().cloned().fold(f64::INFINITY, f64::min),
        tau.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        sigma[0],
    );
    println!("wrote salkowski.csv and salkowski.svg");
}
