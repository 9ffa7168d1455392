//! The geometric estimators: fixed-axis recovery from principal normals
//! and algebraic sphere fitting, including the degenerate circle case.
//!
//! Run with `cargo run --example axis_and_sphere`.

use salko::generate::{generate_salkowski, SalkowskiParams};
use salko::{estimate_axis, fit_sphere, Vec3};

fn main() {
    // A slant helix keeps <N, d> constant; the axis estimate recovers d and
    // the angle arccot(b).
    for b in [0.5, 1.0, 2.0] {
        let params = SalkowskiParams::new(1.0, Some(b), 0.0, None).unwrap();
        let curve = generate_salkowski(&params, params.admissible_interval(), 4096).unwrap();
        let normals: Vec<Vec3> = curve.frames.as_ref().unwrap().iter().map(|f| f.n).collect();
        let axis = estimate_axis(&normals).unwrap();
        println!(
            "b = {b}: theta = {:.9} rad (arctan(1/b) = {:.9}), std<N,d> = {:.2e}",
            axis.theta,
            (1.0 / b).atan(),
            axis.std_dot
        );
    }

    // Sphere fitting: exact on spherical data, degenerate on a bare circle
    // (a circle lies on infinitely many spheres).
    let circle: Vec<Vec3> = (0..64)
        .map(|i| {
            let t = 2.0 * std::f64::consts::PI * i as f64 / 64.0;
            Vec3::new(1.0 + t.cos(), 2.0 + t.sin(), 3.0)
        })
        .collect();
    println!(
        "\nsphere fit on bare circle points: {:?}",
        fit_sphere(&circle).err().unwrap()
    );

    // Offsetting the circle points along the plane normal pins the sphere
    // family down and recovers the circle's center.
    let mut offset = Vec::new();
    for p in &circle {
        offset.push(*p + Vec3::new(0.0, 0.0, 0.4));
        offset.push(*p - Vec3::new(0.0, 0.0, 0.4));
    }
    let fit = fit_sphere(&offset).unwrap();
    println!(
        "with +-0.4 normal offsets: center ({:.6}, {:.6}, {:.6}), radius {:.6}, rms {:.2e}",
        fit.center.x, fit.center.y, fit.center.z, fit.radius, fit.rms
    );
}
