//! The tangent indicatrix of a generated slant helix is a spherical helix:
//! its points are unit vectors and its constant-slope determinant
//! vanishes.
//!
//! Run with `cargo run --example tangent_indicatrix`.

use salko::classify::det_family;
use salko::generate::{generate_salkowski, tangent_indicatrix, SalkowskiParams};

fn main() {
    let params = SalkowskiParams::new(1.0, Some(1.0), 0.0, None).unwrap();
    let curve = generate_salkowski(&params, [-0.9, 0.9], 1024).unwrap();
    let ind = tangent_indicatrix(&curve).unwrap();

    let worst_norm = ind
        .positions
        .iter()
        .map(|p| (p.norm() - 1.0).abs())
        .fold(0.0, f64::max);
    let worst_d2 = ind
        .jets
        .as_ref()
        .unwrap()
        .iter()
        .map(|j| det_family(j, 2).normalized.abs())
        .fold(0.0, f64::max);

    println!("indicatrix of the b = 1 slant helix over [-0.9, 0.9]:");
    println!("  max | |T| - 1 |            = {worst_norm:.3e}");
    println!("  max helix-det residual |D2| = {worst_d2:.3e}");
    println!("  (both at rounding level: the indicatrix is a spherical helix)");

    // Compare with the indicatrix of a plane curve, which is a great-circle
    // arc: its D2 does NOT vanish (slope is not constant along the arc).
    let planar = salko::generate::integrate_frenet(
        &salko::generate::ConstLaw(1.0),
        &salko::generate::ExprLaw::parse("0.5*s").unwrap(),
        &salko::frenet::FrenetFrame::STANDARD,
        salko::Vec3::ZERO,
        [-1.0, 1.0],
        1024,
    )
    .unwrap();
    let control = tangent_indicatrix(&planar).unwrap();
    let control_d2 = control
        .jets
        .as_ref()
        .unwrap()
        .iter()
        .map(|j| det_family(j, 2).normalized.abs())
        .fold(0.0, f64::max);
    println!("\ncontrol (tau = s/2 is not in the torsion family):");
    println!("  max helix-det residual |D2| = {control_d2:.3e}");
}
