//! The determinant identities at work: D1 = kappa^2 tau, D2 = kappa^5
//! (tau/kappa)', the kappa^4 factorization of D3, and the torsion ODE.
//!
//! Run with `cargo run --example identities`.

use salko::classify::{det_family, kt_det, ode_residual};
use salko::frenet::{frenet_apparatus, FrenetOptions};
use salko::CurveSpec;

fn main() {
    let spec = CurveSpec::from_json_str(
        r#"{"family": "circular-helix", "params": {"a": 3, "b": 4}, "domain": [0, 10]}"#,
    )
    .unwrap();
    let opts = FrenetOptions::default();

    println!("circular helix a = 3, b = 4 (kappa = 0.12, tau = 0.16):");
    let jets = spec.eval_jets(2.5).unwrap();
    let fd = frenet_apparatus(2.5, &jets, &opts).unwrap();
    println!(
        "  D1 = {:+.12e}   kappa^2 tau       = {:+.12e}",
        det_family(&jets, 1).value,
        fd.kappa * fd.kappa * fd.tau
    );
    println!(
        "  D2 = {:+.12e}   kappa^5 (tau/k)'  = {:+.12e}",
        det_family(&jets, 2).value,
        fd.kappa.powi(5) * fd.tau_jet.div(&fd.kappa_jet).unwrap().derivative(1)
    );
    println!(
        "  D3 = {:+.12e}   kappa^4 det(M)    = {:+.12e}",
        det_family(&jets, 3).value,
        kt_det(&fd)
    );

    // On a unit-curvature curve the factorized determinant is half the
    // torsion ODE residual; a twisted non-helix makes both visibly nonzero.
    let control = salko::fixtures::quadratic_torsion_control(512).unwrap();
    println!("\nkappa = 1, tau = s^2 (not a slant helix):");
    println!(
        "  {:>8} {:>15} {:>15}",
        "s", "kappa^4 det(M)", "ode residual / 2"
    );
    let jets = control.jets.as_ref().unwrap();
    for i in (0..control.len()).step_by(128) {
        let fd = frenet_apparatus(control.s[i], &jets[i], &opts).unwrap();
        println!(
            "  {:>8.3} {:>15.6e} {:>15.6e}",
            control.s[i],
            kt_det(&fd),
            ode_residual(&fd) / 2.0
        );
    }
}
