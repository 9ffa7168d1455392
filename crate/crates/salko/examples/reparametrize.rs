//! Arc-length reparametrization of a non-unit-speed expression curve, with
//! the curvature invariance check that makes it trustworthy.
//!
//! Run with `cargo run --example reparametrize`.

use salko::frenet::{frenet_apparatus, reparametrize_by_arclength, FrenetOptions};
use salko::CurveSpec;
use std::collections::BTreeMap;

fn main() {
    // A parabola given in its natural (non-arc-length) parameter.
    let spec =
        CurveSpec::expressions("s", "s^2", "0", BTreeMap::new(), false, [-1.0, 1.0]).unwrap();

    let rep = reparametrize_by_arclength(&spec, 9).unwrap();
    println!(
        "parabola (t, t^2, 0) on [-1, 1]: total length {:.12}",
        rep.total_length
    );
    println!(
        "{:>10} {:>12} {:>12} {:>14} {:>14}",
        "s", "t(s)", "|alpha'|-1", "kappa(s)", "2/(1+4t^2)^1.5"
    );
    let opts = FrenetOptions::default();
    for ((s, t), jets) in rep.s.iter().zip(&rep.t).zip(&rep.jets) {
        let fd = frenet_apparatus(*s, jets, &opts).unwrap();
        let speed_dev = jets.derivative(1).norm() - 1.0;
        let closed_form = 2.0 / (1.0 + 4.0 * t * t).powf(1.5);
        println!(
            "{s:>10.5} {t:>12.6} {speed_dev:>12.2e} {:>14.9} {closed_form:>14.9}",
            fd.kappa
        );
    }
}
