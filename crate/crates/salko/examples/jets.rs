//! Order-5 jet arithmetic: exact derivatives of composed functions.
//!
//! Run with `cargo run --example jets`.

use salko::{ExprAst, Jet};
use std::collections::BTreeMap;

fn main() {
    // Jets carry a value and five derivatives through any composition.
    let s = Jet::variable(0.5);
    let f = (Jet::constant(1.0) - s * s).recip().unwrap();
    println!("f(s) = 1/(1 - s^2) at s = 0.5");
    for k in 0..=5 {
        println!("  f^({k}) = {:+.12e}", f.derivative(k));
    }

    // The same machinery drives the expression language.
    let ast = ExprAst::parse("exp(0.3*sin(2*s)) / sqrt(1 + s^2)").unwrap();
    let params = BTreeMap::new();
    let jet = ast.eval_jet(&Jet::variable(0.8), &params).unwrap();
    println!("\ng(s) = exp(0.3 sin 2s) / sqrt(1 + s^2) at s = 0.8");
    for k in 0..=5 {
        println!("  g^({k}) = {:+.12e}", jet.derivative(k));
    }

    // Derivatives are exact to rounding; compare order 3 against a crude
    // central difference to see the difference in quality.
    let g = |x: f64| ast.eval_f64(x, &params).unwrap();
    let h = 1e-2;
    let fd3 = (g(0.8 + 2.0 * h) - 2.0 * g(0.8 + h) + 2.0 * g(0.8 - h) - g(0.8 - 2.0 * h))
        / (2.0 * h * h * h);
    println!("\nthird derivative: jet {:+.12e}", jet.derivative(3));
    println!("                  fd  {fd3:+.12e}  (step {h})");
}
