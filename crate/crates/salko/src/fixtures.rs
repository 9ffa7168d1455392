//! Built-in curves used by the self-verification suite and the tests:
//! one witness per classification category, the generated-torsion grid, a
//! non-slant control, and a deterministic random-curve generator.

use crate::curve::CurveSpec;
use crate::error::Result;
use crate::frenet::FrenetFrame;
use crate::generate::{integrate_frenet, ConstLaw, ExprLaw, SalkowskiParams, SampledCurve};
use crate::jet::Jet;
use crate::vec3::Vec3;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// One witness spec per classification category.
pub fn witness_specs() -> Vec<(&'static str, CurveSpec)> {
    vec![
        (
            "great-circle",
            CurveSpec::from_json_str(
                r#"{"family": "great-circle", "domain": [0.0, 6.283185307179586]}"#,
            )
            .unwrap(),
        ),
        (
            "planar-parabola",
            CurveSpec::from_json_str(
                r#"{"family": "planar-polynomial", "params": {"c2": 1.0}, "domain": [-1.0, 1.0]}"#,
            )
            .unwrap(),
        ),
        (
            "circular-helix",
            CurveSpec::from_json_str(
                r#"{"family": "circular-helix", "params": {"a": 3.0, "b": 4.0}, "domain": [0.0, 10.0]}"#,
            )
            .unwrap(),
        ),
        (
            "salkowski-b1",
            CurveSpec::from_json_str(
                r#"{"family": "salkowski-generated", "params": {"b": 1.0}, "domain": [-0.9, 0.9]}"#,
            )
            .unwrap(),
        ),
    ]
}

/// The generated-torsion parameter grid: `b` in {0.5, 1, 2} crossed with
/// `c` in {0, 0.1} at unit curvature, plus one non-unit constant curvature
/// case. Domains are the full admissible intervals.
pub fn salkowski_grid() -> Vec<(String, SalkowskiParams, [f64; 2])> {
    let mut out = Vec::new();
    for b in [0.5, 1.0, 2.0] {
        for c in [0.0, 0.1] {
            let p = SalkowskiParams::new(1.0, Some(b), c, None).unwrap();
            let domain = p.admissible_interval();
            out.push((format!("salkowski-b{b}-c{c}"), p, domain));
        }
    }
    let p = SalkowskiParams::new(1.2, Some(0.1), 0.0, None).unwrap();
    let domain = p.admissible_interval();
    out.push(("const-kappa-1.2-b0.1".into(), p, domain));
    out
}

/// Control curve: unit curvature with `tau = s^2`, which is *not* of the
/// slant-helix torsion form. Its `D_3` residual stays large.
pub fn quadratic_torsion_control(steps: usize) -> Result<SampledCurve> {
    integrate_frenet(
        &ConstLaw(1.0),
        &ExprLaw::parse("s^2")?,
        &FrenetFrame::STANDARD,
        Vec3::ZERO,
        [-1.0, 1.0],
        steps,
    )
}

/// Deterministic pseudo-random regular curve: a linear drift plus small
/// trigonometric perturbations, rejected and redrawn until the curvature
/// stays above `1e-4` and the speed above `0.3` on a probe grid. Returns an
/// expression-curve spec so the full parser/eval path is exercised.
pub fn random_regular_curve(rng: &mut ChaCha8Rng) -> CurveSpec {
    loop {
        let amp = |rng: &mut ChaCha8Rng| rng.gen_range(0.08..0.22);
        let freq = |rng: &mut ChaCha8Rng| rng.gen_range(0.6..1.6);
        let phase = |rng: &mut ChaCha8Rng| rng.gen_range(0.0..std::f64::consts::TAU);
        let x = format!(
            "s + {:.4}*sin({:.4}*s + {:.4})",
            amp(rng),
            freq(rng),
            phase(rng)
        );
        let y = format!(
            "{:.4}*s + {:.4}*cos({:.4}*s + {:.4})",
            rng.gen_range(0.2..0.5),
            amp(rng),
            freq(rng),
            phase(rng)
        );
        let z = format!(
            "{:.4}*s + {:.4}*sin({:.4}*s + {:.4})",
            rng.gen_range(-0.35..0.35),
            amp(rng),
            freq(rng),
            phase(rng)
        );
        let spec = CurveSpec::expressions(&x, &y, &z, BTreeMap::new(), false, [0.0, 3.0]).unwrap();
        if curve_is_well_conditioned(&spec) {
            return spec;
        }
    }
}

/// Seeded generator for a batch of random regular curves.
pub fn random_regular_curves(seed: u64, count: usize) -> Vec<CurveSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_regular_curve(&mut rng)).collect()
}

fn curve_is_well_conditioned(spec: &CurveSpec) -> bool {
    for s in spec.grid(64) {
        let Ok(jets) = spec.eval_jets(s) else {
            return false;
        };
        let v = jets.derivative(1);
        let a = jets.derivative(2);
        let speed = v.norm();
        if speed < 0.3 {
            return false;
        }
        // kappa for a general parametrization: |v x a| / |v|^3.
        let kappa = v.cross(a).norm() / speed.powi(3);
        if kappa < 5e-4 {
            return false;
        }
    }
    true
}

/// Closed-form constant-curvature reference: position and frame of the
/// curve with `kappa, tau` constant through the standard initial frame at
/// the origin, via rotation about the fixed Darboux axis. Independent of
/// the Runge-Kutta path, so it serves as the integrator's oracle.
pub fn constant_curvature_reference(kappa: f64, tau: f64, s: f64) -> (Vec3, FrenetFrame) {
    let t0 = Vec3::new(1.0, 0.0, 0.0);
    let n0 = Vec3::new(0.0, 1.0, 0.0);
    let b0 = Vec3::new(0.0, 0.0, 1.0);
    let omega = (kappa * kappa + tau * tau).sqrt();
    let u = (t0 * tau + b0 * kappa) / omega;
    let rotate = |v: Vec3, angle: f64| {
        v * angle.cos() + u.cross(v) * angle.sin() + u * (u.dot(v) * (1.0 - angle.cos()))
    };
    let t = rotate(t0, omega * s);
    let n = rotate(n0, omega * s);
    let b = rotate(b0, omega * s);
    // alpha(s) = integral of T(sigma): the axis component advances
    // linearly, the perpendicular part integrates to a circle.
    let t_par = u * (t0.dot(u));
    let t_perp = t0 - t_par;
    let pos = t_par * s
        + t_perp * ((omega * s).sin() / omega)
        + u.cross(t0) * ((1.0 - (omega * s).cos()) / omega);
    (pos, FrenetFrame { t, n, b })
}

/// Jets of the circular helix with constant `kappa, tau` at `s`, expressed
/// through the Frenet Taylor recurrence from the reference frame.
pub fn constant_curvature_jets(kappa: f64, tau: f64, s: f64) -> crate::jet::VecJet {
    let (pos, frame) = constant_curvature_reference(kappa, tau, s);
    crate::generate::frenet_taylor(&Jet::constant(kappa), &Jet::constant(tau), &frame, pos).alpha
}
