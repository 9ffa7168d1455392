//! Uniform sampling of any curve spec into per-sample order-5 jets.
//!
//! Three paths, picked per spec:
//! - analytic forms that claim unit speed evaluate jets directly;
//! - non-unit-speed forms go through arc-length reparametrization;
//! - the `salkowski-generated` family is integrated once over the domain
//!   and its jets come from the Frenet Taylor recurrence at each sample.

use crate::curve::{CurveForm, CurveSpec, FamilyCurve};
use crate::error::Result;
use crate::frenet::{reparametrize_by_arclength, FrenetFrame};
use crate::generate::{
    frenet_taylor, generate_salkowski, integrate_frenet, ConstLaw, SalkowskiParams,
};
use crate::jet::VecJet;
use crate::vec3::Vec3;

/// Minimum number of integration steps used when realizing a generated
/// curve, regardless of how few report samples were requested.
const MIN_INTEGRATION_STEPS: usize = 8192;

#[derive(Debug, Clone)]
pub struct SamplePoint {
    pub s: f64,
    pub jets: VecJet,
}

#[derive(Debug, Clone)]
pub struct CurveSamples {
    pub points: Vec<SamplePoint>,
    /// Samples that failed with a per-sample domain error (position, message).
    pub failures: Vec<(f64, String)>,
}

impl CurveSamples {
    pub fn requested(&self) -> usize {
        self.points.len() + self.failures.len()
    }
}

/// Sample a curve spec on a uniform `n`-point grid, producing unit-speed
/// jets wherever the curve admits a Frenet frame.
pub fn sample_curve(spec: &CurveSpec, n: usize) -> Result<CurveSamples> {
    assert!(n >= 2, "need at least two samples");
    match &spec.form {
        CurveForm::Family(FamilyCurve::SalkowskiGenerated(p)) => {
            let sub = MIN_INTEGRATION_STEPS.div_ceil(n - 1);
            let steps = sub * (n - 1);
            let curve = generate_salkowski(p, spec.domain, steps)?;
            let jets = curve.jets.as_ref().expect("integration records jets");
            let points = (0..n)
                .map(|i| SamplePoint {
                    s: curve.s[i * sub],
                    jets: jets[i * sub],
                })
                .collect();
            Ok(CurveSamples {
                points,
                failures: Vec::new(),
            })
        }
        _ if spec.unit_speed_claim() => {
            let mut points = Vec::with_capacity(n);
            let mut failures = Vec::new();
            for s in spec.grid(n) {
                match spec.eval_jets(s) {
                    Ok(jets) => points.push(SamplePoint { s, jets }),
                    Err(e) => failures.push((s, e.to_string())),
                }
            }
            Ok(CurveSamples { points, failures })
        }
        _ => {
            let rep = reparametrize_by_arclength(spec, n)?;
            let points = rep
                .s
                .into_iter()
                .zip(rep.jets)
                .map(|(s, jets)| SamplePoint { s, jets })
                .collect();
            Ok(CurveSamples {
                points,
                failures: Vec::new(),
            })
        }
    }
}

/// Order-5 jets of a generated Salkowski curve at a single parameter value,
/// by integrating from the domain start. Used by the one-off evaluation
/// path; batch consumers should sample the whole curve instead.
pub fn salkowski_jets_at(p: &SalkowskiParams, domain: [f64; 2], s: f64) -> Result<VecJet> {
    p.check_interval(domain)?;
    p.check_interval([domain[0], s])?;
    let span = s - domain[0];
    if span.abs() < 1e-12 {
        let tau_jet = p.torsion_jet(s)?;
        return Ok(frenet_taylor(
            &crate::jet::Jet::constant(p.a),
            &tau_jet,
            &FrenetFrame::STANDARD,
            Vec3::ZERO,
        )
        .alpha);
    }
    let steps =
        ((span / (domain[1] - domain[0]) * MIN_INTEGRATION_STEPS as f64).ceil() as usize).max(64);
    let curve = integrate_frenet(
        &ConstLaw(p.a),
        p,
        &FrenetFrame::STANDARD,
        Vec3::ZERO,
        [domain[0], s],
        steps,
    )?;
    Ok(*curve.jets.as_ref().unwrap().last().unwrap())
}
