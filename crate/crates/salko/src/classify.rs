//! Determinant characterizations and curve classification.
//!
//! The determinant family `D_k = det(alpha^(k), alpha^(k+1), alpha^(k+2))`
//! separates the special curve classes of this crate:
//!
//! - `D_0 = 0` (with the curve spherical about the determinant's origin):
//!   great circle;
//! - `D_1 = 0`: plane curve (classically `D_1 = kappa^2 tau`);
//! - `D_2 = 0`: constant slope / general helix (`D_2 = kappa^5 (tau/kappa)'`);
//! - `D_3 = 0` with constant curvature: constant-curvature slant helix
//!   (Salkowski curve).
//!
//! `D_3` factorizes over the Frenet data as `kappa^4` times the determinant
//! of the [`KappaTauMatrix`]; for constant curvature that reduces to the
//! second-order torsion ODE `2 tau'' (kappa^2 + tau^2) - 3 tau' (kappa^2 +
//! tau^2)' = 0`, whose solutions are exactly the torsion laws in the
//! `generate` module. Note the `tau'` in the second term: a variant with
//! `tau` in its place circulates in the literature but is not solved by
//! those torsion laws, and [`ode_residual_tau_form`] is kept as a
//! cross-check that the `tau'` form is the consistent one (see the
//! `report` CLI subcommand and the acceptance suite).

use crate::analyze::{estimate_axis, fit_sphere, AxisEstimate, SphereFit};
use crate::curve::CurveSpec;
use crate::error::{Error, FrenetError, Result, SpecError};
use crate::frenet::{frenet_apparatus, FrenetData, FrenetOptions};
use crate::jet::VecJet;
use crate::sample::sample_curve;
use crate::vec3::{det3, Vec3};
use serde::Serialize;

/// Floor for the normalizing product of row norms, keeping the residual
/// dimensionless without dividing by zero on degenerate rows.
pub const EPS_SCALE: f64 = 1e-30;

/// One determinant evaluation: the raw value, the product of row norms it
/// was measured against, and the scale-free residual `value / max(scale,
/// EPS_SCALE)`.
#[derive(Debug, Clone, Copy)]
pub struct DetResidual {
    pub value: f64,
    pub scale: f64,
    pub normalized: f64,
}

pub fn normalized_det(v1: Vec3, v2: Vec3, v3: Vec3) -> DetResidual {
    let value = det3(v1, v2, v3);
    let scale = (v1.norm() * v2.norm() * v3.norm()).max(EPS_SCALE);
    DetResidual {
        value,
        scale,
        normalized: value / scale,
    }
}

/// `D_k = det(alpha^(k), alpha^(k+1), alpha^(k+2))` for `k` in `0..=3`.
pub fn det_family(jets: &VecJet, k: usize) -> DetResidual {
    assert!(k <= 3, "determinant family index {k} out of range");
    normalized_det(
        jets.derivative(k),
        jets.derivative(k + 1),
        jets.derivative(k + 2),
    )
}

/// The 3x3 matrix whose determinant, times `kappa^4`, equals `D_3`.
///
/// Rows: `(phi1, phi2, phi3)`, `(kappa, kappa', kappa'')`,
/// `(tau, tau', tau'')`, with
///
/// ```text
/// phi1 = -(1/kappa)'
/// phi2 = -(1/kappa)'' - (1/kappa)(kappa^2 + tau^2)
/// phi3 = -(1/kappa)''' - {(1/kappa)(kappa^2 + tau^2)}'
///        - (1/(2 kappa))(kappa^2 + tau^2)'
/// ```
#[derive(Debug, Clone, Copy)]
pub struct KappaTauMatrix {
    pub phi1: f64,
    pub phi2: f64,
    pub phi3: f64,
    pub kappa: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    pub tau: f64,
    pub tau1: f64,
    pub tau2: f64,
}

impl KappaTauMatrix {
    /// Build from Frenet data. The third derivative of `1/kappa` consumes
    /// the order-3 curvature jet carried by [`FrenetData`].
    pub fn from_frenet(fd: &FrenetData) -> KappaTauMatrix {
        let u = fd.kappa_jet.recip().expect("kappa positive");
        let g = fd.kappa_jet * fd.kappa_jet + fd.tau_jet * fd.tau_jet;
        let p = u * g;
        KappaTauMatrix {
            phi1: -u.derivative(1),
            phi2: -u.derivative(2) - u.value() * g.value(),
            phi3: -u.derivative(3) - p.derivative(1) - g.derivative(1) / (2.0 * fd.kappa),
            kappa: fd.kappa,
            kappa1: fd.kappa1,
            kappa2: fd.kappa2,
            tau: fd.tau,
            tau1: fd.tau1,
            tau2: fd.tau2,
        }
    }

    pub fn det(&self) -> f64 {
        det3(
            Vec3::new(self.phi1, self.phi2, self.phi3),
            Vec3::new(self.kappa, self.kappa1, self.kappa2),
            Vec3::new(self.tau, self.tau1, self.tau2),
        )
    }
}

/// `D_3` through the curvature/torsion factorization:
/// `kappa^4 * det(KappaTauMatrix)`.
pub fn kt_det(fd: &FrenetData) -> f64 {
    fd.kappa.powi(4) * KappaTauMatrix::from_frenet(fd).det()
}

/// Relative gap between the direct `D_3` and its factorization, measured
/// against `max(|D_3|, 1e-6 * row-norm scale)` so the comparison stays
/// meaningful where both routes resolve an exact zero to rounding noise.
pub fn factorization_gap(jets: &VecJet, fd: &FrenetData) -> f64 {
    let direct = det_family(jets, 3);
    (kt_det(fd) - direct.value).abs() / direct.value.abs().max(1e-6 * direct.scale)
}

/// Torsion ODE residual `2 tau'' (kappa^2 + tau^2) - 3 tau' (kappa^2 +
/// tau^2)'` at one sample. Meaningful as a helix test only where the
/// curvature is constant along the curve; [`classify_curve`] enforces that
/// before aggregating. For constant curvature this equals `2 kappa^(-4)
/// D_3`.
pub fn ode_residual(fd: &FrenetData) -> f64 {
    let g = fd.kappa_jet * fd.kappa_jet + fd.tau_jet * fd.tau_jet;
    2.0 * fd.tau2 * g.value() - 3.0 * fd.tau1 * g.derivative(1)
}

/// Variant of [`ode_residual`] with `tau` in place of `tau'` in the second
/// term. Not annihilated by the generated torsion family; retained as the
/// discrepancy check described in the module docs.
pub fn ode_residual_tau_form(fd: &FrenetData) -> f64 {
    let g = fd.kappa_jet * fd.kappa_jet + fd.tau_jet * fd.tau_jet;
    2.0 * fd.tau2 * g.value() - 3.0 * fd.tau * g.derivative(1)
}

/// Magnitude of the two terms whose cancellation [`ode_residual`] measures.
/// Near the torsion singularity the terms grow like `(1 - u^2)^(-7/2)`, so
/// an annihilation test must read the residual relative to this scale: the
/// subtraction cannot resolve below roughly `f64::EPSILON` times it.
pub fn ode_term_scale(fd: &FrenetData) -> f64 {
    let g = fd.kappa_jet * fd.kappa_jet + fd.tau_jet * fd.tau_jet;
    (2.0 * fd.tau2 * g.value()).abs() + (3.0 * fd.tau1 * g.derivative(1)).abs()
}

/// Classification thresholds. `residual` applies to the normalized
/// determinant residuals; the defaults make the exact-zero conditions of
/// the determinant family testable in floating point.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Tolerances {
    /// Normalized determinant threshold (default 1e-7).
    pub residual: f64,
    /// Relative standard deviation below which `kappa` counts as constant.
    pub kappa_const_rel: f64,
    /// `|mean kappa - 1|` bound for the unit-curvature flag.
    pub unit_kappa: f64,
    /// Sphere-fit rms bound for the great-circle flag.
    pub sphere_rms: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            residual: 1e-7,
            kappa_const_rel: 1e-6,
            unit_kappa: 1e-6,
            sphere_rms: 1e-7,
        }
    }
}

impl Tolerances {
    pub fn with_residual(residual: f64) -> Tolerances {
        Tolerances {
            residual,
            ..Tolerances::default()
        }
    }
}

/// Category flags, most specific first. Several can hold at once: a line
/// satisfies every determinant condition and is reported as degenerate
/// rather than forced into one class.
#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct Flags {
    pub great_circle_on_sphere: bool,
    pub slant_helix_salkowski: bool,
    pub general_helix: bool,
    pub planar: bool,
    pub constant_curvature: bool,
    pub unit_curvature: bool,
    /// Line (vanishing curvature) or circle (planar with constant
    /// curvature).
    pub degenerate: bool,
}

#[derive(Debug, Clone, Copy, Serialize, Default)]
pub struct ResidualStats {
    pub max: f64,
    pub rms: f64,
}

fn stats_of(values: &[f64]) -> ResidualStats {
    if values.is_empty() {
        return ResidualStats::default();
    }
    ResidualStats {
        max: values.iter().fold(0.0, |m, v| m.max(v.abs())),
        rms: (values.iter().map(|v| v * v).sum::<f64>() / values.len() as f64).sqrt(),
    }
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / values.len() as f64;
    (mean, var.sqrt())
}

/// Per-sample normalized residuals.
#[derive(Debug, Clone, Serialize)]
pub struct Residuals {
    #[serde(rename = "D0")]
    pub d0: Vec<f64>,
    #[serde(rename = "D1")]
    pub d1: Vec<f64>,
    #[serde(rename = "D2")]
    pub d2: Vec<f64>,
    #[serde(rename = "D3")]
    pub d3: Vec<f64>,
    /// Raw torsion-ODE residuals; absent when curvature is not constant.
    pub ode: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Stats {
    #[serde(rename = "D0")]
    pub d0: ResidualStats,
    #[serde(rename = "D1")]
    pub d1: ResidualStats,
    #[serde(rename = "D2")]
    pub d2: ResidualStats,
    #[serde(rename = "D3")]
    pub d3: ResidualStats,
    pub ode: Option<ResidualStats>,
    pub kappa_mean: f64,
    pub kappa_std: f64,
    pub sigma_mean: Option<f64>,
    pub sigma_std: Option<f64>,
    /// Max normalized `det(alpha - center, alpha', alpha'')` about the
    /// sphere center, when a sphere is available; the witness behind the
    /// great-circle flag.
    pub d0_centered_max: Option<f64>,
    /// Worst relative gap between direct `D_3` and its `kappa^4`
    /// factorization over the Frenet samples.
    pub kt_vs_d3_max_rel: Option<f64>,
    pub samples: usize,
    pub frenet_samples: usize,
    pub failed_samples: usize,
    pub domain: [f64; 2],
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SphereFitReport {
    pub center: [f64; 3],
    pub radius: f64,
    pub rms: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct AxisReport {
    pub d: [f64; 3],
    pub mean_dot: f64,
    pub std_dot: f64,
    pub theta: f64,
}

/// Everything the classifier measured, with the flags it concluded.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub flags: Flags,
    pub residuals: Residuals,
    pub stats: Stats,
    pub tolerances: Tolerances,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sphere_fit: Option<SphereFitReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis: Option<AxisReport>,
}

impl ClassificationReport {
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Classify a curve: sample it (reparametrizing or integrating as needed),
/// evaluate the determinant family and the Frenet-side residuals, and set
/// the category flags against the given tolerances.
pub fn classify_curve(
    spec: &CurveSpec,
    grid_size: usize,
    tol: &Tolerances,
) -> Result<ClassificationReport> {
    if grid_size < 16 {
        return Err(SpecError(format!("grid size {grid_size} below minimum 16")).into());
    }
    let opts = FrenetOptions::default();
    let samples = sample_curve(spec, grid_size)?;
    let mut failures = samples.failures.clone();

    let mut d = [Vec::new(), Vec::new(), Vec::new(), Vec::new()];
    let mut positions = Vec::new();
    let mut velocity = Vec::new();
    let mut accel = Vec::new();
    // Frenet data paired with the index of its sample.
    let mut frenet: Vec<(usize, FrenetData)> = Vec::new();
    let mut degenerate_curvature = 0usize;

    for (i, point) in samples.points.iter().enumerate() {
        for (k, dk) in d.iter_mut().enumerate() {
            dk.push(det_family(&point.jets, k).normalized);
        }
        positions.push(point.jets.value());
        velocity.push(point.jets.derivative(1));
        accel.push(point.jets.derivative(2));
        match frenet_apparatus(point.s, &point.jets, &opts) {
            Ok(fd) => frenet.push((i, fd)),
            Err(FrenetError::VanishingCurvature { .. }) => degenerate_curvature += 1,
            Err(e) => failures.push((point.s, e.to_string())),
        }
    }

    let total = samples.requested();
    if failures.len() * 10 > total {
        return Err(Error::TooManyFailedSamples {
            failed: failures.len(),
            total,
            first: failures[0].1.clone(),
        });
    }
    // A line has vanishing curvature everywhere: degenerate by design, not
    // a failure. Isolated vanishing-curvature samples on an otherwise
    // regular curve count against the failure budget instead.
    let is_line = degenerate_curvature == samples.points.len();
    if !is_line && degenerate_curvature * 10 > total {
        return Err(Error::TooManyFailedSamples {
            failed: degenerate_curvature,
            total,
            first: "curvature vanishes on much of the curve".into(),
        });
    }

    let kappas: Vec<f64> = frenet.iter().map(|(_, fd)| fd.kappa).collect();
    let sigmas: Vec<f64> = frenet.iter().map(|(_, fd)| fd.sigma).collect();
    let (kappa_mean, kappa_std) = mean_std(&kappas);
    let (sigma_mean, sigma_std) = mean_std(&sigmas);
    let kappa_const = is_line || kappa_std <= tol.kappa_const_rel * kappa_mean.abs().max(1e-12);

    let ode: Option<Vec<f64>> = if kappa_const && !is_line {
        Some(frenet.iter().map(|(_, fd)| ode_residual(fd)).collect())
    } else {
        None
    };

    let kt_vs_d3_max_rel = if frenet.is_empty() {
        None
    } else {
        let mut worst = 0.0f64;
        for (i, fd) in &frenet {
            worst = worst.max(factorization_gap(&samples.points[*i].jets, fd));
        }
        Some(worst)
    };

    // Sphere test for the great-circle gate. Co-circular data defeats the
    // algebraic fit (the sphere family through a circle is one-dimensional),
    // so a planar constant-curvature curve falls back to its own
    // circumscribed sphere, centered at alpha + N/kappa.
    let planar = stats_of(&d[1]).max <= tol.residual;
    let sphere = match fit_sphere(&positions) {
        Ok(fit) => Some(fit),
        Err(_) if planar && kappa_const && !is_line && kappa_mean > opts.kappa_min => {
            circle_circumsphere(&positions, &frenet)
        }
        Err(_) => None,
    };

    let d0_centered_max = sphere.map(|fit| {
        positions
            .iter()
            .zip(&velocity)
            .zip(&accel)
            .map(|((p, v), a)| normalized_det(*p - fit.center, *v, *a).normalized.abs())
            .fold(0.0, f64::max)
    });

    let axis = if frenet.len() >= 8 {
        estimate_axis(&frenet.iter().map(|(_, fd)| fd.frame.n).collect::<Vec<_>>()).ok()
    } else {
        None
    };

    let stats = Stats {
        d0: stats_of(&d[0]),
        d1: stats_of(&d[1]),
        d2: stats_of(&d[2]),
        d3: stats_of(&d[3]),
        ode: ode.as_deref().map(stats_of),
        kappa_mean,
        kappa_std,
        sigma_mean: (!sigmas.is_empty()).then_some(sigma_mean),
        sigma_std: (!sigmas.is_empty()).then_some(sigma_std),
        d0_centered_max,
        kt_vs_d3_max_rel,
        samples: total,
        frenet_samples: frenet.len(),
        failed_samples: failures.len(),
        domain: spec.domain,
    };

    let great_circle_on_sphere = match (&sphere, d0_centered_max) {
        (Some(fit), Some(d0c)) => fit.rms <= tol.sphere_rms && d0c <= tol.residual,
        _ => false,
    };
    let general_helix = stats.d2.max <= tol.residual;
    let slant_helix_salkowski = stats.d3.max <= tol.residual && kappa_const;
    let unit_curvature = kappa_const && !is_line && (kappa_mean - 1.0).abs() <= tol.unit_kappa;
    let is_circle = planar && kappa_const && !is_line;

    let flags = Flags {
        great_circle_on_sphere,
        slant_helix_salkowski,
        general_helix,
        planar,
        constant_curvature: kappa_const,
        unit_curvature,
        degenerate: is_line || is_circle,
    };

    Ok(ClassificationReport {
        flags,
        residuals: Residuals {
            d0: d[0].clone(),
            d1: d[1].clone(),
            d2: d[2].clone(),
            d3: d[3].clone(),
            ode,
        },
        stats,
        tolerances: *tol,
        sphere_fit: sphere.map(|fit| SphereFitReport {
            center: fit.center.to_array(),
            radius: fit.radius,
            rms: fit.rms,
        }),
        axis: axis.map(|a: AxisEstimate| AxisReport {
            d: a.d.to_array(),
            mean_dot: a.mean_dot,
            std_dot: a.std_dot,
            theta: a.theta,
        }),
    })
}

/// Canonical sphere of a planar circle: center `alpha + N/kappa`, radius
/// `1/kappa`. Returns `None` when the per-sample centers scatter, i.e. the
/// curve is not actually a circle.
fn circle_circumsphere(positions: &[Vec3], frenet: &[(usize, FrenetData)]) -> Option<SphereFit> {
    if frenet.is_empty() {
        return None;
    }
    let centers: Vec<Vec3> = frenet
        .iter()
        .map(|(i, fd)| positions[*i] + fd.frame.n * (1.0 / fd.kappa))
        .collect();
    let center = centers.iter().fold(Vec3::ZERO, |acc, c| acc + *c) / centers.len() as f64;
    let radius = 1.0 / (frenet.iter().map(|(_, fd)| fd.kappa).sum::<f64>() / frenet.len() as f64);
    let scatter = centers
        .iter()
        .map(|c| (*c - center).norm())
        .fold(0.0, f64::max);
    if scatter > 1e-6 * radius.max(1.0) {
        return None;
    }
    let rms = (positions
        .iter()
        .map(|p| ((*p - center).norm() - radius).powi(2))
        .sum::<f64>()
        / positions.len() as f64)
        .sqrt();
    Some(SphereFit {
        center,
        radius,
        rms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frenet::FrenetFrame;
    use crate::generate::{frenet_taylor, SalkowskiParams};
    use crate::jet::Jet;
    use approx::assert_relative_eq;

    /// Frenet data for a synthetic kappa = 1 curve with the given torsion
    /// jet, via the Taylor recurrence and the apparatus.
    fn unit_kappa_frenet(s: f64, tau_jet: Jet) -> FrenetData {
        let jets = frenet_taylor(
            &Jet::constant(1.0),
            &tau_jet,
            &FrenetFrame::STANDARD,
            Vec3::ZERO,
        )
        .alpha;
        frenet_apparatus(s, &jets, &FrenetOptions::default()).unwrap()
    }

    #[test]
    fn matrix_entries_for_unit_curvature() {
        // kappa == 1: phi1 = 0, phi2 = -(1 + tau^2), phi3 = -(3/2)(1+tau^2)'.
        let fd = unit_kappa_frenet(1.0, Jet::variable(1.0));
        let m = KappaTauMatrix::from_frenet(&fd);
        assert!(m.phi1.abs() <= 1e-12);
        assert_relative_eq!(m.phi2, -(1.0 + 1.0), epsilon = 1e-12);
        // (1 + tau^2)' = 2 tau tau' = 2 at tau = s, s = 1.
        assert_relative_eq!(m.phi3, -3.0, epsilon = 1e-12);
    }

    #[test]
    fn kt_det_frozen_values() {
        // Constant torsion: the tau row is (tau, 0, 0), parallel to the
        // kappa row direction, so the determinant vanishes.
        let fd = unit_kappa_frenet(0.3, Jet::constant(0.7));
        assert!(kt_det(&fd).abs() <= 1e-12);

        // tau(s) = s at s = 1: hand cofactor expansion gives -3.
        let fd = unit_kappa_frenet(1.0, Jet::variable(1.0));
        assert_relative_eq!(kt_det(&fd), -3.0, epsilon = 1e-11);
    }

    #[test]
    fn kt_det_matches_direct_determinant() {
        // The factorization applied to the same jets the direct determinant
        // sees, on a kappa = 1, tau = s curve.
        for s in [-0.7, 0.0, 0.4, 1.3] {
            let jets = frenet_taylor(
                &Jet::constant(1.0),
                &Jet::variable(s),
                &FrenetFrame::STANDARD,
                Vec3::ZERO,
            )
            .alpha;
            let fd = frenet_apparatus(s, &jets, &FrenetOptions::default()).unwrap();
            let direct = det_family(&jets, 3).value;
            assert_relative_eq!(kt_det(&fd), direct, epsilon = 1e-10, max_relative = 1e-10);
        }
    }

    #[test]
    fn ode_residual_frozen_values() {
        let fd = unit_kappa_frenet(0.3, Jet::constant(0.7));
        assert!(ode_residual(&fd).abs() <= 1e-12);

        // kappa = 1, tau = s at s = 1: 2*0*(1+1) - 3*1*2 = -6.
        let fd = unit_kappa_frenet(1.0, Jet::variable(1.0));
        assert_relative_eq!(ode_residual(&fd), -6.0, epsilon = 1e-11);
        // Cofactor identity for unit curvature: kt_det = ode/2.
        assert_relative_eq!(kt_det(&fd), ode_residual(&fd) / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn generated_torsion_annihilates_ode() {
        let p = SalkowskiParams::new(1.0, Some(1.0), 0.0, None).unwrap();
        for s in [-0.8, -0.3, 0.0, 0.5, 0.85] {
            let fd = unit_kappa_frenet(s, p.torsion_jet(s).unwrap());
            assert!(
                ode_residual(&fd).abs() <= 1e-9,
                "residual {} at s = {s}",
                ode_residual(&fd)
            );
            // The tau-form variant does not vanish away from s = 0.
            if s.abs() > 0.2 {
                assert!(ode_residual_tau_form(&fd).abs() >= 1e-2);
            }
        }
    }

    #[test]
    fn det_family_on_witnesses() {
        // Great circle: D0 vanishes identically.
        let spec = CurveSpec::from_json_str(
            r#"{"family": "great-circle", "domain": [0, 6.283185307179586]}"#,
        )
        .unwrap();
        for s in spec.grid(32) {
            let jets = spec.eval_jets(s).unwrap();
            assert!(det_family(&jets, 0).normalized.abs() <= 1e-12);
        }

        // Circular helix: D2 vanishes, D1 = kappa^2 tau does not.
        let helix = CurveSpec::from_json_str(
            r#"{"family": "circular-helix", "params": {"a": 3, "b": 4}, "domain": [0, 10]}"#,
        )
        .unwrap();
        for s in helix.grid(32) {
            let jets = helix.eval_jets(s).unwrap();
            assert!(det_family(&jets, 2).normalized.abs() <= 1e-10);
            assert!(det_family(&jets, 1).normalized.abs() >= 1e-3);
        }
    }

    #[test]
    fn classical_identities_d1_d2() {
        // D1 = kappa^2 tau and D2 = kappa^5 (tau/kappa)' on the helix.
        let helix = CurveSpec::from_json_str(
            r#"{"family": "circular-helix", "params": {"a": 3, "b": 4}, "domain": [0, 10]}"#,
        )
        .unwrap();
        for s in helix.grid(16) {
            let jets = helix.eval_jets(s).unwrap();
            let fd = frenet_apparatus(s, &jets, &FrenetOptions::default()).unwrap();
            let d1 = det_family(&jets, 1).value;
            assert_relative_eq!(
                d1,
                fd.kappa * fd.kappa * fd.tau,
                epsilon = 1e-12,
                max_relative = 1e-9
            );
            let slope_rate = fd.tau_jet.div(&fd.kappa_jet).unwrap().derivative(1);
            let d2 = det_family(&jets, 2).value;
            assert_relative_eq!(
                d2,
                fd.kappa.powi(5) * slope_rate,
                epsilon = 1e-12,
                max_relative = 1e-9
            );
        }
    }

    #[test]
    fn classify_circular_helix() {
        let spec = CurveSpec::from_json_str(
            r#"{"family": "circular-helix", "params": {"a": 3, "b": 4}, "domain": [0, 10]}"#,
        )
        .unwrap();
        let report = classify_curve(&spec, 64, &Tolerances::default()).unwrap();
        assert!(report.flags.general_helix);
        assert!(!report.flags.planar);
        assert!(report.flags.slant_helix_salkowski);
        assert!(report.flags.constant_curvature);
        assert!(!report.flags.unit_curvature);
        assert!(!report.flags.degenerate);
    }

    #[test]
    fn classify_planar_parabola() {
        let spec = CurveSpec::from_json_str(
            r#"{"family": "planar-polynomial", "params": {"c2": 1}, "domain": [-1, 1]}"#,
        )
        .unwrap();
        let report = classify_curve(&spec, 48, &Tolerances::default()).unwrap();
        assert!(report.flags.planar);
        assert!(
            report.flags.general_helix,
            "tau == 0 is a degenerate constant slope"
        );
        assert!(!report.flags.slant_helix_salkowski, "kappa varies");
        assert!(!report.flags.constant_curvature);
        assert!(!report.flags.degenerate);
    }

    #[test]
    fn classify_generated_salkowski() {
        let spec = CurveSpec::from_json_str(
            r#"{"family": "salkowski-generated", "params": {"b": 1}, "domain": [-0.9, 0.9]}"#,
        )
        .unwrap();
        let report = classify_curve(&spec, 48, &Tolerances::default()).unwrap();
        assert!(report.flags.slant_helix_salkowski);
        assert!(!report.flags.general_helix);
        assert!(!report.flags.planar);
        assert!(report.flags.unit_curvature);
        assert!(report.stats.d3.max <= 1e-6);
    }

    #[test]
    fn classify_line_as_degenerate() {
        let spec = CurveSpec::from_json_str(
            r#"{"family": "line", "params": {"dx": 1, "dy": 2, "dz": 3}, "domain": [0, 5]}"#,
        )
        .unwrap();
        let report = classify_curve(&spec, 32, &Tolerances::default()).unwrap();
        assert!(report.flags.degenerate);
        assert!(report.flags.planar);
        assert!(report.flags.general_helix);
        assert!(report.flags.slant_helix_salkowski);
        assert_eq!(report.stats.frenet_samples, 0);
    }

    #[test]
    fn classify_great_circle() {
        let spec = CurveSpec::from_json_str(
            r#"{"family": "great-circle", "domain": [0, 6.283185307179586]}"#,
        )
        .unwrap();
        let report = classify_curve(&spec, 64, &Tolerances::default()).unwrap();
        assert!(report.flags.degenerate, "circles are flagged degenerate");
        assert!(report.flags.planar);
        assert!(report.flags.unit_curvature);
        assert!(report.stats.d0.max <= 1e-12);
        assert!(
            report.flags.great_circle_on_sphere,
            "sphere gate failed: sphere {:?}, d0c {:?}",
            report.sphere_fit, report.stats.d0_centered_max
        );
    }

    #[test]
    fn scaling_leaves_classification_invariant() {
        for lambda in [0.01, 1.0, 100.0] {
            let spec = CurveSpec::expressions(
                &format!("{lambda}*3*cos(s/5)"),
                &format!("{lambda}*3*sin(s/5)"),
                &format!("{lambda}*4*s/5"),
                Default::default(),
                false,
                [0.0, 10.0],
            )
            .unwrap();
            let report = classify_curve(&spec, 32, &Tolerances::default()).unwrap();
            assert!(report.flags.general_helix, "lambda = {lambda}");
            assert!(!report.flags.planar, "lambda = {lambda}");
        }
    }

    #[test]
    fn grid_too_small_rejected() {
        let spec =
            CurveSpec::from_json_str(r#"{"family": "great-circle", "domain": [0, 6.28]}"#).unwrap();
        assert!(classify_curve(&spec, 8, &Tolerances::default()).is_err());
    }

    #[test]
    fn scaling_covariance_of_raw_determinant() {
        // Replacing alpha by lambda alpha scales each D_k by lambda^3 and
        // leaves the normalized residual unchanged.
        let spec = CurveSpec::from_json_str(
            r#"{"family": "circular-helix", "params": {"a": 3, "b": 4}, "domain": [0, 10]}"#,
        )
        .unwrap();
        let jets = spec.eval_jets(2.0).unwrap();
        let lambda = 17.5;
        let scaled = VecJet::new(
            jets.x.scale(lambda),
            jets.y.scale(lambda),
            jets.z.scale(lambda),
        );
        for k in 0..=3 {
            let base = det_family(&jets, k);
            let big = det_family(&scaled, k);
            assert_relative_eq!(
                big.value,
                lambda.powi(3) * base.value,
                epsilon = 1e-9,
                max_relative = 1e-12
            );
            assert_relative_eq!(
                big.normalized,
                base.normalized,
                epsilon = 1e-15,
                max_relative = 1e-12
            );
        }
    }
}
