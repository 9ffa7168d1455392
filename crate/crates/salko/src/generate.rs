//! Curve generation from curvature and torsion laws.
//!
//! The central law here is the torsion of constant-curvature slant helices
//! (Salkowski curves),
//!
//! ```text
//! tau(s) = a^3 (b s + c) / sqrt(1 - a^4 (b s + c)^2),   kappa(s) = a,
//! ```
//!
//! admissible where `a^4 (b s + c)^2 < 1`. Only the `+` branch is
//! implemented; the `-` branch is the same family with `b` and `c` negated.
//! With `a = 1`, `c = 0` and `b = 1/tan(phi)` the law takes the form
//! `s / sqrt(tan(phi)^2 - s^2)`, where `phi` is the fixed angle the
//! principal normal keeps with the helix axis.
//!
//! No closed-form position exists for these curves, so they are realized by
//! integrating the Frenet system `alpha' = T, T' = kappa N, N' = -kappa T +
//! tau B, B' = -tau N` with classical fourth-order Runge-Kutta, re-
//! orthonormalizing the frame by Gram-Schmidt after every step. Order-5
//! jets at each sample come from the Taylor recurrence of the same system
//! seeded with the integrated frame, so downstream determinant tests see
//! jets that are exact for the curve through that frame.

use crate::error::{Error, Result, SpecError};
use crate::expr::ExprAst;
use crate::frenet::{sigma_from_jets, FrenetFrame};
use crate::jet::{Jet, VecJet};
use crate::vec3::Vec3;
use std::collections::BTreeMap;

/// Margin kept between the sampled interval and the torsion singularity at
/// `|b s + c| -> 1/a^2`. The torsion derivative grows like
/// `(1 - u^2)^(-3/2)` there and the fixed-step integrator has no error
/// control, so the domain is clipped conservatively.
pub const SINGULARITY_MARGIN: f64 = 1e-3;

/// Parameters of a generated constant-curvature slant helix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SalkowskiParams {
    /// Constant curvature.
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Normal-axis angle, when the curve was specified through it
    /// (`b = 1/tan(phi)`, `c = 0`).
    pub phi: Option<f64>,
}

impl SalkowskiParams {
    /// Validate parameters. When `phi` is supplied it determines
    /// `b = 1/tan(phi)` and forces `c = 0`; a `b` supplied alongside `phi`
    /// must satisfy `b * tan(phi) = 1` to 1e-12.
    pub fn new(a: f64, b: Option<f64>, c: f64, phi: Option<f64>) -> Result<SalkowskiParams> {
        if !(a.is_finite() && a > 0.0) {
            return Err(SpecError(format!("curvature a = {a} must be positive")).into());
        }
        let b = match (b, phi) {
            (_, Some(phi)) => {
                let tan_phi = phi.tan();
                if !tan_phi.is_finite() || tan_phi == 0.0 {
                    return Err(SpecError(format!("phi = {phi} has no finite 1/tan(phi)")).into());
                }
                if c != 0.0 {
                    return Err(SpecError("phi fixes c = 0".into()).into());
                }
                let derived = 1.0 / tan_phi;
                if let Some(b) = b {
                    if (b * tan_phi - 1.0).abs() > 1e-12 {
                        return Err(SpecError(format!(
                            "inconsistent parameters: b * tan(phi) = {} != 1",
                            b * tan_phi
                        ))
                        .into());
                    }
                }
                derived
            }
            (Some(b), None) => b,
            (None, None) => return Err(SpecError("either b or phi must be given".into()).into()),
        };
        if !(b.is_finite() && b != 0.0) {
            return Err(SpecError(format!("b = {b} must be nonzero")).into());
        }
        if !c.is_finite() {
            return Err(SpecError(format!("c = {c} must be finite")).into());
        }
        Ok(SalkowskiParams { a, b, c, phi })
    }

    /// `1 - a^4 (b s + c)^2` at `s`; the torsion is defined where this is
    /// at least [`SINGULARITY_MARGIN`].
    pub fn margin_at(&self, s: f64) -> f64 {
        let u = self.b * s + self.c;
        1.0 - self.a.powi(4) * u * u
    }

    /// Largest admissible interval `a^4 (b s + c)^2 <= 1 - margin`. The
    /// endpoints are nudged inward by a few ulps so they pass
    /// [`SalkowskiParams::check_interval`] despite rounding.
    pub fn admissible_interval(&self) -> [f64; 2] {
        let u_max = (1.0 - SINGULARITY_MARGIN).sqrt() / (self.a * self.a);
        let s1 = (-u_max - self.c) / self.b;
        let s2 = (u_max - self.c) / self.b;
        let (lo, hi) = (s1.min(s2), s1.max(s2));
        let nudge = 1e-12 * (hi - lo);
        [lo + nudge, hi - nudge]
    }

    /// Check that a whole interval stays inside the admissible region.
    /// `u = b s + c` is linear in `s`, so the endpoints suffice.
    pub fn check_interval(&self, domain: [f64; 2]) -> Result<()> {
        for s in domain {
            if self.margin_at(s) < SINGULARITY_MARGIN * (1.0 - 1e-9) {
                let adm = self.admissible_interval();
                return Err(Error::Domain(format!(
                    "s = {s} outside the admissible interval [{:.6}, {:.6}] (margin {SINGULARITY_MARGIN})",
                    adm[0], adm[1]
                )));
            }
        }
        Ok(())
    }

    /// Torsion value at `s` (`+` branch).
    pub fn torsion(&self, s: f64) -> Result<f64> {
        Ok(self.torsion_jet(s)?.value())
    }

    /// Torsion as an order-5 jet in `s`, exact to rounding.
    pub fn torsion_jet(&self, s: f64) -> Result<Jet> {
        let w = self.margin_at(s);
        if w <= SINGULARITY_MARGIN {
            return Err(Error::Domain(format!(
                "torsion undefined at s = {s}: 1 - a^4(bs+c)^2 = {w:.3e} <= {SINGULARITY_MARGIN}"
            )));
        }
        let u = Jet::variable(s).scale(self.b) + Jet::constant(self.c);
        let a4 = self.a.powi(4);
        let w_jet = Jet::constant(1.0) - (u * u).scale(a4);
        let root = w_jet.sqrt().expect("w bounded away from zero");
        u.scale(self.a.powi(3))
            .div(&root)
            .map_err(|e| Error::Domain(e.to_string()))
    }

    /// The constant value of the slant-helix invariant on this curve.
    pub fn sigma(&self) -> f64 {
        self.a * self.b
    }
}

/// Torsion law `tau(s) = a^3 (b s + c) / sqrt(1 - a^4 (b s + c)^2)`.
///
/// Free-function form of [`SalkowskiParams::torsion`].
pub fn salkowski_torsion(s: f64, p: &SalkowskiParams) -> Result<f64> {
    p.torsion(s)
}

/// A scalar function of arc length that can report its own jet; the
/// interface the integrator takes curvature and torsion through.
pub trait ScalarLaw {
    fn jet(&self, s: f64) -> Result<Jet>;

    fn value(&self, s: f64) -> Result<f64> {
        Ok(self.jet(s)?.value())
    }
}

/// Constant law (e.g. the curvature of circles, helices and Salkowski
/// curves).
#[derive(Debug, Clone, Copy)]
pub struct ConstLaw(pub f64);

impl ScalarLaw for ConstLaw {
    fn jet(&self, _s: f64) -> Result<Jet> {
        Ok(Jet::constant(self.0))
    }
}

impl ScalarLaw for SalkowskiParams {
    fn jet(&self, s: f64) -> Result<Jet> {
        self.torsion_jet(s)
    }
}

/// Law given by an expression in `s`, e.g. `"s^2"` for the non-slant
/// control torsion.
#[derive(Debug, Clone)]
pub struct ExprLaw {
    ast: ExprAst,
    params: BTreeMap<String, f64>,
}

impl ExprLaw {
    pub fn parse(text: &str) -> Result<ExprLaw> {
        let ast = ExprAst::parse(text)?;
        let params = BTreeMap::new();
        ast.validate_params(&params)?;
        Ok(ExprLaw { ast, params })
    }
}

impl ScalarLaw for ExprLaw {
    fn jet(&self, s: f64) -> Result<Jet> {
        self.ast.eval_jet(&Jet::variable(s), &self.params)
    }
}

/// How a sampled curve was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Analytic,
    Integrated,
}

/// A curve realized on a uniform arc-length grid.
#[derive(Debug, Clone)]
pub struct SampledCurve {
    pub s: Vec<f64>,
    pub positions: Vec<Vec3>,
    pub frames: Option<Vec<FrenetFrame>>,
    pub kappa: Option<Vec<f64>>,
    pub tau: Option<Vec<f64>>,
    pub sigma: Option<Vec<f64>>,
    /// Order-5 arc-length jets at each sample, when available.
    pub jets: Option<Vec<VecJet>>,
    pub provenance: Provenance,
}

impl SampledCurve {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn step(&self) -> f64 {
        if self.s.len() < 2 {
            0.0
        } else {
            self.s[1] - self.s[0]
        }
    }
}

/// Integration state: position and frame, as a flat 4-vector bundle.
#[derive(Debug, Clone, Copy)]
struct State {
    pos: Vec3,
    t: Vec3,
    n: Vec3,
    b: Vec3,
}

impl State {
    fn axpy(&self, h: f64, d: &State) -> State {
        State {
            pos: self.pos + d.pos * h,
            t: self.t + d.t * h,
            n: self.n + d.n * h,
            b: self.b + d.b * h,
        }
    }
}

fn frenet_rhs(kappa: f64, tau: f64, y: &State) -> State {
    State {
        pos: y.t,
        t: y.n * kappa,
        n: y.b * tau - y.t * kappa,
        b: y.n * -tau,
    }
}

/// Integrate the Frenet system with classical RK4 over `steps` uniform
/// steps, re-orthonormalizing the frame after each step.
///
/// The step must satisfy `h <= (domain length)/64`. Global position error
/// against analytic references is `O(h^4)`.
pub fn integrate_frenet(
    kappa: &dyn ScalarLaw,
    tau: &dyn ScalarLaw,
    frame0: &FrenetFrame,
    origin: Vec3,
    domain: [f64; 2],
    steps: usize,
) -> Result<SampledCurve> {
    let [s0, s1] = domain;
    if !(s0.is_finite() && s1.is_finite() && s0 < s1) {
        return Err(SpecError(format!("domain [{s0}, {s1}] must be a finite interval")).into());
    }
    if steps < 64 {
        return Err(Error::BadStep(format!(
            "step {} exceeds (domain length)/64; need at least 64 steps, got {steps}",
            (s1 - s0) / steps.max(1) as f64
        )));
    }
    if frame0.orthonormality_error() > 1e-9 {
        return Err(SpecError(format!(
            "initial frame is not orthonormal right-handed (error {:.3e})",
            frame0.orthonormality_error()
        ))
        .into());
    }

    let h = (s1 - s0) / steps as f64;
    let n_samples = steps + 1;
    let mut out = SampledCurve {
        s: Vec::with_capacity(n_samples),
        positions: Vec::with_capacity(n_samples),
        frames: Some(Vec::with_capacity(n_samples)),
        kappa: Some(Vec::with_capacity(n_samples)),
        tau: Some(Vec::with_capacity(n_samples)),
        sigma: Some(Vec::with_capacity(n_samples)),
        jets: Some(Vec::with_capacity(n_samples)),
        provenance: Provenance::Integrated,
    };

    let mut y = State {
        pos: origin,
        t: frame0.t,
        n: frame0.n,
        b: frame0.b,
    };

    for i in 0..=steps {
        let s = s0 + h * i as f64;
        let frame = FrenetFrame {
            t: y.t,
            n: y.n,
            b: y.b,
        };
        let kappa_jet = kappa.jet(s)?;
        let tau_jet = tau.jet(s)?;
        record_sample(&mut out, s, y.pos, &frame, &kappa_jet, &tau_jet);
        if i == steps {
            break;
        }

        let rhs = |ss: f64, y: &State| -> Result<State> {
            Ok(frenet_rhs(kappa.value(ss)?, tau.value(ss)?, y))
        };
        let k1 = rhs(s, &y)?;
        let k2 = rhs(s + 0.5 * h, &y.axpy(0.5 * h, &k1))?;
        let k3 = rhs(s + 0.5 * h, &y.axpy(0.5 * h, &k2))?;
        let k4 = rhs(s + h, &y.axpy(h, &k3))?;
        let mut next = y;
        next.pos = y.pos + (k1.pos + k2.pos * 2.0 + k3.pos * 2.0 + k4.pos) * (h / 6.0);
        next.t = y.t + (k1.t + k2.t * 2.0 + k3.t * 2.0 + k4.t) * (h / 6.0);
        next.n = y.n + (k1.n + k2.n * 2.0 + k3.n * 2.0 + k4.n) * (h / 6.0);
        next.b = y.b + (k1.b + k2.b * 2.0 + k3.b * 2.0 + k4.b) * (h / 6.0);

        let frame = FrenetFrame::gram_schmidt(next.t, next.n)
            .ok_or_else(|| Error::Domain(format!("frame collapsed at s = {}", s + h)))?;
        next.t = frame.t;
        next.n = frame.n;
        next.b = frame.b;
        y = next;
    }

    Ok(out)
}

fn record_sample(
    out: &mut SampledCurve,
    s: f64,
    pos: Vec3,
    frame: &FrenetFrame,
    kappa_jet: &Jet,
    tau_jet: &Jet,
) {
    out.s.push(s);
    out.positions.push(pos);
    out.frames.as_mut().unwrap().push(*frame);
    out.kappa.as_mut().unwrap().push(kappa_jet.value());
    out.tau.as_mut().unwrap().push(tau_jet.value());
    out.sigma
        .as_mut()
        .unwrap()
        .push(sigma_from_jets(kappa_jet, tau_jet));
    out.jets
        .as_mut()
        .unwrap()
        .push(frenet_taylor(kappa_jet, tau_jet, frame, pos).alpha);
}

/// Generate a Salkowski curve (`kappa = a`, torsion from the `+` branch
/// law) from the default initial frame at the origin.
pub fn generate_salkowski(
    params: &SalkowskiParams,
    domain: [f64; 2],
    steps: usize,
) -> Result<SampledCurve> {
    params.check_interval(domain)?;
    integrate_frenet(
        &ConstLaw(params.a),
        params,
        &FrenetFrame::STANDARD,
        Vec3::ZERO,
        domain,
        steps,
    )
}

/// Order-5 jets of a curve and its tangent from the Frenet Taylor
/// recurrence, seeded with a frame, a position, and curvature/torsion jets.
#[derive(Debug, Clone, Copy)]
pub struct FrenetTaylor {
    pub alpha: VecJet,
    pub tangent: VecJet,
}

/// Expand the Frenet system as Taylor series: with `kappa(s)`, `tau(s)`
/// given as jets at `s0` and the frame at `s0`, the coefficients of `T, N,
/// B, alpha` follow from `X_{k+1} = [rhs]_k / (k+1)` with Cauchy-product
/// right-hand sides.
pub fn frenet_taylor(
    kappa_jet: &Jet,
    tau_jet: &Jet,
    frame: &FrenetFrame,
    pos: Vec3,
) -> FrenetTaylor {
    let mut t = [Vec3::ZERO; 6];
    let mut n = [Vec3::ZERO; 6];
    let mut b = [Vec3::ZERO; 6];
    let mut a = [Vec3::ZERO; 6];
    t[0] = frame.t;
    n[0] = frame.n;
    b[0] = frame.b;
    a[0] = pos;
    for k in 0..5 {
        let mut tk = Vec3::ZERO;
        let mut nk = Vec3::ZERO;
        let mut bk = Vec3::ZERO;
        for j in 0..=k {
            tk = tk + n[k - j] * kappa_jet.c[j];
            nk = nk + b[k - j] * tau_jet.c[j] - t[k - j] * kappa_jet.c[j];
            bk = bk - n[k - j] * tau_jet.c[j];
        }
        let inv = 1.0 / (k + 1) as f64;
        t[k + 1] = tk * inv;
        n[k + 1] = nk * inv;
        b[k + 1] = bk * inv;
        a[k + 1] = t[k] * inv;
    }
    FrenetTaylor {
        alpha: pack(&a),
        tangent: pack(&t),
    }
}

fn pack(coeffs: &[Vec3; 6]) -> VecJet {
    let mut x = Jet::default();
    let mut y = Jet::default();
    let mut z = Jet::default();
    for k in 0..6 {
        x.c[k] = coeffs[k].x;
        y.c[k] = coeffs[k].y;
        z.c[k] = coeffs[k].z;
    }
    VecJet::new(x, y, z)
}

/// The tangent indicatrix `s -> T(s)` on the unit sphere.
///
/// For a unit-speed source, the indicatrix jets are the shifted curve jets
/// (`beta^(k) = alpha^(k+1)`), valid to order 4 — enough for the
/// constant-slope determinant test on the indicatrix. The parameter grid is
/// shared with the source curve; it is the indicatrix's own arc length
/// exactly when `kappa == 1`.
pub fn tangent_indicatrix(curve: &SampledCurve) -> Result<SampledCurve> {
    let frames = curve
        .frames
        .as_ref()
        .ok_or_else(|| SpecError("tangent indicatrix needs frames".into()))?;
    Ok(SampledCurve {
        s: curve.s.clone(),
        positions: frames.iter().map(|f| f.t).collect(),
        frames: None,
        kappa: None,
        tau: None,
        sigma: None,
        jets: curve
            .jets
            .as_ref()
            .map(|jets| jets.iter().map(|j| j.deriv_shift()).collect()),
        provenance: Provenance::Analytic,
    })
}
