//! Frenet apparatus and arc-length derivatives of curvature and torsion.
//!
//! For a unit-speed curve the apparatus is `T = alpha'`, `kappa = |alpha''|`,
//! `N = alpha'' / kappa`, `B = T x N`, `tau = det(alpha', alpha'', alpha''')
//! / kappa^2`. The arc-length derivatives `kappa', kappa'', kappa'''` and
//! `tau', tau''` are obtained by evaluating those formulas in jet arithmetic
//! over sub-jets of the order-5 curve jet rather than by differencing
//! neighbouring samples: the determinant identities checked downstream need
//! the second derivatives at full precision.
//!
//! [`reparametrize_by_arclength`] converts a regular non-unit-speed curve to
//! arc length by inverting `s(t) = int |alpha'| dt` (adaptive Simpson plus
//! safeguarded Newton) and pushing the order-5 jets through the chain rule
//! with the jet of `t(s)`, so the resulting jets are exact to rounding.

use crate::curve::CurveSpec;
use crate::error::{Error, FrenetError, Result};
use crate::jet::{det3_jet, Jet, VecJet};
use crate::vec3::{det3, Vec3};

/// Right-handed orthonormal moving frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrenetFrame {
    pub t: Vec3,
    pub n: Vec3,
    pub b: Vec3,
}

impl FrenetFrame {
    /// The standard frame `T = e1, N = e2, B = e3`.
    pub const STANDARD: FrenetFrame = FrenetFrame {
        t: Vec3::new(1.0, 0.0, 0.0),
        n: Vec3::new(0.0, 1.0, 0.0),
        b: Vec3::new(0.0, 0.0, 1.0),
    };

    /// Worst violation of orthonormality and right-handedness:
    /// max over unit-norm defects, pairwise dots and `det(T,N,B) - 1`.
    pub fn orthonormality_error(&self) -> f64 {
        [
            (self.t.norm() - 1.0).abs(),
            (self.n.norm() - 1.0).abs(),
            (self.b.norm() - 1.0).abs(),
            self.t.dot(self.n).abs(),
            self.t.dot(self.b).abs(),
            self.n.dot(self.b).abs(),
            (det3(self.t, self.n, self.b) - 1.0).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    /// Re-orthonormalize by Gram-Schmidt: `T` first, then `N`, then
    /// `B = T x N`. Returns `None` when `T` or the projected `N` vanish.
    pub fn gram_schmidt(t: Vec3, n: Vec3) -> Option<FrenetFrame> {
        let t = t.normalized()?;
        let n = (n - t * n.dot(t)).normalized()?;
        Some(FrenetFrame {
            t,
            n,
            b: t.cross(n),
        })
    }
}

/// Numerical guards for the Frenet pipeline.
#[derive(Debug, Clone, Copy)]
pub struct FrenetOptions {
    /// Below this curvature the frame is treated as undefined.
    pub kappa_min: f64,
    /// Accepted deviation of `|alpha'|` from 1.
    pub unit_speed_tol: f64,
}

impl Default for FrenetOptions {
    fn default() -> Self {
        FrenetOptions {
            kappa_min: 1e-8,
            unit_speed_tol: 1e-9,
        }
    }
}

/// Frenet frame plus curvature/torsion and their arc-length derivatives at
/// one sample.
#[derive(Debug, Clone, Copy)]
pub struct FrenetData {
    pub s: f64,
    pub frame: FrenetFrame,
    pub kappa: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    pub tau: f64,
    pub tau1: f64,
    pub tau2: f64,
    /// Slant-helix invariant `kappa^2 (tau/kappa)' / (kappa^2 + tau^2)^(3/2)`.
    pub sigma: f64,
    /// `kappa(s)` as a jet; coefficients valid to order 3 (so `kappa'''` is
    /// available to the determinant factorization).
    pub kappa_jet: Jet,
    /// `tau(s)` as a jet; coefficients valid to order 2.
    pub tau_jet: Jet,
}

impl FrenetData {
    pub fn kappa3(&self) -> f64 {
        self.kappa_jet.derivative(3)
    }
}

/// Compute the Frenet apparatus from order-5 unit-speed jets.
pub fn frenet_apparatus(
    s: f64,
    jets: &VecJet,
    opts: &FrenetOptions,
) -> Result<FrenetData, FrenetError> {
    let a1 = jets.deriv_shift(); // alpha', valid to order 4
    let speed = a1.value().norm();
    let deviation = (speed - 1.0).abs();
    if deviation > opts.unit_speed_tol {
        return Err(FrenetError::NotUnitSpeed { s, deviation });
    }
    let a2 = a1.deriv_shift(); // alpha'', valid to order 3
    let kappa0 = a2.value().norm();
    if kappa0 <= opts.kappa_min {
        return Err(FrenetError::VanishingCurvature {
            s,
            norm: kappa0,
            min: opts.kappa_min,
        });
    }
    let kappa_jet = a2.norm().expect("kappa bounded away from zero");
    let a3 = a2.deriv_shift(); // alpha''', valid to order 2
    let tau_jet = det3_jet(&a1, &a2, &a3)
        .div(&(kappa_jet * kappa_jet))
        .expect("kappa^2 positive");

    let t = a1.value();
    let n = a2.value() * (1.0 / kappa0);
    let frame = FrenetFrame {
        t,
        n,
        b: t.cross(n),
    };

    let sigma = sigma_from_jets(&kappa_jet, &tau_jet);

    Ok(FrenetData {
        s,
        frame,
        kappa: kappa0,
        kappa1: kappa_jet.derivative(1),
        kappa2: kappa_jet.derivative(2),
        tau: tau_jet.value(),
        tau1: tau_jet.derivative(1),
        tau2: tau_jet.derivative(2),
        sigma,
        kappa_jet,
        tau_jet,
    })
}

/// Slant-helix invariant `sigma = kappa^2 (tau/kappa)' / (kappa^2 +
/// tau^2)^(3/2)`. Constant exactly on slant helices; for `kappa == 1` it
/// reduces to `tau' / (1 + tau^2)^(3/2)`.
pub fn sigma_invariant(fd: &FrenetData) -> f64 {
    sigma_from_jets(&fd.kappa_jet, &fd.tau_jet)
}

pub(crate) fn sigma_from_jets(kappa_jet: &Jet, tau_jet: &Jet) -> f64 {
    let slope = tau_jet
        .div(kappa_jet)
        .expect("kappa positive")
        .derivative(1);
    let k0 = kappa_jet.value();
    let t0 = tau_jet.value();
    k0 * k0 * slope / (k0 * k0 + t0 * t0).powf(1.5)
}

/// Curvature and torsion jets through the frame route: builds `T`, `N`, `B`
/// as vector jets and reads `tau = <N', B>`. Algebraically equivalent to
/// [`frenet_apparatus`] but computed through different arithmetic, so the
/// two sides make a non-vacuous cross-check of the classical identities
/// `det(alpha', alpha'', alpha''') = kappa^2 tau` and friends.
pub fn frame_route_kappa_tau(
    jets: &VecJet,
    opts: &FrenetOptions,
) -> Result<(Jet, Jet), FrenetError> {
    let a1 = jets.deriv_shift();
    let a2 = a1.deriv_shift();
    let kappa0 = a2.value().norm();
    if kappa0 <= opts.kappa_min {
        return Err(FrenetError::VanishingCurvature {
            s: f64::NAN,
            norm: kappa0,
            min: opts.kappa_min,
        });
    }
    let kappa_jet = a2.norm().expect("kappa bounded away from zero");
    let n_jet = a2.div_jet(&kappa_jet).expect("kappa positive");
    let b_jet = a1.cross(&n_jet);
    let tau_jet = n_jet.deriv_shift().dot(&b_jet);
    Ok((kappa_jet, tau_jet))
}

/// A curve re-gridded over arc length, with exact unit-speed jets and the
/// matched original parameter values.
#[derive(Debug, Clone)]
pub struct ReparamCurve {
    /// Uniform arc-length grid from 0 to `total_length`.
    pub s: Vec<f64>,
    /// Original parameter value `t(s_i)` for each grid point.
    pub t: Vec<f64>,
    /// Order-5 jets with respect to arc length.
    pub jets: Vec<VecJet>,
    pub total_length: f64,
}

/// Reparametrize a regular curve by arc length on a uniform `n`-point grid.
///
/// `s(t)` is accumulated by adaptive Simpson quadrature (absolute tolerance
/// 1e-12) and inverted per grid point with a Newton iteration safeguarded by
/// bisection. At each solved point the jet of `t(s)` is built from `t'(s) =
/// 1/|alpha'(t)|` and composed with the curve jet, which makes `|alpha'(s)|
/// = 1` hold to rounding by construction.
pub fn reparametrize_by_arclength(spec: &CurveSpec, n: usize) -> Result<ReparamCurve> {
    assert!(n >= 2, "need at least two grid points");
    let [t0, t1] = spec.domain;
    let speed = |t: f64| -> Result<f64> {
        let v = spec.eval_jets(t)?.derivative(1).norm();
        if v <= 1e-8 {
            return Err(FrenetError::IrregularCurve { t, speed: v }.into());
        }
        Ok(v)
    };

    let total_length = adaptive_simpson(&speed, t0, t1, 1e-12)?;
    let ds = total_length / (n - 1) as f64;

    let mut s_grid = Vec::with_capacity(n);
    let mut t_grid = Vec::with_capacity(n);
    let mut jets = Vec::with_capacity(n);

    let mut t_base = t0;
    let mut s_base = 0.0;
    for i in 0..n {
        let s_target = ds * i as f64;
        let t_i = if i == 0 {
            t0
        } else if i == n - 1 {
            t1
        } else {
            let t_i = invert_arclength(&speed, t_base, s_base, t1, s_target, total_length)?;
            t_base = t_i;
            s_base = s_target;
            t_i
        };
        s_grid.push(s_target);
        t_grid.push(t_i);
        jets.push(unit_speed_jets_at(spec, t_i)?);
    }

    Ok(ReparamCurve {
        s: s_grid,
        t: t_grid,
        jets,
        total_length,
    })
}

/// Order-5 arc-length jets of the curve at original parameter `t_i`.
fn unit_speed_jets_at(spec: &CurveSpec, t_i: f64) -> Result<VecJet> {
    let jets_t = spec.eval_jets(t_i)?;
    let v = jets_t.deriv_shift().norm().map_err(Error::from)?; // |alpha'(t)| as a jet, valid to order 4
    let w = v.recip().map_err(Error::from)?; // t'(s) = 1/|alpha'|, valid to order 4

    // Taylor coefficients of t(s): t[k+1] = [w(t(s))]_k / (k+1).
    let mut t_jet = Jet::constant(t_i);
    t_jet.c[1] = w.value();
    for k in 1..5 {
        let composed = w.compose(&t_jet);
        t_jet.c[k + 1] = composed.c[k] / (k + 1) as f64;
    }
    Ok(jets_t.compose(&t_jet))
}

/// Solve `s(t) = s_target` for `t` in `[t_base, t_hi]`, where `s(t_base) =
/// s_base` is already known and `s` is strictly increasing.
fn invert_arclength(
    speed: &impl Fn(f64) -> Result<f64>,
    t_base: f64,
    s_base: f64,
    t_hi: f64,
    s_target: f64,
    total_length: f64,
) -> Result<f64> {
    let tol = 1e-13 * total_length.max(1.0);
    let mut lo = t_base;
    let mut hi = t_hi;
    let mut t = t_base + (s_target - s_base) / speed(t_base)?;
    t = t.clamp(lo, hi);
    for _ in 0..80 {
        let err = s_base + adaptive_simpson(speed, t_base, t, 1e-13)? - s_target;
        if err.abs() <= tol {
            return Ok(t);
        }
        if err > 0.0 {
            hi = t;
        } else {
            lo = t;
        }
        let step = err / speed(t)?;
        let next = t - step;
        t = if next > lo && next < hi {
            next
        } else {
            0.5 * (lo + hi)
        };
    }
    Ok(t)
}

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
pub fn adaptive_simpson(f: &impl Fn(f64) -> Result<f64>, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a)?;
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    let fb = f(b)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 48)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &impl Fn(f64) -> Result<f64>,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    Ok(
        simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
            + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?,
    )
}
