#![allow(clippy::needless_range_loop)]
//! salko is a space-curve analysis toolkit built around exact high-order
//! differentiation:
//!
//! - order-5 truncated Taylor jets ([`jet`]) give curve derivatives
//!   `alpha'..alpha^(5)` to rounding precision, with no symbolic engine;
//! - the Frenet apparatus and the arc-length derivatives of curvature and
//!   torsion ([`frenet`]), including exact reparametrization of
//!   non-unit-speed curves;
//! - the determinant family `det(alpha^(k), alpha^(k+1), alpha^(k+2))`,
//!   its curvature/torsion factorization, and a curve classifier
//!   ([`classify`]);
//! - generation of constant-curvature slant helices (Salkowski curves) from
//!   their closed-form torsion laws by Frenet-system integration
//!   ([`generate`]);
//! - fixed-axis and sphere estimators backing the classifier ([`analyze`]);
//! - a small CLI ([`cli`]) for classification, generation, residual tables
//!   and SVG plots; see the crate examples for library usage.
//!
//! Everything is plain `f64` data with pure functions over immutable
//! values; per-sample work can safely run in parallel.

pub mod analyze;
pub mod classify;
pub mod cli;
pub mod curve;
pub mod error;
pub mod expr;
pub mod fixtures;
pub mod frenet;
pub mod generate;
pub mod jet;
pub mod output;
pub mod sample;
pub mod suite;
pub mod vec3;

pub use analyze::{estimate_axis, fit_sphere, AxisEstimate, SphereFit};
pub use classify::{
    classify_curve, det_family, kt_det, ode_residual, ode_residual_tau_form, ClassificationReport,
    KappaTauMatrix, Tolerances,
};
pub use curve::{CurveSpec, FamilyCurve};
pub use error::{Error, Result};
pub use expr::ExprAst;
pub use frenet::{
    frenet_apparatus, reparametrize_by_arclength, sigma_invariant, FrenetData, FrenetFrame,
    FrenetOptions,
};
pub use generate::{
    generate_salkowski, integrate_frenet, salkowski_torsion, tangent_indicatrix, SalkowskiParams,
    SampledCurve, ScalarLaw,
};
pub use jet::{Jet, VecJet};
pub use vec3::{det3, Vec3};
