//! Declarative curve definitions: built-in families and expression curves,
//! both evaluated to order-5 [`VecJet`]s.
//!
//! A curve spec is either a named family with parameters or three coordinate
//! expressions in the parameter `s`, over a closed domain. The JSON file
//! format accepted by [`CurveSpec::from_json_str`]:
//!
//! ```text
//! {"family": "<tag>", "params": {...}, "domain": [a, b]}
//! {"expr": {"x": "...", "y": "...", "z": "..."}, "params": {...},
//!  "domain": [a, b], "unit_speed": true|false}
//! ```
//!
//! Unknown keys are rejected. Family tags and their parameters:
//!
//! | tag                   | parameters                         | unit speed |
//! |-----------------------|------------------------------------|------------|
//! | `line`                | `x0 y0 z0` (origin), `dx dy dz`    | yes        |
//! | `planar-polynomial`   | `c0 c1 c2 c3`: y = sum ck s^k      | no         |
//! | `circle`              | `r` > 0                            | yes        |
//! | `great-circle`        | none (unit circle at the origin)   | yes        |
//! | `circular-helix`      | `a` > 0, `b`                       | yes        |
//! | `salkowski-generated` | `a` > 0, `b` != 0, `c`, opt. `phi` | yes        |
//!
//! The line direction is normalized; the circle and helix are given in
//! their arc-length forms `(r cos(s/r), r sin(s/r), 0)` and
//! `(a cos(s/w), a sin(s/w), b s/w)` with `w = sqrt(a^2 + b^2)`. The
//! `salkowski-generated` family has no closed form; it is realized by
//! integrating the Frenet system from its curvature/torsion laws (see the
//! `generate` module).

use crate::error::{Error, Result, SpecError};
use crate::expr::ExprAst;
use crate::generate::SalkowskiParams;
use crate::jet::{Jet, VecJet};
use crate::vec3::Vec3;
use serde::Deserialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyTag {
    Line,
    PlanarPolynomial,
    Circle,
    GreatCircle,
    CircularHelix,
    SalkowskiGenerated,
}

impl FamilyTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyTag::Line => "line",
            FamilyTag::PlanarPolynomial => "planar-polynomial",
            FamilyTag::Circle => "circle",
            FamilyTag::GreatCircle => "great-circle",
            FamilyTag::CircularHelix => "circular-helix",
            FamilyTag::SalkowskiGenerated => "salkowski-generated",
        }
    }
}

/// A validated family curve with typed parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilyCurve {
    Line { origin: Vec3, direction: Vec3 },
    PlanarPolynomial { coeffs: [f64; 4] },
    Circle { radius: f64 },
    GreatCircle,
    CircularHelix { a: f64, b: f64 },
    SalkowskiGenerated(SalkowskiParams),
}

impl FamilyCurve {
    pub fn tag(&self) -> FamilyTag {
        match self {
            FamilyCurve::Line { .. } => FamilyTag::Line,
            FamilyCurve::PlanarPolynomial { .. } => FamilyTag::PlanarPolynomial,
            FamilyCurve::Circle { .. } => FamilyTag::Circle,
            FamilyCurve::GreatCircle => FamilyTag::GreatCircle,
            FamilyCurve::CircularHelix { .. } => FamilyTag::CircularHelix,
            FamilyCurve::SalkowskiGenerated(_) => FamilyTag::SalkowskiGenerated,
        }
    }
}

/// The two ways a curve can be defined.
#[derive(Debug, Clone, PartialEq)]
pub enum CurveForm {
    Family(FamilyCurve),
    Expressions {
        x: ExprAst,
        y: ExprAst,
        z: ExprAst,
        params: BTreeMap<String, f64>,
        unit_speed: bool,
    },
}

/// Declarative definition of a curve over a closed parameter interval.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec {
    pub form: CurveForm,
    pub domain: [f64; 2],
}

impl CurveSpec {
    pub fn family(family: FamilyCurve, domain: [f64; 2]) -> Result<CurveSpec> {
        check_domain(domain)?;
        if let FamilyCurve::SalkowskiGenerated(p) = &family {
            p.check_interval(domain)?;
        }
        Ok(CurveSpec {
            form: CurveForm::Family(family),
            domain,
        })
    }

    /// Build an expression curve from source strings.
    pub fn expressions(
        x: &str,
        y: &str,
        z: &str,
        params: BTreeMap<String, f64>,
        unit_speed: bool,
        domain: [f64; 2],
    ) -> Result<CurveSpec> {
        check_domain(domain)?;
        let x = ExprAst::parse(x)?;
        let y = ExprAst::parse(y)?;
        let z = ExprAst::parse(z)?;
        for ast in [&x, &y, &z] {
            ast.validate_params(&params)?;
        }
        Ok(CurveSpec {
            form: CurveForm::Expressions {
                x,
                y,
                z,
                params,
                unit_speed,
            },
            domain,
        })
    }

    /// Whether the definition claims `|alpha'(s)| = 1` on its domain.
    pub fn unit_speed_claim(&self) -> bool {
        match &self.form {
            CurveForm::Family(f) => !matches!(f, FamilyCurve::PlanarPolynomial { .. }),
            CurveForm::Expressions { unit_speed, .. } => *unit_speed,
        }
    }

    pub fn domain_len(&self) -> f64 {
        self.domain[1] - self.domain[0]
    }

    /// Uniform grid of `n` parameter values across the domain.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        let [a, b] = self.domain;
        let step = (b - a) / (n - 1) as f64;
        (0..n).map(|i| a + step * i as f64).collect()
    }

    /// Order-5 jets of the curve at parameter value `s`.
    ///
    /// Analytic families and expression curves evaluate directly in jet
    /// arithmetic. The `salkowski-generated` family has no closed form, so
    /// this integrates the Frenet system from the domain start up to `s`;
    /// prefer [`crate::sample::sample_curve`] when many samples are needed.
    pub fn eval_jets(&self, s: f64) -> Result<VecJet> {
        let slack = 1e-9 * (1.0 + self.domain_len());
        if s < self.domain[0] - slack || s > self.domain[1] + slack {
            return Err(SpecError(format!(
                "parameter {s} outside domain [{}, {}]",
                self.domain[0], self.domain[1]
            ))
            .into());
        }
        let jets = match &self.form {
            CurveForm::Family(FamilyCurve::SalkowskiGenerated(p)) => {
                return crate::sample::salkowski_jets_at(p, self.domain, s);
            }
            CurveForm::Family(f) => family_jets(f, s),
            CurveForm::Expressions {
                x, y, z, params, ..
            } => {
                let sj = Jet::variable(s);
                let tag = |e: Error, coord: &str| match e {
                    Error::Jet(j) => Error::jet_at(j, coord, s),
                    other => other,
                };
                VecJet::new(
                    x.eval_jet(&sj, params).map_err(|e| tag(e, "x"))?,
                    y.eval_jet(&sj, params).map_err(|e| tag(e, "y"))?,
                    z.eval_jet(&sj, params).map_err(|e| tag(e, "z"))?,
                )
            }
        };
        if !jets.is_finite() {
            return Err(SpecError(format!("non-finite jet coefficients at s = {s}")).into());
        }
        Ok(jets)
    }

    pub fn from_json_str(text: &str) -> Result<CurveSpec> {
        let file: CurveSpecFile =
            serde_json::from_str(text).map_err(|e| Error::SpecFile(e.to_string()))?;
        file.into_spec()
    }

    pub fn from_json_file(path: &std::path::Path) -> Result<CurveSpec> {
        let text = std::fs::read_to_string(path)?;
        CurveSpec::from_json_str(&text)
    }
}

fn check_domain(domain: [f64; 2]) -> Result<(), SpecError> {
    if !(domain[0].is_finite() && domain[1].is_finite() && domain[0] < domain[1]) {
        return Err(SpecError(format!(
            "domain [{}, {}] must be a finite interval with s_min < s_max",
            domain[0], domain[1]
        )));
    }
    Ok(())
}

fn family_jets(family: &FamilyCurve, s: f64) -> VecJet {
    let sj = Jet::variable(s);
    match family {
        FamilyCurve::Line { origin, direction } => VecJet::new(
            Jet::constant(origin.x) + sj.scale(direction.x),
            Jet::constant(origin.y) + sj.scale(direction.y),
            Jet::constant(origin.z) + sj.scale(direction.z),
        ),
        FamilyCurve::PlanarPolynomial { coeffs } => {
            let mut y = Jet::constant(coeffs[3]);
            for c in coeffs[..3].iter().rev() {
                y = y * sj + Jet::constant(*c);
            }
            VecJet::new(sj, y, Jet::constant(0.0))
        }
        FamilyCurve::Circle { radius } => {
            let (sin, cos) = sj.scale(1.0 / radius).sin_cos();
            VecJet::new(cos.scale(*radius), sin.scale(*radius), Jet::constant(0.0))
        }
        FamilyCurve::GreatCircle => {
            let (sin, cos) = sj.sin_cos();
            VecJet::new(cos, sin, Jet::constant(0.0))
        }
        FamilyCurve::CircularHelix { a, b } => {
            let w = (a * a + b * b).sqrt();
            let arg = sj.scale(1.0 / w);
            let (sin, cos) = arg.sin_cos();
            VecJet::new(cos.scale(*a), sin.scale(*a), arg.scale(*b))
        }
        // Handled by the caller.
        FamilyCurve::SalkowskiGenerated(_) => unreachable!("salkowski has no closed form"),
    }
}

// ---------------------------------------------------------------------------
// JSON file format
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveSpecFile {
    #[serde(default)]
    family: Option<String>,
    #[serde(default)]
    expr: Option<ExprFields>,
    #[serde(default)]
    params: Option<BTreeMap<String, f64>>,
    domain: [f64; 2],
    #[serde(default)]
    unit_speed: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExprFields {
    x: String,
    y: String,
    z: String,
}

impl CurveSpecFile {
    fn into_spec(self) -> Result<CurveSpec> {
        let params = self.params.unwrap_or_default();
        for (name, value) in &params {
            if !value.is_finite() {
                return Err(SpecError(format!("parameter `{name}` is not finite")).into());
            }
        }
        match (self.family, self.expr) {
            (Some(tag), None) => {
                if self.unit_speed.is_some() {
                    return Err(SpecError(
                        "`unit_speed` is only valid for expression curves".into(),
                    )
                    .into());
                }
                let family = build_family(&tag, &params)?;
                CurveSpec::family(family, self.domain)
            }
            (None, Some(expr)) => CurveSpec::expressions(
                &expr.x,
                &expr.y,
                &expr.z,
                params,
                self.unit_speed.unwrap_or(false),
                self.domain,
            ),
            (Some(_), Some(_)) => {
                Err(SpecError("give either `family` or `expr`, not both".into()).into())
            }
            (None, None) => Err(SpecError("missing `family` or `expr`".into()).into()),
        }
    }
}

fn build_family(tag: &str, params: &BTreeMap<String, f64>) -> Result<FamilyCurve> {
    let allowed: &[&str] = match tag {
        "line" => &["x0", "y0", "z0", "dx", "dy", "dz"],
        "planar-polynomial" => &["c0", "c1", "c2", "c3"],
        "circle" => &["r"],
        "great-circle" => &[],
        "circular-helix" => &["a", "b"],
        "salkowski-generated" => &["a", "b", "c", "phi"],
        _ => return Err(SpecError(format!("unknown family `{tag}`")).into()),
    };
    for name in params.keys() {
        if !allowed.contains(&name.as_str()) {
            return Err(
                SpecError(format!("family `{tag}` does not take a parameter `{name}`")).into(),
            );
        }
    }
    let get = |name: &str, default: f64| params.get(name).copied().unwrap_or(default);

    let family = match tag {
        "line" => {
            let direction = Vec3::new(get("dx", 1.0), get("dy", 0.0), get("dz", 0.0));
            let direction = direction
                .normalized()
                .ok_or_else(|| SpecError("line direction must be nonzero".into()))?;
            FamilyCurve::Line {
                origin: Vec3::new(get("x0", 0.0), get("y0", 0.0), get("z0", 0.0)),
                direction,
            }
        }
        "planar-polynomial" => FamilyCurve::PlanarPolynomial {
            coeffs: [
                get("c0", 0.0),
                get("c1", 0.0),
                get("c2", 0.0),
                get("c3", 0.0),
            ],
        },
        "circle" => {
            let radius = get("r", 1.0);
            if radius <= 0.0 {
                return Err(SpecError(format!("circle radius {radius} must be > 0")).into());
            }
            FamilyCurve::Circle { radius }
        }
        "great-circle" => FamilyCurve::GreatCircle,
        "circular-helix" => {
            let a = match params.get("a") {
                Some(a) => *a,
                None => {
                    return Err(SpecError("circular-helix requires parameter `a`".into()).into())
                }
            };
            if a <= 0.0 {
                return Err(SpecError(format!("circular-helix radius a = {a} must be > 0")).into());
            }
            FamilyCurve::CircularHelix {
                a,
                b: get("b", 0.0),
            }
        }
        "salkowski-generated" => FamilyCurve::SalkowskiGenerated(SalkowskiParams::new(
            get("a", 1.0),
            params.get("b").copied(),
            get("c", 0.0),
            params.get("phi").copied(),
        )?),
        _ => unreachable!(),
    };
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn vec_eq(a: Vec3, b: Vec3, eps: f64) {
        assert_relative_eq!(a.x, b.x, epsilon = eps, max_relative = eps);
        assert_relative_eq!(a.y, b.y, epsilon = eps, max_relative = eps);
        assert_relative_eq!(a.z, b.z, epsilon = eps, max_relative = eps);
    }

    #[test]
    fn expression_line_jets() {
        let spec =
            CurveSpec::expressions("s", "2*s", "3", BTreeMap::new(), false, [-1.0, 4.0]).unwrap();
        let jets = spec.eval_jets(1.3).unwrap();
        vec_eq(jets.derivative(1), Vec3::new(1.0, 2.0, 0.0), 1e-15);
        for k in 2..=5 {
            vec_eq(jets.derivative(k), Vec3::ZERO, 1e-15);
        }
    }

    #[test]
    fn circle_fourth_derivative() {
        // alpha = (cos s, sin s, 0): fourth derivative at 0 is (1, 0, 0).
        let spec = CurveSpec::from_json_str(r#"{"family": "great-circle", "domain": [-3.2, 3.2]}"#)
            .unwrap();
        let jets = spec.eval_jets(0.0).unwrap();
        vec_eq(jets.derivative(4), Vec3::new(1.0, 0.0, 0.0), 1e-14);

        // Cross-check the x component by a central fourth difference.
        let f = |s: f64| s.cos();
        let h = 1e-2;
        let fd4 = (f(2.0 * h) - 4.0 * f(h) + 6.0 * f(0.0) - 4.0 * f(-h) + f(-2.0 * h)) / h.powi(4);
        assert_relative_eq!(jets.derivative(4).x, fd4, epsilon = 1e-3);
    }

    #[test]
    fn helix_is_unit_speed_at_zero() {
        let spec = CurveSpec::from_json_str(
            r#"{"family": "circular-helix", "params": {"a": 3, "b": 4}, "domain": [0, 10]}"#,
        )
        .unwrap();
        let jets = spec.eval_jets(0.0).unwrap();
        vec_eq(jets.derivative(1), Vec3::new(0.0, 0.6, 0.8), 1e-15);
        assert_relative_eq!(jets.derivative(1).norm(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn family_and_expression_paths_agree() {
        let fam = CurveSpec::from_json_str(
            r#"{"family": "circular-helix", "params": {"a": 3, "b": 4}, "domain": [0, 10]}"#,
        )
        .unwrap();
        let expr = CurveSpec::from_json_str(
            r#"{"expr": {"x": "3*cos(s/5)", "y": "3*sin(s/5)", "z": "4*s/5"},
                "domain": [0, 10], "unit_speed": true}"#,
        )
        .unwrap();
        for s in fam.grid(17) {
            let a = fam.eval_jets(s).unwrap();
            let b = expr.eval_jets(s).unwrap();
            for (ja, jb) in [(a.x, b.x), (a.y, b.y), (a.z, b.z)] {
                for k in 0..6 {
                    assert_relative_eq!(ja.c[k], jb.c[k], epsilon = 1e-12, max_relative = 1e-12);
                }
            }
        }
    }

    #[test]
    fn unit_speed_families_have_unit_speed() {
        let specs = [
            r#"{"family": "line", "params": {"dx": 1, "dy": 2, "dz": -0.5}, "domain": [-2, 2]}"#,
            r#"{"family": "circle", "params": {"r": 2.5}, "domain": [0, 6]}"#,
            r#"{"family": "great-circle", "domain": [0, 6.28]}"#,
            r#"{"family": "circular-helix", "params": {"a": 3, "b": 4}, "domain": [0, 10]}"#,
        ];
        for text in specs {
            let spec = CurveSpec::from_json_str(text).unwrap();
            assert!(spec.unit_speed_claim());
            let worst = spec
                .grid(200)
                .into_iter()
                .map(|s| (spec.eval_jets(s).unwrap().derivative(1).norm() - 1.0).abs())
                .fold(0.0, f64::max);
            assert!(worst <= 1e-9, "unit-speed deviation {worst:.3e} for {text}");
        }
    }

    #[test]
    fn unknown_keys_rejected() {
        let err = CurveSpec::from_json_str(
            r#"{"family": "circle", "params": {"r": 1}, "domain": [0, 1], "color": "red"}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("color"), "{err}");
    }

    #[test]
    fn unknown_family_param_rejected() {
        let err = CurveSpec::from_json_str(
            r#"{"family": "circle", "params": {"radius": 1}, "domain": [0, 1]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("radius"), "{err}");
    }

    #[test]
    fn unbound_expression_param_rejected() {
        let err = CurveSpec::from_json_str(
            r#"{"expr": {"x": "a*s", "y": "s", "z": "0"}, "domain": [0, 1]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains('a'), "{err}");
    }

    #[test]
    fn inverted_domain_rejected() {
        let err = CurveSpec::from_json_str(r#"{"family": "great-circle", "domain": [2, 1]}"#)
            .unwrap_err();
        assert!(err.to_string().contains("domain"), "{err}");
    }

    #[test]
    fn domain_errors_carry_coordinate_and_position() {
        let spec =
            CurveSpec::expressions("sqrt(s - 2)", "s", "0", BTreeMap::new(), false, [0.0, 1.0])
                .unwrap();
        let err = spec.eval_jets(0.5).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("coordinate x") && msg.contains("0.5"), "{msg}");
    }
}
