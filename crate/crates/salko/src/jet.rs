//! Truncated Taylor-jet arithmetic of order 5.
//!
//! A [`Jet`] stores the six normalized Taylor coefficients `c[0]..c[5]` of a
//! scalar function around an expansion point: `f(t) = sum c[k] (t - t0)^k +
//! O((t - t0)^6)`, so the k-th derivative is `k! * c[k]`. All operations
//! propagate coefficients exactly to order 5 (floating rounding only), using
//! the standard convolution recurrences; transcendentals use the ODE-based
//! recurrences (e.g. `(sin u)' = cos u * u'`).
//!
//! Coefficient propagation is lower-triangular: coefficient `k` of a result
//! depends only on coefficients `0..=k` of the inputs. A jet that is valid
//! only to some order `m < 5` (e.g. the derivative of an order-5 jet) can
//! therefore flow through this arithmetic and keep its low-order
//! coefficients exact; callers track validity orders themselves.
//!
//! Domain violations (division by a zero value, `sqrt`/`log` of a
//! non-positive value, ...) are reported as [`JetError`]s tagged with the
//! offending operation; no operation silently produces NaN.

use crate::error::JetError;
use crate::vec3::Vec3;
use std::ops::{Add, Mul, Neg, Sub};

/// Number of Taylor coefficients carried by a [`Jet`] (degree 5).
pub const JET_LEN: usize = 6;

/// Highest derivative order represented exactly.
pub const JET_ORDER: usize = 5;

pub type JetResult = Result<Jet, JetError>;

/// Order-5 truncated Taylor jet of a scalar function.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet {
    /// Normalized coefficients: `c[k] = f^(k)(t0) / k!`.
    pub c: [f64; JET_LEN],
}

impl Jet {
    /// Jet of the constant function `v`.
    pub fn constant(v: f64) -> Jet {
        let mut c = [0.0; JET_LEN];
        c[0] = v;
        Jet { c }
    }

    /// Jet of the identity variable at expansion point `t0`.
    pub fn variable(t0: f64) -> Jet {
        let mut c = [0.0; JET_LEN];
        c[0] = t0;
        c[1] = 1.0;
        Jet { c }
    }

    pub fn from_coeffs(c: [f64; JET_LEN]) -> Jet {
        Jet { c }
    }

    /// Function value at the expansion point.
    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// The `k`-th derivative at the expansion point, `k! * c[k]`.
    pub fn derivative(&self, k: usize) -> f64 {
        assert!(k <= JET_ORDER, "jet derivative order {k} out of range");
        FACTORIAL[k] * self.c[k]
    }

    /// Jet of the derivative function `f'`, valid one order lower than `self`.
    pub fn deriv_shift(&self) -> Jet {
        let mut c = [0.0; JET_LEN];
        for k in 0..JET_ORDER {
            c[k] = (k + 1) as f64 * self.c[k + 1];
        }
        Jet { c }
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|v| v.is_finite())
    }

    pub fn scale(&self, s: f64) -> Jet {
        let mut c = self.c;
        for v in &mut c {
            *v *= s;
        }
        Jet { c }
    }

    /// Composition `self(inner(t))`.
    ///
    /// `self` must be expanded around `inner.value()`; the constant term of
    /// `inner` is shifted out, so the truncated Horner evaluation is exact
    /// to order 5.
    pub fn compose(&self, inner: &Jet) -> Jet {
        let mut dx = *inner;
        dx.c[0] = 0.0;
        let mut acc = Jet::constant(self.c[JET_ORDER]);
        for k in (0..JET_ORDER).rev() {
            acc = acc * dx + Jet::constant(self.c[k]);
        }
        acc
    }

    /// Reciprocal `1 / self`; requires a nonzero value at the expansion point.
    pub fn recip(&self) -> JetResult {
        if self.c[0] == 0.0 {
            return Err(JetError::new("div", "division by zero value", 0.0));
        }
        let inv = 1.0 / self.c[0];
        let mut c = [0.0; JET_LEN];
        c[0] = inv;
        for k in 1..JET_LEN {
            let mut sum = 0.0;
            for j in 1..=k {
                sum += self.c[j] * c[k - j];
            }
            c[k] = -sum * inv;
        }
        finite_or("div", Jet { c })
    }

    /// Division `self / denom` via the recursive Taylor quotient.
    pub fn div(&self, denom: &Jet) -> JetResult {
        if denom.c[0] == 0.0 {
            return Err(JetError::new("div", "division by zero value", 0.0));
        }
        let inv = 1.0 / denom.c[0];
        let mut c = [0.0; JET_LEN];
        for k in 0..JET_LEN {
            let mut sum = self.c[k];
            for j in 1..=k {
                sum -= denom.c[j] * c[k - j];
            }
            c[k] = sum * inv;
        }
        finite_or("div", Jet { c })
    }

    /// Square root; requires a positive value at the expansion point.
    pub fn sqrt(&self) -> JetResult {
        if self.c[0] <= 0.0 {
            return Err(JetError::new(
                "sqrt",
                "argument value must be positive",
                self.c[0],
            ));
        }
        let mut c = [0.0; JET_LEN];
        c[0] = self.c[0].sqrt();
        let two_c0 = 2.0 * c[0];
        for k in 1..JET_LEN {
            let mut sum = 0.0;
            for j in 1..k {
                sum += c[j] * c[k - j];
            }
            c[k] = (self.c[k] - sum) / two_c0;
        }
        finite_or("sqrt", Jet { c })
    }

    /// Natural logarithm; requires a positive value at the expansion point.
    pub fn ln(&self) -> JetResult {
        if self.c[0] <= 0.0 {
            return Err(JetError::new(
                "log",
                "argument value must be positive",
                self.c[0],
            ));
        }
        let inv = 1.0 / self.c[0];
        let mut c = [0.0; JET_LEN];
        c[0] = self.c[0].ln();
        for k in 1..JET_LEN {
            let mut sum = 0.0;
            for j in 1..k {
                sum += j as f64 * c[j] * self.c[k - j];
            }
            c[k] = (self.c[k] - sum / k as f64) * inv;
        }
        finite_or("log", Jet { c })
    }

    /// Exponential. Errors only if the result overflows.
    pub fn exp(&self) -> JetResult {
        let mut c = [0.0; JET_LEN];
        c[0] = self.c[0].exp();
        for k in 1..JET_LEN {
            let mut sum = 0.0;
            for j in 1..=k {
                sum += j as f64 * self.c[j] * c[k - j];
            }
            c[k] = sum / k as f64;
        }
        finite_or("exp", Jet { c })
    }

    /// Sine and cosine via the coupled recurrence.
    pub fn sin_cos(&self) -> (Jet, Jet) {
        let mut s = [0.0; JET_LEN];
        let mut co = [0.0; JET_LEN];
        let (s0, c0) = self.c[0].sin_cos();
        s[0] = s0;
        co[0] = c0;
        for k in 1..JET_LEN {
            let mut sum_s = 0.0;
            let mut sum_c = 0.0;
            for j in 1..=k {
                let jf = j as f64;
                sum_s += jf * self.c[j] * co[k - j];
                sum_c += jf * self.c[j] * s[k - j];
            }
            s[k] = sum_s / k as f64;
            co[k] = -sum_c / k as f64;
        }
        (Jet { c: s }, Jet { c: co })
    }

    pub fn sin(&self) -> Jet {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Jet {
        self.sin_cos().1
    }

    /// Tangent as `sin / cos`; errors where the cosine value vanishes.
    pub fn tan(&self) -> JetResult {
        let (s, co) = self.sin_cos();
        if co.c[0] == 0.0 {
            return Err(JetError::new(
                "tan",
                "cosine of argument vanishes",
                self.c[0],
            ));
        }
        s.div(&co)
            .map_err(|e| JetError::new("tan", e.reason, e.value))
    }

    /// Arctangent, integrated from `atan(u)' = u' / (1 + u^2)`.
    pub fn atan(&self) -> Jet {
        let denom = Jet::constant(1.0) + *self * *self;
        // denom.c[0] >= 1, so the quotient cannot fail.
        let e = self.deriv_shift().div(&denom).expect("1 + u^2 is positive");
        let mut c = [0.0; JET_LEN];
        c[0] = self.c[0].atan();
        for k in 1..JET_LEN {
            c[k] = e.c[k - 1] / k as f64;
        }
        Jet { c }
    }

    /// Real power `self^r`; requires a positive value at the expansion point.
    pub fn powf(&self, r: f64) -> JetResult {
        if self.c[0] <= 0.0 {
            return Err(JetError::new(
                "pow-by-real",
                "base value must be positive",
                self.c[0],
            ));
        }
        let mut b = [0.0; JET_LEN];
        b[0] = self.c[0].powf(r);
        for k in 1..JET_LEN {
            let mut sum = 0.0;
            for j in 1..=k {
                sum += ((r + 1.0) * j as f64 - k as f64) * self.c[j] * b[k - j];
            }
            b[k] = sum / (k as f64 * self.c[0]);
        }
        finite_or("pow-by-real", Jet { c: b })
    }

    /// Integer power by binary exponentiation; negative exponents go through
    /// the reciprocal and require a nonzero base value.
    pub fn powi(&self, n: i64) -> JetResult {
        if n < 0 {
            return self.powi(-n)?.recip();
        }
        let mut result = Jet::constant(1.0);
        let mut base = *self;
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                result = result * base;
            }
            base = base * base;
            n >>= 1;
        }
        Ok(result)
    }
}

fn finite_or(op: &'static str, jet: Jet) -> JetResult {
    if jet.is_finite() {
        Ok(jet)
    } else {
        Err(JetError::new(op, "non-finite result", jet.c[0]))
    }
}

const FACTORIAL: [f64; JET_LEN] = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0];

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        let mut c = self.c;
        for k in 0..JET_LEN {
            c[k] += o.c[k];
        }
        Jet { c }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        let mut c = self.c;
        for k in 0..JET_LEN {
            c[k] -= o.c[k];
        }
        Jet { c }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        let mut c = self.c;
        for v in &mut c {
            *v = -*v;
        }
        Jet { c }
    }
}

impl Mul for Jet {
    type Output = Jet;
    /// Cauchy product, exact to order 5.
    fn mul(self, o: Jet) -> Jet {
        let mut c = [0.0; JET_LEN];
        for (k, ck) in c.iter_mut().enumerate() {
            let mut sum = 0.0;
            for j in 0..=k {
                sum += self.c[j] * o.c[k - j];
            }
            *ck = sum;
        }
        Jet { c }
    }
}

/// Jet of a curve coordinate triple: one [`Jet`] per coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VecJet {
    pub x: Jet,
    pub y: Jet,
    pub z: Jet,
}

impl VecJet {
    pub fn new(x: Jet, y: Jet, z: Jet) -> VecJet {
        VecJet { x, y, z }
    }

    pub fn constant(v: Vec3) -> VecJet {
        VecJet::new(Jet::constant(v.x), Jet::constant(v.y), Jet::constant(v.z))
    }

    /// Position at the expansion point.
    pub fn value(&self) -> Vec3 {
        Vec3::new(self.x.value(), self.y.value(), self.z.value())
    }

    /// The vector `alpha^(k)` at the expansion point.
    pub fn derivative(&self, k: usize) -> Vec3 {
        Vec3::new(
            self.x.derivative(k),
            self.y.derivative(k),
            self.z.derivative(k),
        )
    }

    /// Component-wise derivative jet, valid one order lower.
    pub fn deriv_shift(&self) -> VecJet {
        VecJet::new(
            self.x.deriv_shift(),
            self.y.deriv_shift(),
            self.z.deriv_shift(),
        )
    }

    pub fn dot(&self, o: &VecJet) -> Jet {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(&self, o: &VecJet) -> VecJet {
        VecJet::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    /// Euclidean norm as a jet; requires a nonzero value at the expansion point.
    pub fn norm(&self) -> JetResult {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, s: f64) -> VecJet {
        VecJet::new(self.x.scale(s), self.y.scale(s), self.z.scale(s))
    }

    pub fn mul_jet(&self, j: &Jet) -> VecJet {
        VecJet::new(self.x * *j, self.y * *j, self.z * *j)
    }

    pub fn div_jet(&self, j: &Jet) -> Result<VecJet, JetError> {
        Ok(VecJet::new(self.x.div(j)?, self.y.div(j)?, self.z.div(j)?))
    }

    /// Component-wise composition with a shared inner jet.
    pub fn compose(&self, inner: &Jet) -> VecJet {
        VecJet::new(
            self.x.compose(inner),
            self.y.compose(inner),
            self.z.compose(inner),
        )
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for VecJet {
    type Output = VecJet;
    fn add(self, o: VecJet) -> VecJet {
        VecJet::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for VecJet {
    type Output = VecJet;
    fn sub(self, o: VecJet) -> VecJet {
        VecJet::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

/// Scalar triple product det(a, b, c) in jet arithmetic.
pub fn det3_jet(a: &VecJet, b: &VecJet, c: &VecJet) -> Jet {
    a.dot(&b.cross(c))
}
