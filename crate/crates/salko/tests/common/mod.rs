//! Shared test oracles: arbitrary-order finite-difference weights, a
//! derivative estimator with an explicit rounding-noise bound, and a
//! generator of random elementary compositions over safe domains.
//!
//! Everything here is independent of the jet arithmetic it is used to
//! check: derivatives are estimated by differencing plain `f64`
//! evaluations.

// Each test target uses a different subset of the helpers.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Finite-difference weights by Fornberg's recurrence: for sample points
/// `x` and expansion point `z`, returns `w[k][j]` such that
/// `f^(k)(z) ~ sum_j w[k][j] f(x[j])` for every `k <= m`, exact for
/// polynomials of degree `< x.len()`.
pub fn fd_weights(z: f64, x: &[f64], m: usize) -> Vec<Vec<f64>> {
    let n = x.len();
    assert!(n > m, "need more points than the derivative order");
    let mut w = vec![vec![0.0f64; n]; m + 1];
    let mut c1 = 1.0;
    let mut c4 = x[0] - z;
    w[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i] - z;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    w[k][i] = c1 * (k as f64 * w[k - 1][i - 1] - c5 * w[k][i - 1]) / c2;
                }
                w[0][i] = -c1 * c5 * w[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                w[k][j] = (c4 * w[k][j] - k as f64 * w[k - 1][j]) / c3;
            }
            w[0][j] = c4 * w[0][j] / c3;
        }
        c1 = c2;
    }
    w
}

/// A central finite-difference estimate of `f^(k)(x0)` together with a
/// bound on its rounding noise.
pub struct FdEstimate {
    pub value: f64,
    /// `32 * eps * max|f| * sum|w|`: the smallest difference the stencil
    /// can resolve, where the factor 32 covers the relative error of the
    /// evaluated composition itself (nested transcendentals accumulate
    /// tens of ulps, not one). Truncation is not included; callers pick
    /// `h` and the stencil width so truncation is subdominant.
    pub noise: f64,
}

/// Estimate `f^(k)(x0)` with a symmetric `2r+1`-point stencil of step `h`
/// (accuracy order `2r+1-k` for the central layout).
pub fn fd_derivative(f: &dyn Fn(f64) -> f64, x0: f64, k: usize, h: f64, r: usize) -> FdEstimate {
    let points: Vec<f64> = (-(r as i64)..=r as i64)
        .map(|i| x0 + i as f64 * h)
        .collect();
    let w = fd_weights(x0, &points, k);
    let mut value = 0.0;
    let mut abs_w = 0.0;
    let mut max_f: f64 = 0.0;
    for (j, p) in points.iter().enumerate() {
        let fp = f(*p);
        value += w[k][j] * fp;
        abs_w += w[k][j].abs();
        max_f = max_f.max(fp.abs());
    }
    FdEstimate {
        value,
        noise: 32.0 * f64::EPSILON * max_f * abs_w,
    }
}

/// Two-level Richardson extrapolation of the 9-point estimate over steps
/// `h`, `2h` and `4h`: the symmetric stencil's error expands in even
/// powers, so this cancels the `h^4` and `h^6` truncation terms, leaving
/// `O(h^8)` truncation at the rounding noise of the finest stencil. Plain
/// stencils at the balance step are truncation-limited on sharply-varying
/// compositions (nested tangents drive `f^(k+6)/f^(k)` past 1e5).
pub fn fd_derivative_richardson(f: &dyn Fn(f64) -> f64, x0: f64, k: usize, h: f64) -> FdEstimate {
    let level = |h: f64| -> FdEstimate {
        let fine = fd_derivative(f, x0, k, h, 4);
        let coarse = fd_derivative(f, x0, k, 2.0 * h, 4);
        FdEstimate {
            value: (16.0 * fine.value - coarse.value) / 15.0,
            noise: (16.0 * fine.noise + coarse.noise) / 15.0,
        }
    };
    let fine = level(h);
    let coarse = level(2.0 * h);
    FdEstimate {
        value: (64.0 * fine.value - coarse.value) / 63.0,
        noise: (64.0 * fine.noise + coarse.noise) / 63.0,
    }
}

/// High-order central estimate of `f^(k)(x0)` with a per-case step choice:
/// Richardson-extrapolated estimates are computed at the order-balanced
/// base step `h0 = eps^(1/(k+2))` and at `2 h0` and `4 h0`; the adjacent
/// pair that agrees best marks the rounding/truncation plateau, and its
/// spread (plus the stencil noise bound) is quoted as the oracle's
/// uncertainty. Rounding noise in deeply nested compositions varies by a
/// couple of orders of magnitude case to case, so no single fixed step is
/// in the valley for all of them.
pub fn fd_derivative_adaptive(f: &dyn Fn(f64) -> f64, x0: f64, k: usize) -> FdEstimate {
    let h0 = f64::EPSILON.powf(1.0 / (k as f64 + 2.0));
    let ladder: Vec<FdEstimate> = [1.0, 2.0, 4.0]
        .iter()
        .map(|m| fd_derivative_richardson(f, x0, k, m * h0))
        .collect();
    let mut best: Option<FdEstimate> = None;
    for pair in ladder.windows(2) {
        let gap = (pair[0].value - pair[1].value).abs();
        let noise = gap + pair[0].noise.max(pair[1].noise);
        if best.as_ref().is_none_or(|b| noise < b.noise) {
            best = Some(FdEstimate {
                value: pair[1].value,
                noise,
            });
        }
    }
    best.unwrap()
}

/// A random composition of elementary functions together with a base point,
/// both drawn from `rng`. The construction keeps every sub-expression
/// inside its safe domain on the whole real line (logs and square roots of
/// `2.5 + 0.9 sin(..)`-style arguments, tangent arguments at most 1), and
/// keeps the per-level slope amplification near 3 so that derivatives up
/// to `f^(13)` stay within what an f64 difference stencil can resolve:
/// much steeper chains would push the oracle's truncation above the band
/// it is supposed to certify.
pub fn random_composition(rng: &mut ChaCha8Rng) -> (String, f64) {
    let t0 = rng.gen_range(-1.0..1.0);
    let depth = rng.gen_range(1..=3);
    let n_terms = rng.gen_range(1..=2);
    let mut expr = String::new();
    for i in 0..n_terms {
        if i > 0 {
            expr.push_str(if rng.gen_bool(0.5) { " + " } else { " - " });
        }
        expr.push_str(&format!(
            "{:.3}*{}",
            rng.gen_range(0.3..1.5),
            random_factor(rng, depth)
        ));
    }
    (expr, t0)
}

fn random_factor(rng: &mut ChaCha8Rng, depth: usize) -> String {
    if depth == 0 {
        return match rng.gen_range(0..3) {
            0 => "s".to_string(),
            1 => format!(
                "({:.3}*s + {:.3})",
                rng.gen_range(0.5..1.6),
                rng.gen_range(-1.0..1.0)
            ),
            _ => format!("{:.3}", rng.gen_range(0.2..2.0)),
        };
    }
    let inner = format!(
        "({:.3}*s + {:.3} + {:.3}*{})",
        rng.gen_range(0.5..1.6),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(0.3..0.55),
        random_factor(rng, depth - 1)
    );
    match rng.gen_range(0..10) {
        0 => format!("sin{inner}"),
        1 => format!("cos{inner}"),
        2 => format!("atan{inner}"),
        3 => format!("tan(1.0*sin{inner})"),
        4 => format!("exp(0.6*sin{inner})"),
        5 => format!("log(2.5 + 0.9*sin{inner})"),
        6 => format!("sqrt(2.5 + 0.9*cos{inner})"),
        7 => format!("(1/(2.5 + 0.9*sin{inner}))"),
        8 => format!("(2.5 + 0.9*cos{inner})^{:.3}", rng.gen_range(1.3..1.8)),
        _ => format!("(sin{inner}*{})", random_factor(rng, depth - 1)),
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod self_tests {
    use super::*;

    #[test]
    fn fornberg_reproduces_known_stencils() {
        // 5-point first derivative, fourth order: (1, -8, 0, 8, -1)/(12h).
        let h = 0.1;
        let points: Vec<f64> = (-2..=2).map(|i| i as f64 * h).collect();
        let w = fd_weights(0.0, &points, 2);
        let expected1 = [1.0, -8.0, 0.0, 8.0, -1.0].map(|c| c / (12.0 * h));
        let expected2 = [-1.0, 16.0, -30.0, 16.0, -1.0].map(|c| c / (12.0 * h * h));
        for j in 0..5 {
            assert!((w[1][j] - expected1[j]).abs() <= 1e-10 * (1.0 + expected1[j].abs()));
            assert!((w[2][j] - expected2[j]).abs() <= 1e-9 * (1.0 + expected2[j].abs()));
        }
    }

    #[test]
    fn fornberg_is_exact_on_polynomials() {
        // f(x) = x^6 - 2x^3 + x: all derivatives at x0 = 0.4 from a 9-point
        // stencil match the closed forms to rounding.
        let f = |x: f64| x.powi(6) - 2.0 * x.powi(3) + x;
        let x0: f64 = 0.4;
        let exact = [
            6.0 * x0.powi(5) - 6.0 * x0 * x0 + 1.0,
            30.0 * x0.powi(4) - 12.0 * x0,
            120.0 * x0.powi(3) - 12.0,
            360.0 * x0 * x0,
            720.0 * x0,
        ];
        for k in 1..=5 {
            let est = fd_derivative(&f, x0, k, 0.05, 4);
            assert!(
                (est.value - exact[k - 1]).abs() <= 1e-6 + est.noise,
                "k = {k}: {} vs {}",
                est.value,
                exact[k - 1]
            );
        }
    }
}
