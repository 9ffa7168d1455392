//! Geometric estimators: fixed-axis estimation for the slant-helix property
//! and algebraic least-squares sphere fitting.

use crate::error::AnalyzeError;
use crate::vec3::Vec3;

/// Estimated fixed direction for the principal-normal angle test.
#[derive(Debug, Clone, Copy)]
pub struct AxisEstimate {
    /// Unit axis, oriented so `mean_dot >= 0`.
    pub d: Vec3,
    /// Mean of `<N_i, d>`.
    pub mean_dot: f64,
    /// Standard deviation of `<N_i, d>`; zero exactly when the normals keep
    /// a fixed angle with `d`.
    pub std_dot: f64,
    /// `arccos(|mean_dot|)`.
    pub theta: f64,
}

/// Least-squares sphere through a point cloud.
#[derive(Debug, Clone, Copy)]
pub struct SphereFit {
    pub center: Vec3,
    pub radius: f64,
    /// Root-mean-square of `|p_i - center| - radius`.
    pub rms: f64,
}

/// Estimate the direction minimizing the variance of `<N_i, d>`: the
/// eigenvector of the normals' covariance matrix for the smallest
/// eigenvalue, solved by cyclic Jacobi rotations.
///
/// Needs at least 8 unit normals. When the normals are all (numerically)
/// equal the covariance vanishes and the common direction itself is the
/// axis. Errors as degenerate when the two smallest eigenvalues coincide to
/// 1e-12, i.e. the minimizing direction is not unique.
pub fn estimate_axis(normals: &[Vec3]) -> Result<AxisEstimate, AnalyzeError> {
    if normals.len() < 8 {
        return Err(AnalyzeError::TooFewSamples {
            needed: 8,
            got: normals.len(),
        });
    }
    for (index, n) in normals.iter().enumerate() {
        let norm = n.norm();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(AnalyzeError::NotUnit { index, norm });
        }
    }

    let len = normals.len() as f64;
    let mean = normals.iter().fold(Vec3::ZERO, |acc, n| acc + *n) / len;
    let mut cov = [[0.0f64; 3]; 3];
    for n in normals {
        let d = *n - mean;
        let v = d.to_array();
        for i in 0..3 {
            for j in 0..3 {
                cov[i][j] += v[i] * v[j];
            }
        }
    }
    for row in &mut cov {
        for v in row.iter_mut() {
            *v /= len;
        }
    }

    let trace = cov[0][0] + cov[1][1] + cov[2][2];
    let d = if trace <= 1e-16 {
        // Constant normals: every direction has zero variance; the shared
        // direction is the meaningful axis (angle zero).
        mean.normalized()
            .ok_or(AnalyzeError::DegenerateAxis { gap: 0.0 })?
    } else {
        let (eigenvalues, eigenvectors) = jacobi_eigen(cov);
        let gap = eigenvalues[1] - eigenvalues[0];
        if gap < 1e-12 {
            return Err(AnalyzeError::DegenerateAxis { gap });
        }
        eigenvectors[0]
    };

    let dots: Vec<f64> = normals.iter().map(|n| n.dot(d)).collect();
    let mean_dot = dots.iter().sum::<f64>() / len;
    let std_dot = (dots.iter().map(|v| (v - mean_dot).powi(2)).sum::<f64>() / len).sqrt();
    let (d, mean_dot) = if mean_dot < 0.0 {
        (-d, -mean_dot)
    } else {
        (d, mean_dot)
    };
    Ok(AxisEstimate {
        d,
        mean_dot,
        std_dot,
        theta: mean_dot.clamp(-1.0, 1.0).abs().acos(),
    })
}

/// Eigen-decomposition of a symmetric 3x3 matrix by cyclic Jacobi rotations
/// (30-sweep cap, 1e-14 off-diagonal tolerance). Returns eigenvalues in
/// ascending order with matching unit eigenvectors.
pub fn jacobi_eigen(mut a: [[f64; 3]; 3]) -> ([f64; 3], [Vec3; 3]) {
    let mut v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    for _sweep in 0..30 {
        let off = a[0][1].abs().max(a[0][2].abs()).max(a[1][2].abs());
        if off < 1e-14 {
            break;
        }
        for (p, q) in [(0usize, 1usize), (0, 2), (1, 2)] {
            if a[p][q].abs() < 1e-300 {
                continue;
            }
            // Rotation angle zeroing a[p][q].
            let theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;

            let app = a[p][p];
            let aqq = a[q][q];
            let apq = a[p][q];
            a[p][p] = app - t * apq;
            a[q][q] = aqq + t * apq;
            a[p][q] = 0.0;
            a[q][p] = 0.0;
            let r = 3 - p - q;
            let arp = a[r][p];
            let arq = a[r][q];
            a[r][p] = c * arp - s * arq;
            a[p][r] = a[r][p];
            a[r][q] = s * arp + c * arq;
            a[q][r] = a[r][q];
            for row in &mut v {
                let vp = row[p];
                let vq = row[q];
                row[p] = c * vp - s * vq;
                row[q] = s * vp + c * vq;
            }
        }
    }
    let mut pairs: Vec<(f64, Vec3)> = (0..3)
        .map(|i| (a[i][i], Vec3::new(v[0][i], v[1][i], v[2][i])))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    (
        [pairs[0].0, pairs[1].0, pairs[2].0],
        [pairs[0].1, pairs[1].1, pairs[2].1],
    )
}

/// Algebraic least-squares sphere fit.
///
/// Expanding `|p - c|^2 = r^2` linearizes to `2 <p, c> - rho = |p|^2` with
/// `rho = |c|^2 - r^2`; the 4x4 normal equations are solved by Gaussian
/// elimination with partial pivoting. Errors as degenerate when the normal
/// matrix is rank-deficient beyond a 1e-10 pivot ratio, which is exactly
/// the coplanar / co-circular case: a circle lies on a one-parameter family
/// of spheres.
pub fn fit_sphere(points: &[Vec3]) -> Result<SphereFit, AnalyzeError> {
    if points.len() < 4 {
        return Err(AnalyzeError::TooFewSamples {
            needed: 4,
            got: points.len(),
        });
    }

    // Normal equations for x = (cx, cy, cz, rho).
    let mut m = [[0.0f64; 4]; 4];
    let mut rhs = [0.0f64; 4];
    for p in points {
        let row = [2.0 * p.x, 2.0 * p.y, 2.0 * p.z, -1.0];
        let b = p.dot(*p);
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] += row[i] * row[j];
            }
            rhs[i] += row[i] * b;
        }
    }

    let scale = m
        .iter()
        .flatten()
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
        .max(1e-300);

    // Gaussian elimination with partial pivoting and rank check.
    for col in 0..4 {
        let (pivot_row, pivot) = (col..4)
            .map(|r| (r, m[r][col].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if pivot <= 1e-10 * scale {
            return Err(AnalyzeError::DegenerateSphere {
                pivot: pivot / scale,
            });
        }
        m.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        for r in (col + 1)..4 {
            let f = m[r][col] / m[col][col];
            for c in col..4 {
                m[r][c] -= f * m[col][c];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    let mut x = [0.0f64; 4];
    for row in (0..4).rev() {
        let mut acc = rhs[row];
        for c in (row + 1)..4 {
            acc -= m[row][c] * x[c];
        }
        x[row] = acc / m[row][row];
    }

    let center = Vec3::new(x[0], x[1], x[2]);
    let r2 = center.dot(center) - x[3];
    if r2 <= 0.0 {
        return Err(AnalyzeError::BadSphereRadius { r2 });
    }
    let radius = r2.sqrt();
    let rms = (points
        .iter()
        .map(|p| ((*p - center).norm() - radius).powi(2))
        .sum::<f64>()
        / points.len() as f64)
        .sqrt();
    Ok(SphereFit {
        center,
        radius,
        rms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Deterministic well-spread points on the unit sphere.
    fn fibonacci_sphere(n: usize) -> Vec<Vec3> {
        let golden = (1.0 + 5.0f64.sqrt()) / 2.0;
        (0..n)
            .map(|i| {
                let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
                let r = (1.0 - z * z).sqrt();
                let phi = 2.0 * std::f64::consts::PI * (i as f64 / golden).fract();
                Vec3::new(r * phi.cos(), r * phi.sin(), z)
            })
            .collect()
    }

    #[test]
    fn constant_normals_give_their_direction() {
        let normals = vec![Vec3::new(0.0, 0.0, 1.0); 12];
        let est = estimate_axis(&normals).unwrap();
        assert_relative_eq!(est.d.z, 1.0, epsilon = 1e-12);
        assert_eq!(est.std_dot, 0.0);
        assert_relative_eq!(est.mean_dot, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn cone_of_normals_recovers_axis_and_angle() {
        // N_i = cos(theta) d + sin(theta) (cos psi_i e1 + sin psi_i e2).
        let theta = 0.7f64;
        let n = 64;
        let normals: Vec<Vec3> = (0..n)
            .map(|i| {
                let psi = 4.0 * (i as f64 + 0.3) / n as f64 - 2.0;
                Vec3::new(
                    theta.sin() * psi.cos(),
                    theta.sin() * psi.sin(),
                    theta.cos(),
                )
            })
            .collect();
        let est = estimate_axis(&normals).unwrap();
        assert!(est.std_dot <= 1e-12);
        assert_relative_eq!(est.theta, theta, epsilon = 1e-10);
        assert_relative_eq!(est.d.z.abs(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn too_few_normals_rejected() {
        let err = estimate_axis(&[Vec3::new(0.0, 0.0, 1.0); 5]).unwrap_err();
        assert!(matches!(err, AnalyzeError::TooFewSamples { .. }));
    }

    #[test]
    fn non_unit_normals_rejected() {
        let mut normals = vec![Vec3::new(0.0, 0.0, 1.0); 9];
        normals[3] = Vec3::new(0.0, 0.0, 1.5);
        let err = estimate_axis(&normals).unwrap_err();
        assert!(matches!(err, AnalyzeError::NotUnit { index: 3, .. }));
    }

    #[test]
    fn isotropic_normals_are_degenerate() {
        // The eight cube diagonals have exactly isotropic covariance, so no
        // unique minimum-variance direction exists.
        let r = 1.0 / 3.0f64.sqrt();
        let mut normals = Vec::new();
        for sx in [-1.0, 1.0] {
            for sy in [-1.0, 1.0] {
                for sz in [-1.0, 1.0] {
                    normals.push(Vec3::new(r * sx, r * sy, r * sz));
                }
            }
        }
        let err = estimate_axis(&normals).unwrap_err();
        assert!(matches!(err, AnalyzeError::DegenerateAxis { .. }));
    }

    #[test]
    fn jacobi_diagonalizes_known_matrix() {
        let a = [[2.0, 1.0, 0.0], [1.0, 2.0, 0.0], [0.0, 0.0, 5.0]];
        let (vals, vecs) = jacobi_eigen(a);
        assert_relative_eq!(vals[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(vals[1], 3.0, epsilon = 1e-12);
        assert_relative_eq!(vals[2], 5.0, epsilon = 1e-12);
        // Eigenvector check: A v = lambda v.
        for (lambda, v) in vals.iter().zip(vecs.iter()) {
            let av = Vec3::new(
                a[0][0] * v.x + a[0][1] * v.y + a[0][2] * v.z,
                a[1][0] * v.x + a[1][1] * v.y + a[1][2] * v.z,
                a[2][0] * v.x + a[2][1] * v.y + a[2][2] * v.z,
            );
            assert!((av - *v * *lambda).norm() <= 1e-12);
        }
    }

    #[test]
    fn unit_sphere_points_fit_exactly() {
        let fit = fit_sphere(&fibonacci_sphere(20)).unwrap();
        assert!(fit.center.norm() <= 1e-10);
        assert_relative_eq!(fit.radius, 1.0, epsilon = 1e-10);
        assert!(fit.rms <= 1e-12);
    }

    #[test]
    fn shifted_scaled_sphere_recovered() {
        let center = Vec3::new(1.0, 2.0, 3.0);
        let points: Vec<Vec3> = fibonacci_sphere(40)
            .into_iter()
            .map(|p| center + p * 2.0)
            .collect();
        let fit = fit_sphere(&points).unwrap();
        assert!((fit.center - center).norm() <= 1e-9);
        assert_relative_eq!(fit.radius, 2.0, epsilon = 1e-9);
    }

    #[test]
    fn circle_points_are_degenerate() {
        let points: Vec<Vec3> = (0..32)
            .map(|i| {
                let t = 2.0 * std::f64::consts::PI * i as f64 / 32.0;
                Vec3::new(t.cos(), t.sin(), 0.0)
            })
            .collect();
        let err = fit_sphere(&points).unwrap_err();
        assert!(matches!(err, AnalyzeError::DegenerateSphere { .. }));
    }

    #[test]
    fn binormal_offsets_disambiguate_a_circle() {
        // Points p +- h B of a circle lie on the sphere centered at the
        // circle's center with radius sqrt(r^2 + h^2), so the augmented fit
        // recovers the center that the bare circle cannot.
        let h = 0.5;
        let b = Vec3::new(0.0, 0.0, 1.0);
        let mut points = Vec::new();
        for i in 0..32 {
            let t = 2.0 * std::f64::consts::PI * i as f64 / 32.0;
            let p = Vec3::new(t.cos(), t.sin(), 0.0);
            points.push(p + b * h);
            points.push(p - b * h);
        }
        let fit = fit_sphere(&points).unwrap();
        assert!(fit.center.norm() <= 1e-9);
        assert_relative_eq!(fit.radius, (1.0 + h * h).sqrt(), epsilon = 1e-9);
    }

    #[test]
    fn theta_is_arccos_of_mean_dot() {
        let normals = vec![Vec3::new(0.6, 0.0, 0.8); 10];
        let est = estimate_axis(&normals).unwrap();
        assert_relative_eq!(est.theta.cos(), est.mean_dot.abs(), epsilon = 1e-14);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn rotation(axis: Vec3, angle: f64) -> impl Fn(Vec3) -> Vec3 {
            let k = axis.normalized().unwrap();
            move |v: Vec3| {
                // Rodrigues rotation.
                v * angle.cos() + k.cross(v) * angle.sin() + k * (k.dot(v) * (1.0 - angle.cos()))
            }
        }

        proptest! {
            #[test]
            fn axis_estimate_is_rotation_equivariant(
                ax in -1.0f64..1.0, ay in -1.0f64..1.0, az in 0.1f64..1.0,
                angle in 0.0f64..6.2,
                theta in 0.3f64..1.2,
            ) {
                let normals: Vec<Vec3> = (0..48)
                    .map(|i| {
                        let psi = 5.0 * (i as f64 + 0.1) / 48.0 - 2.5;
                        Vec3::new(theta.sin() * psi.cos(), theta.sin() * psi.sin(), theta.cos())
                    })
                    .collect();
                let rot = rotation(Vec3::new(ax, ay, az), angle);
                let rotated: Vec<Vec3> = normals
                    .iter()
                    .map(|n| rot(*n).normalized().unwrap())
                    .collect();
                let base = estimate_axis(&normals).unwrap();
                let turned = estimate_axis(&rotated).unwrap();
                let expected = rot(base.d);
                // Chordal distance up to sign; equals the angle to second
                // order and stays well-conditioned near zero, unlike acos.
                let dev = (turned.d - expected).norm().min((turned.d + expected).norm());
                prop_assert!(dev <= 1e-9, "axis deviates by {dev}");
            }
        }
    }
}
