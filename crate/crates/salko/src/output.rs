//! CSV and SVG export with atomic file writes.

use crate::error::{Result, SpecError};
use crate::generate::SampledCurve;
use crate::vec3::Vec3;
use std::io::Write;
use std::path::Path;

/// Projection plane for 2-D output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Plane {
    #[default]
    Xy,
    Xz,
    Yz,
}

impl Plane {
    pub fn project(&self, p: Vec3) -> (f64, f64) {
        match self {
            Plane::Xy => (p.x, p.y),
            Plane::Xz => (p.x, p.z),
            Plane::Yz => (p.y, p.z),
        }
    }
}

impl std::str::FromStr for Plane {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Plane, String> {
        match s {
            "xy" => Ok(Plane::Xy),
            "xz" => Ok(Plane::Xz),
            "yz" => Ok(Plane::Yz),
            other => Err(format!("unknown plane `{other}` (expected xy, xz or yz)")),
        }
    }
}

/// Render a sampled curve as CSV with the fixed header
/// `s,x,y,z,Tx,Ty,Tz,Nx,Ny,Nz,Bx,By,Bz,kappa,tau,sigma`, numbers printed
/// with 17 significant digits so repeated runs are byte-identical and
/// re-parsing loses nothing.
pub fn curve_to_csv(curve: &SampledCurve) -> Result<String> {
    let frames = curve
        .frames
        .as_ref()
        .ok_or_else(|| SpecError("CSV export needs frames".into()))?;
    let kappa = curve
        .kappa
        .as_ref()
        .ok_or_else(|| SpecError("CSV export needs kappa samples".into()))?;
    let tau = curve
        .tau
        .as_ref()
        .ok_or_else(|| SpecError("CSV export needs tau samples".into()))?;
    let sigma = curve
        .sigma
        .as_ref()
        .ok_or_else(|| SpecError("CSV export needs sigma samples".into()))?;

    let mut out = String::with_capacity(curve.len() * 300);
    out.push_str("s,x,y,z,Tx,Ty,Tz,Nx,Ny,Nz,Bx,By,Bz,kappa,tau,sigma\n");
    for i in 0..curve.len() {
        let p = curve.positions[i];
        let f = frames[i];
        let row = [
            curve.s[i], p.x, p.y, p.z, f.t.x, f.t.y, f.t.z, f.n.x, f.n.y, f.n.z, f.b.x, f.b.y,
            f.b.z, kappa[i], tau[i], sigma[i],
        ];
        let mut first = true;
        for v in row {
            if !first {
                out.push(',');
            }
            first = false;
            out.push_str(&format!("{v:.16e}"));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Render projected positions as a single-polyline SVG with viewBox
/// `0 0 800 600`, autoscaled with a 5% margin; no external assets.
pub fn points_to_svg(points: &[Vec3], plane: Plane) -> String {
    const W: f64 = 800.0;
    const H: f64 = 600.0;
    let projected: Vec<(f64, f64)> = points.iter().map(|p| plane.project(*p)).collect();
    let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for (x, y) in &projected {
        min_x = min_x.min(*x);
        max_x = max_x.max(*x);
        min_y = min_y.min(*y);
        max_y = max_y.max(*y);
    }
    let span_x = (max_x - min_x).max(1e-12);
    let span_y = (max_y - min_y).max(1e-12);
    // 5% margin on each side, aspect preserved.
    let scale = ((0.9 * W) / span_x).min((0.9 * H) / span_y);
    let offset_x = 0.5 * (W - scale * span_x);
    let offset_y = 0.5 * (H - scale * span_y);

    let mut svg = String::with_capacity(projected.len() * 16 + 256);
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {W:.0} {H:.0}\">\n"
    ));
    svg.push_str("  <polyline fill=\"none\" stroke=\"#1a1a1a\" stroke-width=\"1.5\" points=\"");
    for (i, (x, y)) in projected.iter().enumerate() {
        if i > 0 {
            svg.push(' ');
        }
        let sx = offset_x + scale * (x - min_x);
        // SVG y grows downward.
        let sy = H - (offset_y + scale * (y - min_y));
        svg.push_str(&format!("{sx:.3},{sy:.3}"));
    }
    svg.push_str("\"/>\n</svg>\n");
    svg
}

/// Write a file atomically: contents go to a temporary file in the target
/// directory which is then renamed over the destination.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = match dir {
        Some(dir) => tempfile::NamedTempFile::new_in(dir)?,
        None => tempfile::NamedTempFile::new_in(".")?,
    };
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate_salkowski, SalkowskiParams};

    #[test]
    fn csv_header_and_shape() {
        let p = SalkowskiParams::new(1.0, Some(1.0), 0.0, None).unwrap();
        let curve = generate_salkowski(&p, [-0.5, 0.5], 64).unwrap();
        let csv = curve_to_csv(&curve).unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "s,x,y,z,Tx,Ty,Tz,Nx,Ny,Nz,Bx,By,Bz,kappa,tau,sigma"
        );
        assert_eq!(csv.lines().count(), 66); // header + 65 samples
        let first = lines.next().unwrap();
        assert_eq!(first.split(',').count(), 16);
        // 17 significant digits.
        assert!(first.split(',').next().unwrap().contains("e"));
    }

    #[test]
    fn svg_structure() {
        let points = vec![
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 1.0, 0.5),
            Vec3::new(2.0, 0.0, 1.0),
        ];
        let svg = points_to_svg(&points, Plane::Xy);
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("viewBox=\"0 0 800 600\""));
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(!svg.contains("href"));
    }

    #[test]
    fn atomic_write_replaces_content() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.txt");
        write_atomic(&path, "first").unwrap();
        write_atomic(&path, "second").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "second");
        // No stray temp files left behind.
        let left: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(left.len(), 1);
    }
}
