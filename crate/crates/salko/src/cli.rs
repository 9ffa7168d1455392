//! Command-line surface.
//!
//! Subcommands: `classify`, `generate`, `residuals`, `plot`, `report`.
//! Exit codes: 0 success, 1 usage error, 2 curve-spec or expression parse
//! error, 3 numeric/domain error. Output files are written atomically
//! (temp file + rename) and repeated runs with identical inputs and seed
//! are byte-identical.

use crate::classify::{classify_curve, Tolerances};
use crate::curve::CurveSpec;
use crate::error::Error;
use crate::generate::{generate_salkowski, SalkowskiParams};
use crate::output::{curve_to_csv, points_to_svg, write_atomic, Plane};
use crate::sample::sample_curve;
use crate::suite::run_identity_suite;
use clap::{Parser, Subcommand};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "salko",
    version,
    about = "Space-curve analysis: classify curves, generate slant helices, export plots",
    long_about = None
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a curve spec and write the JSON report.
    Classify {
        /// Curve-spec JSON file.
        #[arg(long)]
        curve: PathBuf,
        /// Normalized determinant tolerance for the category flags.
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        /// Grid size.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Report destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a curve from its curvature/torsion laws and export it.
    Generate {
        /// Curve family; only `salkowski` is generated.
        #[arg(long, default_value = "salkowski")]
        family: String,
        /// Constant curvature.
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        /// Torsion slope parameter (nonzero); or give --phi.
        #[arg(long, allow_negative_numbers = true)]
        b: Option<f64>,
        /// Torsion offset parameter.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        c: f64,
        /// Normal-axis angle; sets b = 1/tan(phi) and c = 0.
        #[arg(long, allow_negative_numbers = true)]
        phi: Option<f64>,
        /// Domain start; defaults to the admissible interval.
        #[arg(long, allow_negative_numbers = true)]
        smin: Option<f64>,
        /// Domain end; defaults to the admissible interval.
        #[arg(long, allow_negative_numbers = true)]
        smax: Option<f64>,
        /// Integration step; must be at most (smax - smin)/64.
        #[arg(long)]
        step: Option<f64>,
        /// CSV destination.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// SVG destination.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// SVG projection plane.
        #[arg(long, default_value = "xy")]
        plane: Plane,
    },
    /// Print max/rms residual statistics for a curve.
    Residuals {
        /// Curve-spec JSON file.
        #[arg(long)]
        curve: PathBuf,
        /// Grid size.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Render a curve as an SVG polyline projection.
    Plot {
        /// Curve-spec JSON file.
        #[arg(long)]
        curve: PathBuf,
        /// SVG destination.
        #[arg(long)]
        svg: PathBuf,
        /// Projection plane.
        #[arg(long, default_value = "xy")]
        plane: Plane,
        /// Grid size.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Run the built-in identity suite and print a pass/fail table.
    Report {
        /// Seed for the random-curve batch.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Write the table to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Run the CLI against `argv`, writing to the given sinks. Returns the
/// process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = write!(stderr, "{e}");
            return 1;
        }
        Err(e) => {
            // --help / --version.
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Parse(_) | Error::Spec(_) | Error::SpecFile(_) => 2,
        _ => 3,
    }
}

fn validate_out_path(path: &Path) -> Result<(), Error> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        if !parent.is_dir() {
            return Err(Error::Io(std::io::Error::new(
                std::io::ErrorKind::NotFound,
                format!("output directory `{}` does not exist", parent.display()),
            )));
        }
    }
    Ok(())
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<i32, Error> {
    match command {
        Command::Classify {
            curve,
            tol,
            samples,
            out,
        } => {
            if let Some(out) = &out {
                validate_out_path(out)?;
            }
            let spec = CurveSpec::from_json_file(&curve)?;
            let report = classify_curve(&spec, samples, &Tolerances::with_residual(tol))?;
            let json = report.to_json_pretty();
            match out {
                Some(path) => write_atomic(&path, &json)?,
                None => writeln!(stdout, "{json}")?,
            }
            Ok(0)
        }
        Command::Generate {
            family,
            a,
            b,
            c,
            phi,
            smin,
            smax,
            step,
            csv,
            svg,
            plane,
        } => {
            if family != "salkowski" {
                return Err(crate::error::SpecError(format!(
                    "unknown generated family `{family}` (expected `salkowski`)"
                ))
                .into());
            }
            for path in csv.iter().chain(svg.iter()) {
                validate_out_path(path)?;
            }
            let params = SalkowskiParams::new(a, b, c, phi)?;
            let admissible = params.admissible_interval();
            let domain = [smin.unwrap_or(admissible[0]), smax.unwrap_or(admissible[1])];
            let len = domain[1] - domain[0];
            let steps = match step {
                Some(step) if step > 0.0 => (len / step).ceil() as usize,
                Some(step) => return Err(Error::BadStep(format!("step {step} must be positive"))),
                None => 2048,
            };
            let curve = generate_salkowski(&params, domain, steps)?;
            if let Some(path) = &csv {
                write_atomic(path, &curve_to_csv(&curve)?)?;
            }
            if let Some(path) = &svg {
                write_atomic(path, &points_to_svg(&curve.positions, plane))?;
            }
            writeln!(
                stdout,
                "generated {} samples on [{:.6}, {:.6}] (step {:.6e}); sigma = {:.6}",
                curve.len(),
                domain[0],
                domain[1],
                len / steps as f64,
                params.sigma(),
            )?;
            Ok(0)
        }
        Command::Residuals { curve, samples } => {
            let spec = CurveSpec::from_json_file(&curve)?;
            let report = classify_curve(&spec, samples, &Tolerances::default())?;
            let mut text = String::new();
            writeln!(text, "{:<10} {:>14} {:>14}", "residual", "max", "rms").unwrap();
            let rows = [
                ("D0", &report.stats.d0),
                ("D1", &report.stats.d1),
                ("D2", &report.stats.d2),
                ("D3", &report.stats.d3),
            ];
            for (name, stats) in rows {
                writeln!(text, "{name:<10} {:>14.6e} {:>14.6e}", stats.max, stats.rms).unwrap();
            }
            if let Some(ode) = &report.stats.ode {
                writeln!(text, "{:<10} {:>14.6e} {:>14.6e}", "ode", ode.max, ode.rms).unwrap();
            }
            write!(stdout, "{text}")?;
            Ok(0)
        }
        Command::Plot {
            curve,
            svg,
            plane,
            samples,
        } => {
            validate_out_path(&svg)?;
            let spec = CurveSpec::from_json_file(&curve)?;
            let sampled = sample_curve(&spec, samples)?;
            let points: Vec<_> = sampled.points.iter().map(|p| p.jets.value()).collect();
            write_atomic(&svg, &points_to_svg(&points, plane))?;
            Ok(0)
        }
        Command::Report { seed, out } => {
            if let Some(out) = &out {
                validate_out_path(out)?;
            }
            let outcome = run_identity_suite(seed)?;
            match out {
                Some(path) => write_atomic(&path, &outcome.text)?,
                None => write!(stdout, "{}", outcome.text)?,
            }
            Ok(if outcome.all_passed() { 0 } else { 3 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(args.iter().copied(), &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_error_is_exit_1() {
        let (code, _, err) = run_capture(&["salko", "--bogus"]);
        assert_eq!(code, 1);
        assert!(!err.is_empty());
    }

    #[test]
    fn bad_spec_is_exit_2() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        std::fs::write(
            &path,
            r#"{"expr": {"x": "sin(", "y": "s", "z": "0"}, "domain": [0, 1]}"#,
        )
        .unwrap();
        let (code, _, err) =
            run_capture(&["salko", "residuals", "--curve", path.to_str().unwrap()]);
        assert_eq!(code, 2, "stderr: {err}");
    }

    #[test]
    fn domain_error_is_exit_3() {
        let (code, _, err) = run_capture(&[
            "salko", "generate", "--b", "1", "--smin", "-1.5", "--smax", "0.5",
        ]);
        assert_eq!(code, 3, "stderr: {err}");
    }

    #[test]
    fn generate_writes_csv_and_svg() {
        let dir = tempfile::tempdir().unwrap();
        let csv = dir.path().join("out.csv");
        let svg = dir.path().join("out.svg");
        let (code, out, err) = run_capture(&[
            "salko",
            "generate",
            "--a",
            "1",
            "--b",
            "1",
            "--c",
            "0",
            "--smin",
            "-0.9",
            "--smax",
            "0.9",
            "--step",
            "0.0009",
            "--csv",
            csv.to_str().unwrap(),
            "--svg",
            svg.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "stderr: {err}");
        assert!(out.contains("sigma = 1"));
        let csv_text = std::fs::read_to_string(&csv).unwrap();
        assert!(csv_text.starts_with("s,x,y,z,Tx"));
        assert_eq!(csv_text.lines().count(), 2002); // header + 2001 samples
        assert!(std::fs::read_to_string(&svg)
            .unwrap()
            .contains("viewBox=\"0 0 800 600\""));
    }

    #[test]
    fn classify_helix_report() {
        let dir = tempfile::tempdir().unwrap();
        let spec = dir.path().join("helix.json");
        std::fs::write(
            &spec,
            r#"{"family": "circular-helix", "params": {"a": 3, "b": 4}, "domain": [0, 10]}"#,
        )
        .unwrap();
        let out = dir.path().join("report.json");
        let (code, _, err) = run_capture(&[
            "salko",
            "classify",
            "--curve",
            spec.to_str().unwrap(),
            "--tol",
            "1e-7",
            "--samples",
            "200",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "stderr: {err}");
        let report: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(report["flags"]["general_helix"], true);
        assert_eq!(report["flags"]["planar"], false);
        assert!(report["residuals"]["D2"].is_array());
        assert!(report["stats"]["D2"]["max"].is_number());
    }

    #[test]
    fn residuals_table_for_generated_curve() {
        let dir = tempfile::tempdir().unwrap();
        let spec = dir.path().join("salkowski.json");
        std::fs::write(
            &spec,
            r#"{"family": "salkowski-generated", "params": {"b": 1}, "domain": [-0.9, 0.9]}"#,
        )
        .unwrap();
        let (code, out, err) = run_capture(&[
            "salko",
            "residuals",
            "--curve",
            spec.to_str().unwrap(),
            "--samples",
            "100",
        ]);
        assert_eq!(code, 0, "stderr: {err}");
        let d3_row = out.lines().find(|l| l.starts_with("D3")).unwrap();
        let max: f64 = d3_row.split_whitespace().nth(1).unwrap().parse().unwrap();
        assert!(max <= 1e-6, "D3 max {max} in table:\n{out}");
        assert!(out.lines().any(|l| l.starts_with("ode")));
    }

    #[test]
    fn plot_writes_projection() {
        let dir = tempfile::tempdir().unwrap();
        let spec = dir.path().join("helix.json");
        std::fs::write(
            &spec,
            r#"{"family": "circular-helix", "params": {"a": 3, "b": 4}, "domain": [0, 10]}"#,
        )
        .unwrap();
        let svg = dir.path().join("plot.svg");
        let (code, _, err) = run_capture(&[
            "salko",
            "plot",
            "--curve",
            spec.to_str().unwrap(),
            "--svg",
            svg.to_str().unwrap(),
            "--plane",
            "xz",
        ]);
        assert_eq!(code, 0, "stderr: {err}");
        let text = std::fs::read_to_string(&svg).unwrap();
        assert!(text.contains("viewBox=\"0 0 800 600\""));
        assert_eq!(text.matches("<polyline").count(), 1);
    }

    #[test]
    fn csv_and_json_outputs_are_byte_identical_across_runs() {
        let dir = tempfile::tempdir().unwrap();
        let spec = dir.path().join("salkowski.json");
        std::fs::write(
            &spec,
            r#"{"family": "salkowski-generated", "params": {"b": 1}, "domain": [-0.5, 0.5]}"#,
        )
        .unwrap();
        let run_outputs = |tag: &str| {
            let csv = dir.path().join(format!("{tag}.csv"));
            let json = dir.path().join(format!("{tag}.json"));
            let (code, _, err) = run_capture(&[
                "salko",
                "generate",
                "--b",
                "1",
                "--smin",
                "-0.5",
                "--smax",
                "0.5",
                "--step",
                "0.005",
                "--csv",
                csv.to_str().unwrap(),
            ]);
            assert_eq!(code, 0, "stderr: {err}");
            let (code, _, err) = run_capture(&[
                "salko",
                "classify",
                "--curve",
                spec.to_str().unwrap(),
                "--samples",
                "32",
                "--out",
                json.to_str().unwrap(),
            ]);
            assert_eq!(code, 0, "stderr: {err}");
            (std::fs::read(csv).unwrap(), std::fs::read(json).unwrap())
        };
        let (csv1, json1) = run_outputs("a");
        let (csv2, json2) = run_outputs("b");
        assert_eq!(csv1, csv2);
        assert_eq!(json1, json2);
    }

    #[test]
    fn missing_output_dir_is_usage_like_error() {
        let (code, _, _) = run_capture(&[
            "salko",
            "generate",
            "--b",
            "1",
            "--csv",
            "/nonexistent-dir-xyz/out.csv",
        ]);
        assert_eq!(code, 3);
    }
}
