use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use curvlab_core::curvature::chern_torsion;
use curvlab_core::families::hyperbolic_example_params;
use curvlab_core::verify::{Campaign, Family};
use curvlab_core::{HVerdict, Instance, Scheme, DEFAULT_TOL};
use serde::Serialize;

use crate::error::CliError;
use crate::fuzz::{run_fuzz, FuzzConfig};
use crate::instance::InstanceFile;
use crate::report::{ClassificationReport, Connection};

#[derive(Debug, Parser)]
#[command(name = "curvlab", version, about = "Curvature of Lie algebras with a left-invariant Hermitian structure")]
pub struct Cli {
    /// Numerical tolerance for every predicate and verdict.
    #[arg(long, global = true, env = "CURVLAB_TOL", default_value_t = DEFAULT_TOL)]
    pub tol: f64,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an instance file: antisymmetry, Jacobi and family constraints.
    Validate { path: PathBuf },
    /// Predicates, curvature norms and constant-H verdicts for an instance file.
    #[command(visible_alias = "classify")]
    Report {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Connection::Both)]
        connection: Connection,
    },
    /// Seeded property campaign over one of the families.
    Fuzz {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        scheme: Option<Scheme>,
        /// Draw only unimodular samples.
        #[arg(long)]
        unimodular: bool,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Complex dimension; cycles through 2, 3, 4 when omitted.
        #[arg(long)]
        dim: Option<usize>,
        /// Add the non-unimodular example with constant H^r = -2 as an extra sample.
        #[arg(long)]
        inject_example: bool,
    },
    /// Report on the almost abelian example with λ = 1, v = 0, A = I.
    Example {
        n: usize,
        #[arg(long, value_enum, default_value_t = Connection::Both)]
        connection: Connection,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Aa,
    Codim2,
}

/// Runs a parsed command, writing its report to `out`. `Ok(false)` means a property or
/// validation failure that has already been reported.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(CliError::Usage(format!("tolerance must be positive, got {}", cli.tol)));
    }
    match &cli.command {
        Command::Validate { path } => validate(&InstanceFile::read(path)?, cli, out),
        Command::Report { path, connection } => {
            let file = InstanceFile::read(path)?;
            let loaded = file.load(cli.tol)?;
            emit_report(&ClassificationReport::build(&file, &loaded, cli.tol, *connection), cli.json, out)?;
            Ok(true)
        }
        Command::Fuzz { family, scheme, unimodular, count, seed, dim, inject_example } => {
            let family = match family {
                FamilyArg::Aa => Family::AlmostAbelian,
                FamilyArg::Codim2 => Family::Codim2,
            };
            if scheme.is_some() && family != Family::Codim2 {
                return Err(CliError::Usage("--scheme applies to --family codim2 only".into()));
            }
            let cfg = FuzzConfig {
                campaign: Campaign { family, scheme: *scheme, unimodular: *unimodular, dim: *dim, seed: *seed },
                count: *count,
                tol: cli.tol,
                inject_example: *inject_example,
            };
            let summary = run_fuzz(&cfg)?;
            write_out(out, &if cli.json { summary.to_json() + "\n" } else { summary.to_text() })?;
            Ok(summary.passed())
        }
        Command::Example { n, connection } => example(*n, *connection, cli, out),
    }
}

#[derive(Serialize)]
struct ValidateOutput {
    valid: bool,
    format: String,
    jacobi: Option<curvlab_core::JacobiResidual>,
    constraints: Option<curvlab_core::families::ConstraintResidual>,
    error: Option<String>,
}

fn validate(file: &InstanceFile, cli: &Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    let result = file.load(cli.tol);
    let report = match &result {
        Ok(l) => ValidateOutput {
            valid: true,
            format: file.format().into(),
            jacobi: Some(l.alg.jacobi_residual()),
            constraints: l.constraints,
            error: None,
        },
        Err(CliError::Validation(e)) => {
            let (jacobi, constraints) = match e {
                curvlab_core::Error::Jacobi { r1, r2, r3, .. } => {
                    (Some(curvlab_core::JacobiResidual { r1: *r1, r2: *r2, r3: *r3 }), None)
                }
                curvlab_core::Error::Constraint { first, second, .. } => {
                    (None, Some(curvlab_core::families::ConstraintResidual { first: *first, second: *second }))
                }
                _ => (None, None),
            };
            ValidateOutput {
                valid: false,
                format: file.format().into(),
                jacobi,
                constraints,
                error: Some(e.to_string()),
            }
        }
        Err(_) => return result.map(|_| true),
    };
    if cli.json {
        write_out(out, &(serde_json::to_string_pretty(&report).expect("serializable") + "\n"))?;
    } else {
        let mut s = String::new();
        if let Some(j) = &report.jacobi {
            s += &format!("jacobi residuals: r1 = {:.3e}, r2 = {:.3e}, r3 = {:.3e}\n", j.r1, j.r2, j.r3);
        }
        if let Some(c) = &report.constraints {
            s += &format!("constraint residuals: first = {:.3e}, second = {:.3e}\n", c.first, c.second);
        }
        match &report.error {
            None => s += &format!("valid {} instance (tol {:e})\n", report.format, cli.tol),
            Some(e) => s += &format!("invalid: {e}\n"),
        }
        write_out(out, &s)?;
    }
    Ok(report.valid)
}

fn emit_report(report: &ClassificationReport, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    write_out(out, &if json { report.to_json() + "\n" } else { report.to_text() })
}

#[derive(Serialize)]
struct ExampleCheck {
    name: &'static str,
    expected: f64,
    actual: f64,
    pass: bool,
}

#[derive(Serialize)]
struct ExampleOutput {
    report: ClassificationReport,
    checks: Vec<ExampleCheck>,
}

fn example(n: usize, connection: Connection, cli: &Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    let params = hyperbolic_example_params(n)?;
    let file = InstanceFile::from_instance(&Instance::AlmostAbelian(params));
    let loaded = file.load(cli.tol)?;
    let report = ClassificationReport::build(&file, &loaded, cli.tol, connection);
    let lc = match &report.lc {
        Some(v) => v.clone(),
        None => ClassificationReport::build(&file, &loaded, cli.tol, Connection::Lc).lc.expect("requested"),
    };
    let t = chern_torsion(&loaded.alg).t;
    let t_worst = (1..n).map(|i| (t[(i, 0, i)].re - 2.0).abs().max(t[(i, 0, i)].im.abs())).fold(0.0, f64::max);
    let c = match lc {
        HVerdict::Constant { c } => c,
        HVerdict::NotConstant { .. } => f64::NAN,
    };
    let expected_trace = -((2 * n - 1) as f64) * std::f64::consts::SQRT_2;
    let check = |name, expected: f64, actual: f64, bound: f64| ExampleCheck {
        name,
        expected,
        actual,
        pass: (actual - expected).abs() <= bound,
    };
    let checks = vec![
        check("lc_constant", -2.0, c, cli.tol),
        check("torsion_t_i_1i", 2.0, 2.0 + t_worst, cli.tol),
        check("tr_ad_e1_real", expected_trace, report.ad_traces[0], cli.tol),
        check("kahler", 0.0, f64::from(u8::from(report.kahler)), 0.0),
        check("unimodular", 0.0, f64::from(u8::from(report.unimodular)), 0.0),
    ];
    let ok = checks.iter().all(|c| c.pass);
    if cli.json {
        let body = ExampleOutput { report, checks };
        write_out(out, &(serde_json::to_string_pretty(&body).expect("serializable") + "\n"))?;
    } else {
        let mut s = report.to_text();
        for c in &checks {
            s += &format!(
                "{} {}: expected {}, got {}\n",
                if c.pass { "ok  " } else { "FAIL" },
                c.name,
                c.expected,
                c.actual
            );
        }
        write_out(out, &s)?;
    }
    Ok(ok)
}

fn write_out(out: &mut dyn Write, s: &str) -> Result<(), CliError> {
    out.write_all(s.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (Result<bool, CliError>, String) {
        let cli = Cli::try_parse_from(std::iter::once("curvlab").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        let r = run(&cli, &mut buf);
        (r, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn example_two() {
        let (r, out) = run_args(&["example", "2"]);
        assert!(r.unwrap(), "{out}");
        assert!(out.contains("lc H        constant(-2)"));
        assert!(out.contains("ok   lc_constant"));
    }

    #[test]
    fn example_one_is_usage_error() {
        let (r, _) = run_args(&["example", "1"]);
        assert_eq!(r.unwrap_err().exit_code(), 2);
    }

    #[test]
    fn scheme_needs_codim2() {
        let (r, _) = run_args(&["fuzz", "--family", "aa", "--scheme", "A"]);
        assert_eq!(r.unwrap_err().exit_code(), 2);
    }

    #[test]
    fn classify_alias_parses() {
        let cli = Cli::try_parse_from(["curvlab", "classify", "x.json", "--connection", "lc"]).unwrap();
        assert!(matches!(cli.command, Command::Report { connection: Connection::Lc, .. }));
    }

    #[test]
    fn bad_tolerance_is_rejected() {
        let (r, _) = run_args(&["--tol=-1", "example", "2"]);
        assert_eq!(r.unwrap_err().exit_code(), 2);
    }
}
