//! Command-line front end: polynomial tables, spectra, overlap matrices and
//! the verification suite, emitted as CSV or JSON with full round-trip
//! precision.
//!
//! stdout carries data only; diagnostics and per-check pass/fail lines go to
//! stderr. Exit codes: 0 all-pass, 1 check failure, 2 usage error.

use crate::dualhahn::{eval_recurrence, grid_point, norm, weight, DualHahnParams};
use crate::overlaps::{
    align_rows_to, eigen_matrix, quadrature_matrix, OverlapMatrix, QuadratureSpec,
};
use crate::spinor::PolarState;
use crate::verify::{all_passed, run_suite};
use crate::Sign;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "hahnosc",
    about = "Dual -1 Hahn polynomials and the spinorial singular oscillator: tables, spectra, overlaps and verification",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dual -1 Hahn polynomial values, grid, weights and norms
    Poly(PolyArgs),
    /// Energy levels and degeneracies of the two-dimensional model
    Spectrum(SpectrumArgs),
    /// Overlap matrix between the Casimir and Cartesian eigenbases
    Overlap(OverlapArgs),
    /// Run the verification suite
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct PolyArgs {
    /// Parameter xi (> -1/2)
    #[arg(long)]
    xi: f64,
    /// Parameter zeta (> -1/2)
    #[arg(long)]
    zeta: f64,
    /// Truncation N of the finite family
    #[arg(long = "N")]
    n_cap: u32,
    /// Restrict output to a single degree / grid index
    #[arg(long)]
    n: Option<u32>,
    /// Print the orthogonality data (grid, weights, norms); the default
    #[arg(long)]
    grid: bool,
    /// Evaluate the polynomials at this point instead
    #[arg(long, conflicts_with = "grid")]
    x: Option<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[arg(long)]
    k1: u32,
    #[arg(long)]
    k2: u32,
    /// Largest energy level m1+m2 to tabulate
    #[arg(long, default_value_t = 5)]
    max_level: u32,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OverlapMethod {
    Closed,
    Eigen,
    Quadrature,
}

#[derive(Args, Debug)]
struct OverlapArgs {
    /// Energy level N = m1 + m2
    #[arg(long)]
    level: u32,
    #[arg(long)]
    k1: u32,
    #[arg(long)]
    k2: u32,
    /// Computation route; non-closed routes add a cross-check column
    #[arg(long, value_enum, default_value = "closed")]
    method: OverlapMethod,
    /// Gauss-Legendre nodes per axis for the quadrature route
    #[arg(long, default_value_t = 160)]
    nodes: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Run only the named checks (repeatable)
    #[arg(long)]
    only: Vec<String>,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
}

/// One machine-readable output block: schema version, the invoked command,
/// its parameters, and numeric rows.
#[derive(Clone, Debug)]
pub struct OutputRecord {
    pub command: String,
    pub params: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl OutputRecord {
    pub fn write_csv(&self, out: &mut impl Write) -> std::io::Result<()> {
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn write_json(&self, out: &mut impl Write) -> std::io::Result<()> {
        let mut params = serde_json::Map::new();
        for (k, v) in &self.params {
            params.insert(k.clone(), serde_json::Value::String(v.clone()));
        }
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (col, v) in self.columns.iter().zip(row) {
                    obj.insert(col.to_string(), serde_json::json!(v));
                }
                serde_json::Value::Object(obj)
            })
            .collect();
        let doc = serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "params": serde_json::Value::Object(params),
            "rows": rows,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)
    }

    pub fn write(&self, format: OutputFormat, out: &mut impl Write) -> std::io::Result<()> {
        match format {
            OutputFormat::Csv => self.write_csv(out),
            OutputFormat::Json => self.write_json(out),
        }
    }
}

/// A command outcome: the record to print (if any) and the exit code.
type CmdResult = Result<(Option<OutputRecord>, i32), String>;

fn cmd_poly(args: &PolyArgs) -> CmdResult {
    let params = DualHahnParams::new(args.xi, args.zeta, args.n_cap).map_err(|e| e.to_string())?;
    if let Some(n) = args.n {
        if n > args.n_cap {
            return Err(format!("--n {n} exceeds --N {}", args.n_cap));
        }
    }
    let degrees: Vec<u32> = match args.n {
        Some(n) => vec![n],
        None => (0..=args.n_cap).collect(),
    };
    let mut meta = vec![
        ("xi".to_string(), format!("{}", args.xi)),
        ("zeta".to_string(), format!("{}", args.zeta)),
        ("N".to_string(), format!("{}", args.n_cap)),
    ];
    let record = if let Some(x) = args.x {
        meta.push(("x".to_string(), format!("{x}")));
        OutputRecord {
            command: "poly".into(),
            params: meta,
            columns: vec!["n", "x", "value"],
            rows: degrees
                .iter()
                .map(|&n| {
                    let v = eval_recurrence(n, x, &params).map_err(|e| e.to_string())?;
                    Ok(vec![n as f64, x, v])
                })
                .collect::<Result<_, String>>()?,
        }
    } else {
        OutputRecord {
            command: "poly".into(),
            params: meta,
            columns: vec!["s", "grid", "weight", "norm"],
            rows: degrees
                .iter()
                .map(|&s| {
                    Ok(vec![
                        s as f64,
                        grid_point(s, &params).map_err(|e| e.to_string())?,
                        weight(s, &params).map_err(|e| e.to_string())?,
                        norm(s, &params).map_err(|e| e.to_string())?,
                    ])
                })
                .collect::<Result<_, String>>()?,
        }
    };
    Ok((Some(record), 0))
}

fn polar_degeneracy(level: u32, k1: u32, k2: u32) -> u32 {
    let mut count = 0;
    for twice_ell in (level % 2..=level).step_by(2) {
        let sectors: &[(Sign, Sign)] = if twice_ell % 2 == 0 {
            &[(Sign::Plus, Sign::Plus), (Sign::Minus, Sign::Minus)]
        } else {
            &[(Sign::Plus, Sign::Minus), (Sign::Minus, Sign::Plus)]
        };
        for &(s1, s2) in sectors {
            let st = PolarState::new(twice_ell, (level - twice_ell) / 2, s1, s2, k1, k2).unwrap();
            if st.jacobi_degree() >= 0 {
                count += 1;
            }
        }
    }
    count
}

fn cmd_spectrum(args: &SpectrumArgs) -> CmdResult {
    let rows = (0..=args.max_level)
        .map(|level| {
            let energy = (level + args.k1 + args.k2 + 1) as f64;
            let cart = level + 1;
            let polar = polar_degeneracy(level, args.k1, args.k2);
            vec![
                level as f64,
                energy,
                cart as f64,
                polar as f64,
                (cart == polar) as u8 as f64,
            ]
        })
        .collect();
    let record = OutputRecord {
        command: "spectrum".into(),
        params: vec![
            ("k1".to_string(), format!("{}", args.k1)),
            ("k2".to_string(), format!("{}", args.k2)),
            ("max_level".to_string(), format!("{}", args.max_level)),
        ],
        columns: vec!["level", "energy", "cartesian_degeneracy", "polar_degeneracy", "counts_match"],
        rows,
    };
    Ok((Some(record), 0))
}

fn cmd_overlap(args: &OverlapArgs) -> CmdResult {
    let (level, k1, k2) = (args.level, args.k1, args.k2);
    let closed = OverlapMatrix::closed_form(level, k1, k2).map_err(|e| e.to_string())?;
    let mut params = vec![
        ("level".to_string(), format!("{level}")),
        ("k1".to_string(), format!("{k1}")),
        ("k2".to_string(), format!("{k2}")),
    ];
    let n = level as usize;
    let (columns, rows): (Vec<&'static str>, Vec<Vec<f64>>) = match args.method {
        OverlapMethod::Closed => {
            params.push(("method".to_string(), "closed".to_string()));
            let mut rows = Vec::new();
            for z in 0..=n {
                for m in 0..=n {
                    rows.push(vec![z as f64, m as f64, closed.entries[(z, m)]]);
                }
            }
            (vec!["z", "m", "value"], rows)
        }
        OverlapMethod::Eigen => {
            params.push(("method".to_string(), "eigen".to_string()));
            let (mut eig, eig_defect) = eigen_matrix(level, k1, k2).map_err(|e| e.to_string())?;
            params.push(("eigenvalue_defect".to_string(), format!("{eig_defect:e}")));
            align_rows_to(&closed.entries, &mut eig);
            let mut rows = Vec::new();
            for z in 0..=n {
                for m in 0..=n {
                    let v = eig[(z, m)];
                    let c = closed.entries[(z, m)];
                    rows.push(vec![z as f64, m as f64, v, c, (v - c).abs()]);
                }
            }
            (vec!["z", "m", "value", "closed", "abs_diff"], rows)
        }
        OverlapMethod::Quadrature => {
            params.push(("method".to_string(), "quadrature".to_string()));
            let spec = QuadratureSpec { nodes: args.nodes, tol: 1e-8 };
            let mut quad = quadrature_matrix(level, k1, k2, &spec).map_err(|e| e.to_string())?;
            align_rows_to(&closed.entries, &mut quad);
            let mut rows = Vec::new();
            for z in 0..=n {
                for m in 0..=n {
                    let q = quad[(z, m)];
                    let c = closed.entries[(z, m)];
                    rows.push(vec![z as f64, m as f64, q, c, (q - c).abs()]);
                }
            }
            (vec!["z", "m", "value", "closed", "abs_diff"], rows)
        }
    };
    let record = OutputRecord { command: "overlap".into(), params, columns, rows };
    Ok((Some(record), 0))
}

fn cmd_verify(args: &VerifyArgs, err: &mut impl Write) -> CmdResult {
    let only = if args.only.is_empty() { None } else { Some(args.only.as_slice()) };
    let reports = run_suite(only)?;
    let mut params = Vec::new();
    let mut rows = Vec::new();
    for (i, r) in reports.iter().enumerate() {
        let _ = writeln!(err, "{}", r.one_line());
        let detail: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        params.push((format!("check.{i}"), format!("{} [{}]", r.name, detail.join(" "))));
        rows.push(vec![
            i as f64,
            r.defect,
            r.tolerance,
            r.passed as u8 as f64,
            r.runtime.as_secs_f64() * 1e3,
        ]);
    }
    let record = OutputRecord {
        command: "verify".into(),
        params,
        columns: vec!["check_index", "defect", "tolerance", "passed", "runtime_ms"],
        rows,
    };
    let code = if all_passed(&reports) { 0 } else { 1 };
    Ok((Some(record), code))
}

/// Parse `argv` and run; data goes to `out`, diagnostics to `err`. Returns
/// the process exit code.
pub fn run<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    let (format, result) = match &cli.command {
        Command::Poly(a) => (a.format, cmd_poly(a)),
        Command::Spectrum(a) => (a.format, cmd_spectrum(a)),
        Command::Overlap(a) => (a.format, cmd_overlap(a)),
        Command::Verify(a) => (a.format, cmd_verify(a, err)),
    };
    match result {
        Ok((record, code)) => {
            if let Some(record) = record {
                if record.write(format, out).is_err() {
                    return 2;
                }
            }
            code
        }
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
    }
}
