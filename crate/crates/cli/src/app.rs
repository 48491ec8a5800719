use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hlbound::bounds::{best_lower_bound, lower_bound_777, lower_bound_main, upper_bound, BoundReport};
use hlbound::exponents::{exponent_for, rational_to_f64};
use hlbound::poly::{witness_pm, witness_q2, witness_qm};
use hlbound::search::{heuristic_witness_search, optimize_c, SearchConfig, SearchResult};
use hlbound::supnorm::{supnorm_search, NormEstimate, OptimizerConfig};
use hlbound::ExtendedExponent;
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::polyfile::{read_polynomial, write_polynomial, PolynomialFile};
use crate::table::{self, Cell, TableSpec};
use crate::verify::{self, Subject};

pub const CERTIFIED_MARKER: &str = "CERTIFIED";
pub const HEURISTIC_MARKER: &str = "NOT CERTIFIED (heuristic estimate)";

/// Bounds for the complex polynomial Hardy-Littlewood constants C(m, p).
///
/// Exit codes: 0 success, 1 verification failure, 2 domain error,
/// 3 input or parse error.
#[derive(Debug, Parser)]
#[command(name = "hlbound", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimal exponent rho(m, p), exact and decimal.
    Exponent {
        #[arg(long)]
        m: u32,
        /// Integer, decimal, fraction or `inf`.
        #[arg(long)]
        p: String,
    },
    /// A single bound.
    Bound {
        #[arg(value_enum)]
        kind: BoundKind,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        p: String,
        /// Offset above the c-threshold for `thm777`.
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
        /// Multilinear constant for `upper`.
        #[arg(long, default_value_t = 1.0)]
        cmult: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Numerical sup-norm of a polynomial file on the unit ball of l_p.
    Norm {
        file: PathBuf,
        #[arg(long)]
        p: String,
        #[command(flatten)]
        optimizer: OptimizerArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Grid of bounds over degrees, exponents and methods.
    Table {
        /// `2..5`, `2..=5` or `2,3,7`.
        #[arg(long)]
        m: String,
        /// Comma list of `inf`, numbers and expressions in m such as `2m+4`.
        #[arg(long)]
        p: String,
        /// Comma list of main, thm777, upper, best, quotient, bh-reference,
        /// real-reference.
        #[arg(long, default_value = "main")]
        methods: String,
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
        #[arg(long, default_value_t = 1.0)]
        cmult: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Search for larger quotients.
    Search {
        #[command(subcommand)]
        mode: SearchMode,
    },
    /// Run the reproduction suite.
    Verify {
        /// Criterion number or group (anchor, exponents, norms, thm777,
        /// chain, reference, properties).
        #[arg(long)]
        filter: Option<String>,
    },
    /// Write a witness polynomial in the canonical file format.
    Witness {
        #[arg(value_enum)]
        family: WitnessKind,
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, default_value_t = 0.0)]
        c: f64,
        /// Output path; stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundKind {
    Main,
    Thm777,
    Upper,
    Best,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WitnessKind {
    /// z1 z2 ... zm
    Pm,
    /// z3 ... zm (z1^2 - z2^2 + c z1 z2)
    Qm,
    /// z1^2 - z2^2 + c z1 z2
    Q2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OptimizerArgs {
    #[arg(long, default_value_t = 32)]
    pub starts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Gradient tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 5000)]
    pub max_iter: usize,
}

impl OptimizerArgs {
    fn config(&self) -> OptimizerConfig {
        OptimizerConfig {
            starts: self.starts,
            max_iterations: self.max_iter,
            gradient_tolerance: self.tol,
            seed: self.seed,
            ..OptimizerConfig::default()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum SearchMode {
    /// Certified: maximize the Qm quotient over c.
    OptimizeC {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 0.0)]
        c_min: f64,
        #[arg(long, default_value_t = 100.0)]
        c_max: f64,
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[arg(long, default_value_t = 60)]
        refine: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also write the best witness to this file.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Not certified: perturb free coefficients against a numerical norm.
    Heuristic {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        p: String,
        /// Number of proposals.
        #[arg(long, default_value_t = 60)]
        iterations: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum number of terms.
        #[arg(long, default_value_t = 8)]
        terms: usize,
        /// Starts of the inner sup-norm search.
        #[arg(long, default_value_t = 16)]
        starts: usize,
        /// Start polynomial file.
        #[arg(long)]
        start: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
}

fn parse_p(s: &str) -> Result<ExtendedExponent> {
    Ok(s.parse()?)
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    run_with(cli, &verify::Library, out)
}

/// As [`run`], with the subject `verify` checks against.
pub fn run_with(cli: Cli, subject: &dyn Subject, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Exponent { m, p } => {
            let rho = exponent_for(m, parse_p(&p)?)?;
            writeln!(out, "{rho} ({:.6})", rational_to_f64(&rho))?;
        }
        Command::Bound { kind, m, p, eps, cmult, format } => {
            let p = parse_p(&p)?;
            let report = match kind {
                BoundKind::Main => lower_bound_main(m, p)?,
                BoundKind::Thm777 => lower_bound_777(m, p, eps)?,
                BoundKind::Upper => upper_bound(m, p, cmult)?,
                BoundKind::Best => best_lower_bound(m, p)?,
            };
            write_report(&report, format, out)?;
        }
        Command::Norm { file, p, optimizer, format } => {
            let poly = read_polynomial(&file)?;
            let p = parse_p(&p)?;
            let est = supnorm_search(&poly, p, &optimizer.config())?;
            write_norm(&est, format, out)?;
        }
        Command::Table { m, p, methods, eps, cmult, format } => {
            let spec = TableSpec {
                degrees: table::parse_m_range(&m)?,
                exponents: table::parse_p_list(&p)?,
                methods: table::parse_methods(&methods)?,
                epsilon: eps,
                cmult,
            };
            let cells = table::build_table(&spec)?;
            write_cells(&cells, format, out)?;
        }
        Command::Search { mode } => search(mode, out)?,
        Command::Verify { filter } => {
            let reports = verify::run(subject, filter.as_deref())?;
            verify::render(&reports, &mut *out)?;
            let failed: Vec<String> = reports
                .iter()
                .filter(|r| !r.passed())
                .map(|r| format!("criterion {} [{}]: {}", r.number, r.group, r.failures().join(", ")))
                .collect();
            if !failed.is_empty() {
                return Err(CliError::Verification(failed.join("; ")));
            }
        }
        Command::Witness { family, m, c, out: path } => {
            let poly = match family {
                WitnessKind::Pm => witness_pm(m)?,
                WitnessKind::Qm => witness_qm(m, c)?,
                WitnessKind::Q2 => witness_q2(c)?,
            };
            let text = write_polynomial(&poly);
            match path {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?,
                None => out.write_all(text.as_bytes())?,
            }
        }
    }
    Ok(())
}

fn write_report(report: &BoundReport, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Text => {
            writeln!(
                out,
                "{}(m={}, p={}) = {:.6} [{}]",
                report.method,
                report.m,
                report.p,
                report.value,
                if report.certified { "certified" } else { "not certified" }
            )?;
            for (k, v) in &report.parameters {
                writeln!(out, "  {k} = {v}")?;
            }
            Ok(())
        }
        _ => write_cells(&[Cell::Report(report.clone())], format, out),
    }
}

fn write_cells(cells: &[Cell], format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Text => table::write_text(cells, out),
        Format::Csv => table::write_csv(cells, out),
        Format::Json => {
            writeln!(out, "{}", table::to_json(cells)?)?;
            Ok(())
        }
    }
}

fn render_point(z: &[hlbound::Complex64]) -> String {
    let parts: Vec<String> = z.iter().map(|w| format!("{}{:+}i", w.re, w.im)).collect();
    parts.join(" ")
}

#[derive(Serialize)]
struct NormJson {
    value: f64,
    status: String,
    starts_used: usize,
    maximizer: Vec<[f64; 2]>,
}

fn write_norm(est: &NormEstimate, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Text => {
            writeln!(out, "value      {:.12}", est.value)?;
            writeln!(out, "status     {}", est.status)?;
            writeln!(out, "starts     {}", est.starts_used)?;
            writeln!(out, "maximizer  {}", render_point(&est.maximizer))?;
        }
        Format::Csv => {
            writeln!(out, "value,status,starts_used,maximizer")?;
            writeln!(out, "{},{},{},{}", est.value, est.status, est.starts_used, render_point(&est.maximizer))?;
        }
        Format::Json => {
            let row = NormJson {
                value: est.value,
                status: est.status.to_string(),
                starts_used: est.starts_used,
                maximizer: est.maximizer.iter().map(|w| [w.re, w.im]).collect(),
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&row).map_err(|e| CliError::Input(e.to_string()))?)?;
        }
    }
    Ok(())
}

fn search(mode: SearchMode, out: &mut dyn Write) -> Result<()> {
    let (result, format, witness_out) = match mode {
        SearchMode::OptimizeC { m, p, c_min, c_max, grid, refine, format, witness_out } => {
            let cfg = SearchConfig { c_min, c_max, grid_points: grid, refine_iterations: refine, ..SearchConfig::default() };
            (optimize_c(m, parse_p(&p)?, &cfg)?, format, witness_out)
        }
        SearchMode::Heuristic { n, m, p, iterations, seed, terms, starts, start, format, witness_out } => {
            let defaults = SearchConfig::default();
            let cfg = SearchConfig {
                refine_iterations: iterations,
                seed,
                coefficient_count_limit: terms,
                optimizer: OptimizerConfig { starts, seed, ..defaults.optimizer.clone() },
                ..defaults
            };
            let start = start.map(|f| read_polynomial(&f)).transpose()?;
            (heuristic_witness_search(n, m, parse_p(&p)?, &cfg, start.as_ref())?, format, witness_out)
        }
    };
    if let Some(path) = witness_out {
        std::fs::write(&path, write_polynomial(&result.witness))
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    write_search(&result, format, out)
}

pub fn marker(certified: bool) -> &'static str {
    if certified {
        CERTIFIED_MARKER
    } else {
        HEURISTIC_MARKER
    }
}

#[derive(Serialize)]
struct SearchJson<'a> {
    value: f64,
    certified: bool,
    marker: &'static str,
    parameters: &'a std::collections::BTreeMap<String, f64>,
    witness: PolynomialFile,
}

fn write_search(result: &SearchResult, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Text => {
            writeln!(out, "value       {:.12}", result.best_value)?;
            writeln!(out, "status      {}", marker(result.certified))?;
            writeln!(out, "parameters  {}", table::render_params(&result.parameters))?;
            writeln!(out, "witness")?;
            out.write_all(write_polynomial(&result.witness).as_bytes())?;
        }
        Format::Csv => {
            writeln!(out, "value,certified,marker,params")?;
            writeln!(
                out,
                "{},{},{},{}",
                result.best_value,
                result.certified,
                marker(result.certified),
                table::render_params(&result.parameters)
            )?;
        }
        Format::Json => {
            let row = SearchJson {
                value: result.best_value,
                certified: result.certified,
                marker: marker(result.certified),
                parameters: &result.parameters,
                witness: PolynomialFile::from_polynomial(&result.witness),
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&row).map_err(|e| CliError::Input(e.to_string()))?)?;
        }
    }
    Ok(())
}
