//! Bound grids over `(m, p, method)` and their text, CSV and JSON renderings.
//!
//! A cell whose parameters fall outside a method's domain is kept in the
//! grid and marked `out-of-domain`; it does not abort the table.

use std::collections::BTreeMap;
use std::io::Write;

use hlbound::bounds::{
    best_lower_bound, bh_reference_report, certified_quotient, lower_bound_777, lower_bound_main,
    real_reference_report, upper_bound, BoundReport, Method,
};
use hlbound::exponents::Rational;
use hlbound::search::{optimize_c, SearchConfig};
use hlbound::supnorm::WitnessFamily;
use hlbound::ExtendedExponent;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const OUT_OF_DOMAIN: &str = "out-of-domain";
pub const CSV_HEADER: [&str; 6] = ["m", "p", "method", "value", "certified", "params"];

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Report(BoundReport),
    OutOfDomain { m: u32, p: String, method: Method, message: String },
}

impl Cell {
    pub fn report(&self) -> Option<&BoundReport> {
        match self {
            Self::Report(r) => Some(r),
            Self::OutOfDomain { .. } => None,
        }
    }
}

/// An entry of a p-list: a fixed exponent or `a·m + b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PSpec {
    Fixed(ExtendedExponent),
    Affine { a: i128, b: i128 },
}

impl PSpec {
    pub fn resolve(&self, m: u32) -> std::result::Result<ExtendedExponent, String> {
        match *self {
            Self::Fixed(p) => Ok(p),
            Self::Affine { a, b } => {
                let v = a * i128::from(m) + b;
                ExtendedExponent::integer(v).map_err(|e| e.to_string())
            }
        }
    }

    fn label(&self, m: u32) -> String {
        match self.resolve(m) {
            Ok(p) => p.to_string(),
            Err(_) => match *self {
                Self::Affine { a, b } => (a * i128::from(m) + b).to_string(),
                Self::Fixed(p) => p.to_string(),
            },
        }
    }
}

/// `2..5` (inclusive), `2..=5`, `2,3,7` or a single degree.
pub fn parse_m_range(s: &str) -> Result<Vec<u32>> {
    let bad = || CliError::Input(format!("invalid m-range {s:?}"));
    let t = s.trim();
    if let Some((lo, hi)) = t.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
        return Ok((lo..=hi).collect());
    }
    t.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse().map_err(|_| bad()))
        .collect()
}

/// Comma-separated list of `inf`, numbers (`4`, `2.5`, `5/2`) and affine
/// expressions in `m` (`2m`, `2m+4`, `m+1`, `3m-2`).
pub fn parse_p_list(s: &str) -> Result<Vec<PSpec>> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(|x| parse_p_spec(x.trim())).collect()
}

fn parse_p_spec(t: &str) -> Result<PSpec> {
    let bad = || CliError::Input(format!("invalid p {t:?}"));
    let compact: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(pos) = compact.find('m') else {
        return Ok(PSpec::Fixed(compact.parse().map_err(|_| bad())?));
    };
    let (coef, rest) = compact.split_at(pos);
    let rest = &rest[1..];
    let a = match coef {
        "" => 1,
        "-" => -1,
        _ => coef.parse::<i128>().map_err(|_| bad())?,
    };
    let b = if rest.is_empty() {
        0
    } else {
        let (sign, digits) = rest.split_at(1);
        let v: i128 = digits.parse().map_err(|_| bad())?;
        match sign {
            "+" => v,
            "-" => -v,
            _ => return Err(bad()),
        }
    };
    Ok(PSpec::Affine { a, b })
}

/// Methods by name; `upper` is accepted for `upper-factor`.
pub fn parse_methods(s: &str) -> Result<Vec<Method>> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| match x.trim() {
            "upper" => Ok(Method::UpperFactor),
            other => other.parse().map_err(|_| CliError::Input(format!("unknown method {other:?}"))),
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct TableSpec {
    pub degrees: Vec<u32>,
    pub exponents: Vec<PSpec>,
    pub methods: Vec<Method>,
    /// `ε` for `thm777` cells.
    pub epsilon: f64,
    /// Multilinear constant for `upper-factor` cells.
    pub cmult: f64,
}

/// One report for a single method; errors are the library's.
pub fn compute(m: u32, p: ExtendedExponent, method: Method, epsilon: f64, cmult: f64) -> hlbound::Result<BoundReport> {
    match method {
        Method::Main => lower_bound_main(m, p),
        Method::Thm777 => lower_bound_777(m, p, epsilon),
        Method::UpperFactor => upper_bound(m, p, cmult),
        Method::Best => best_lower_bound(m, p),
        Method::BhReference => {
            if !p.is_infinite() {
                return Err(hlbound::Error::Domain(format!("bh-reference is defined at p = inf only, got {p}")));
            }
            bh_reference_report(m)
        }
        Method::RealReference => real_reference_report(m, p),
        Method::Quotient => {
            let best = optimize_c(m, p, &SearchConfig::default())?;
            certified_quotient(&WitnessFamily::Qm { m, c: best.parameters["c"] }, p)
        }
    }
}

pub fn build_table(spec: &TableSpec) -> Result<Vec<Cell>> {
    if spec.degrees.is_empty() || spec.exponents.is_empty() || spec.methods.is_empty() {
        return Err(CliError::Domain("empty grid: m-range, p-list and methods must be non-empty".into()));
    }
    let mut cells = Vec::new();
    for &m in &spec.degrees {
        for ps in &spec.exponents {
            for &method in &spec.methods {
                let outcome = ps
                    .resolve(m)
                    .and_then(|p| compute(m, p, method, spec.epsilon, spec.cmult).map_err(|e| e.to_string()));
                cells.push(match outcome {
                    Ok(r) => Cell::Report(r),
                    Err(message) => Cell::OutOfDomain { m, p: ps.label(m), method, message },
                });
            }
        }
    }
    Ok(cells)
}

/// `k=v;k=v` with shortest round-trip float formatting.
pub fn render_params(params: &BTreeMap<String, f64>) -> String {
    params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

pub fn parse_params(s: &str) -> Result<BTreeMap<String, f64>> {
    s.split(';')
        .filter(|x| !x.is_empty())
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| CliError::Input(format!("bad parameter {kv:?}")))?;
            let v: f64 = v.parse().map_err(|_| CliError::Input(format!("bad parameter value {kv:?}")))?;
            Ok((k.to_string(), v))
        })
        .collect()
}

pub fn write_csv<W: Write>(cells: &[Cell], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_error)?;
    for cell in cells {
        let record = match cell {
            Cell::Report(r) => [
                r.m.to_string(),
                r.p.to_string(),
                r.method.to_string(),
                r.value.to_string(),
                r.certified.to_string(),
                render_params(&r.parameters),
            ],
            Cell::OutOfDomain { m, p, method, message } => [
                m.to_string(),
                p.clone(),
                method.to_string(),
                OUT_OF_DOMAIN.to_string(),
                false.to_string(),
                message.clone(),
            ],
        };
        w.write_record(&record).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv(text: &str) -> Result<Vec<Cell>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().map_err(csv_error)?;
    if header.iter().ne(CSV_HEADER) {
        return Err(CliError::Input(format!("unexpected CSV header {header:?}")));
    }
    let bad = |what: &str, v: &str| CliError::Input(format!("bad {what} {v:?}"));
    let mut cells = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let field = |i: usize| record.get(i).unwrap_or("");
        let m: u32 = field(0).parse().map_err(|_| bad("m", field(0)))?;
        let method: Method = field(2).parse().map_err(|_| bad("method", field(2)))?;
        if field(3) == OUT_OF_DOMAIN {
            cells.push(Cell::OutOfDomain { m, p: field(1).to_string(), method, message: field(5).to_string() });
            continue;
        }
        cells.push(Cell::Report(BoundReport {
            m,
            p: field(1).parse().map_err(|_| bad("p", field(1)))?,
            method,
            value: field(3).parse().map_err(|_| bad("value", field(3)))?,
            certified: field(4).parse().map_err(|_| bad("certified", field(4)))?,
            parameters: parse_params(field(5))?,
        }));
    }
    Ok(cells)
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Input(format!("csv: {e}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Status {
    Ok,
    OutOfDomain,
}

/// JSON row: every key is always present, `value` and `message` are null
/// when not applicable.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonRow {
    m: u32,
    p: String,
    method: Method,
    status: Status,
    value: Option<f64>,
    certified: bool,
    parameters: BTreeMap<String, f64>,
    message: Option<String>,
}

impl From<&Cell> for JsonRow {
    fn from(cell: &Cell) -> Self {
        match cell {
            Cell::Report(r) => Self {
                m: r.m,
                p: r.p.to_string(),
                method: r.method,
                status: Status::Ok,
                value: Some(r.value),
                certified: r.certified,
                parameters: r.parameters.clone(),
                message: None,
            },
            Cell::OutOfDomain { m, p, method, message } => Self {
                m: *m,
                p: p.clone(),
                method: *method,
                status: Status::OutOfDomain,
                value: None,
                certified: false,
                parameters: BTreeMap::new(),
                message: Some(message.clone()),
            },
        }
    }
}

pub fn to_json(cells: &[Cell]) -> Result<String> {
    let rows: Vec<JsonRow> = cells.iter().map(JsonRow::from).collect();
    serde_json::to_string_pretty(&rows).map_err(|e| CliError::Input(format!("json: {e}")))
}

pub fn from_json(text: &str) -> Result<Vec<Cell>> {
    let rows: Vec<JsonRow> = serde_json::from_str(text).map_err(|e| CliError::Input(format!("json: {e}")))?;
    rows.into_iter()
        .map(|row| match row.status {
            Status::OutOfDomain => Ok(Cell::OutOfDomain {
                m: row.m,
                p: row.p,
                method: row.method,
                message: row.message.unwrap_or_default(),
            }),
            Status::Ok => Ok(Cell::Report(BoundReport {
                m: row.m,
                p: row.p.parse().map_err(|_| CliError::Input(format!("bad p {:?}", row.p)))?,
                method: row.method,
                value: row.value.ok_or_else(|| CliError::Input("missing value".into()))?,
                certified: row.certified,
                parameters: row.parameters,
            })),
        })
        .collect()
}

pub fn write_text<W: Write>(cells: &[Cell], mut out: W) -> Result<()> {
    writeln!(out, "{:>4}  {:>8}  {:<14}  {:>12}  {:<13}  params", "m", "p", "method", "value", "certified")?;
    for cell in cells {
        match cell {
            Cell::Report(r) => writeln!(
                out,
                "{:>4}  {:>8}  {:<14}  {:>12.6}  {:<13}  {}",
                r.m,
                r.p.to_string(),
                r.method.as_str(),
                r.value,
                if r.certified { "certified" } else { "not-certified" },
                render_params(&r.parameters),
            )?,
            Cell::OutOfDomain { m, p, method, message } => writeln!(
                out,
                "{:>4}  {:>8}  {:<14}  {:>12}  {:<13}  {}",
                m,
                p,
                method.as_str(),
                OUT_OF_DOMAIN,
                "-",
                message,
            )?,
        }
    }
    Ok(())
}

/// `2^{m/p}` (even m) or `2^{(m−1)/p}` (odd m), for cross-checking rows.
pub fn main_formula(m: u32, p: Rational) -> f64 {
    let k = f64::from(m - m % 2);
    2f64.powf(k * *p.denom() as f64 / *p.numer() as f64)
}
