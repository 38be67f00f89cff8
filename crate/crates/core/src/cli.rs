//! Command-line jobs and the invariant-table file format.
//!
//! A table file is a JSON document
//!
//! ```json
//! {
//!   "class": { "c1_dot_beta": 4, "primitive": true },
//!   "kind": "gw",
//!   "g_max": 2,
//!   "values": { "0": "1/1", "1": "-1/12", "2": "1/360" }
//! }
//! ```
//!
//! Values are exact rationals written as strings. Genera at or below `g_max`
//! may be omitted (they read as zero) only for forward transforms; every
//! job that inverts the sine-power transform needs all of them.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::gv::{check_gv_table, gv_from_gw, gw_from_gv, GvError, GvReport};
use crate::hodge::{mu_g0, mu_g1, verify_i_ratio, verify_mu_truncation};
use crate::hodge::{DEFAULT_DEGREE_CAP, DEFAULT_Z_DEPTH};
use crate::rat::{format_rat, parse_rat};
use crate::report::CheckReport;
use crate::wallcross::{
    gw_from_ugw, sine_factor, ugw_from_gw, verify_eq_sum_grid, verify_raw_equals_closed,
    GenusTable, Kind, WallcrossError,
};

/// Series order used by jobs that have no table to derive one from.
pub const DEFAULT_ORDER: i64 = 12;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot parse input: {0}")]
    Parse(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Gv(#[from] GvError),
    #[error(transparent)]
    Table(#[from] WallcrossError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Transform,
    CheckIntegrality,
    VerifyIdentities,
    Mu,
    ExpandSine { g: i64, c: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    GwToUgw,
    UgwToGw,
    GwToGv,
    GvToGw,
}

impl Direction {
    fn source_kind(self) -> Kind {
        match self {
            Direction::GwToUgw | Direction::GwToGv => Kind::Gw,
            Direction::UgwToGw => Kind::Ugw,
            Direction::GvToGw => Kind::Gv,
        }
    }

    fn inverts(self) -> bool {
        matches!(self, Direction::GwToUgw | Direction::GwToGv)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobConfig {
    pub command: Command,
    pub input_path: Option<PathBuf>,
    pub direction: Option<Direction>,
    /// Series truncation order in `u`; `None` picks `2 g_max + 2` for table
    /// jobs and [`DEFAULT_ORDER`] otherwise.
    pub order: Option<i64>,
    pub output_format: OutputFormat,
}

impl JobConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            input_path: None,
            direction: None,
            order: None,
            output_format: OutputFormat::Json,
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        if let Some(order) = self.order.filter(|o| *o < 0) {
            return Err(CliError::Usage(format!("order must be >= 0, got {order}")));
        }
        match (self.command, self.direction) {
            (Command::Transform, None) => {
                Err(CliError::Usage("transform needs --direction".into()))
            }
            (Command::Transform, Some(_)) => Ok(()),
            (_, Some(_)) => Err(CliError::Usage(
                "--direction only applies to transform".into(),
            )),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    CheckFailed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub report: String,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::CheckFailed => 1,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassInfo {
    c1_dot_beta: i64,
    primitive: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    class: ClassInfo,
    kind: Kind,
    g_max: u32,
    values: BTreeMap<String, String>,
}

/// Parses a table file. With `complete`, every genus `0..=g_max` must be present.
pub fn parse_table(text: &str, complete: bool) -> Result<GenusTable, CliError> {
    let file: TableFile =
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let mut values = BTreeMap::new();
    for (key, value) in &file.values {
        let genus: u32 = key
            .parse()
            .map_err(|_| CliError::Parse(format!("genus key {key:?} is not a non-negative integer")))?;
        let r = parse_rat(value).map_err(|e| CliError::Parse(e.to_string()))?;
        if values.insert(genus, r).is_some() {
            return Err(CliError::Parse(format!("genus {genus} appears twice")));
        }
    }
    if complete {
        if let Some(g) = (0..=file.g_max).find(|g| !values.contains_key(g)) {
            return Err(CliError::Parse(format!(
                "genus {g} is missing; inverse transforms need every genus up to g_max"
            )));
        }
    }
    GenusTable::new(
        file.kind,
        file.class.c1_dot_beta,
        file.class.primitive,
        file.g_max,
        values,
    )
    .map_err(|e| CliError::Parse(e.to_string()))
}

fn table_value(t: &GenusTable) -> Value {
    let values: BTreeMap<u32, String> = (0..=t.g_max())
        .map(|g| (g, format_rat(&t.value_or_zero(g))))
        .collect();
    json!({
        "class": { "c1_dot_beta": t.c(), "primitive": t.primitive() },
        "kind": t.kind(),
        "g_max": t.g_max(),
        "values": values,
    })
}

/// Canonical serialization: every genus up to `g_max` written out, keys in
/// numeric order, two-space indentation, trailing newline.
pub fn serialize_table(t: &GenusTable) -> String {
    let mut s = serde_json::to_string_pretty(&table_value(t)).expect("json values serialize");
    s.push('\n');
    s
}

fn table_text(t: &GenusTable) -> String {
    let mut out = format!(
        "{} invariants, beta.c1 = {}, primitive = {}, g_max = {}\n",
        t.kind(),
        t.c(),
        t.primitive(),
        t.g_max()
    );
    for g in 0..=t.g_max() {
        let _ = writeln!(out, "  g = {g}: {}", format_rat(&t.value_or_zero(g)));
    }
    out
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// Keeps genera with `2g < order`.
fn clip_to_order(t: GenusTable, order: Option<i64>) -> Result<GenusTable, CliError> {
    let Some(order) = order else { return Ok(t) };
    if order < 1 {
        return Err(CliError::Usage("order must be at least 1 for table jobs".into()));
    }
    let g_max = t.g_max().min(((order - 1) / 2) as u32);
    let values = t.values().range(..=g_max).map(|(g, v)| (*g, v.clone())).collect();
    Ok(GenusTable::new(t.kind(), t.c(), t.primitive(), g_max, values)?)
}

fn read_input(config: &JobConfig, complete: bool) -> Result<GenusTable, CliError> {
    let path = config
        .input_path
        .as_ref()
        .ok_or_else(|| CliError::Usage("this command needs --input".into()))?;
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    let table = parse_table(&text, complete)?;
    clip_to_order(table, config.order)
}

pub fn run(config: &JobConfig) -> Result<Outcome, CliError> {
    config.validate()?;
    match config.command {
        Command::Transform => transform(config),
        Command::CheckIntegrality => check_integrality(config),
        Command::VerifyIdentities => verify_identities(config),
        Command::Mu => mu(config),
        Command::ExpandSine { g, c } => expand_sine(config, g, c),
    }
}

fn transform(config: &JobConfig) -> Result<Outcome, CliError> {
    let direction = config.direction.expect("validated");
    let input = read_input(config, direction.inverts())?;
    if input.kind() != direction.source_kind() {
        return Err(WallcrossError::WrongKind {
            expected: direction.source_kind(),
            found: input.kind(),
        }
        .into());
    }
    let output = match direction {
        Direction::GwToUgw => ugw_from_gw(&input)?,
        Direction::UgwToGw => gw_from_ugw(&input)?,
        Direction::GwToGv => gv_from_gw(&input)?.table,
        Direction::GvToGw => gw_from_gv(&input)?,
    };
    let report = match config.output_format {
        OutputFormat::Json => serialize_table(&output),
        OutputFormat::Text => table_text(&output),
    };
    Ok(Outcome {
        status: Status::Ok,
        report,
    })
}

fn gv_report_value(r: &GvReport) -> Value {
    json!({
        "table": table_value(&r.table),
        "integral": r.integral,
        "non_integral_genera": r.non_integral_genera,
        "largest_nonzero_genus": r.largest_nonzero_genus,
        "truncation_caveat": r.truncation_caveat,
    })
}

fn check_integrality(config: &JobConfig) -> Result<Outcome, CliError> {
    let input = read_input(config, true)?;
    let report = match input.kind() {
        Kind::Gw => gv_from_gw(&input)?,
        Kind::Ugw | Kind::Gv => check_gv_table(&input)?,
    };
    let text = match config.output_format {
        OutputFormat::Json => to_json(&gv_report_value(&report)),
        OutputFormat::Text => {
            let mut out = table_text(&report.table);
            if report.integral {
                out.push_str("integrality: PASS\n");
            } else {
                let _ = writeln!(
                    out,
                    "integrality: FAIL at genera {:?}",
                    report.non_integral_genera
                );
            }
            match report.largest_nonzero_genus {
                Some(g) => {
                    let _ = writeln!(out, "largest non-zero genus: {g}");
                }
                None => out.push_str("largest non-zero genus: none\n"),
            }
            let _ = writeln!(out, "note: {}", report.truncation_caveat);
            out
        }
    };
    Ok(Outcome {
        status: if report.integral {
            Status::Ok
        } else {
            Status::CheckFailed
        },
        report: text,
    })
}

/// All internal identity checks at series order `order`.
pub fn identity_checks(order: i64) -> Vec<CheckReport> {
    let max_exponent = (order - 1).max(0);
    vec![
        verify_raw_equals_closed(3, 4, -2..=6, order),
        verify_eq_sum_grid(-6..=0, -6..=12, order),
        verify_mu_truncation(max_exponent, DEFAULT_Z_DEPTH, DEFAULT_DEGREE_CAP),
        verify_i_ratio(max_exponent),
    ]
}

fn verify_identities(config: &JobConfig) -> Result<Outcome, CliError> {
    let order = config.order.unwrap_or(DEFAULT_ORDER);
    let checks = identity_checks(order);
    let passed = checks.iter().all(CheckReport::passed);
    let report = match config.output_format {
        OutputFormat::Json => to_json(&json!({ "order": order, "passed": passed, "checks": checks })),
        OutputFormat::Text => checks.iter().map(|c| format!("{c}\n")).collect(),
    };
    Ok(Outcome {
        status: if passed { Status::Ok } else { Status::CheckFailed },
        report,
    })
}

fn mu(config: &JobConfig) -> Result<Outcome, CliError> {
    let order = config.order.unwrap_or(DEFAULT_ORDER);
    let g_max = ((order - 1).max(0) / 2) as u32;
    let rows: Vec<(u32, _, _)> = (1..=g_max).map(|g| (g, mu_g0(g), mu_g1(g))).collect();
    let report = match config.output_format {
        OutputFormat::Json => {
            let entries: Vec<Value> = rows
                .iter()
                .map(|(g, m0, m1)| json!({ "genus": g, "mu_g0": m0, "mu_g1": format_rat(m1) }))
                .collect();
            to_json(&json!({ "mu": entries }))
        }
        OutputFormat::Text => rows
            .iter()
            .map(|(g, m0, m1)| format!("g = {g}: mu_g0 = {m0}; mu_g1 = {}\n", format_rat(m1)))
            .collect(),
    };
    Ok(Outcome {
        status: Status::Ok,
        report,
    })
}

fn expand_sine(config: &JobConfig, g: i64, c: i64) -> Result<Outcome, CliError> {
    let order = config.order.unwrap_or(DEFAULT_ORDER);
    let series = sine_factor(g, c, order);
    let report = match config.output_format {
        OutputFormat::Json => {
            let coefficients: BTreeMap<i64, String> = (0..order)
                .step_by(2)
                .map(|e| (e, format_rat(&series.coeff(e).unwrap())))
                .collect();
            to_json(&json!({
                "g": g,
                "c": c,
                "exponent": 2 * g - 2 + c,
                "order": order,
                "coefficients": coefficients,
            }))
        }
        OutputFormat::Text => format!("{series}\n"),
    };
    Ok(Outcome {
        status: Status::Ok,
        report,
    })
}
