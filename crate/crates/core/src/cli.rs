//! Command-line front end.
//!
//! Rendering is kept separate from the binary so the whole command surface
//! can be driven from tests: [`run_args`] takes an argument list and returns
//! the exit status together with everything that would be printed.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand as ClapSubcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::fixedpoints::{
    cp_standard_action, document_value, parse_fixed_point_data, FixedPointData, LinearAction,
};
use crate::index::{
    cross_validate, spin_obstruction_check, verify_vanishing, CrossValidation, ObstructionReport,
    VanishingReport,
};

pub const EXIT_OK: i32 = 0;
/// `cross-validate` found signals that disagree.
pub const EXIT_DISAGREEMENT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
/// The input document could not be read or failed validation.
pub const EXIT_INVALID_INPUT: i32 = 3;

/// Largest truncation order the CLI will allocate a series for.
pub const MAX_ORDER: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subcommand {
    Weights,
    Series,
    Check,
    CrossValidate,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Structured,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandConfig {
    pub subcommand: Subcommand,
    pub n: Option<u64>,
    pub exponents: Option<Vec<i64>>,
    pub order: Option<usize>,
    pub input_path: Option<PathBuf>,
    pub output_format: OutputFormat,
    pub dense: bool,
}

impl CommandConfig {
    pub fn new(subcommand: Subcommand) -> Self {
        CommandConfig {
            subcommand,
            n: None,
            exponents: None,
            order: None,
            input_path: None,
            output_format: OutputFormat::Table,
            dense: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            status: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(status: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            status,
            stdout: String::new(),
            stderr,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "ahat",
    version,
    about = "Equivariant A-hat localization and the weight-sum spin obstruction for circle actions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(ClapSubcommand, Debug)]
enum Command {
    /// Print the fixed points with their signs, weights and weight sums
    Weights(DataArgs),
    /// Print the localization series in s (s^k stands for t^(k/2))
    Series(DataArgs),
    /// Run the weight-sum obstruction check
    Check(DataArgs),
    /// Compare parity, series vanishing and the obstruction on CP^n
    CrossValidate(DataArgs),
}

#[derive(Args, Debug)]
struct DataArgs {
    /// Standard action on CP^n
    #[arg(long)]
    n: Option<u64>,
    /// Linear action exponents a0,a1,...
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    exponents: Option<Vec<i64>>,
    /// Fixed-point data document (JSON)
    #[arg(long)]
    input: Option<PathBuf>,
    /// Truncation order in s [default: 2 * max weight sum + 1]
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    /// Print every coefficient, including zeros
    #[arg(long)]
    dense: bool,
}

impl From<Cli> for CommandConfig {
    fn from(cli: Cli) -> Self {
        let (subcommand, a) = match cli.command {
            Command::Weights(a) => (Subcommand::Weights, a),
            Command::Series(a) => (Subcommand::Series, a),
            Command::Check(a) => (Subcommand::Check, a),
            Command::CrossValidate(a) => (Subcommand::CrossValidate, a),
        };
        CommandConfig {
            subcommand,
            n: a.n,
            exponents: a.exponents,
            order: a.order,
            input_path: a.input,
            output_format: a.format,
            dense: a.dense,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&CommandConfig::from(cli)),
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if status == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome::fail(status, text)
            }
        }
    }
}

struct Source {
    data: FixedPointData,
    description: String,
}

fn load_source(config: &CommandConfig) -> Result<Source, Outcome> {
    let given = [
        config.n.is_some(),
        config.exponents.is_some(),
        config.input_path.is_some(),
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if given != 1 {
        return Err(Outcome::fail(
            EXIT_USAGE,
            "error: exactly one of --n, --exponents, --input must be given",
        ));
    }
    let usage = |e: crate::Error| Outcome::fail(EXIT_USAGE, format!("error: {e}"));
    if let Some(n) = config.n {
        let data = cp_standard_action(n)
            .and_then(|a| a.fixed_point_data())
            .map_err(usage)?;
        return Ok(Source {
            data,
            description: format!("standard action on CP^{n}"),
        });
    }
    if let Some(exps) = &config.exponents {
        let data = LinearAction::new(exps.clone())
            .and_then(|a| a.fixed_point_data())
            .map_err(usage)?;
        let list: Vec<String> = exps.iter().map(i64::to_string).collect();
        return Ok(Source {
            data,
            description: format!(
                "linear action with exponents ({}) on CP^{}",
                list.join(","),
                exps.len() - 1
            ),
        });
    }
    let path = config.input_path.as_ref().expect("one source is set");
    let text = std::fs::read_to_string(path).map_err(|e| {
        Outcome::fail(
            EXIT_INVALID_INPUT,
            format!("error: cannot read {}: {e}", path.display()),
        )
    })?;
    let data = parse_fixed_point_data(&text).map_err(|e| {
        Outcome::fail(
            EXIT_INVALID_INPUT,
            format!("error: {}: {e}", path.display()),
        )
    })?;
    Ok(Source {
        data,
        description: format!("data from {}", path.display()),
    })
}

/// Twice the largest weight sum, plus one.
pub fn default_order(data: &FixedPointData) -> usize {
    usize::try_from(data.max_weight_sum())
        .ok()
        .and_then(|m| m.checked_mul(2))
        .and_then(|m| m.checked_add(1))
        .unwrap_or(usize::MAX)
}

pub fn run(config: &CommandConfig) -> Outcome {
    if config.subcommand == Subcommand::CrossValidate {
        return run_cross_validate(config);
    }
    let source = match load_source(config) {
        Ok(s) => s,
        Err(out) => return out,
    };
    let order = config.order.unwrap_or_else(|| default_order(&source.data));
    if order > MAX_ORDER {
        return order_too_large(order);
    }
    let structured = config.output_format == OutputFormat::Structured;
    let stdout = match config.subcommand {
        Subcommand::Weights if structured => pretty(&document_value(&source.data)),
        Subcommand::Weights => weights_table(&source),
        Subcommand::Series => {
            let report = verify_vanishing(&source.data, order);
            if structured {
                let mut v = document_value(&source.data);
                extend(&mut v, series_fields(&report));
                pretty(&v)
            } else {
                series_table(&source, &report, config.dense)
            }
        }
        Subcommand::Check => {
            let report = spin_obstruction_check(&source.data);
            let series = verify_vanishing(&source.data, order);
            if structured {
                let mut v = document_value(&source.data);
                extend(&mut v, obstruction_fields(&report));
                extend(&mut v, series_fields(&series));
                pretty(&v)
            } else {
                check_table(&source, &report, &series)
            }
        }
        Subcommand::CrossValidate => unreachable!(),
    };
    Outcome::ok(stdout)
}

fn run_cross_validate(config: &CommandConfig) -> Outcome {
    let n = match (config.n, &config.exponents, &config.input_path) {
        (Some(n), None, None) => n,
        _ => {
            return Outcome::fail(
                EXIT_USAGE,
                "error: cross-validate works on the standard action and takes only --n",
            )
        }
    };
    let order = match config.order {
        Some(o) => o,
        None => match cp_standard_action(n).and_then(|a| a.fixed_point_data()) {
            Ok(d) => default_order(&d),
            Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: {e}")),
        },
    };
    if order > MAX_ORDER {
        return order_too_large(order);
    }
    let report = match cross_validate(n, order) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: {e}")),
    };
    let stdout = match config.output_format {
        OutputFormat::Structured => pretty(&cross_validation_value(&report)),
        OutputFormat::Table => cross_validation_table(&report),
    };
    Outcome {
        status: if report.is_consistent() {
            EXIT_OK
        } else {
            EXIT_DISAGREEMENT
        },
        stdout,
        stderr: String::new(),
    }
}

fn order_too_large(order: usize) -> Outcome {
    Outcome::fail(
        EXIT_USAGE,
        format!("error: order {order} exceeds the limit {MAX_ORDER}; pass a smaller --order"),
    )
}

// ----- structured rendering -----

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn extend(target: &mut Value, fields: Map<String, Value>) {
    target
        .as_object_mut()
        .expect("documents are JSON objects")
        .extend(fields);
}

fn opt_str<T: ToString>(v: Option<T>) -> Value {
    v.map_or(Value::Null, |x| Value::String(x.to_string()))
}

fn lowest_term_value(r: &VanishingReport) -> Value {
    match &r.lowest_term {
        Some((k, c)) => json!({ "exponent": k.to_string(), "coefficient": c.to_string() }),
        None => Value::Null,
    }
}

fn series_fields(r: &VanishingReport) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("order".into(), r.order.to_string().into());
    m.insert("is_zero".into(), r.is_zero.into());
    m.insert("lowest_term".into(), lowest_term_value(r));
    m.insert(
        "coefficients".into(),
        r.series
            .coeffs()
            .iter()
            .map(|c| Value::String(c.to_string()))
            .collect(),
    );
    m
}

fn obstruction_fields(r: &ObstructionReport) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("verdict".into(), r.verdict.as_str().into());
    m.insert("witness".into(), opt_str(r.witness.as_deref()));
    m.insert("min_sum_plus".into(), opt_str(r.min_sum_plus));
    m.insert("min_sum_minus".into(), opt_str(r.min_sum_minus));
    m.insert("detail".into(), r.detail.clone().into());
    m
}

fn cross_validation_value(r: &CrossValidation) -> Value {
    json!({
        "n": r.n.to_string(),
        "order": r.order.to_string(),
        "parity_spin": r.parity_spin,
        "series_is_zero": r.vanishing.is_zero,
        "lowest_term": lowest_term_value(&r.vanishing),
        "verdict": r.obstruction.verdict.as_str(),
        "witness": opt_str(r.obstruction.witness.as_deref()),
        "notes": r.notes,
        "disagreements": r.disagreements,
        "consistent": r.is_consistent(),
    })
}

// ----- table rendering -----

fn weights_table(src: &Source) -> String {
    let rows: Vec<[String; 4]> = src
        .data
        .points()
        .iter()
        .map(|p| {
            let ws: Vec<String> = p.weights().iter().map(u64::to_string).collect();
            [
                p.label().to_owned(),
                p.sign().to_string(),
                format!("[{}]", ws.join(", ")),
                p.weight_sum().to_string(),
            ]
        })
        .collect();
    let header = ["label", "sign", "weights", "sum"];
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = format!(
        "# {}: {} fixed points, half_dim {}\n",
        src.description,
        src.data.points().len(),
        src.data.half_dim()
    );
    let mut line = |cells: [&str; 4]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(header);
    for row in &rows {
        line([&row[0], &row[1], &row[2], &row[3]]);
    }
    out
}

fn series_table(src: &Source, r: &VanishingReport, dense: bool) -> String {
    let mut out = format!(
        "# equivariant A-hat series for {}, order {} (s^k stands for t^(k/2))\n",
        src.description, r.order
    );
    if dense {
        for (k, c) in r.series.coeffs().iter().enumerate() {
            let _ = writeln!(out, "s^{k}\t{c}");
        }
    } else if r.is_zero {
        let _ = writeln!(out, "all coefficients vanish up to order {}", r.order);
    } else {
        for (k, c) in r.series.terms() {
            let _ = writeln!(out, "s^{k}\t{c}");
        }
    }
    out
}

fn lowest_term_line(r: &VanishingReport) -> String {
    match &r.lowest_term {
        Some((k, c)) => format!("{c}*s^{k}"),
        None => format!("none (series vanishes up to order {})", r.order),
    }
}

fn check_table(src: &Source, r: &ObstructionReport, series: &VanishingReport) -> String {
    let mut out = format!("# weight-sum obstruction for {}\n", src.description);
    let _ = writeln!(out, "verdict: {}", r.verdict);
    let _ = writeln!(out, "witness: {}", r.witness.as_deref().unwrap_or("none"));
    let _ = writeln!(out, "min_sum_plus: {}", opt_display(r.min_sum_plus));
    let _ = writeln!(out, "min_sum_minus: {}", opt_display(r.min_sum_minus));
    let _ = writeln!(out, "lowest_term: {}", lowest_term_line(series));
    let _ = writeln!(out, "detail: {}", r.detail);
    out
}

fn opt_display(v: Option<u64>) -> String {
    v.map_or_else(|| "none".to_owned(), |x| x.to_string())
}

fn cross_validation_table(r: &CrossValidation) -> String {
    let mut out = format!("# cross-validation for CP^{}, order {}\n", r.n, r.order);
    let _ = writeln!(
        out,
        "parity: CP^{} is {}",
        r.n,
        if r.parity_spin { "spin" } else { "not spin" }
    );
    let _ = writeln!(
        out,
        "series: {}",
        if r.vanishing.is_zero {
            format!("zero up to order {}", r.order)
        } else {
            format!("nonzero, lowest term {}", lowest_term_line(&r.vanishing))
        }
    );
    let _ = writeln!(
        out,
        "obstruction: {}{}",
        r.obstruction.verdict,
        r.obstruction
            .witness
            .as_deref()
            .map(|w| format!(" (witness {w})"))
            .unwrap_or_default()
    );
    for note in &r.notes {
        let _ = writeln!(out, "note: {note}");
    }
    for d in &r.disagreements {
        let _ = writeln!(out, "DISAGREEMENT: {d}");
    }
    let _ = writeln!(
        out,
        "result: {}",
        if r.is_consistent() {
            "consistent"
        } else {
            "inconsistent"
        }
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_line(line: &str) -> Outcome {
        run_args(std::iter::once("ahat").chain(line.split_whitespace()))
    }

    #[test]
    fn check_cp4() {
        let out = run_line("check --n 4");
        assert_eq!(out.status, EXIT_OK);
        assert!(out.stdout.contains("verdict: NOT_SPIN"));
        assert!(out.stdout.contains("witness: p_2"));
        assert!(out.stdout.contains("min_sum_plus: 6"));
    }

    #[test]
    fn series_cp3_vanishes() {
        let out = run_line("series --n 3 --order 60");
        assert_eq!(out.status, EXIT_OK);
        assert!(out
            .stdout
            .contains("all coefficients vanish up to order 60"));
        let dense = run_line("series --n 3 --order 4 --dense");
        assert_eq!(
            dense.stdout.lines().filter(|l| l.ends_with("\t0")).count(),
            5
        );
    }

    #[test]
    fn weights_cp2_table() {
        let out = run_line("weights --n 2");
        let rows: Vec<Vec<&str>> = out
            .stdout
            .lines()
            .skip(2)
            .map(|l| {
                l.split("  ")
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .collect()
            })
            .collect();
        assert_eq!(
            rows,
            vec![
                vec!["p_0", "+", "[1, 2]", "3"],
                vec!["p_1", "-", "[1, 1]", "2"],
                vec!["p_2", "+", "[1, 2]", "3"],
            ]
        );
    }

    #[test]
    fn source_must_be_unique() {
        assert_eq!(run_line("weights").status, EXIT_USAGE);
        assert_eq!(run_line("weights --n 2 --exponents 0,1").status, EXIT_USAGE);
        assert_eq!(run_line("weights --exponents 0,1,0").status, EXIT_USAGE);
        assert_eq!(run_line("weights --n 0").status, EXIT_USAGE);
        assert_eq!(run_line("series --n 2 --order -1").status, EXIT_USAGE);
        assert_eq!(run_line("frobnicate").status, EXIT_USAGE);
        assert_eq!(run_line("series --n 2 --order 99999999").status, EXIT_USAGE);
        assert_eq!(
            run_line("series --exponents 0,4611686018427387904").status,
            EXIT_USAGE
        );
        assert_eq!(
            run_line("cross-validate --exponents 0,1").status,
            EXIT_USAGE
        );
        assert_eq!(run_line("--help").status, EXIT_OK);
    }

    #[test]
    fn negative_exponents_parse() {
        let out = run_line("weights --exponents -1,0,2");
        assert_eq!(out.status, EXIT_OK, "{}", out.stderr);
        assert!(out.stdout.contains("exponents (-1,0,2)"));
    }

    #[test]
    fn default_order_is_twice_max_sum_plus_one() {
        let out = run_line("series --n 2 --format structured");
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["order"], "7");
        assert_eq!(v["coefficients"].as_array().unwrap().len(), 8);
    }

    #[test]
    fn cross_validate_statuses() {
        let out = run_line("cross-validate --n 2 --order 20");
        assert_eq!(out.status, EXIT_OK);
        assert!(out.stdout.contains("result: consistent"));
        assert_eq!(run_line("cross-validate --n 3 --order 60").status, EXIT_OK);
    }

    #[test]
    fn missing_input_file() {
        let out = run_line("check --input /nonexistent/ahat.json");
        assert_eq!(out.status, EXIT_INVALID_INPUT);
        assert!(out.stderr.contains("cannot read"));
    }
}
