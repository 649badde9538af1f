//! Command-line front end. `main` only forwards to [`run`], so every
//! subcommand can be driven in-process by tests.
//!
//! Exit codes: 0 success, 1 invalid path or failed crosscheck, 2 usage or
//! parse error, 3 size cap exceeded. Data goes to `out`, diagnostics to
//! `err`.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::crosscheck::run_grid;
use crate::generation::{generate_general, generate_integer, generate_unit};
use crate::limits::{
    CapExceeded, CapKind, Limits, DEFAULT_ENUM_CAP, DEFAULT_STRING_CAP, DEFAULT_TABLE_CAP,
};
use crate::path::{humps_of, parse_path, DyckPath, Notation};
use crate::qstrings::{count_q_decreasing_dp, list_q_decreasing};
use crate::sequences::{seq_table_with_cap, Recurrence};
use crate::slope::{parse_slope, RationalSlope};
use crate::validity::first_violation;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Printed in place of the empty path or string in human-oriented output.
pub const EMPTY_MARKER: &str = "ε";

#[derive(Parser, Debug)]
#[command(
    name = "qdyck",
    version,
    about = "Dyck paths of height at most 2 counted by Q-bonacci numbers"
)]
struct Cli {
    /// Largest semilength enumerated exhaustively.
    #[arg(long, global = true, env = "QDYCK_ENUM_CAP", default_value_t = DEFAULT_ENUM_CAP)]
    enum_cap: usize,
    /// Largest index for sequence tables and counts.
    #[arg(long, global = true, env = "QDYCK_TABLE_CAP", default_value_t = DEFAULT_TABLE_CAP)]
    table_cap: usize,
    /// Largest string length enumerated exhaustively.
    #[arg(long, global = true, env = "QDYCK_STRING_CAP", default_value_t = DEFAULT_STRING_CAP)]
    string_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print |D_n^q|.
    Count {
        #[arg(long)]
        q: String,
        #[arg(long)]
        n: usize,
    },
    /// List the members of D_n^q in lexicographic order.
    List {
        #[arg(long)]
        q: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
    /// Decide whether a path belongs to D^q.
    Check {
        #[arg(long)]
        q: String,
        /// Path in U/D letters or parentheses; "" or "ε" for the empty path.
        path: String,
    },
    /// Tabulate the counting sequence for n = 0..=max-n.
    Table {
        #[arg(long)]
        q: String,
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
    /// Count or list the q-decreasing strings of length n.
    Strings {
        #[arg(long)]
        q: String,
        #[arg(long)]
        n: usize,
        #[arg(value_enum)]
        mode: StringsMode,
    },
    /// Differential checks of grammar, oracle, recurrences and strings.
    Crosscheck(CrosscheckArgs),
}

#[derive(Args, Debug)]
struct CrosscheckArgs {
    /// A single slope to check.
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    q: Option<String>,
    /// Every coprime r/s with r, s <= 5, plus the reduction identities.
    #[arg(long)]
    all: bool,
    /// Largest semilength for the set-level checks.
    #[arg(long, default_value_t = 14)]
    max_n: usize,
    /// Largest string length for the alignment checks.
    #[arg(long, default_value_t = 18)]
    counts_max_n: usize,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Plain,
    Csv,
    Jsonl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Jsonl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StringsMode {
    Count,
    List,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Cap(#[from] CapExceeded),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Serialize)]
struct PathRecord<'a> {
    n: usize,
    path: &'a str,
    humps: &'a [usize],
}

#[derive(Serialize)]
struct ValueRecord {
    n: usize,
    value: String,
}

/// Parses the arguments (program name first) and runs one command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let limits = Limits {
        enum_cap: cli.enum_cap,
        table_cap: cli.table_cap,
        string_cap: cli.string_cap,
    };
    match dispatch(cli.command, &limits, out, err) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Cap(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_CAP
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAIL
        }
    }
}

fn slope_arg(text: &str, err: &mut dyn Write) -> Result<RationalSlope, CliError> {
    let (slope, reduced) =
        parse_slope(text).map_err(|e| CliError::Usage(format!("--q {text}: {e}")))?;
    if reduced {
        writeln!(err, "note: --q {text} reduced to {slope}")?;
    }
    Ok(slope)
}

fn dispatch(
    command: Command,
    limits: &Limits,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    match command {
        Command::Count { q, n } => {
            let slope = slope_arg(&q, err)?;
            let table = seq_table_with_cap(Recurrence::for_slope(slope), n, limits.table_cap)?;
            writeln!(out, "{}", table.values()[n])?;
            Ok(EXIT_OK)
        }
        Command::List { q, n, format } => {
            let slope = slope_arg(&q, err)?;
            cmd_list(slope, n, format, limits, out)
        }
        Command::Check { q, path } => {
            let slope = slope_arg(&q, err)?;
            cmd_check(slope, &path, out)
        }
        Command::Table { q, max_n, format } => {
            let slope = slope_arg(&q, err)?;
            cmd_table(slope, max_n, format, limits, out)
        }
        Command::Strings { q, n, mode } => {
            let slope = slope_arg(&q, err)?;
            match mode {
                StringsMode::Count => {
                    CapExceeded::check(CapKind::Table, n, limits.table_cap)?;
                    writeln!(out, "{}", count_q_decreasing_dp(n, slope))?;
                }
                StringsMode::List => {
                    for bits in list_q_decreasing(n, slope, limits.string_cap)? {
                        let text = bits.to_string();
                        writeln!(
                            out,
                            "{}",
                            if text.is_empty() { EMPTY_MARKER } else { &text }
                        )?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Crosscheck(args) => cmd_crosscheck(args, limits, out, err),
    }
}

fn cmd_list(
    slope: RationalSlope,
    n: usize,
    format: OutputFormat,
    limits: &Limits,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    CapExceeded::check(CapKind::Enumeration, n, limits.enum_cap)?;
    let set = if slope.is_integer() {
        generate_integer(n, slope.r())
    } else if slope.r() == 1 {
        generate_unit(n, slope.s())
    } else {
        generate_general(n, slope)
    };
    if format == OutputFormat::Csv {
        writeln!(out, "n,path,humps")?;
    }
    for path in set.members() {
        let text = path.to_string();
        let humps = humps_of(path);
        match format {
            OutputFormat::Plain => writeln!(
                out,
                "{}",
                if text.is_empty() { EMPTY_MARKER } else { &text }
            )?,
            OutputFormat::Csv => {
                let joined: Vec<String> = humps.peaks().iter().map(|p| p.to_string()).collect();
                writeln!(out, "{n},{text},{}", joined.join(";"))?
            }
            OutputFormat::Jsonl => {
                let record = PathRecord {
                    n,
                    path: &text,
                    humps: humps.peaks(),
                };
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&record).expect("record serializes")
                )?
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_check(slope: RationalSlope, text: &str, out: &mut dyn Write) -> Result<i32, CliError> {
    let path = if text == EMPTY_MARKER {
        DyckPath::empty()
    } else {
        parse_path(text, Notation::detect(text))
            .map_err(|e| CliError::Usage(format!("cannot parse path {text:?}: {e}")))?
    };
    match first_violation(&humps_of(&path), slope) {
        None => {
            writeln!(out, "valid")?;
            Ok(EXIT_OK)
        }
        Some(v) => {
            writeln!(out, "invalid: {v}")?;
            Ok(EXIT_FAIL)
        }
    }
}

fn cmd_table(
    slope: RationalSlope,
    max_n: usize,
    format: OutputFormat,
    limits: &Limits,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let recurrence = Recurrence::for_slope(slope);
    let table = seq_table_with_cap(recurrence, max_n, limits.table_cap)?;
    // one buffered write; values can run to thousands of digits
    let mut buf = String::new();
    if format == OutputFormat::Csv {
        buf.push_str(&format!("n,{}\n", recurrence.symbol()));
    }
    for (n, value) in table.values().iter().enumerate() {
        match format {
            OutputFormat::Plain => buf.push_str(&format!("{n} {value}\n")),
            OutputFormat::Csv => buf.push_str(&format!("{n},{value}\n")),
            OutputFormat::Jsonl => {
                let record = ValueRecord {
                    n,
                    value: value.to_string(),
                };
                buf.push_str(&serde_json::to_string(&record).expect("record serializes"));
                buf.push('\n');
            }
        }
    }
    out.write_all(buf.as_bytes())?;
    Ok(EXIT_OK)
}

fn cmd_crosscheck(
    args: CrosscheckArgs,
    limits: &Limits,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let slopes = match &args.q {
        Some(q) if !args.all => vec![slope_arg(q, err)?],
        _ => RationalSlope::grid(5, 5),
    };
    let report = run_grid(&slopes, args.max_n, args.counts_max_n, args.all, limits)?;
    let rendered = match args.format {
        ReportFormat::Text => report.render_text(),
        ReportFormat::Jsonl => report.render_jsonl(),
    };
    out.write_all(rendered.as_bytes())?;
    if report.passed() {
        Ok(EXIT_OK)
    } else {
        writeln!(
            err,
            "crosscheck failed with {} counterexamples",
            report.counterexamples().len()
        )?;
        Ok(EXIT_FAIL)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("qdyck").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn count_reduces_fraction_with_notice() {
        let (code, out, err) = call(&["count", "--q", "8/10", "--n", "4"]);
        assert_eq!((code, out.as_str()), (0, "5\n"));
        assert!(err.contains("reduced to 4/5"));
    }

    #[test]
    fn list_empty_path_marker() {
        let (code, out, _) = call(&["list", "--q", "1", "--n", "0"]);
        assert_eq!((code, out.as_str()), (0, "ε\n"));
        let (_, out, _) = call(&["list", "--q", "1", "--n", "0", "--format", "jsonl"]);
        assert_eq!(out, "{\"n\":0,\"path\":\"\",\"humps\":[]}\n");
    }

    #[test]
    fn check_reports_rule() {
        let (code, out, _) = call(&["check", "--q", "4/5", "UUDUDDUDUD"]);
        assert_eq!(code, 1);
        assert_eq!(
            out,
            "invalid: block 1: p=2 needs v>=3 consecutive 0-valleys, observed 2\n"
        );
        let (code, _, err) = call(&["check", "--q", "4/5", "UUUDDD"]);
        assert_eq!(code, 2);
        assert!(err.contains("index 2"));
        let (code, out, _) = call(&["check", "--q", "2", "ε"]);
        assert_eq!((code, out.as_str()), (0, "valid\n"));
    }

    #[test]
    fn bad_arguments_are_usage_errors() {
        assert_eq!(call(&["count", "--q", "0/1", "--n", "3"]).0, 2);
        assert_eq!(call(&["count", "--q", "x", "--n", "3"]).0, 2);
        assert_eq!(call(&["count", "--q", "1", "--n", "-3"]).0, 2);
        assert_eq!(call(&["crosscheck", "--max-n", "3"]).0, 2);
        assert_eq!(call(&["crosscheck", "--q", "1", "--all"]).0, 2);
        assert_eq!(call(&["bogus"]).0, 2);
    }

    #[test]
    fn caps_map_to_exit_three() {
        assert_eq!(call(&["list", "--q", "1", "--n", "30"]).0, 3);
        assert_eq!(
            call(&["--enum-cap", "4", "list", "--q", "1", "--n", "5"]).0,
            3
        );
        assert_eq!(
            call(&["--table-cap", "10", "table", "--q", "1", "--max-n", "11"]).0,
            3
        );
        assert_eq!(call(&["strings", "--q", "1", "--n", "40", "list"]).0, 3);
    }
}
