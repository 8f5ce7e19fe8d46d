//! The `regmat` command line.
//!
//! Data goes to the output stream; diagnostics and errors go to the error
//! stream. Exit codes: 0 success, 1 a verification or cross-check failed,
//! 2 bad arguments.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::bitcore::{k_subset_masks, to_binary_string};
use crate::enumerate::{
    count_canonical, count_canonical_pruned_with, predicted_baseline_visits,
    stream_representatives_while, EnumerationReport, SearchOptions,
};
use crate::error::Error;
use crate::formulas::{applicable_routes, BigCount, Route};
use crate::matrix::RowTuple;
use crate::oracle::{self, MAX_ORACLE_N};

/// Predicted baseline visits above which `--force` is required.
pub const BASELINE_VISIT_LIMIT: u64 = 1_000_000_000;

#[derive(Debug, Parser)]
#[command(name = "regmat", version, about = "Count and list k-regular binary matrices up to row/column permutation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Jsonl,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountMethod {
    Baseline,
    Pruned,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LambdaMethod {
    Auto,
    Partition,
    Anand,
    GoodCrook,
    Pi,
    Explicit,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print every n-bit mask with exactly k ones, ascending.
    Masks {
        n: u32,
        k: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Count canonical matrices.
    Count {
        n: u32,
        k: u32,
        #[arg(long, value_enum, default_value_t = CountMethod::Pruned)]
        method: CountMethod,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        jobs: u32,
        /// Run the baseline even when it is predicted to be very slow.
        #[arg(long)]
        force: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List canonical matrices in lexicographic order.
    List {
        n: u32,
        k: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Evaluate the known formulas for the number of k-regular matrices.
    Lambda {
        n: u32,
        k: u32,
        #[arg(long, value_enum, default_value_t = LambdaMethod::Auto)]
        method: LambdaMethod,
    },
    /// Check counts and canonical forms against brute force (n <= 6).
    Verify {
        n: u32,
        k: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Table of canonical counts for 1 <= k < n <= max-n.
    Table {
        #[arg(long, default_value_t = 7)]
        max_n: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        jobs: u32,
    },
}

/// One canonical matrix as emitted by `list`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub n: u32,
    pub k: u32,
    pub rows: Vec<u64>,
    pub cols: Vec<u64>,
    /// 1-based emission order.
    pub index: u64,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Check(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::TooLarge(_) => Failure::Usage(e.to_string()),
            Error::Internal(_) | Error::Mismatch(_) => Failure::Check(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
        }
    };
    let result = match cli.command {
        Command::Masks { n, k, format } => cmd_masks(n, k, format, out),
        Command::Count {
            n,
            k,
            method,
            jobs,
            force,
            format,
        } => cmd_count(n, k, method, jobs as usize, force, format, out, err),
        Command::List { n, k, format, limit } => cmd_list(n, k, format, limit, out),
        Command::Lambda { n, k, method } => cmd_lambda(n, k, method, out, err),
        Command::Verify { n, k, format } => cmd_verify(n, k, format, out),
        Command::Table { max_n, format, jobs } => cmd_table(max_n, format, jobs as usize, out),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            let _ = writeln!(err, "see `regmat --help` for usage");
            2
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "check failed: {msg}");
            1
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn require_format(format: Format, allowed: &[Format], command: &str) -> CmdResult {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "{command} does not support --format {}",
            format.to_possible_value().expect("no skipped variants").get_name()
        )))
    }
}

fn cmd_masks(n: u32, k: u32, format: Format, out: &mut dyn Write) -> CmdResult {
    require_format(format, &[Format::Text, Format::Json], "masks")?;
    let pool = k_subset_masks(n, k)?;
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, pool.masks())?;
            writeln!(out)?;
        }
        _ => {
            for &m in pool.masks() {
                writeln!(out, "{m} {}", to_binary_string(m, n))?;
            }
        }
    }
    Ok(())
}

fn write_report(report: &EnumerationReport, format: Format, out: &mut dyn Write) -> CmdResult {
    if format == Format::Json {
        serde_json::to_writer(&mut *out, report)?;
        writeln!(out)?;
    } else {
        writeln!(out, "n = {}", report.n)?;
        writeln!(out, "k = {}", report.k)?;
        writeln!(out, "mu = {}", report.mu)?;
        writeln!(out, "method = {}", report.method.as_str())?;
        writeln!(out, "tuples_visited = {}", report.tuples_visited)?;
        writeln!(out, "elapsed_seconds = {:.6}", report.elapsed.as_secs_f64())?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_count(
    n: u32,
    k: u32,
    method: CountMethod,
    jobs: usize,
    force: bool,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    require_format(format, &[Format::Text, Format::Json], "count")?;
    let report = match method {
        CountMethod::Baseline => {
            let predicted = predicted_baseline_visits(n, k)?;
            writeln!(err, "baseline will examine {predicted} tuples")?;
            if predicted > BigUint::from(BASELINE_VISIT_LIMIT) && !force {
                return Err(Failure::Usage(format!(
                    "baseline would examine {predicted} tuples (more than {BASELINE_VISIT_LIMIT}); \
                     use --method pruned or pass --force"
                )));
            }
            if jobs > 1 {
                writeln!(err, "note: the baseline runs single-threaded; --jobs ignored")?;
            }
            count_canonical(n, k)?
        }
        CountMethod::Pruned => {
            let opts = SearchOptions {
                jobs,
                ..SearchOptions::default()
            };
            count_canonical_pruned_with(n, k, &opts)?
        }
    };
    write_report(&report, format, out)
}

fn record(t: &RowTuple, k: u32, index: u64) -> OutputRecord {
    OutputRecord {
        n: t.n(),
        k,
        rows: t.rows().to_vec(),
        cols: t.columns(),
        index,
    }
}

fn cmd_list(n: u32, k: u32, format: Format, limit: Option<u64>, out: &mut dyn Write) -> CmdResult {
    require_format(format, &[Format::Text, Format::Json, Format::Jsonl], "list")?;
    if limit == Some(0) {
        if format == Format::Json {
            writeln!(out, "[]")?;
        }
        return Ok(());
    }
    let mut index = 0u64;
    let mut io_error = None;
    if format == Format::Json {
        write!(out, "[")?;
    }
    stream_representatives_while(n, k, |t| {
        index += 1;
        let rec = record(t, k, index);
        let written = match format {
            Format::Jsonl => serde_json::to_writer(&mut *out, &rec)
                .map_err(io::Error::from)
                .and_then(|_| writeln!(out)),
            Format::Json => {
                let sep = if index > 1 { "," } else { "" };
                write!(out, "{sep}")
                    .and_then(|_| serde_json::to_writer(&mut *out, &rec).map_err(io::Error::from))
            }
            _ => {
                let rows: Vec<String> = rec.rows.iter().map(u64::to_string).collect();
                let cols: Vec<String> = rec.cols.iter().map(u64::to_string).collect();
                write!(
                    out,
                    "# {index}: rows {} cols {}\n{}\n",
                    rows.join(" "),
                    cols.join(" "),
                    t.render()
                )
            }
        };
        if let Err(e) = written {
            io_error = Some(e);
            return false;
        }
        limit.is_none_or(|l| index < l)
    })?;
    if let Some(e) = io_error {
        return Err(e.into());
    }
    if format == Format::Json {
        writeln!(out, "]")?;
    }
    Ok(())
}

fn cmd_lambda(n: u32, k: u32, method: LambdaMethod, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let single = match method {
        LambdaMethod::Auto => None,
        LambdaMethod::Partition => Some(Route::Partition),
        LambdaMethod::Anand => Some(Route::Anand),
        LambdaMethod::GoodCrook => Some(Route::GoodCrook),
        LambdaMethod::Pi => Some(Route::Pi),
        LambdaMethod::Explicit => Some(Route::Explicit),
    };
    let routes = applicable_routes(n, k)?;
    let routes = match single {
        Some(route) if route.k() != k => {
            return Err(Failure::Usage(format!(
                "method {} evaluates k = {}, not k = {k}",
                route.name(),
                route.k()
            )))
        }
        Some(route) => vec![(route.name().to_string(), route)],
        None => routes,
    };
    let mut values: Vec<(String, BigCount)> = Vec::with_capacity(routes.len());
    for (label, route) in routes {
        let v = route.evaluate(n)?;
        if single.is_none() {
            writeln!(err, "{label}: {v}")?;
        }
        values.push((label, v));
    }
    let first = &values[0].1;
    if values.iter().any(|(_, v)| v != first) {
        let mut msg = format!("routes disagree for lambda({n}, {k}):");
        for (label, v) in &values {
            let _ = write!(msg, " {label}={v}");
        }
        return Err(Failure::Check(msg));
    }
    writeln!(out, "{first}")?;
    Ok(())
}

fn cmd_verify(n: u32, k: u32, format: Format, out: &mut dyn Write) -> CmdResult {
    require_format(format, &[Format::Text, Format::Json], "verify")?;
    if n > MAX_ORACLE_N {
        return Err(Failure::Usage(format!("verify supports n <= {MAX_ORACLE_N}, got {n}")));
    }
    let (counts, unique) = oracle::verify(n, k)?;
    let ok = counts.holds() && unique.holds;
    if format == Format::Json {
        let doc = serde_json::json!({ "counts": counts, "uniqueness": unique, "holds": ok });
        serde_json::to_writer(&mut *out, &doc)?;
        writeln!(out)?;
    } else {
        let lambda = match &counts.lambda_formula {
            Some(f) => format!(
                "λ {}{}{}",
                counts.lambda_oracle,
                if counts.lambda_ok() { "=" } else { "≠" },
                f
            ),
            None => format!("λ {} (no formula)", counts.lambda_oracle),
        };
        writeln!(
            out,
            "{lambda}, μ {}{}{}, uniqueness {}",
            counts.mu_oracle,
            if counts.mu_ok() { "=" } else { "≠" },
            counts.mu_enumerated,
            if unique.holds { "holds" } else { "fails" }
        )?;
        for w in &unique.witnesses {
            let members: Vec<String> = w
                .canonical_members
                .iter()
                .map(|rows| format!("{rows:?}"))
                .collect();
            writeln!(
                out,
                "  class {} (size {}, smallest {:?}): {} canonical members {}",
                w.class_index,
                w.class_size,
                w.representative,
                w.canonical_members.len(),
                members.join(" ")
            )?;
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "oracle disagrees with the canonical-element count for n = {n}, k = {k}"
        )))
    }
}

/// Canonical counts for every 1 <= k < n <= `max_n`, keyed `(n, k)` in
/// row-major order of k then n.
pub fn canonical_table(max_n: u32, jobs: usize) -> crate::Result<Vec<(u32, u32, u64)>> {
    let opts = SearchOptions {
        jobs,
        ..SearchOptions::default()
    };
    let mut cells = Vec::new();
    for k in 1..max_n {
        for n in (k + 1)..=max_n {
            cells.push((n, k, count_canonical_pruned_with(n, k, &opts)?.mu));
        }
    }
    Ok(cells)
}

fn cmd_table(max_n: u32, format: Format, jobs: usize, out: &mut dyn Write) -> CmdResult {
    require_format(format, &[Format::Text, Format::Csv, Format::Json], "table")?;
    if !(2..=9).contains(&max_n) {
        return Err(Failure::Usage(format!("--max-n must be in 2..=9, got {max_n}")));
    }
    let cells = canonical_table(max_n, jobs)?;
    match format {
        Format::Csv => {
            writeln!(out, "k,n,mu")?;
            for (n, k, mu) in &cells {
                writeln!(out, "{k},{n},{mu}")?;
            }
        }
        Format::Json => {
            let rows: Vec<_> = cells
                .iter()
                .map(|(n, k, mu)| serde_json::json!({ "k": k, "n": n, "mu": mu }))
                .collect();
            serde_json::to_writer(&mut *out, &rows)?;
            writeln!(out)?;
        }
        _ => out.write_all(render_table(max_n, &cells).as_bytes())?,
    }
    Ok(())
}

/// Triangular layout: one line per k, one column per n.
fn render_table(max_n: u32, cells: &[(u32, u32, u64)]) -> String {
    let width = cells
        .iter()
        .map(|c| c.2.to_string().len())
        .max()
        .unwrap_or(1)
        .max(2)
        + 2;
    let mut s = format!("{:<5}", "k\\n");
    for n in 2..=max_n {
        let _ = write!(s, "{n:>width$}");
    }
    s.push('\n');
    for k in 1..max_n {
        let _ = write!(s, "{k:<5}");
        for n in 2..=max_n {
            match cells.iter().find(|c| c.0 == n && c.1 == k) {
                Some(c) => {
                    let _ = write!(s, "{:>width$}", c.2);
                }
                None => {
                    let _ = write!(s, "{:>width$}", "");
                }
            }
        }
        s.truncate(s.trim_end().len());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["regmat"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn masks_text_and_json() {
        let (code, out, _) = call(&["masks", "4", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "3 0011\n5 0101\n6 0110\n9 1001\n10 1010\n12 1100\n");
        let (code, out, _) = call(&["masks", "3", "0"]);
        assert_eq!((code, out.as_str()), (0, "0 000\n"));
        let (code, out, _) = call(&["masks", "4", "2", "--format", "json"]);
        assert_eq!((code, out.as_str()), (0, "[3,5,6,9,10,12]\n"));
    }

    #[test]
    fn masks_usage_errors() {
        let (code, out, err) = call(&["masks", "3", "4"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(err.contains("exceeds"));
        assert_eq!(call(&["masks", "3"]).0, 2);
        assert_eq!(call(&["masks", "3", "-1"]).0, 2);
        assert_eq!(call(&["masks", "3", "1", "--format", "csv"]).0, 2);
    }

    #[test]
    fn count_reports_mu() {
        let (code, out, _) = call(&["count", "5", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("mu = 5\n"), "{out}");
        let (code, out, _) = call(&["count", "7", "3", "--method", "pruned", "--jobs", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("mu = 272\n"));
        let (code, out, err) = call(&["count", "6", "3", "--method", "baseline", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["mu"], 25);
        assert_eq!(v["tuples_visited"], 177100);
        assert!(err.contains("177100"));
    }

    #[test]
    fn baseline_guard() {
        let (code, out, err) = call(&["count", "8", "4", "--method", "baseline"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        // C(77, 8)
        assert!(err.contains("21042072975"), "{err}");
        assert_eq!(call(&["count", "3", "1", "--jobs", "0"]).0, 2);
    }

    #[test]
    fn list_formats() {
        let (code, out, _) = call(&["list", "2", "1"]);
        assert_eq!((code, out.as_str()), (0, "# 1: rows 1 2 cols 1 2\n01\n10\n\n"));
        let (code, out, _) = call(&["list", "3", "3", "--format", "jsonl"]);
        assert_eq!(code, 0);
        assert_eq!(out, "{\"n\":3,\"k\":3,\"rows\":[7,7,7],\"cols\":[7,7,7],\"index\":1}\n");
        let (_, out, _) = call(&["list", "4", "2", "--format", "jsonl"]);
        assert_eq!(out.lines().count(), 2);
        let (_, out, _) = call(&["list", "6", "3", "--format", "json", "--limit", "3"]);
        let recs: Vec<OutputRecord> = serde_json::from_str(&out).unwrap();
        assert_eq!(recs.len(), 3);
        assert_eq!(recs.iter().map(|r| r.index).collect::<Vec<_>>(), vec![1, 2, 3]);
        let (_, out, _) = call(&["list", "6", "3", "--format", "json", "--limit", "0"]);
        assert_eq!(out, "[]\n");
    }

    #[test]
    fn lambda_values_and_errors() {
        assert_eq!(call(&["lambda", "3", "2"]).1, "6\n");
        assert_eq!(call(&["lambda", "5", "1"]).1, "120\n");
        assert_eq!(call(&["lambda", "5", "3"]).1, "2040\n");
        assert_eq!(call(&["lambda", "20", "2", "--method", "pi"]).1, format!("{}\n", crate::formulas::lambda_n_2_anand(20).unwrap()));
        let (code, _, err) = call(&["lambda", "9", "4"]);
        assert_eq!(code, 2);
        assert!(err.contains("no known formula"));
        assert_eq!(call(&["lambda", "5", "2", "--method", "explicit"]).0, 2);
        assert_eq!(call(&["lambda", "0", "2"]).0, 2);
    }

    #[test]
    fn lambda_auto_uses_complement() {
        let (code, out, err) = call(&["lambda", "5", "2"]);
        assert_eq!((code, out.as_str()), (0, "2040\n"));
        assert!(err.contains("complement:explicit: 2040"), "{err}");
        assert!(err.contains("good-crook: 2040"));
    }

    #[test]
    fn verify_codes() {
        let (code, out, _) = call(&["verify", "4", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "λ 90=90, μ 2=2, uniqueness holds\n");
        assert_eq!(call(&["verify", "3", "1"]).0, 0);
        assert_eq!(call(&["verify", "7", "2"]).0, 2);
        let (code, out, err) = call(&["verify", "5", "2"]);
        assert_eq!(code, 1);
        assert!(out.starts_with("λ 2040=2040, μ 2≠5, uniqueness fails\n"), "{out}");
        assert!(err.contains("check failed"));
    }

    #[test]
    fn table_layouts() {
        let (code, out, _) = call(&["table", "--max-n", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "k\\n     2\n1       1\n");
        let (code, out, _) = call(&["table", "--max-n", "5", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "k,n,mu\n1,2,1\n1,3,1\n1,4,1\n1,5,1\n2,3,1\n2,4,2\n2,5,5\n3,4,1\n3,5,3\n4,5,1\n"
        );
        let (_, text, _) = call(&["table", "--max-n", "5"]);
        assert_eq!(
            text,
            "k\\n     2   3   4   5\n1       1   1   1   1\n2           1   2   5\n3               1   3\n4                   1\n"
        );
        assert_eq!(call(&["table", "--max-n", "1"]).0, 2);
        assert_eq!(call(&["table", "--max-n", "10"]).0, 2);
        assert_eq!(call(&["table", "--format", "jsonl"]).0, 2);
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("Usage"));
    }
}
