//! Command-line front end for `hypertab`.
//!
//! Exit codes: 0 when every outcome is the expected one (confirmed errata
//! included), 1 when an identity check fails unexpectedly, 2 on usage or
//! domain errors.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypertab::identities::{
    find_identity, golden_key, golden_verdicts, list_identities, run_identity, IdentityReport, RunOptions, Verdict,
    DEFAULT_RNG_SEED,
};
use hypertab::series::TruncatedSeries;
use hypertab::sequences::{
    fib_subseq_gf, hyperfib_gf, hyperharmonic_gf, hyperlucas_gf, incomplete_fib_gf, incomplete_lucas_gf,
    lucas_subseq_gf, SequenceSpec,
};
use hypertab::triangle::{es_column_gf, Preset, SeedFile, SeedPair, SymmetricTableau};
use hypertab::{Error, Rational};
use serde_json::json;

pub const EXIT_OK: u8 = 0;
pub const EXIT_UNEXPECTED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "hypertab", version, about = "Exact tableaux, sequences, series and identity checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; csv for table/series/matrix and json for check when omitted.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Emit a CSV header line.
    #[arg(long, global = true)]
    pub header: bool,

    /// Seed for randomized identity domains.
    #[arg(long, global = true, default_value_t = DEFAULT_RNG_SEED)]
    pub seed: u64,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Values 0..=n of a sequence family.
    Table {
        /// fibonacci, lucas, harmonic, hyperharmonic (--r), incomplete-fib, incomplete-lucas (--k), hyperfib or hyperlucas (--r)
        family: String,
        #[arg(long)]
        r: Option<i64>,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long)]
        n: u64,
    },
    /// Coefficients 0..=order of a generating function.
    Series {
        /// fib-subseq, lucas-subseq, incomplete-fib, incomplete-lucas, hyperfib,
        /// hyperlucas, hyperharmonic, sym-row, sym-col or es-column.
        gf: String,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long)]
        r: Option<i64>,
        #[arg(long)]
        n: Option<i64>,
        /// Sequence family fed to es-column (takes --r/--k as its parameters).
        #[arg(long)]
        seq: Option<String>,
        #[command(flatten)]
        seeds: SeedArgs,
        #[arg(long)]
        order: usize,
    },
    /// Rectangle k = 0..=rows, n = 0..=cols of a symmetric tableau.
    Matrix {
        #[command(flatten)]
        seeds: SeedArgs,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
    },
    /// Run identity checks and compare verdicts with the expected table.
    Check {
        /// Identity id, or "all".
        target: String,
        #[arg(long)]
        variant: Option<String>,
        /// Parameter range, `name=lo..hi` or `name=value`; repeatable.
        #[arg(long = "override", value_name = "NAME=LO..HI")]
        overrides: Vec<String>,
        /// Also evaluate tuples outside the statement's own constraint.
        #[arg(long)]
        outside: bool,
        #[arg(long)]
        order: Option<usize>,
    },
}

#[derive(Debug, Args)]
pub struct SeedArgs {
    /// hyperharmonic, fib-odd, fib-even-odd, lucas-odd or lucas-even-odd.
    pub preset: Option<String>,
    /// JSON document {"row_seed": [...], "col_seed": [...]}.
    #[arg(long)]
    pub seed_file: Option<PathBuf>,
}

/// Failure surfaced to the user; always exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

type CliResult<T> = Result<T, UsageError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(UsageError(msg.into()))
}

/// Rendered output plus exit code.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let csv_default = |f: Option<Format>| f.unwrap_or(Format::Csv);
    match &cli.command {
        Command::Table { family, r, k, n } => {
            let spec = SequenceSpec::from_name(family, &named(&[("r", *r), ("k", *k)]))?;
            let values = spec.values(*n as usize)?;
            Ok(ok(render_row(csv_default(cli.format), cli.header, &values, || {
                json!({ "family": spec.name(), "params": named(&[("r", *r), ("k", *k)]), "values": values })
            })))
        }
        Command::Series { gf, k, r, n, seq, seeds, order } => {
            let s = series(gf, *k, *r, *n, seq.as_deref(), seeds, *order)?;
            let params = named(&[("k", *k), ("r", *r), ("n", *n)]);
            Ok(ok(render_row(csv_default(cli.format), cli.header, s.coeffs(), || {
                json!({ "series": gf, "params": params, "order": s.order(), "coeffs": s.coeffs() })
            })))
        }
        Command::Matrix { seeds, rows, cols } => {
            let mut t = SymmetricTableau::new(seed_pair(seeds)?);
            let entries = t.rectangle(*rows, *cols)?;
            Ok(ok(render_matrix(csv_default(cli.format), cli.header, &entries)))
        }
        Command::Check { target, variant, overrides, outside, order } => {
            let opts = RunOptions {
                order: *order,
                rng_seed: cli.seed,
                overrides: parse_overrides(overrides)?,
                allow_outside: *outside,
            };
            check(target, variant.as_deref(), &opts, cli.format.unwrap_or(Format::Json), cli.header)
        }
    }
}

fn ok(text: String) -> Outcome {
    Outcome { text, code: EXIT_OK }
}

fn named(pairs: &[(&str, Option<i64>)]) -> BTreeMap<String, i64> {
    pairs.iter().filter_map(|&(k, v)| v.map(|v| (k.to_string(), v))).collect()
}

fn render_row(format: Format, header: bool, values: &[Rational], doc: impl FnOnce() -> serde_json::Value) -> String {
    match format {
        Format::Csv => {
            let mut out = String::new();
            if header {
                out.push_str(&(0..values.len()).map(|i| i.to_string()).collect::<Vec<_>>().join(","));
                out.push('\n');
            }
            out.push_str(&join(values));
            out.push('\n');
            out
        }
        Format::Json => pretty(&doc()),
    }
}

fn render_matrix(format: Format, header: bool, entries: &[Vec<Rational>]) -> String {
    let cols = entries.first().map_or(0, Vec::len);
    match format {
        Format::Csv => {
            let mut out = String::new();
            if header {
                let names: Vec<String> = std::iter::once("k".to_string()).chain((0..cols).map(|n| format!("n={n}"))).collect();
                out.push_str(&names.join(","));
                out.push('\n');
            }
            for (k, row) in entries.iter().enumerate() {
                if header {
                    out.push_str(&format!("{k},"));
                }
                out.push_str(&join(row));
                out.push('\n');
            }
            out
        }
        Format::Json => pretty(&json!({ "rows": entries.len(), "cols": cols, "entries": entries })),
    }
}

fn join(values: &[Rational]) -> String {
    values.iter().map(Rational::to_string).collect::<Vec<_>>().join(",")
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn seed_pair(seeds: &SeedArgs) -> CliResult<SeedPair> {
    match (&seeds.preset, &seeds.seed_file) {
        (Some(name), None) => match Preset::from_name(name) {
            Some(p) => Ok(p.seeds()),
            None => usage(format!("unknown preset {name:?}")),
        },
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            let file: SeedFile =
                serde_json::from_str(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            Ok(file.into_seed_pair()?)
        }
        (Some(_), Some(_)) => usage("give a preset or --seed-file, not both"),
        (None, None) => usage("a preset or --seed-file is required"),
    }
}

fn require(name: &str, v: Option<i64>) -> CliResult<i64> {
    v.ok_or_else(|| UsageError(format!("--{name} is required")))
}

fn series(
    gf: &str,
    k: Option<i64>,
    r: Option<i64>,
    n: Option<i64>,
    seq: Option<&str>,
    seeds: &SeedArgs,
    order: usize,
) -> CliResult<TruncatedSeries> {
    let takes: &[&str] = match gf {
        "fib-subseq" | "lucas-subseq" => &["k", "r"],
        "incomplete-fib" | "incomplete-lucas" | "sym-row" => &["k"],
        "hyperfib" | "hyperlucas" | "hyperharmonic" => &["r"],
        "sym-col" => &["n"],
        "es-column" => &["k", "r"],
        other => return usage(format!("unknown generating function {other:?}")),
    };
    for (name, given) in [("k", k.is_some()), ("r", r.is_some()), ("n", n.is_some())] {
        if given && !takes.contains(&name) {
            return usage(format!("{gf} does not take --{name}"));
        }
    }
    let uses_seeds = matches!(gf, "sym-row" | "sym-col");
    if !uses_seeds && (seeds.preset.is_some() || seeds.seed_file.is_some()) {
        return usage(format!("{gf} does not take seeds"));
    }
    if seq.is_some() != (gf == "es-column") {
        return usage("--seq is required by es-column and only accepted there");
    }
    Ok(match gf {
        "fib-subseq" => fib_subseq_gf(require("k", k)?, require("r", r)?, order)?,
        "lucas-subseq" => lucas_subseq_gf(require("k", k)?, require("r", r)?, order)?,
        "incomplete-fib" => incomplete_fib_gf(require("k", k)?, order)?,
        "incomplete-lucas" => incomplete_lucas_gf(require("k", k)?, order)?,
        "hyperfib" => hyperfib_gf(require("r", r)?, order)?,
        "hyperlucas" => hyperlucas_gf(require("r", r)?, order)?,
        "hyperharmonic" => hyperharmonic_gf(require("r", r)?, order)?,
        "sym-row" => SymmetricTableau::new(seed_pair(seeds)?).row_gf(require("k", k)?, order)?,
        "sym-col" => SymmetricTableau::new(seed_pair(seeds)?).col_gf(require("n", n)?, order)?,
        _ => {
            let spec = SequenceSpec::from_name(seq.expect("checked above"), &named(&[("r", r), ("k", k)]))?;
            es_column_gf(&TruncatedSeries::from_coeffs(spec.values(order)?))?
        }
    })
}

/// Parses `name=lo..hi` or `name=value`.
pub fn parse_override(s: &str) -> CliResult<(String, (i64, i64))> {
    let bad = || UsageError(format!("override {s:?} is not NAME=LO..HI"));
    let (name, range) = s.split_once('=').ok_or_else(bad)?;
    if name.is_empty() {
        return Err(bad());
    }
    let num = |t: &str| t.trim().parse::<i64>().map_err(|_| bad());
    let (lo, hi) = match range.split_once("..") {
        Some((lo, hi)) => (num(lo)?, num(hi)?),
        None => {
            let v = num(range)?;
            (v, v)
        }
    };
    Ok((name.to_string(), (lo, hi)))
}

fn parse_overrides(list: &[String]) -> CliResult<BTreeMap<String, (i64, i64)>> {
    let mut out = BTreeMap::new();
    for s in list {
        let (name, range) = parse_override(s)?;
        if out.insert(name.clone(), range).is_some() {
            return usage(format!("parameter {name} overridden twice"));
        }
    }
    Ok(out)
}

/// A verdict is unexpected when it is not PASS and differs from the golden
/// table; narrowing a domain until a suspect formula holds is not a failure.
fn unexpected(report: &IdentityReport, golden: &BTreeMap<String, Verdict>) -> bool {
    report.verdict != Verdict::Pass && golden.get(&golden_key(&report.identity, &report.variant)) != Some(&report.verdict)
}

fn check(target: &str, variant: Option<&str>, opts: &RunOptions, format: Format, header: bool) -> CliResult<Outcome> {
    let jobs: Vec<(String, String)> = if target == "all" {
        if variant.is_some() || !opts.overrides.is_empty() {
            return usage("check all takes neither --variant nor --override");
        }
        let mut ids = list_identities();
        ids.sort_by_key(|i| i.id);
        ids.iter().flat_map(|i| i.variants.iter().map(move |v| (i.id.to_string(), v.name.to_string()))).collect()
    } else {
        let identity = find_identity(target)?;
        match variant {
            Some(v) => vec![(identity.id.to_string(), v.to_string())],
            None => identity.variants.iter().map(|v| (identity.id.to_string(), v.name.to_string())).collect(),
        }
    };
    let results: Vec<hypertab::Result<IdentityReport>> = std::thread::scope(|s| {
        let handles: Vec<_> = jobs.iter().map(|(id, v)| s.spawn(move || run_identity(id, v, opts))).collect();
        handles.into_iter().map(|h| h.join().expect("identity worker panicked")).collect()
    });
    let reports = results.into_iter().collect::<hypertab::Result<Vec<_>>>()?;
    let golden = golden_verdicts();
    let code = if reports.iter().any(|r| unexpected(r, &golden)) { EXIT_UNEXPECTED } else { EXIT_OK };
    let text = match format {
        Format::Json if variant.is_some() => pretty(&reports[0]),
        Format::Json => pretty(&reports),
        Format::Csv => {
            let mut out = String::new();
            if header {
                out.push_str("identity,variant,tested,failures,verdict,expected\n");
            }
            for r in &reports {
                let expected = golden.get(&golden_key(&r.identity, &r.variant)).map_or("-".to_string(), Verdict::to_string);
                out.push_str(&format!(
                    "{},{},{},{},{},{expected}\n",
                    r.identity, r.variant, r.tested, r.failure_count, r.verdict
                ));
            }
            out
        }
    };
    Ok(Outcome { text, code })
}

/// Parses, runs and writes; returns the process exit code.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &outcome.text).map_err(|e| format!("{}: {e}", path.display())),
                None => stdout.write_all(outcome.text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => outcome.code,
                Err(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                    EXIT_USAGE
                }
            }
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}
