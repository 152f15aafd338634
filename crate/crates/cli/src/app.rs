//! Argument parsing, validation and dispatch.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use df_core::analysis::{self, Execution};
use df_core::approximants::{self, ApproxResult, ErrorScale, MethodId, MethodSpec, Precision, Variant};
use df_core::digits::{self, Certification, Target};
use df_core::oracle::{self, ErrorMeasure};
use df_core::selftest::{self, SelftestOptions};
use df_core::special::{self, cache_load, cache_store, SequenceCache, SequenceKind, SpecialNumbers};
use df_core::Error;

use crate::report::{
    self, ApproxRecord, CacheRecord, CheckRecord, DigitRecord, ErrorRecord, NumberRecord, Report, SlopeRecord,
};

/// Digits shown for `approx` when `--digits` is not given.
const AUTO_VALUE_DIGITS: u64 = 40;

#[derive(Debug, Parser)]
#[command(name = "df", version, about = "Digits of pi and related constants from Bernoulli and Euler numbers")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Directory holding sequence cache files. Without it nothing is cached.
    #[arg(long, global = true, env = "DF_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Largest sequence or formula index a request may touch.
    #[arg(long, global = true, default_value_t = 20_000)]
    pub max_index: u64,

    /// Largest digit position or digit count a request may ask for.
    #[arg(long, global = true, default_value_t = 20_000)]
    pub max_digits: u64,

    /// Leave the elapsed time out of the report.
    #[arg(long, global = true)]
    pub no_timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One certified digit of a constant.
    Digit(DigitArgs),
    /// Evaluate one approximation formula.
    Approx(ApproxArgs),
    /// Measure errors over a range of indices.
    Sweep(SweepArgs),
    /// Print exact sequence values.
    Numbers(NumbersArgs),
    /// Build, verify or inspect cache files.
    #[command(subcommand)]
    Cache(CacheCommand),
    /// Run the built-in consistency checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct DigitArgs {
    /// pi, inv-pi, pi-squared, or pi-power K.
    #[arg(long, num_args = 1..=2, required = true)]
    pub target: Vec<String>,
    /// Fractional position; 0 is the first digit after the point.
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(2..=36))]
    pub base: u32,
    #[arg(long, value_parser = parse_method)]
    pub method: Option<MethodId>,
    /// Read --n as the 1-based count of significant digits instead.
    #[arg(long)]
    pub significant: bool,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    #[arg(long, value_parser = parse_method)]
    pub method: MethodId,
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub terms: Option<u32>,
    #[arg(long, value_parser = parse_variant)]
    pub variant: Option<Variant>,
    /// Measure the error against the reference constant.
    #[arg(long)]
    pub report_error: bool,
    /// Decimal places of the value to print; fails if they cannot be certified.
    #[arg(long)]
    pub digits: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, required = true, value_parser = parse_method)]
    pub method: Vec<MethodId>,
    /// START:END:STEP, inclusive.
    #[arg(long, value_parser = parse_range)]
    pub n: IndexRange,
    #[arg(long)]
    pub terms: Option<u32>,
    #[arg(long, value_parser = parse_variant)]
    pub variant: Option<Variant>,
    /// Fit the error exponent against the method's growth axis.
    #[arg(long)]
    pub fit_slope: bool,
    /// Evaluate on one thread.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NumberKind {
    Bernoulli,
    Euler,
    Partition,
    CentralBinomial,
    Factorial,
}

#[derive(Debug, Args)]
pub struct NumbersArgs {
    #[arg(long, value_enum)]
    pub kind: NumberKind,
    /// An index or START:END[:STEP]. Ranges skip odd Bernoulli and Euler indices.
    #[arg(long, value_parser = parse_range)]
    pub n: IndexRange,
}

#[derive(Debug, Subcommand)]
pub enum CacheCommand {
    /// Write cache files through index --n.
    Build {
        #[arg(long, value_parser = parse_kind)]
        kind: Vec<SequenceKind>,
        #[arg(long)]
        n: u64,
    },
    /// Check every cache file; fails if any is corrupt.
    Verify,
    /// Describe the cache files present.
    Info,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Highest digit position compared with the reference.
    #[arg(long, default_value_t = 100)]
    pub max_position: u64,
    /// Highest index of the bound checks.
    #[arg(long, default_value_t = 60)]
    pub sandwich_n: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexRange {
    pub start: u64,
    pub end: u64,
    pub step: u64,
    pub single: bool,
}

impl IndexRange {
    pub fn indices(&self) -> impl Iterator<Item = u64> {
        (self.start..=self.end).step_by(self.step as usize)
    }
}

impl FromStr for IndexRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("'{t}' is not a non-negative integer"))
        };
        let (start, end, step) = match parts.as_slice() {
            [n] => {
                let n = num(n)?;
                return Ok(IndexRange {
                    start: n,
                    end: n,
                    step: 1,
                    single: true,
                });
            }
            [a, b] => (num(a)?, num(b)?, 1),
            [a, b, c] => (num(a)?, num(b)?, num(c)?),
            _ => return Err(format!("expected N or START:END:STEP, got '{s}'")),
        };
        if step == 0 {
            return Err("range step must be positive".into());
        }
        if start > end {
            return Err(format!("range start {start} exceeds end {end}"));
        }
        Ok(IndexRange {
            start,
            end,
            step,
            single: false,
        })
    }
}

fn parse_range(s: &str) -> Result<IndexRange, String> {
    s.parse()
}

fn parse_method(s: &str) -> Result<MethodId, String> {
    s.parse().map_err(|_| {
        let names: Vec<String> = MethodId::ALL.iter().map(|m| m.cli_name()).collect();
        format!("unknown method '{s}'; expected one of {}", names.join(", "))
    })
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse()
        .map_err(|_| format!("unknown variant '{s}'; expected as-printed, beta-series or reciprocal-factor"))
}

fn parse_kind(s: &str) -> Result<SequenceKind, String> {
    s.parse()
        .map_err(|_| format!("unknown kind '{s}'; expected bernoulli, euler or partition"))
}

/// Failures that are not core errors.
#[derive(Debug)]
enum Failure {
    Core(Error),
    Selftest(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn record(&self) -> ErrorRecord {
        let (kind, message) = match self {
            Failure::Core(e) => (core_kind(e), e.to_string()),
            Failure::Selftest(m) => ("selftest", m.clone()),
            Failure::Verify(m) => ("cache_verify", m.clone()),
        };
        let exit_code = match self {
            Failure::Core(e) => exit_code(e),
            _ => 5,
        };
        ErrorRecord {
            kind: kind.to_string(),
            message,
            exit_code,
        }
    }
}

fn core_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::Range(_) => "range",
        Error::Precision(_) => "precision",
        Error::BoundaryHazard { .. } => "boundary_hazard",
        Error::Format { .. } => "format",
        Error::KindMismatch { .. } => "kind_mismatch",
        Error::Consistency(_) => "consistency",
        Error::ResourceCap(_) => "resource_cap",
        Error::Io(_) => "io",
    }
}

/// Process exit code for a core error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Range(_) | Error::KindMismatch { .. } => 2,
        Error::Precision(_) | Error::BoundaryHazard { .. } => 3,
        Error::ResourceCap(_) => 4,
        Error::Consistency(_) | Error::Format { .. } | Error::Io(_) => 5,
    }
}

type Outcome = Result<(), Failure>;

fn cap(what: &str, value: u64, limit: u64, flag: &str) -> Result<(), Error> {
    if value > limit {
        return Err(Error::ResourceCap(format!(
            "{what} {value} exceeds {limit}; raise {flag} to allow it"
        )));
    }
    Ok(())
}

struct Context<'a> {
    cli: &'a Cli,
    numbers: SpecialNumbers,
}

impl Context<'_> {
    /// Preloads every valid cache file; invalid ones become warnings.
    fn load_caches(&self, report: &mut Report) {
        let Some(dir) = &self.cli.cache_dir else { return };
        for kind in SequenceKind::ALL {
            let path = dir.join(kind.file_name());
            if !path.exists() {
                continue;
            }
            match cache_load(&path, Some(kind)) {
                Ok(cache) => self.numbers.preload(cache),
                Err(e) => report
                    .warnings
                    .push(format!("ignoring cache {}: {e}", path.display())),
            }
        }
    }

    fn spec_cap(&self, spec: &MethodSpec) -> Result<(), Error> {
        let index = analysis::zigzag_index(spec).max(spec.n);
        cap("index", index, self.cli.max_index, "--max-index")
    }
}

fn scale_name(scale: ErrorScale) -> &'static str {
    match scale {
        ErrorScale::Absolute => "absolute",
        ErrorScale::Relative => "relative",
    }
}

fn approx_record(r: &ApproxResult, value: Option<String>) -> ApproxRecord {
    ApproxRecord {
        method: r.method.cli_name(),
        index: r.index_n,
        terms: r.correction_terms,
        variant: r.variant.map(|v| v.name().replace('_', "-")),
        error_scale: scale_name(r.error_scale).into(),
        apriori_error_log10: r.apriori_error_log10,
        measured_error_log10: r.measured_error_log10.map(ErrorMeasure::exponent),
        below_floor: r.measured_error_log10.is_some_and(ErrorMeasure::is_below_floor),
        precision_bits: r.precision_bits(),
        value,
    }
}

fn spec_of(method: MethodId, n: u64, terms: Option<u32>, variant: Option<Variant>) -> MethodSpec {
    MethodSpec {
        method,
        n,
        terms,
        variant,
    }
}

fn run_digit(ctx: &Context, args: &DigitArgs, report: &mut Report) -> Outcome {
    let target: Target = args.target.join(" ").parse()?;
    let position = if args.significant {
        digits::significant_position(target, args.n, args.base)?
    } else {
        args.n
    };
    cap("digit position", position, ctx.cli.max_digits, "--max-digits")?;
    let plan = digits::planned_spec(target, position, args.base, args.method, ctx.cli.max_index)?;
    analysis::prepare(&ctx.numbers, &[plan]);
    let d = digits::digit_of_capped(&ctx.numbers, target, position, args.base, args.method, ctx.cli.max_index)?;
    report.digits.push(DigitRecord {
        target: target.to_string(),
        position: d.position,
        base: d.base,
        digit: d.digit_char().to_string(),
        stable: d.stable,
        method: d.method.cli_name(),
        index: d.index_n,
        precision_bits: d.precision_used,
    });
    Ok(())
}

/// `log10` bound on the absolute error of `r`, as a power of ten.
fn certified_exponent(r: &ApproxResult) -> i64 {
    let relative = match r.measured_error_log10 {
        Some(m) => m.exponent() + 1,
        None => r.apriori_error_log10 + 2,
    };
    match r.error_scale {
        ErrorScale::Absolute => relative,
        ErrorScale::Relative => relative + r.value.log10_abs().ceil() as i64,
    }
}

fn run_approx(ctx: &Context, args: &ApproxArgs, report: &mut Report) -> Outcome {
    let spec = spec_of(args.method, args.n, args.terms, args.variant);
    approximants::apriori_error_log10(&spec)?;
    ctx.spec_cap(&spec)?;
    if let Some(d) = args.digits {
        cap("digit count", d, ctx.cli.max_digits, "--max-digits")?;
    }
    analysis::prepare(&ctx.numbers, &[spec]);
    let mut result = approximants::evaluate(&ctx.numbers, &spec, Precision::Auto)?;
    if args.report_error {
        oracle::measure(&mut result)?;
    }
    let exponent = certified_exponent(&result);
    let value = match args.digits {
        Some(count) => Some(digits::render(&result.value, 10, count, Certification::ErrorLogBase(exponent))?),
        None => {
            let count = (-exponent - 2).min(AUTO_VALUE_DIGITS as i64);
            if count >= 0 {
                digits::render(&result.value, 10, count as u64, Certification::ErrorLogBase(exponent)).ok()
            } else {
                None
            }
        }
    };
    report
        .approximations
        .push(approx_record(&result, value.map(|v| v.to_string())));
    Ok(())
}

fn run_sweep(ctx: &Context, args: &SweepArgs, report: &mut Report) -> Outcome {
    let mut specs = Vec::new();
    for &method in &args.method {
        for n in args.n.indices() {
            let spec = spec_of(method, n, args.terms, args.variant);
            approximants::apriori_error_log10(&spec)?;
            ctx.spec_cap(&spec)?;
            specs.push(spec);
        }
    }
    let exec = if args.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let points = analysis::sweep(&ctx.numbers, &specs, exec)?;
    for p in &points {
        report.approximations.push(approx_record(&p.result, None));
    }
    if args.fit_slope {
        for fit in analysis::fit_slopes(&points) {
            report.slopes.push(SlopeRecord {
                method: fit.method.cli_name(),
                slope: format!("{:.6}", fit.slope),
                expected: fit.expected.map(|e| format!("{e:.6}")),
                within_5_percent: fit.within(0.05),
            });
        }
    }
    Ok(())
}

fn number_text(ctx: &Context, kind: NumberKind, k: u64) -> Result<String, Error> {
    Ok(match kind {
        NumberKind::Bernoulli => {
            let b = ctx.numbers.bernoulli(k)?;
            if b.is_integer() {
                b.numer().to_string()
            } else {
                format!("{}/{}", b.numer(), b.denom())
            }
        }
        NumberKind::Euler => ctx.numbers.euler(k)?.to_string(),
        NumberKind::Partition => ctx.numbers.partition(k).to_string(),
        NumberKind::CentralBinomial => special::central_binomial(k).to_string(),
        NumberKind::Factorial => special::factorial_exact(k).to_string(),
    })
}

fn run_numbers(ctx: &Context, args: &NumbersArgs, report: &mut Report) -> Outcome {
    cap("index", args.n.end, ctx.cli.max_index, "--max-index")?;
    let kind_name = format!("{:?}", args.kind)
        .chars()
        .enumerate()
        .flat_map(|(i, c)| {
            let sep = (i > 0 && c.is_uppercase()).then_some('-');
            sep.into_iter().chain(c.to_lowercase())
        })
        .collect::<String>();
    let skip_odd = !args.n.single && matches!(args.kind, NumberKind::Bernoulli | NumberKind::Euler);
    for k in args.n.indices() {
        if skip_odd && k % 2 == 1 && !(args.kind == NumberKind::Bernoulli && k == 1) {
            continue;
        }
        report.numbers.push(NumberRecord {
            kind: kind_name.clone(),
            index: k,
            value: number_text(ctx, args.kind, k)?,
        });
    }
    Ok(())
}

fn cache_dir(cli: &Cli) -> Result<&Path, Error> {
    cli.cache_dir
        .as_deref()
        .ok_or_else(|| Error::Domain("cache commands need --cache-dir or DF_CACHE_DIR".into()))
}

fn inspect(dir: &Path, kind: SequenceKind) -> (CacheRecord, bool) {
    let path = dir.join(kind.file_name());
    let mut record = CacheRecord {
        kind: kind.tag().into(),
        path: path.display().to_string(),
        status: "missing".into(),
        max_index: None,
        detail: None,
    };
    if !path.exists() {
        return (record, true);
    }
    match cache_load(&path, Some(kind)) {
        Ok(cache) => {
            record.status = "valid".into();
            record.max_index = Some(cache.max_index);
            (record, true)
        }
        Err(e) => {
            record.status = "invalid".into();
            record.detail = Some(e.to_string());
            (record, false)
        }
    }
}

fn run_cache(ctx: &Context, command: &CacheCommand, report: &mut Report) -> Outcome {
    let dir = cache_dir(ctx.cli)?;
    match command {
        CacheCommand::Build { kind, n } => {
            cap("index", *n, ctx.cli.max_index, "--max-index")?;
            std::fs::create_dir_all(dir).map_err(Error::from)?;
            let kinds = if kind.is_empty() {
                SequenceKind::ALL.to_vec()
            } else {
                kind.clone()
            };
            for k in kinds {
                let cache = SequenceCache::build(&ctx.numbers, k, *n)?;
                let path = dir.join(k.file_name());
                cache_store(&cache, &path)?;
                report.caches.push(CacheRecord {
                    kind: k.tag().into(),
                    path: path.display().to_string(),
                    status: "written".into(),
                    max_index: Some(cache.max_index),
                    detail: None,
                });
            }
            Ok(())
        }
        CacheCommand::Verify | CacheCommand::Info => {
            let mut bad = Vec::new();
            for k in SequenceKind::ALL {
                let (record, ok) = inspect(dir, k);
                if !ok {
                    bad.push(k.tag());
                }
                report.caches.push(record);
            }
            if matches!(command, CacheCommand::Verify) && !bad.is_empty() {
                return Err(Failure::Verify(format!("corrupt cache files: {}", bad.join(", "))));
            }
            Ok(())
        }
    }
}

fn run_selftest(ctx: &Context, args: &SelftestArgs, report: &mut Report) -> Outcome {
    cap("digit position", args.max_position, ctx.cli.max_digits, "--max-digits")?;
    cap("index", args.sandwich_n, ctx.cli.max_index, "--max-index")?;
    let options = SelftestOptions {
        cache_dir: ctx.cli.cache_dir.as_deref(),
        max_position: args.max_position,
        sandwich_n: args.sandwich_n,
        ..SelftestOptions::default()
    };
    let outcome = selftest::selftest(&ctx.numbers, &options);
    report.warnings.extend(outcome.warnings.iter().cloned());
    for c in &outcome.checks {
        report.checks.push(CheckRecord {
            name: c.name.clone(),
            passed: c.passed,
            detail: c.detail.clone(),
        });
    }
    if !outcome.passed() {
        let failed: Vec<&str> = outcome
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        return Err(Failure::Selftest(format!("failed checks: {}", failed.join(", "))));
    }
    Ok(())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Digit(_) => "digit",
        Command::Approx(_) => "approx",
        Command::Sweep(_) => "sweep",
        Command::Numbers(_) => "numbers",
        Command::Cache(_) => "cache",
        Command::Selftest(_) => "selftest",
    }
}

/// Runs a parsed command and returns the report with its exit code.
pub fn execute(cli: &Cli, echo: Vec<String>) -> (Report, i32) {
    let start = Instant::now();
    let mut report = Report::new(command_name(&cli.command), echo);
    let ctx = Context {
        cli,
        numbers: SpecialNumbers::new(),
    };
    if !matches!(cli.command, Command::Cache(_) | Command::Selftest(_)) {
        ctx.load_caches(&mut report);
    }
    let outcome = match &cli.command {
        Command::Digit(a) => run_digit(&ctx, a, &mut report),
        Command::Approx(a) => run_approx(&ctx, a, &mut report),
        Command::Sweep(a) => run_sweep(&ctx, a, &mut report),
        Command::Numbers(a) => run_numbers(&ctx, a, &mut report),
        Command::Cache(c) => run_cache(&ctx, c, &mut report),
        Command::Selftest(a) => run_selftest(&ctx, a, &mut report),
    };
    let code = match outcome {
        Ok(()) => 0,
        Err(f) => {
            let record = f.record();
            let code = record.exit_code;
            report.error = Some(record);
            code
        }
    };
    if !cli.no_timing {
        report.elapsed_us = Some(start.elapsed().as_micros() as u64);
    }
    (report, code)
}

/// Entry point: parses `args` (program name first), prints the report and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let (report, code) = execute(&cli, echo);
    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("reports serialize")
        ),
        Format::Table => {
            let text = report::render_table(&Report {
                error: None,
                ..report.clone()
            });
            print!("{text}");
            if let Some(e) = &report.error {
                eprintln!("error ({}): {}", e.kind, e.message);
            }
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exec(args: &[&str]) -> (Report, i32) {
        let mut full = vec!["df", "--no-timing"];
        full.extend_from_slice(args);
        let cli = Cli::try_parse_from(&full).unwrap();
        execute(&cli, args.iter().map(|s| s.to_string()).collect())
    }

    #[test]
    fn ranges_parse() {
        let r: IndexRange = "50:200:50".parse().unwrap();
        assert_eq!(r.indices().collect::<Vec<_>>(), vec![50, 100, 150, 200]);
        assert!("7".parse::<IndexRange>().unwrap().single);
        assert!("5:1".parse::<IndexRange>().is_err());
        assert!("1:5:0".parse::<IndexRange>().is_err());
    }

    #[test]
    fn digit_of_pi() {
        let (r, code) = exec(&["digit", "--target", "pi", "--n", "4"]);
        assert_eq!(code, 0);
        assert_eq!(r.digits[0].digit, "9");
        assert!(r.digits[0].stable);
    }

    #[test]
    fn pi_power_target_takes_two_words() {
        let (r, code) = exec(&["digit", "--target", "pi-power", "100", "--n", "3"]);
        assert_eq!(code, 0, "{:?}", r.error);
        let reference = oracle::reference(df_core::oracle::Constant::PiPower(100), 120).unwrap();
        let expected = oracle::reference_digit(&reference, 3, 10).unwrap();
        assert_eq!(r.digits[0].digit, expected.to_string());
        assert_eq!(r.digits[0].target, "pi-power 100");
    }

    #[test]
    fn approx_value_is_certified() {
        let (r, code) = exec(&["approx", "--method", "euler-basic", "--n", "10", "--report-error"]);
        assert_eq!(code, 0);
        let a = &r.approximations[0];
        let value = a.value.as_deref().unwrap();
        assert!("3.14159265358979323846".starts_with(value) || value.starts_with("3.14159"));
        assert!(value.len() >= 8);
    }

    #[test]
    fn too_many_digits_is_precision_error() {
        let (r, code) = exec(&["approx", "--method", "euler-basic", "--n", "10", "--digits", "30"]);
        assert_eq!(code, 3);
        assert_eq!(r.error.unwrap().kind, "precision");
    }

    #[test]
    fn caps_and_validation() {
        assert_eq!(exec(&["approx", "--method", "bernoulli-basic", "--n", "11"]).1, 2);
        assert_eq!(
            exec(&["--max-index", "100", "approx", "--method", "euler-basic", "--n", "60"]).1,
            4
        );
        assert_eq!(exec(&["--max-digits", "10", "digit", "--target", "pi", "--n", "11"]).1, 4);
        assert_eq!(exec(&["digit", "--target", "pi-power", "2", "--n", "1"]).1, 2);
    }

    #[test]
    fn numbers_skip_odd_in_ranges() {
        let (r, _) = exec(&["numbers", "--kind", "bernoulli", "--n", "0:6"]);
        let got: Vec<(u64, &str)> = r.numbers.iter().map(|x| (x.index, x.value.as_str())).collect();
        assert_eq!(
            got,
            vec![(0, "1"), (1, "-1/2"), (2, "1/6"), (4, "-1/30"), (6, "1/42")]
        );
        assert_eq!(r.numbers[0].kind, "bernoulli");
        let (r, _) = exec(&["numbers", "--kind", "central-binomial", "--n", "5"]);
        assert_eq!(r.numbers[0].kind, "central-binomial");
        assert_eq!(r.numbers[0].value, "252");
    }

    #[test]
    fn cache_needs_a_directory() {
        let (r, code) = exec(&["cache", "info"]);
        if std::env::var_os("DF_CACHE_DIR").is_none() {
            assert_eq!(code, 2);
            assert!(r.error.unwrap().message.contains("--cache-dir"));
        }
    }
}
