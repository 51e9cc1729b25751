//! Command-line front end: `generate`, `render` and `analyze`.
//!
//! Exit codes: 0 success, 1 usage error, 2 input or parse error, 3 I/O error.

use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use peakcell::analysis::{
    DEFAULT_MAX_PERIODS, DEFAULT_THRESHOLD, DEFAULT_WINDOW, MIN_PERIOD_SERIES_LEN,
};
use peakcell::{
    analyze, default_steps, export_mask_csv, generate, iterate, parse_csv, render, series_to_csv,
    AnalysisOptions, Convexity, InstabilityInterval, PeriodEstimate, RenderFormat, RenderSpec,
    Series, SyntheticKind, SyntheticSpec,
};
use serde::{Deserialize, Serialize};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_IO: i32 = 3;

pub const SCHEMA_VERSION: u32 = 1;

/// JSON document written by `analyze`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema_version: u32,
    pub n: usize,
    pub steps: usize,
    pub periods: Vec<PeriodEstimate>,
    pub instabilities: Vec<InstabilityInterval>,
    pub convexity: Convexity,
}

#[derive(Debug, Parser)]
#[command(
    name = "peakcell",
    version,
    about = "Peak-smoothing cellular diagrams of measurement series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a synthetic series as single-column CSV.
    Generate(GenerateArgs),
    /// Iterate the smoothing operator and write the diagram.
    Render(RenderArgs),
    /// Iterate the smoothing operator and write a JSON feature report.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Input CSV file, or "-" for standard input.
    #[arg(default_value = "-")]
    input: String,
    /// Zero-based column to read.
    #[arg(long, default_value_t = 0)]
    column: usize,
    /// Number of smoothing steps [default: min(N, 256)].
    #[arg(long, short = 'k', value_parser = clap::value_parser!(u64).range(1..))]
    steps: Option<u64>,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output path, or "-" for standard output.
    #[arg(long, short = 'o', default_value = "-")]
    output: String,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    /// Signal shape.
    #[arg(long, value_parser = parse_kind)]
    kind: SyntheticKind,
    /// Number of samples.
    #[arg(long, short = 'n', value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    /// x-axis step for trigonometric kinds [default: 2π/50].
    #[arg(long, value_parser = parse_positive)]
    scale: Option<f64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    /// Binary PBM (P4).
    Pbm,
    /// Binary PGM (P5).
    Pgm,
    /// 8-bit grayscale PNG.
    Png,
    /// '#' for black, '.' for white.
    Ascii,
    /// Mask rows as comma-separated 0/1.
    Csv,
}

#[derive(Debug, Args)]
struct RenderArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, short = 'f', value_enum, default_value_t = FormatArg::Pbm)]
    format: FormatArg,
    /// Pixels per cell.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=64))]
    cell_size: u64,
    /// Draw the source series above the diagram.
    #[arg(long)]
    composite: bool,
    /// Source panel height in cells.
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(8..=4096))]
    panel_height: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Instability window in columns [default: min(16, N)].
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    window: Option<u64>,
    /// Instability threshold in (0, 1].
    #[arg(long, default_value_t = DEFAULT_THRESHOLD, value_parser = parse_threshold)]
    threshold: f64,
    /// Maximum number of periods to report.
    #[arg(long, default_value_t = DEFAULT_MAX_PERIODS as u64, value_parser = clap::value_parser!(u64).range(1..))]
    max_periods: u64,
    #[command(flatten)]
    out: OutputArgs,
}

fn parse_kind(s: &str) -> Result<SyntheticKind, String> {
    s.parse().map_err(|e: peakcell::Error| e.to_string())
}

fn parse_positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("{s:?} is not a positive finite number")),
    }
}

fn parse_threshold(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v <= 1.0 => Ok(v),
        _ => Err(format!("{s:?} is not in (0, 1]")),
    }
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Io { path: String, source: io::Error },
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => f.write_str(msg),
            CliError::Io { path, source } => write!(f, "{path}: {source}"),
        }
    }
}

impl From<peakcell::Error> for CliError {
    fn from(e: peakcell::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

struct Streams<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

fn usize_arg(v: u64) -> Result<usize, CliError> {
    usize::try_from(v).map_err(|_| CliError::Input(format!("{v} is too large")))
}

fn read_series(input: &InputArgs, io: &mut Streams<'_>) -> Result<Series, CliError> {
    let mut text = String::new();
    let result = if input.input == "-" {
        io.stdin.read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(Path::new(&input.input)).map(|s| text = s)
    };
    match result {
        Ok(()) => {}
        Err(e) if e.kind() == io::ErrorKind::InvalidData => {
            return Err(CliError::Input(format!(
                "{}: input is not valid UTF-8",
                input.input
            )))
        }
        Err(source) => {
            return Err(CliError::Io {
                path: input.input.clone(),
                source,
            })
        }
    }
    parse_csv(&text, input.column)
        .map_err(|e| CliError::Input(format!("{}: {e}", display_name(&input.input))))
}

fn display_name(path: &str) -> &str {
    if path == "-" {
        "<stdin>"
    } else {
        path
    }
}

fn steps_for(input: &InputArgs, series: &Series) -> Result<usize, CliError> {
    match input.steps {
        Some(k) => usize_arg(k),
        None => Ok(default_steps(series.len())),
    }
}

fn write_output(out: &OutputArgs, bytes: &[u8], io: &mut Streams<'_>) -> Result<(), CliError> {
    let result = if out.output == "-" {
        io.stdout.write_all(bytes).and_then(|()| io.stdout.flush())
    } else {
        fs::write(PathBuf::from(&out.output), bytes)
    };
    result.map_err(|source| CliError::Io {
        path: display_name(&out.output).to_string(),
        source,
    })
}

fn cmd_generate(args: &GenerateArgs, io: &mut Streams<'_>) -> Result<(), CliError> {
    let mut spec = SyntheticSpec::new(args.kind, usize_arg(args.n)?);
    if let Some(scale) = args.scale {
        spec = spec.with_scale(scale);
    }
    let series = generate(&spec)?;
    write_output(&args.out, series_to_csv(&series).as_bytes(), io)
}

fn cmd_render(args: &RenderArgs, io: &mut Streams<'_>) -> Result<(), CliError> {
    let series = read_series(&args.input, io)?;
    let steps = steps_for(&args.input, &series)?;
    let diagram = iterate(&series, steps)?;
    let format = match args.format {
        FormatArg::Pbm => RenderFormat::PbmP4,
        FormatArg::Pgm => RenderFormat::PgmP5,
        FormatArg::Png => RenderFormat::Png,
        FormatArg::Ascii => RenderFormat::Ascii,
        FormatArg::Csv => {
            let text = export_mask_csv(&diagram)?;
            return write_output(&args.out, text.as_bytes(), io);
        }
    };
    let spec = RenderSpec {
        format,
        cell_size: usize_arg(args.cell_size)?,
        composite: args.composite,
        panel_height: usize_arg(args.panel_height)?,
    };
    let bytes = render(&diagram, &spec)?;
    write_output(&args.out, &bytes, io)
}

fn cmd_analyze(args: &AnalyzeArgs, io: &mut Streams<'_>) -> Result<(), CliError> {
    let series = read_series(&args.input, io)?;
    let steps = steps_for(&args.input, &series)?;
    let diagram = iterate(&series, steps)?;
    let window = match args.window {
        Some(w) => usize_arg(w)?,
        None => DEFAULT_WINDOW.min(series.len()),
    };
    if window > series.len() {
        return Err(CliError::Input(format!(
            "window {window} exceeds series length {}",
            series.len()
        )));
    }
    if series.len() < MIN_PERIOD_SERIES_LEN {
        // Diagnostics only; the report is still written.
        let _ = writeln!(
            io.stderr,
            "peakcell: series has {} samples, period estimation needs {MIN_PERIOD_SERIES_LEN}",
            series.len()
        );
    }
    let options = AnalysisOptions {
        max_periods: usize_arg(args.max_periods)?,
        window,
        threshold: args.threshold,
    };
    let features = analyze(&diagram, &options)?;
    let report = Report {
        schema_version: SCHEMA_VERSION,
        n: series.len(),
        steps,
        periods: features.periods,
        instabilities: features.instabilities,
        convexity: features.convexity,
    };
    let mut json = serde_json::to_string_pretty(&report).expect("report serialises");
    json.push('\n');
    write_output(&args.out, json.as_bytes(), io)
}

/// Runs the CLI with explicit streams and returns the process exit code.
pub fn run_with<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let mut io = Streams {
        stdin,
        stdout,
        stderr,
    };
    let result = match &cli.command {
        Command::Generate(a) => cmd_generate(a, &mut io),
        Command::Render(a) => cmd_render(a, &mut io),
        Command::Analyze(a) => cmd_analyze(a, &mut io),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(io.stderr, "peakcell: {e}");
            e.exit_code()
        }
    }
}

/// Runs the CLI against the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdin = io::stdin();
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(
        args,
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}
