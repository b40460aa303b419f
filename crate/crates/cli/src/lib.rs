//! Command-line front end: `solve`, `example`, `sweep` and `dump`.
//!
//! Exit codes: 0 success, 1 internal failure, 2 invalid input or
//! configuration, 3 the postselected outcome is impossible.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use hhl_core::example2x2::{self, SweepRecord};
use hhl_core::format::format_sig;
use hhl_core::hhl::{run_hhl, HhlConfig, LinearSystem};
use hhl_core::{Complex64, ComplexMatrix, ComplexVector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_IMPOSSIBLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hhl", version, about = "State-vector simulation of the HHL linear-system algorithm")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run HHL on a Hermitian system read from JSON files.
    #[command(allow_negative_numbers = true)]
    Solve(SolveArgs),
    /// Run the four-qubit circuit for A = ½[[3,1],[1,3]].
    #[command(allow_negative_numbers = true)]
    Example(ExampleArgs),
    /// Sweep r and emit fidelity and success probability.
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
    /// Print the four-qubit circuit, one op per line.
    #[command(allow_negative_numbers = true)]
    Dump(DumpArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Mode {
    Exact,
    SmallAngle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, clap::Args)]
struct SolveArgs {
    /// Matrix file: {"rows", "cols", "entries": [[re, im], ...]}
    #[arg(long)]
    matrix: String,
    /// Right-hand side in the same format with one row or one column.
    #[arg(long)]
    rhs: String,
    /// Clock register size.
    #[arg(long, default_value_t = 2)]
    clock: usize,
    /// Evolution time t0 (2π by default).
    #[arg(long, default_value_t = std::f64::consts::TAU)]
    t0: f64,
    /// Rotation constant C for exact mode (defaults to 2π/t0).
    #[arg(long)]
    c: Option<f64>,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    /// C = 2^-r·π in small-angle mode.
    #[arg(long)]
    r: Option<f64>,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, clap::Args)]
struct ExampleArgs {
    #[arg(long)]
    r: f64,
    #[arg(long, default_value_t = 1.0)]
    b1: f64,
    #[arg(long, default_value_t = 0.0)]
    b2: f64,
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, clap::Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 2.0)]
    r_min: f64,
    #[arg(long, default_value_t = 8.0)]
    r_max: f64,
    #[arg(long, default_value_t = 25)]
    steps: usize,
    #[arg(long, default_value_t = 1.0)]
    b1: f64,
    #[arg(long, default_value_t = 0.0)]
    b2: f64,
    #[arg(long, default_value = "-")]
    out: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, clap::Args)]
struct DumpArgs {
    #[arg(long)]
    r: f64,
}

/// On-disk matrix: row-major `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.as_slice().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_matrix(&self) -> hhl_core::Result<ComplexMatrix> {
        let data = self.entries.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        ComplexMatrix::new(self.rows, self.cols, data)
    }

    fn to_vector(&self) -> hhl_core::Result<ComplexVector> {
        if self.rows != 1 && self.cols != 1 {
            return Err(hhl_core::Error::Validation(format!(
                "right-hand side must be a single row or column, got {}x{}",
                self.rows, self.cols
            )));
        }
        ComplexVector::new(self.to_matrix()?.as_slice().to_vec())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub fidelity: f64,
    pub probability: f64,
    pub solution: Vec<[f64; 2]>,
    pub config: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub r: f64,
    pub fidelity: f64,
    pub probability: f64,
}

impl From<SweepRecord> for SweepRow {
    fn from(rec: SweepRecord) -> Self {
        Self { r: rec.r, fidelity: rec.fidelity, probability: rec.probability }
    }
}

#[derive(Debug)]
enum CliError {
    Core(hhl_core::Error),
    Input(String),
    Output(io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        use hhl_core::Error as E;
        match self {
            CliError::Core(E::ImpossibleOutcome { .. }) => EXIT_IMPOSSIBLE,
            CliError::Core(
                E::Validation(_) | E::SingularMatrix(_) | E::Domain(_) | E::Unsupported(_) | E::Resource(_),
            ) => EXIT_VALIDATION,
            CliError::Core(E::NotProductState { .. }) => EXIT_INTERNAL,
            CliError::Input(_) => EXIT_VALIDATION,
            CliError::Output(_) => EXIT_INTERNAL,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Input(msg) => f.write_str(msg),
            CliError::Output(e) => write!(f, "cannot write output: {e}"),
        }
    }
}

impl From<hhl_core::Error> for CliError {
    fn from(e: hhl_core::Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Solve(args) => cmd_solve(&args, stdout),
        Command::Example(args) => cmd_example(&args, stdout, stderr),
        Command::Sweep(args) => cmd_sweep(&args, stdout),
        Command::Dump(args) => cmd_dump(&args, stdout, stderr),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn read_matrix_file(path: &str) -> CliResult<MatrixFile> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("cannot parse {path}: {e}")))
}

fn write_output(out: &str, bytes: &[u8], stdout: &mut dyn Write) -> CliResult<()> {
    if out == "-" {
        stdout.write_all(bytes).map_err(CliError::Output)
    } else {
        fs::write(Path::new(out), bytes).map_err(CliError::Output)
    }
}

fn to_pairs(v: &ComplexVector) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

fn json_bytes<T: Serialize>(value: &T) -> CliResult<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(|e| CliError::Output(e.into()))?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn example_b(b1: f64, b2: f64) -> CliResult<ComplexVector> {
    Ok(ComplexVector::from_real(&[b1, b2])?.normalized()?)
}

fn warn_small_r(r: f64, stderr: &mut dyn Write) {
    if r > 0.0 && r < example2x2::recommended_min_r() {
        let _ = writeln!(
            stderr,
            "warning: r = {r} is below log2(2π) ≈ 2.65; C exceeds the smallest eigenvalue"
        );
    }
}

fn cmd_solve(args: &SolveArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let a = read_matrix_file(&args.matrix)?.to_matrix()?;
    let b = read_matrix_file(&args.rhs)?.to_vector()?;
    let system = LinearSystem::normalizing(a, b)?;
    let config = match args.mode {
        Mode::Exact => {
            if args.r.is_some() {
                return Err(CliError::Input("--r only applies to --mode small-angle".into()));
            }
            HhlConfig::exact(args.clock, args.t0, args.c)
        }
        Mode::SmallAngle => {
            if args.c.is_some() {
                return Err(CliError::Input("--c only applies to --mode exact; use --r".into()));
            }
            let r = args.r.ok_or_else(|| CliError::Input("--mode small-angle needs --r".into()))?;
            HhlConfig::small_angle(args.clock, args.t0, r)
        }
    };
    let result = run_hhl(&system, &config)?;
    let doc = ResultDocument {
        fidelity: result.fidelity,
        probability: result.success_probability,
        solution: to_pairs(&result.solution),
        config: serde_json::json!({
            "mode": args.mode,
            "clock": args.clock,
            "t0": args.t0,
            "c": config.inversion.constant(),
            "r": args.r,
        }),
    };
    write_output(&args.out, &json_bytes(&doc)?, stdout)
}

fn cmd_example(args: &ExampleArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<()> {
    let b = example_b(args.b1, args.b2)?;
    let out = example2x2::run_example(args.r, &b)?;
    warn_small_r(args.r, stderr);
    let doc = ResultDocument {
        fidelity: out.fidelity,
        probability: out.probability,
        solution: to_pairs(&out.solution),
        config: serde_json::json!({ "r": args.r, "b1": args.b1, "b2": args.b2, "t0": example2x2::T0 }),
    };
    write_output(&args.out, &json_bytes(&doc)?, stdout)
}

/// CSV with header `r,fidelity,probability`, 9 significant digits, LF endings.
pub fn sweep_csv(rows: &[SweepRow]) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(["r", "fidelity", "probability"]).expect("in-memory write");
    for row in rows {
        w.write_record([
            format_sig(row.r, 9),
            format_sig(row.fidelity, 9),
            format_sig(row.probability, 9),
        ])
        .expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

fn cmd_sweep(args: &SweepArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let b = example_b(args.b1, args.b2)?;
    let rows: Vec<SweepRow> = example2x2::sweep_r(args.r_min, args.r_max, args.steps, &b)?
        .into_iter()
        .map(SweepRow::from)
        .collect();
    let bytes = match args.format {
        Format::Csv => sweep_csv(&rows),
        Format::Json => json_bytes(&rows)?,
    };
    write_output(&args.out, &bytes, stdout)
}

fn cmd_dump(args: &DumpArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<()> {
    let circuit = example2x2::build_fig2_circuit(args.r)?;
    warn_small_r(args.r, stderr);
    stdout.write_all(circuit.to_string().as_bytes()).map_err(CliError::Output)
}
