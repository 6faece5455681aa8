//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad input, 3 a series,
//! root solve or quadrature failed to converge.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::algebra::DeformationSpec;
use crate::coherent::{CsFamily, CsSpec, DEFAULT_TRUNCATION_EPS};
use crate::error::{Error, Result};
use crate::figures::{generate, render, write_atomic, FigureId, FigureRequest, OutputFormat};
use crate::statistics::{GridSpec, StatRecord};
use crate::verify::{run_suite, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "nlcs",
    version,
    about = "Coherent states of polynomially deformed su(2) and su(1,1)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the plot data of one catalog figure.
    Figure(FigureArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Print the statistics of a single state.
    Stats(StatsArgs),
    /// List the figure ids.
    Catalog,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FileFormat {
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RecordFormat {
    Kv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SuiteArg {
    Algebra,
    Stats,
    Laplace,
    Berry,
    All,
}

/// Deformation flags shared by several commands.
#[derive(Debug, Args)]
pub struct DeformationArgs {
    /// Family: su2-pcs, su11-bgcs or su11-pcs.
    #[arg(long)]
    pub family: Option<String>,
    /// Degree parameter p (polynomial degree 2p - 1).
    #[arg(long)]
    pub p: Option<usize>,
    /// Deformation coefficients c_1,..,c_p.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Option<Vec<f64>>,
    /// Representation label j or k.
    #[arg(long)]
    pub label: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Figure id, see `nlcs catalog`.
    pub id: String,
    /// Series-variable grid as min:max:points.
    #[arg(long)]
    pub grid: Option<String>,
    /// Representation labels, one curve each.
    #[arg(long, value_delimiter = ',')]
    pub labels: Option<Vec<f64>>,
    /// Deformation coefficients overriding the figure default.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Option<Vec<f64>>,
    /// Series variable at which photon distributions are evaluated.
    #[arg(long)]
    pub xbar: Option<f64>,
    #[arg(long, value_enum, default_value_t = FileFormat::Csv)]
    pub format: FileFormat,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Truncation threshold for su(1,1) coefficient vectors.
    #[arg(long)]
    pub eps: Option<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    pub suite: SuiteArg,
    #[command(flatten)]
    pub deformation: DeformationArgs,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub deformation: DeformationArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub amplitude_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub amplitude_im: Option<f64>,
    /// Series variable; sets a real amplitude instead of --amplitude-re/-im.
    #[arg(long)]
    pub xbar: Option<f64>,
    #[arg(long, value_enum, default_value_t = RecordFormat::Kv)]
    pub format: RecordFormat,
    #[arg(long)]
    pub eps: Option<f64>,
}

fn resolve_coeffs(p: Option<usize>, coeffs: Option<Vec<f64>>) -> Result<Vec<f64>> {
    match (p, coeffs) {
        (Some(p), Some(c)) if p != c.len() => Err(Error::InvalidInput(format!(
            "--p {p} does not match {} coefficients",
            c.len()
        ))),
        (_, Some(c)) => Ok(c),
        (None | Some(1), None) => Ok(vec![1.0]),
        (Some(2), None) => Ok(crate::figures::HIGGS_COEFFS.to_vec()),
        (Some(p), None) => Err(Error::InvalidInput(format!("--p {p} needs explicit --coeffs"))),
    }
}

impl DeformationArgs {
    fn family(&self) -> Result<CsFamily> {
        self.family
            .as_deref()
            .ok_or_else(|| Error::InvalidInput("--family is required".into()))?
            .parse()
    }

    fn build(&self, family: CsFamily) -> Result<DeformationSpec> {
        let label = self
            .label
            .ok_or_else(|| Error::InvalidInput("--label is required".into()))?;
        DeformationSpec::new(family.kind(), resolve_coeffs(self.p, self.coeffs.clone())?, label)
    }

    fn is_empty(&self) -> bool {
        self.family.is_none() && self.p.is_none() && self.coeffs.is_none() && self.label.is_none()
    }
}

fn exit_code(err: &Error) -> i32 {
    if err.is_convergence() {
        EXIT_NO_CONVERGENCE
    } else {
        EXIT_BAD_INPUT
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Figure(args) => cmd_figure(&args, stdout),
        Command::Verify(args) => cmd_verify(&args, stdout),
        Command::Stats(args) => cmd_stats(&args, stdout),
        Command::Catalog => {
            let names: String = FigureId::catalog().iter().map(|id| format!("{id}\n")).collect();
            stdout.write_all(names.as_bytes()).map(|_| EXIT_OK).map_err(io_error)
        }
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn io_error(e: std::io::Error) -> Error {
    Error::InvalidInput(format!("i/o error: {e}"))
}

fn cmd_figure(args: &FigureArgs, stdout: &mut dyn Write) -> Result<i32> {
    let id = FigureId::parse(&args.id)?;
    let mut req = match &args.coeffs {
        Some(coeffs) => FigureRequest::with_coeffs(id, coeffs.clone()),
        None => FigureRequest::with_defaults(id),
    };
    if let Some(grid) = &args.grid {
        let (min, max, points) = GridSpec::parse_range(grid)?;
        req.grid = GridSpec::new(min, max, points, req.grid.labels.clone())?;
    }
    if let Some(labels) = &args.labels {
        req.grid.labels = labels.clone();
    }
    if let Some(x) = args.xbar {
        req.dist_xbar = x;
    }
    if let Some(eps) = args.eps {
        req.eps = eps;
    }
    let format = match args.format {
        FileFormat::Csv => OutputFormat::Csv,
        FileFormat::Jsonl => OutputFormat::Jsonl,
    };
    let text = render(id, &generate(&req)?, format)?;
    match &args.out {
        Some(path) => write_atomic(path, &text).map_err(io_error)?,
        None => stdout.write_all(text.as_bytes()).map_err(io_error)?,
    }
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write) -> Result<i32> {
    let suite = match args.suite {
        SuiteArg::Algebra => Suite::Algebra,
        SuiteArg::Stats => Suite::Stats,
        SuiteArg::Laplace => Suite::Laplace,
        SuiteArg::Berry => Suite::Berry,
        SuiteArg::All => Suite::All,
    };
    let user = if args.deformation.is_empty() {
        None
    } else {
        let family = args.deformation.family()?;
        Some(args.deformation.build(family)?)
    };
    let lines = run_suite(suite, user.as_ref());
    let mut all_passed = true;
    for line in &lines {
        all_passed &= line.passed;
        writeln!(stdout, "{}", line.render()).map_err(io_error)?;
    }
    Ok(if all_passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn cmd_stats(args: &StatsArgs, stdout: &mut dyn Write) -> Result<i32> {
    let family = args.deformation.family()?;
    let def = args.deformation.build(family)?;
    let spec = match (args.xbar, args.amplitude_re, args.amplitude_im) {
        (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
            return Err(Error::InvalidInput(
                "give either --xbar or --amplitude-re/--amplitude-im".into(),
            ))
        }
        (Some(x), None, None) => CsSpec::from_xbar(family, def, x)?,
        (None, re, im) => CsSpec::new(family, def, Complex64::new(re.unwrap_or(0.0), im.unwrap_or(0.0)))?,
    };
    let record = StatRecord::compute(&spec, args.eps.unwrap_or(DEFAULT_TRUNCATION_EPS))?;
    let text = match args.format {
        RecordFormat::Kv => record.to_key_value(),
        RecordFormat::Json => serde_json::to_string(&record).map_err(|e| Error::InvalidInput(e.to_string()))?,
    };
    writeln!(stdout, "{text}").map_err(io_error)?;
    Ok(EXIT_OK)
}
