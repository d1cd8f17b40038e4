mod commands;
mod config;
mod report;
mod verify;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use biquotient::Real;
use clap::{Args, Parser, Subcommand, ValueEnum};

use config::RunConfig;
use report::Report;

#[derive(Debug)]
pub enum CliError {
    /// Exit code 2.
    Invalid(String),
    /// Reading or writing files; also exit code 2.
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<biquotient::Error> for CliError {
    fn from(e: biquotient::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

/// Comma-separated integers, negatives allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct Ints(pub Vec<i64>);

impl fmt::Display for Ints {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

fn parse_ints(s: &str) -> Result<Ints, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("'{t}': {e}")))
        .collect::<Result<Vec<_>, _>>()
        .map(Ints)
}

impl Ints {
    pub fn array<const N: usize>(&self, name: &str) -> Result<[i64; N], CliError> {
        self.0.as_slice().try_into().map_err(|_| {
            CliError::Invalid(format!("--{name} needs {N} integers, got {}", self.0.len()))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "biquot",
    version,
    about = "Curvature checks for Eschenburg, Bazaikin and torus biquotients"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Base RNG seed; every sample draws from its own stream.
    #[arg(long, global = true, env = "BIQUOT_SEED", default_value_t = 0)]
    seed: u64,
    /// Relative bracket tolerance for flatness.
    #[arg(long, global = true, env = "BIQUOT_TOL_BRACKET", default_value_t = f64::bracket_tol())]
    tol_bracket: f64,
    /// Relative horizontality tolerance for witnesses.
    #[arg(long, global = true, env = "BIQUOT_TOL_HORIZ", default_value_t = f64::horiz_tol())]
    tol_horiz: f64,
    /// Margin for "range contains zero" decisions.
    #[arg(long, global = true, env = "BIQUOT_MARGIN", default_value_t = f64::margin())]
    margin: f64,
    /// Cheeger deformation parameter in (0, 1).
    #[arg(long, global = true, env = "BIQUOT_LAMBDA", default_value_t = 0.5)]
    lambda: f64,
    /// Worker threads (0: one per core).
    #[arg(long, global = true, env = "BIQUOT_WORKERS", default_value_t = 0)]
    workers: usize,
    #[arg(long, global = true, env = "BIQUOT_FORMAT", value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, env = "BIQUOT_OUT")]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Freeness, curvature class and invariants of one space.
    Classify {
        #[command(subcommand)]
        family: Family,
    },
    /// Lattice sweeps.
    Scan {
        #[command(subcommand)]
        family: ScanFamily,
    },
    /// Numerical campaigns: Haar samples, constructed loci, oracle agreement.
    Verify {
        #[command(subcommand)]
        family: Family,
        #[arg(long, value_enum, global = true, default_value_t = Campaign::Random)]
        campaign: Campaign,
        #[arg(short = 'n', long = "samples", global = true, default_value_t = 100)]
        samples: usize,
        /// Witnesses kept in the report.
        #[arg(long, global = true, default_value_t = 10)]
        max_witnesses: usize,
    },
    /// Reload a JSON report, re-validate its witnesses and render it.
    Report { input: PathBuf },
}

#[derive(Debug, Clone, Subcommand)]
pub enum Family {
    Eschenburg {
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        p: Ints,
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        q: Ints,
    },
    Bazaikin {
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        q: Ints,
    },
    Torus(TorusArgs),
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct TorusArgs {
    /// `U_{a,b}` as `a,b`.
    #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
    ab: Option<Ints>,
    /// `U_c`.
    #[arg(long, allow_hyphen_values = true)]
    c: Option<i64>,
    /// `U_L`.
    #[arg(long)]
    l: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum ScanFamily {
    Eschenburg {
        /// Entries range over `[-max, max]`.
        #[arg(long, default_value_t = 4)]
        max: i64,
        /// Only free actions on the boundary of the positive cone.
        #[arg(long)]
        boundary: bool,
        #[arg(long)]
        class: Option<String>,
    },
    Bazaikin {
        /// Rows `(1,1,1,n,-n)` for odd `n` up to this value.
        #[arg(long, conflicts_with = "max")]
        family_n: Option<i64>,
        /// Sorted odd tuples with entries in `[-max, max]`.
        #[arg(long)]
        max: Option<i64>,
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        s: Option<i64>,
    },
    Torus {
        #[arg(long, default_value_t = 10)]
        ab_max: i64,
        /// Defaults to `--ab-max`.
        #[arg(long)]
        c_max: Option<i64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Campaign {
    Random,
    Locus,
    Oracle,
}

impl fmt::Display for Campaign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Campaign::Random => "random",
            Campaign::Locus => "locus",
            Campaign::Oracle => "oracle",
        })
    }
}

impl TorusArgs {
    pub fn action(&self) -> Result<biquotient::torus::TorusAction, CliError> {
        use biquotient::torus::TorusAction;
        if let Some(ab) = &self.ab {
            let [a, b] = ab.array::<2>("ab")?;
            return Ok(TorusAction::Ab { a, b });
        }
        if let Some(c) = self.c {
            return Ok(TorusAction::C { c });
        }
        Ok(TorusAction::L)
    }

    fn echo(&self) -> String {
        match (&self.ab, self.c) {
            (Some(ab), _) => format!("--ab {ab}"),
            (None, Some(c)) => format!("--c {c}"),
            _ => "--l".into(),
        }
    }
}

impl Family {
    fn echo(&self) -> String {
        match self {
            Family::Eschenburg { p, q } => format!("eschenburg --p {p} --q {q}"),
            Family::Bazaikin { q } => format!("bazaikin --q {q}"),
            Family::Torus(t) => format!("torus {}", t.echo()),
        }
    }
}

/// The report plus any soundness failures (exit code 3).
pub struct Outcome {
    pub report: Report,
    pub failures: Vec<String>,
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(report.to_json()),
        Format::Csv => report.render_csv(),
        Format::Text => Ok(report.render_text()),
    }
}

fn run(cli: Cli) -> Result<Vec<String>, CliError> {
    let g = &cli.global;
    let samples = match &cli.command {
        Command::Verify { samples, .. } => *samples,
        _ => 1,
    };
    let config = RunConfig {
        seed: g.seed,
        lambda: g.lambda,
        tol_bracket: g.tol_bracket,
        tol_horiz: g.tol_horiz,
        margin: g.margin,
        samples,
    };
    config.check().map_err(CliError::Invalid)?;
    let start = std::time::Instant::now();
    let mut outcome = match &cli.command {
        Command::Classify { family } => {
            let command = format!("classify {}", family.echo());
            commands::classify(family, command, config)?
        }
        Command::Scan { family } => commands::scan(family, config)?,
        Command::Verify {
            family,
            campaign,
            max_witnesses,
            ..
        } => {
            let command = format!(
                "verify {} --campaign {campaign} -n {samples}",
                family.echo()
            );
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(g.workers)
                .build()
                .map_err(|e| CliError::Invalid(e.to_string()))?;
            pool.install(|| verify::verify(family, *campaign, *max_witnesses, command, config))?
        }
        Command::Report { input } => {
            let text = std::fs::read_to_string(input)
                .map_err(|e| CliError::Io(format!("{}: {e}", input.display())))?;
            let report = Report::from_json(&text)?;
            let failures = report
                .invalid_witnesses()
                .into_iter()
                .map(|(i, e)| format!("witness {i} fails re-validation: {e}"))
                .collect();
            Outcome { report, failures }
        }
    };
    if !matches!(cli.command, Command::Report { .. }) {
        outcome.report.timing = Some(start.elapsed().as_secs_f64());
    }
    emit(&render(&outcome.report, g.format)?, &g.out)?;
    Ok(outcome.failures)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(failures) if failures.is_empty() => ExitCode::SUCCESS,
        Ok(failures) => {
            for f in failures {
                eprintln!("verification failure: {f}");
            }
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
