//! The `bellbeat` command line.
//!
//! [`run`] parses arguments, dispatches to the library and returns the process
//! exit code: 0 on success, 2 for usage and lookup errors, 1 for numeric or
//! I/O failures.

mod config;
mod state_spec;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::dynamics::TimeGrid;
use crate::error::Error;
use crate::experiments::{
    analyze, beat_period, preset, ratio_sweep, run_figure, sweep_table, table1, Emit, FigureId, FigureScenario,
};
use crate::hamiltonian::{build_hamiltonian, HamiltonianParams};
use crate::io::{to_json_string, write_atomic, Sci};
use crate::spectrum::{diagonalize, EigenSystem};

pub use config::{Auto, RunConfig};
pub use state_spec::{parse_state_spec, StateSpecError};

const STATE_HELP: &str = "Initial state as a weighted sum of LL, LR, RL, RR, e.g. \"LL+RR\" or \
\"0.5 LL - 0.5i RR\". Weights may be real, imaginary (trailing i) or a parenthesized complex sum \
such as (1+2i); a missing weight means 1. Whitespace is ignored and the result is normalized.";

#[derive(Debug, Parser)]
#[command(name = "bellbeat", version, about = "Two interacting particles in a double well: spectra, entropy, concurrence and beat envelopes")]
pub struct Cli {
    /// Report errors on stderr as {"error": code, "message": text}
    #[arg(long, global = true)]
    pub json_errors: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the spectrum, eigenvectors and gaps as JSON
    Eig(EigArgs),
    /// Evolve an initial state and write the trajectory with fits and alignment
    Evolve(EvolveArgs),
    /// Tabulate Bell fidelities and gaps against U/Δ
    Sweep(SweepArgs),
    /// Regenerate one published figure panel (3a-3d, 4a-4c, or "all")
    Reproduce(ReproduceArgs),
    /// Compare published and recomputed timescales for the three presets
    Table1(Table1Args),
}

#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    /// Named preset: optical-trap, quantum-magnet or semiconductor-dqd
    #[arg(long)]
    pub preset: Option<String>,
    /// Tunneling strength Δ in eV
    #[arg(long = "delta-ev", allow_hyphen_values = true)]
    pub delta_ev: Option<f64>,
    /// Contact interaction U in eV
    #[arg(long = "u-ev", allow_hyphen_values = true)]
    pub u_ev: Option<f64>,
    /// On-site energy ε₀ in eV
    #[arg(long = "epsilon0-ev", allow_hyphen_values = true)]
    pub epsilon0_ev: Option<f64>,
}

#[derive(Debug, Args)]
pub struct EigArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// JSON file with a preset or explicit params (an `eig` output file works)
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Write the JSON here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, help = STATE_HELP)]
    pub state: Option<String>,
    /// Window length in seconds, or "auto" for two beat periods
    #[arg(long = "t-max-s")]
    pub t_max_s: Option<Auto>,
    /// Number of samples, or "auto" for the sampling-rule minimum
    #[arg(long)]
    pub samples: Option<Auto>,
    /// Output directory for trajectory.csv, fits.json and alignment.json;
    /// without it the trajectory CSV goes to stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write plot.svg
    #[arg(long)]
    pub svg: bool,
    /// JSON run configuration; command-line flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 0.0)]
    pub ratio_min: f64,
    #[arg(long, default_value_t = 20.0)]
    pub ratio_max: f64,
    #[arg(long, default_value_t = 81)]
    pub points: usize,
    /// Fixed tunneling strength Δ in eV
    #[arg(long = "delta-ev", default_value_t = 1.0)]
    pub delta_ev: f64,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Panel id (3a, 3b, 3c, 3d, 4a, 4b, 4c) or "all"
    #[arg(long)]
    pub figure: String,
    /// Output directory; defaults to fig-<id>. With "all", one subdirectory
    /// per panel is created inside it.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Number of samples instead of the sampling-rule minimum
    #[arg(long)]
    pub samples: Option<usize>,
    /// Also write plot.svg
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    /// Print JSON instead of a text table
    #[arg(long)]
    pub json: bool,
    /// Write the output here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Failure of a command, mapped onto an exit code and a JSON error code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    State(StateSpecError),
    Library(Error),
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::State(_) => "state_spec",
            CliError::Library(e) => e.code(),
            CliError::Io { .. } => "io",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::State(_) => 2,
            CliError::Library(e) if e.is_usage() => 2,
            CliError::Library(_) | CliError::Io { .. } => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::State(e) => e.fmt(f),
            CliError::Library(e) => e.fmt(f),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Library(e)
    }
}

impl From<StateSpecError> for CliError {
    fn from(e: StateSpecError) -> Self {
        CliError::State(e)
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Serialize)]
struct ErrorDoc<'a> {
    error: &'a str,
    message: String,
}

fn report(err: &CliError, json: bool, stderr: &mut dyn Write) {
    let _ = if json {
        write!(
            stderr,
            "{}",
            serde_json::to_string(&ErrorDoc {
                error: err.code(),
                message: err.to_string(),
            })
            .expect("error document serializes")
                + "\n"
        )
    } else {
        writeln!(stderr, "error: {err}")
    };
}

/// Runs the command line `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let json = args.iter().any(|a| a == "--json-errors");
            if json {
                let message = e.kind().as_str().map_or_else(|| e.to_string(), str::to_owned);
                report(&CliError::Usage(format!("{message}: {}", first_line(&e.to_string()))), true, stderr);
            } else {
                let _ = write!(stderr, "{e}");
            }
            return 2;
        }
    };
    match dispatch(&cli.command, stdout) {
        Ok(()) => 0,
        Err(err) => {
            report(&err, cli.json_errors, stderr);
            err.exit_code()
        }
    }
}

fn first_line(s: &str) -> &str {
    s.lines().next().unwrap_or("").trim_start_matches("error: ")
}

fn dispatch(command: &Command, stdout: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Eig(a) => eig(a, stdout),
        Command::Evolve(a) => evolve(a, stdout),
        Command::Sweep(a) => sweep(a, stdout),
        Command::Reproduce(a) => reproduce(a),
        Command::Table1(a) => table(a, stdout),
    }
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => write_atomic(path, text.as_bytes()).map_err(io_err(path)),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(io_err(Path::new("<stdout>"))),
    }
}

fn load_config(path: Option<&Path>) -> Result<RunConfig, CliError> {
    match path {
        Some(p) => RunConfig::load(p),
        None => Ok(RunConfig::default()),
    }
}

/// Resolves `--preset` or explicit values against the config file. Exactly
/// one source of parameters must remain.
fn resolve_params(args: &ParamArgs, config: &RunConfig) -> Result<HamiltonianParams, CliError> {
    let explicit = args.delta_ev.is_some() || args.u_ev.is_some() || args.epsilon0_ev.is_some();
    if args.preset.is_some() && explicit {
        return Err(CliError::Usage(
            "give either --preset or explicit --delta-ev/--u-ev/--epsilon0-ev, not both".into(),
        ));
    }
    if let Some(name) = &args.preset {
        return Ok(preset(name)?.params);
    }
    if explicit {
        let (Some(delta), Some(u)) = (args.delta_ev, args.u_ev) else {
            return Err(CliError::Usage("explicit parameters need both --delta-ev and --u-ev".into()));
        };
        return Ok(HamiltonianParams::new(args.epsilon0_ev.unwrap_or(0.0), delta, u)?);
    }
    config
        .hamiltonian()?
        .ok_or_else(|| CliError::Usage("no parameters: give --preset, --delta-ev/--u-ev, or --config".into()))
}

struct EigDoc<'a> {
    params: &'a HamiltonianParams,
    es: &'a EigenSystem,
}

impl Serialize for EigDoc<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let value = serde_json::to_value(self.es).map_err(serde::ser::Error::custom)?;
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry(
            "params",
            &ParamsDoc {
                epsilon0_eV: Sci(self.params.epsilon0()),
                delta_eV: Sci(self.params.delta()),
                u_eV: Sci(self.params.u()),
            },
        )?;
        for key in ["energies_eV", "vectors", "gaps_rad_per_s"] {
            m.serialize_entry(key, &value[key])?;
        }
        m.end()
    }
}

#[allow(non_snake_case)]
#[derive(Serialize)]
struct ParamsDoc {
    epsilon0_eV: Sci,
    delta_eV: Sci,
    u_eV: Sci,
}

fn eig(args: &EigArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let config = load_config(args.config.as_deref())?;
    let params = resolve_params(&args.params, &config)?;
    let es = diagonalize(&build_hamiltonian(&params))?;
    let text = to_json_string(&EigDoc { params: &params, es: &es });
    emit(args.out.as_deref(), &text, stdout)
}

fn evolve(args: &EvolveArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let config = load_config(args.config.as_deref())?;
    let params = resolve_params(&args.params, &config)?;
    let spec = args
        .state
        .as_deref()
        .or(config.state.as_deref())
        .ok_or_else(|| CliError::Usage("--state is required (or \"state\" in --config)".into()))?;
    let psi0 = parse_state_spec(spec)?;

    let es = diagonalize(&build_hamiltonian(&params))?;
    let t_max = match args.t_max_s.or(config.t_max_s).unwrap_or(Auto::Auto) {
        Auto::Value(t) => t,
        Auto::Auto => 2.0 * beat_period(&params)?,
    };
    let grid = match args.samples.or(config.samples).unwrap_or(Auto::Auto) {
        Auto::Value(n) => {
            if n.fract() != 0.0 || n < 2.0 {
                return Err(CliError::Usage(format!("--samples must be an integer >= 2, got {n}")));
            }
            TimeGrid::new(0.0, t_max, n as usize)?
        }
        Auto::Auto => TimeGrid::auto(&es, t_max)?,
    };
    let analysis = analyze(&psi0, &params, &grid)?;

    let out = args.out.clone().or_else(|| config.out.clone());
    match out {
        Some(dir) => {
            let mut flags = config.emit.unwrap_or_default();
            flags.svg |= args.svg;
            analysis.write_bundle(&dir, flags).map_err(io_err(&dir))
        }
        None => emit(None, &analysis.to_csv_table().render(), stdout),
    }
}

fn sweep(args: &SweepArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let rows = ratio_sweep(args.ratio_min, args.ratio_max, args.points, args.delta_ev)?;
    emit(args.out.as_deref(), &sweep_table(&rows).render(), stdout)
}

fn reproduce(args: &ReproduceArgs) -> Result<(), CliError> {
    let all = args.figure.eq_ignore_ascii_case("all");
    let ids: Vec<FigureId> = if all {
        FigureId::ALL.to_vec()
    } else {
        vec![args.figure.parse()?]
    };
    let flags = Emit {
        svg: args.svg,
        ..Emit::default()
    };
    for id in ids {
        let scenario = FigureScenario::new(id);
        let analysis = match args.samples {
            None => run_figure(&scenario)?,
            Some(n) => {
                let period = beat_period(&scenario.preset.params)?;
                let grid = TimeGrid::new(0.0, scenario.beat_periods * period, n)?;
                analyze(&scenario.initial, &scenario.preset.params, &grid)?
            }
        };
        let dir = match (&args.out, all) {
            (Some(base), true) => base.join(format!("fig-{id}")),
            (Some(dir), false) => dir.clone(),
            (None, _) => PathBuf::from(format!("fig-{id}")),
        };
        analysis.write_bundle(&dir, flags).map_err(io_err(&dir))?;
    }
    Ok(())
}

fn table(args: &Table1Args, stdout: &mut dyn Write) -> Result<(), CliError> {
    let rows = table1();
    let text = if args.json {
        to_json_string(&rows)
    } else {
        let mut s = format!(
            "{:<18} {:>6} {:>14} {:>14} {:>12}\n",
            "preset", "U/Δ", "published_s", "computed_s", "discrepancy"
        );
        for r in &rows {
            s += &format!(
                "{:<18} {:>6.2} {:>14.4e} {:>14.4e} {:>+11.1}%\n",
                r.preset.name(),
                r.ratio,
                r.published_s,
                r.computed_s,
                100.0 * r.discrepancy()
            );
        }
        s
    };
    emit(args.out.as_deref(), &text, stdout)
}
