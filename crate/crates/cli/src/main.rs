//! `qsep`: classify Bell-diagonal two-qubit states and emit the data behind
//! the conditional-entropy plots.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 domain error
//! (unphysical state, invalid weights), 4 numerical failure.

mod figure;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use qsep_core::{
    bell_diagonal_density, bell_projectors, classify, conditional_entropy_bell,
    criticality::InflexionSearch, hermitian_eigenvalues, order_parameter_with, partial_trace,
    region_scan, separability::ray_exit, threshold_x, tsallis_entropy, AxisSpec, BellState,
    CMatrix, Criterion, DensityMatrix, EntropicIndex, Error, Grid, RayDirection, RealSpectrum,
    Subsystem,
};

use figure::Figure;
use output::{emit, fmt_f64, num, nums, opt_num, Csv, OutputRecord};

#[derive(Debug, Parser)]
#[command(
    name = "qsep",
    version,
    about = "Tsallis conditional-entropy separability of Bell-diagonal two-qubit states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tsallis entropies S_q(A+B), S_q(A), S_q(B).
    Entropy(EntropyArgs),
    /// Conditional entropy S_q(B|A) = S_q(A|B).
    Cond(CondArgs),
    /// Separable / entangled / boundary verdict.
    Classify(ClassifyArgs),
    /// Ray parameter where S_q(A|B) first reaches zero.
    Threshold(ThresholdArgs),
    /// Inflexion point q_I of S_q(A|B) and eta = 1/(1+q_I).
    Qinflex(QinflexArgs),
    /// Write figure data as CSV.
    Figure(FigureArgs),
    /// Classify every physical point of a grid, CSV output.
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct Common {
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "state")]
struct StateInput {
    /// Bell-diagonal parameters "x,y,z".
    #[arg(long, value_parser = parse_xyz, allow_hyphen_values = true)]
    xyz: Option<[f64; 3]>,
    /// Bell-basis weights "w_phi+,w_phi-,w_psi+,w_psi-".
    #[arg(long, value_parser = parse_weights, allow_hyphen_values = true)]
    weights: Option<[f64; 4]>,
}

#[derive(Debug, Args)]
struct EntropyArgs {
    #[command(flatten)]
    state: StateInput,
    #[arg(long, allow_hyphen_values = true)]
    q: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct CondArgs {
    #[arg(long, value_parser = parse_xyz, allow_hyphen_values = true)]
    xyz: [f64; 3],
    #[arg(long, allow_hyphen_values = true)]
    q: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Ppt,
    ArAsymptotic,
    ArScan,
}

impl From<Method> for Criterion {
    fn from(m: Method) -> Self {
        match m {
            Method::Ppt => Criterion::Ppt,
            Method::ArAsymptotic => Criterion::ArAsymptotic,
            Method::ArScan => Criterion::ArScan,
        }
    }
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long, value_parser = parse_xyz, allow_hyphen_values = true)]
    xyz: [f64; 3],
    #[arg(long, value_enum, default_value_t = Method::ArAsymptotic)]
    method: Method,
    /// Defaults to 1e-9 for ppt and ar-asymptotic, 1e-7 for ar-scan.
    #[arg(long)]
    boundary_tol: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct ThresholdArgs {
    /// Entropic index q > 1, or "inf" for the asymptotic plane.
    #[arg(long)]
    q: f64,
    /// diag, axis, edge, or an explicit direction "dx,dy,dz".
    #[arg(long, value_parser = parse_direction, allow_hyphen_values = true, default_value = "diag")]
    direction: RayDirection<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct QinflexArgs {
    #[arg(long, value_parser = parse_xyz, allow_hyphen_values = true)]
    xyz: [f64; 3],
    #[arg(long, default_value_t = 200.0)]
    q_max: f64,
    #[arg(long, default_value_t = 1e-8)]
    refine_tol: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct FigureArgs {
    #[arg(value_enum)]
    which: Figure,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; output does not depend on this.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
}

#[derive(Debug, Args)]
struct ScanArgs {
    /// Axis spec "min:max:points".
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true, default_value = "-3:1:21")]
    x: AxisSpec<f64>,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true, default_value = "-3:1:21")]
    y: AxisSpec<f64>,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true, default_value = "-3:1:21")]
    z: AxisSpec<f64>,
    #[arg(long, value_enum, default_value_t = Method::ArAsymptotic)]
    method: Method,
    #[arg(long)]
    boundary_tol: Option<f64>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_list<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(format!(
            "expected {N} comma-separated numbers, got {}",
            parts.len()
        ));
    }
    let mut out = [0.0; N];
    for (slot, p) in out.iter_mut().zip(parts) {
        let v: f64 = p.parse().map_err(|e| format!("'{p}': {e}"))?;
        if !v.is_finite() {
            return Err(format!("'{p}' is not finite"));
        }
        *slot = v;
    }
    Ok(out)
}

fn parse_xyz(s: &str) -> Result<[f64; 3], String> {
    parse_list::<3>(s)
}

fn parse_weights(s: &str) -> Result<[f64; 4], String> {
    parse_list::<4>(s)
}

fn parse_direction(s: &str) -> Result<RayDirection<f64>, String> {
    match s {
        "diag" => Ok(RayDirection::Diag),
        "axis" => Ok(RayDirection::Axis),
        "edge" => Ok(RayDirection::Edge),
        other => parse_list::<3>(other).map(RayDirection::Custom),
    }
}

fn parse_axis(s: &str) -> Result<AxisSpec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [min, max, points] = parts[..] else {
        return Err(format!("expected min:max:points, got '{s}'"));
    };
    let min: f64 = min.parse().map_err(|e| format!("min '{min}': {e}"))?;
    let max: f64 = max.parse().map_err(|e| format!("max '{max}': {e}"))?;
    let points: usize = points
        .parse()
        .map_err(|e| format!("points '{points}': {e}"))?;
    Ok(AxisSpec::new(min, max, points))
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Core(e) if e.is_numerical() => 4,
            CliError::Core(
                Error::InvalidGrid(_)
                | Error::InvalidDirection(_)
                | Error::NonFiniteIndex(_)
                | Error::EmptyQGrid,
            ) => 2,
            CliError::Core(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn state_of(xyz: [f64; 3]) -> BellState {
    BellState::new(xyz[0], xyz[1], xyz[2])
}

fn index(q: f64) -> CliResult<EntropicIndex<f64>> {
    Ok(EntropicIndex::new(q)?)
}

fn finish(record: OutputRecord, common: &Common) -> CliResult<()> {
    let text = match common.format {
        Format::Json => record.to_json(),
        Format::Csv => record.to_csv(),
    };
    Ok(emit(&text, common.out.as_deref())?)
}

fn cmd_entropy(a: &EntropyArgs) -> CliResult<()> {
    let q = index(a.q)?;
    let (rho, record): (DensityMatrix, OutputRecord) = match (a.state.xyz, a.state.weights) {
        (Some(xyz), None) => (
            bell_diagonal_density(&state_of(xyz))?,
            OutputRecord::new("entropy").param("xyz", nums(&xyz)),
        ),
        (None, Some(w)) => {
            RealSpectrum::stochastic(w.to_vec())?;
            let mut m = CMatrix::zeros(4)?;
            for (p, wk) in bell_projectors::<f64>().iter().zip(w) {
                m = &m + &p.scale(wk);
            }
            (
                DensityMatrix::new(m)?,
                OutputRecord::new("entropy").param("weights", nums(&w)),
            )
        }
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --xyz or --weights".into(),
            ))
        }
    };
    let joint = hermitian_eigenvalues(rho.matrix())?;
    let ra = hermitian_eigenvalues(&partial_trace(rho.matrix(), Subsystem::A)?)?;
    let rb = hermitian_eigenvalues(&partial_trace(rho.matrix(), Subsystem::B)?)?;
    let record = record
        .param("q", num(a.q))
        .field("S_q_AB", num(tsallis_entropy(&joint, q)?))
        .field("S_q_A", num(tsallis_entropy(&ra, q)?))
        .field("S_q_B", num(tsallis_entropy(&rb, q)?));
    finish(record, &a.common)
}

fn cmd_cond(a: &CondArgs) -> CliResult<()> {
    let v = conditional_entropy_bell(&state_of(a.xyz), index(a.q)?)?;
    let record = OutputRecord::new("cond")
        .param("xyz", nums(&a.xyz))
        .param("q", num(a.q))
        .field("value", num(v.value))
        .field("S_q_B_given_A", num(v.value))
        .field("S_q_A_given_B", num(v.swapped().value));
    finish(record, &a.common)
}

fn cmd_classify(a: &ClassifyArgs) -> CliResult<()> {
    let criterion = Criterion::from(a.method);
    let tol = a.boundary_tol.unwrap_or(criterion.default_tol());
    let c = classify(&state_of(a.xyz), criterion, tol)?;
    let record = OutputRecord::new("classify")
        .param("xyz", nums(&a.xyz))
        .param("method", Value::String(criterion.as_str().into()))
        .param("boundary_tol", num(tol))
        .field("verdict", Value::String(c.verdict.as_str().into()))
        .field("criterion", Value::String(c.criterion.as_str().into()))
        .field("witness", num(c.witness))
        .field("witness_q", opt_num(c.witness_q));
    finish(record, &a.common)
}

fn direction_label(d: &RayDirection<f64>) -> Value {
    match d {
        RayDirection::Diag => Value::String("diag".into()),
        RayDirection::Axis => Value::String("axis".into()),
        RayDirection::Edge => Value::String("edge".into()),
        RayDirection::Custom(v) => nums(v),
    }
}

fn cmd_threshold(a: &ThresholdArgs) -> CliResult<()> {
    let t = threshold_x(a.q, &a.direction)?;
    let d = a.direction.vector()?;
    let record = OutputRecord::new("threshold")
        .param("q", num(a.q))
        .param("direction", direction_label(&a.direction))
        .field("threshold", num(t))
        .field("point", nums(&[t * d[0], t * d[1], t * d[2]]))
        .field("t_max", num(ray_exit(&a.direction)?));
    finish(record, &a.common)
}

fn cmd_qinflex(a: &QinflexArgs) -> CliResult<()> {
    if a.q_max.is_nan() || a.q_max <= 1e-3 || a.refine_tol.is_nan() || a.refine_tol <= 0.0 {
        return Err(CliError::Usage(
            "--q-max must exceed 1e-3 and --refine-tol be positive".into(),
        ));
    }
    let search = InflexionSearch {
        q_max: a.q_max,
        refine_tol: a.refine_tol,
        ..InflexionSearch::default()
    };
    let r = order_parameter_with(&state_of(a.xyz), &search)?;
    let diagnostics = match &r.diagnostics {
        None => Value::Null,
        Some(d) => {
            let mut m = serde_json::Map::new();
            m.insert("bracket".into(), nums(&[d.bracket.0, d.bracket.1]));
            m.insert("curvature_at_floor".into(), num(d.curvature_at_floor));
            m.insert("curvature_at_max".into(), num(d.curvature_at_max));
            m.insert(
                "additional_sign_changes".into(),
                nums(&d.additional_sign_changes),
            );
            Value::Object(m)
        }
    };
    let record = OutputRecord::new("qinflex")
        .param("xyz", nums(&a.xyz))
        .param("q_max", num(a.q_max))
        .param("refine_tol", num(a.refine_tol))
        .field("q_inflexion", opt_num(r.q_inflexion))
        .field("eta", num(r.eta))
        .field("vertex", Value::Bool(r.vertex))
        .field("diagnostics", diagnostics);
    finish(record, &a.common)
}

fn with_jobs<T: Send>(jobs: u16, f: impl FnOnce() -> T + Send) -> CliResult<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(usize::from(jobs))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {jobs} workers: {e}")))?;
    Ok(pool.install(f))
}

fn cmd_figure(a: &FigureArgs) -> CliResult<()> {
    let text = with_jobs(a.jobs, || figure::render(a.which))??;
    Ok(emit(&text, a.out.as_deref())?)
}

fn cmd_scan(a: &ScanArgs) -> CliResult<()> {
    let grid = Grid {
        x: a.x,
        y: a.y,
        z: a.z,
    };
    let criterion = Criterion::from(a.method);
    let tol = a.boundary_tol.unwrap_or(criterion.default_tol());
    let region = with_jobs(a.jobs, || region_scan(&grid, criterion, tol))??;
    let mut csv = Csv::with_header(&[
        "x",
        "y",
        "z",
        "physical",
        "verdict",
        "criterion",
        "witness",
        "witness_q",
    ]);
    for cell in &region.cells {
        let s = cell.state;
        let (verdict, crit, witness, witness_q) = match cell.classification {
            Some(c) => (
                c.verdict.as_str(),
                c.criterion.as_str(),
                fmt_f64(c.witness),
                c.witness_q.map_or("nan".into(), fmt_f64),
            ),
            None => ("na", "na", "nan".into(), "nan".into()),
        };
        csv.row([
            fmt_f64(s.x),
            fmt_f64(s.y),
            fmt_f64(s.z),
            cell.physical.to_string(),
            verdict.into(),
            crit.into(),
            witness,
            witness_q,
        ]);
    }
    Ok(emit(&csv.into_string(), a.out.as_deref())?)
}

fn run(cli: Cli) -> CliResult<()> {
    match &cli.command {
        Command::Entropy(a) => cmd_entropy(a),
        Command::Cond(a) => cmd_cond(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Threshold(a) => cmd_threshold(a),
        Command::Qinflex(a) => cmd_qinflex(a),
        Command::Figure(a) => cmd_figure(a),
        Command::Scan(a) => cmd_scan(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qsep: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
