//! `uncert` — command-line surface of the uncertainty certification
//! library.
//!
//! Subcommands run the weighted kernels, the two-sided bounds, the Hermite
//! oracle, target sweeps, the identity checks, and the end-to-end
//! verification suite, writing CSV or JSON.
//!
//! Exit codes: 0 success, 1 invalid arguments (including unparseable
//! command lines), 2 accuracy failure inside a computation, 3 verification
//! failure (`verify` only).
//!
//! Output is deterministic: identical argument vectors produce
//! byte-identical bytes.  CSV uses `.` decimals, `,` separators, LF line
//! endings, a `# key = value` metadata block, then a header row naming the
//! columns.  JSON is an object `{"metadata": …, "rows": …}` with keys in
//! sorted order.  Real numbers carry 17 significant digits in CSV
//! (`{:.16e}`) and shortest round-trip form in JSON, so every value
//! survives a parse round-trip exactly.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use fourier_uncertainty::acceptance;
use fourier_uncertainty::dualbound::{
    build_phi, duality_upper_bound_at, duality_upper_bound_auto, phi_hat, phi_hat_deficit,
};
use fourier_uncertainty::extremizer::{
    best_approx_error_cos, calibrated_lambda, cos_norm_squared, radial_lower_bound,
    tensor_lower_bound, vemuri_norm_identity,
};
use fourier_uncertainty::kernel::{nikolskii_report, WeightSpec};
use fourier_uncertainty::oracle::{asymptotic_sweep, oracle_sharp_constant};
use fourier_uncertainty::Error;

/// Split ratio used for explicitly parameterized upper bounds; matches the
/// default of the automatic search.
const RHO: f64 = 0.5;

#[derive(Parser)]
#[command(
    name = "uncert",
    version,
    about = "Two-sided numerical certification of a sharp Gaussian uncertainty principle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Growth table of the weighted point-evaluation (Nikolskii) constants.
    Kernel(KernelArgs),
    /// Localized test function: transform values and deficits on a grid.
    Phi(PhiArgs),
    /// Duality upper bound for the Gaussian-weighted functional.
    Upper(UpperArgs),
    /// Constructed lower bound from the near-extremal witness.
    Lower(LowerArgs),
    /// Hermite-Gram oracle value of the sharp constant (p = q = 2).
    Oracle(OracleArgs),
    /// Lower bound, oracle, and upper bound across a grid of targets.
    Sweep(SweepArgs),
    /// Best-approximation error of the high-frequency cosine.
    Approx(ApproxArgs),
    /// Gaussian-weighted norm identity: convolution side against series side.
    Vemuri(VemuriArgs),
    /// Radial lower bound in dimensions two and three.
    Radial(RadialArgs),
    /// Run the verification suite; exits 3 when any check fails.
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format; each subcommand has its natural default.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this path instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct KernelArgs {
    /// Moment exponent m >= 0 of the weight |x - alpha|^{pm}.
    #[arg(long, default_value_t = 0.0)]
    m: f64,
    /// Center offset of the weight (the weight family's alpha).
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Norm exponent p in [1, inf).
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Largest kernel degree; the table runs from max(1, ceil(m)) up to here.
    #[arg(long)]
    m0: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct PhiArgs {
    /// Support half-width of the test function.
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    /// Moment exponent carried by the first factor's weight.
    #[arg(long, default_value_t = 0.0)]
    m: f64,
    /// Flatness order: moments 1 .. m0-1 vanish.
    #[arg(long)]
    m0: usize,
    /// Norm exponent the factor kernels are built for.
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Dimension.
    #[arg(long, default_value_t = 1)]
    d: usize,
    /// Evaluation frequencies: a scalar or a grid `start:stop:step`.
    #[arg(long)]
    y: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct UpperArgs {
    /// Target points: a scalar or a grid `start:stop:step`.
    #[arg(long)]
    y: String,
    /// Gaussian weight parameter, 0 < alpha < 1.
    #[arg(long)]
    alpha: f64,
    /// Configuration-side norm exponent.
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Frequency-side norm exponent.
    #[arg(long, default_value_t = 2.0)]
    q: f64,
    /// Dimension.
    #[arg(long, default_value_t = 1)]
    d: usize,
    /// Support proportionality; requires --n, disables the automatic search.
    #[arg(long)]
    k: Option<f64>,
    /// Flatness multiplier; requires --k, disables the automatic search.
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct LowerArgs {
    /// Target points: a scalar or a grid `start:stop:step`.
    #[arg(long)]
    y: String,
    /// Gaussian weight parameter, 0 < alpha < 1.
    #[arg(long)]
    alpha: f64,
    /// Configuration-side norm exponent (> 1).
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Frequency-side norm exponent (> 1).
    #[arg(long, default_value_t = 2.0)]
    q: f64,
    /// Dimension (tensorized witness for d >= 2).
    #[arg(long, default_value_t = 1)]
    d: usize,
    /// Dilation proportion; calibrated automatically when omitted.
    #[arg(long)]
    lambda: Option<f64>,
    /// Degree proportionality constant of the witness construction.
    #[arg(long, default_value_t = 0.05)]
    c: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OracleArgs {
    /// Target points: a scalar or a grid `start:stop:step`.
    #[arg(long)]
    y: String,
    /// Gaussian weight parameter, 0 < alpha < 1.
    #[arg(long)]
    alpha: f64,
    /// Initial Hermite truncation; doubled until converged (cap 1024).
    #[arg(long, default_value_t = 64)]
    nmax: usize,
    /// Relative convergence tolerance; <= 0 evaluates once at --nmax.
    /// Convergence slows as y grows, so tight tolerances hit the
    /// truncation cap (exit 2, best estimate in the message).
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Gaussian weight parameter, 0 < alpha < 1.
    #[arg(long)]
    alpha: f64,
    /// Configuration-side norm exponent (the sweep supports 2 only).
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Frequency-side norm exponent (the sweep supports 2 only).
    #[arg(long, default_value_t = 2.0)]
    q: f64,
    /// Target points: a scalar or a grid `start:stop:step`.
    #[arg(long)]
    y: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ApproxArgs {
    /// Cosine frequency.
    #[arg(long = "D")]
    freq: f64,
    /// Polynomial degree of the approximation space.
    #[arg(long = "N")]
    degree: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VemuriArgs {
    /// Support half-width of the frequency-side profile.
    #[arg(long, default_value_t = 0.5)]
    delta: f64,
    /// Legendre coefficients of the profile, by degree; defaults to the
    /// box profile `1` when omitted.
    #[arg(value_name = "COEFF")]
    coeffs: Vec<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct RadialArgs {
    /// Ambient dimension, 2 or 3.
    #[arg(long, default_value_t = 3)]
    d: usize,
    /// Target radii: a scalar or a grid `start:stop:step`.
    #[arg(long)]
    y: String,
    /// Gaussian weight parameter, 0 < alpha < 1.
    #[arg(long)]
    alpha: f64,
    /// Dilation proportion of the radial witness.
    #[arg(long, default_value_t = 0.05)]
    lambda: f64,
    /// Degree proportionality constant of the witness construction.
    #[arg(long, default_value_t = 0.05)]
    c: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Write the report lines to this path instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failed run: the exit code plus the message for stderr.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Failure {
        let code = match err {
            Error::InvalidArgument(_) => 1,
            Error::AccuracyFailure { .. } => 2,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

/// One table cell; knows how to render itself in both formats.
#[derive(Clone, Copy)]
enum Cell {
    Real(f64),
    Int(u64),
    Flag(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match *self {
            Cell::Real(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Flag(v) => v.to_string(),
        }
    }

    fn json(&self) -> Value {
        match *self {
            // Non-finite reals have no JSON number form and become null.
            Cell::Real(v) => Value::from(v),
            Cell::Int(v) => Value::from(v),
            Cell::Flag(v) => Value::from(v),
        }
    }
}

/// One metadata entry; rendered as `# key = value` in CSV and as an object
/// field in JSON.
enum Meta {
    Real(f64),
    Int(u64),
    Text(String),
}

impl Meta {
    fn csv(&self) -> String {
        match self {
            Meta::Real(v) => format!("{v:.16e}"),
            Meta::Int(v) => v.to_string(),
            Meta::Text(v) => v.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Meta::Real(v) => Value::from(*v),
            Meta::Int(v) => Value::from(*v),
            Meta::Text(v) => Value::from(v.as_str()),
        }
    }
}

/// A computed result: ordered metadata, named columns, rows of cells.
struct Table {
    metadata: Vec<(&'static str, Meta)>,
    columns: &'static [&'static str],
    rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(command: &str, columns: &'static [&'static str]) -> Table {
        Table {
            metadata: vec![
                ("command", Meta::Text(command.to_string())),
                (
                    "versions",
                    Meta::Text(format!(
                        "fourier-uncertainty {}, fourier-uncertainty-cli {}",
                        fourier_uncertainty::VERSION,
                        env!("CARGO_PKG_VERSION")
                    )),
                ),
            ],
            columns,
            rows: Vec::new(),
        }
    }

    fn with(mut self, key: &'static str, value: Meta) -> Table {
        self.metadata.push((key, value));
        self
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn to_csv(&self) -> String {
        let mut text = String::new();
        for (key, value) in &self.metadata {
            text.push_str(&format!("# {key} = {}\n", value.csv()));
        }
        text.push_str(&self.columns.join(","));
        text.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            text.push_str(&cells.join(","));
            text.push('\n');
        }
        text
    }

    fn to_json(&self) -> String {
        let mut meta = Map::new();
        for (key, value) in &self.metadata {
            meta.insert((*key).to_string(), value.json());
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut object = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    object.insert((*name).to_string(), cell.json());
                }
                Value::Object(object)
            })
            .collect();
        let mut root = Map::new();
        root.insert("metadata".to_string(), Value::Object(meta));
        root.insert("rows".to_string(), Value::from(rows));
        let mut text = serde_json::to_string_pretty(&Value::Object(root))
            .expect("tables always serialize");
        text.push('\n');
        text
    }
}

/// Parses `--y`: either a scalar or an inclusive grid `start:stop:step`.
/// Endpoints count as inside the grid within an absolute 1e-12.
fn parse_grid(text: &str) -> Result<Vec<f64>, Failure> {
    let bad = |msg: &str| invalid(format!("grid '{text}': {msg}"));
    if !text.contains(':') {
        let value: f64 = text
            .parse()
            .map_err(|_| bad("not a number"))?;
        if !value.is_finite() {
            return Err(bad("not finite"));
        }
        return Ok(vec![value]);
    }
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(bad("expected start:stop:step"));
    }
    let parse = |part: &str| -> Result<f64, Failure> {
        let value: f64 = part.parse().map_err(|_| bad("not a number"))?;
        if !value.is_finite() {
            return Err(bad("not finite"));
        }
        Ok(value)
    };
    let start = parse(parts[0])?;
    let stop = parse(parts[1])?;
    let step = parse(parts[2])?;
    if !(step > 0.0) {
        return Err(bad("step must be positive"));
    }
    if stop < start - 1e-12 {
        return Err(bad("stop must not precede start"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    if count > 1_000_000 {
        return Err(bad("more than 1e6 points"));
    }
    let mut grid = Vec::with_capacity(count + 1);
    for i in 0..=count {
        let value = start + step * i as f64;
        if value <= stop + 1e-12 {
            grid.push(value);
        }
    }
    Ok(grid)
}

fn run_kernel(args: KernelArgs) -> Result<Table, Failure> {
    let weight = WeightSpec::new(args.m, args.alpha, args.p, 1)?;
    let floor = (args.m.ceil() as usize).max(1);
    if args.m0 < floor {
        return Err(invalid(format!(
            "--m0 must be at least max(1, ceil(m)) = {floor}"
        )));
    }
    let range: Vec<usize> = (floor..=args.m0).collect();
    let report = nikolskii_report(&weight, &range, args.p)?;
    let mut table = Table::new("kernel", &["m0", "kernel_norm", "geometric_bound", "shifted_bound"])
        .with("m", Meta::Real(args.m))
        .with("alpha", Meta::Real(args.alpha))
        .with("p", Meta::Real(args.p))
        .with("d", Meta::Int(1))
        .with("c_geometric", Meta::Real(report.c_geometric))
        .with("c_shifted", Meta::Real(report.c_shifted));
    for row in &report.rows {
        table.push(vec![
            Cell::Int(row.m0 as u64),
            Cell::Real(row.kernel_norm),
            Cell::Real(row.geometric_bound),
            Cell::Real(row.shifted_bound),
        ]);
    }
    Ok(table)
}

fn run_phi(args: PhiArgs) -> Result<Table, Failure> {
    let grid = parse_grid(&args.y)?;
    let spec = build_phi(args.delta, args.m, args.m0, args.p, args.d)?;
    let mut table = Table::new("phi", &["point", "phi", "phi_hat_re", "phi_hat_im", "deficit"])
        .with("delta", Meta::Real(args.delta))
        .with("m", Meta::Real(args.m))
        .with("m0", Meta::Int(args.m0 as u64))
        .with("p", Meta::Real(args.p))
        .with("d", Meta::Int(args.d as u64));
    for &point in &grid {
        let mut coords = vec![0.0; args.d];
        coords[0] = point;
        let transform = phi_hat(&spec, &coords)?;
        let deficit = phi_hat_deficit(&spec, &coords)?.norm();
        table.push(vec![
            Cell::Real(point),
            Cell::Real(spec.eval(&coords)),
            Cell::Real(transform.re),
            Cell::Real(transform.im),
            Cell::Real(deficit),
        ]);
    }
    Ok(table)
}

fn run_upper(args: UpperArgs) -> Result<Table, Failure> {
    let grid = parse_grid(&args.y)?;
    let explicit = match (args.k, args.n) {
        (Some(k), Some(n)) => Some((k, n)),
        (None, None) => None,
        _ => return Err(invalid("--k and --n must be given together")),
    };
    let mut table = Table::new(
        "upper",
        &["y", "value", "term_i", "term_ii", "m", "delta", "m0", "fallback"],
    )
    .with("alpha", Meta::Real(args.alpha))
    .with("p", Meta::Real(args.p))
    .with("q", Meta::Real(args.q))
    .with("d", Meta::Int(args.d as u64));
    if let Some((k, n)) = explicit {
        table = table
            .with("k", Meta::Real(k))
            .with("n", Meta::Int(n as u64))
            .with("rho", Meta::Real(RHO));
    }
    for &y in &grid {
        let bound = match explicit {
            Some((k, n)) => {
                duality_upper_bound_at(y, args.alpha, RHO, k, n, args.p, args.q, args.d)?
            }
            None => duality_upper_bound_auto(y, args.alpha, args.p, args.q, args.d)?,
        };
        table.push(vec![
            Cell::Real(y),
            Cell::Real(bound.value),
            Cell::Real(bound.term_i),
            Cell::Real(bound.term_ii),
            Cell::Int(bound.m as u64),
            Cell::Real(bound.delta),
            Cell::Int(bound.m0 as u64),
            Cell::Flag(bound.used_fallback),
        ]);
    }
    Ok(table)
}

fn run_lower(args: LowerArgs) -> Result<Table, Failure> {
    let grid = parse_grid(&args.y)?;
    let lambda = match args.lambda {
        Some(value) => value,
        None => calibrated_lambda(args.alpha, args.p, args.q, args.c)?,
    };
    let mut table = Table::new("lower", &["y", "value"])
        .with("alpha", Meta::Real(args.alpha))
        .with("p", Meta::Real(args.p))
        .with("q", Meta::Real(args.q))
        .with("d", Meta::Int(args.d as u64))
        .with("lambda", Meta::Real(lambda))
        .with("c", Meta::Real(args.c));
    for &y in &grid {
        let value = tensor_lower_bound(args.d, y, args.alpha, lambda, args.c, args.p, args.q)?;
        table.push(vec![Cell::Real(y), Cell::Real(value)]);
    }
    Ok(table)
}

fn run_oracle(args: OracleArgs) -> Result<Table, Failure> {
    let grid = parse_grid(&args.y)?;
    let mut table = Table::new(
        "oracle",
        &["y", "value", "n_used", "converged", "last_change"],
    )
    .with("alpha", Meta::Real(args.alpha))
    .with("p", Meta::Real(2.0))
    .with("q", Meta::Real(2.0))
    .with("d", Meta::Int(1))
    .with("nmax", Meta::Int(args.nmax as u64))
    .with("tol", Meta::Real(args.tol));
    for &y in &grid {
        let value = oracle_sharp_constant(y, args.alpha, args.nmax, args.tol)?;
        table.push(vec![
            Cell::Real(y),
            Cell::Real(value.value),
            Cell::Int(value.n_used as u64),
            Cell::Flag(value.converged),
            Cell::Real(value.last_change),
        ]);
    }
    Ok(table)
}

fn run_sweep(args: SweepArgs) -> Result<Table, Failure> {
    if args.p != 2.0 || args.q != 2.0 {
        return Err(invalid("the sweep supports p = q = 2 only"));
    }
    let grid = parse_grid(&args.y)?;
    let rows = asymptotic_sweep(args.alpha, &grid)?;
    let mut table = Table::new(
        "sweep",
        &["y", "lower", "oracle", "upper", "asymptote", "ratio_lower", "ratio_oracle", "ratio_upper"],
    )
    .with("alpha", Meta::Real(args.alpha))
    .with("p", Meta::Real(args.p))
    .with("q", Meta::Real(args.q))
    .with("d", Meta::Int(1));
    for row in &rows {
        table.push(vec![
            Cell::Real(row.y),
            Cell::Real(row.lower_bound),
            Cell::Real(row.oracle_value),
            Cell::Real(row.upper_bound),
            Cell::Real(row.asymptote),
            Cell::Real(row.ratio_lower),
            Cell::Real(row.ratio_oracle),
            Cell::Real(row.ratio_upper),
        ]);
    }
    Ok(table)
}

fn run_approx(args: ApproxArgs) -> Result<Table, Failure> {
    let error = best_approx_error_cos(args.freq, args.degree)?;
    let norm = cos_norm_squared(args.freq).sqrt();
    let mut table = Table::new("approx", &["E_N", "norm", "ratio"])
        .with("D", Meta::Real(args.freq))
        .with("N", Meta::Int(args.degree as u64));
    table.push(vec![
        Cell::Real(error),
        Cell::Real(norm),
        Cell::Real(error / norm),
    ]);
    Ok(table)
}

fn run_vemuri(args: VemuriArgs) -> Result<Table, Failure> {
    let coeffs = if args.coeffs.is_empty() {
        vec![1.0]
    } else {
        args.coeffs.clone()
    };
    let (lhs, rhs) = vemuri_norm_identity(&coeffs, args.delta)?;
    let rendered: Vec<String> = coeffs.iter().map(|c| format!("{c:.16e}")).collect();
    let mut table = Table::new("vemuri", &["lhs", "rhs", "ratio"])
        .with("alpha", Meta::Real(std::f64::consts::FRAC_1_SQRT_2))
        .with("delta", Meta::Real(args.delta))
        .with("coefficients", Meta::Text(rendered.join(" ")));
    table.push(vec![
        Cell::Real(lhs),
        Cell::Real(rhs),
        Cell::Real(lhs / rhs),
    ]);
    Ok(table)
}

fn run_radial(args: RadialArgs) -> Result<Table, Failure> {
    let grid = parse_grid(&args.y)?;
    let mut table = Table::new("radial", &["y", "value"])
        .with("alpha", Meta::Real(args.alpha))
        .with("p", Meta::Real(2.0))
        .with("q", Meta::Real(2.0))
        .with("d", Meta::Int(args.d as u64))
        .with("lambda", Meta::Real(args.lambda))
        .with("c", Meta::Real(args.c));
    for &y in &grid {
        let value = radial_lower_bound(args.d, y, args.alpha, args.lambda, args.c)?;
        table.push(vec![Cell::Real(y), Cell::Real(value)]);
    }
    Ok(table)
}

/// Exit code of the verification suite: 0 all green, 3 otherwise.
fn verify_exit_code(reports: &[acceptance::CriterionReport]) -> u8 {
    if reports.iter().all(|r| r.passed) {
        0
    } else {
        3
    }
}

fn run_verify(args: VerifyArgs) -> Result<u8, Failure> {
    let reports = acceptance::run_all();
    let mut text = String::new();
    for report in &reports {
        text.push_str(&report.line());
        text.push('\n');
    }
    deliver(&text, args.out.as_deref())?;
    Ok(verify_exit_code(&reports))
}

fn deliver(text: &str, out: Option<&std::path::Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit(table: Table, output: OutputArgs, default: Format) -> Result<u8, Failure> {
    let format = output.format.unwrap_or(default);
    let text = match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    deliver(&text, output.out.as_deref())?;
    Ok(0)
}

/// Detaches the output options so the remaining arguments can move into
/// the subcommand runner.
fn take_output(output: &mut OutputArgs) -> OutputArgs {
    OutputArgs {
        format: output.format.take(),
        out: output.out.take(),
    }
}

fn dispatch(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Kernel(mut args) => {
            let output = take_output(&mut args.output);
            emit(run_kernel(args)?, output, Format::Csv)
        }
        Command::Phi(mut args) => {
            let output = take_output(&mut args.output);
            emit(run_phi(args)?, output, Format::Csv)
        }
        Command::Upper(mut args) => {
            let output = take_output(&mut args.output);
            emit(run_upper(args)?, output, Format::Csv)
        }
        Command::Lower(mut args) => {
            let output = take_output(&mut args.output);
            emit(run_lower(args)?, output, Format::Csv)
        }
        Command::Oracle(mut args) => {
            let output = take_output(&mut args.output);
            emit(run_oracle(args)?, output, Format::Csv)
        }
        Command::Sweep(mut args) => {
            let output = take_output(&mut args.output);
            emit(run_sweep(args)?, output, Format::Csv)
        }
        Command::Approx(mut args) => {
            let output = take_output(&mut args.output);
            emit(run_approx(args)?, output, Format::Json)
        }
        Command::Vemuri(mut args) => {
            let output = take_output(&mut args.output);
            emit(run_vemuri(args)?, output, Format::Json)
        }
        Command::Radial(mut args) => {
            let output = take_output(&mut args.output);
            emit(run_radial(args)?, output, Format::Csv)
        }
        Command::Verify(args) => run_verify(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests print on stdout and succeed; true
            // parse errors print on stderr and exit 1.
            let to_stderr = err.use_stderr();
            let _ = err.print();
            return if to_stderr {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parses_scalars_and_ranges() {
        assert_eq!(parse_grid("4.5").unwrap(), vec![4.5]);
        let grid = parse_grid("4:8:0.5").unwrap();
        assert_eq!(grid.len(), 9);
        assert_eq!(grid[0], 4.0);
        assert_eq!(grid[8], 8.0);
        // A stop that misses the last step by well under 1e-12 still counts.
        let nearly = parse_grid("0:0.9999999999999999:0.25").unwrap();
        assert_eq!(nearly.len(), 5);
        // Single-point range.
        assert_eq!(parse_grid("6:6:1").unwrap(), vec![6.0]);
    }

    #[test]
    fn grid_rejects_malformed_input() {
        for text in ["abc", "1:2", "1:2:3:4", "4:8:0", "4:8:-1", "8:4:1", "nan"] {
            assert!(parse_grid(text).is_err(), "{text} should be rejected");
        }
    }

    #[test]
    fn cells_render_full_precision_csv() {
        assert_eq!(Cell::Real(0.5).csv(), "5.0000000000000000e-1");
        assert_eq!(Cell::Real(f64::NAN).csv(), "NaN");
        assert_eq!(Cell::Int(42).csv(), "42");
        assert_eq!(Cell::Flag(false).csv(), "false");
        // 17 significant digits round-trip exactly.
        let value = std::f64::consts::PI * 1e-7;
        let text = Cell::Real(value).csv();
        assert_eq!(text.parse::<f64>().unwrap(), value);
    }

    #[test]
    fn nonfinite_reals_become_json_null() {
        assert_eq!(Cell::Real(f64::NAN).json(), Value::Null);
        assert_eq!(Cell::Real(1.5).json(), Value::from(1.5));
    }

    #[test]
    fn csv_layout_is_metadata_then_header_then_rows() {
        let mut table = Table::new("demo", &["a", "b"]).with("alpha", Meta::Real(0.5));
        table.push(vec![Cell::Real(1.0), Cell::Int(2)]);
        let text = table.to_csv();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# command = demo");
        assert!(lines[1].starts_with("# versions = fourier-uncertainty"));
        assert_eq!(lines[2], "# alpha = 5.0000000000000000e-1");
        assert_eq!(lines[3], "a,b");
        assert_eq!(lines[4], "1.0000000000000000e0,2");
        assert!(text.ends_with('\n') && !text.contains('\r'));
    }

    #[test]
    fn json_layout_has_metadata_and_rows() {
        let mut table = Table::new("demo", &["a"]);
        table.push(vec![Cell::Real(2.5)]);
        let value: Value = serde_json::from_str(&table.to_json()).unwrap();
        assert_eq!(value["metadata"]["command"], "demo");
        assert_eq!(value["rows"][0]["a"], 2.5);
    }

    #[test]
    fn verify_exit_is_zero_only_when_all_pass() {
        let pass = acceptance::CriterionReport {
            id: 1,
            name: "x",
            passed: true,
            detail: String::new(),
        };
        let fail = acceptance::CriterionReport {
            passed: false,
            ..pass.clone()
        };
        assert_eq!(verify_exit_code(&[pass.clone(), pass.clone()]), 0);
        assert_eq!(verify_exit_code(&[pass, fail]), 3);
    }
}
