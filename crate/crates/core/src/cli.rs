//! Command-line front end.
//!
//! Every subcommand writes one CSV table, to `--output` or standard output.
//! Exit status: 0 on success, 1 for invalid arguments or parameters, 2 for a
//! numerical failure, 3 for an I/O failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::dde::{StepMethod, Trajectory};
use crate::econ::{policy_check, simulate_scenario, EconTrajectory, InterestScenario, PolicyVerdict};
use crate::error::Error;
use crate::exact::{error_table, table_times, ErrorTable};
use crate::logistic::{simulate_canonical, to_physical, wright_from_canonical};
use crate::regime::{hopf_boundary_search, regime_report, HopfEstimate, RegimeReport, SimConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Parses a decimal (`0.001953125`) or a ratio (`1/512`).
///
/// A ratio is evaluated as one division of two parsed numbers, so ratios
/// with power-of-two denominators are exact.
pub fn parse_number(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let value = match s.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|e| format!("`{s}`: {e}"))?;
            let den: f64 = den.trim().parse().map_err(|e| format!("`{s}`: {e}"))?;
            if den == 0.0 {
                return Err(format!("`{s}`: zero denominator"));
            }
            num / den
        }
        None => s.parse().map_err(|e| format!("`{s}`: {e}"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("`{s}` is not a finite number"))
    }
}

fn parse_method(s: &str) -> Result<StepMethod, String> {
    s.parse()
}

#[derive(Debug, Parser)]
#[command(
    name = "delay-logistic",
    version,
    about = "Integrate, check and classify the delay logistic equation and its interest-rate model"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate z' = a z - z z(t-1) from the history beta*exp((a-beta)t).
    ///
    /// Reproduces the solution curves for a = 0.35 (monotone approach),
    /// a = 1 (decaying oscillation) and a = 1.5 / 1.6 (damped versus
    /// sustained), and the simulated column of the exact-solution check
    /// (a = 1.57, beta = 0.785, dt = 1/512 or 1/1024, --method held-rk4).
    SimulateCanonical(SimulateCanonicalArgs),
    /// Integrate the actual long rate i' = A(i-w) - i(t-t0)(i-w) and report
    /// interest and inflation in percent.
    ///
    /// Reproduces the scenario plots: A = 0.08, t0 = 12 (damped, inflation
    /// alternating with deflation); A = 0.12, t0 = 14 with w = 0 (sustained)
    /// and w = 0.02 (settles to 12%). The history on [0, t0] is
    /// Psi(t) + w with Psi(t) = beta*exp((A-w-beta)t), so that i - w starts
    /// on the same exponential family as the canonical equation.
    SimulateEcon(SimulateEconArgs),
    /// Compare simulated runs with the closed-form solution on [0, 3]
    /// (beta = a/2).
    ///
    /// With the defaults this reproduces the exact-versus-simulated
    /// table: a = 1.57, t = 0, 0.25, ..., 3, steps 1/512 and 1/1024, using
    /// the held-delay RK4 lookup of stock-and-flow simulators.
    ExactCompare(ExactCompareArgs),
    /// Bisect on the detected regime for the onset of sustained oscillation.
    ///
    /// Reproduces the boundary test that places the transition between
    /// a = 1.568 and a = 1.570 (proved bound 1.5706, conjecture pi/2).
    HopfScan(HopfScanArgs),
    /// Predicted and detected regime for a list or grid of a values.
    ///
    /// Thresholds: a <= 1/e asymptotic, a <= 1.5706 damped, otherwise
    /// sustained. The defaults cover the a = 0.35, 1, 1.5 and 1.6 runs.
    RegimeReport(RegimeReportArgs),
    /// Check the orderly-adjustment condition (A - w) t0 <= 1/e.
    ///
    /// Reproduces the policy inequality and the worked product
    /// A t0 = 0.12 * 14 = 1.68. Negative short rates are accepted here.
    PolicyCheck(PolicyCheckArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write the CSV to this file instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Print a one-line summary instead of the CSV table.
    #[arg(long)]
    pub no_csv: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Form {
    /// z(t) with unit delay.
    Canonical,
    /// y = z / a.
    Wright,
    /// z / t0 against t * t0 (needs --t0).
    Physical,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateCanonicalArgs {
    #[arg(long, value_parser = parse_number)]
    pub a: f64,
    /// Initial value of the history [default: a/2].
    #[arg(long, value_parser = parse_number)]
    pub beta: Option<f64>,
    /// Step; must divide the unit delay.
    #[arg(long, value_parser = parse_number, default_value = "1/512")]
    pub dt: f64,
    #[arg(long, value_parser = parse_number, default_value = "300")]
    pub horizon: f64,
    /// euler, rk4 or held-rk4.
    #[arg(long, value_parser = parse_method, default_value = "rk4")]
    pub method: StepMethod,
    #[arg(long, value_enum, default_value = "canonical")]
    pub form: Form,
    /// Delay in physical units, for --form physical.
    #[arg(long, value_parser = parse_number)]
    pub t0: Option<f64>,
    /// Emit every n-th node.
    #[arg(long, default_value_t = 1)]
    pub stride: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateEconArgs {
    /// Nominal long rate A, per month.
    #[arg(long = "A", value_parser = parse_number)]
    pub long_rate: f64,
    /// Actual short rate w, per month (0 <= w < A).
    #[arg(long = "w", value_parser = parse_number, default_value = "0")]
    pub short_rate: f64,
    /// Delay t0, months.
    #[arg(long, value_parser = parse_number)]
    pub t0: f64,
    #[arg(long, value_parser = parse_number, default_value = "0.02")]
    pub beta: f64,
    /// Months.
    #[arg(long, value_parser = parse_number, default_value = "1800")]
    pub horizon: f64,
    /// Months per step; must divide t0.
    #[arg(long, value_parser = parse_number, default_value = "1/512")]
    pub dt: f64,
    #[arg(long, value_parser = parse_method, default_value = "rk4")]
    pub method: StepMethod,
    #[arg(long, default_value_t = 1)]
    pub stride: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ExactCompareArgs {
    #[arg(long, value_parser = parse_number, default_value = "1.57")]
    pub a: f64,
    /// Step; repeat for several columns [default: 1/512 1/1024].
    #[arg(long, value_parser = parse_number)]
    pub dt: Vec<f64>,
    #[arg(long, value_parser = parse_method, default_value = "held-rk4")]
    pub method: StepMethod,
    /// Sample times [default: 0, 0.25, ..., 3].
    #[arg(long, value_parser = parse_number, value_delimiter = ',')]
    pub times: Vec<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SimArgs {
    #[arg(long, value_parser = parse_number, default_value = "1/512")]
    pub dt: f64,
    #[arg(long, value_parser = parse_number, default_value = "300")]
    pub horizon: f64,
    #[arg(long, value_parser = parse_number, default_value = "0.12")]
    pub beta: f64,
    #[arg(long, value_parser = parse_method, default_value = "rk4")]
    pub method: StepMethod,
    /// Leading fraction of the run ignored by the classifier.
    #[arg(long, value_parser = parse_number, default_value = "0.5")]
    pub transient: f64,
    /// Peak ratios within 1 +- rel-tol count as sustained.
    #[arg(long, value_parser = parse_number, default_value = "0.01")]
    pub rel_tol: f64,
}

impl SimArgs {
    fn config(&self) -> SimConfig {
        SimConfig {
            dt: self.dt,
            horizon: self.horizon,
            beta: self.beta,
            method: self.method,
            transient_fraction: self.transient,
            rel_tol: self.rel_tol,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct HopfScanArgs {
    #[arg(long, value_parser = parse_number, default_value = "1.50")]
    pub lo: f64,
    #[arg(long, value_parser = parse_number, default_value = "1.65")]
    pub hi: f64,
    /// Stop when the bracket is at most this wide.
    #[arg(long, value_parser = parse_number, default_value = "0.002")]
    pub tol: f64,
    /// Emit one row per probe instead of the final bracket.
    #[arg(long)]
    pub trace: bool,
    #[command(flatten)]
    pub sim: SimArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct RegimeReportArgs {
    /// Values of a; repeat or separate with commas [default: 0.35,1,1.5,1.6].
    #[arg(long, value_parser = parse_number, value_delimiter = ',')]
    pub a: Vec<f64>,
    /// Grid start; with --a-to and --a-step replaces --a.
    #[arg(long, value_parser = parse_number, requires_all = ["a_to", "a_step"])]
    pub a_from: Option<f64>,
    #[arg(long, value_parser = parse_number)]
    pub a_to: Option<f64>,
    #[arg(long, value_parser = parse_number)]
    pub a_step: Option<f64>,
    #[command(flatten)]
    pub sim: SimArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PolicyCheckArgs {
    #[arg(long = "A", value_parser = parse_number)]
    pub long_rate: f64,
    #[arg(long = "w", value_parser = parse_number, default_value = "0", allow_hyphen_values = true)]
    pub short_rate: f64,
    #[arg(long, value_parser = parse_number)]
    pub t0: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Model(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Model(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Invalid(_) => EXIT_INVALID,
            Failure::Model(e) if e.is_numerical() => EXIT_NUMERICAL,
            Failure::Model(_) => EXIT_INVALID,
            Failure::Io(_) => EXIT_IO,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Invalid(msg) => f.write_str(msg),
            Failure::Model(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "I/O error: {e}"),
        }
    }
}

/// Parses `args` (including the program name) and runs one subcommand.
/// Returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            eprintln!("error: {failure}");
            failure.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::SimulateCanonical(args) => simulate_canonical_cmd(args),
        Command::SimulateEcon(args) => simulate_econ_cmd(args),
        Command::ExactCompare(args) => exact_compare_cmd(args),
        Command::HopfScan(args) => hopf_scan_cmd(args),
        Command::RegimeReport(args) => regime_report_cmd(args),
        Command::PolicyCheck(args) => policy_check_cmd(args),
    }
}

fn check_stride(stride: usize) -> Result<(), Failure> {
    if stride == 0 {
        return Err(Failure::Invalid("--stride must be at least 1".into()));
    }
    Ok(())
}

fn emit<T: ToCsv + ?Sized>(table: &T, out: &OutputArgs, summary: impl FnOnce() -> String) -> Result<(), Failure> {
    if out.no_csv {
        println!("{}", summary());
        return Ok(());
    }
    let dest = match &out.output {
        Some(path) => Destination::File(path.clone()),
        None => Destination::Stdout,
    };
    write_csv(table, &dest)?;
    Ok(())
}

fn simulate_canonical_cmd(args: SimulateCanonicalArgs) -> Result<(), Failure> {
    check_stride(args.stride)?;
    let beta = args.beta.unwrap_or(args.a / 2.0);
    let traj = simulate_canonical(args.a, beta, args.dt, args.horizon, args.method)?;
    let (traj, names) = match args.form {
        Form::Canonical => (traj, ["time", "z", "dz_dt"]),
        Form::Wright => (wright_from_canonical(&traj, args.a)?, ["time", "y", "dy_dt"]),
        Form::Physical => {
            let t0 = args
                .t0
                .ok_or_else(|| Failure::Invalid("--form physical needs --t0".into()))?;
            (to_physical(&traj, t0)?, ["time", "rate", "drate_dt"])
        }
    };
    let table = TrajectoryCsv {
        traj: &traj,
        names,
        stride: args.stride,
    };
    emit(&table, &args.out, || {
        format!("t = {}: {}", traj.grid().time(traj.len() - 1), format_number(traj.last_value()))
    })
}

fn simulate_econ_cmd(args: SimulateEconArgs) -> Result<(), Failure> {
    check_stride(args.stride)?;
    let scenario = InterestScenario {
        nominal_long_rate: args.long_rate,
        short_rate: args.short_rate,
        delay: args.t0,
        beta: args.beta,
        horizon: args.horizon,
        dt: args.dt,
        method: args.method,
    };
    let run = simulate_scenario(&scenario)?;
    let table = EconCsv {
        run: &run,
        stride: args.stride,
    };
    emit(&table, &args.out, || {
        let k = run.len() - 1;
        format!(
            "(A - w) t0 = {}; final interest {}%, inflation {}%",
            format_number(scenario.effective_canonical()),
            format_number(run.long_rate_actual()[k] * 100.0),
            format_number(run.inflation()[k] * 100.0)
        )
    })
}

fn exact_compare_cmd(args: ExactCompareArgs) -> Result<(), Failure> {
    let dts = if args.dt.is_empty() {
        vec![1.0 / 512.0, 1.0 / 1024.0]
    } else {
        args.dt.clone()
    };
    let times = if args.times.is_empty() {
        table_times()
    } else {
        args.times.clone()
    };
    let tables = dts
        .iter()
        .map(|&dt| error_table(args.method, dt, args.a, &times))
        .collect::<Result<Vec<_>, _>>()?;
    emit(&ErrorTables(&tables), &args.out, || {
        tables
            .iter()
            .map(|t| format!("dt = {}: max |delta| = {:e}", t.dt, t.max_abs_delta()))
            .collect::<Vec<_>>()
            .join("; ")
    })
}

fn hopf_scan_cmd(args: HopfScanArgs) -> Result<(), Failure> {
    let estimate = hopf_boundary_search(args.lo, args.hi, args.tol, &args.sim.config())?;
    let summary = || {
        format!(
            "a* = {} (bracket [{}, {}], {} probes)",
            format_number(estimate.estimate),
            format_number(estimate.lo),
            format_number(estimate.hi),
            estimate.probes.len()
        )
    };
    if args.trace {
        emit(&HopfTrace(&estimate), &args.out, summary)
    } else {
        emit(&HopfSummary(&estimate), &args.out, summary)
    }
}

fn a_grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>, Failure> {
    if step.is_nan() || step <= 0.0 || to < from {
        return Err(Failure::Invalid(
            "--a-step must be positive and --a-to at least --a-from".into(),
        ));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| from + i as f64 * step).collect())
}

fn regime_report_cmd(args: RegimeReportArgs) -> Result<(), Failure> {
    let values = match (args.a_from, args.a_to, args.a_step) {
        (Some(from), Some(to), Some(step)) => a_grid(from, to, step)?,
        _ if args.a.is_empty() => vec![0.35, 1.0, 1.5, 1.6],
        _ => args.a.clone(),
    };
    let cfg = args.sim.config();
    let reports = values
        .par_iter()
        .map(|&a| regime_report(a, &cfg))
        .collect::<Result<Vec<_>, _>>()?;
    emit(&RegimeReports(&reports), &args.out, || {
        let agree = reports.iter().filter(|r| r.predicted == r.empirical).count();
        format!("{agree} of {} detected regimes match the prediction", reports.len())
    })
}

fn policy_check_cmd(args: PolicyCheckArgs) -> Result<(), Failure> {
    let verdict = policy_check(args.long_rate, args.short_rate, args.t0)?;
    let table = PolicyCsv {
        long_rate: args.long_rate,
        short_rate: args.short_rate,
        t0: args.t0,
        verdict,
    };
    emit(&table, &args.out, || {
        format!(
            "(A - w) t0 = {}: {}",
            format_number(verdict.product),
            verdict.stability.name()
        )
    })
}

// CSV output

/// Where a table goes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Destination {
    Stdout,
    File(PathBuf),
}

/// One cell of a CSV row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell<'a> {
    Num(f64),
    Text(&'a str),
}

/// A table that can be written as CSV, row by row.
pub trait ToCsv {
    fn header(&self) -> Vec<String>;
    fn write_rows(&self, sink: &mut dyn FnMut(&[Cell<'_>]) -> io::Result<()>) -> io::Result<()>;
}

/// Fixed nine digits after the decimal point. Negative zero is printed
/// without its sign.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{v:.9}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

/// Writes the header and then the rows, in order.
pub fn write_csv_to<T, W>(table: &T, writer: W) -> io::Result<()>
where
    T: ToCsv + ?Sized,
    W: Write,
{
    let mut w = BufWriter::new(writer);
    writeln!(w, "{}", table.header().join(","))?;
    let mut line = String::new();
    table.write_rows(&mut |cells| {
        line.clear();
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                line.push(',');
            }
            match cell {
                Cell::Num(v) => line.push_str(&format_number(*v)),
                Cell::Text(s) => line.push_str(s),
            }
        }
        writeln!(w, "{line}")
    })?;
    w.flush()
}

pub fn write_csv<T: ToCsv + ?Sized>(table: &T, dest: &Destination) -> io::Result<()> {
    match dest {
        Destination::Stdout => write_csv_to(table, io::stdout().lock()),
        Destination::File(path) => write_csv_to(table, File::create(path)?),
    }
}

/// `time,<value>,<derivative>` for a trajectory, every `stride`-th node.
pub struct TrajectoryCsv<'a> {
    pub traj: &'a Trajectory,
    pub names: [&'static str; 3],
    pub stride: usize,
}

impl ToCsv for TrajectoryCsv<'_> {
    fn header(&self) -> Vec<String> {
        self.names.iter().map(|s| s.to_string()).collect()
    }

    fn write_rows(&self, sink: &mut dyn FnMut(&[Cell<'_>]) -> io::Result<()>) -> io::Result<()> {
        let grid = self.traj.grid();
        for k in (0..self.traj.len()).step_by(self.stride.max(1)) {
            sink(&[
                Cell::Num(grid.time(k)),
                Cell::Num(self.traj.values()[k]),
                Cell::Num(self.traj.derivs()[k]),
            ])?;
        }
        Ok(())
    }
}

/// `time_months,time_years,interest_percent,inflation_percent`.
pub struct EconCsv<'a> {
    pub run: &'a EconTrajectory,
    pub stride: usize,
}

impl ToCsv for EconCsv<'_> {
    fn header(&self) -> Vec<String> {
        ["time_months", "time_years", "interest_percent", "inflation_percent"]
            .map(String::from)
            .to_vec()
    }

    fn write_rows(&self, sink: &mut dyn FnMut(&[Cell<'_>]) -> io::Result<()>) -> io::Result<()> {
        let rates = self.run.long_rate_actual();
        let inflation = self.run.inflation();
        for (k, t) in self.run.times().enumerate().step_by(self.stride.max(1)) {
            sink(&[
                Cell::Num(t),
                Cell::Num(t / 12.0),
                Cell::Num(rates[k] * 100.0),
                Cell::Num(inflation[k] * 100.0),
            ])?;
        }
        Ok(())
    }
}

impl ToCsv for ErrorTable {
    fn header(&self) -> Vec<String> {
        ["time", "z_actual", "z_simulated", "delta"].map(String::from).to_vec()
    }

    fn write_rows(&self, sink: &mut dyn FnMut(&[Cell<'_>]) -> io::Result<()>) -> io::Result<()> {
        for row in &self.rows {
            sink(&[
                Cell::Num(row.time),
                Cell::Num(row.actual),
                Cell::Num(row.simulated),
                Cell::Num(row.delta()),
            ])?;
        }
        Ok(())
    }
}

/// Several error tables over the same sample times, side by side. A single
/// table keeps the plain `time,z_actual,z_simulated,delta` header; with more,
/// the simulated and delta columns get a `_1`, `_2`, ... suffix in step
/// order.
pub struct ErrorTables<'a>(pub &'a [ErrorTable]);

impl ToCsv for ErrorTables<'_> {
    fn header(&self) -> Vec<String> {
        if let [only] = self.0 {
            return only.header();
        }
        let mut h = vec!["time".to_string(), "z_actual".to_string()];
        for i in 1..=self.0.len() {
            h.push(format!("z_simulated_{i}"));
            h.push(format!("delta_{i}"));
        }
        h
    }

    fn write_rows(&self, sink: &mut dyn FnMut(&[Cell<'_>]) -> io::Result<()>) -> io::Result<()> {
        let Some(first) = self.0.first() else {
            return Ok(());
        };
        let mut cells = Vec::with_capacity(2 + 2 * self.0.len());
        for (i, row) in first.rows.iter().enumerate() {
            cells.clear();
            cells.push(Cell::Num(row.time));
            cells.push(Cell::Num(row.actual));
            for table in self.0 {
                let r = &table.rows[i];
                cells.push(Cell::Num(r.simulated));
                cells.push(Cell::Num(r.delta()));
            }
            sink(&cells)?;
        }
        Ok(())
    }
}

/// `a,predicted,empirical,envelope_ratio,terminal_deviation`.
pub struct RegimeReports<'a>(pub &'a [RegimeReport]);

impl ToCsv for RegimeReports<'_> {
    fn header(&self) -> Vec<String> {
        ["a", "predicted", "empirical", "envelope_ratio", "terminal_deviation"]
            .map(String::from)
            .to_vec()
    }

    fn write_rows(&self, sink: &mut dyn FnMut(&[Cell<'_>]) -> io::Result<()>) -> io::Result<()> {
        for r in self.0 {
            sink(&[
                Cell::Num(r.a),
                Cell::Text(r.predicted.name()),
                Cell::Text(r.empirical.name()),
                Cell::Num(r.envelope_ratio),
                Cell::Num(r.terminal_deviation),
            ])?;
        }
        Ok(())
    }
}

/// `a_star,lo,hi,probes`.
pub struct HopfSummary<'a>(pub &'a HopfEstimate);

impl ToCsv for HopfSummary<'_> {
    fn header(&self) -> Vec<String> {
        ["a_star", "lo", "hi", "probes"].map(String::from).to_vec()
    }

    fn write_rows(&self, sink: &mut dyn FnMut(&[Cell<'_>]) -> io::Result<()>) -> io::Result<()> {
        let probes = self.0.probes.len().to_string();
        sink(&[
            Cell::Num(self.0.estimate),
            Cell::Num(self.0.lo),
            Cell::Num(self.0.hi),
            Cell::Text(&probes),
        ])
    }
}

/// `a,verdict,mean_peak_ratio`, one row per probe in evaluation order.
pub struct HopfTrace<'a>(pub &'a HopfEstimate);

impl ToCsv for HopfTrace<'_> {
    fn header(&self) -> Vec<String> {
        ["a", "verdict", "mean_peak_ratio"].map(String::from).to_vec()
    }

    fn write_rows(&self, sink: &mut dyn FnMut(&[Cell<'_>]) -> io::Result<()>) -> io::Result<()> {
        for p in &self.0.probes {
            sink(&[
                Cell::Num(p.a),
                Cell::Text(p.verdict.name()),
                Cell::Num(p.mean_peak_ratio),
            ])?;
        }
        Ok(())
    }
}

/// `A,w,t0,product,verdict`.
pub struct PolicyCsv {
    pub long_rate: f64,
    pub short_rate: f64,
    pub t0: f64,
    pub verdict: PolicyVerdict,
}

impl ToCsv for PolicyCsv {
    fn header(&self) -> Vec<String> {
        ["A", "w", "t0", "product", "verdict"].map(String::from).to_vec()
    }

    fn write_rows(&self, sink: &mut dyn FnMut(&[Cell<'_>]) -> io::Result<()>) -> io::Result<()> {
        sink(&[
            Cell::Num(self.long_rate),
            Cell::Num(self.short_rate),
            Cell::Num(self.t0),
            Cell::Num(self.verdict.product),
            Cell::Text(self.verdict.stability.name()),
        ])
    }
}
