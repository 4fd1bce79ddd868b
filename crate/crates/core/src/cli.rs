//! `gspgate` command-line front end.
//!
//! Exit codes: 0 accepted or normal completion, 3 rejected verdict, 1 input
//! error, 2 numeric failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::criteria::{
    max_depth, max_depth_for_gsee_depth, max_depth_strict, verdict_simplified, verdict_with_gsee_depth,
    verdict_with_reps, DepthBound, Verdict, DEFAULT_NEGLIGIBILITY,
};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::format::{sig6, sig6_opt};
use crate::runtime_model::{
    catalog, gsee_depth, repetitions, runtime_reference, runtime_with_reps, Accuracy, DepthUnit, GseeModel,
    GspCandidate, Reference,
};
use crate::scenario::{
    self, max_depth_curve, Curve, Report, ScenarioRecord, SweepSpec, SweepVariable, TableOutput,
};
use crate::spectral::{
    self, boost_filter_repeated, ground_state, overlap, parse_hamiltonian, parse_state, FilterSpec,
    Hamiltonian, SolverKind, SpectralConfig, StateVector,
};
use crate::warning::{join_codes, Warning};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_REJECTED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "gspgate",
    version,
    about = "Accept or reject ground-state preparation methods for GSEE"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Acceptability verdict for one GSP candidate.
    Verdict(VerdictArgs),
    /// Maximum GSP depth that is still acceptable.
    MaxDepth(MaxDepthArgs),
    /// Runtimes with the candidate and with the reference.
    Runtime(RuntimeArgs),
    /// Evaluate a scenario table, sweep table, fixture or generated grid.
    Sweep(SweepArgs),
    /// Ground energy, gap and overlap of a small Hamiltonian.
    Spectral(SpectralArgs),
    /// Apply a monotone spectral filter to a state.
    Boost(BoostArgs),
    /// List built-in GSEE models.
    Catalog(CatalogArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Catalog GSEE model (see `catalog`).
    #[arg(long, conflicts_with_all = ["alpha", "beta"])]
    pub gsee: Option<String>,
    /// Repetition exponent.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Depth exponent.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Depth unit shared by GSP and GSEE.
    #[arg(long, default_value = "circuit-layers")]
    pub unit: String,
}

impl ModelArgs {
    fn resolve(&self, default_alpha: Option<f64>) -> Result<GseeModel> {
        let unit = self.depth_unit()?;
        if let Some(name) = &self.gsee {
            let model = GseeModel::from_catalog(name).map_err(|e| flag_error("--gsee", &e.to_string()))?;
            return Ok(model.with_unit(unit));
        }
        let alpha = self
            .alpha
            .or(default_alpha)
            .ok_or_else(|| flag_error("--alpha", "required unless --gsee is given"))?;
        let beta = self
            .beta
            .ok_or_else(|| flag_error("--beta", "required unless --gsee is given"))?;
        GseeModel::new("custom", alpha, beta, unit)
    }

    fn depth_unit(&self) -> Result<DepthUnit> {
        self.unit
            .parse()
            .map_err(|e: Error| flag_error("--unit", &e.to_string()))
    }

    fn given(&self) -> bool {
        self.gsee.is_some() || self.alpha.is_some() || self.beta.is_some()
    }
}

fn flag_error(flag: &str, msg: &str) -> Error {
    Error::Usage {
        flag: flag.to_string(),
        message: msg.to_string(),
    }
}

fn exit_code(e: &Error) -> i32 {
    if e.is_numeric_failure() {
        EXIT_NUMERIC
    } else {
        EXIT_INPUT
    }
}

/// Prefixes range errors with the flag that carries the quantity.
fn describe(e: &Error) -> String {
    match e {
        Error::Domain { name, .. } => format!("--{}: {e}", name.replace('_', "-")),
        _ => e.to_string(),
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerdictArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// GSEE depth given directly instead of 1/(eps gamma^beta).
    #[arg(long)]
    pub d_gsee: Option<f64>,
    #[arg(long)]
    pub gamma: f64,
    #[arg(long)]
    pub gamma0: f64,
    #[arg(long, default_value_t = 0.0)]
    pub depth: f64,
    #[arg(long, default_value_t = 1.0)]
    pub p_succ: f64,
    /// Use the small-depth criterion 1 < (gamma/gamma0)^(alpha+beta).
    #[arg(long, conflicts_with = "d_gsee")]
    pub simplified: bool,
    #[arg(long, default_value_t = DEFAULT_NEGLIGIBILITY, requires = "simplified")]
    pub negligibility: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MaxDepthArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub gamma: f64,
    #[arg(long)]
    pub gamma0: f64,
    #[arg(long, conflicts_with = "epsilon")]
    pub d_gsee: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub p_succ: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RuntimeArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub epsilon: f64,
    #[arg(long)]
    pub gamma: f64,
    #[arg(long)]
    pub gamma0: f64,
    #[arg(long, default_value_t = 0.0)]
    pub depth: f64,
    #[arg(long, default_value_t = 1.0)]
    pub p_succ: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Bundled case study (h2_sweep, n2_spa, n2_booster, jellium).
    #[arg(long, conflicts_with_all = ["table", "variable", "curve"])]
    pub fixture: Option<String>,
    /// Scenario table or sweep table.
    #[arg(long, conflicts_with_all = ["variable", "curve"])]
    pub table: Option<PathBuf>,
    /// Variable swept over --grid: gamma, gamma0, depth, epsilon, p-succ.
    #[arg(long, requires = "grid", conflicts_with = "curve")]
    pub variable: Option<String>,
    /// Max-depth curve over gamma0 values in --grid (needs --gamma, --d-gsee).
    #[arg(long, requires = "grid")]
    pub curve: bool,
    /// Comma-separated grid values.
    #[arg(long, value_delimiter = ',')]
    pub grid: Vec<f64>,
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub gamma0: Option<f64>,
    #[arg(long)]
    pub depth: Option<f64>,
    #[arg(long)]
    pub p_succ: Option<f64>,
    #[arg(long)]
    pub d_gsee: Option<f64>,
    /// Two-column plot data instead of the full report.
    #[arg(long)]
    pub plot: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectralInput {
    /// HAMX or PAULI file.
    #[arg(long)]
    pub hamiltonian: PathBuf,
    /// STATE file with the prepared state.
    #[arg(long, conflicts_with = "basis_index")]
    pub state: Option<PathBuf>,
    /// Computational basis state used as the prepared/reference state.
    #[arg(long)]
    pub basis_index: Option<usize>,
    #[arg(long, default_value_t = spectral::DEFAULT_DEGENERACY_TOL)]
    pub degeneracy_tol: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SolverArg {
    Auto,
    Dense,
    Iterative,
}

#[derive(Debug, Args)]
pub struct SpectralArgs {
    #[command(flatten)]
    pub input: SpectralInput,
    #[arg(long, value_enum, default_value_t = SolverArg::Auto)]
    pub solver: SolverArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FilterKind {
    Gaussian,
    Exponential,
    Step,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct BoostArgs {
    #[command(flatten)]
    pub input: SpectralInput,
    #[arg(long, value_enum)]
    pub filter: FilterKind,
    /// Gaussian center (must not exceed the ground energy).
    #[arg(long)]
    pub center: Option<f64>,
    /// Gaussian width.
    #[arg(long)]
    pub width: Option<f64>,
    /// Exponential pivot energy.
    #[arg(long, default_value_t = 0.0)]
    pub pivot: f64,
    /// Exponential rate.
    #[arg(long)]
    pub rate: Option<f64>,
    /// Step cutoff energy.
    #[arg(long)]
    pub cutoff: Option<f64>,
    /// Number of filter applications.
    #[arg(long, default_value_t = 1)]
    pub repeat: u32,
    /// Also write the boosted state in STATE format.
    #[arg(long)]
    pub state_out: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    #[command(flatten)]
    pub out: OutputArgs,
}

/// What a command produced.
pub struct Outcome {
    pub text: String,
    pub code: i32,
    pub output: Option<PathBuf>,
    pub diagnostics: Vec<String>,
}

impl Outcome {
    fn ok(text: String, output: Option<PathBuf>) -> Self {
        Outcome {
            text,
            code: EXIT_OK,
            output,
            diagnostics: Vec::new(),
        }
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// to the given streams. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli) {
        Ok(outcome) => {
            for d in &outcome.diagnostics {
                let _ = writeln!(stderr, "warning: {d}");
            }
            let written = match &outcome.output {
                Some(path) => {
                    std::fs::write(path, &outcome.text).map_err(|e| format!("{}: {e}", path.display()))
                }
                None => stdout
                    .write_all(outcome.text.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => outcome.code,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    EXIT_INPUT
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", describe(&e));
            exit_code(&e)
        }
    }
}

pub fn execute(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Verdict(a) => cmd_verdict(&a),
        Command::MaxDepth(a) => cmd_max_depth(&a),
        Command::Runtime(a) => cmd_runtime(&a),
        Command::Sweep(a) => cmd_sweep(&a),
        Command::Spectral(a) => cmd_spectral(&a),
        Command::Boost(a) => cmd_boost(&a),
        Command::Catalog(a) => cmd_catalog(&a),
    }
}

/// Renders a flat record as a two-column table, one CSV row, or a JSON
/// object with the same keys.
fn render<T: Serialize>(record: &T, format: Format, table: impl FnOnce() -> String) -> String {
    match format {
        Format::Table => table(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            compact(|| w.serialize(record)).expect("in-memory write");
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(record).expect("flat record");
            s.push('\n');
            s
        }
    }
}

fn render_many<T: Serialize>(records: &[T], format: Format, table: impl FnOnce() -> String) -> String {
    match format {
        Format::Table => table(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in records {
                compact(|| w.serialize(r)).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(records).expect("flat records");
            s.push('\n');
            s
        }
    }
}

thread_local! {
    static COMPACT_NUMBERS: std::cell::Cell<bool> = const { std::cell::Cell::new(false) };
}

/// Runs `f` with `Num` fields printed to six significant digits.
fn compact<R>(f: impl FnOnce() -> R) -> R {
    COMPACT_NUMBERS.with(|c| c.set(true));
    let r = f();
    COMPACT_NUMBERS.with(|c| c.set(false));
    r
}

/// Derived number: six significant digits in CSV, full precision in JSON.
#[derive(Debug, Clone, Copy)]
struct Num(Option<f64>);

impl Serialize for Num {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if COMPACT_NUMBERS.with(|c| c.get()) {
            s.serialize_str(&sig6_opt(self.0))
        } else {
            match self.0 {
                Some(v) => s.serialize_f64(v),
                None => s.serialize_none(),
            }
        }
    }
}

#[derive(Debug, Serialize)]
struct VerdictRecord {
    name: String,
    alpha: f64,
    beta: f64,
    epsilon: Option<f64>,
    gamma: f64,
    gamma0: f64,
    depth: f64,
    p_succ: f64,
    unit: String,
    d_gsee: Option<f64>,
    lhs: Num,
    rhs: Num,
    margin: Num,
    accepted: bool,
    regime: &'static str,
    gsee_depth: Num,
    runtime: Num,
    runtime_ref: Num,
    warnings: String,
}

fn verdict_table(model: &GseeModel, cand: &GspCandidate, reference: &Reference, v: &Verdict) -> String {
    let mut s = String::new();
    let status = if v.accepted { "ACCEPTED" } else { "REJECTED" };
    let _ = writeln!(
        s,
        "verdict: {status} ({} criterion, GSEE model {})",
        v.regime.as_str(),
        model.name()
    );
    let _ = writeln!(
        s,
        "  alpha = {}, beta = {}, gamma = {}, gamma0 = {}, D = {} {}, P_succ = {}",
        model.alpha(),
        model.beta(),
        cand.gamma(),
        reference.gamma0(),
        cand.depth(),
        model.depth_unit(),
        cand.p_succ()
    );
    let _ = writeln!(s, "  total depth / GSEE depth      lhs    = {}", sig6(v.lhs));
    let _ = writeln!(s, "  (gamma/gamma0)^(alpha+beta)   rhs    = {}", sig6(v.rhs));
    let _ = writeln!(s, "  rhs - lhs                     margin = {}", sig6(v.margin));
    if v.detail.gsee_depth > 0.0 {
        let _ = writeln!(
            s,
            "  GSP cost {} / GSEE depth {} per run",
            sig6(v.detail.gsp_cost),
            sig6(v.detail.gsee_depth)
        );
    }
    if let (Some(t), Some(t0)) = (v.detail.runtime, v.detail.runtime_ref) {
        let _ = writeln!(s, "  runtime T = {}, reference T0 = {}", sig6(t), sig6(t0));
    }
    for w in &v.warnings {
        let _ = writeln!(s, "  warning: {w}");
    }
    s
}

fn cmd_verdict(a: &VerdictArgs) -> Result<Outcome> {
    let model = a.model.resolve(None)?;
    let cand =
        GspCandidate::new("gsp", a.depth, a.gamma, model.depth_unit().clone())?.with_p_succ(a.p_succ)?;
    let reference = Reference::new(a.gamma0)?;
    let v = match (a.d_gsee, a.epsilon) {
        (Some(d), _) => verdict_with_gsee_depth(&model, &cand, &reference, d)?,
        (None, Some(eps)) => {
            let acc = Accuracy::new(eps)?;
            if a.simplified {
                verdict_simplified(&model, &cand, &reference, &acc, a.negligibility)?
            } else {
                verdict_with_reps(&model, &cand, &reference, &acc)?
            }
        }
        (None, None) => return Err(flag_error("--epsilon", "required unless --d-gsee is given")),
    };
    let record = VerdictRecord {
        name: model.name().to_string(),
        alpha: model.alpha(),
        beta: model.beta(),
        epsilon: a.epsilon,
        gamma: a.gamma,
        gamma0: a.gamma0,
        depth: a.depth,
        p_succ: a.p_succ,
        unit: model.depth_unit().to_string(),
        d_gsee: a.d_gsee,
        lhs: Num(Some(v.lhs)),
        rhs: Num(Some(v.rhs)),
        margin: Num(Some(v.margin)),
        accepted: v.accepted,
        regime: v.regime.as_str(),
        gsee_depth: Num(Some(v.detail.gsee_depth)),
        runtime: Num(v.detail.runtime),
        runtime_ref: Num(v.detail.runtime_ref),
        warnings: join_codes(&v.warnings),
    };
    let text = render(&record, a.out.format, || {
        verdict_table(&model, &cand, &reference, &v)
    });
    Ok(Outcome {
        text,
        code: if v.accepted { EXIT_OK } else { EXIT_REJECTED },
        output: a.out.output.clone(),
        diagnostics: v.warnings.iter().map(ToString::to_string).collect(),
    })
}

#[derive(Debug, Serialize)]
struct MaxDepthRecord {
    gamma: f64,
    gamma0: f64,
    alpha_plus_beta: f64,
    p_succ: f64,
    gsee_depth: Num,
    performance_gain: Num,
    d_max: Num,
    warnings: String,
}

fn cmd_max_depth(a: &MaxDepthArgs) -> Result<Outcome> {
    let reference = Reference::new(a.gamma0)?;
    let (bound, d_gsee, exponent_sum): (DepthBound, f64, f64) = match (a.d_gsee, a.epsilon) {
        (Some(d), _) => {
            let model = if a.model.given() {
                a.model.resolve(Some(0.0))?
            } else {
                GseeModel::new("strict", 0.0, 1.0, a.model.depth_unit()?)?
            };
            let bound = if model.exponent_sum() == 1.0 && a.p_succ == 1.0 {
                max_depth_strict(a.gamma, a.gamma0, d)?
            } else {
                max_depth_for_gsee_depth(&model, a.gamma, &reference, d, a.p_succ)?
            };
            (bound, d, model.exponent_sum())
        }
        (None, Some(eps)) => {
            let model = a.model.resolve(Some(0.0))?;
            let acc = Accuracy::new(eps)?;
            let bound = max_depth(&model, a.gamma, &reference, &acc, a.p_succ)?;
            (bound, gsee_depth(&model, &acc, a.gamma)?, model.exponent_sum())
        }
        (None, None) => return Err(flag_error("--d-gsee", "give --d-gsee or --epsilon with --beta")),
    };
    let gain = (a.gamma / a.gamma0).powf(exponent_sum) - 1.0;
    let record = MaxDepthRecord {
        gamma: a.gamma,
        gamma0: a.gamma0,
        alpha_plus_beta: exponent_sum,
        p_succ: a.p_succ,
        gsee_depth: Num(Some(d_gsee)),
        performance_gain: Num(Some(gain)),
        d_max: Num(Some(bound.value)),
        warnings: join_codes(&bound.warnings),
    };
    let text = render(&record, a.out.format, || {
        let mut s = String::new();
        let _ = writeln!(s, "maximum acceptable GSP depth: {}", sig6(bound.value));
        if exponent_sum == 1.0 {
            let _ = writeln!(
                s,
                "  = performance gain ({}) / HF performance ({}) x GSEE depth ({}){}",
                sig6(a.gamma - a.gamma0),
                a.gamma0,
                sig6(d_gsee),
                if a.p_succ == 1.0 {
                    String::new()
                } else {
                    format!(" x P_succ ({})", a.p_succ)
                }
            );
        } else {
            let _ = writeln!(
                s,
                "  = ((gamma/gamma0)^{} - 1 = {}) x GSEE depth ({}) x P_succ ({})",
                exponent_sum,
                sig6(gain),
                sig6(d_gsee),
                a.p_succ
            );
        }
        for w in &bound.warnings {
            let _ = writeln!(s, "  warning: {w}");
        }
        s
    });
    Ok(Outcome {
        text,
        code: EXIT_OK,
        output: a.out.output.clone(),
        diagnostics: bound.warnings.iter().map(ToString::to_string).collect(),
    })
}

#[derive(Debug, Serialize)]
struct RuntimeRecord {
    alpha: f64,
    beta: f64,
    repetitions: Num,
    gsee_depth: Num,
    runtime: Num,
    runtime_ref: Num,
}

fn cmd_runtime(a: &RuntimeArgs) -> Result<Outcome> {
    let model = a.model.resolve(None)?;
    let cand =
        GspCandidate::new("gsp", a.depth, a.gamma, model.depth_unit().clone())?.with_p_succ(a.p_succ)?;
    let reference = Reference::new(a.gamma0)?;
    let acc = Accuracy::new(a.epsilon)?;
    let record = RuntimeRecord {
        alpha: model.alpha(),
        beta: model.beta(),
        repetitions: Num(Some(repetitions(&model, a.gamma)?)),
        gsee_depth: Num(Some(gsee_depth(&model, &acc, a.gamma)?)),
        runtime: Num(Some(runtime_with_reps(&model, &cand, &acc)?)),
        runtime_ref: Num(Some(runtime_reference(&model, &reference, &acc)?)),
    };
    let text = render(&record, a.out.format, || {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "GSEE model {} (alpha = {}, beta = {})",
            model.name(),
            model.alpha(),
            model.beta()
        );
        let _ = writeln!(
            s,
            "  repetitions 1/gamma^alpha   = {}",
            sig6_opt(record.repetitions.0)
        );
        let _ = writeln!(
            s,
            "  GSEE depth 1/(eps gamma^beta) = {}",
            sig6_opt(record.gsee_depth.0)
        );
        let _ = writeln!(
            s,
            "  runtime T                   = {}",
            sig6_opt(record.runtime.0)
        );
        let _ = writeln!(
            s,
            "  reference runtime T0        = {}",
            sig6_opt(record.runtime_ref.0)
        );
        s
    });
    Ok(Outcome::ok(text, a.out.output.clone()))
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn with_path(path: &Path, e: Error) -> Error {
    if e.is_numeric_failure() {
        e
    } else {
        Error::Io(format!("{}: {e}", path.display()))
    }
}

fn cmd_sweep(a: &SweepArgs) -> Result<Outcome> {
    let output = if let Some(name) = &a.fixture {
        let text = fixtures::fixture(name).ok_or_else(|| {
            flag_error(
                "--fixture",
                &format!("unknown fixture `{name}` (known: {})", fixtures::NAMES.join(", ")),
            )
        })?;
        scenario::run_table(text)?
    } else if let Some(path) = &a.table {
        scenario::run_table(&read_file(path)?).map_err(|e| with_path(path, e))?
    } else if a.curve {
        let gamma = a
            .gamma
            .ok_or_else(|| flag_error("--gamma", "required with --curve"))?;
        let d = a
            .d_gsee
            .ok_or_else(|| flag_error("--d-gsee", "required with --curve"))?;
        TableOutput::Curve(max_depth_curve(gamma, d, &a.grid))
    } else if let Some(var) = &a.variable {
        let variable: SweepVariable = var
            .parse()
            .map_err(|e: Error| flag_error("--variable", &e.to_string()))?;
        let base = ScenarioRecord {
            name: a.name.clone(),
            gsee: a.model.gsee.clone(),
            alpha: a.model.alpha,
            beta: a.model.beta,
            epsilon: a.epsilon,
            gamma: a.gamma,
            gamma0: a.gamma0,
            depth: a.depth,
            p_succ: a.p_succ,
            unit: Some(a.model.unit.clone()),
            d_gsee: a.d_gsee,
        };
        TableOutput::Report(scenario::sweep(&SweepSpec::values(
            variable,
            a.grid.clone(),
            base,
        ))?)
    } else {
        return Err(flag_error(
            "sweep",
            "give --fixture, --table, --variable or --curve",
        ));
    };

    let (text, errors) = match output {
        TableOutput::Report(Report { rows, errors }) => {
            let report = Report {
                rows,
                errors: Vec::new(),
            };
            (if a.plot { report.to_plot() } else { report.to_csv() }, errors)
        }
        TableOutput::Curve(Curve { points, errors }) => (
            Curve {
                points,
                errors: Vec::new(),
            }
            .to_csv(),
            errors,
        ),
    };
    Ok(Outcome {
        text,
        code: if errors.is_empty() { EXIT_OK } else { EXIT_INPUT },
        output: a.output.clone(),
        diagnostics: errors.iter().map(|e| format!("skipped {e}")).collect(),
    })
}

struct LoadedInput {
    h: Hamiltonian,
    state: Option<StateVector>,
    warnings: Vec<Warning>,
}

fn load_input(input: &SpectralInput, cfg: &SpectralConfig) -> Result<LoadedInput> {
    let h = parse_hamiltonian(&read_file(&input.hamiltonian)?, cfg.max_dim)
        .map_err(|e| with_path(&input.hamiltonian, e))?;
    let mut warnings = Vec::new();
    let state = match (&input.state, input.basis_index) {
        (Some(path), _) => {
            let (s, w) = parse_state(&read_file(path)?).map_err(|e| with_path(path, e))?;
            warnings.extend(w);
            Some(s)
        }
        (None, Some(i)) => Some(StateVector::basis(h.dim(), i)?),
        (None, None) => None,
    };
    Ok(LoadedInput { h, state, warnings })
}

#[derive(Debug, Serialize)]
struct SpectralRecord {
    dim: usize,
    energy_unit: String,
    solver: &'static str,
    degeneracy: usize,
    e0: Num,
    gap: Num,
    gamma: Num,
    eta: Num,
}

fn cmd_spectral(a: &SpectralArgs) -> Result<Outcome> {
    let solver = match a.solver {
        SolverArg::Auto => SolverKind::Auto,
        SolverArg::Dense => SolverKind::Dense,
        SolverArg::Iterative => SolverKind::Iterative,
    };
    let cfg = SpectralConfig::from_env()?
        .with_solver(solver)
        .with_degeneracy_tol(a.input.degeneracy_tol);
    let input = load_input(&a.input, &cfg)?;
    let spec = ground_state(&input.h, &cfg)?;
    let ov = input.state.as_ref().map(|s| overlap(s, &spec)).transpose()?;
    let record = SpectralRecord {
        dim: input.h.dim(),
        energy_unit: input.h.energy_unit().to_string(),
        solver: if spec.dense { "dense" } else { "iterative" },
        degeneracy: spec.degeneracy(),
        e0: Num(Some(spec.e0)),
        gap: Num(Some(spec.gap)),
        gamma: Num(ov.map(|o| o.gamma)),
        eta: Num(ov.map(|o| o.eta)),
    };
    let text = render(&record, a.out.format, || {
        let mut s = String::new();
        let _ = writeln!(s, "dimension      {} ({} solver)", record.dim, record.solver);
        let _ = writeln!(s, "E0             {:.12} {}", spec.e0, record.energy_unit);
        let _ = writeln!(s, "gap            {:.12} {}", spec.gap, record.energy_unit);
        let _ = writeln!(s, "degeneracy     {}", spec.degeneracy());
        if let Some(o) = ov {
            let _ = writeln!(s, "gamma          {:.12}", o.gamma);
            let _ = writeln!(s, "eta = gamma^2  {:.12}", o.eta);
        }
        s
    });
    Ok(Outcome {
        text,
        code: EXIT_OK,
        output: a.out.output.clone(),
        diagnostics: input.warnings.iter().map(ToString::to_string).collect(),
    })
}

#[derive(Debug, Serialize)]
struct BoostRecord {
    filter: &'static str,
    repeat: u32,
    e0: Num,
    gamma_before: Num,
    gamma_after: Num,
    eta_before: Num,
    eta_after: Num,
}

fn cmd_boost(a: &BoostArgs) -> Result<Outcome> {
    let cfg = SpectralConfig::from_env()?.with_degeneracy_tol(a.input.degeneracy_tol);
    let input = load_input(&a.input, &cfg)?;
    let state = input
        .state
        .ok_or_else(|| flag_error("--state", "boost needs --state or --basis-index"))?;
    let need = |v: Option<f64>, flag: &str| v.ok_or_else(|| flag_error(flag, "required for this filter"));
    let filter = match a.filter {
        FilterKind::Gaussian => FilterSpec::gaussian(need(a.center, "--center")?, need(a.width, "--width")?)?,
        FilterKind::Exponential => FilterSpec::exponential(a.pivot, need(a.rate, "--rate")?)?,
        FilterKind::Step => FilterSpec::step(need(a.cutoff, "--cutoff")?)?,
    };
    let res = boost_filter_repeated(&input.h, &state, &filter, a.repeat, &cfg)?;
    if let Some(path) = &a.state_out {
        std::fs::write(path, spectral::write_state(&res.boosted))
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    let record = BoostRecord {
        filter: filter.kind(),
        repeat: a.repeat,
        e0: Num(Some(res.e0)),
        gamma_before: Num(Some(res.gamma_before)),
        gamma_after: Num(Some(res.gamma_after)),
        eta_before: Num(Some(res.gamma_before * res.gamma_before)),
        eta_after: Num(Some(res.gamma_after * res.gamma_after)),
    };
    let text = render(&record, a.out.format, || {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} filter applied {} time(s), E0 = {:.12}",
            filter.kind(),
            a.repeat,
            res.e0
        );
        let _ = writeln!(s, "gamma  {:.12} -> {:.12}", res.gamma_before, res.gamma_after);
        let _ = writeln!(
            s,
            "eta    {:.12} -> {:.12}",
            res.gamma_before * res.gamma_before,
            res.gamma_after * res.gamma_after
        );
        s
    });
    Ok(Outcome {
        text,
        code: EXIT_OK,
        output: a.out.output.clone(),
        diagnostics: input.warnings.iter().map(ToString::to_string).collect(),
    })
}

#[derive(Debug, Serialize)]
struct CatalogRecord {
    name: String,
    alpha: f64,
    beta: f64,
}

fn cmd_catalog(a: &CatalogArgs) -> Result<Outcome> {
    let records: Vec<CatalogRecord> = catalog()
        .iter()
        .map(|m| CatalogRecord {
            name: m.name().to_string(),
            alpha: m.alpha(),
            beta: m.beta(),
        })
        .collect();
    let text = render_many(&records, a.out.format, || {
        let mut s = String::from("name   alpha  beta\n");
        for r in &records {
            let _ = writeln!(s, "{:<6} {:<6} {}", r.name, r.alpha, r.beta);
        }
        s
    });
    Ok(Outcome::ok(text, a.out.output.clone()))
}
