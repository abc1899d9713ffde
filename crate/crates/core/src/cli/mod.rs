//! Command-line surface: `bounds`, `sweep`, `witness` and `validate`.
//!
//! Exit codes: 0 success, 1 relation or property violation, 2 invalid input,
//! 3 dimension mismatch.

pub mod sweep;
pub mod validate;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::bounds::{hybrid_bound_with_lambdas, Registry, DEFAULT_LAMBDAS};
use crate::entropy::{measured_conditional_entropy, measurement_probs, shannon};
use crate::error::{Error, Result};
use crate::io::{json_number, read_basis, read_state, write_basis, write_state};
use crate::multi::{multi_bound_opt, separable_frame, witness, MeasurementChain, DEFAULT_BUDGET};
use crate::qcore::{ProjectiveBasis, QuantumState};
use crate::tol;

pub use sweep::{run_sweep, SweepOptions, Table};
pub use validate::{summarize, Instance, Summary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_DIMENSION: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "entropic",
    version,
    about = "Entropic uncertainty bounds with quantum memory"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound report for a state and two or more bases.
    Bounds(BoundsArgs),
    /// CSV data for a built-in scenario.
    Sweep(SweepArgs),
    /// Entanglement witness from a chain of bases on a bipartite system.
    Witness(WitnessArgs),
    /// Randomised invariant checks, or replay of one instance from files.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
}

#[derive(Debug, clap::Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub state: PathBuf,
    /// Basis file; repeat for each measurement.
    #[arg(long = "basis", required = true)]
    pub bases: Vec<PathBuf>,
    /// Which subsystem is the memory; the other one is measured.
    #[arg(long, value_enum, default_value = "B")]
    pub memory_side: Side,
    /// Weights for Q(λ); repeatable.
    #[arg(long = "lambda")]
    pub lambdas: Vec<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub scenario: String,
    #[arg(long)]
    pub steps: Option<usize>,
    /// Grid side for `fig4`.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Basis angle for the `werner` scenario.
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct WitnessArgs {
    #[arg(long)]
    pub state: PathBuf,
    #[arg(long = "basis", required = true)]
    pub bases: Vec<PathBuf>,
    /// Dimensions of the two measured parties.
    #[arg(long, num_args = 2, value_names = ["DX", "DY"], required = true)]
    pub split: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct ValidateArgs {
    /// Number of random instances.
    #[arg(long, default_value_t = 100)]
    pub random: usize,
    /// Dimension of both parties (overridden by --dims).
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, num_args = 2, value_names = ["DA", "DB"])]
    pub dims: Option<Vec<usize>>,
    #[arg(long, default_value_t = 2)]
    pub measurements: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Directory for the worst instance when a check fails.
    #[arg(long, default_value = "validate_failure")]
    pub dump: PathBuf,
    /// Replay: state file (measured system first).
    #[arg(long)]
    pub state: Option<PathBuf>,
    /// Replay: basis files.
    #[arg(long = "basis")]
    pub bases: Vec<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A failed command: exit code plus message.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DimensionMismatch(_) => EXIT_DIMENSION,
            Error::Inconsistent(_) => EXIT_VIOLATION,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input<T>(path: &Path, r: Result<T>) -> std::result::Result<T, Failure> {
    r.map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn emit(out: Option<&Path>, text: &str) -> std::result::Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::from(Error::from(e))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serialisable") + "\n"
}

fn load(state: &Path, bases: &[PathBuf]) -> std::result::Result<(QuantumState, Vec<ProjectiveBasis>), Failure> {
    let s = input(state, read_state(state))?;
    let b = bases
        .iter()
        .map(|p| input(p, read_basis(p)))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok((s, b))
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

pub fn run(cmd: Command) -> std::result::Result<i32, Failure> {
    match cmd {
        Command::Bounds(a) => cmd_bounds(&a),
        Command::Sweep(a) => cmd_sweep(&a),
        Command::Witness(a) => cmd_witness(&a),
        Command::Validate(a) => cmd_validate(&a),
    }
}

fn cmd_bounds(a: &BoundsArgs) -> std::result::Result<i32, Failure> {
    let (state, bases) = load(&a.state, &a.bases)?;
    if bases.len() < 2 {
        return Err(Error::InvalidArgument("at least two --basis files are needed".into()).into());
    }
    if !state.is_bipartite() {
        return Err(Error::DimensionMismatch(format!(
            "bounds need a bipartite state (measured system and memory), dims are {:?}",
            state.dims()
        ))
        .into());
    }
    let rho = match a.memory_side {
        Side::B => state,
        Side::A => state.swap_parties()?,
    };
    let side = match a.memory_side {
        Side::A => "A",
        Side::B => "B",
    };
    let (doc, ok) = if bases.len() == 2 {
        let lambdas = if a.lambdas.is_empty() {
            DEFAULT_LAMBDAS.to_vec()
        } else {
            a.lambdas.clone()
        };
        let r = hybrid_bound_with_lambdas(&rho, &bases[0], &bases[1], &Registry::with_builtins(), &lambdas)?;
        let mut m: Map<String, Value> = r.named().into_iter().map(|(k, v)| (k, json_number(v))).collect();
        m.insert(
            "lambdas".into(),
            Value::Array(lambdas.iter().map(|&l| json_number(l)).collect()),
        );
        m.insert("memory_side".into(), json!(side));
        m.insert("relation_satisfied".into(), json!(r.relation_satisfied()));
        (Value::Object(m), r.relation_satisfied())
    } else {
        let chain = MeasurementChain::new(bases.clone())?;
        let (best, order) = multi_bound_opt(&rho, &chain, None)?;
        let rho_a = rho.reduced(0)?;
        let mut conditional = 0.0;
        let mut entropic = 0.0;
        for m in &bases {
            conditional += measured_conditional_entropy(&rho, m)?;
            entropic += shannon(&measurement_probs(&rho_a, m, 0)?);
        }
        let ok = conditional >= best - tol::RELATION;
        let doc = json!({
            "N": bases.len(),
            "conditional_sum": json_number(conditional),
            "entropic_sum": json_number(entropic),
            "memory_side": side,
            "multi_bound_opt": json_number(best),
            "ordering": order,
            "relation_satisfied": ok,
        });
        (doc, ok)
    };
    emit(a.out.as_deref(), &json_text(&doc))?;
    Ok(if ok { EXIT_OK } else { EXIT_VIOLATION })
}

fn cmd_sweep(a: &SweepArgs) -> std::result::Result<i32, Failure> {
    let opts = SweepOptions {
        steps: a.steps,
        grid: a.grid,
        theta: a.theta,
    };
    let table = run_sweep(&a.scenario, &opts)?;
    emit(a.out.as_deref(), &table.to_csv())?;
    Ok(EXIT_OK)
}

fn cmd_witness(a: &WitnessArgs) -> std::result::Result<i32, Failure> {
    let (state, bases) = load(&a.state, &a.bases)?;
    let (dx, dy) = (a.split[0], a.split[1]);
    if dx * dy != state.dim() {
        return Err(Error::InvalidArgument(format!(
            "split {dx}x{dy} does not match a state of dimension {}",
            state.dim()
        ))
        .into());
    }
    if dx < 2 || dy < 2 {
        return Err(Error::InvalidArgument(format!("split {dx}x{dy} is not bipartite")).into());
    }
    let rho = QuantumState::new(state.matrix().clone(), &[dx, dy])?;
    let chain = MeasurementChain::new(bases)?;
    let frame = separable_frame(&chain, [dx, dy], a.budget, a.seed)?;
    let v = witness(&rho, &chain, &frame)?;
    let doc = json!({
        "budget": a.budget,
        "frame": v.frame.cumulative().iter().map(|&x| json_number(x)).collect::<Vec<_>>(),
        "frame_kind": "separable-heuristic",
        "lhs": json_number(v.lhs),
        "margin": json_number(v.margin),
        "rhs": json_number(v.rhs),
        "seed": a.seed,
        "split": [dx, dy],
        "verdict": v.verdict.to_string(),
    });
    emit(a.out.as_deref(), &json_text(&doc))?;
    Ok(EXIT_OK)
}

fn cmd_validate(a: &ValidateArgs) -> std::result::Result<i32, Failure> {
    let (header, instances) = match &a.state {
        Some(path) => {
            let (state, bases) = load(path, &a.bases)?;
            if bases.len() < 2 {
                return Err(Error::InvalidArgument("replay needs at least two --basis files".into()).into());
            }
            if !state.is_bipartite() || bases.iter().any(|b| b.dim() != state.dims()[0]) {
                return Err(Error::DimensionMismatch(format!(
                    "replay needs a bipartite state with bases on subsystem 0; dims {:?}, basis dims {:?}",
                    state.dims(),
                    bases.iter().map(ProjectiveBasis::dim).collect::<Vec<_>>()
                ))
                .into());
            }
            let header = format!(
                "validate: replay of {}, dims {:?}, {} measurements",
                path.display(),
                state.dims(),
                bases.len()
            );
            (header, vec![Instance { state, bases }])
        }
        None => {
            if a.random == 0 {
                return Err(Error::InvalidArgument("--random must be at least 1".into()).into());
            }
            if a.measurements < 2 {
                return Err(Error::InvalidArgument("--measurements must be at least 2".into()).into());
            }
            let dims = match &a.dims {
                Some(d) => [d[0], d[1]],
                None => [a.dim, a.dim],
            };
            if dims.iter().any(|&d| d < 2) {
                return Err(Error::InvalidArgument(format!("dimensions {dims:?} must be at least 2")).into());
            }
            let instances = (0..a.random as u64)
                .map(|i| validate::random_instance(a.seed, i, dims, a.measurements))
                .collect::<Result<Vec<_>>>()?;
            let header = format!(
                "validate: {} random instances, dims {:?}, {} measurements, seed {}",
                a.random, dims, a.measurements, a.seed
            );
            (header, instances)
        }
    };
    let summary = summarize(header, &instances);
    let violations = summary.total_violations();
    if violations > 0 {
        if let Some((i, _)) = summary.worst {
            dump(&a.dump, &instances[i])?;
            eprintln!("worst instance {i} written to {}", a.dump.display());
        }
    }
    emit(a.out.as_deref(), &summary.render())?;
    Ok(if violations == 0 { EXIT_OK } else { EXIT_VIOLATION })
}

fn dump(dir: &Path, inst: &Instance) -> std::result::Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::from(Error::from(e)))?;
    write_state(dir.join("state.json"), &inst.state)?;
    for (k, b) in inst.bases.iter().enumerate() {
        write_basis(dir.join(format!("basis_{k}.json")), b)?;
    }
    Ok(())
}
