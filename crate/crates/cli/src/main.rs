mod commands;
mod error;
mod render;
mod spec;

use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use commands::Overrides;
use error::{CliError, CliResult};
use spec::{ProblemSpec, SCHEMA_VERSION};

/// Exact Poisson cohomology and formal deformations of {.,.}_phi on Q[x,y,z].
#[derive(Parser, Debug)]
#[command(name = "poisson-deform", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Problem file; `-` or no file reads standard input.
    #[arg(short = 'f', long = "file", global = true)]
    file: Option<String>,
    /// Truncation order N, overriding the problem file.
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Highest power of phi in the H^2 basis, overriding the problem file.
    #[arg(long = "phi-power-bound", global = true)]
    phi_power_bound: Option<usize>,
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,
    /// Emit a human-readable table instead of JSON.
    #[arg(long, global = true)]
    table: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Add wall-clock time in milliseconds to the output.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Milnor number, monomial basis and index set of the Jacobian algebra.
    Milnor,
    /// Basis of the second Poisson cohomology.
    H2,
    /// Schouten bracket of the multiderivations `p` and `q`.
    Schouten,
    /// Coboundary of the multiderivation `input`.
    Delta,
    /// Formal deformations of the bracket on 3-space.
    #[command(subcommand)]
    Deform(DeformCommand),
    /// The quotient algebra by phi.
    #[command(subcommand)]
    Surface(SurfaceCommand),
    /// Brackets {x,y} = psi on the plane.
    #[command(subcommand)]
    Plane(PlaneCommand),
    /// Randomized invariant checks for the given phi.
    Check,
    /// Run a list of jobs `{"jobs": [{"command": ..., "spec": ...}]}`.
    Batch,
}

#[derive(Subcommand, Debug)]
enum DeformCommand {
    /// Canonical deformation from a coefficient table.
    Build,
    /// Check the deformation equation order by order.
    Verify,
    /// Apply the gauge `exp(ad xi)`.
    Gauge,
    /// Recover the coefficient table and gauge of a deformation.
    Normalize,
    /// Extend a deformation by one order.
    Extend,
    /// Formal Casimir of a canonical deformation.
    Casimir,
    /// Compare the Euler gauge with its closed-form coefficients.
    EulerGauge,
}

#[derive(Subcommand, Debug)]
enum SurfaceCommand {
    H2,
    Deform,
    Verify,
    Normalize,
    Rigidity,
}

#[derive(Subcommand, Debug)]
enum PlaneCommand {
    H2dim,
}

impl Command {
    fn name(&self) -> String {
        match self {
            Command::Milnor => "milnor".into(),
            Command::H2 => "h2".into(),
            Command::Schouten => "schouten".into(),
            Command::Delta => "delta".into(),
            Command::Check => "check".into(),
            Command::Batch => "batch".into(),
            Command::Deform(d) => format!(
                "deform {}",
                match d {
                    DeformCommand::Build => "build",
                    DeformCommand::Verify => "verify",
                    DeformCommand::Gauge => "gauge",
                    DeformCommand::Normalize => "normalize",
                    DeformCommand::Extend => "extend",
                    DeformCommand::Casimir => "casimir",
                    DeformCommand::EulerGauge => "euler-gauge",
                }
            ),
            Command::Surface(s) => format!(
                "surface {}",
                match s {
                    SurfaceCommand::H2 => "h2",
                    SurfaceCommand::Deform => "deform",
                    SurfaceCommand::Verify => "verify",
                    SurfaceCommand::Normalize => "normalize",
                    SurfaceCommand::Rigidity => "rigidity",
                }
            ),
            Command::Plane(PlaneCommand::H2dim) => "plane h2dim".into(),
        }
    }
}

fn read_input(file: Option<&str>) -> CliResult<String> {
    match file {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|source| CliError::Io {
                path: "<stdin>".into(),
                source,
            })?;
            Ok(s)
        }
        Some(path) => std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.into(),
            source,
        }),
    }
}

/// Full result document for one command.
fn document(command: &str, spec: &ProblemSpec, overrides: &Overrides, timing: bool) -> CliResult<Value> {
    let spec = overrides.apply(spec);
    let start = Instant::now();
    let (summary, payload) = commands::run(command, &spec)?;
    let mut doc = serde_json::Map::new();
    doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
    doc.insert("command".into(), json!(command));
    if let Some(s) = summary {
        doc.insert("context".into(), s);
    }
    doc.extend(payload);
    if timing {
        doc.insert("timing_ms".into(), json!(start.elapsed().as_secs_f64() * 1e3));
    }
    Ok(Value::Object(doc))
}

#[derive(Deserialize)]
struct Batch {
    jobs: Vec<Job>,
}

#[derive(Deserialize)]
struct Job {
    command: String,
    spec: ProblemSpec,
}

/// Jobs run on worker threads; results keep the input order.
fn batch(text: &str, overrides: &Overrides, timing: bool) -> CliResult<Value> {
    let batch: Batch = serde_json::from_str(text)?;
    for job in &batch.jobs {
        if !commands::COMMANDS.contains(&job.command.as_str()) {
            return Err(CliError::Input(format!("unknown command {:?} in batch", job.command)));
        }
    }
    let results: Vec<Value> = std::thread::scope(|s| {
        let handles: Vec<_> = batch
            .jobs
            .iter()
            .map(|job| {
                s.spawn(move || match document(&job.command, &job.spec, overrides, timing) {
                    Ok(doc) => doc,
                    Err(e) => e.to_json(),
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "command": "batch",
        "results": results,
    }))
}

fn execute(cli: &Cli) -> CliResult<Value> {
    let common = &cli.common;
    let overrides = Overrides {
        order: common.order,
        phi_power_bound: common.phi_power_bound,
        seed: common.seed,
    };
    let text = read_input(common.file.as_deref())?;
    if let Command::Batch = cli.command {
        return batch(&text, &overrides, common.timing);
    }
    let spec = ProblemSpec::from_json(&text)?;
    document(&cli.command.name(), &spec, &overrides, common.timing)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (value, code) = match execute(&cli) {
        Ok(v) => (v, 0),
        Err(e) => (e.to_json(), e.code()),
    };
    if cli.common.table {
        print!("{}", render::table(&value));
    } else {
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    }
    ExitCode::from(code as u8)
}
