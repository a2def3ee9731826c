//! The `majolab` command line: compute spectra, run flows, drive the ED
//! oracle.
//!
//! Exit codes are part of the contract so CI can gate on the theorems:
//!
//! * `0` — success; for flows, every majorization pair verified
//! * `1` — internal error (solver failure, I/O)
//! * `2` — invalid configuration (bad flags, model invariant violations,
//!   rejected theorem hypotheses)
//! * `3` — a majorization pair failed along a flow
//!
//! Every command accepts `--config file.json` mirroring its flags (the file
//! replaces the command line), and `MAJOLAB_SEED` overrides `--seed`.

use crate::cft;
use crate::chain::{self, ChainModel, FlowFamily};
use crate::dist::Distribution;
use crate::ed::{self, EdFlowFamily, EdModel, SpinChainSpec};
use crate::error::Error;
use crate::flow::{flow_report, FlowDirection, FlowReport};
use crate::io;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

const EXIT_OK: i32 = 0;
const EXIT_INTERNAL: i32 = 1;
const EXIT_CONFIG: i32 = 2;
const EXIT_VIOLATION: i32 = 3;

const DEFAULT_MODES: usize = 12;
const DEFAULT_TOL: f64 = 1e-12;
const DEFAULT_TAIL_TOL: f64 = 1e-14;
const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Parser)]
#[command(
    name = "majolab",
    about = "Entanglement spectra and majorization flows for critical chains and conformal towers",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalues of one reduced-density-matrix spectrum.
    Spectrum(SpectrumArgs),
    /// Spectra along a parameter grid plus the three-level loss report.
    Flow(FlowArgs),
    /// Exact-diagonalization oracle runs.
    Ed(EdArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
enum ModelArg {
    #[default]
    Xx,
    Heisenberg,
    Xy,
    Cft,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum DirectionArg {
    Ascending,
    Descending,
}

impl From<DirectionArg> for FlowDirection {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::Ascending => FlowDirection::AscendingMajorizes,
            DirectionArg::Descending => FlowDirection::DescendingMajorizes,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
struct SpectrumArgs {
    /// JSON file with these fields; replaces the rest of the command line.
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    /// Block length (XX block / CFT interval size).
    #[arg(long = "L")]
    l: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    /// Modes to assemble (capped at the XX block length).
    #[arg(long)]
    modes: Option<usize>,
    /// Scaling-spectrum JSON file (CFT model).
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    tail_tol: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
struct FlowArgs {
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    #[arg(long = "L-grid", value_delimiter = ',')]
    l_grid: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    delta_grid: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    lambda_grid: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    gamma_grid: Option<Vec<f64>>,
    /// Fixed anisotropy for XY λ-flows.
    #[arg(long)]
    gamma: Option<f64>,
    /// Fixed field for XY γ-flows.
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    modes: Option<usize>,
    /// Scaling-spectrum JSON file (CFT model).
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Sampled q(g) CSV for the CFT parameter-flow theorem.
    #[arg(long = "q-of-g")]
    q_of_g: Option<PathBuf>,
    /// Expected majorization direction; inferred from the model if omitted.
    #[arg(long, value_enum)]
    direction: Option<DirectionArg>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    tail_tol: Option<f64>,
    /// FlowReport JSON destination (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Optional summary CSV (param, entropy, largest eigenvalue, verdict).
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
struct EdArgs {
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    /// Chain length (2..=14 sites).
    #[arg(long = "N")]
    n: Option<usize>,
    /// Boundary-anchored block size.
    #[arg(long)]
    block: Option<usize>,
    /// Inclusive block-size sweep, e.g. `1..6`.
    #[arg(long)]
    block_flow: Option<String>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    delta_grid: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    lambda_grid: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    gamma_grid: Option<Vec<f64>>,
    /// Add the closed-form spectrum side by side (single-point runs).
    #[arg(long)]
    compare_formula: bool,
    /// Modes for the closed-form comparison spectrum.
    #[arg(long)]
    modes: Option<usize>,
    #[arg(long, value_enum)]
    direction: Option<DirectionArg>,
    #[arg(long)]
    tol: Option<f64>,
    /// Ground-state cache directory.
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

/// Entry point: parse `std::env::args`, run, map errors to exit codes.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Spectrum(args) => with_config(args, |a| &a.config).and_then(cmd_spectrum),
        Command::Flow(args) => with_config(args, |a| &a.config).and_then(cmd_flow),
        Command::Ed(args) => with_config(args, |a| &a.config).and_then(cmd_ed),
    };
    match outcome {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) | Error::NoConvergence { .. } => EXIT_INTERNAL,
            _ => EXIT_CONFIG,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn config_failure(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_CONFIG,
        message: msg.into(),
    }
}

/// Replace the argument record with the parsed `--config` file, if given.
fn with_config<A>(args: A, config: impl Fn(&A) -> &Option<PathBuf>) -> Result<A, Failure>
where
    A: for<'de> Deserialize<'de>,
{
    match config(&args) {
        None => Ok(args),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure {
                code: EXIT_CONFIG,
                message: format!("cannot read {}: {e}", path.display()),
            })?;
            serde_json::from_str(&text).map_err(|e| Failure {
                code: EXIT_CONFIG,
                message: format!("bad config {}: {e}", path.display()),
            })
        }
    }
}

fn resolve_seed(cli_seed: Option<u64>) -> Result<u64, Failure> {
    match std::env::var("MAJOLAB_SEED") {
        Ok(text) => text
            .trim()
            .parse::<u64>()
            .map_err(|_| config_failure(format!("MAJOLAB_SEED is not a u64: '{text}'"))),
        Err(_) => Ok(cli_seed.unwrap_or(DEFAULT_SEED)),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure {
            code: EXIT_INTERNAL,
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => {
            if text.ends_with('\n') {
                print!("{text}");
            } else {
                println!("{text}");
            }
            Ok(())
        }
    }
}

fn require<T: Copy>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| config_failure(format!("missing required flag --{flag}")))
}

fn chain_model(
    model: ModelArg,
    l: Option<f64>,
    delta: Option<f64>,
    lambda: Option<f64>,
    gamma: Option<f64>,
) -> Result<ChainModel, Failure> {
    let model = match model {
        ModelArg::Xx => {
            let l = require(l, "L")?;
            if !(l.is_finite() && l >= 2.0 && (l - l.round()).abs() < 1e-9) {
                return Err(config_failure(format!(
                    "--L must be an integer block length ≥ 2, got {l}"
                )));
            }
            ChainModel::Xx {
                block_length: l.round() as usize,
            }
        }
        ModelArg::Heisenberg => ChainModel::Heisenberg {
            delta: require(delta, "delta")?,
        },
        ModelArg::Xy => ChainModel::Xy {
            lambda: require(lambda, "lambda")?,
            gamma: require(gamma, "gamma")?,
        },
        ModelArg::Cft => return Err(config_failure("CFT models take --spec, not couplings")),
    };
    model.validate()?;
    Ok(model)
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<i32, Failure> {
    let model_arg = require(args.model, "model")?;
    let format = args.format.unwrap_or_default();
    let modes = args.modes.unwrap_or(DEFAULT_MODES);
    let tail_tol = args.tail_tol.unwrap_or(DEFAULT_TAIL_TOL);

    let text = match model_arg {
        ModelArg::Cft => {
            let spec_path = args
                .spec
                .as_deref()
                .ok_or_else(|| config_failure("missing required flag --spec"))?;
            let (spectrum, params) = io::CftSpecFile::load(spec_path)?;
            let block_length = require(args.l, "L")?;
            let q = cft::q_of_l(block_length, &params)?;
            let (z, terms_used) = cft::z_tilde(&spectrum, q, tail_tol)?;
            let weights = cft::eigenvalues(&spectrum, q, tail_tol)?;
            match format {
                OutputFormat::Csv => io::spectrum_to_csv(block_length, &weights),
                OutputFormat::Json => {
                    let doc = io::CftSpectrumDoc {
                        exponents: spectrum.exponents().to_vec(),
                        degeneracies: spectrum.degeneracies().to_vec(),
                        kappa: params.kappa,
                        uv_cutoff: params.uv_cutoff,
                        block_length,
                        q,
                        z_tilde: z,
                        terms_used,
                        weights,
                    };
                    serde_json::to_string_pretty(&doc).expect("doc serializes")
                }
            }
        }
        _ => {
            let model = chain_model(model_arg, args.l, args.delta, args.lambda, args.gamma)?;
            let modes = match model {
                ChainModel::Xx { block_length } => modes.min(block_length),
                _ => modes,
            };
            let spectrum = chain::dispersion(&model, modes)?;
            let assembled = chain::assemble(&spectrum, modes)?;
            match format {
                OutputFormat::Csv => {
                    let param = match model {
                        ChainModel::Xx { block_length } => block_length as f64,
                        ChainModel::Heisenberg { delta } => delta,
                        ChainModel::Xy { lambda, .. } => lambda,
                    };
                    io::spectrum_to_csv(param, &assembled.weights)
                }
                OutputFormat::Json => {
                    let doc = io::ChainSpectrumDoc::new(model, modes, &assembled);
                    serde_json::to_string_pretty(&doc).expect("doc serializes")
                }
            }
        }
    };
    emit(&args.out, &text)?;
    Ok(EXIT_OK)
}

fn flow_exit(report: &FlowReport) -> i32 {
    if report.levels.fine_grained {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    }
}

fn write_flow_outputs<M: Serialize>(
    doc: &io::FlowDoc<M>,
    points: &[(f64, Distribution)],
    out: &Option<PathBuf>,
    csv: &Option<PathBuf>,
) -> Result<(), Failure> {
    let json = serde_json::to_string_pretty(doc).expect("flow doc serializes");
    emit(out, &json)?;
    if let Some(path) = csv {
        let text = io::flow_summary_csv(&doc.report, points);
        std::fs::write(path, text).map_err(|e| Failure {
            code: EXIT_INTERNAL,
            message: format!("cannot write {}: {e}", path.display()),
        })?;
    }
    Ok(())
}

fn cmd_flow(args: FlowArgs) -> Result<i32, Failure> {
    let model_arg = require(args.model, "model")?;
    let modes = args.modes.unwrap_or(DEFAULT_MODES);
    let tol = args.tol.unwrap_or(DEFAULT_TOL);
    let tail_tol = args.tail_tol.unwrap_or(DEFAULT_TAIL_TOL);

    if model_arg == ModelArg::Cft {
        let spec_path = args
            .spec
            .as_deref()
            .ok_or_else(|| config_failure("missing required flag --spec"))?;
        let (spectrum, params) = io::CftSpecFile::load(spec_path)?;
        let (report, points, meta): (FlowReport, Vec<(f64, Distribution)>, serde_json::Value) =
            match (&args.l_grid, &args.q_of_g) {
                (Some(grid), None) => {
                    let report = cft::check_l_flow(&spectrum, &params, grid, tail_tol, tol)?;
                    let points = grid
                        .iter()
                        .map(|&l| {
                            let q = cft::q_of_l(l, &params)?;
                            Ok((l, cft::eigenvalues(&spectrum, q, tail_tol)?))
                        })
                        .collect::<Result<_, Error>>()?;
                    let meta = serde_json::json!({
                        "type": "cft_block_flow",
                        "spec": spec_path.display().to_string(),
                        "L_grid": grid,
                    });
                    (report, points, meta)
                }
                (None, Some(qpath)) => {
                    let qflow = io::read_qflow_csv(qpath)?;
                    let report = cft::check_parameter_flow(&spectrum, &qflow, tail_tol, tol)?;
                    let points = qflow
                        .samples()
                        .iter()
                        .map(|&(g, q)| Ok((g, cft::eigenvalues(&spectrum, q, tail_tol)?)))
                        .collect::<Result<_, Error>>()?;
                    let meta = serde_json::json!({
                        "type": "cft_parameter_flow",
                        "spec": spec_path.display().to_string(),
                        "q_of_g": qpath.display().to_string(),
                    });
                    (report, points, meta)
                }
                _ => {
                    return Err(config_failure(
                        "CFT flows take exactly one of --L-grid or --q-of-g",
                    ))
                }
            };
        let doc = io::FlowDoc {
            model: meta,
            modes: None,
            direction: report.direction,
            report,
            removed_modes: None,
        };
        write_flow_outputs(&doc, &points, &args.out, &args.csv)?;
        return Ok(flow_exit(&doc.report));
    }

    let (family, grid) = match model_arg {
        ModelArg::Xx => (
            FlowFamily::XxBlock,
            args.l_grid
                .clone()
                .ok_or_else(|| config_failure("missing required flag --L-grid"))?,
        ),
        ModelArg::Heisenberg => (
            FlowFamily::HeisenbergDelta,
            args.delta_grid
                .clone()
                .ok_or_else(|| config_failure("missing required flag --delta-grid"))?,
        ),
        ModelArg::Xy => match (&args.lambda_grid, &args.gamma_grid) {
            (Some(grid), None) => (
                FlowFamily::XyLambda {
                    gamma: require(args.gamma, "gamma")?,
                },
                grid.clone(),
            ),
            (None, Some(grid)) => (
                FlowFamily::XyGamma {
                    lambda: require(args.lambda, "lambda")?,
                },
                grid.clone(),
            ),
            _ => {
                return Err(config_failure(
                    "XY flows take exactly one of --lambda-grid or --gamma-grid",
                ))
            }
        },
        ModelArg::Cft => unreachable!(),
    };

    let direction = match args.direction {
        Some(d) => d.into(),
        None => family.natural_direction(&grid)?,
    };
    let chain_flow = chain::flow(&family, &grid, modes)?;
    let points = chain_flow.distributions();
    let report = flow_report(&points, direction, tol)?;
    let doc = io::FlowDoc {
        model: family,
        modes: Some(modes),
        direction,
        report,
        removed_modes: io::RemovedModeDoc::from_flow(&chain_flow),
    };
    write_flow_outputs(&doc, &points, &args.out, &args.csv)?;
    Ok(flow_exit(&doc.report))
}

fn ed_model(
    model: ModelArg,
    delta: Option<f64>,
    lambda: Option<f64>,
    gamma: Option<f64>,
) -> Result<EdModel, Failure> {
    Ok(match model {
        ModelArg::Xx => EdModel::Xx,
        ModelArg::Heisenberg => EdModel::Heisenberg {
            delta: require(delta, "delta")?,
        },
        ModelArg::Xy => EdModel::Xy {
            lambda: require(lambda, "lambda")?,
            gamma: require(gamma, "gamma")?,
        },
        ModelArg::Cft => return Err(config_failure("the ED oracle has no CFT model")),
    })
}

fn parse_block_range(text: &str) -> Result<Vec<usize>, Failure> {
    let parts: Vec<&str> = text.split("..").collect();
    let bad = || config_failure(format!("--block-flow expects 'a..b', got '{text}'"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let a: usize = parts[0].trim().parse().map_err(|_| bad())?;
    let b: usize = parts[1].trim().parse().map_err(|_| bad())?;
    if a == 0 || b < a {
        return Err(bad());
    }
    Ok((a..=b).collect())
}

/// Closed-form counterpart of an ED run, for `--compare-formula`.
fn formula_spectrum(model: EdModel, block: usize, modes: usize) -> Result<Distribution, Failure> {
    let chain_model = match model {
        EdModel::Xx => ChainModel::Xx {
            block_length: block,
        },
        EdModel::Heisenberg { delta } => ChainModel::Heisenberg { delta },
        EdModel::Xy { lambda, gamma } => ChainModel::Xy { lambda, gamma },
    };
    let modes = match chain_model {
        ChainModel::Xx { block_length } => modes.min(block_length),
        _ => modes,
    };
    let spectrum = chain::dispersion(&chain_model, modes)?;
    Ok(chain::assemble(&spectrum, modes)?.weights)
}

#[derive(Serialize)]
struct EdPointDoc {
    model: EdModel,
    sites: usize,
    block: usize,
    energy: f64,
    gap: f64,
    degenerate: bool,
    weights: Distribution,
}

fn cmd_ed(args: EdArgs) -> Result<i32, Failure> {
    let model_arg = require(args.model, "model")?;
    let sites = require(args.n, "N")?;
    let tol = args.tol.unwrap_or(1e-10);
    let seed = resolve_seed(args.seed)?;
    let cache = args.cache.as_deref();

    // grid runs produce a flow report; a bare --block is a single spectrum
    let family = if let Some(range) = &args.block_flow {
        let model = ed_model(model_arg, args.delta, args.lambda, args.gamma)?;
        Some(EdFlowFamily::BlockFlow {
            model,
            sites,
            blocks: parse_block_range(range)?,
        })
    } else if let Some(deltas) = &args.delta_grid {
        Some(EdFlowFamily::DeltaFlow {
            sites,
            block: require(args.block, "block")?,
            deltas: deltas.clone(),
        })
    } else if let Some(lambdas) = &args.lambda_grid {
        Some(EdFlowFamily::LambdaFlow {
            sites,
            block: require(args.block, "block")?,
            gamma: require(args.gamma, "gamma")?,
            lambdas: lambdas.clone(),
        })
    } else if let Some(gammas) = &args.gamma_grid {
        Some(EdFlowFamily::GammaFlow {
            sites,
            block: require(args.block, "block")?,
            lambda: require(args.lambda, "lambda")?,
            gammas: gammas.clone(),
        })
    } else {
        None
    };

    if let Some(family) = family {
        let flow = ed::ed_flow_check(&family, args.direction.map(Into::into), tol, seed, cache)?;
        let doc = io::FlowDoc {
            model: family,
            modes: None,
            direction: flow.report.direction,
            report: flow.report.clone(),
            removed_modes: None,
        };
        write_flow_outputs(&doc, &flow.points, &args.out, &args.csv)?;
        return Ok(flow_exit(&flow.report));
    }

    // single-point run
    let block = require(args.block, "block")?;
    let model = ed_model(model_arg, args.delta, args.lambda, args.gamma)?;
    let spec = SpinChainSpec::new(model, sites)?;
    let gs = ed::ground_state_cached(&spec, seed, cache)?;
    let weights = ed::reduced_spectrum(&gs.state, sites, ed::boundary_block(block))?;

    let text = if args.compare_formula {
        let modes = args.modes.unwrap_or(DEFAULT_MODES);
        let formula = formula_spectrum(model, block, modes)?;
        let param = match model {
            EdModel::Xx => block as f64,
            EdModel::Heisenberg { delta } => delta,
            EdModel::Xy { lambda, .. } => lambda,
        };
        io::comparison_csv(param, &weights, &formula)
    } else {
        match args.format.unwrap_or_default() {
            OutputFormat::Csv => io::spectrum_to_csv(block as f64, &weights),
            OutputFormat::Json => serde_json::to_string_pretty(&EdPointDoc {
                model,
                sites,
                block,
                energy: gs.energy,
                gap: gs.gap,
                degenerate: gs.degenerate,
                weights,
            })
            .expect("doc serializes"),
        }
    };
    emit(&args.out, &text)?;
    Ok(EXIT_OK)
}
