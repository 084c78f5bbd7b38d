use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use hsx_core::{
    brute_force_min_conductance, compose_down, cycle_link_hypergraph, eigenvalues, hdx_gamma,
    hypergraph_sparse_cut, induce_complex, singular_values, splittability, sunflower_hypergraph,
    swap_graph, swap_operator, two_step_graph, updown_walk, verify_cycle_link_claims,
    verify_sunflower_claims, walk_eigenvalues, Hypergraph64, SpectralReport, SplittabilityOptions,
    VerifyOptions, WeightedGraph,
};

use crate::cli::{Cli, Command, Family, GlobalOpts, WalkKind};
use crate::report::{Report, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CLAIM_FAILED: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] hsx_core::Error),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_budget() => EXIT_BUDGET,
            _ => EXIT_INPUT,
        }
    }
}

/// The JSON document a command produced and whether its checks passed.
#[derive(Debug)]
pub struct Output {
    pub json: String,
    pub passed: bool,
}

impl Output {
    fn report<R: Serialize>(config: RunConfig, result: R, passed: bool) -> Self {
        Output {
            json: Report::new(config, result).to_json(),
            passed,
        }
    }
}

/// Reads a hypergraph file; `-` reads standard input.
pub fn read_hypergraph(path: &Path) -> Result<Hypergraph64, CliError> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|source| CliError::Read {
                path: path.into(),
                source,
            })?;
        s
    } else {
        fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.into(),
            source,
        })?
    };
    Ok(Hypergraph64::from_json(&text)?)
}

fn validate(global: &GlobalOpts, tau: Option<f64>) -> Result<(), CliError> {
    if global.face_budget == 0 || global.oracle_cap == 0 {
        return Err(CliError::Usage(
            "--face-budget and --oracle-cap must be positive".into(),
        ));
    }
    if !(global.tol_eig >= 0.0 && global.tol_eig.is_finite()) {
        return Err(CliError::Usage(format!(
            "--tol-eig must be a non-negative number, got {}",
            global.tol_eig
        )));
    }
    if let Some(t) = tau {
        if !(-1.0..=1.0).contains(&t) {
            return Err(CliError::Usage(format!(
                "--tau must lie in [-1, 1], got {t}"
            )));
        }
    }
    Ok(())
}

fn check_levels(h: &Hypergraph64, levels: &[usize]) -> Result<(), CliError> {
    match levels.iter().find(|&&l| l < 1 || l > h.k()) {
        Some(l) => Err(CliError::Usage(format!("level {l} outside 1..={}", h.k()))),
        None => Ok(()),
    }
}

fn retolerance<T>(mut report: SpectralReport<T>, tol: f64) -> SpectralReport<T> {
    report.tolerance = tol;
    report
}

#[derive(Debug, Serialize)]
struct GraphSummary {
    name: String,
    vertices: usize,
    components: usize,
    spectrum: SpectralReport<f64>,
}

impl GraphSummary {
    fn new(name: String, g: &WeightedGraph<f64>, tol: f64) -> Result<Self, CliError> {
        Ok(GraphSummary {
            vertices: g.len(),
            components: g.component_count(),
            spectrum: retolerance(eigenvalues(g, name.clone())?, tol),
            name,
        })
    }
}

#[derive(Debug, Serialize)]
struct Analysis {
    walk: WalkKind,
    levels: (usize, usize),
    operator: SpectralReport<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    square_walk: Option<SpectralReport<f64>>,
    graph: GraphSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    threshold_rank: Option<usize>,
}

fn generate(family: Family) -> Result<Hypergraph64, CliError> {
    Ok(match family {
        Family::Sunflower { r, k } => sunflower_hypergraph(r, k)?,
        Family::CycleLink { n, k } => cycle_link_hypergraph(n, k)?,
    })
}

/// Runs one command and returns its JSON output.
pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let g = &cli.global;
    let tol = g.tol_eig;
    match &cli.command {
        Command::Gen(family) => {
            validate(g, None)?;
            Ok(Output {
                json: generate(*family)?.to_json(),
                passed: true,
            })
        }
        Command::Analyze {
            input,
            walk,
            levels,
            tau,
        } => {
            validate(g, *tau)?;
            let h = read_hypergraph(input)?;
            let (m, l) = *levels;
            check_levels(&h, &[m, l])?;
            let x = induce_complex(&h, g.face_budget)?;
            let (operator, square_walk, graph) = match walk {
                WalkKind::Updown => (
                    singular_values(&compose_down(&x, m, l)?),
                    Some(retolerance(walk_eigenvalues(&updown_walk(&x, m, l)?)?, tol)),
                    GraphSummary::new(format!("B2_{{{m},{l}}}"), &two_step_graph(&x, m, l)?, tol)?,
                ),
                WalkKind::Swap => (
                    singular_values(&swap_operator(&x, m, l)?),
                    None,
                    GraphSummary::new(format!("G_{{{m},{l}}}"), &swap_graph(&x, m, l)?, tol)?,
                ),
            };
            let threshold_rank = tau.map(|t| graph.spectrum.count_at_least(t));
            let config = RunConfig {
                input: Some(input.clone()),
                levels: Some(*levels),
                walk: Some(*walk),
                tau: *tau,
                ..RunConfig::new("analyze", g)
            };
            let result = Analysis {
                walk: *walk,
                levels: *levels,
                operator: retolerance(operator, tol),
                square_walk,
                graph,
                threshold_rank,
            };
            Ok(Output::report(config, result, true))
        }
        Command::SparseCut { input, level } => {
            validate(g, None)?;
            let h = read_hypergraph(input)?;
            let cert = hypergraph_sparse_cut(&h, *level, g.face_budget)?;
            let config = RunConfig {
                input: Some(input.clone()),
                level: Some(*level),
                ..RunConfig::new("sparse-cut", g)
            };
            let passed = cert.pass;
            Ok(Output::report(config, cert, passed))
        }
        Command::LinkExpansion { input } => {
            validate(g, None)?;
            let h = read_hypergraph(input)?;
            let mut report = hdx_gamma(&induce_complex(&h, g.face_budget)?)?;
            report.tolerance = tol;
            let config = RunConfig {
                input: Some(input.clone()),
                ..RunConfig::new("link-expansion", g)
            };
            Ok(Output::report(config, report, true))
        }
        Command::Splittability { input, tau, r } => {
            validate(g, Some(*tau))?;
            let h = read_hypergraph(input)?;
            let opts = SplittabilityOptions {
                tol,
                ..Default::default()
            };
            let verdict = splittability(&induce_complex(&h, g.face_budget)?, *tau, *r, opts)?;
            let config = RunConfig {
                input: Some(input.clone()),
                tau: Some(*tau),
                r: Some(*r),
                ..RunConfig::new("splittability", g)
            };
            Ok(Output::report(config, verdict, true))
        }
        Command::Verify(family) => {
            validate(g, None)?;
            let opts = VerifyOptions {
                face_budget: g.face_budget,
                oracle_cap: g.oracle_cap,
                eigen_tol: tol,
                ..Default::default()
            };
            let report = match *family {
                Family::Sunflower { r, k } => verify_sunflower_claims(r, k, &opts)?,
                Family::CycleLink { n, k } => verify_cycle_link_claims(n, k, &opts)?,
            };
            let config = RunConfig {
                construction: Some(*family),
                ..RunConfig::new("verify", g)
            };
            let passed = report.pass();
            Ok(Output::report(config, report, passed))
        }
        Command::Oracle { input } => {
            validate(g, None)?;
            let h = read_hypergraph(input)?;
            let result = brute_force_min_conductance(&h, g.oracle_cap)?;
            let config = RunConfig {
                input: Some(input.clone()),
                ..RunConfig::new("oracle", g)
            };
            Ok(Output::report(config, result, true))
        }
    }
}

/// Runs a command, writes its output and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let outcome = execute(cli).and_then(|out| {
        match &cli.global.out {
            Some(path) => {
                fs::write(path, format!("{}\n", out.json)).map_err(|source| CliError::Write {
                    path: path.clone(),
                    source,
                })?
            }
            None => {
                let mut stdout = io::stdout().lock();
                match writeln!(stdout, "{}", out.json) {
                    Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
                        return Err(CliError::Write {
                            path: "<stdout>".into(),
                            source: e,
                        })
                    }
                    _ => {}
                }
            }
        }
        Ok(out.passed)
    });
    match outcome {
        Ok(true) => EXIT_OK,
        Ok(false) => {
            eprintln!("error: some checked claims failed");
            EXIT_CLAIM_FAILED
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
