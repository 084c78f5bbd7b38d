use std::path::PathBuf;

use serde::Serialize;

use hsx_core::hypergraph::WEIGHT_SUM_TOL;
use hsx_core::partition::BOUND_TOL;

use crate::cli::{Family, GlobalOpts, WalkKind};

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, Default, Serialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<Family>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub walk: Option<WalkKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    pub face_budget: usize,
    pub oracle_cap: usize,
    pub tol_eig: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: &str, global: &GlobalOpts) -> Self {
        RunConfig {
            command: command.to_string(),
            face_budget: global.face_budget,
            oracle_cap: global.oracle_cap,
            tol_eig: global.tol_eig,
            out: global.out.clone(),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Tolerances {
    pub eigen: f64,
    pub bound: f64,
    pub weight_sum: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report<R> {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: RunConfig,
    pub tolerances: Tolerances,
    pub result: R,
}

impl<R: Serialize> Report<R> {
    pub fn new(config: RunConfig, result: R) -> Self {
        Report {
            tool: "hsx",
            version: env!("CARGO_PKG_VERSION"),
            tolerances: Tolerances {
                eigen: config.tol_eig,
                bound: BOUND_TOL,
                weight_sum: WEIGHT_SUM_TOL,
            },
            config,
            result,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
