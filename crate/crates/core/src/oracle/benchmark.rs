use std::time::Instant;

use serde::Serialize;

use super::enumerate_exact;
use crate::error::Result;
use crate::evolve::{report, run_generation_loop, SolverConfig};
use crate::rational::RationalValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Agreement {
    /// Solver found the exhaustive optimum.
    Equal,
    /// Solver's best is worse (larger) than the optimum.
    Above,
    /// Solver archived nothing at this δ while a feasible graph exists.
    Missing,
    /// Neither engine found a feasible graph.
    BothEmpty,
    /// Solver beat the exhaustive optimum or found a graph where none
    /// exists; only possible through a bug.
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaComparison {
    pub delta: u32,
    pub solver: Option<RationalValue>,
    pub exact: Option<RationalValue>,
    pub agreement: Agreement,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkReport {
    pub n: usize,
    pub k: u32,
    pub seed: u64,
    pub comparisons: Vec<DeltaComparison>,
    pub solver_seconds: f64,
    pub enumeration_seconds: f64,
    pub machine: String,
}

impl BenchmarkReport {
    pub fn all_equal(&self) -> bool {
        self.comparisons
            .iter()
            .all(|c| matches!(c.agreement, Agreement::Equal | Agreement::BothEmpty))
    }

    pub fn consistent(&self) -> bool {
        self.comparisons.iter().all(|c| c.agreement != Agreement::Inconsistent)
    }

    /// Enumeration time over solver time.
    pub fn speedup(&self) -> f64 {
        self.enumeration_seconds / self.solver_seconds.max(f64::MIN_POSITIVE)
    }
}

pub fn machine_descriptor() -> String {
    format!(
        "{}-{}, {} worker threads",
        std::env::consts::ARCH,
        std::env::consts::OS,
        rayon::current_num_threads()
    )
}

fn compare(solver: Option<RationalValue>, exact: Option<RationalValue>) -> Agreement {
    match (solver, exact) {
        (None, None) => Agreement::BothEmpty,
        (None, Some(_)) => Agreement::Missing,
        (Some(_), None) => Agreement::Inconsistent,
        (Some(s), Some(e)) if s == e => Agreement::Equal,
        (Some(s), Some(e)) if s > e => Agreement::Above,
        _ => Agreement::Inconsistent,
    }
}

/// Times one solver run against the exhaustive scan at the same `(n, k)`.
pub fn benchmark(config: &SolverConfig) -> Result<BenchmarkReport> {
    let start = Instant::now();
    let archive = run_generation_loop(config)?;
    let solver_seconds = start.elapsed().as_secs_f64();
    let summary = report(&archive);

    let exact = enumerate_exact(config.n, config.k, Some(archive.scope))?;
    let comparisons = summary
        .rows
        .iter()
        .map(|row| {
            let e = exact.optimum(row.delta);
            DeltaComparison {
                delta: row.delta,
                solver: row.best,
                exact: e,
                agreement: compare(row.best, e),
            }
        })
        .collect();
    Ok(BenchmarkReport {
        n: config.n,
        k: config.k,
        seed: config.seed,
        comparisons,
        solver_seconds,
        enumeration_seconds: exact.elapsed.as_secs_f64(),
        machine: machine_descriptor(),
    })
}
