//! Evolutionary search for graphs of order `n` whose isolated toughness
//! variant clears the fractional k-factor threshold, harvested per minimum
//! degree.
//!
//! One run is [`initialize`], then [`run_generation_loop`], then
//! [`diversity_enhancement`] over the archive. [`solve`] chains all three.

mod diversity;
mod operators;
mod report;

pub use diversity::{diversity_enhancement, DiversityOutcome, DiversityStep, ScoredCandidate};
pub use operators::{binary_mutation, counterexample_parameter, initialize, random_graph, single_point_crossover};
pub use report::{report, Report, ReportRow};

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factors::{check_values, delta_scope, DeltaScope};
use crate::graph::{canonical_form, Graph, GraphJson};
use crate::rational::RationalValue;
use crate::stream;
use crate::toughness::{self, pseudo_greedy_i_prime};

pub const DEFAULT_SEED: u64 = 20_240_917;
pub const DEFAULT_EXACT_VERIFY_LIMIT: usize = 16;

const EVAL_STREAM: u64 = 2;
const VARIATION_STREAM: u64 = 3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverConfig {
    pub n: usize,
    pub k: u32,
    /// Population size N.
    pub population: usize,
    /// Number of generations T_max.
    pub generations: usize,
    /// Per-bit flip probability μ.
    pub mutation_rate: f64,
    /// Fraction r1 of the first population seeded from the counterexample family.
    pub counterexample_fraction: f64,
    pub seed: u64,
    /// Screened candidates up to this order are re-checked exactly before archiving.
    pub exact_verify_limit: usize,
    /// Overrides the default minimum-degree scope for `(n, k)`.
    pub scope: Option<DeltaScope>,
}

impl SolverConfig {
    pub fn new(n: usize, k: u32) -> Self {
        SolverConfig {
            n,
            k,
            population: 10,
            generations: 100,
            mutation_rate: 0.3,
            counterexample_fraction: 0.5,
            seed: DEFAULT_SEED,
            exact_verify_limit: DEFAULT_EXACT_VERIFY_LIMIT,
            scope: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let open_unit = |x: f64| x > 0.0 && x < 1.0;
        if self.population < 2 {
            return Err(Error::invalid(format!("population must be at least 2, got {}", self.population)));
        }
        if self.generations < 1 {
            return Err(Error::invalid("at least one generation is required"));
        }
        if !open_unit(self.mutation_rate) {
            return Err(Error::invalid(format!("mutation rate {} outside (0, 1)", self.mutation_rate)));
        }
        if !open_unit(self.counterexample_fraction) {
            return Err(Error::invalid(format!(
                "counterexample fraction {} outside (0, 1)",
                self.counterexample_fraction
            )));
        }
        if self.exact_verify_limit > toughness::DEFAULT_EXACT_LIMIT {
            return Err(Error::invalid(format!(
                "exact-verify limit {} above the exact engine's limit {}",
                self.exact_verify_limit,
                toughness::DEFAULT_EXACT_LIMIT
            )));
        }
        self.resolved_scope().map(|_| ())
    }

    pub fn resolved_scope(&self) -> Result<DeltaScope> {
        match self.scope {
            Some(scope) if scope.is_empty() || scope.lo < self.k => Err(Error::InfeasibleScope {
                n: self.n,
                k: self.k as usize,
            }),
            Some(scope) => Ok(scope),
            None => delta_scope(self.n, self.k),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Individual {
    pub graph: Graph,
    pub screening: Option<RationalValue>,
    /// Present only after exact verification; never above `screening`.
    pub exact: Option<RationalValue>,
}

impl Individual {
    pub fn new(graph: Graph) -> Self {
        Individual {
            graph,
            screening: None,
            exact: None,
        }
    }

    pub fn degrees(&self) -> &[u32] {
        self.graph.degrees()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateRecord {
    pub graph: Graph,
    pub delta: u32,
    /// Exact value for verified records, the screening value otherwise.
    pub i_prime: RationalValue,
    pub screening: RationalValue,
    pub generation: usize,
    pub index: usize,
    pub verified: bool,
}

impl CandidateRecord {
    pub fn to_json(&self) -> GraphJson {
        GraphJson::with_i_prime(&self.graph, self.verified.then_some(self.i_prime))
    }
}

/// One Θ_δ bucket of a generation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BucketSummary {
    pub delta: u32,
    /// I' of every accepted member, in population order.
    pub members: Vec<RationalValue>,
    pub harvested: Option<RationalValue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenerationSummary {
    pub generation: usize,
    pub population: usize,
    pub screened_accepted: usize,
    /// Screening passed but the exact value did not.
    pub rejected_by_exact: usize,
    pub buckets: Vec<BucketSummary>,
    pub unverified_buckets: Vec<BucketSummary>,
    pub elite: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateArchive {
    pub n: usize,
    pub k: u32,
    pub scope: DeltaScope,
    /// 𝒢: exact-verified harvested records.
    pub records: Vec<CandidateRecord>,
    /// Per-bucket harvests that could only be screened.
    pub unverified: Vec<CandidateRecord>,
    pub generations: Vec<GenerationSummary>,
}

#[derive(Debug, Clone, Copy)]
struct Evaluation {
    delta: u32,
    screening: RationalValue,
    screened: bool,
    exact: Option<RationalValue>,
    /// Final acceptance: exact verdict when verified, screening verdict otherwise.
    accepted: bool,
}

fn evaluate(config: &SolverConfig, scope: DeltaScope, g: &Graph, generation: usize, index: usize) -> Result<Evaluation> {
    let mut rng = stream::derive(config.seed, &[EVAL_STREAM, generation as u64, index as u64]);
    let trace = pseudo_greedy_i_prime(g, &mut rng)?;
    let delta = g.min_degree();
    let screened = check_values(delta, trace.estimate, config.k, scope).accepted();
    let mut eval = Evaluation {
        delta,
        screening: trace.estimate,
        screened,
        exact: None,
        accepted: screened,
    };
    if screened && g.order() <= config.exact_verify_limit {
        let exact = toughness::isolated_toughness_variant_value(g)?;
        eval.exact = Some(exact);
        eval.accepted = check_values(delta, exact, config.k, scope).accepted();
    }
    Ok(eval)
}

/// Picks the smallest I', breaking ties by canonical form, then by position.
fn harvest(members: &[(usize, &Graph, RationalValue)]) -> Option<usize> {
    let best = members.iter().map(|m| m.2).min()?;
    let tied: Vec<_> = members.iter().filter(|m| m.2 == best).collect();
    if tied.len() == 1 {
        return Some(tied[0].0);
    }
    tied.iter()
        .map(|m| (canonical_form(m.1), m.0))
        .min()
        .map(|(_, i)| i)
}

/// Runs `T_max` generations and returns the per-degree harvest.
pub fn run_generation_loop(config: &SolverConfig) -> Result<CandidateArchive> {
    config.validate()?;
    let scope = config.resolved_scope()?;
    let mut population = initialize(config)?;
    let mut archive = CandidateArchive {
        n: config.n,
        k: config.k,
        scope,
        records: Vec::new(),
        unverified: Vec::new(),
        generations: Vec::with_capacity(config.generations),
    };

    for generation in 0..config.generations {
        let evals = population
            .par_iter()
            .enumerate()
            .map(|(i, ind)| evaluate(config, scope, &ind.graph, generation, i))
            .collect::<Result<Vec<_>>>()?;
        for (ind, e) in population.iter_mut().zip(&evals) {
            ind.screening = Some(e.screening);
            ind.exact = e.exact;
        }

        let mut summary = GenerationSummary {
            generation,
            population: population.len(),
            screened_accepted: evals.iter().filter(|e| e.screened).count(),
            rejected_by_exact: evals.iter().filter(|e| e.screened && !e.accepted).count(),
            buckets: Vec::new(),
            unverified_buckets: Vec::new(),
            elite: 0,
        };
        for delta in scope.iter() {
            for verified in [true, false] {
                let members: Vec<_> = evals
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| e.accepted && e.delta == delta && e.exact.is_some() == verified)
                    .map(|(i, e)| (i, &population[i].graph, e.exact.unwrap_or(e.screening)))
                    .collect();
                if members.is_empty() {
                    continue;
                }
                let pick = harvest(&members).expect("non-empty bucket");
                let record = CandidateRecord {
                    graph: population[pick].graph.clone(),
                    delta,
                    i_prime: evals[pick].exact.unwrap_or(evals[pick].screening),
                    screening: evals[pick].screening,
                    generation,
                    index: pick,
                    verified,
                };
                let bucket = BucketSummary {
                    delta,
                    members: members.iter().map(|m| m.2).collect(),
                    harvested: Some(record.i_prime),
                };
                if verified {
                    summary.buckets.push(bucket);
                    archive.records.push(record);
                } else {
                    summary.unverified_buckets.push(bucket);
                    archive.unverified.push(record);
                }
            }
        }

        let elite = select_elite(&evals);
        summary.elite = elite;
        archive.generations.push(summary);

        if generation + 1 < config.generations {
            let parents: Vec<Graph> = population.iter().map(|ind| ind.graph.clone()).collect();
            let mut rng = stream::derive(config.seed, &[VARIATION_STREAM, generation as u64]);
            let children = operators::offspring(&parents, config.population - 1, config.mutation_rate, &mut rng)?;
            let mut next = Vec::with_capacity(config.population);
            next.push(Individual::new(population[elite].graph.clone()));
            next.extend(children.into_iter().map(Individual::new));
            population = next;
        }
    }
    Ok(archive)
}

/// Smallest screening I' among accepted individuals; with no accepted
/// individual, the largest screening I'. Ties go to the lower index.
fn select_elite(evals: &[Evaluation]) -> usize {
    let accepted = evals
        .iter()
        .enumerate()
        .filter(|(_, e)| e.accepted)
        .min_by(|a, b| a.1.screening.cmp(&b.1.screening).then(a.0.cmp(&b.0)));
    match accepted {
        Some((i, _)) => i,
        None => evals
            .iter()
            .enumerate()
            .max_by(|a, b| match a.1.screening.cmp(&b.1.screening) {
                Ordering::Equal => b.0.cmp(&a.0),
                other => other,
            })
            .map(|(i, _)| i)
            .unwrap_or(0),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveOutcome {
    pub archive: CandidateArchive,
    /// Empty when the archive is empty.
    pub diversity: Option<DiversityOutcome>,
}

impl SolveOutcome {
    /// 𝒢' as records, in selection order.
    pub fn diversified(&self) -> Vec<&CandidateRecord> {
        self.diversity
            .as_ref()
            .map(|d| d.selected.iter().map(|&i| &self.archive.records[i]).collect())
            .unwrap_or_default()
    }
}

/// Generation loop followed by diversity enhancement down to `N` graphs.
pub fn solve(config: &SolverConfig) -> Result<SolveOutcome> {
    let archive = run_generation_loop(config)?;
    let diversity = if archive.records.is_empty() {
        None
    } else {
        let graphs: Vec<Graph> = archive.records.iter().map(|r| r.graph.clone()).collect();
        Some(diversity_enhancement(&graphs, config.population)?)
    };
    Ok(SolveOutcome { archive, diversity })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timings {
    pub total_seconds: f64,
    pub machine: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub config: SolverConfig,
    pub scope: DeltaScope,
    pub generations: Vec<GenerationSummary>,
    pub archive: Vec<CandidateRecord>,
    pub unverified: Vec<CandidateRecord>,
    pub diversified: Vec<GraphJson>,
    pub diversity_steps: Vec<DiversityStep>,
    pub report: Report,
    /// Wall-clock figures; left null unless explicitly requested so that
    /// repeated runs produce identical manifests.
    pub timings: Option<Timings>,
}

impl RunManifest {
    pub fn new(config: &SolverConfig, outcome: &SolveOutcome, timings: Option<Timings>) -> Self {
        RunManifest {
            config: config.clone(),
            scope: outcome.archive.scope,
            generations: outcome.archive.generations.clone(),
            archive: outcome.archive.records.clone(),
            unverified: outcome.archive.unverified.clone(),
            diversified: outcome.diversified().into_iter().map(CandidateRecord::to_json).collect(),
            diversity_steps: outcome.diversity.as_ref().map(|d| d.steps.clone()).unwrap_or_default(),
            report: report(&outcome.archive),
            timings,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factors::requirement_check;

    #[test]
    fn config_validation() {
        assert!(SolverConfig::new(7, 2).validate().is_ok());
        let mut c = SolverConfig::new(7, 2);
        c.population = 1;
        assert!(c.validate().is_err());
        let mut c = SolverConfig::new(7, 2);
        c.mutation_rate = 1.0;
        assert!(c.validate().is_err());
        let mut c = SolverConfig::new(7, 2);
        c.counterexample_fraction = 0.0;
        assert!(c.validate().is_err());
        let mut c = SolverConfig::new(7, 2);
        c.generations = 0;
        assert!(c.validate().is_err());
        assert!(matches!(
            run_generation_loop(&SolverConfig::new(3, 3)),
            Err(Error::InvalidArgument(_)) | Err(Error::InfeasibleScope { .. })
        ));
    }

    #[test]
    fn infeasible_scope_before_looping() {
        let mut c = SolverConfig::new(7, 2);
        c.scope = Some(DeltaScope { lo: 3, hi: 2 });
        assert!(matches!(run_generation_loop(&c), Err(Error::InfeasibleScope { .. })));
    }

    #[test]
    fn small_run_is_sound_and_sized() {
        let mut c = SolverConfig::new(7, 2);
        c.generations = 30;
        let archive = run_generation_loop(&c).unwrap();
        assert_eq!(archive.generations.len(), 30);
        assert!(archive.generations.iter().all(|g| g.population == 10));
        assert!(archive.unverified.is_empty());
        for r in &archive.records {
            assert!(r.verified);
            assert!(r.delta == 2 || r.delta == 3);
            assert!(r.i_prime <= r.screening);
            let v = requirement_check(&r.graph, 2, archive.scope).unwrap();
            assert!(v.accepted());
            assert_eq!(v.i_prime, r.i_prime);
        }
        for g in &archive.generations {
            for b in &g.buckets {
                let h = b.harvested.unwrap();
                assert!(b.members.iter().all(|&m| h <= m));
            }
        }
    }

    #[test]
    fn runs_are_repeatable() {
        let mut c = SolverConfig::new(8, 2);
        c.generations = 10;
        let a = solve(&c).unwrap();
        let b = solve(&c).unwrap();
        assert_eq!(a, b);
        c.seed += 1;
        let d = solve(&c).unwrap();
        assert_ne!(a.archive.generations, d.archive.generations);
    }

    #[test]
    fn complete_graph_seeds_are_accepted() {
        let evals = [Graph::complete(6).unwrap(), Graph::complete(6).unwrap()]
            .iter()
            .enumerate()
            .map(|(i, g)| evaluate(&SolverConfig::new(6, 2), delta_scope(6, 2).unwrap(), g, 0, i).unwrap())
            .collect::<Vec<_>>();
        // K6 has δ = 5, outside the scope [2, 2].
        assert!(evals.iter().all(|e| !e.accepted));
        let mut wide = SolverConfig::new(6, 2);
        wide.scope = Some(DeltaScope { lo: 2, hi: 5 });
        let e = evaluate(&wide, wide.resolved_scope().unwrap(), &Graph::complete(6).unwrap(), 0, 0).unwrap();
        assert!(e.accepted);
        assert_eq!(e.exact, Some(RationalValue::INFINITY));
    }

    #[test]
    fn elite_selection_rules() {
        let e = |s: RationalValue, accepted: bool| Evaluation {
            delta: 2,
            screening: s,
            screened: accepted,
            exact: None,
            accepted,
        };
        let five = RationalValue::integer(5);
        let four = RationalValue::integer(4);
        assert_eq!(select_elite(&[e(five, true), e(four, true), e(four, true)]), 1);
        assert_eq!(select_elite(&[e(four, false), e(five, false), e(five, false)]), 1);
        assert_eq!(select_elite(&[e(four, false), e(five, true)]), 1);
    }
}
