//! Relation checking: each suite evaluates residuals of known relations,
//! symbolically in the engine and in the evaluation representation.

mod center;
pub mod cleared;
mod consistency;
mod drinfeld;
mod embedding;
mod gauss_layer;
mod hopf_free;
mod main_theorem;
mod r_matrix;
pub mod report;
pub mod target;
mod util;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::rc::Rc;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use thiserror::Error;

use crate::evalrep::{build_family, RepAssignment, REP_POINTS};
use crate::ncseries::Engine;
use crate::rational::fmt_q;
use crate::superspace::tensor::Mutation;
use crate::superspace::{RMatrixForm, SpaceError, SuperSpace};

pub use center::product_formula;
pub use report::{Failure, MutationReport, RepGate, RepPart, RunReport, Status, SuiteReport, Tally};
pub use target::{InRep, Model, Symbolic, Target};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuiteId {
    RMatrix,
    Engine,
    Gauss,
    Center,
    HRelations,
    DrinfeldExtended,
    MainTheorem,
    Embedding,
    HopfFree,
}

impl SuiteId {
    pub const ALL: [SuiteId; 9] = [
        SuiteId::RMatrix,
        SuiteId::Engine,
        SuiteId::Gauss,
        SuiteId::Center,
        SuiteId::HRelations,
        SuiteId::DrinfeldExtended,
        SuiteId::MainTheorem,
        SuiteId::Embedding,
        SuiteId::HopfFree,
    ];

    /// Suites that a mutated R-matrix must break.
    pub const MUTATION_TARGETS: [SuiteId; 2] = [SuiteId::Center, SuiteId::DrinfeldExtended];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::RMatrix => "r_matrix",
            SuiteId::Engine => "engine",
            SuiteId::Gauss => "gauss",
            SuiteId::Center => "center",
            SuiteId::HRelations => "h_relations",
            SuiteId::DrinfeldExtended => "drinfeld_extended",
            SuiteId::MainTheorem => "main_theorem",
            SuiteId::Embedding => "embedding",
            SuiteId::HopfFree => "hopf_free",
        }
    }

    /// Accepts the plain name or a `suite_` prefixed one.
    pub fn parse(s: &str) -> Option<SuiteId> {
        let s = s.trim();
        let s = s.strip_prefix("suite_").unwrap_or(s);
        SuiteId::ALL.into_iter().find(|id| id.name() == s)
    }

    /// A comma-separated list, or `all`; duplicates collapse, order follows [`SuiteId::ALL`].
    pub fn parse_list(s: &str) -> Result<Vec<SuiteId>, RunError> {
        if s.trim() == "all" {
            return Ok(SuiteId::ALL.to_vec());
        }
        let mut out = Vec::new();
        for part in s.split(',').filter(|p| !p.trim().is_empty()) {
            out.push(SuiteId::parse(part).ok_or_else(|| RunError::UnknownSuite(part.trim().to_string()))?);
        }
        if out.is_empty() {
            return Err(RunError::UnknownSuite(s.to_string()));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

/// Per-suite parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub k: usize,
    pub seed: u64,
}

/// Runs one suite against one target.
pub fn run_suite<T: Target>(id: SuiteId, model: &Model<T>, cfg: &SuiteConfig) -> Tally {
    let mut tally = Tally::default();
    match id {
        SuiteId::RMatrix => r_matrix::run(model, cfg, &mut tally),
        SuiteId::Engine => consistency::run(model, cfg, &mut tally),
        SuiteId::Gauss => gauss_layer::run(model, cfg, &mut tally),
        SuiteId::Center => center::run(model, cfg, &mut tally),
        SuiteId::HRelations => center::run_h(model, cfg, &mut tally),
        SuiteId::DrinfeldExtended => drinfeld::run(model, cfg, &mut tally),
        SuiteId::MainTheorem => main_theorem::run(model, cfg, &mut tally),
        SuiteId::Embedding => embedding::run(model, cfg, &mut tally),
        SuiteId::HopfFree => hopf_free::run(model, cfg, &mut tally),
    }
    tally
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub n_big: usize,
    pub m: usize,
    pub k: usize,
    pub seed: u64,
    pub suites: Vec<SuiteId>,
    pub rep_check: bool,
    pub mutation_controls: bool,
    pub threads: usize,
    /// Record wall-clock times; off by default so reports are reproducible.
    pub timings: bool,
}

impl RunConfig {
    pub fn new(n_big: usize, m: usize, k: usize) -> Self {
        RunConfig {
            n_big,
            m,
            k,
            seed: 42,
            suites: SuiteId::ALL.to_vec(),
            rep_check: true,
            mutation_controls: false,
            threads: 1,
            timings: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RunError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("truncation order K = {0} is too small (need K >= 2)")]
    InvalidK(usize),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

impl RunError {
    pub fn code(&self) -> &'static str {
        match self {
            RunError::Space(e) => e.code(),
            RunError::InvalidK(_) => "invalid-K",
            RunError::UnknownSuite(_) => "unknown-suite",
        }
    }
}

/// Worker stack size: the rewriting recursion is deep for large words.
const STACK_BYTES: usize = 512 << 20;

enum Job {
    Suite(SuiteId),
    Mutant(Mutation, SuiteId),
}

enum Outcome {
    Suite(SuiteReport),
    Mutant(Mutation, SuiteId, bool),
}

fn panic_tally(what: &str, payload: Box<dyn std::any::Any + Send>) -> Tally {
    let msg = payload
        .downcast_ref::<String>()
        .cloned()
        .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_default();
    let mut t = Tally::default();
    t.check_bool(false, &format!("{what} panicked"), &[], || vec![msg]);
    t
}

fn rep_part(t: Tally) -> RepPart {
    RepPart {
        status: t.status(),
        instances_checked: t.instances_checked,
        failures_total: t.failures_total,
        failures: t.failures,
    }
}

fn run_job(job: &Job, space: &SuperSpace, cfg: &RunConfig, reps: Option<&[RepAssignment]>) -> Outcome {
    let sc = SuiteConfig { k: cfg.k, seed: cfg.seed };
    match *job {
        Job::Suite(id) => {
            let start = Instant::now();
            let engine = Rc::new(Engine::new(space));
            let model = Model::new(Symbolic::new(engine.clone()));
            let tally = catch_unwind(AssertUnwindSafe(|| run_suite(id, &model, &sc)))
                .unwrap_or_else(|p| panic_tally(id.name(), p));
            let rep = reps.map(|reps| {
                let mut all = Tally::default();
                for r in reps {
                    let target = Model::new(InRep::new(r, Some(&model)));
                    let t = catch_unwind(AssertUnwindSafe(|| run_suite(id, &target, &sc)))
                        .unwrap_or_else(|p| panic_tally(id.name(), p));
                    all.absorb(t);
                }
                rep_part(all)
            });
            let millis = if cfg.timings { start.elapsed().as_millis() as u64 } else { 0 };
            Outcome::Suite(SuiteReport {
                suite: id.name().to_string(),
                n_big: cfg.n_big,
                m: cfg.m,
                k: cfg.k,
                status: tally.status(),
                instances_checked: tally.instances_checked,
                failures_total: tally.failures_total,
                failures: tally.failures,
                millis,
                engine: engine.stats(),
                rep,
            })
        }
        Job::Mutant(mutation, id) => {
            let engine = Rc::new(Engine::with_form(space, RMatrixForm::mutated(space, mutation)));
            let model = Model::new(Symbolic::new(engine));
            let failed = catch_unwind(AssertUnwindSafe(|| run_suite(id, &model, &sc)))
                .map(|t| t.status() == Status::Fail)
                .unwrap_or(true);
            Outcome::Mutant(mutation, id, failed)
        }
    }
}

/// Runs the requested suites (and mutation controls) and aggregates a report.
pub fn run(cfg: &RunConfig) -> Result<RunReport, RunError> {
    let space = SuperSpace::new(cfg.n_big, cfg.m)?;
    if cfg.k < 2 {
        return Err(RunError::InvalidK(cfg.k));
    }
    let (gate, reps) = if cfg.rep_check {
        match build_family(&space, cfg.seed, REP_POINTS) {
            Ok(reps) => (
                RepGate {
                    status: Status::Pass,
                    shifts: reps.iter().map(|r| fmt_q(r.shift())).collect(),
                    message: None,
                },
                Some(reps),
            ),
            Err(e) => (RepGate { status: Status::Fail, shifts: Vec::new(), message: Some(e.to_string()) }, None),
        }
    } else {
        let gate = RepGate { status: Status::Skipped, shifts: Vec::new(), message: None };
        (gate, None)
    };

    let mut jobs: Vec<Job> = cfg.suites.iter().map(|&id| Job::Suite(id)).collect();
    if cfg.mutation_controls {
        for mutation in Mutation::ALL {
            for id in SuiteId::MUTATION_TARGETS {
                jobs.push(Job::Mutant(mutation, id));
            }
        }
    }
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<(usize, Outcome)>> = Mutex::new(Vec::new());
    let workers = cfg.threads.clamp(1, jobs.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..workers {
            let (jobs, next, results, space, reps) = (&jobs, &next, &results, &space, reps.as_deref());
            std::thread::Builder::new()
                .stack_size(STACK_BYTES)
                .spawn_scoped(s, move || loop {
                    let i = next.fetch_add(1, Ordering::SeqCst);
                    let Some(job) = jobs.get(i) else { break };
                    let out = run_job(job, space, cfg, reps);
                    results.lock().expect("no poisoned results").push((i, out));
                })
                .expect("spawn worker");
        }
    });
    let mut results = results.into_inner().expect("no poisoned results");
    results.sort_by_key(|(i, _)| *i);

    let mut suites = Vec::new();
    let mut mutants: Vec<(Mutation, SuiteId, bool)> = Vec::new();
    for (_, out) in results {
        match out {
            Outcome::Suite(r) => suites.push(r),
            Outcome::Mutant(m, id, failed) => mutants.push((m, id, failed)),
        }
    }
    let mutation_controls: Vec<MutationReport> = if cfg.mutation_controls {
        Mutation::ALL
            .into_iter()
            .map(|m| {
                let failing: Vec<String> = mutants
                    .iter()
                    .filter(|(mm, _, failed)| *mm == m && *failed)
                    .map(|(_, id, _)| id.name().to_string())
                    .collect();
                MutationReport {
                    mutation: m.name().to_string(),
                    detected: !failing.is_empty(),
                    failing_suites: failing,
                }
            })
            .collect()
    } else {
        Vec::new()
    };

    let ok = gate.status != Status::Fail
        && suites.iter().all(|s| s.passed())
        && mutation_controls.iter().all(|m| m.detected);
    Ok(RunReport {
        n_big: cfg.n_big,
        m: cfg.m,
        k: cfg.k,
        seed: cfg.seed,
        status: if ok { Status::Pass } else { Status::Fail },
        rep_gate: gate,
        suites,
        mutation_controls,
    })
}
