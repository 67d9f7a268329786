//! Explicit then implicit support extraction, with optional verification
//! and a wall-clock limit.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::mpsc;
use std::sync::Arc;
use std::thread;
use std::time::{Duration, Instant};

use indsup_core::gates::{recover_gates, MAX_XOR_LEN};
use indsup_core::implicit::{ImplicitStats, DEFAULT_CONFLICT_BUDGET};
use indsup_core::oracle;
use indsup_core::{
    greedy_ind_search, integrated_implicit, simple_search, CnfFormula, GateIndex, ImplicitConfig, IncidenceMap,
    OccurrenceList, SolveOutcome, Solver, SolverConfig, Var,
};

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    /// Conflicts per definability query; `None` is unlimited.
    pub conflict_budget_per_var: Option<u64>,
    pub run_explicit: bool,
    pub run_implicit: bool,
    pub use_simple_search: bool,
    pub xor_max_len: usize,
    pub verify: bool,
    pub seed: u64,
    pub wall_timeout: Option<Duration>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            conflict_budget_per_var: Some(DEFAULT_CONFLICT_BUDGET),
            run_explicit: true,
            run_implicit: true,
            use_simple_search: false,
            xor_max_len: MAX_XOR_LEN,
            verify: false,
            seed: 0,
            wall_timeout: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("xor length limit must be between 2 and {MAX_XOR_LEN}, got {0}")]
    XorLen(usize),
}

#[derive(Debug, Clone, Default)]
pub struct ExplicitPhaseStats {
    pub gates: usize,
    pub removed: usize,
    pub output_size: usize,
    pub time: Duration,
}

#[derive(Debug, Clone, Default)]
pub struct ImplicitPhaseStats {
    pub stats: ImplicitStats,
    pub output_size: usize,
    pub time: Duration,
}

#[derive(Debug, Clone, Default)]
pub struct PipelineStats {
    pub num_vars: u32,
    pub num_clauses: usize,
    pub projection_size: usize,
    pub unsat_input: bool,
    pub explicit: Option<ExplicitPhaseStats>,
    pub implicit: Option<ImplicitPhaseStats>,
    pub total_time: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verification {
    Passed,
    Failed,
    /// The formula is too large for enumeration.
    Skipped(String),
}

#[derive(Debug, Clone)]
pub struct SupportResult {
    /// Ascending.
    pub support: Vec<Var>,
    /// Output of the explicit phase, when it ran.
    pub explicit_support: Option<Vec<Var>>,
    pub gates: GateIndex,
    pub stats: PipelineStats,
    /// The wall limit fired; `support` is still sound but may not be minimal.
    pub timed_out: bool,
    pub verification: Option<Verification>,
}

/// Sets a flag after `limit` unless dropped first.
struct Alarm {
    flag: Arc<AtomicBool>,
    cancel: Option<mpsc::Sender<()>>,
    handle: Option<thread::JoinHandle<()>>,
}

impl Alarm {
    fn new(limit: Option<Duration>) -> Alarm {
        let flag = Arc::new(AtomicBool::new(false));
        let Some(limit) = limit else {
            return Alarm {
                flag,
                cancel: None,
                handle: None,
            };
        };
        let (tx, rx) = mpsc::channel::<()>();
        let f = flag.clone();
        let handle = thread::spawn(move || {
            if let Err(mpsc::RecvTimeoutError::Timeout) = rx.recv_timeout(limit) {
                f.store(true, Ordering::Relaxed);
            }
        });
        Alarm {
            flag,
            cancel: Some(tx),
            handle: Some(handle),
        }
    }

    fn fired(&self) -> bool {
        self.flag.load(Ordering::Relaxed)
    }
}

impl Drop for Alarm {
    fn drop(&mut self) {
        drop(self.cancel.take());
        if let Some(h) = self.handle.take() {
            let _ = h.join();
        }
    }
}

pub fn run_pipeline(f: &CnfFormula, cfg: &PipelineConfig) -> Result<SupportResult, ConfigError> {
    if !(2..=MAX_XOR_LEN).contains(&cfg.xor_max_len) {
        return Err(ConfigError::XorLen(cfg.xor_max_len));
    }
    let start = Instant::now();
    let alarm = Alarm::new(cfg.wall_timeout);
    let solver_cfg = SolverConfig {
        seed: cfg.seed,
        ..Default::default()
    };
    let mut stats = PipelineStats {
        num_vars: f.num_vars(),
        num_clauses: f.num_clauses(),
        projection_size: f.projection().len(),
        ..Default::default()
    };
    let mut result = SupportResult {
        support: f.projection().to_vec(),
        explicit_support: None,
        gates: GateIndex::new(),
        stats: PipelineStats::default(),
        timed_out: false,
        verification: None,
    };

    let mut solver = Solver::with_config(f.num_vars(), solver_cfg.clone());
    solver.set_interrupt(alarm.flag.clone());
    for c in f.clauses() {
        solver.add_clause(c).expect("formula variables are in range");
    }
    if solver.solve(&[], cfg.conflict_budget_per_var) == SolveOutcome::Unsat {
        stats.unsat_input = true;
        result.support.clear();
    }
    drop(solver);

    if !stats.unsat_input && cfg.run_explicit && !alarm.fired() {
        let t = Instant::now();
        let occ = OccurrenceList::build(f);
        let inc = IncidenceMap::compute(f);
        let gates = recover_gates(f, &occ, cfg.xor_max_len);
        let r = greedy_ind_search(&gates, &result.support, &inc);
        stats.explicit = Some(ExplicitPhaseStats {
            gates: gates.len(),
            removed: r.removed.len(),
            output_size: r.support.len(),
            time: t.elapsed(),
        });
        result.gates = gates;
        result.explicit_support = Some(r.support.clone());
        result.support = r.support;
    }

    if !stats.unsat_input && cfg.run_implicit && !alarm.fired() {
        let t = Instant::now();
        let icfg = ImplicitConfig {
            conflict_budget: cfg.conflict_budget_per_var,
            solver: solver_cfg,
            interrupt: Some(alarm.flag.clone()),
        };
        let r = if cfg.use_simple_search {
            simple_search(f, &result.support, &icfg)
        } else {
            integrated_implicit(f, &result.support, &icfg)
        };
        stats.implicit = Some(ImplicitPhaseStats {
            stats: r.stats,
            output_size: r.support.len(),
            time: t.elapsed(),
        });
        result.support = r.support;
    }

    result.timed_out = alarm.fired();
    drop(alarm);
    result.support.sort_unstable();
    if cfg.verify {
        result.verification = Some(verify(f, &result.support));
    }
    stats.total_time = start.elapsed();
    result.stats = stats;
    Ok(result)
}

fn verify(f: &CnfFormula, support: &[Var]) -> Verification {
    match oracle::is_independent_support(f, f.projection(), support) {
        Ok(true) => Verification::Passed,
        Ok(false) => Verification::Failed,
        Err(e) => Verification::Skipped(e.to_string()),
    }
}
