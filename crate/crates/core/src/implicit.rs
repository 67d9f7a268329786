//! Implicit definability: Padoa queries over the duplicated formula.
//!
//! Both searches classify projection variables one at a time. The query for
//! `t` assumes the selectors of every variable still independent or unknown,
//! plus `x_t ∧ ¬y_t`; UNSAT means `t` is defined by them and `t` is dropped.
//! SAT or budget exhaustion keeps `t` in the support, so a tight budget can
//! only inflate the result.
//!
//! [`simple_search`] issues one `solve` call per variable and pays for
//! re-inserting every selector each time. [`integrated_implicit`] keeps the
//! selectors on the trail across queries: a refuted query only retires the
//! `x_t, ¬y_t` levels and the next selector, and restarts return to the
//! assumption frontier rather than to level 0.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::sync::atomic::AtomicBool;

use crate::cdcl::{LBool, Solver, SolverConfig, SolverStats};
use crate::padoa::{build_padoa, PadoaInstance};
use crate::{CnfFormula, IncidenceMap, Lit, SolveOutcome, Var};

/// Per-variable conflict budget used unless configured otherwise.
pub const DEFAULT_CONFLICT_BUDGET: u64 = 500;

#[derive(Debug, Clone)]
pub struct ImplicitConfig {
    /// Conflicts allowed per definability query; `None` is unlimited.
    pub conflict_budget: Option<u64>,
    pub solver: SolverConfig,
    pub interrupt: Option<Arc<AtomicBool>>,
}

impl Default for ImplicitConfig {
    fn default() -> Self {
        ImplicitConfig {
            conflict_budget: Some(DEFAULT_CONFLICT_BUDGET),
            solver: SolverConfig::default(),
            interrupt: None,
        }
    }
}

impl ImplicitConfig {
    pub fn unlimited() -> Self {
        ImplicitConfig {
            conflict_budget: None,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ImplicitStats {
    pub queries: u64,
    pub unsat: u64,
    pub sat: u64,
    pub unknown: u64,
    /// Projection variables kept without a query because no clause
    /// mentions them.
    pub unconstrained: u64,
    pub solver: SolverStats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicitResult {
    /// Ascending.
    pub support: Vec<Var>,
    pub stats: ImplicitStats,
    /// The search was interrupted; unclassified variables were kept.
    pub interrupted: bool,
}

/// The unknown sequence: ascending `(incidence, id)`. Searches pop from the
/// back, so the highest-incidence variable is queried first and ties go to
/// the higher id.
pub fn query_order(projection: &[Var], inc: &IncidenceMap) -> Vec<Var> {
    let mut order = projection.to_vec();
    order.sort_unstable_by_key(|&v| (inc.get(v), v));
    order.dedup();
    order
}

struct Setup {
    inst: PadoaInstance,
    solver: Solver,
    independent: Vec<Var>,
    unknown: Vec<Var>,
    stats: ImplicitStats,
}

fn setup(f: &CnfFormula, projection: &[Var], cfg: &ImplicitConfig) -> Setup {
    let inst = build_padoa(f, projection);
    let mut solver = Solver::with_config(inst.psi.num_vars(), cfg.solver.clone());
    for c in inst.psi.clauses() {
        solver.add_clause(c).expect("instance variables are in range");
    }
    if let Some(flag) = &cfg.interrupt {
        solver.set_interrupt(flag.clone());
    }
    let inc = IncidenceMap::compute(f);
    let mut stats = ImplicitStats::default();
    let mut independent = Vec::new();
    let mut constrained = Vec::new();
    for (x, _) in inst.selectors() {
        if inc.get(x) == 0 {
            independent.push(x);
            stats.unconstrained += 1;
        } else {
            constrained.push(x);
        }
    }
    let unknown = query_order(&constrained, &inc);
    Setup {
        inst,
        solver,
        independent,
        unknown,
        stats,
    }
}

fn finish(mut support: Vec<Var>, mut stats: ImplicitStats, solver: &Solver, interrupted: bool) -> ImplicitResult {
    support.sort_unstable();
    stats.solver = *solver.stats();
    ImplicitResult {
        support,
        stats,
        interrupted,
    }
}

fn unsat_result(stats: ImplicitStats, solver: &Solver) -> ImplicitResult {
    finish(Vec::new(), stats, solver, false)
}

/// One `solve` call per projection variable.
pub fn simple_search(f: &CnfFormula, projection: &[Var], cfg: &ImplicitConfig) -> ImplicitResult {
    let Setup {
        inst,
        mut solver,
        mut independent,
        mut unknown,
        mut stats,
    } = setup(f, projection, cfg);
    if !solver.is_ok() {
        return unsat_result(stats, &solver);
    }

    let z = |v: Var| inst.z_of(v).expect("projection variable").pos();
    let mut assumps: Vec<Lit> = Vec::new();
    while let Some(idx) = unknown.pop() {
        if solver.interrupted() {
            independent.push(idx);
            independent.append(&mut unknown);
            return finish(independent, stats, &solver, true);
        }
        assumps.clear();
        assumps.extend(independent.iter().map(|&v| z(v)));
        assumps.extend(unknown.iter().map(|&v| z(v)));
        assumps.push(idx.pos());
        assumps.push(inst.y_of(idx).neg());

        stats.queries += 1;
        match solver.solve(&assumps, cfg.conflict_budget) {
            SolveOutcome::Unsat => stats.unsat += 1,
            SolveOutcome::Sat(_) => {
                stats.sat += 1;
                independent.push(idx);
            }
            SolveOutcome::Unknown => {
                stats.unknown += 1;
                independent.push(idx);
            }
        }
        if !solver.is_ok() {
            // the duplicated formula, hence the input, is unsatisfiable
            return unsat_result(stats, &solver);
        }
    }
    finish(independent, stats, &solver, false)
}

/// All queries inside one persistent CDCL run.
///
/// The assumption sequence is laid out as `z(I) ++ z(unknown) ++ [x_t, ¬y_t]`
/// with `unknown` in pop order, so that the selector of the next variable to
/// query always sits directly below the current query pair.
pub fn integrated_implicit(f: &CnfFormula, projection: &[Var], cfg: &ImplicitConfig) -> ImplicitResult {
    let Setup {
        inst,
        mut solver,
        mut independent,
        mut unknown,
        mut stats,
    } = setup(f, projection, cfg);
    if !solver.is_ok() {
        return unsat_result(stats, &solver);
    }

    let z = |v: Var| inst.z_of(v).expect("projection variable").pos();
    let mut assumps: Vec<Lit> = independent.iter().chain(unknown.iter()).map(|&v| z(v)).collect();
    let mut query: Option<Var> = None;
    let mut query_start = 0u64;

    loop {
        let target = match query {
            Some(t) => t,
            None => {
                let Some(t) = unknown.pop() else { break };
                if solver.interrupted() {
                    independent.push(t);
                    independent.append(&mut unknown);
                    return finish(independent, stats, &solver, true);
                }
                let popped = assumps.pop();
                debug_assert_eq!(popped, Some(z(t)));
                assumps.push(t.pos());
                assumps.push(inst.y_of(t).neg());
                solver.backtrack_until(assumps.len() - 2);
                query = Some(t);
                query_start = solver.stats().conflicts;
                stats.queries += 1;
                t
            }
        };

        let mut branch = None;
        let mut refuted = false;
        while solver.decision_level() < assumps.len() {
            let lit = assumps[solver.decision_level()];
            match solver.value(lit) {
                LBool::False => {
                    refuted = true;
                    break;
                }
                LBool::True => solver.push_assumption(lit),
                LBool::Undef => {
                    branch = Some(lit);
                    break;
                }
            }
        }

        if refuted {
            if solver.decision_level() < assumps.len() - 2 {
                // a selector is refuted: the duplicated formula is
                // unsatisfiable under selectors alone, so the input is UNSAT
                return unsat_result(stats, &solver);
            }
            stats.unsat += 1;
            assumps.truncate(assumps.len() - 2);
            solver.backtrack_until(assumps.len());
            query = None;
            continue;
        }

        match branch {
            Some(lit) => solver.push_assumption(lit),
            None => {
                let spent = solver.stats().conflicts - query_start;
                let exhausted = cfg.conflict_budget.is_some_and(|b| spent >= b);
                let interrupted = solver.interrupted();
                let next = if exhausted || interrupted {
                    None
                } else {
                    solver.pick_branch_literal()
                };
                match next {
                    Some(lit) => solver.push_decision(lit),
                    None => {
                        if interrupted {
                            independent.push(target);
                            independent.append(&mut unknown);
                            return finish(independent, stats, &solver, true);
                        }
                        if exhausted {
                            stats.unknown += 1;
                        } else {
                            stats.sat += 1;
                        }
                        // keep the selector for good, below every unknown one
                        assumps.truncate(assumps.len() - 2);
                        let splice = independent.len();
                        independent.push(target);
                        assumps.insert(splice, z(target));
                        solver.backtrack_until(splice);
                        query = None;
                        continue;
                    }
                }
            }
        }

        while let Some(confl) = solver.propagate() {
            if !solver.handle_conflict(confl) {
                return unsat_result(stats, &solver);
            }
        }
        if solver.should_restart() {
            let frontier = assumps.len().min(solver.decision_level());
            solver.restart_to(frontier);
        }
    }
    finish(independent, stats, &solver, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn v(x: u32) -> Var {
        Var::new(x)
    }

    fn all(f: &CnfFormula) -> Vec<Var> {
        f.vars().collect()
    }

    fn and_formula() -> CnfFormula {
        CnfFormula::from_dimacs_clauses(3, &[&[-3, 1], &[-3, 2], &[3, -1, -2]])
    }

    #[test]
    fn order_pops_highest_incidence_first() {
        let inc = IncidenceMap::compute(&and_formula());
        assert_eq!(query_order(&[v(3), v(1), v(2)], &inc), vec![v(1), v(2), v(3)]);
        let flat = IncidenceMap::compute(&CnfFormula::from_dimacs_clauses(3, &[&[1, 2, 3]]));
        let mut order = query_order(&[v(1), v(2), v(3)], &flat);
        assert_eq!(order.pop(), Some(v(3)));
        assert_eq!(order.pop(), Some(v(2)));
        assert_eq!(query_order(&[v(2)], &flat), vec![v(2)]);
    }

    #[test]
    fn unit_formula_has_empty_support() {
        let f = CnfFormula::from_dimacs_clauses(1, &[&[1]]);
        for r in [
            simple_search(&f, &[v(1)], &ImplicitConfig::unlimited()),
            integrated_implicit(&f, &[v(1)], &ImplicitConfig::unlimited()),
        ] {
            assert!(r.support.is_empty());
            assert_eq!(r.stats.queries, 1);
            assert_eq!(r.stats.unsat, 1);
        }
    }

    #[test]
    fn and_gate_support() {
        let f = and_formula();
        for r in [
            simple_search(&f, &all(&f), &ImplicitConfig::unlimited()),
            integrated_implicit(&f, &all(&f), &ImplicitConfig::unlimited()),
        ] {
            assert_eq!(r.support, vec![v(1), v(2)]);
            assert_eq!((r.stats.unsat, r.stats.sat), (1, 2));
        }
    }

    #[test]
    fn disjunction_needs_both() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1, 2]]);
        assert_eq!(simple_search(&f, &all(&f), &ImplicitConfig::unlimited()).support, vec![v(1), v(2)]);
        assert_eq!(integrated_implicit(&f, &all(&f), &ImplicitConfig::unlimited()).support, vec![v(1), v(2)]);
    }

    #[test]
    fn unconstrained_vars_skip_queries() {
        let f = CnfFormula::from_dimacs_clauses(4, &[&[-3, 1], &[-3, 2], &[3, -1, -2]]);
        let r = integrated_implicit(&f, &all(&f), &ImplicitConfig::unlimited());
        assert_eq!(r.support, vec![v(1), v(2), v(4)]);
        assert_eq!(r.stats.unconstrained, 1);
        assert_eq!(r.stats.queries, 3);
    }

    #[test]
    fn unsat_input_gives_empty_support() {
        let f = CnfFormula::from_dimacs_clauses(3, &[&[1], &[-1]]);
        assert!(simple_search(&f, &all(&f), &ImplicitConfig::default()).support.is_empty());
        assert!(integrated_implicit(&f, &all(&f), &ImplicitConfig::default()).support.is_empty());
    }

    #[test]
    fn empty_projection() {
        let f = and_formula();
        assert!(integrated_implicit(&f, &[], &ImplicitConfig::default()).support.is_empty());
        assert!(simple_search(&f, &[], &ImplicitConfig::default()).support.is_empty());
    }

    #[test]
    fn interrupted_search_keeps_everything() {
        let f = and_formula();
        let cfg = ImplicitConfig {
            interrupt: Some(Arc::new(AtomicBool::new(true))),
            ..Default::default()
        };
        let r = simple_search(&f, &all(&f), &cfg);
        assert!(r.interrupted);
        assert_eq!(r.support, all(&f));
        let r = integrated_implicit(&f, &all(&f), &cfg);
        assert!(r.interrupted);
        assert_eq!(r.support, all(&f));
    }
}
