//! A MiniSat-style CDCL solver with assumptions and a conflict budget.
//!
//! Besides [`Solver::solve`], the solver exposes the pieces of its main loop
//! (decision levels, propagation, conflict handling, targeted backtracking,
//! branching) so that a caller can drive its own search over the same state,
//! as the integrated definability search does.
//!
//! Assumptions are consumed in order, each opening one decision level: an
//! unassigned assumption is enqueued as a decision, an already-true one opens
//! an empty level, and a false one ends the call with `Unsat`. Decision level
//! `i + 1` therefore always corresponds to `assumps[i]` while
//! `decision_level() <= assumps.len()`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicBool, Ordering};

use crate::{Error, Lit, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LBool {
    True,
    False,
    Undef,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Model indexed by `Var::index`.
    Sat(Vec<bool>),
    Unsat,
    /// Conflict budget exhausted or interrupted.
    Unknown,
}

impl SolveOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveOutcome::Sat(_))
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self, SolveOutcome::Unsat)
    }
}

/// Index of a stored clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClauseRef(u32);

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub solves: u64,
    pub conflicts: u64,
    pub decisions: u64,
    /// Literals dequeued by unit propagation.
    pub propagations: u64,
    /// Decision levels opened for assumption literals.
    pub assumption_insertions: u64,
    pub restarts: u64,
    pub learnt_clauses: u64,
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub var_decay: f64,
    /// Conflicts per Luby unit.
    pub restart_unit: u64,
    /// Probability of a random branching variable; 0 disables.
    pub random_var_freq: f64,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            var_decay: 0.95,
            restart_unit: 100,
            random_var_freq: 0.0,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Watcher {
    cref: u32,
    blocker: Lit,
}

#[derive(Debug)]
pub struct Solver {
    cfg: SolverConfig,
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
    learnts: Vec<u32>,
    /// watches[l] lists clauses whose first or second literal is `l`.
    watches: Vec<Vec<Watcher>>,
    assigns: Vec<LBool>,
    level: Vec<u32>,
    reason: Vec<Option<u32>>,
    assumed: Vec<bool>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    order: VarHeap,
    polarity: Vec<bool>,
    seen: Vec<bool>,
    ok: bool,
    stats: SolverStats,
    restart_count: u32,
    conflicts_since_restart: u64,
    rng: u64,
    interrupt: Option<Arc<AtomicBool>>,
}

impl Solver {
    pub fn new(num_vars: u32) -> Self {
        Self::with_config(num_vars, SolverConfig::default())
    }

    pub fn with_config(num_vars: u32, cfg: SolverConfig) -> Self {
        let n = num_vars as usize;
        let mut order = VarHeap::new(n);
        let activity = vec![0.0; n];
        for v in 0..n {
            order.insert(v as u32, &activity);
        }
        let rng = cfg.seed ^ 0x9E37_79B9_7F4A_7C15;
        Solver {
            cfg,
            num_vars: n,
            clauses: Vec::new(),
            learnts: Vec::new(),
            watches: vec![Vec::new(); 2 * n],
            assigns: vec![LBool::Undef; n],
            level: vec![0; n],
            reason: vec![None; n],
            assumed: vec![false; n],
            trail: Vec::with_capacity(n),
            trail_lim: Vec::new(),
            qhead: 0,
            activity,
            var_inc: 1.0,
            order,
            polarity: vec![false; n],
            seen: vec![false; n],
            ok: true,
            stats: SolverStats::default(),
            restart_count: 0,
            conflicts_since_restart: 0,
            rng: if rng == 0 { 1 } else { rng },
            interrupt: None,
        }
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars as u32
    }

    pub fn stats(&self) -> &SolverStats {
        &self.stats
    }

    /// `false` once a level-0 conflict has been derived.
    pub fn is_ok(&self) -> bool {
        self.ok
    }

    /// When the flag becomes true, running searches stop with `Unknown`.
    pub fn set_interrupt(&mut self, flag: Arc<AtomicBool>) {
        self.interrupt = Some(flag);
    }

    pub fn interrupted(&self) -> bool {
        self.interrupt
            .as_ref()
            .is_some_and(|f| f.load(Ordering::Relaxed))
    }

    pub fn clause(&self, cref: ClauseRef) -> &[Lit] {
        &self.clauses[cref.0 as usize]
    }

    /// Learnt clauses of length ≥ 2 (learnt units are level-0 assignments).
    pub fn learnt_clauses(&self) -> impl Iterator<Item = &[Lit]> {
        self.learnts.iter().map(|&c| self.clauses[c as usize].as_slice())
    }

    /// Literals fixed at decision level 0.
    pub fn level_zero_units(&self) -> &[Lit] {
        let end = self.trail_lim.first().copied().unwrap_or(self.trail.len());
        &self.trail[..end]
    }

    /// Adds a clause at decision level 0. Satisfied clauses are skipped and
    /// false literals dropped; an empty result makes the solver permanently
    /// unsatisfiable.
    pub fn add_clause(&mut self, lits: &[Lit]) -> Result<(), Error> {
        for l in lits {
            if l.var().id() as usize > self.num_vars {
                return Err(Error::VarOutOfRange {
                    var: l.var().id(),
                    num_vars: self.num_vars as u32,
                });
            }
        }
        assert_eq!(self.decision_level(), 0, "clauses are added at level 0");
        if !self.ok {
            return Ok(());
        }
        let mut c: Vec<Lit> = Vec::with_capacity(lits.len());
        for &l in lits {
            match self.value(l) {
                LBool::True => return Ok(()),
                LBool::False => {}
                LBool::Undef => {
                    if c.contains(&!l) {
                        return Ok(());
                    }
                    if !c.contains(&l) {
                        c.push(l);
                    }
                }
            }
        }
        match c.len() {
            0 => self.ok = false,
            1 => {
                self.enqueue(c[0], None);
                if self.propagate().is_some() {
                    self.ok = false;
                }
            }
            _ => {
                self.attach(c);
            }
        }
        Ok(())
    }

    fn attach(&mut self, c: Vec<Lit>) -> u32 {
        let cref = self.clauses.len() as u32;
        self.watches[c[0].index()].push(Watcher { cref, blocker: c[1] });
        self.watches[c[1].index()].push(Watcher { cref, blocker: c[0] });
        self.clauses.push(c);
        cref
    }

    #[inline]
    pub fn value(&self, l: Lit) -> LBool {
        match self.assigns[l.var().index()] {
            LBool::Undef => LBool::Undef,
            LBool::True if l.is_positive() => LBool::True,
            LBool::False if !l.is_positive() => LBool::True,
            _ => LBool::False,
        }
    }

    pub fn var_value(&self, v: Var) -> LBool {
        self.assigns[v.index()]
    }

    pub fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    pub fn trail(&self) -> &[Lit] {
        &self.trail
    }

    pub fn level_of(&self, v: Var) -> u32 {
        self.level[v.index()]
    }

    pub fn reason_of(&self, v: Var) -> Option<ClauseRef> {
        self.reason[v.index()].map(ClauseRef)
    }

    pub fn new_decision_level(&mut self) {
        self.trail_lim.push(self.trail.len());
    }

    /// Assigns `lit` true at the current level with an optional reason.
    pub fn enqueue(&mut self, lit: Lit, reason: Option<ClauseRef>) {
        let v = lit.var().index();
        debug_assert_eq!(self.assigns[v], LBool::Undef);
        self.assigns[v] = if lit.is_positive() {
            LBool::True
        } else {
            LBool::False
        };
        self.level[v] = self.decision_level() as u32;
        self.reason[v] = reason.map(|r| r.0);
        self.trail.push(lit);
    }

    /// Opens a level for an assumption literal, enqueuing it if unassigned.
    /// The caller must have checked that it is not false.
    pub fn push_assumption(&mut self, lit: Lit) {
        self.new_decision_level();
        self.stats.assumption_insertions += 1;
        if self.value(lit) == LBool::Undef {
            self.enqueue(lit, None);
            self.assumed[lit.var().index()] = true;
        }
    }

    /// Opens a level for a branching decision.
    pub fn push_decision(&mut self, lit: Lit) {
        self.new_decision_level();
        self.stats.decisions += 1;
        self.enqueue(lit, None);
    }

    /// Unit propagation to fixpoint; returns the first falsified clause.
    pub fn propagate(&mut self) -> Option<ClauseRef> {
        let mut conflict = None;
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = !p;
            let mut ws = core::mem::take(&mut self.watches[false_lit.index()]);
            let mut i = 0;
            let mut j = 0;
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.value(w.blocker) == LBool::True {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let cref = w.cref as usize;
                {
                    let c = &mut self.clauses[cref];
                    if c[0] == false_lit {
                        c.swap(0, 1);
                    }
                }
                let first = self.clauses[cref][0];
                if first != w.blocker && self.value(first) == LBool::True {
                    ws[j] = Watcher {
                        cref: w.cref,
                        blocker: first,
                    };
                    j += 1;
                    continue;
                }
                // look for a new literal to watch
                let len = self.clauses[cref].len();
                let mut moved = false;
                for k in 2..len {
                    let l = self.clauses[cref][k];
                    if self.value(l) != LBool::False {
                        self.clauses[cref].swap(1, k);
                        self.watches[l.index()].push(Watcher {
                            cref: w.cref,
                            blocker: first,
                        });
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = Watcher {
                    cref: w.cref,
                    blocker: first,
                };
                j += 1;
                if self.value(first) == LBool::False {
                    conflict = Some(ClauseRef(w.cref));
                    while i < ws.len() {
                        ws[j] = ws[i];
                        i += 1;
                        j += 1;
                    }
                    self.qhead = self.trail.len();
                } else {
                    self.enqueue(first, Some(ClauseRef(w.cref)));
                }
            }
            ws.truncate(j);
            self.watches[false_lit.index()] = ws;
            if conflict.is_some() {
                break;
            }
        }
        conflict
    }

    /// First-UIP analysis of a conflict at level ≥ 1. Returns the learnt
    /// clause, asserting literal first, and the backjump level (the highest
    /// level among the remaining literals, 0 for a unit).
    pub fn analyze_conflict(&mut self, conflict: ClauseRef) -> (Vec<Lit>, usize) {
        debug_assert!(self.decision_level() > 0);
        let current = self.decision_level() as u32;
        let mut learnt: Vec<Lit> = vec![Lit::from_index(0)];
        let mut path = 0usize;
        let mut p: Option<Lit> = None;
        let mut confl = conflict.0 as usize;
        let mut index = self.trail.len();

        loop {
            let len = self.clauses[confl].len();
            for k in 0..len {
                let q = self.clauses[confl][k];
                if Some(q) == p {
                    continue;
                }
                let v = q.var().index();
                if !self.seen[v] && self.level[v] > 0 {
                    self.bump_var(v);
                    self.seen[v] = true;
                    if self.level[v] >= current {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var().index()] {
                    break;
                }
            }
            let lit = self.trail[index];
            self.seen[lit.var().index()] = false;
            path -= 1;
            p = Some(lit);
            if path == 0 {
                break;
            }
            confl = self.reason[lit.var().index()].expect("implied literal has a reason") as usize;
        }
        learnt[0] = !p.unwrap();

        // drop literals whose reason is covered by the rest of the clause
        let tail: Vec<Lit> = learnt[1..].to_vec();
        let mut kept = vec![learnt[0]];
        for &q in &tail {
            let v = q.var().index();
            let redundant = match self.reason[v] {
                None => false,
                Some(r) => self.clauses[r as usize].iter().all(|&l| {
                    let u = l.var().index();
                    u == v || self.seen[u] || self.level[u] == 0
                }),
            };
            if !redundant {
                kept.push(q);
            }
        }
        for q in &tail {
            self.seen[q.var().index()] = false;
        }
        let mut learnt = kept;

        let backjump = if learnt.len() == 1 {
            0
        } else {
            let mut max_i = 1;
            for k in 2..learnt.len() {
                if self.level[learnt[k].var().index()] > self.level[learnt[max_i].var().index()] {
                    max_i = k;
                }
            }
            learnt.swap(1, max_i);
            self.level[learnt[1].var().index()] as usize
        };
        (learnt, backjump)
    }

    /// Records a conflict: analyzes it, backjumps, stores the learnt clause
    /// and enqueues its asserting literal. Returns `false` when the conflict
    /// is at level 0, which makes the solver permanently unsatisfiable.
    pub fn handle_conflict(&mut self, conflict: ClauseRef) -> bool {
        self.stats.conflicts += 1;
        self.conflicts_since_restart += 1;
        if self.decision_level() == 0 {
            self.ok = false;
            return false;
        }
        let (learnt, backjump) = self.analyze_conflict(conflict);
        self.backtrack_until(backjump);
        if learnt.len() == 1 {
            self.enqueue(learnt[0], None);
        } else {
            let asserting = learnt[0];
            let cref = self.attach(learnt);
            self.learnts.push(cref);
            self.stats.learnt_clauses += 1;
            self.enqueue(asserting, Some(ClauseRef(cref)));
        }
        self.decay_activities();
        true
    }

    /// Undoes every level above `level`, saving phases of unassigned
    /// variables (assumption literals excepted).
    pub fn backtrack_until(&mut self, level: usize) {
        if self.decision_level() <= level {
            return;
        }
        let start = self.trail_lim[level];
        for k in (start..self.trail.len()).rev() {
            let l = self.trail[k];
            let v = l.var().index();
            if !self.assumed[v] {
                self.polarity[v] = l.is_positive();
            }
            self.assumed[v] = false;
            self.assigns[v] = LBool::Undef;
            self.reason[v] = None;
            self.order.insert(v as u32, &self.activity);
        }
        self.trail.truncate(start);
        self.trail_lim.truncate(level);
        self.qhead = self.trail.len();
    }

    /// Highest-activity unassigned variable with its saved phase, or `None`
    /// when every variable is assigned.
    pub fn pick_branch_literal(&mut self) -> Option<Lit> {
        if self.cfg.random_var_freq > 0.0 && self.num_vars > 0 && self.next_f64() < self.cfg.random_var_freq {
            let v = (self.next_u64() % self.num_vars as u64) as usize;
            if self.assigns[v] == LBool::Undef {
                return Some(Lit::new(Var::from_index(v), self.polarity[v]));
            }
        }
        while let Some(v) = self.order.pop(&self.activity) {
            let v = v as usize;
            if self.assigns[v] == LBool::Undef {
                return Some(Lit::new(Var::from_index(v), self.polarity[v]));
            }
        }
        None
    }

    /// Luby schedule with `restart_unit` conflicts per unit.
    pub fn should_restart(&self) -> bool {
        self.conflicts_since_restart >= luby(self.restart_count) * self.cfg.restart_unit
    }

    /// Advances the restart schedule and backtracks to `level`.
    pub fn restart_to(&mut self, level: usize) {
        self.stats.restarts += 1;
        self.restart_count += 1;
        self.conflicts_since_restart = 0;
        self.backtrack_until(level);
    }

    /// Current assignment as a total model; unassigned variables read false.
    pub fn model(&self) -> Vec<bool> {
        self.assigns.iter().map(|&a| a == LBool::True).collect()
    }

    /// Solves under `assumps`, giving up with `Unknown` once `conflict_limit`
    /// conflicts have occurred in this call. Always returns at level 0.
    pub fn solve(&mut self, assumps: &[Lit], conflict_limit: Option<u64>) -> SolveOutcome {
        self.stats.solves += 1;
        if !self.ok {
            return SolveOutcome::Unsat;
        }
        self.backtrack_until(0);
        if let Some(c) = self.propagate() {
            self.handle_conflict(c);
            return SolveOutcome::Unsat;
        }
        let start = self.stats.conflicts;
        loop {
            let mut branch = None;
            while self.decision_level() < assumps.len() {
                let lit = assumps[self.decision_level()];
                match self.value(lit) {
                    LBool::False => {
                        self.backtrack_until(0);
                        return SolveOutcome::Unsat;
                    }
                    LBool::True => self.push_assumption(lit),
                    LBool::Undef => {
                        branch = Some(lit);
                        break;
                    }
                }
            }
            match branch {
                Some(lit) => self.push_assumption(lit),
                None => match self.pick_branch_literal() {
                    Some(lit) => self.push_decision(lit),
                    None => {
                        let model = self.model();
                        self.backtrack_until(0);
                        return SolveOutcome::Sat(model);
                    }
                },
            }
            while let Some(c) = self.propagate() {
                if !self.handle_conflict(c) {
                    return SolveOutcome::Unsat;
                }
            }
            if self.should_restart() {
                self.restart_to(0);
            }
            let spent = self.stats.conflicts - start;
            if conflict_limit.is_some_and(|lim| spent >= lim) || self.interrupted() {
                self.backtrack_until(0);
                return SolveOutcome::Unknown;
            }
        }
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in self.activity.iter_mut() {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.order.update(v as u32, &self.activity);
    }

    fn decay_activities(&mut self) {
        self.var_inc /= self.cfg.var_decay;
    }

    /// Bumps the activity of `v` as if it took part in `times` conflicts.
    pub fn bump_activity(&mut self, v: Var, times: u32) {
        for _ in 0..times {
            self.bump_var(v.index());
        }
    }

    fn next_u64(&mut self) -> u64 {
        let mut x = self.rng;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.rng = x;
        x
    }

    fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// Luby sequence 1, 1, 2, 1, 1, 2, 4, … (0-based).
fn luby(i: u32) -> u64 {
    let mut x = i as u64;
    let mut size = 1u64;
    let mut seq = 0u32;
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) / 2;
        seq -= 1;
        x %= size;
    }
    1u64 << seq
}

/// Max-heap of variables keyed by activity, ties to the lower index.
#[derive(Debug)]
struct VarHeap {
    heap: Vec<u32>,
    pos: Vec<Option<usize>>,
}

impl VarHeap {
    fn new(n: usize) -> Self {
        VarHeap {
            heap: Vec::with_capacity(n),
            pos: vec![None; n],
        }
    }

    #[inline]
    fn better(a: u32, b: u32, act: &[f64]) -> bool {
        let (x, y) = (act[a as usize], act[b as usize]);
        x > y || (x == y && a < b)
    }

    fn insert(&mut self, v: u32, act: &[f64]) {
        if self.pos[v as usize].is_some() {
            return;
        }
        self.heap.push(v);
        let i = self.heap.len() - 1;
        self.pos[v as usize] = Some(i);
        self.sift_up(i, act);
    }

    fn update(&mut self, v: u32, act: &[f64]) {
        if let Some(i) = self.pos[v as usize] {
            self.sift_up(i, act);
        }
    }

    fn pop(&mut self, act: &[f64]) -> Option<u32> {
        if self.heap.is_empty() {
            return None;
        }
        let top = self.heap.swap_remove(0);
        self.pos[top as usize] = None;
        if !self.heap.is_empty() {
            self.pos[self.heap[0] as usize] = Some(0);
            self.sift_down(0, act);
        }
        Some(top)
    }

    fn sift_up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            if !Self::better(v, self.heap[parent], act) {
                break;
            }
            self.heap[i] = self.heap[parent];
            self.pos[self.heap[i] as usize] = Some(i);
            i = parent;
        }
        self.heap[i] = v;
        self.pos[v as usize] = Some(i);
    }

    fn sift_down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        let n = self.heap.len();
        loop {
            let l = 2 * i + 1;
            if l >= n {
                break;
            }
            let r = l + 1;
            let child = if r < n && Self::better(self.heap[r], self.heap[l], act) { r } else { l };
            if !Self::better(self.heap[child], v, act) {
                break;
            }
            self.heap[i] = self.heap[child];
            self.pos[self.heap[i] as usize] = Some(i);
            i = child;
        }
        self.heap[i] = v;
        self.pos[v as usize] = Some(i);
    }
}
