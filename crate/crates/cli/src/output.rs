//! Text output of supports and statistics.

use std::fmt::Write as _;

use indsup_core::{GateIndex, Var};

use crate::pipeline::SupportResult;

/// `c ind v1 ... vk 0` with ascending variables, then `c set size: k`.
pub fn write_support(support: &[Var]) -> String {
    let mut vars = support.to_vec();
    vars.sort_unstable();
    vars.dedup();
    let mut out = String::from("c ind ");
    for v in &vars {
        write!(out, "{v} ").unwrap();
    }
    write!(out, "0\nc set size: {}", vars.len()).unwrap();
    out
}

pub fn write_gates(gates: &GateIndex) -> String {
    let mut out = String::new();
    for g in gates.iter() {
        writeln!(out, "c gate {g}").unwrap();
    }
    out
}

/// Counter lines. Timings are left out so that output stays reproducible.
pub fn write_stats(r: &SupportResult) -> String {
    let s = &r.stats;
    let mut out = String::new();
    writeln!(
        out,
        "c stats vars {} clauses {} projection {}",
        s.num_vars, s.num_clauses, s.projection_size
    )
    .unwrap();
    if s.unsat_input {
        out.push_str("c stats input unsatisfiable\n");
    }
    if let Some(e) = &s.explicit {
        writeln!(
            out,
            "c stats explicit gates {} removed {} out {}",
            e.gates, e.removed, e.output_size
        )
        .unwrap();
    }
    if let Some(i) = &s.implicit {
        let q = &i.stats;
        writeln!(
            out,
            "c stats implicit queries {} unsat {} sat {} unknown {} unconstrained {} out {}",
            q.queries, q.unsat, q.sat, q.unknown, q.unconstrained, i.output_size
        )
        .unwrap();
        let v = &q.solver;
        writeln!(
            out,
            "c stats solver solves {} conflicts {} decisions {} propagations {} assumption-insertions {} restarts {} learnts {}",
            v.solves, v.conflicts, v.decisions, v.propagations, v.assumption_insertions, v.restarts, v.learnt_clauses
        )
        .unwrap();
    }
    if r.timed_out {
        out.push_str("c stats timeout\n");
    }
    out
}
