//! Syntactic recovery of AND and XOR definitions from a clause database.
//!
//! AND gates follow the binary-partner marking sweep: for an output literal
//! `o`, the partners of `¬o` in binary clauses are marked, then every
//! ternary clause containing `o` whose other literals are all negations of
//! marked partners yields `o = AND(a, b)`. Both polarities of each variable
//! are tried, so OR gates come out as AND gates over negated literals.
//!
//! XOR constraints are found exactly: clauses are grouped by their variable
//! set and a group is accepted when its clauses, together with shorter
//! clauses over a subset of the same variables, forbid every assignment of
//! one parity.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{CnfFormula, Lit, OccurrenceList, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GateOp {
    And,
    Xor,
}

impl fmt::Display for GateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GateOp::And => "AND",
            GateOp::Xor => "XOR",
        })
    }
}

/// `out = op(inputs)`, entailed by the formula it was recovered from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateDef {
    pub out: Lit,
    pub op: GateOp,
    pub inputs: Vec<Lit>,
}

impl GateDef {
    /// Evaluates `out ↔ op(inputs)` under an assignment indexed by `Var::index`.
    pub fn holds(&self, assignment: &[bool]) -> bool {
        let val = |l: Lit| l.eval(assignment[l.var().index()]);
        let rhs = match self.op {
            GateOp::And => self.inputs.iter().all(|&l| val(l)),
            GateOp::Xor => self.inputs.iter().fold(false, |acc, &l| acc ^ val(l)),
        };
        val(self.out) == rhs
    }

    pub fn input_vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.inputs.iter().map(|l| l.var())
    }
}

impl fmt::Display for GateDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}(", self.out, self.op)?;
        for (i, l) in self.inputs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str(")")
    }
}

/// Recovered gates keyed by output variable, in recovery order.
#[derive(Debug, Clone, Default)]
pub struct GateIndex {
    by_out: BTreeMap<Var, Vec<GateDef>>,
    seen: BTreeSet<(Var, GateOp, Vec<Var>)>,
    len: usize,
}

impl GateIndex {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts unless a gate with the same output variable, operator and
    /// input variable set is already stored. Returns whether it was added.
    pub fn insert(&mut self, gate: GateDef) -> bool {
        let mut key_vars: Vec<Var> = gate.input_vars().collect();
        key_vars.sort_unstable();
        let key = (gate.out.var(), gate.op, key_vars);
        if !self.seen.insert(key) {
            return false;
        }
        self.by_out.entry(gate.out.var()).or_default().push(gate);
        self.len += 1;
        true
    }

    pub fn gates_for(&self, v: Var) -> &[GateDef] {
        self.by_out.get(&v).map_or(&[], |g| g.as_slice())
    }

    pub fn iter(&self) -> impl Iterator<Item = &GateDef> {
        self.by_out.values().flatten()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// Sweeps every variable, trying it as a positive and as a negative AND
/// output.
pub fn find_and_gates_sweep(occ: &OccurrenceList, f: &CnfFormula) -> GateIndex {
    let mut gates = GateIndex::new();
    let mut marker = vec![false; 2 * f.num_vars() as usize];
    for v in f.vars() {
        find_gate_out(v.pos(), occ, f, &mut marker, &mut gates);
        find_gate_out(v.neg(), occ, f, &mut marker, &mut gates);
    }
    gates
}

/// Finds every 2-input AND gate with output `out_lit`.
///
/// `marker` is a per-literal scratch array that must be all-clear on entry;
/// it is all-clear again on return.
pub fn find_gate_out(
    out_lit: Lit,
    occ: &OccurrenceList,
    f: &CnfFormula,
    marker: &mut [bool],
    gates: &mut GateIndex,
) {
    let clauses = f.clauses();
    let mut to_clear: Vec<Lit> = Vec::new();
    for &ci in occ.get(!out_lit) {
        let c = &clauses[ci as usize];
        if c.len() == 2 {
            let other = if c[0] == !out_lit { c[1] } else { c[0] };
            if !marker[other.index()] {
                marker[other.index()] = true;
                to_clear.push(other);
            }
        }
    }
    if to_clear.is_empty() {
        return;
    }

    for &ci in occ.get(out_lit) {
        let c = &clauses[ci as usize];
        // only 2-input gates: (out ∨ ¬a ∨ ¬b)
        if c.len() != 3 {
            continue;
        }
        let ok = c
            .iter()
            .all(|&l| l == out_lit || marker[(!l).index()]);
        if ok {
            let inputs = c.iter().filter(|&&l| l != out_lit).map(|&l| !l).collect();
            gates.insert(GateDef {
                out: out_lit,
                op: GateOp::And,
                inputs,
            });
        }
    }

    for l in to_clear {
        marker[l.index()] = false;
    }
}

/// `vars[0] ⊕ … ⊕ vars[k-1] = rhs` over positive literals, `vars` ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct XorConstraint {
    pub vars: Vec<Var>,
    pub rhs: bool,
}

impl XorConstraint {
    pub fn holds(&self, assignment: &[bool]) -> bool {
        self.vars
            .iter()
            .fold(false, |acc, v| acc ^ assignment[v.index()])
            == self.rhs
    }
}

/// Largest XOR length the recovery accepts.
pub const MAX_XOR_LEN: usize = 5;

/// Recovers every parity constraint of length `2..=max_len` whose defining
/// clauses (or shorter clauses subsuming some of them) are all present.
pub fn find_xor_gates(f: &CnfFormula, max_len: usize) -> Vec<XorConstraint> {
    let max_len = max_len.clamp(2, MAX_XOR_LEN);

    // short clauses grouped by their variable set, literals sorted by variable
    let mut by_vars: BTreeMap<Vec<Var>, Vec<Vec<Lit>>> = BTreeMap::new();
    for c in f.clauses() {
        if c.is_empty() || c.len() > max_len {
            continue;
        }
        let mut sorted = c.clone();
        sorted.sort_unstable_by_key(|l| l.var());
        let vars: Vec<Var> = sorted.iter().map(|l| l.var()).collect();
        by_vars.entry(vars).or_default().push(sorted);
    }

    let mut found = Vec::new();
    for (vars, _) in by_vars.iter().filter(|(v, _)| v.len() >= 2) {
        let k = vars.len();
        let forbidden = forbidden_assignments(vars, &by_vars);
        let full: u32 = if k == 5 { u32::MAX } else { (1u32 << (1 << k)) - 1 };
        let odd = parity_mask(k, true);
        let even = full & !odd;
        // all even assignments forbidden => models have odd parity
        if forbidden & even == even {
            found.push(XorConstraint {
                vars: vars.clone(),
                rhs: true,
            });
        }
        if forbidden & odd == odd {
            found.push(XorConstraint {
                vars: vars.clone(),
                rhs: false,
            });
        }
    }
    found
}

/// Bit `a` is set when assignment `a` (bit `i` = value of `vars[i]`) is
/// falsified by some clause over a subset of `vars`.
fn forbidden_assignments(vars: &[Var], by_vars: &BTreeMap<Vec<Var>, Vec<Vec<Lit>>>) -> u32 {
    let k = vars.len();
    let mut forbidden = 0u32;
    for subset in 1u32..(1 << k) {
        let sub: Vec<Var> = (0..k)
            .filter(|i| subset >> i & 1 == 1)
            .map(|i| vars[i])
            .collect();
        let Some(clauses) = by_vars.get(&sub) else {
            continue;
        };
        for c in clauses {
            // a clause is falsified when each of its variables takes the
            // value opposite to its literal's sign
            let mut fixed_val = 0u32;
            for l in c {
                let pos = vars.iter().position(|&v| v == l.var()).unwrap();
                if !l.is_positive() {
                    fixed_val |= 1 << pos;
                }
            }
            for a in 0u32..(1 << k) {
                if a & subset == fixed_val {
                    forbidden |= 1 << a;
                }
            }
        }
    }
    forbidden
}

/// Mask over the `2^k` assignments selecting those with the given parity.
fn parity_mask(k: usize, odd: bool) -> u32 {
    (0u32..(1 << k))
        .filter(|a| (a.count_ones() % 2 == 1) == odd)
        .fold(0, |m, a| m | 1 << a)
}

/// Rewrites a length-k XOR into k definitions, one per variable as output.
///
/// From `x1 ⊕ … ⊕ xk = 1` each `xi` satisfies `¬xi = XOR(others)`; with
/// right-hand side 0 the output literal is positive.
pub fn extract_xor_definitions(xor: &XorConstraint) -> Vec<GateDef> {
    xor.vars
        .iter()
        .map(|&out| GateDef {
            out: Lit::new(out, !xor.rhs),
            op: GateOp::Xor,
            inputs: xor
                .vars
                .iter()
                .filter(|&&v| v != out)
                .map(|v| v.pos())
                .collect(),
        })
        .collect()
}

/// AND gates followed by every XOR definition, deduplicated.
pub fn recover_gates(f: &CnfFormula, occ: &OccurrenceList, xor_max_len: usize) -> GateIndex {
    let mut gates = find_and_gates_sweep(occ, f);
    for xor in find_xor_gates(f, xor_max_len) {
        for g in extract_xor_definitions(&xor) {
            gates.insert(g);
        }
    }
    gates
}
