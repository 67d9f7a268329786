//! Explicit definability: greedy removal of gate-defined projection
//! variables.
//!
//! Variables are visited in ascending incidence (likely-dependent first). A
//! variable is dropped from the working projection set when one of its gates
//! has every input variable still in that set. Inputs that were already
//! dropped, or never belonged to the projection, could close a cycle, so such
//! gates are skipped. What survives is a root set plus a greedy feedback
//! vertex set of the gate dependency graph.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::{GateDef, GateIndex, IncidenceMap, Var};

/// Directed graph over projection variables with an edge `u → v` whenever a
/// gate defines `v` using `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepGraph {
    pub vertices: BTreeSet<Var>,
    pub edges: BTreeSet<(Var, Var)>,
}

impl DepGraph {
    /// Vertices without incoming edges.
    pub fn roots(&self) -> BTreeSet<Var> {
        let targets: BTreeSet<Var> = self.edges.iter().map(|&(_, v)| v).collect();
        self.vertices.difference(&targets).copied().collect()
    }

    pub fn has_cycle(&self) -> bool {
        let mut indeg: BTreeMap<Var, usize> = self.vertices.iter().map(|&v| (v, 0)).collect();
        let mut succ: BTreeMap<Var, Vec<Var>> = BTreeMap::new();
        for &(u, v) in &self.edges {
            *indeg.get_mut(&v).unwrap() += 1;
            succ.entry(u).or_default().push(v);
        }
        let mut stack: Vec<Var> = indeg.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
        let mut seen = 0;
        while let Some(u) = stack.pop() {
            seen += 1;
            for &v in succ.get(&u).map_or(&[][..], |s| s.as_slice()) {
                let d = indeg.get_mut(&v).unwrap();
                *d -= 1;
                if *d == 0 {
                    stack.push(v);
                }
            }
        }
        seen != self.vertices.len()
    }
}

/// Builds the dependency graph restricted to `projection`.
///
/// Gates whose output lies outside the projection are ignored, and so are
/// gates with an input outside it: such gates can never justify removing a
/// vertex.
pub fn build_dependency_graph(gates: &GateIndex, projection: &[Var]) -> DepGraph {
    let vertices: BTreeSet<Var> = projection.iter().copied().collect();
    let mut edges = BTreeSet::new();
    for g in gates.iter() {
        let out = g.out.var();
        if !vertices.contains(&out) || !g.input_vars().all(|u| vertices.contains(&u)) {
            continue;
        }
        for u in g.input_vars() {
            edges.insert((u, out));
        }
    }
    DepGraph { vertices, edges }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitResult {
    /// Ascending.
    pub support: Vec<Var>,
    /// Removed variables in removal order, each with the gate that defines it.
    pub removed: Vec<(Var, GateDef)>,
}

impl ExplicitResult {
    /// Checks that every removed variable is defined from variables that are
    /// in the support or removed strictly later.
    pub fn is_acyclic(&self) -> bool {
        let mut available: BTreeSet<Var> = self.support.iter().copied().collect();
        for (v, g) in self.removed.iter().rev() {
            if !g.input_vars().all(|u| available.contains(&u)) {
                return false;
            }
            available.insert(*v);
        }
        true
    }
}

/// Projection variables sorted by ascending incidence, ties by ascending id.
pub fn sort_by_incidence(projection: &[Var], inc: &IncidenceMap) -> Vec<Var> {
    let mut order = projection.to_vec();
    order.sort_by_key(|&v| (inc.get(v), v));
    order
}

pub fn greedy_ind_search(gates: &GateIndex, projection: &[Var], inc: &IncidenceMap) -> ExplicitResult {
    let mut in_p: BTreeSet<Var> = projection.iter().copied().collect();
    let mut removed = Vec::new();
    for u in sort_by_incidence(projection, inc) {
        let admissible = gates
            .gates_for(u)
            .iter()
            .find(|g| g.input_vars().all(|v| in_p.contains(&v)));
        if let Some(g) = admissible {
            in_p.remove(&u);
            removed.push((u, g.clone()));
        }
    }
    ExplicitResult {
        support: in_p.into_iter().collect(),
        removed,
    }
}
