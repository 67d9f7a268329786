//! Clause database with a projection set, occurrence lists and incidence
//! counts.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Lit, Var};

/// A CNF formula over variables `1..=num_vars` with a projection set.
///
/// Clauses are kept normalized: duplicate literals are merged and
/// tautologies are never stored. Clause order follows insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: u32,
    clauses: Vec<Vec<Lit>>,
    /// Sorted and deduplicated.
    projection: Vec<Var>,
}

impl CnfFormula {
    /// An empty formula whose projection set is every variable.
    pub fn new(num_vars: u32) -> Self {
        CnfFormula {
            num_vars,
            clauses: Vec::new(),
            projection: (1..=num_vars).map(Var::new).collect(),
        }
    }

    /// Builds a formula from DIMACS-style integer clauses; panics on bad input.
    /// Meant for tests and examples.
    pub fn from_dimacs_clauses(num_vars: u32, clauses: &[&[i32]]) -> Self {
        let mut f = CnfFormula::new(num_vars);
        for c in clauses {
            let lits: Vec<Lit> = c.iter().map(|&x| Lit::from_dimacs(x)).collect();
            f.add_clause(&lits).expect("literal out of range");
        }
        f
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn projection(&self) -> &[Var] {
        &self.projection
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> {
        (1..=self.num_vars).map(Var::new)
    }

    /// Replaces the projection set. Variables are sorted and deduplicated.
    pub fn set_projection<I: IntoIterator<Item = Var>>(&mut self, vars: I) -> Result<(), Error> {
        let mut p: Vec<Var> = vars.into_iter().collect();
        for v in &p {
            self.check_var(*v)?;
        }
        p.sort_unstable();
        p.dedup();
        self.projection = p;
        Ok(())
    }

    /// Grows the declared variable count. Never shrinks it.
    pub fn ensure_vars(&mut self, num_vars: u32) {
        self.num_vars = self.num_vars.max(num_vars);
    }

    /// Adds a clause after normalization. Returns `false` when the clause
    /// was a tautology and therefore dropped.
    pub fn add_clause(&mut self, lits: &[Lit]) -> Result<bool, Error> {
        for l in lits {
            self.check_var(l.var())?;
        }
        match normalize_clause(lits) {
            Some(c) => {
                self.clauses.push(c);
                Ok(true)
            }
            None => Ok(false),
        }
    }

    fn check_var(&self, v: Var) -> Result<(), Error> {
        if v.id() > self.num_vars {
            Err(Error::VarOutOfRange {
                var: v.id(),
                num_vars: self.num_vars,
            })
        } else {
            Ok(())
        }
    }

    /// Evaluates the formula under a total assignment indexed by `Var::index`.
    pub fn eval(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.eval(assignment[l.var().index()])))
    }
}

/// Merges duplicate literals, keeping first-occurrence order; `None` for a
/// tautology.
pub fn normalize_clause(lits: &[Lit]) -> Option<Vec<Lit>> {
    let mut out: Vec<Lit> = Vec::with_capacity(lits.len());
    for &l in lits {
        if out.contains(&!l) {
            return None;
        }
        if !out.contains(&l) {
            out.push(l);
        }
    }
    Some(out)
}

/// For each literal, the positions of the clauses containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccurrenceList {
    occ: Vec<Vec<u32>>,
}

impl OccurrenceList {
    pub fn build(f: &CnfFormula) -> Self {
        let mut occ = vec![Vec::new(); 2 * f.num_vars() as usize];
        for (i, c) in f.clauses().iter().enumerate() {
            for l in c {
                occ[l.index()].push(i as u32);
            }
        }
        OccurrenceList { occ }
    }

    pub fn get(&self, lit: Lit) -> &[u32] {
        self.occ.get(lit.index()).map_or(&[], |v| v.as_slice())
    }

    pub fn total_entries(&self) -> usize {
        self.occ.iter().map(Vec::len).sum()
    }
}

/// Number of clauses mentioning each variable in either polarity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMap {
    counts: Vec<u32>,
}

impl IncidenceMap {
    pub fn compute(f: &CnfFormula) -> Self {
        let mut counts = vec![0u32; f.num_vars() as usize];
        for c in f.clauses() {
            // normalized clauses mention each variable at most once
            for l in c {
                counts[l.var().index()] += 1;
            }
        }
        IncidenceMap { counts }
    }

    pub fn get(&self, v: Var) -> u32 {
        self.counts.get(v.index()).copied().unwrap_or(0)
    }
}
