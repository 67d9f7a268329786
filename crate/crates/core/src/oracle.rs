//! Exhaustive-enumeration ground truth for small formulas.
//!
//! Assignments are `u64` bit masks: bit `i` holds the value of variable
//! `i + 1`. Everything here is deliberately naive.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::{CnfFormula, Error, Var};

/// Largest formula the oracle enumerates.
pub const MAX_ENUM_VARS: u32 = 26;
/// Largest conditioning set for [`is_defined`].
pub const MAX_DEFINING_VARS: usize = 20;

/// Every satisfying total assignment, in increasing mask order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSet {
    pub num_vars: u32,
    pub models: Vec<u64>,
}

impl ModelSet {
    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    /// Number of distinct restrictions of the models to `vars`.
    pub fn projected_count(&self, vars: &[Var]) -> usize {
        let m = mask_of(vars);
        self.models.iter().map(|a| a & m).collect::<BTreeSet<_>>().len()
    }
}

pub fn mask_of(vars: &[Var]) -> u64 {
    vars.iter().fold(0, |m, v| m | 1 << v.index())
}

/// Expands a mask into an assignment indexed by `Var::index`.
pub fn to_assignment(mask: u64, num_vars: u32) -> Vec<bool> {
    (0..num_vars).map(|i| mask >> i & 1 == 1).collect()
}

pub fn enumerate_solutions(f: &CnfFormula) -> Result<ModelSet, Error> {
    let n = f.num_vars();
    if n > MAX_ENUM_VARS {
        return Err(Error::TooManyVars {
            found: n,
            limit: MAX_ENUM_VARS,
        });
    }
    // clause satisfied iff (a & pos) != 0 or (!a & neg) != 0
    let masks: Vec<(u64, u64)> = f
        .clauses()
        .iter()
        .map(|c| {
            c.iter().fold((0u64, 0u64), |(p, q), l| {
                if l.is_positive() {
                    (p | 1 << l.var().index(), q)
                } else {
                    (p, q | 1 << l.var().index())
                }
            })
        })
        .collect();
    let models = (0u64..1 << n)
        .filter(|&a| masks.iter().all(|&(p, q)| a & p != 0 || !a & q != 0))
        .collect();
    Ok(ModelSet { num_vars: n, models })
}

pub fn is_satisfiable(f: &CnfFormula) -> Result<bool, Error> {
    Ok(!enumerate_solutions(f)?.is_empty())
}

/// Models that agree on `support` agree on `projection`.
pub fn is_independent_support(f: &CnfFormula, projection: &[Var], support: &[Var]) -> Result<bool, Error> {
    if let Some(&v) = support.iter().find(|v| !projection.contains(v)) {
        return Err(Error::NotASubset(v));
    }
    let models = enumerate_solutions(f)?;
    Ok(determines(&models, mask_of(support), mask_of(projection)))
}

/// Every assignment to `support` fixes `x` in all consistent models.
pub fn is_defined(f: &CnfFormula, x: Var, support: &[Var]) -> Result<bool, Error> {
    if support.len() > MAX_DEFINING_VARS {
        return Err(Error::TooManyVars {
            found: support.len() as u32,
            limit: MAX_DEFINING_VARS as u32,
        });
    }
    let models = enumerate_solutions(f)?;
    Ok(determines(&models, mask_of(support), 1 << x.index()))
}

fn determines(models: &ModelSet, key: u64, target: u64) -> bool {
    let mut seen: BTreeMap<u64, u64> = BTreeMap::new();
    for &a in &models.models {
        let t = a & target;
        if *seen.entry(a & key).or_insert(t) != t {
            return false;
        }
    }
    true
}

/// `|sol(f)↓support| = |sol(f)↓projection|`.
pub fn check_projected_count_preserved(f: &CnfFormula, projection: &[Var], support: &[Var]) -> Result<bool, Error> {
    let models = enumerate_solutions(f)?;
    Ok(models.projected_count(support) == models.projected_count(projection))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn v(x: u32) -> Var {
        Var::new(x)
    }

    fn and_formula() -> CnfFormula {
        CnfFormula::from_dimacs_clauses(3, &[&[-3, 1], &[-3, 2], &[3, -1, -2]])
    }

    #[test]
    fn enumeration() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1, 2]]);
        // masks: 01 = x1 only, 10 = x2 only, 11 = both
        assert_eq!(enumerate_solutions(&f).unwrap().models, vec![0b01, 0b10, 0b11]);
        let g = CnfFormula::from_dimacs_clauses(1, &[&[1], &[-1]]);
        assert!(enumerate_solutions(&g).unwrap().is_empty());
        assert_eq!(enumerate_solutions(&CnfFormula::new(2)).unwrap().len(), 4);
        assert!(enumerate_solutions(&CnfFormula::new(27)).is_err());
    }

    #[test]
    fn independent_support_checks() {
        let f = and_formula();
        let p = [v(1), v(2), v(3)];
        assert_eq!(is_independent_support(&f, &p, &[v(1), v(2)]), Ok(true));
        assert_eq!(is_independent_support(&f, &p, &[v(1)]), Ok(false));
        assert_eq!(is_independent_support(&f, &p, &p), Ok(true));
        assert_eq!(
            is_independent_support(&f, &[v(1)], &[v(2)]),
            Err(Error::NotASubset(v(2)))
        );
    }

    #[test]
    fn definability_checks() {
        let f = CnfFormula::from_dimacs_clauses(1, &[&[1]]);
        assert_eq!(is_defined(&f, v(1), &[]), Ok(true));
        let g = CnfFormula::from_dimacs_clauses(2, &[&[1, 2]]);
        assert_eq!(is_defined(&g, v(1), &[v(2)]), Ok(false));
        assert_eq!(is_defined(&and_formula(), v(3), &[v(1), v(2)]), Ok(true));
        let unsat = CnfFormula::from_dimacs_clauses(2, &[&[1], &[-1]]);
        assert_eq!(is_defined(&unsat, v(2), &[]), Ok(true));
    }

    #[test]
    fn projected_counts() {
        let f = and_formula();
        let p = [v(1), v(2), v(3)];
        let models = enumerate_solutions(&f).unwrap();
        assert_eq!(models.projected_count(&[v(1), v(2)]), 4);
        assert_eq!(models.projected_count(&p), 4);
        assert_eq!(check_projected_count_preserved(&f, &p, &[v(1), v(2)]), Ok(true));
        assert_eq!(check_projected_count_preserved(&f, &p, &p), Ok(true));
        let g = CnfFormula::from_dimacs_clauses(2, &[&[1, 2]]);
        let gm = enumerate_solutions(&g).unwrap();
        assert_eq!((gm.projected_count(&[v(1)]), gm.projected_count(&[v(1), v(2)])), (2, 3));
        assert_eq!(check_projected_count_preserved(&g, &[v(1), v(2)], &[v(1)]), Ok(false));
    }
}
