//! Duplicated formula for definability queries.
//!
//! For a formula over `x1..xn` with projection set `P`, the instance holds
//! `φ(x) ∧ φ(y) ∧ ⋀_{i∈P} (zi → (xi = yi))` where `yi = n + i` and `zi` is
//! numbered `2n + rank(i)` over `P` in ascending order. A projection
//! variable `t` is defined by an active set `A` exactly when the instance is
//! unsatisfiable under `{zj : j ∈ A} ∪ {xt, ¬yt}`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::{CnfFormula, Error, Lit, Var};

#[derive(Debug, Clone)]
pub struct PadoaInstance {
    pub psi: CnfFormula,
    num_orig: u32,
    /// Projection variable -> selector variable.
    z_of: BTreeMap<Var, Var>,
}

impl PadoaInstance {
    /// Number of variables of the original formula.
    pub fn num_orig_vars(&self) -> u32 {
        self.num_orig
    }

    /// Copy of `x` in the duplicated formula.
    pub fn y_of(&self, x: Var) -> Var {
        Var::new(x.id() + self.num_orig)
    }

    /// Equality selector of a projection variable.
    pub fn z_of(&self, x: Var) -> Option<Var> {
        self.z_of.get(&x).copied()
    }

    /// Projection variables with their selectors, ascending.
    pub fn selectors(&self) -> impl Iterator<Item = (Var, Var)> + '_ {
        self.z_of.iter().map(|(&x, &z)| (x, z))
    }

    fn rename_to_y(&self, l: Lit) -> Lit {
        Lit::new(self.y_of(l.var()), l.is_positive())
    }
}

/// Builds the instance for `f` and projection set `projection`.
pub fn build_padoa(f: &CnfFormula, projection: &[Var]) -> PadoaInstance {
    let n = f.num_vars();
    let mut proj: Vec<Var> = projection.to_vec();
    proj.sort_unstable();
    proj.dedup();

    let total = 2 * n + proj.len() as u32;
    let mut psi = CnfFormula::new(total);
    let z_of: BTreeMap<Var, Var> = proj
        .iter()
        .enumerate()
        .map(|(rank, &x)| (x, Var::new(2 * n + rank as u32 + 1)))
        .collect();
    let mut inst = PadoaInstance {
        psi: CnfFormula::new(0),
        num_orig: n,
        z_of,
    };

    for c in f.clauses() {
        psi.add_clause(c).expect("variables within range");
    }
    let mut copy = Vec::new();
    for c in f.clauses() {
        copy.clear();
        copy.extend(c.iter().map(|&l| inst.rename_to_y(l)));
        psi.add_clause(&copy).expect("variables within range");
    }
    for (x, z) in inst.selectors().collect::<Vec<_>>() {
        let y = inst.y_of(x);
        psi.add_clause(&[z.neg(), x.neg(), y.pos()]).expect("in range");
        psi.add_clause(&[z.neg(), x.pos(), y.neg()]).expect("in range");
    }
    psi.set_projection(f.vars()).expect("in range");
    inst.psi = psi;
    inst
}

/// Assumptions asking whether `target` is defined by `active`:
/// `[z_j for j in active] ++ [x_target, ¬y_target]`.
pub fn definability_query_assumptions(
    inst: &PadoaInstance,
    target: Var,
    active: &[Var],
) -> Result<Vec<Lit>, Error> {
    if inst.z_of(target).is_none() {
        return Err(Error::NotInProjection(target));
    }
    let mut assumps = Vec::with_capacity(active.len() + 2);
    for &a in active {
        let z = inst.z_of(a).ok_or(Error::NotInProjection(a))?;
        assumps.push(z.pos());
    }
    assumps.push(target.pos());
    assumps.push(inst.y_of(target).neg());
    Ok(assumps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn lit(x: i32) -> Lit {
        Lit::from_dimacs(x)
    }

    #[test]
    fn unit_formula_instance() {
        let f = CnfFormula::from_dimacs_clauses(1, &[&[1]]);
        let inst = build_padoa(&f, &[Var::new(1)]);
        assert_eq!(inst.psi.num_vars(), 3);
        assert_eq!(
            inst.psi.clauses(),
            &[vec![lit(1)], vec![lit(2)], vec![lit(-3), lit(-1), lit(2)], vec![lit(-3), lit(1), lit(-2)]]
        );
        assert_eq!(inst.y_of(Var::new(1)), Var::new(2));
        assert_eq!(inst.z_of(Var::new(1)), Some(Var::new(3)));
    }

    #[test]
    fn numbering() {
        let f = CnfFormula::from_dimacs_clauses(3, &[&[1, 2, 3]]);
        let inst = build_padoa(&f, &[Var::new(2), Var::new(1)]);
        let ys: Vec<u32> = f.vars().map(|v| inst.y_of(v).id()).collect();
        assert_eq!(ys, vec![4, 5, 6]);
        let zs: Vec<u32> = inst.selectors().map(|(_, z)| z.id()).collect();
        assert_eq!(zs, vec![7, 8]);
        assert_eq!(inst.z_of(Var::new(3)), None);
        assert_eq!(inst.psi.num_clauses(), 2 * 1 + 2 * 2);
    }

    #[test]
    fn query_assumptions() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1, 2]]);
        let inst = build_padoa(&f, &[Var::new(1), Var::new(2)]);
        let a = definability_query_assumptions(&inst, Var::new(1), &[Var::new(2)]).unwrap();
        assert_eq!(a, vec![lit(6), lit(1), lit(-3)]);
        let g = CnfFormula::from_dimacs_clauses(3, &[&[1, 2, 3]]);
        let inst = build_padoa(&g, &[Var::new(1)]);
        assert_eq!(
            definability_query_assumptions(&inst, Var::new(3), &[]),
            Err(Error::NotInProjection(Var::new(3)))
        );
    }
}
