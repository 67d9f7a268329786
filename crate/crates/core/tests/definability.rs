mod common;

use common::{planted_circuit, random_kcnf};
use indsup_core::oracle::{enumerate_solutions, is_defined};
use indsup_core::padoa::{build_padoa, definability_query_assumptions};
use indsup_core::{CnfFormula, SolveOutcome, Solver, Var};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

fn padoa_unsat(f: &CnfFormula, projection: &[Var], target: Var, active: &[Var]) -> bool {
    let inst = build_padoa(f, projection);
    let mut s = Solver::new(inst.psi.num_vars());
    for c in inst.psi.clauses() {
        s.add_clause(c).unwrap();
    }
    let a = definability_query_assumptions(&inst, target, active).unwrap();
    match s.solve(&a, None) {
        SolveOutcome::Unsat => true,
        SolveOutcome::Sat(_) => false,
        SolveOutcome::Unknown => unreachable!(),
    }
}

fn vars(xs: &[u32]) -> Vec<Var> {
    xs.iter().map(|&x| Var::new(x)).collect()
}

#[test]
fn small_examples() {
    let unit = CnfFormula::from_dimacs_clauses(1, &[&[1]]);
    assert!(padoa_unsat(&unit, &vars(&[1]), Var::new(1), &[]));

    let or = CnfFormula::from_dimacs_clauses(2, &[&[1, 2]]);
    assert!(!padoa_unsat(&or, &vars(&[1, 2]), Var::new(1), &vars(&[2])));

    let and = CnfFormula::from_dimacs_clauses(3, &[&[-3, 1], &[-3, 2], &[3, -1, -2]]);
    assert!(padoa_unsat(&and, &vars(&[1, 2, 3]), Var::new(3), &vars(&[1, 2])));
}

#[test]
fn duplicated_formula_satisfiable_with_all_selectors() {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..100 {
        let n = rng.gen_range(2..=8);
        let m = rng.gen_range(0..=3 * n as usize);
        let f = random_kcnf(&mut rng, n, m, 3);
        let sat = !enumerate_solutions(&f).unwrap().is_empty();
        let p: Vec<Var> = f.vars().collect();
        let inst = build_padoa(&f, &p);
        assert_eq!(inst.psi.num_clauses(), 2 * f.num_clauses() + 2 * p.len());
        let mut s = Solver::new(inst.psi.num_vars());
        for c in inst.psi.clauses() {
            s.add_clause(c).unwrap();
        }
        let zs: Vec<_> = inst.selectors().map(|(_, z)| z.pos()).collect();
        assert_eq!(s.solve(&zs, None).is_sat(), sat);
    }
}

#[test]
fn padoa_matches_definition() {
    let mut rng = StdRng::seed_from_u64(11);
    let mut checked = 0;
    for round in 0..300 {
        let f = if round % 2 == 0 {
            let n = rng.gen_range(2..=10);
            let m = rng.gen_range(1..=4 * n as usize);
            random_kcnf(&mut rng, n, m, 3)
        } else {
            let inputs = rng.gen_range(2..=5);
            let gates = rng.gen_range(1..=5);
            planted_circuit(&mut rng, inputs, gates)
        };
        let mut p: Vec<Var> = f.vars().collect();
        p.shuffle(&mut rng);
        p.truncate(rng.gen_range(1..=p.len()));
        let target = p[0];
        let active: Vec<Var> = p[1..].iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
        assert_eq!(
            padoa_unsat(&f, &p, target, &active),
            is_defined(&f, target, &active).unwrap(),
            "round {round}: target {target:?} active {active:?}"
        );
        checked += 1;
    }
    assert_eq!(checked, 300);
}
