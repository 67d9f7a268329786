mod common;

use common::{lit, random_kcnf};
use indsup_core::oracle::{enumerate_solutions, to_assignment};
use indsup_core::{Lit, SolveOutcome, Solver, Var};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn load(f: &indsup_core::CnfFormula) -> Solver {
    let mut s = Solver::new(f.num_vars());
    for c in f.clauses() {
        s.add_clause(c).unwrap();
    }
    s
}

#[test]
fn agrees_with_enumeration_under_assumptions() {
    let mut rng = StdRng::seed_from_u64(7);
    for round in 0..500 {
        let n = rng.gen_range(3..=16);
        let density = rng.gen_range(2.0..6.0);
        let f = random_kcnf(&mut rng, n, (density * n as f64) as usize, 3);
        let models = enumerate_solutions(&f).unwrap();
        let mut s = load(&f);

        match s.solve(&[], None) {
            SolveOutcome::Sat(m) => {
                assert!(f.eval(&m[..n as usize]), "round {round}: bad model");
                assert!(!models.is_empty());
            }
            SolveOutcome::Unsat => assert!(models.is_empty(), "round {round}: spurious UNSAT"),
            SolveOutcome::Unknown => panic!("unlimited budget returned UNKNOWN"),
        }

        let k = rng.gen_range(1..=4.min(n));
        let assumps: Vec<Lit> = (0..k)
            .map(|_| Lit::new(Var::new(rng.gen_range(1..=n)), rng.gen()))
            .collect();
        let expected = models.models.iter().any(|&a| {
            assumps.iter().all(|l| l.eval(a >> l.var().index() & 1 == 1))
        });
        match s.solve(&assumps, None) {
            SolveOutcome::Sat(m) => {
                assert!(expected, "round {round}");
                assert!(f.eval(&m[..n as usize]));
                assert!(assumps.iter().all(|l| l.eval(m[l.var().index()])));
            }
            SolveOutcome::Unsat => assert!(!expected, "round {round}: {assumps:?}"),
            SolveOutcome::Unknown => panic!("unlimited budget returned UNKNOWN"),
        }
        assert_eq!(s.decision_level(), 0);

        // learnt clauses and level-0 units are entailed
        for &a in &models.models {
            let asg = to_assignment(a, n);
            for c in s.learnt_clauses() {
                assert!(c.iter().any(|l| l.eval(asg[l.var().index()])), "round {round}: learnt {c:?}");
            }
            for l in s.level_zero_units() {
                assert!(l.eval(asg[l.var().index()]));
            }
        }
    }
}

#[test]
fn deterministic_outcomes_and_stats() {
    let mut rng = StdRng::seed_from_u64(99);
    let f = random_kcnf(&mut rng, 60, 255, 3);
    let mut a = load(&f);
    let mut b = load(&f);
    let assumps = [lit(1), lit(-2), lit(3)];
    assert_eq!(a.solve(&assumps, None), b.solve(&assumps, None));
    assert_eq!(a.stats(), b.stats());
}

#[test]
fn budget_zero_on_hard_instance() {
    let mut rng = StdRng::seed_from_u64(5);
    let f = random_kcnf(&mut rng, 120, 511, 3);
    let mut s = load(&f);
    assert_eq!(s.solve(&[], Some(0)), SolveOutcome::Unknown);
    assert_eq!(s.decision_level(), 0);
}
