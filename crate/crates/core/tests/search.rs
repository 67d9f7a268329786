mod common;

use common::{add_and, planted_circuit, random_kcnf};
use indsup_core::explicit::build_dependency_graph;
use indsup_core::gates::recover_gates;
use indsup_core::oracle::{check_projected_count_preserved, is_defined, is_independent_support};
use indsup_core::{
    greedy_ind_search, integrated_implicit, simple_search, CnfFormula, ImplicitConfig, IncidenceMap,
    OccurrenceList, Var,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

fn corpus(seed: u64, count: usize) -> Vec<(CnfFormula, Vec<Var>)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    for i in 0..count {
        let f = if i % 2 == 0 {
            let n = rng.gen_range(4..=12);
            let m = (rng.gen_range(1.0..4.5) * n as f64) as usize;
            random_kcnf(&mut rng, n, m, 3)
        } else {
            let inputs = rng.gen_range(2..=5);
            let gates = rng.gen_range(1..=6);
            planted_circuit(&mut rng, inputs, gates)
        };
        let mut p: Vec<Var> = f.vars().collect();
        if rng.gen_bool(0.5) {
            p.shuffle(&mut rng);
            p.truncate(rng.gen_range(1..=p.len()));
            p.sort();
        }
        out.push((f, p));
    }
    out
}

#[test]
fn explicit_phase_is_sound_and_acyclic() {
    for (f, p) in corpus(21, 300) {
        let occ = OccurrenceList::build(&f);
        let gates = recover_gates(&f, &occ, 5);
        let inc = IncidenceMap::compute(&f);
        let r = greedy_ind_search(&gates, &p, &inc);
        assert!(r.is_acyclic());
        assert!(is_independent_support(&f, &p, &r.support).unwrap());
        let graph = build_dependency_graph(&gates, &p);
        assert!(graph.roots().iter().all(|v| r.support.contains(v)));
        let again = greedy_ind_search(&gates, &r.support, &inc);
        assert!(again.removed.is_empty());
    }
}

#[test]
fn implicit_searches_are_sound_and_minimal() {
    for (f, p) in corpus(22, 300) {
        for r in [
            simple_search(&f, &p, &ImplicitConfig::unlimited()),
            integrated_implicit(&f, &p, &ImplicitConfig::unlimited()),
        ] {
            assert!(is_independent_support(&f, &p, &r.support).unwrap());
            assert!(check_projected_count_preserved(&f, &p, &r.support).unwrap());
            for v in &p {
                if !r.support.contains(v) {
                    assert!(is_defined(&f, *v, &r.support).unwrap());
                }
            }
            for i in 0..r.support.len() {
                let mut smaller = r.support.clone();
                smaller.remove(i);
                assert!(!is_independent_support(&f, &p, &smaller).unwrap(), "not minimal: {:?}", r.support);
            }
        }
    }
}

#[test]
fn tiny_budget_only_inflates() {
    for (f, p) in corpus(23, 200) {
        for budget in [0, 1, 3] {
            let cfg = ImplicitConfig {
                conflict_budget: Some(budget),
                ..Default::default()
            };
            for r in [simple_search(&f, &p, &cfg), integrated_implicit(&f, &p, &cfg)] {
                assert!(is_independent_support(&f, &p, &r.support).unwrap());
            }
        }
    }
}

#[test]
fn and_chain_keeps_inputs_and_head() {
    // x1 = 1, a_i = 2..=6, x_{i+1} = 7..=11 with x_{i+1} = x_i ∧ a_i
    let mut f = CnfFormula::new(11);
    let mut prev = Var::new(1);
    for i in 0..5 {
        let a = Var::new(2 + i);
        let next = Var::new(7 + i);
        add_and(&mut f, next.pos(), prev.pos(), a.pos());
        prev = next;
    }
    let p: Vec<Var> = f.vars().collect();
    let expected: Vec<Var> = (1..=6).map(Var::new).collect();
    for r in [
        simple_search(&f, &p, &ImplicitConfig::unlimited()),
        integrated_implicit(&f, &p, &ImplicitConfig::unlimited()),
    ] {
        assert!(is_independent_support(&f, &p, &r.support).unwrap());
        assert_eq!(r.support, expected);
    }
}
