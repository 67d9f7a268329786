#![allow(dead_code)]

use indsup_core::{CnfFormula, Lit, Var};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn lit(x: i32) -> Lit {
    Lit::from_dimacs(x)
}

pub fn random_clause(rng: &mut StdRng, n: u32, k: usize) -> Vec<Lit> {
    let mut vars: Vec<u32> = (1..=n).collect();
    vars.shuffle(rng);
    vars[..k.min(n as usize)]
        .iter()
        .map(|&v| Lit::new(Var::new(v), rng.gen()))
        .collect()
}

pub fn random_kcnf(rng: &mut StdRng, n: u32, m: usize, k: usize) -> CnfFormula {
    let mut f = CnfFormula::new(n);
    for _ in 0..m {
        let c = random_clause(rng, n, k);
        f.add_clause(&c).unwrap();
    }
    f
}

/// Tseitin encoding of `out = a ∧ b` over literals.
pub fn add_and(f: &mut CnfFormula, out: Lit, a: Lit, b: Lit) {
    f.add_clause(&[!out, a]).unwrap();
    f.add_clause(&[!out, b]).unwrap();
    f.add_clause(&[out, !a, !b]).unwrap();
}

/// All `2^(k-1)` clauses of `vars[0] ⊕ … = rhs`.
pub fn add_xor(f: &mut CnfFormula, vars: &[Var], rhs: bool) {
    let k = vars.len();
    for a in 0u32..(1 << k) {
        // forbid assignment `a` when its parity differs from rhs
        if (a.count_ones() % 2 == 1) != rhs {
            let c: Vec<Lit> = (0..k).map(|i| Lit::new(vars[i], a >> i & 1 == 0)).collect();
            f.add_clause(&c).unwrap();
        }
    }
}

/// Random circuit: `inputs` free variables followed by `gates` AND/OR gates
/// over earlier variables.
pub fn planted_circuit(rng: &mut StdRng, inputs: u32, gates: u32) -> CnfFormula {
    let n = inputs + gates;
    let mut f = CnfFormula::new(n);
    for g in 0..gates {
        let out = Var::new(inputs + g + 1);
        let pool = inputs + g;
        let a = rng.gen_range(1..=pool);
        let mut b = rng.gen_range(1..=pool);
        while b == a && pool > 1 {
            b = rng.gen_range(1..=pool);
        }
        if a == b {
            continue;
        }
        let la = Lit::new(Var::new(a), rng.gen());
        let lb = Lit::new(Var::new(b), rng.gen());
        // an OR gate is an AND gate on negated literals
        let out = Lit::new(out, rng.gen());
        add_and(&mut f, out, la, lb);
    }
    f
}
