//! Independent support extraction for CNF formulas with a projection set.
//!
//! An independent support `I ⊆ P` is a set of projection variables whose
//! values, in any model, fix the values of all of `P`. This crate computes
//! one in two composable phases:
//!
//! - [`explicit`]: recover AND/XOR gate definitions syntactically
//!   ([`gates`]) and greedily drop gate outputs whose inputs stay in the set;
//! - [`implicit`]: query definability of each remaining variable with a
//!   duplicated formula ([`padoa`]) inside a purpose-built CDCL solver
//!   ([`cdcl`]).
//!
//! [`oracle`] checks results by brute-force enumeration on small formulas.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod cdcl;
pub mod cnf;
mod error;
pub mod explicit;
pub mod gates;
pub mod implicit;
mod lit;
pub mod oracle;
pub mod padoa;

pub use cdcl::{SolveOutcome, Solver, SolverConfig, SolverStats};
pub use cnf::{CnfFormula, IncidenceMap, OccurrenceList};
pub use error::Error;
pub use explicit::{greedy_ind_search, ExplicitResult};
pub use gates::{GateDef, GateIndex, GateOp, XorConstraint};
pub use implicit::{integrated_implicit, simple_search, ImplicitConfig, ImplicitResult};
pub use lit::{Lit, Var};
