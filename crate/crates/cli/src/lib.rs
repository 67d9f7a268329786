//! DIMACS IO, the two-phase extraction pipeline and a PAR-2 benchmark
//! harness on top of `indsup-core`.

pub mod bench;
pub mod dimacs;
pub mod output;
pub mod pipeline;

pub use bench::{bench, par2, BenchRecord, Outcome};
pub use dimacs::{parse_dimacs, read_dimacs, write_dimacs, ParseError};
pub use output::write_support;
pub use pipeline::{run_pipeline, PipelineConfig, SupportResult, Verification};
