//! Randomized law checking: instance generators, the check registry, named
//! suites and small-dimension reference oracles.

pub mod checks;
pub mod generate;
pub mod oracle;
pub mod suites;

pub use checks::{lookup, recheck, CheckCtx, CHECKS};
pub use generate::{Generator, GeneratorKind, GeneratorSpec, Instance};
pub use suites::{find_strictness_witness, run_suite, run_suite_with, StrictnessWitness, SuiteConfig, SUITES};
