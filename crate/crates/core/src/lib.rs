//! Finite-dimensional synaptic algebras: real symmetric matrices with the
//! numerical and spectral orders, spectral resolutions, the projection and
//! spectral lattices, Kleene and Brouwer-Zadeh complements, and dyadic
//! expansions of effects.

pub mod dyadic;
pub mod effect;
pub mod eigen;
pub mod error;
pub mod harness;
pub mod io;
pub mod lattice;
pub mod matrix;
pub mod order;
pub mod projection;
pub mod report;
pub mod resolution;
pub mod spectral;
pub mod subspace;
pub mod synaptic;
pub mod tolerance;

pub use dyadic::{carrier_via_join, dyadic_expand, dyadic_expand_matrix, dyadic_residual, dyadic_step};
pub use effect::Effect;
pub use eigen::{eig, is_psd, operator_norm, EigenSystem};
pub use error::{Error, Result};
pub use harness::{run_suite, run_suite_with, SuiteConfig, SUITES};
pub use io::{read_matrix, write_matrix, LoadedMatrix};
pub use lattice::{join, meet, proj_leq};
pub use matrix::{DenseMatrix, SymMatrix};
pub use order::{brouwer_complement, kleene_complement, Comparator, OrderTag};
pub use projection::Projection;
pub use report::{CheckSummary, Failure, Outcome, VerificationReport};
pub use resolution::{resolution_of, StepResolution};
pub use spectral::{family_inf, family_sup, spectral_join, spectral_leq, spectral_meet};
pub use synaptic::{carrier, numerical_leq};
pub use tolerance::TolerancePolicy;
