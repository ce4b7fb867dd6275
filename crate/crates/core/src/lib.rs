//! Riemann-Liouville fractional integrals and numerical verification of
//! Ostrowski, Chebyshev, Gruss and fractional Ostrowski-Gruss type
//! inequalities.
//!
//! Modules, bottom-up:
//! - [`corpus`]: test functions with exact derivatives and bounds
//! - [`fracquad`]: adaptive quadrature, Gamma, `J_a^alpha`
//! - [`kernels`]: Peano kernels and the kernel variance `K(x)`
//! - [`functionals`]: means, Chebyshev functional, derivative variance
//! - [`bounds`]: each inequality as an lhs / rhs ladder
//! - [`verifier`]: corpus sweeps, reports and sharpness probes

pub mod bounds;
pub mod config;
pub mod corpus;
pub mod error;
pub mod fracquad;
pub mod functionals;
pub mod kernels;
pub mod report;
pub mod verifier;

pub use bounds::{BoundInputs, BoundResult, RhsLevel};
pub use config::{ReportFormat, RunConfig, XPoints};
pub use corpus::{default_corpus, exact_rl_poly, DerivBounds, Family, FunctionSpec};
pub use error::{FracError, Result};
pub use fracquad::{gamma, rl_integral, rl_integral_of, QuadResult, QuadratureSettings};
pub use functionals::{DerivNorms, FunctionalValue};
pub use verifier::{
    run_case, run_corpus, sharpness_probe, CaseRecord, CaseStatus, ProbeFamily, ProbeOutcome,
    ProbeSetup, Problem, Summary, SweepRow, VerificationReport,
};
