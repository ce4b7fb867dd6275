//! Corpus sweeps: every bound and identity residual per case, aggregated
//! into a deterministic report.

mod probe;

pub use probe::{sharpness_probe, ProbeFamily, ProbeOutcome, ProbeSetup};

use std::collections::BTreeMap;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, BoundResult};
use crate::config::{x_grid, RunConfig};
use crate::corpus::FunctionSpec;
use crate::error::{FracError, Result};
use crate::fracquad::{rl_integral_of, QuadratureSettings};
use crate::functionals::{chebyshev_T, deriv_variance, deriv_variance_double, korkine_T};
use crate::kernels::{capital_k, jalpha_p2_closed, kernel_variance, FractionalKernel};

/// A case fails when any margin drops below this.
pub const MARGIN_TOLERANCE: f64 = 1e-9;
/// Identity residuals, normalised by `1 + max |f|`, must stay below this.
pub const RESIDUAL_TOLERANCE: f64 = 1e-6;

/// Identity residual ids.
pub mod residual_ids {
    pub const MONTGOMERY: &str = "montgomery";
    pub const FRAC_MONTGOMERY: &str = "frac_montgomery";
    pub const H3_CLOSED_VS_QUAD: &str = "h3_closed_vs_quad";
    pub const H6_K_VS_VARIANCE: &str = "h6_K_vs_variance";
    pub const H7_DIRECT_VS_DOUBLE: &str = "h7_direct_vs_double";
    pub const KORKINE_VS_DIRECT: &str = "korkine_vs_direct";
    pub const MAIN_DIRECT_VS_DOUBLE: &str = "main_direct_vs_double";
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Problem {
    pub function_id: String,
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub x: f64,
}

impl Problem {
    pub fn validate(&self) -> Result<()> {
        if !(self.a.is_finite() && self.b.is_finite() && self.a < self.b) {
            return Err(FracError::InvalidInterval { a: self.a, b: self.b });
        }
        if !(self.alpha >= 1.0 && self.alpha.is_finite()) {
            return Err(FracError::InvalidOrder(self.alpha));
        }
        if !(self.x >= self.a && self.x <= self.b) {
            return Err(FracError::InvalidArgument(format!(
                "x = {} lies outside [{}, {}]",
                self.x, self.a, self.b
            )));
        }
        if self.x == self.b && self.alpha > 1.0 {
            return Err(FracError::DegeneratePoint {
                b: self.b,
                alpha: self.alpha,
            });
        }
        Ok(())
    }

    fn sort_key(&self, other: &Self) -> std::cmp::Ordering {
        self.function_id
            .cmp(&other.function_id)
            .then(self.a.total_cmp(&other.a))
            .then(self.b.total_cmp(&other.b))
            .then(self.alpha.total_cmp(&other.alpha))
            .then(self.x.total_cmp(&other.x))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseStatus {
    Pass,
    Violation,
    Error(String),
}

impl CaseStatus {
    pub fn label(&self) -> &'static str {
        match self {
            CaseStatus::Pass => "pass",
            CaseStatus::Violation => "violation",
            CaseStatus::Error(_) => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub problem: Problem,
    pub bound_results: Vec<BoundResult>,
    /// Normalised absolute residuals keyed by identity id.
    pub identity_residuals: BTreeMap<String, f64>,
    pub status: CaseStatus,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatusCounts {
    pub pass: usize,
    pub violation: usize,
    pub error: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub counts: StatusCounts,
    /// Smallest margin seen per level id.
    pub worst_margin: BTreeMap<String, f64>,
    /// Largest normalised residual seen per identity id.
    pub worst_residual: BTreeMap<String, f64>,
}

impl Summary {
    pub fn from_records(records: &[CaseRecord]) -> Self {
        let mut s = Summary::default();
        for r in records {
            match r.status {
                CaseStatus::Pass => s.counts.pass += 1,
                CaseStatus::Violation => s.counts.violation += 1,
                CaseStatus::Error(_) => s.counts.error += 1,
            }
            for b in &r.bound_results {
                for (level, margin) in b.rhs_levels.iter().zip(&b.margins) {
                    s.worst_margin
                        .entry(level.label.clone())
                        .and_modify(|m| *m = m.min(*margin))
                        .or_insert(*margin);
                }
            }
            for (id, v) in &r.identity_residuals {
                s.worst_residual
                    .entry(id.clone())
                    .and_modify(|m| *m = m.max(*v))
                    .or_insert(*v);
            }
        }
        s
    }
}

/// Wall-clock metadata; the only part of a report that differs between runs.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    /// Seconds since the Unix epoch.
    pub generated_at: u64,
    pub runtime_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub timing: Timing,
    pub summary: Summary,
    pub records: Vec<CaseRecord>,
}

impl VerificationReport {
    pub fn has_violations(&self) -> bool {
        self.summary.counts.violation > 0
    }
}

/// Evaluates every bound and identity residual for one problem.
///
/// Invalid problems and numerical failures become error-status records.
pub fn run_case(p: &Problem, f: &FunctionSpec, settings: &QuadratureSettings) -> CaseRecord {
    let outcome = p.validate().and_then(|_| evaluate_case(p, f, settings));
    match outcome {
        Ok((bound_results, identity_residuals)) => {
            let violated = bound_results
                .iter()
                .flat_map(|b| b.margins.iter())
                .any(|m| *m < -MARGIN_TOLERANCE || m.is_nan())
                || identity_residuals
                    .values()
                    .any(|r| *r > RESIDUAL_TOLERANCE || r.is_nan());
            CaseRecord {
                problem: p.clone(),
                bound_results,
                identity_residuals,
                status: if violated {
                    CaseStatus::Violation
                } else {
                    CaseStatus::Pass
                },
            }
        }
        Err(e) => CaseRecord {
            problem: p.clone(),
            bound_results: Vec::new(),
            identity_residuals: BTreeMap::new(),
            status: CaseStatus::Error(e.to_string()),
        },
    }
}

type CaseOutput = (Vec<BoundResult>, BTreeMap<String, f64>);

fn evaluate_case(p: &Problem, f: &FunctionSpec, s: &QuadratureSettings) -> Result<CaseOutput> {
    let Problem { a, b, alpha, x, .. } = *p;
    let results = vec![
        bounds::ostrowski(f, x, a, b, s)?,
        bounds::chebyshev_bound(f, f, a, b, s)?,
        bounds::gruss(f, f, a, b, s)?,
        bounds::cheng_matic_barnett(f, x, a, b, s)?,
        bounds::corollary_midpoint(f, a, b, s)?,
        bounds::frac_ostrowski_m(f, x, a, b, alpha, s)?,
        bounds::main_theorem(f, x, a, b, alpha, s)?,
    ];

    let scale = 1.0 + f.range_bounds(a, b)?.sup_abs;
    let mut residuals = BTreeMap::new();
    let mut put = |id: &str, raw: f64| {
        residuals.insert(id.to_string(), raw.abs() / scale);
    };

    put(
        residual_ids::MONTGOMERY,
        bounds::montgomery_residual(f, x, a, b, s)?,
    );
    put(
        residual_ids::FRAC_MONTGOMERY,
        bounds::frac_montgomery_residual(f, x, a, b, alpha, s)?,
    );

    let kernel = FractionalKernel::new(x, a, b, alpha)?;
    let quad_kernel = rl_integral_of(|t| kernel.p2(t), a, alpha, b, &s.with_breakpoints(vec![x]))?;
    put(
        residual_ids::H3_CLOSED_VS_QUAD,
        jalpha_p2_closed(x, a, b, alpha)? - quad_kernel.value,
    );
    put(
        residual_ids::H6_K_VS_VARIANCE,
        capital_k(x, a, b, alpha)? - kernel_variance(x, a, b, alpha, s)?,
    );
    put(
        residual_ids::H7_DIRECT_VS_DOUBLE,
        deriv_variance(f, a, b, s)?.value - deriv_variance_double(f, a, b, s)?.value,
    );
    put(
        residual_ids::KORKINE_VS_DIRECT,
        chebyshev_T(f, f, a, b, s)?.value - korkine_T(f, f, a, b, s)?.value,
    );
    let cross = results
        .last()
        .and_then(|r| r.cross_check)
        .unwrap_or(0.0);
    put(residual_ids::MAIN_DIRECT_VS_DOUBLE, cross);

    Ok((results, residuals))
}

/// Expands a config into its sorted list of problems.
pub fn build_problems(config: &RunConfig) -> Vec<Problem> {
    let mut problems = Vec::new();
    for f in &config.functions {
        for &[a, b] in &config.intervals {
            for &alpha in &config.alphas {
                for x in x_grid(&config.x_points, a, b, alpha) {
                    problems.push(Problem {
                        function_id: f.id.clone(),
                        a,
                        b,
                        alpha,
                        x,
                    });
                }
            }
        }
    }
    problems.sort_by(Problem::sort_key);
    problems
}

/// Cartesian sweep of functions x intervals x orders x points.
///
/// Cases run on the current rayon pool; record order depends only on the
/// config.
pub fn run_corpus(config: &RunConfig) -> Result<VerificationReport> {
    config.validate()?;
    let started = Instant::now();
    let settings = config.settings();
    let by_id: BTreeMap<&str, &FunctionSpec> =
        config.functions.iter().map(|f| (f.id.as_str(), f)).collect();
    let problems = build_problems(config);
    let records: Vec<CaseRecord> = problems
        .par_iter()
        .map(|p| run_case(p, by_id[p.function_id.as_str()], &settings))
        .collect();
    let summary = Summary::from_records(&records);
    let generated_at = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    Ok(VerificationReport {
        timing: Timing {
            generated_at,
            runtime_seconds: started.elapsed().as_secs_f64(),
        },
        summary,
        records,
    })
}

/// One row of a single-function sweep of the main inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub x: f64,
    pub lhs: f64,
    pub rhs1: f64,
    pub rhs2: f64,
    pub k: f64,
}

/// Per-x curves of the main inequality's lhs, both rhs levels and `K(x)`.
pub fn sweep_curves(
    f: &FunctionSpec,
    a: f64,
    b: f64,
    alphas: &[f64],
    grid_size: usize,
    settings: &QuadratureSettings,
) -> Result<Vec<SweepRow>> {
    if grid_size == 0 {
        return Err(FracError::InvalidArgument("x grid must have at least one point".into()));
    }
    let mut cases = Vec::new();
    for &alpha in alphas {
        for x in x_grid(&crate::config::XPoints::Count(grid_size), a, b, alpha) {
            cases.push((alpha, x));
        }
    }
    cases
        .par_iter()
        .map(|&(alpha, x)| {
            let r = bounds::main_theorem(f, x, a, b, alpha, settings)?;
            Ok(SweepRow {
                alpha,
                x,
                lhs: r.lhs,
                rhs1: r.rhs_levels[0].value,
                rhs2: r.rhs_levels[1].value,
                k: capital_k(x, a, b, alpha)?,
            })
        })
        .collect()
}
