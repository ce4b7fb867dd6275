//! Riemann-Liouville fractional integrals
//! `J_a^alpha g(x) = 1/Gamma(alpha) int_a^x (x - t)^(alpha - 1) g(t) dt`.
//!
//! Orders in `(0, 1)` use the substitution `v = (x - t)^alpha`, which turns
//! the weakly singular weight into a bounded integrand:
//! `J_a^alpha g(x) = 1/Gamma(alpha + 1) int_0^{(x-a)^alpha} g(x - v^(1/alpha)) dv`.
//! Orders `>= 1` have a continuous weight and are integrated directly.

mod adaptive;
mod gamma;

pub use adaptive::{integrate, integrate_iterated, QuadResult, QuadratureSettings};
pub use gamma::gamma;

use crate::corpus::FunctionSpec;
use crate::error::{FracError, Result};

/// `J_a^alpha f(x)` for a corpus member.
pub fn rl_integral(
    f: &FunctionSpec,
    a: f64,
    alpha: f64,
    x: f64,
    settings: &QuadratureSettings,
) -> Result<QuadResult> {
    rl_integral_of(|t| f.eval(t), a, alpha, x, settings)
}

/// `J_a^alpha g(x)` for an arbitrary integrand.
///
/// `settings.breakpoints` inside `(a, x)` split the range before refinement;
/// they are mapped through the substitution when `alpha < 1`.
pub fn rl_integral_of<G: Fn(f64) -> f64>(
    g: G,
    a: f64,
    alpha: f64,
    x: f64,
    settings: &QuadratureSettings,
) -> Result<QuadResult> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(FracError::InvalidOrder(alpha));
    }
    if !(a.is_finite() && x.is_finite() && x >= a) {
        return Err(FracError::InvalidArgument(format!(
            "fractional integral needs x >= a, got a = {a}, x = {x}"
        )));
    }
    settings.validate()?;
    if alpha == 0.0 {
        return Ok(QuadResult::exact(g(x)));
    }
    if x == a {
        return Ok(QuadResult::exact(0.0));
    }

    if alpha < 1.0 {
        let prefactor = 1.0 / gamma(alpha + 1.0)?;
        let inv = alpha.recip();
        let upper = (x - a).powf(alpha);
        let breaks: Vec<f64> = settings
            .breakpoints
            .iter()
            .filter(|&&p| p > a && p < x)
            .map(|&p| (x - p).powf(alpha))
            .collect();
        let inner = QuadratureSettings {
            abs_tol: settings.abs_tol / prefactor,
            ..settings.with_breakpoints(breaks)
        };
        let r = integrate(|v| g((x - v.powf(inv)).max(a)), 0.0, upper, &inner)
            .map_err(|e| scale_failure(e, prefactor))?;
        return Ok(r.scaled(prefactor));
    }

    let exponent = alpha - 1.0;
    let prefactor = 1.0 / gamma(alpha)?;
    // Tolerances apply to the scaled result.
    let inner = QuadratureSettings {
        abs_tol: settings.abs_tol / prefactor,
        ..settings.clone()
    };
    let r = integrate(|t| (x - t).powf(exponent) * g(t), a, x, &inner)
        .map_err(|e| scale_failure(e, prefactor))?;
    Ok(r.scaled(prefactor))
}

fn scale_failure(e: FracError, factor: f64) -> FracError {
    match e {
        FracError::NonConvergence {
            value,
            error_estimate,
            subdivisions,
        } => FracError::NonConvergence {
            value: value * factor,
            error_estimate: error_estimate * factor.abs(),
            subdivisions,
        },
        other => other,
    }
}
