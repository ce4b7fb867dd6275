//! Integral mean, Ostrowski deviation, Chebyshev functional (direct and
//! Korkine forms), and derivative norms/variance.

use serde::{Deserialize, Serialize};

use crate::corpus::FunctionSpec;
use crate::error::{check_interval, FracError, Result};
use crate::fracquad::{integrate, integrate_iterated, QuadratureSettings};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FunctionalValue {
    pub value: f64,
    pub error_estimate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivNorms {
    pub sup_norm: f64,
    pub two_norm: f64,
}

fn mean_of<G: Fn(f64) -> f64>(
    g: G,
    a: f64,
    b: f64,
    settings: &QuadratureSettings,
) -> Result<FunctionalValue> {
    check_interval(a, b)?;
    let r = integrate(g, a, b, settings)?;
    let len = b - a;
    Ok(FunctionalValue {
        value: r.value / len,
        error_estimate: r.error_estimate / len,
    })
}

/// Integral mean of `f` over `[a, b]`.
pub fn mean(f: &FunctionSpec, a: f64, b: f64, settings: &QuadratureSettings) -> Result<FunctionalValue> {
    mean_of(|t| f.eval(t), a, b, settings)
}

/// `f(x) - mean(f)`.
#[allow(non_snake_case)]
pub fn ostrowski_S(
    f: &FunctionSpec,
    x: f64,
    a: f64,
    b: f64,
    settings: &QuadratureSettings,
) -> Result<FunctionalValue> {
    check_interval(a, b)?;
    if !(x >= a && x <= b) {
        return Err(FracError::InvalidArgument(format!("x = {x} lies outside [{a}, {b}]")));
    }
    let m = mean(f, a, b, settings)?;
    Ok(FunctionalValue {
        value: f.eval(x) - m.value,
        error_estimate: m.error_estimate,
    })
}

/// Chebyshev functional `T(f, g) = mean(fg) - mean(f) mean(g)`.
#[allow(non_snake_case)]
pub fn chebyshev_T(
    f: &FunctionSpec,
    g: &FunctionSpec,
    a: f64,
    b: f64,
    settings: &QuadratureSettings,
) -> Result<FunctionalValue> {
    let fg = mean_of(|t| f.eval(t) * g.eval(t), a, b, settings)?;
    let mf = mean(f, a, b, settings)?;
    let mg = mean(g, a, b, settings)?;
    Ok(FunctionalValue {
        value: fg.value - mf.value * mg.value,
        error_estimate: fg.error_estimate
            + mf.error_estimate * mg.value.abs()
            + mg.error_estimate * mf.value.abs(),
    })
}

/// Korkine's form `1/(2(b-a)^2) int int (f(t)-f(s)) (g(t)-g(s)) ds dt`,
/// as an iterated quadrature.
#[allow(non_snake_case)]
pub fn korkine_T(
    f: &FunctionSpec,
    g: &FunctionSpec,
    a: f64,
    b: f64,
    settings: &QuadratureSettings,
) -> Result<FunctionalValue> {
    check_interval(a, b)?;
    korkine_of(|t| f.eval(t), |t| g.eval(t), a, b, &[], settings)
}

/// Korkine double integral for arbitrary callables, with breakpoints applied
/// on both axes.
pub(crate) fn korkine_of<F, G>(
    f: F,
    g: G,
    a: f64,
    b: f64,
    breaks: &[f64],
    settings: &QuadratureSettings,
) -> Result<FunctionalValue>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let norm = 1.0 / (2.0 * (b - a) * (b - a));
    let r = integrate_iterated(
        |t, s| (f(t) - f(s)) * (g(t) - g(s)),
        (a, b),
        (a, b),
        breaks,
        breaks,
        settings,
    )?;
    Ok(FunctionalValue {
        value: r.value * norm,
        error_estimate: r.error_estimate * norm,
    })
}

/// `V = ||f'||_2^2 / (b-a) - ((f(b) - f(a)) / (b-a))^2`.
///
/// Evaluated as the centred integral `(1/(b-a)) int (f' - s)^2` with `s` the
/// secant slope, which is the same quantity (since `int f' = f(b) - f(a)`)
/// but nonnegative by construction and exactly zero for linear `f`.
pub fn deriv_variance(
    f: &FunctionSpec,
    a: f64,
    b: f64,
    settings: &QuadratureSettings,
) -> Result<FunctionalValue> {
    check_interval(a, b)?;
    let slope = (f.eval(b) - f.eval(a)) / (b - a);
    mean_of(
        |t| {
            let d = f.eval_deriv(t) - slope;
            d * d
        },
        a,
        b,
        settings,
    )
}

/// Double-integral form `1/(2(b-a)^2) int int (f'(t) - f'(s))^2 ds dt` of
/// [`deriv_variance`].
pub fn deriv_variance_double(
    f: &FunctionSpec,
    a: f64,
    b: f64,
    settings: &QuadratureSettings,
) -> Result<FunctionalValue> {
    check_interval(a, b)?;
    korkine_of(|t| f.eval_deriv(t), |t| f.eval_deriv(t), a, b, &[], settings)
}

/// Sup norm (from the derivative bounds) and L2 norm of `f'`.
pub fn deriv_norms(
    f: &FunctionSpec,
    a: f64,
    b: f64,
    settings: &QuadratureSettings,
) -> Result<DerivNorms> {
    let bounds = f.deriv_bounds(a, b)?;
    let sq = integrate(|t| f.eval_deriv(t).powi(2), a, b, settings)?;
    Ok(DerivNorms {
        sup_norm: bounds.sup_abs,
        two_norm: sq.value.max(0.0).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Family;
    use approx::assert_abs_diff_eq;

    fn poly(c: &[f64]) -> FunctionSpec {
        FunctionSpec::new("p", Family::Polynomial { coeffs: c.to_vec() })
    }

    fn constant(c: f64) -> FunctionSpec {
        FunctionSpec::new("c", Family::Constant { value: c })
    }

    fn s() -> QuadratureSettings {
        QuadratureSettings::default()
    }

    #[test]
    fn mean_examples() {
        assert_abs_diff_eq!(mean(&poly(&[0.0, 0.0, 1.0]), 0.0, 1.0, &s()).unwrap().value, 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(mean(&constant(2.5), -1.0, 4.0, &s()).unwrap().value, 2.5, epsilon = 1e-15);
        assert_abs_diff_eq!(mean(&poly(&[0.0, 1.0]), 0.0, 1.0, &s()).unwrap().value, 0.5, epsilon = 1e-15);
        assert!(mean(&poly(&[0.0, 1.0]), 1.0, 0.0, &s()).is_err());
    }

    #[test]
    fn ostrowski_s_examples() {
        assert_abs_diff_eq!(ostrowski_S(&poly(&[0.0, 0.0, 1.0]), 0.0, 0.0, 1.0, &s()).unwrap().value, -1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ostrowski_S(&poly(&[2.0, -3.0]), 1.5, 1.0, 2.0, &s()).unwrap().value, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(ostrowski_S(&constant(4.0), 0.2, 0.0, 1.0, &s()).unwrap().value, 0.0, epsilon = 1e-15);
        assert!(ostrowski_S(&constant(4.0), 2.0, 0.0, 1.0, &s()).is_err());
    }

    #[test]
    fn chebyshev_examples() {
        let t = poly(&[0.0, 1.0]);
        assert_abs_diff_eq!(chebyshev_T(&t, &t, 0.0, 1.0, &s()).unwrap().value, 1.0 / 12.0, epsilon = 1e-15);
        assert_abs_diff_eq!(chebyshev_T(&t, &constant(3.0), 0.0, 1.0, &s()).unwrap().value, 0.0, epsilon = 1e-15);
        let one_minus_t = poly(&[1.0, -1.0]);
        assert_abs_diff_eq!(chebyshev_T(&t, &one_minus_t, 0.0, 1.0, &s()).unwrap().value, -1.0 / 12.0, epsilon = 1e-15);
    }

    #[test]
    fn korkine_examples() {
        let t = poly(&[0.0, 1.0]);
        let t2 = poly(&[0.0, 0.0, 1.0]);
        assert_abs_diff_eq!(korkine_T(&t, &t, 0.0, 1.0, &s()).unwrap().value, 1.0 / 12.0, epsilon = 1e-14);
        assert_abs_diff_eq!(korkine_T(&t, &constant(1.0), 0.0, 1.0, &s()).unwrap().value, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(korkine_T(&t2, &t2, 0.0, 1.0, &s()).unwrap().value, 4.0 / 45.0, epsilon = 1e-14);
    }

    #[test]
    fn deriv_variance_examples() {
        assert_abs_diff_eq!(deriv_variance(&poly(&[0.0, 1.0]), 0.0, 1.0, &s()).unwrap().value, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(deriv_variance(&poly(&[0.0, 0.0, 1.0]), 0.0, 1.0, &s()).unwrap().value, 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(deriv_variance(&constant(9.0), 0.0, 1.0, &s()).unwrap().value, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(deriv_variance_double(&poly(&[0.0, 0.0, 1.0]), 0.0, 1.0, &s()).unwrap().value, 1.0 / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn deriv_norm_examples() {
        let n = deriv_norms(&poly(&[0.0, 0.0, 1.0]), 0.0, 1.0, &s()).unwrap();
        assert_eq!(n.sup_norm, 2.0);
        assert_abs_diff_eq!(n.two_norm, (4.0f64 / 3.0).sqrt(), epsilon = 1e-14);
        let n = deriv_norms(&constant(1.0), 0.0, 1.0, &s()).unwrap();
        assert_eq!((n.sup_norm, n.two_norm), (0.0, 0.0));
        let n = deriv_norms(&poly(&[0.0, 1.0]), 0.0, 1.0, &s()).unwrap();
        assert_abs_diff_eq!(n.sup_norm, 1.0);
        assert_abs_diff_eq!(n.two_norm, 1.0, epsilon = 1e-15);
    }
}
