//! Peano kernels of the Montgomery identities and closed forms for the
//! weighted moments of the fractional kernel.

use crate::error::{check_interval, FracError, Result};
use crate::fracquad::{gamma, integrate, QuadratureSettings};

/// Classical Peano kernel `P1(x, t)`. The branch `t >= x` owns `t = x`.
pub fn peano_p1(x: f64, t: f64, a: f64, b: f64) -> Result<f64> {
    check_interval(a, b)?;
    check_in_range("t", t, a, b)?;
    Ok(p1_unchecked(x, t, a, b))
}

fn p1_unchecked(x: f64, t: f64, a: f64, b: f64) -> f64 {
    if t < x {
        (t - a) / (b - a)
    } else {
        (t - b) / (b - a)
    }
}

fn check_in_range(name: &str, v: f64, a: f64, b: f64) -> Result<()> {
    if v >= a && v <= b {
        Ok(())
    } else {
        Err(FracError::InvalidArgument(format!(
            "{name} = {v} lies outside [{a}, {b}]"
        )))
    }
}

/// Validated `(x, a, b, alpha)` for the fractional kernel.
///
/// Holds the branch scale `(b - x)^(1 - alpha) * Gamma(alpha)` so that the
/// kernel can be evaluated inside quadrature loops without recomputing it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalKernel {
    pub x: f64,
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    scale: f64,
}

impl FractionalKernel {
    pub fn new(x: f64, a: f64, b: f64, alpha: f64) -> Result<Self> {
        check_interval(a, b)?;
        if !(alpha >= 1.0 && alpha.is_finite()) {
            return Err(FracError::InvalidOrder(alpha));
        }
        check_in_range("x", x, a, b)?;
        if x == b && alpha > 1.0 {
            return Err(FracError::DegeneratePoint { b, alpha });
        }
        // 0^0 = 1 keeps the alpha = 1 kernel defined at x = b.
        let scale = (b - x).powf(1.0 - alpha) * gamma(alpha)?;
        Ok(Self {
            x,
            a,
            b,
            alpha,
            scale,
        })
    }

    /// `P2(x, t)`; no range check on `t`.
    pub fn p2(&self, t: f64) -> f64 {
        p1_unchecked(self.x, t, self.a, self.b) * self.scale
    }

    /// `(b - t)^(alpha - 1) * P2(x, t)`, the kernel as it appears under `J_a^alpha` at `b`.
    pub fn weighted(&self, t: f64) -> f64 {
        (self.b - t).max(0.0).powf(self.alpha - 1.0) * self.p2(t)
    }
}

/// Fractional Peano kernel `P2(x, t)`.
pub fn peano_p2(x: f64, t: f64, a: f64, b: f64, alpha: f64) -> Result<f64> {
    let k = FractionalKernel::new(x, a, b, alpha)?;
    check_in_range("t", t, a, b)?;
    Ok(k.p2(t))
}

/// `J_a^alpha (P2(x, .))(b) = (b-x)^(1-alpha) (b-a)^alpha / (alpha (alpha+1)) - (b-x) / alpha`.
pub fn jalpha_p2_closed(x: f64, a: f64, b: f64, alpha: f64) -> Result<f64> {
    FractionalKernel::new(x, a, b, alpha)?;
    let v = b - x;
    let len = b - a;
    Ok(v.powf(1.0 - alpha) * len.powf(alpha) / (alpha * (alpha + 1.0)) - v / alpha)
}

/// `K(x)`: variance of the normalised weighted kernel
/// `w(t) = (b-t)^(alpha-1) P2(x,t) / Gamma(alpha)` under the uniform measure on `[a, b]`,
/// `K = (1/(b-a)) int w^2 - ((1/(b-a)) int w)^2`, in closed form.
///
/// With `v = b - x`, `L = b - a`, `C = 1/(2alpha+1) + 1/(2alpha-1) - 1/alpha`:
///
/// `K = v^(2-2alpha) L^(2alpha-2) C - v/((2alpha-1) L) + v^2/(alpha L^2)
///      - (v^(1-alpha) L^(alpha-1)/(alpha(alpha+1)) - v/(alpha L))^2`
///
/// At `alpha = 1` this is identically `1/12`.
pub fn capital_k(x: f64, a: f64, b: f64, alpha: f64) -> Result<f64> {
    FractionalKernel::new(x, a, b, alpha)?;
    let (v, len) = (b - x, b - a);
    let c = 1.0 / (2.0 * alpha + 1.0) + 1.0 / (2.0 * alpha - 1.0) - 1.0 / alpha;
    let second_moment = v.powf(2.0 - 2.0 * alpha) * len.powf(2.0 * alpha - 2.0) * c
        - v / ((2.0 * alpha - 1.0) * len)
        + v * v / (alpha * len * len);
    Ok(second_moment - mean_term(v, len, alpha).powi(2))
}

fn mean_term(v: f64, len: f64, alpha: f64) -> f64 {
    v.powf(1.0 - alpha) * len.powf(alpha - 1.0) / (alpha * (alpha + 1.0)) - v / (alpha * len)
}

/// The `K(x)` display exactly as printed in the source of the main
/// inequality. It agrees with [`capital_k`] at `alpha = 1` (and at `x = a`
/// when `b - a = 1`) but not in general: its first two terms carry an extra
/// factor `(b-x)^(alpha-1)`, and it turns negative as `x` approaches `b` for
/// `alpha > 1`. Kept for comparison only.
pub fn capital_k_printed(x: f64, a: f64, b: f64, alpha: f64) -> Result<f64> {
    FractionalKernel::new(x, a, b, alpha)?;
    let (v, len) = (b - x, b - a);
    let c = 1.0 / (2.0 * alpha + 1.0) + 1.0 / (2.0 * alpha - 1.0) - 1.0 / alpha;
    Ok(v.powf(1.0 - alpha) * len.powf(2.0 * alpha - 2.0) * c
        + v.powf(alpha) / (len * len) * (v / alpha - len / (2.0 * alpha - 1.0))
        - mean_term(v, len, alpha).powi(2))
}

/// Quadrature evaluation of the variance form
/// `1/((b-a) Gamma^2) int (b-t)^(2alpha-2) P2^2 dt - (1/((b-a) Gamma) int (b-t)^(alpha-1) P2 dt)^2`,
/// split at `x`. Independent check of [`capital_k`].
pub fn kernel_variance(
    x: f64,
    a: f64,
    b: f64,
    alpha: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    let k = FractionalKernel::new(x, a, b, alpha)?;
    let g = gamma(alpha)?;
    let len = b - a;
    let s = settings.with_breakpoints(vec![x]);
    let second = integrate(
        |t| {
            let w = k.weighted(t) / g;
            w * w
        },
        a,
        b,
        &s,
    )?
    .value
        / len;
    let first = integrate(|t| k.weighted(t) / g, a, b, &s)?.value / len;
    Ok(second - first * first)
}
