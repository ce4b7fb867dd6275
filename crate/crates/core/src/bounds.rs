//! Inequalities as `(lhs, rhs ladder)` computations.
//!
//! Every bound returns a [`BoundResult`]; its `rhs_levels` labels form the
//! stable id vocabulary in [`ids`]. Where a bound has several levels they are
//! listed tightest first.

use serde::{Deserialize, Serialize};

use crate::corpus::FunctionSpec;
use crate::error::{check_interval, FracError, Result};
use crate::fracquad::{gamma, integrate, rl_integral, rl_integral_of, QuadratureSettings};
use crate::functionals::{chebyshev_T, deriv_variance, korkine_of, mean};
use crate::kernels::{capital_k, peano_p1, FractionalKernel};

/// Stable identifiers for inequality levels and result groups.
pub mod ids {
    pub const OSTROWSKI: &str = "ostrowski";
    pub const CHEBYSHEV: &str = "chebyshev";
    pub const GRUSS: &str = "gruss";
    pub const CHENG: &str = "cheng";
    pub const MATIC: &str = "matic";
    pub const BARNETT_L2: &str = "barnett_l2";
    pub const FRAC_OSTROWSKI_M: &str = "frac_ostrowski_M";
    pub const MAIN_FRAC_L2: &str = "main_frac_l2";
    pub const MAIN_FRAC_RANGE: &str = "main_frac_range";
    pub const COROLLARY_MIDPOINT: &str = "corollary_midpoint";
    pub const COROLLARY_MIDPOINT_RANGE: &str = "corollary_midpoint_range";

    /// Group ids for results with several levels.
    pub const OSTROWSKI_GRUSS: &str = "ostrowski_gruss";
    pub const MAIN_FRAC: &str = "main_frac";

    /// Level ids accepted by the sharpness probe and reported in summaries.
    pub const ALL_LEVELS: [&str; 11] = [
        OSTROWSKI,
        CHEBYSHEV,
        GRUSS,
        CHENG,
        MATIC,
        BARNETT_L2,
        FRAC_OSTROWSKI_M,
        MAIN_FRAC_L2,
        MAIN_FRAC_RANGE,
        COROLLARY_MIDPOINT,
        COROLLARY_MIDPOINT_RANGE,
    ];
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhsLevel {
    pub label: String,
    pub value: f64,
}

/// Echo of the inputs a bound was evaluated at.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundInputs {
    pub function_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_function_id: Option<String>,
    pub a: f64,
    pub b: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub bound_id: String,
    pub lhs: f64,
    pub rhs_levels: Vec<RhsLevel>,
    /// `rhs_levels[i].value - lhs`.
    pub margins: Vec<f64>,
    /// `lhs / rhs_levels[0]`; `0` when both vanish, `None` when only the rhs does.
    pub ratio: Option<f64>,
    pub inputs: BoundInputs,
    /// Discrepancy between two independent evaluations of the lhs, when computed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<f64>,
}

impl BoundResult {
    pub fn new(bound_id: &str, lhs: f64, levels: &[(&str, f64)], inputs: BoundInputs) -> Self {
        let rhs_levels: Vec<RhsLevel> = levels
            .iter()
            .map(|(label, value)| RhsLevel {
                label: label.to_string(),
                value: *value,
            })
            .collect();
        let margins = rhs_levels.iter().map(|l| l.value - lhs).collect();
        let ratio = match rhs_levels.first().map(|l| l.value) {
            Some(r) if r != 0.0 => Some(lhs / r),
            Some(_) if lhs == 0.0 => Some(0.0),
            _ => None,
        };
        Self {
            bound_id: bound_id.to_string(),
            lhs,
            rhs_levels,
            margins,
            ratio,
            inputs,
            cross_check: None,
        }
    }

    pub fn level(&self, label: &str) -> Option<f64> {
        self.rhs_levels.iter().find(|l| l.label == label).map(|l| l.value)
    }

    pub fn margin(&self, label: &str) -> Option<f64> {
        self.rhs_levels
            .iter()
            .position(|l| l.label == label)
            .map(|i| self.margins[i])
    }

    pub fn min_margin(&self) -> f64 {
        self.margins.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

fn check_point(x: f64, a: f64, b: f64) -> Result<()> {
    check_interval(a, b)?;
    if x >= a && x <= b {
        Ok(())
    } else {
        Err(FracError::InvalidArgument(format!("x = {x} lies outside [{a}, {b}]")))
    }
}

fn inputs(f: &FunctionSpec, a: f64, b: f64) -> BoundInputs {
    BoundInputs {
        function_id: f.id.clone(),
        second_function_id: None,
        a,
        b,
        alpha: None,
        x: None,
    }
}

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// `|f(x) - mean| <= M/(b-a) [((b-a)/2)^2 + (x - (a+b)/2)^2]`.
pub fn ostrowski(
    f: &FunctionSpec,
    x: f64,
    a: f64,
    b: f64,
    settings: &QuadratureSettings,
) -> Result<BoundResult> {
    check_point(x, a, b)?;
    let sup = f.deriv_bounds(a, b)?.sup_abs;
    let lhs = (f.eval(x) - mean(f, a, b, settings)?.value).abs();
    let len = b - a;
    let mid = 0.5 * (a + b);
    let rhs = sup / len * ((0.5 * len).powi(2) + (x - mid).powi(2));
    Ok(BoundResult::new(ids::OSTROWSKI, lhs, &[(ids::OSTROWSKI, rhs)], BoundInputs {
        x: Some(x),
        ..inputs(f, a, b)
    }))
}

/// `|T(f,g)| <= (b-a)^2/12 ||f'||_inf ||g'||_inf`.
pub fn chebyshev_bound(
    f: &FunctionSpec,
    g: &FunctionSpec,
    a: f64,
    b: f64,
    settings: &QuadratureSettings,
) -> Result<BoundResult> {
    check_interval(a, b)?;
    let lhs = chebyshev_T(f, g, a, b, settings)?.value.abs();
    let rhs = (b - a).powi(2) / 12.0 * f.deriv_bounds(a, b)?.sup_abs * g.deriv_bounds(a, b)?.sup_abs;
    Ok(BoundResult::new(ids::CHEBYSHEV, lhs, &[(ids::CHEBYSHEV, rhs)], BoundInputs {
        second_function_id: Some(g.id.clone()),
        ..inputs(f, a, b)
    }))
}

/// `|T(f,g)| <= (Phi - phi)(Gamma - gamma) / 4` with the ranges of `f` and `g` themselves.
pub fn gruss(
    f: &FunctionSpec,
    g: &FunctionSpec,
    a: f64,
    b: f64,
    settings: &QuadratureSettings,
) -> Result<BoundResult> {
    check_interval(a, b)?;
    let lhs = chebyshev_T(f, g, a, b, settings)?.value.abs();
    let rhs = 0.25 * f.range_bounds(a, b)?.width() * g.range_bounds(a, b)?.width();
    Ok(BoundResult::new(ids::GRUSS, lhs, &[(ids::GRUSS, rhs)], BoundInputs {
        second_function_id: Some(g.id.clone()),
        ..inputs(f, a, b)
    }))
}

/// Ostrowski-Gruss ladder: lhs `|f(x) - s (x - (a+b)/2) - mean|` with `s`
/// the secant slope, against the L2 level (Barnett), the `1/(4 sqrt 3)`
/// range level (Matic) and the `1/4` range level (Cheng).
pub fn cheng_matic_barnett(
    f: &FunctionSpec,
    x: f64,
    a: f64,
    b: f64,
    settings: &QuadratureSettings,
) -> Result<BoundResult> {
    check_point(x, a, b)?;
    let len = b - a;
    let slope = (f.eval(b) - f.eval(a)) / len;
    let m = mean(f, a, b, settings)?.value;
    let lhs = (f.eval(x) - slope * (x - 0.5 * (a + b)) - m).abs();
    let v = deriv_variance(f, a, b, settings)?.value.max(0.0);
    let width = f.deriv_bounds(a, b)?.width();
    let levels = [
        (ids::BARNETT_L2, len / (2.0 * SQRT3) * v.sqrt()),
        (ids::MATIC, len * width / (4.0 * SQRT3)),
        (ids::CHENG, len * width / 4.0),
    ];
    Ok(BoundResult::new(ids::OSTROWSKI_GRUSS, lhs, &levels, BoundInputs {
        x: Some(x),
        ..inputs(f, a, b)
    }))
}

/// The fractional pieces shared by the Montgomery-type identity and the
/// fractional bounds, all evaluated at the right endpoint `b`.
struct FractionalTerms {
    kernel: FractionalKernel,
    /// `J_a^alpha f(b)`
    j_f: f64,
    /// `J_a^(alpha-1) (P2(x, .) f)(b)`
    j_kernel_f: f64,
}

impl FractionalTerms {
    fn new(
        f: &FunctionSpec,
        x: f64,
        a: f64,
        b: f64,
        alpha: f64,
        settings: &QuadratureSettings,
    ) -> Result<Self> {
        let kernel = FractionalKernel::new(x, a, b, alpha)?;
        let plain = settings.with_breakpoints(Vec::new());
        let j_f = rl_integral(f, a, alpha, b, &plain)?.value;
        let j_kernel_f = rl_integral_of(
            |t| kernel.p2(t) * f.eval(t),
            a,
            alpha - 1.0,
            b,
            &settings.with_breakpoints(vec![x]),
        )?
        .value;
        Ok(Self {
            kernel,
            j_f,
            j_kernel_f,
        })
    }

    /// `(b-x)^(1-alpha) (b-a)^-1` times `J_a^alpha f(b)`, without the Gamma factor.
    fn scaled_j_f(&self) -> f64 {
        let k = &self.kernel;
        (k.b - k.x).powf(1.0 - k.alpha) / (k.b - k.a) * self.j_f
    }
}

/// Fractional Ostrowski bound with `|f'| <= M`:
/// `|f(x) - (b-x)^(1-alpha) Gamma(alpha)/(b-a) J^alpha f(b) + J^(alpha-1)(P2 f)(b)|
///  <= M/(alpha(alpha+1)) [(b-x)(2alpha(b-x)/(b-a) - alpha - 1) + (b-a)^alpha (b-x)^(1-alpha)]`.
pub fn frac_ostrowski_m(
    f: &FunctionSpec,
    x: f64,
    a: f64,
    b: f64,
    alpha: f64,
    settings: &QuadratureSettings,
) -> Result<BoundResult> {
    let terms = FractionalTerms::new(f, x, a, b, alpha, settings)?;
    let g = gamma(alpha)?;
    let lhs = (f.eval(x) - g * terms.scaled_j_f() + terms.j_kernel_f).abs();
    let sup = f.deriv_bounds(a, b)?.sup_abs;
    let (v, len) = (b - x, b - a);
    let rhs = sup / (alpha * (alpha + 1.0))
        * (v * (2.0 * alpha * v / len - alpha - 1.0) + len.powf(alpha) * v.powf(1.0 - alpha));
    Ok(BoundResult::new(
        ids::FRAC_OSTROWSKI_M,
        lhs,
        &[(ids::FRAC_OSTROWSKI_M, rhs)],
        BoundInputs {
            alpha: Some(alpha),
            x: Some(x),
            ..inputs(f, a, b)
        },
    ))
}

/// Residual of the fractional Montgomery identity
/// `f(x) - Gamma(alpha)/(b-a) (b-x)^(1-alpha) J^alpha f(b) + J^(alpha-1)(P2 f)(b) - J^alpha(P2 f')(b)`.
pub fn frac_montgomery_residual(
    f: &FunctionSpec,
    x: f64,
    a: f64,
    b: f64,
    alpha: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    let terms = FractionalTerms::new(f, x, a, b, alpha, settings)?;
    let kernel = terms.kernel;
    let j_kernel_df = rl_integral_of(
        |t| kernel.p2(t) * f.eval_deriv(t),
        a,
        alpha,
        b,
        &settings.with_breakpoints(vec![x]),
    )?
    .value;
    let g = gamma(alpha)?;
    Ok(f.eval(x) - g * terms.scaled_j_f() + terms.j_kernel_f - j_kernel_df)
}

/// Residual of the classical Montgomery identity `f(x) - mean - int P1(x,t) f'(t) dt`.
pub fn montgomery_residual(
    f: &FunctionSpec,
    x: f64,
    a: f64,
    b: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    check_point(x, a, b)?;
    let m = mean(f, a, b, settings)?.value;
    let kernel_part = integrate(
        |t| peano_p1(x, t, a, b).unwrap_or(0.0) * f.eval_deriv(t),
        a,
        b,
        &settings.with_breakpoints(vec![x]),
    )?
    .value;
    Ok(f.eval(x) - m - kernel_part)
}

/// Main fractional Ostrowski-Gruss inequality.
///
/// lhs: `|f(x)/G(alpha) - (b-x)^(1-alpha)/(b-a) J^alpha f(b) + 1/G(alpha) J^(alpha-1)(P2 f)(b)
///        - s ((b-x)^(1-alpha)(b-a)^alpha/G(alpha+2) - (b-x)/G(alpha+1))|`
/// with `s` the secant slope; levels
/// `main_frac_l2 = (b-a) K^(1/2) (V / G(alpha)^2)^(1/2)` and
/// `main_frac_range = K^(1/2) / (2 G(alpha)) (b-a)(Phi - phi)`.
///
/// The lhs is also computed as `(b-a)` times the Korkine double integral of
/// the weighted kernel against `f'`; the discrepancy is in `cross_check`.
pub fn main_theorem(
    f: &FunctionSpec,
    x: f64,
    a: f64,
    b: f64,
    alpha: f64,
    settings: &QuadratureSettings,
) -> Result<BoundResult> {
    let terms = FractionalTerms::new(f, x, a, b, alpha, settings)?;
    let g = gamma(alpha)?;
    let (v, len) = (b - x, b - a);
    let slope = (f.eval(b) - f.eval(a)) / len;
    let correction =
        v.powf(1.0 - alpha) * len.powf(alpha) / gamma(alpha + 2.0)? - v / gamma(alpha + 1.0)?;
    let direct = f.eval(x) / g - terms.scaled_j_f() + terms.j_kernel_f / g - slope * correction;

    let kernel = terms.kernel;
    let korkine = korkine_of(
        |t| kernel.weighted(t),
        |t| f.eval_deriv(t),
        a,
        b,
        &[x],
        settings,
    )?;
    let via_korkine = len * korkine.value / (g * g);

    let k = capital_k(x, a, b, alpha)?.max(0.0);
    let var = deriv_variance(f, a, b, settings)?.value.max(0.0);
    let width = f.deriv_bounds(a, b)?.width();
    let levels = [
        (ids::MAIN_FRAC_L2, len * k.sqrt() * var.sqrt() / g),
        (ids::MAIN_FRAC_RANGE, k.sqrt() / (2.0 * g) * len * width),
    ];
    let mut result = BoundResult::new(ids::MAIN_FRAC, direct.abs(), &levels, BoundInputs {
        alpha: Some(alpha),
        x: Some(x),
        ..inputs(f, a, b)
    });
    result.cross_check = Some((direct - via_korkine).abs());
    Ok(result)
}

/// Midpoint specialisation at `alpha = 1`: `|f((a+b)/2) - mean|` against the
/// L2 level and the `1/(4 sqrt 3)` range level.
pub fn corollary_midpoint(
    f: &FunctionSpec,
    a: f64,
    b: f64,
    settings: &QuadratureSettings,
) -> Result<BoundResult> {
    check_interval(a, b)?;
    let len = b - a;
    let mid = 0.5 * (a + b);
    let lhs = (f.eval(mid) - mean(f, a, b, settings)?.value).abs();
    let v = deriv_variance(f, a, b, settings)?.value.max(0.0);
    let width = f.deriv_bounds(a, b)?.width();
    let levels = [
        (ids::COROLLARY_MIDPOINT, len / (2.0 * SQRT3) * v.sqrt()),
        (ids::COROLLARY_MIDPOINT_RANGE, len * width / (4.0 * SQRT3)),
    ];
    Ok(BoundResult::new(ids::COROLLARY_MIDPOINT, lhs, &levels, BoundInputs {
        x: Some(mid),
        ..inputs(f, a, b)
    }))
}
