//! Function families used for verification, with exact evaluators,
//! derivative bounds, and closed-form fractional integrals for polynomials.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_interval, FracError, Result};
use crate::fracquad::gamma;

/// Parametric family of a corpus member.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// Coefficients in ascending degree.
    Polynomial { coeffs: Vec<f64> },
    /// `amplitude * sin(frequency * t + phase)`
    Trig {
        amplitude: f64,
        frequency: f64,
        phase: f64,
    },
    /// `scale * exp(rate * t)`
    Exponential { scale: f64, rate: f64 },
    /// `1 / (1 + exp(-steepness * (t - center)))`
    Sigmoid { center: f64, steepness: f64 },
    Constant { value: f64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Polynomial { .. } => "polynomial",
            Family::Trig { .. } => "trig",
            Family::Exponential { .. } => "exponential",
            Family::Sigmoid { .. } => "sigmoid",
            Family::Constant { .. } => "constant",
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match self {
            Family::Polynomial { coeffs } => coeffs.clone(),
            Family::Trig {
                amplitude,
                frequency,
                phase,
            } => vec![*amplitude, *frequency, *phase],
            Family::Exponential { scale, rate } => vec![*scale, *rate],
            Family::Sigmoid { center, steepness } => vec![*center, *steepness],
            Family::Constant { value } => vec![*value],
        }
    }

    /// Builds a family from its name and flat parameter list.
    pub fn from_parts(name: &str, params: &[f64]) -> Result<Self> {
        let bad = |expected: &str| FracError::InvalidArgument(format!(
            "family `{name}` expects {expected}, got {} parameter(s)",
            params.len()
        ));
        if let Some(p) = params.iter().find(|p| !p.is_finite()) {
            return Err(FracError::InvalidArgument(format!(
                "family `{name}` has non-finite parameter {p}"
            )));
        }
        let family = match name.trim().to_ascii_lowercase().as_str() {
            "poly" | "polynomial" => {
                if params.is_empty() {
                    return Err(bad("at least one coefficient"));
                }
                Family::Polynomial {
                    coeffs: params.to_vec(),
                }
            }
            "trig" | "sin" => match params {
                [amplitude, frequency, phase] => Family::Trig {
                    amplitude: *amplitude,
                    frequency: *frequency,
                    phase: *phase,
                },
                _ => return Err(bad("3 parameters (amplitude, frequency, phase)")),
            },
            "exp" | "exponential" => match params {
                [scale, rate] => Family::Exponential {
                    scale: *scale,
                    rate: *rate,
                },
                _ => return Err(bad("2 parameters (scale, rate)")),
            },
            "sigmoid" => match params {
                [center, steepness] => Family::Sigmoid {
                    center: *center,
                    steepness: *steepness,
                },
                _ => return Err(bad("2 parameters (center, steepness)")),
            },
            "const" | "constant" => match params {
                [value] => Family::Constant { value: *value },
                _ => return Err(bad("1 parameter (value)")),
            },
            other => {
                return Err(FracError::InvalidArgument(format!(
                    "unknown family `{other}` (expected poly, trig, exp, sigmoid or const)"
                )))
            }
        };
        Ok(family)
    }
}

/// Parses `name:p1,p2,...`, e.g. `poly:0,0,1` or `sigmoid:0.5,40`.
impl FromStr for Family {
    type Err = FracError;

    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let params = rest
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.parse::<f64>().map_err(|_| {
                    FracError::InvalidArgument(format!("cannot parse parameter `{p}` in `{s}`"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Family::from_parts(name, &params)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params().iter().map(|p| p.to_string()).collect();
        write!(f, "{}:{}", self.name(), params.join(","))
    }
}

/// Lower/upper bounds of a function (or of its derivative) on an interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivBounds {
    pub lower: f64,
    pub upper: f64,
    pub sup_abs: f64,
    /// `true` when the bounds come from an analytic argument rather than a scan.
    pub exact: bool,
}

impl DerivBounds {
    fn new(lower: f64, upper: f64, exact: bool) -> Self {
        Self {
            lower,
            upper,
            sup_abs: lower.abs().max(upper.abs()),
            exact,
        }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// A corpus member.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FunctionEntry", into = "FunctionEntry")]
pub struct FunctionSpec {
    pub id: String,
    pub family: Family,
    pub description: String,
}

/// Serialized form of a [`FunctionSpec`]: family name plus parameter list.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctionEntry {
    pub id: String,
    pub family: String,
    pub params: Vec<f64>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
}

impl TryFrom<FunctionEntry> for FunctionSpec {
    type Error = FracError;

    fn try_from(e: FunctionEntry) -> Result<Self> {
        Ok(FunctionSpec {
            family: Family::from_parts(&e.family, &e.params)?,
            id: e.id,
            description: e.description,
        })
    }
}

impl From<FunctionSpec> for FunctionEntry {
    fn from(f: FunctionSpec) -> Self {
        FunctionEntry {
            id: f.id,
            family: f.family.name().to_string(),
            params: f.family.params(),
            description: f.description,
        }
    }
}

fn logistic(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

fn horner(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
}

fn derivative_coeffs(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| k as f64 * c)
        .collect()
}

fn degree(coeffs: &[f64]) -> usize {
    coeffs.iter().rposition(|&c| c != 0.0).unwrap_or(0)
}

impl FunctionSpec {
    pub fn new(id: impl Into<String>, family: Family) -> Self {
        let family_str = family.to_string();
        Self {
            id: id.into(),
            family,
            description: family_str,
        }
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = description.into();
        self
    }

    pub fn eval(&self, t: f64) -> f64 {
        match &self.family {
            Family::Polynomial { coeffs } => horner(coeffs, t),
            Family::Trig {
                amplitude,
                frequency,
                phase,
            } => amplitude * (frequency * t + phase).sin(),
            Family::Exponential { scale, rate } => scale * (rate * t).exp(),
            Family::Sigmoid { center, steepness } => logistic(steepness * (t - center)),
            Family::Constant { value } => *value,
        }
    }

    pub fn eval_deriv(&self, t: f64) -> f64 {
        match &self.family {
            Family::Polynomial { coeffs } => {
                coeffs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .rev()
                    .fold(0.0, |acc, (k, c)| acc * t + k as f64 * c)
            }
            Family::Trig {
                amplitude,
                frequency,
                phase,
            } => amplitude * frequency * (frequency * t + phase).cos(),
            Family::Exponential { scale, rate } => scale * rate * (rate * t).exp(),
            Family::Sigmoid { center, steepness } => {
                let s = logistic(steepness * (t - center));
                steepness * s * (1.0 - s)
            }
            Family::Constant { .. } => 0.0,
        }
    }

    /// Bounds `phi <= f'(t) <= Phi` on `[a, b]`.
    ///
    /// Analytic for constants, exponentials, trig and polynomials of degree at
    /// most 3; otherwise a Chebyshev-node scan (`exact = false`).
    pub fn deriv_bounds(&self, a: f64, b: f64) -> Result<DerivBounds> {
        check_interval(a, b)?;
        let analytic = match &self.family {
            Family::Constant { .. } => Some((0.0, 0.0)),
            Family::Polynomial { coeffs } if degree(coeffs) <= 3 => {
                Some(cubic_range(&derivative_coeffs(coeffs), a, b))
            }
            Family::Polynomial { .. } => None,
            Family::Trig {
                amplitude,
                frequency,
                phase,
            } => Some(sine_range(
                amplitude * frequency,
                *frequency,
                phase + FRAC_PI_2,
                a,
                b,
            )),
            Family::Exponential { .. } => Some(endpoint_range(|t| self.eval_deriv(t), a, b)),
            Family::Sigmoid { .. } => None,
        };
        Ok(match analytic {
            Some((lo, hi)) => DerivBounds::new(lo, hi, true),
            None => scan_bounds(|t| self.eval_deriv(t), a, b),
        })
    }

    /// Bounds `phi <= f(t) <= Phi` on `[a, b]`, same machinery as
    /// [`FunctionSpec::deriv_bounds`] applied to `f` itself.
    pub fn range_bounds(&self, a: f64, b: f64) -> Result<DerivBounds> {
        check_interval(a, b)?;
        let analytic = match &self.family {
            Family::Constant { value } => Some((*value, *value)),
            Family::Polynomial { coeffs } if degree(coeffs) <= 3 => Some(cubic_range(coeffs, a, b)),
            Family::Polynomial { .. } => None,
            Family::Trig {
                amplitude,
                frequency,
                phase,
            } => Some(sine_range(*amplitude, *frequency, *phase, a, b)),
            Family::Exponential { .. } | Family::Sigmoid { .. } => {
                Some(endpoint_range(|t| self.eval(t), a, b))
            }
        };
        Ok(match analytic {
            Some((lo, hi)) => DerivBounds::new(lo, hi, true),
            None => scan_bounds(|t| self.eval(t), a, b),
        })
    }

    /// Closed-form `J_a^alpha f(x)`; only polynomials have one.
    pub fn exact_rl(&self, a: f64, alpha: f64, x: f64) -> Option<Result<f64>> {
        match &self.family {
            Family::Polynomial { coeffs } => Some(exact_rl_poly(coeffs, a, alpha, x)),
            Family::Constant { value } => Some(exact_rl_poly(&[*value], a, alpha, x)),
            _ => None,
        }
    }
}

fn endpoint_range<F: Fn(f64) -> f64>(g: F, a: f64, b: f64) -> (f64, f64) {
    let (ga, gb) = (g(a), g(b));
    (ga.min(gb), ga.max(gb))
}

/// Range of a polynomial of degree <= 3 on `[a, b]`, from endpoints and the
/// real roots of its derivative.
fn cubic_range(coeffs: &[f64], a: f64, b: f64) -> (f64, f64) {
    let d = derivative_coeffs(coeffs);
    let c0 = d.first().copied().unwrap_or(0.0);
    let c1 = d.get(1).copied().unwrap_or(0.0);
    let c2 = d.get(2).copied().unwrap_or(0.0);
    let mut candidates = vec![a, b];
    if c2 != 0.0 {
        let disc = c1 * c1 - 4.0 * c2 * c0;
        if disc >= 0.0 {
            let q = -0.5 * (c1 + c1.signum() * disc.sqrt());
            if q != 0.0 {
                candidates.push(q / c2);
                candidates.push(c0 / q);
            } else {
                candidates.push(0.0);
            }
        }
    } else if c1 != 0.0 {
        candidates.push(-c0 / c1);
    }
    candidates
        .into_iter()
        .filter(|t| *t >= a && *t <= b)
        .map(|t| horner(coeffs, t))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        })
}

/// Range of `amp * sin(freq * t + shift)` on `[a, b]`.
fn sine_range(amp: f64, freq: f64, shift: f64, a: f64, b: f64) -> (f64, f64) {
    let g = |t: f64| amp * (freq * t + shift).sin();
    let (mut lo, mut hi) = endpoint_range(g, a, b);
    if freq == 0.0 {
        return (lo, hi);
    }
    let (u0, u1) = {
        let (p, q) = (freq * a + shift, freq * b + shift);
        (p.min(q), p.max(q))
    };
    // Interior extrema of sin sit at u = pi/2 + k pi.
    let k_first = ((u0 - FRAC_PI_2) / PI).ceil() as i64;
    let k_last = ((u1 - FRAC_PI_2) / PI).floor() as i64;
    if k_last >= k_first {
        for k in k_first..=k_last.min(k_first + 1) {
            let v = amp * if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    (lo, hi)
}

const SCAN_NODES: usize = 1025;
const SCAN_INFLATION: f64 = 1e-6;

/// Bounds from a Chebyshev-node scan, polished by golden-section search
/// around the extreme nodes and inflated by a relative `1e-6`.
fn scan_bounds<F: Fn(f64) -> f64>(g: F, a: f64, b: f64) -> DerivBounds {
    let n = SCAN_NODES - 1;
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    // Ascending nodes: j = n .. 0 of cos(j pi / n).
    let nodes: Vec<f64> = (0..=n)
        .map(|j| {
            let t = mid - half * (j as f64 * PI / n as f64).cos();
            t.clamp(a, b)
        })
        .collect();
    let values: Vec<f64> = nodes.iter().map(|&t| g(t)).collect();

    let argext = |better: fn(f64, f64) -> bool| {
        let mut best = 0;
        for (i, &v) in values.iter().enumerate() {
            if better(v, values[best]) {
                best = i;
            }
        }
        best
    };
    let i_max = argext(|v, w| v > w);
    let i_min = argext(|v, w| v < w);

    let bracket = |i: usize| (nodes[i.saturating_sub(1)], nodes[(i + 1).min(n)]);
    let (l, r) = bracket(i_max);
    let upper = values[i_max].max(golden_max(&g, l, r));
    let (l, r) = bracket(i_min);
    let lower = values[i_min].min(-golden_max(|t| -g(t), l, r));

    let pad = SCAN_INFLATION * lower.abs().max(upper.abs());
    DerivBounds::new(lower - pad, upper + pad, false)
}

/// Maximum of `g` on `[lo, hi]` by golden-section search (unimodal assumption).
pub(crate) fn golden_max<F: Fn(f64) -> f64>(g: F, mut lo: f64, mut hi: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let (mut gc, mut gd) = (g(c), g(d));
    for _ in 0..80 {
        if gc > gd {
            hi = d;
            d = c;
            gd = gc;
            c = hi - INV_PHI * (hi - lo);
            gc = g(c);
        } else {
            lo = c;
            c = d;
            gc = gd;
            d = lo + INV_PHI * (hi - lo);
            gd = g(d);
        }
        if hi - lo <= f64::EPSILON * (lo.abs() + hi.abs()) {
            break;
        }
    }
    gc.max(gd)
}

/// Closed-form Riemann-Liouville integral of a polynomial.
///
/// The polynomial is re-expanded in powers of `(t - a)` and integrated term by
/// term with `J_a^alpha (t - a)^k (x) = k! / Gamma(k + 1 + alpha) (x - a)^(k + alpha)`.
pub fn exact_rl_poly(coeffs: &[f64], a: f64, alpha: f64, x: f64) -> Result<f64> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(FracError::InvalidOrder(alpha));
    }
    if !(x >= a) || !a.is_finite() || !x.is_finite() {
        return Err(FracError::InvalidArgument(format!(
            "require x >= a, got a = {a}, x = {x}"
        )));
    }
    if alpha == 0.0 {
        return Ok(horner(coeffs, x));
    }
    let shifted = taylor_shift(coeffs, a);
    let h = x - a;
    let mut total = 0.0;
    let mut k_fact = 1.0;
    for (k, q) in shifted.iter().enumerate() {
        if k > 0 {
            k_fact *= k as f64;
        }
        if *q != 0.0 {
            total += q * k_fact / gamma(k as f64 + 1.0 + alpha)? * h.powf(k as f64 + alpha);
        }
    }
    Ok(total)
}

/// Coefficients of `p(t)` in powers of `(t - a)` (repeated synthetic division).
fn taylor_shift(coeffs: &[f64], a: f64) -> Vec<f64> {
    let mut c = coeffs.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            c[j] += a * c[j + 1];
        }
    }
    c
}

/// The five default verification functions, all meant for `[0, 1]`.
pub fn default_corpus() -> Vec<FunctionSpec> {
    vec![
        FunctionSpec::new("cubic", Family::Polynomial {
            coeffs: vec![0.0, -1.0, 0.0, 1.0],
        })
        .with_description("t^3 - t"),
        FunctionSpec::new("exp", Family::Exponential {
            scale: 0.5,
            rate: 1.0,
        })
        .with_description("0.5 e^t"),
        FunctionSpec::new("sigmoid", Family::Sigmoid {
            center: 0.5,
            steepness: 40.0,
        })
        .with_description("steep logistic centred at 0.5"),
        FunctionSpec::new("sine", Family::Trig {
            amplitude: 1.0,
            frequency: 1.0,
            phase: 0.0,
        })
        .with_description("sin t"),
        FunctionSpec::new("square", Family::Polynomial {
            coeffs: vec![0.0, 0.0, 1.0],
        })
        .with_description("t^2"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn poly(c: &[f64]) -> FunctionSpec {
        FunctionSpec::new("p", Family::Polynomial { coeffs: c.to_vec() })
    }

    fn sin_t() -> FunctionSpec {
        FunctionSpec::new("sin", Family::Trig {
            amplitude: 1.0,
            frequency: 1.0,
            phase: 0.0,
        })
    }

    #[test]
    fn eval_examples() {
        assert_eq!(poly(&[0.0, 0.0, 1.0]).eval(0.5), 0.25);
        assert_eq!(FunctionSpec::new("c", Family::Constant { value: 3.0 }).eval(17.2), 3.0);
        assert_eq!(sin_t().eval(0.0), 0.0);
    }

    #[test]
    fn eval_deriv_examples() {
        assert_eq!(poly(&[0.0, 0.0, 1.0]).eval_deriv(0.5), 1.0);
        assert_eq!(FunctionSpec::new("c", Family::Constant { value: 3.0 }).eval_deriv(-4.0), 0.0);
        assert_eq!(sin_t().eval_deriv(0.0), 1.0);
    }

    #[test]
    fn deriv_bounds_examples() {
        let b = poly(&[0.0, 0.0, 1.0]).deriv_bounds(0.0, 1.0).unwrap();
        assert_eq!((b.lower, b.upper, b.sup_abs, b.exact), (0.0, 2.0, 2.0, true));
        let b = FunctionSpec::new("c", Family::Constant { value: 7.0 })
            .deriv_bounds(-1.0, 3.0)
            .unwrap();
        assert_eq!((b.lower, b.upper, b.sup_abs), (0.0, 0.0, 0.0));
        let b = sin_t().deriv_bounds(0.0, PI).unwrap();
        assert_relative_eq!(b.lower, -1.0, epsilon = 1e-15);
        assert_relative_eq!(b.upper, 1.0, epsilon = 1e-15);
        assert_relative_eq!(b.sup_abs, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn deriv_bounds_rejects_empty_interval() {
        assert!(matches!(
            sin_t().deriv_bounds(1.0, 1.0),
            Err(FracError::InvalidInterval { .. })
        ));
    }

    #[test]
    fn cubic_bounds_hit_interior_extremum() {
        // t^3 - t: f' = 3t^2 - 1 in [-1, 2] on [0, 1]; f in [-2/(3 sqrt 3), 0].
        let f = poly(&[0.0, -1.0, 0.0, 1.0]);
        let d = f.deriv_bounds(0.0, 1.0).unwrap();
        assert_eq!((d.lower, d.upper), (-1.0, 2.0));
        let r = f.range_bounds(0.0, 1.0).unwrap();
        assert_relative_eq!(r.lower, -2.0 / (3.0 * 3f64.sqrt()), epsilon = 1e-15);
        assert_eq!(r.upper, 0.0);
    }

    #[test]
    fn sigmoid_uses_scan() {
        let f = FunctionSpec::new("s", Family::Sigmoid {
            center: 0.5,
            steepness: 40.0,
        });
        let d = f.deriv_bounds(0.0, 1.0).unwrap();
        assert!(!d.exact);
        assert!(d.upper >= 10.0 && d.upper <= 10.0 * (1.0 + 2e-6));
    }

    #[test]
    fn quartic_scan_finds_interior_maximum() {
        // f = t^4 - t^2, f' = 4t^3 - 2t, min at t = 1/sqrt 6 on [0, 1].
        let f = poly(&[0.0, 0.0, -1.0, 0.0, 1.0]);
        let d = f.deriv_bounds(0.0, 1.0).unwrap();
        let t = 1.0 / 6f64.sqrt();
        let true_min = 4.0 * t.powi(3) - 2.0 * t;
        assert!(!d.exact);
        assert!(d.lower <= true_min && d.lower > true_min - 1e-5);
        assert!(d.upper >= 2.0 && d.upper < 2.0 + 1e-5);
    }

    #[test]
    fn exact_rl_poly_examples() {
        let g25 = 1.5 * 0.5 * PI.sqrt();
        assert_relative_eq!(exact_rl_poly(&[1.0], 0.0, 1.5, 1.0).unwrap(), 1.0 / g25, max_relative = 1e-14);
        assert_relative_eq!(exact_rl_poly(&[0.0, 1.0], 0.0, 2.0, 1.0).unwrap(), 1.0 / 6.0, max_relative = 1e-14);
        assert_relative_eq!(exact_rl_poly(&[0.0, 1.0], 0.0, 1.0, 1.0).unwrap(), 0.5, max_relative = 1e-14);
        assert!(matches!(exact_rl_poly(&[1.0], 0.0, -0.5, 1.0), Err(FracError::InvalidOrder(_))));
    }

    #[test]
    fn exact_rl_poly_alpha_zero_is_identity() {
        assert_eq!(exact_rl_poly(&[1.0, 2.0, 3.0], 0.3, 0.0, 2.0).unwrap(), 1.0 + 4.0 + 12.0);
    }

    #[test]
    fn family_parsing() {
        assert_eq!("poly:0,0,1".parse::<Family>().unwrap(), Family::Polynomial { coeffs: vec![0.0, 0.0, 1.0] });
        assert_eq!("const:3".parse::<Family>().unwrap(), Family::Constant { value: 3.0 });
        assert!("trig:1,2".parse::<Family>().is_err());
        assert!("bogus:1".parse::<Family>().is_err());
        assert!("poly:1,x".parse::<Family>().is_err());
        let f: Family = "sigmoid:0.5,40".parse().unwrap();
        assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
    }

    #[test]
    fn spec_serde_roundtrip() {
        for f in default_corpus() {
            let s = serde_json::to_string(&f).unwrap();
            let back: FunctionSpec = serde_json::from_str(&s).unwrap();
            assert_eq!(back, f);
        }
    }
}
