//! Globally adaptive Gauss-Kronrod (7/15) quadrature.
//!
//! Each panel is integrated with the 15-point Kronrod rule and the embedded
//! 7-point Gauss rule; the panel error estimate is `|K15 - G7|`. The panel
//! with the largest estimate is bisected until the summed estimate meets the
//! tolerance or the panel budget is spent.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{FracError, Result};

/// Controls for the adaptive integrator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureSettings {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Interior points where the integrand is only piecewise smooth. Points
    /// outside the open integration interval are ignored.
    pub breakpoints: Vec<f64>,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            max_subdivisions: 2000,
            breakpoints: Vec::new(),
        }
    }
}

impl QuadratureSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(FracError::InvalidArgument(format!(
                "abs_tol must be positive, got {}",
                self.abs_tol
            )));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(FracError::InvalidArgument(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(FracError::InvalidArgument(
                "max_subdivisions must be at least 1".into(),
            ));
        }
        if let Some(bp) = self.breakpoints.iter().find(|p| !p.is_finite()) {
            return Err(FracError::InvalidArgument(format!(
                "breakpoint {bp} is not finite"
            )));
        }
        Ok(())
    }

    /// Same tolerances, different breakpoints.
    pub fn with_breakpoints(&self, breakpoints: Vec<f64>) -> Self {
        Self {
            breakpoints,
            ..self.clone()
        }
    }

    /// Tolerances scaled down by `factor` (used for inner integrals).
    pub fn tightened(&self, factor: f64) -> Self {
        Self {
            abs_tol: self.abs_tol / factor,
            rel_tol: self.rel_tol / factor,
            ..self.clone()
        }
    }

    pub(crate) fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Outcome of a converged quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub subdivisions_used: usize,
    pub converged: bool,
}

impl QuadResult {
    pub(crate) fn exact(value: f64) -> Self {
        Self {
            value,
            error_estimate: 0.0,
            subdivisions_used: 0,
            converged: true,
        }
    }

    pub(crate) fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            error_estimate: self.error_estimate * factor.abs(),
            ..self
        }
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn gauss_kronrod<F: FnMut(f64) -> f64>(f: &mut F, lo: f64, hi: f64) -> Result<Panel> {
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut eval = |t: f64| {
        let v = f(t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(FracError::NonFinite(t))
        }
    };
    let fc = eval(centre)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (j, (&node, &wk)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * node;
        let sum = eval(centre - dx)? + eval(centre + dx)?;
        kronrod += wk * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    Ok(Panel {
        lo,
        hi,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    })
}

/// Integrates `f` over `[a, b]` (with `a <= b`), splitting first at every
/// breakpoint in `settings` that lies strictly inside the interval.
///
/// Returns [`FracError::NonConvergence`] carrying the best estimate when the
/// tolerance is not met within `max_subdivisions` panels.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    settings: &QuadratureSettings,
) -> Result<QuadResult> {
    settings.validate()?;
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(FracError::InvalidInterval { a, b });
    }
    if a == b {
        return Ok(QuadResult::exact(0.0));
    }

    let mut cuts: Vec<f64> = settings
        .breakpoints
        .iter()
        .copied()
        .filter(|&p| p > a && p < b)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Panel> = Vec::new();
    let mut lo = a;
    for hi in cuts.into_iter().chain(std::iter::once(b)) {
        heap.push(gauss_kronrod(&mut f, lo, hi)?);
        lo = hi;
    }

    let mut total: f64 = heap.iter().map(|p| p.value).sum();
    let mut error: f64 = heap.iter().map(|p| p.error).sum();

    loop {
        if error <= settings.target(total) {
            break;
        }
        let panel_count = heap.len() + frozen.len();
        if panel_count >= settings.max_subdivisions || heap.is_empty() {
            let (value, error_estimate) = sum_panels(&heap, &frozen);
            return Err(FracError::NonConvergence {
                value,
                error_estimate,
                subdivisions: panel_count,
            });
        }
        let worst = heap.pop().expect("heap is nonempty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // Panel is at floating-point resolution; it cannot be refined further.
            frozen.push(worst);
            continue;
        }
        let left = gauss_kronrod(&mut f, worst.lo, mid)?;
        let right = gauss_kronrod(&mut f, mid, worst.hi)?;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    let (value, error_estimate) = sum_panels(&heap, &frozen);
    Ok(QuadResult {
        value,
        error_estimate,
        subdivisions_used: heap.len() + frozen.len(),
        converged: true,
    })
}

/// Final sums are taken in left-to-right panel order so that the result does
/// not depend on heap layout.
fn sum_panels(heap: &BinaryHeap<Panel>, frozen: &[Panel]) -> (f64, f64) {
    let mut panels: Vec<Panel> = heap.iter().chain(frozen.iter()).copied().collect();
    panels.sort_by(|p, q| p.lo.total_cmp(&q.lo));
    panels
        .iter()
        .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error))
}

/// Iterated integral `int_a^b int_c^d h(t, s) ds dt`.
///
/// The inner integral runs with tolerances ten times tighter than the outer
/// one. `outer_breaks` and `inner_breaks` are passed to the respective levels.
pub fn integrate_iterated<H>(
    h: H,
    (a, b): (f64, f64),
    (c, d): (f64, f64),
    outer_breaks: &[f64],
    inner_breaks: &[f64],
    settings: &QuadratureSettings,
) -> Result<QuadResult>
where
    H: Fn(f64, f64) -> f64,
{
    let outer_settings = settings.with_breakpoints(outer_breaks.to_vec());
    let inner_settings = settings.tightened(10.0).with_breakpoints(inner_breaks.to_vec());
    let failure: RefCell<Option<FracError>> = RefCell::new(None);
    let worst_inner = RefCell::new(0.0_f64);

    let outer = integrate(
        |t| {
            if failure.borrow().is_some() {
                return 0.0;
            }
            match integrate(|s| h(t, s), c, d, &inner_settings) {
                Ok(r) => {
                    let mut w = worst_inner.borrow_mut();
                    *w = w.max(r.error_estimate);
                    r.value
                }
                Err(e) => {
                    *failure.borrow_mut() = Some(e);
                    0.0
                }
            }
        },
        a,
        b,
        &outer_settings,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let outer = outer?;
    Ok(QuadResult {
        error_estimate: outer.error_estimate + (b - a) * worst_inner.into_inner(),
        ..outer
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomials_are_exact_on_one_panel() {
        let r = integrate(|t| t.powi(9) - 3.0 * t * t, 0.0, 2.0, &QuadratureSettings::default())
            .unwrap();
        assert!((r.value - (102.4 - 8.0)).abs() < 1e-12);
        assert_eq!(r.subdivisions_used, 1);
    }

    #[test]
    fn sine_over_half_period() {
        let r = integrate(f64::sin, 0.0, PI, &QuadratureSettings::default()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
        assert!(r.converged);
    }

    #[test]
    fn jump_is_handled_with_breakpoint() {
        let step = |t: f64| if t < 0.3 { 1.0 } else { -2.0 };
        let s = QuadratureSettings::default().with_breakpoints(vec![0.3]);
        let r = integrate(step, 0.0, 1.0, &s).unwrap();
        assert!((r.value - (0.3 - 1.4)).abs() < 1e-14);
        assert_eq!(r.subdivisions_used, 2);
    }

    #[test]
    fn sqrt_endpoint_singularity_converges() {
        let r = integrate(f64::sqrt, 0.0, 1.0, &QuadratureSettings::default()).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn budget_exhaustion_reports_best_estimate() {
        let s = QuadratureSettings {
            max_subdivisions: 3,
            ..Default::default()
        };
        let err = integrate(|t: f64| (1.0 / t.max(1e-300)).sqrt().min(1e8), 0.0, 1.0, &s)
            .unwrap_err();
        match err {
            FracError::NonConvergence { subdivisions, value, .. } => {
                assert_eq!(subdivisions, 3);
                assert!(value > 0.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_finite_integrand_is_an_error() {
        let r = integrate(|t: f64| 1.0 / (t - 0.5), 0.0, 1.0, &QuadratureSettings::default().with_breakpoints(vec![]));
        // 0.5 is the centre node of the first panel.
        assert!(matches!(r, Err(FracError::NonFinite(_))));
    }

    #[test]
    fn rejects_bad_settings() {
        let s = QuadratureSettings {
            abs_tol: 0.0,
            ..Default::default()
        };
        assert!(integrate(|t| t, 0.0, 1.0, &s).is_err());
    }

    #[test]
    fn iterated_product_integral() {
        let r = integrate_iterated(
            |t, s| t * s * s,
            (0.0, 1.0),
            (0.0, 2.0),
            &[],
            &[],
            &QuadratureSettings::default(),
        )
        .unwrap();
        assert!((r.value - 0.5 * 8.0 / 3.0).abs() < 1e-12);
    }
}
