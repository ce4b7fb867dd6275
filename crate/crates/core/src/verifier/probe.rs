//! Empirical sharpness probing: maximise `lhs / rhs` of one inequality level
//! over a parametric function family.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::{self, ids, BoundResult};
use crate::corpus::{Family, FunctionSpec};
use crate::error::{FracError, Result};
use crate::fracquad::QuadratureSettings;

/// Parametric families available to the probe. Two-function bounds use the
/// same member for `f` and `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeFamily {
    /// Logistic with free steepness and centre.
    Sigmoid,
    /// `slope * t`.
    LinearPair,
    Constant,
    /// `sin(frequency * t)`.
    Sine,
}

impl ProbeFamily {
    pub const NAMES: [&'static str; 4] = ["sigmoid", "linear-pair", "constant", "sine"];

    /// `(name, lower, upper, initial)` per parameter.
    fn parameters(self) -> &'static [(&'static str, f64, f64, f64)] {
        match self {
            ProbeFamily::Sigmoid => &[("steepness", 1.0, 400.0, 200.0), ("center", 0.25, 0.75, 0.5)],
            ProbeFamily::LinearPair => &[("slope", 0.5, 2.0, 1.0)],
            ProbeFamily::Constant => &[("value", -1.0, 1.0, 0.5)],
            ProbeFamily::Sine => &[("frequency", 0.5, 20.0, 1.0)],
        }
    }

    fn member(self, params: &[f64]) -> FunctionSpec {
        let family = match self {
            ProbeFamily::Sigmoid => Family::Sigmoid {
                steepness: params[0],
                center: params[1],
            },
            ProbeFamily::LinearPair => Family::Polynomial {
                coeffs: vec![0.0, params[0]],
            },
            ProbeFamily::Constant => Family::Constant { value: params[0] },
            ProbeFamily::Sine => Family::Trig {
                amplitude: 1.0,
                frequency: params[0],
                phase: 0.0,
            },
        };
        FunctionSpec::new(format!("probe-{self}"), family)
    }
}

impl FromStr for ProbeFamily {
    type Err = FracError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sigmoid" => Ok(ProbeFamily::Sigmoid),
            "linear-pair" | "linear" => Ok(ProbeFamily::LinearPair),
            "constant" | "const" => Ok(ProbeFamily::Constant),
            "sine" | "sin" => Ok(ProbeFamily::Sine),
            other => Err(FracError::InvalidArgument(format!(
                "unknown probe family `{other}` (valid: {})",
                ProbeFamily::NAMES.join(", ")
            ))),
        }
    }
}

impl fmt::Display for ProbeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = *self as usize;
        f.write_str(ProbeFamily::NAMES[i])
    }
}

/// Interval, evaluation point and order used for point-wise bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeSetup {
    pub a: f64,
    pub b: f64,
    pub x: f64,
    pub alpha: f64,
}

impl Default for ProbeSetup {
    fn default() -> Self {
        Self {
            a: 0.0,
            b: 1.0,
            x: 0.0,
            alpha: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeOutcome {
    pub bound_id: String,
    pub family: ProbeFamily,
    /// `None` when every evaluated point had a vanishing rhs.
    pub best_ratio: Option<f64>,
    pub witness: Vec<(String, f64)>,
    pub evaluations: usize,
    pub skipped: usize,
}

fn evaluate(
    bound_id: &str,
    f: &FunctionSpec,
    setup: &ProbeSetup,
    settings: &QuadratureSettings,
) -> Result<BoundResult> {
    let ProbeSetup { a, b, x, alpha } = *setup;
    match bound_id {
        ids::OSTROWSKI => bounds::ostrowski(f, x, a, b, settings),
        ids::CHEBYSHEV => bounds::chebyshev_bound(f, f, a, b, settings),
        ids::GRUSS => bounds::gruss(f, f, a, b, settings),
        ids::CHENG | ids::MATIC | ids::BARNETT_L2 => bounds::cheng_matic_barnett(f, x, a, b, settings),
        ids::FRAC_OSTROWSKI_M => bounds::frac_ostrowski_m(f, x, a, b, alpha, settings),
        ids::MAIN_FRAC_L2 | ids::MAIN_FRAC_RANGE => bounds::main_theorem(f, x, a, b, alpha, settings),
        ids::COROLLARY_MIDPOINT | ids::COROLLARY_MIDPOINT_RANGE => {
            bounds::corollary_midpoint(f, a, b, settings)
        }
        other => Err(unknown_bound(other)),
    }
}

fn unknown_bound(id: &str) -> FracError {
    FracError::InvalidArgument(format!(
        "unknown bound id `{id}` (valid: {})",
        ids::ALL_LEVELS.join(", ")
    ))
}

struct Search<'a> {
    bound_id: &'a str,
    family: ProbeFamily,
    setup: &'a ProbeSetup,
    settings: &'a QuadratureSettings,
    budget: usize,
    evaluations: usize,
    skipped: usize,
    best: Option<(f64, Vec<f64>)>,
}

impl Search<'_> {
    fn exhausted(&self) -> bool {
        self.evaluations >= self.budget
    }

    /// Ratio at `params`, or `None` when the rhs vanishes.
    fn ratio(&mut self, params: &[f64]) -> Result<Option<f64>> {
        self.evaluations += 1;
        let f = self.family.member(params);
        let r = evaluate(self.bound_id, &f, self.setup, self.settings)?;
        let rhs = r.level(self.bound_id).unwrap_or(0.0);
        if rhs == 0.0 {
            self.skipped += 1;
            return Ok(None);
        }
        let ratio = r.lhs / rhs;
        if self.best.as_ref().is_none_or(|(b, _)| ratio > *b) {
            self.best = Some((ratio, params.to_vec()));
        }
        Ok(Some(ratio))
    }

    /// Golden-section maximisation along coordinate `i`, at most `evals` evaluations.
    fn golden_coordinate(&mut self, point: &mut [f64], i: usize, evals: usize) -> Result<()> {
        const INV_PHI: f64 = 0.618_033_988_749_894_8;
        let (_, lo0, hi0, _) = self.family.parameters()[i];
        let (mut lo, mut hi) = (lo0, hi0);
        let at = |s: &mut Self, v: f64, point: &mut [f64]| -> Result<f64> {
            point[i] = v;
            Ok(s.ratio(point)?.unwrap_or(f64::NEG_INFINITY))
        };
        let mut c = hi - INV_PHI * (hi - lo);
        let mut d = lo + INV_PHI * (hi - lo);
        if self.exhausted() {
            return Ok(());
        }
        let mut fc = at(self, c, point)?;
        if self.exhausted() {
            return Ok(());
        }
        let mut fd = at(self, d, point)?;
        let mut used = 2;
        while used < evals && !self.exhausted() {
            if fc >= fd {
                hi = d;
                d = c;
                fd = fc;
                c = hi - INV_PHI * (hi - lo);
                fc = at(self, c, point)?;
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + INV_PHI * (hi - lo);
                fd = at(self, d, point)?;
            }
            used += 1;
        }
        point[i] = if fc >= fd { c } else { d };
        Ok(())
    }
}

/// Coordinate-wise golden-section search for the largest `lhs / rhs` of the
/// level `bound_id` within `budget` bound evaluations. The first evaluation is
/// the family's initial point.
pub fn sharpness_probe(
    bound_id: &str,
    family: ProbeFamily,
    budget: usize,
    setup: &ProbeSetup,
    settings: &QuadratureSettings,
) -> Result<ProbeOutcome> {
    if !ids::ALL_LEVELS.contains(&bound_id) {
        return Err(unknown_bound(bound_id));
    }
    if budget == 0 {
        return Err(FracError::InvalidArgument("probe budget must be at least 1".into()));
    }
    let params = family.parameters();
    let mut search = Search {
        bound_id,
        family,
        setup,
        settings,
        budget,
        evaluations: 0,
        skipped: 0,
        best: None,
    };
    let mut point: Vec<f64> = params.iter().map(|p| p.3).collect();
    search.ratio(&point)?;
    let per_coordinate = ((budget - 1) / (2 * params.len())).max(4);
    while !search.exhausted() {
        for i in 0..params.len() {
            if let Some((_, best)) = &search.best {
                point.clone_from(best);
            }
            search.golden_coordinate(&mut point, i, per_coordinate)?;
        }
    }
    let witness = match &search.best {
        Some((_, p)) => params
            .iter()
            .zip(p)
            .map(|(spec, v)| (spec.0.to_string(), *v))
            .collect(),
        None => Vec::new(),
    };
    Ok(ProbeOutcome {
        bound_id: bound_id.to_string(),
        family,
        best_ratio: search.best.map(|(r, _)| r),
        witness,
        evaluations: search.evaluations,
        skipped: search.skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(id: &str, fam: ProbeFamily, budget: usize) -> ProbeOutcome {
        sharpness_probe(id, fam, budget, &ProbeSetup::default(), &QuadratureSettings::default()).unwrap()
    }

    #[test]
    fn gruss_sigmoid_is_nearly_sharp() {
        let out = run(ids::GRUSS, ProbeFamily::Sigmoid, 50);
        assert!(out.best_ratio.unwrap() >= 0.9, "{out:?}");
        assert!(out.evaluations <= 50);
        let steep = out.witness.iter().find(|(n, _)| n == "steepness").unwrap().1;
        assert!(steep >= 200.0);
    }

    #[test]
    fn chebyshev_linear_pair_is_equality() {
        let out = run(ids::CHEBYSHEV, ProbeFamily::LinearPair, 1);
        assert!((out.best_ratio.unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(out.evaluations, 1);
    }

    #[test]
    fn constant_family_is_skipped() {
        let out = run(ids::OSTROWSKI, ProbeFamily::Constant, 10);
        assert_eq!(out.best_ratio, None);
        assert_eq!(out.skipped, out.evaluations);
        assert!(out.witness.is_empty());
    }

    #[test]
    fn unknown_ids_and_zero_budget_rejected() {
        let s = QuadratureSettings::default();
        assert!(sharpness_probe("nosuch", ProbeFamily::Sigmoid, 5, &ProbeSetup::default(), &s).is_err());
        assert!(sharpness_probe(ids::GRUSS, ProbeFamily::Sigmoid, 0, &ProbeSetup::default(), &s).is_err());
        assert!("nosuch".parse::<ProbeFamily>().is_err());
        assert_eq!("linear-pair".parse::<ProbeFamily>().unwrap(), ProbeFamily::LinearPair);
    }
}
