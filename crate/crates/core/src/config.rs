//! Run configuration: the JSON document consumed by `fracbound verify`.

use serde::{Deserialize, Serialize};

use crate::corpus::{default_corpus, FunctionSpec};
use crate::error::{FracError, Result};
use crate::fracquad::QuadratureSettings;

/// Grid size or explicit evaluation points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum XPoints {
    Count(usize),
    List(Vec<f64>),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
}

/// Optional overrides of [`QuadratureSettings`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abs_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_subdivisions: Option<usize>,
}

impl QuadratureOverrides {
    pub fn apply(&self) -> QuadratureSettings {
        let base = QuadratureSettings::default();
        QuadratureSettings {
            abs_tol: self.abs_tol.unwrap_or(base.abs_tol),
            rel_tol: self.rel_tol.unwrap_or(base.rel_tol),
            max_subdivisions: self.max_subdivisions.unwrap_or(base.max_subdivisions),
            breakpoints: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub functions: Vec<FunctionSpec>,
    pub intervals: Vec<[f64; 2]>,
    pub alphas: Vec<f64>,
    pub x_points: XPoints,
    #[serde(default)]
    pub quadrature: QuadratureOverrides,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<String>,
    #[serde(default)]
    pub format: ReportFormat,
}

fn config_error(field: &str, message: impl Into<String>) -> FracError {
    FracError::Config {
        field: field.to_string(),
        message: message.into(),
    }
}

impl Default for RunConfig {
    /// Five corpus functions on `[0, 1]`, five orders, nine points.
    fn default() -> Self {
        Self {
            functions: default_corpus(),
            intervals: vec![[0.0, 1.0]],
            alphas: vec![1.0, 1.25, 1.5, 2.0, 3.0],
            x_points: XPoints::Count(9),
            quadrature: QuadratureOverrides::default(),
            output_path: Some("report.json".into()),
            format: ReportFormat::Json,
        }
    }
}

impl RunConfig {
    /// Parses and validates a JSON config document.
    pub fn from_json(text: &str) -> Result<Self> {
        let config: RunConfig = serde_json::from_str(text)
            .map_err(|e| config_error("<document>", e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.functions.is_empty() {
            return Err(config_error("functions", "at least one function is required"));
        }
        let mut ids: Vec<&str> = self.functions.iter().map(|f| f.id.as_str()).collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(config_error("functions", format!("duplicate function id `{}`", w[0])));
        }
        if self.intervals.is_empty() {
            return Err(config_error("intervals", "at least one interval is required"));
        }
        for [a, b] in &self.intervals {
            if !(a.is_finite() && b.is_finite() && a < b) {
                return Err(config_error("intervals", format!("interval [{a}, {b}] must satisfy a < b")));
            }
        }
        if self.alphas.is_empty() {
            return Err(config_error("alphas", "at least one order is required"));
        }
        if let Some(alpha) = self.alphas.iter().find(|a| !(a.is_finite() && **a >= 1.0)) {
            return Err(config_error("alphas", format!("alphas must be ≥ 1, got {alpha}")));
        }
        match &self.x_points {
            XPoints::Count(0) => return Err(config_error("x_points", "grid size must be at least 1")),
            XPoints::List(v) if v.is_empty() => {
                return Err(config_error("x_points", "explicit list must be nonempty"))
            }
            XPoints::List(v) if v.iter().any(|x| !x.is_finite()) => {
                return Err(config_error("x_points", "points must be finite"))
            }
            _ => {}
        }
        self.quadrature
            .apply()
            .validate()
            .map_err(|e| config_error("quadrature", e.to_string()))
    }

    pub fn settings(&self) -> QuadratureSettings {
        self.quadrature.apply()
    }
}

/// Evaluation points for one `(interval, alpha)` pair.
///
/// A grid of `n` points covers `[a, b]` when `alpha = 1` and stops a tenth of
/// the interval short of `b` when `alpha > 1`, where `(b - x)^(1 - alpha)` blows up.
pub fn x_grid(points: &XPoints, a: f64, b: f64, alpha: f64) -> Vec<f64> {
    match points {
        XPoints::List(v) => v.clone(),
        XPoints::Count(n) => {
            let hi = if alpha > 1.0 { b - (b - a) / 10.0 } else { b };
            linspace(a, hi, *n)
        }
    }
}

pub(crate) fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_roundtrips_through_json() {
        let c = RunConfig::default();
        let text = serde_json::to_string_pretty(&c).unwrap();
        assert_eq!(RunConfig::from_json(&text).unwrap(), c);
    }

    #[test]
    fn rejects_small_alpha() {
        let mut c = RunConfig::default();
        c.alphas = vec![1.0, 0.5];
        let err = c.validate().unwrap_err();
        assert!(err.to_string().contains("alphas must be ≥ 1"), "{err}");
    }

    #[test]
    fn rejects_empty_interval() {
        let mut c = RunConfig::default();
        c.intervals = vec![[1.0, 1.0]];
        assert!(matches!(c.validate(), Err(FracError::Config { field, .. }) if field == "intervals"));
    }

    #[test]
    fn rejects_unknown_family_in_document() {
        let text = r#"{"functions":[{"id":"q","family":"bessel","params":[1]}],
            "intervals":[[0,1]],"alphas":[1],"x_points":3}"#;
        let err = RunConfig::from_json(text).unwrap_err();
        assert!(err.to_string().contains("bessel"), "{err}");
    }

    #[test]
    fn explicit_points_parse() {
        let text = r#"{"functions":[{"id":"q","family":"poly","params":[0,1]}],
            "intervals":[[0,1]],"alphas":[1],"x_points":[0.25, 0.5],"format":"csv"}"#;
        let c = RunConfig::from_json(text).unwrap();
        assert_eq!(c.x_points, XPoints::List(vec![0.25, 0.5]));
        assert_eq!(c.format, ReportFormat::Csv);
    }

    #[test]
    fn grid_excludes_right_margin_above_one() {
        let g = x_grid(&XPoints::Count(9), 0.0, 1.0, 2.0);
        assert_eq!(g.len(), 9);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[8], 0.9);
        assert_eq!(*x_grid(&XPoints::Count(9), 0.0, 1.0, 1.0).last().unwrap(), 1.0);
        assert_eq!(x_grid(&XPoints::Count(1), 2.0, 3.0, 1.0), vec![2.0]);
    }
}
