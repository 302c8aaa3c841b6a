//! Smoothed spectra `(1/σ)∫ f((ω−ω₀)/σ) dP(ω)` and pointwise reconstruction
//! of `C(t)` as the moment of `e^{iωt}`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{moment, MomentResult, PlanOptions, Route};
use crate::error::{Error, Result};
use crate::models::{AnalyticityClass, SpectralModel};
use crate::paley_wiener::{PaleyWienerFunction, TestFunction};

/// 17 significant digits.
pub fn format_full(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub omega0: f64,
    pub value: Option<f64>,
    pub route: Option<Route>,
    pub bound: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumScan {
    pub sigma: f64,
    pub kernel: TestFunction,
    pub points: Vec<ScanPoint>,
}

impl SpectrumScan {
    pub fn grid(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.omega0).collect()
    }

    pub fn values(&self) -> Vec<Option<f64>> {
        self.points.iter().map(|p| p.value).collect()
    }

    /// Columns `omega0,sigma,value,route,bound`; failed points leave
    /// `value`, `route` and `bound` empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("omega0,sigma,value,route,bound\n");
        for p in &self.points {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                format_full(p.omega0),
                format_full(self.sigma),
                p.value.map(format_full).unwrap_or_default(),
                p.route.map(|r| r.as_str()).unwrap_or_default(),
                p.bound.map(format_full).unwrap_or_default(),
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .points
            .iter()
            .map(|p| {
                serde_json::json!({
                    "omega0": p.omega0,
                    "sigma": self.sigma,
                    "value": p.value,
                    "route": p.route.map(|r| r.as_str()),
                    "bound": p.bound,
                    "error": p.error,
                })
            })
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({
            "kernel": self.kernel.to_string(),
            "sigma": self.sigma,
            "points": rows,
        }))
        .expect("scan serializes")
    }
}

/// Smallest admissible resolution for `kernel` on `model`, exclusive.
fn minimal_sigma(model: &SpectralModel, kernel: &TestFunction) -> Option<f64> {
    let band = kernel.band_limit()?;
    match model.analyticity_class {
        AnalyticityClass::StripOnly => Some(band / (2.0 * model.tau0)),
        _ => None,
    }
}

/// `(1/σ)·∫ kernel((ω−ω₀)/σ) dP(ω)` by the best admissible route. The value
/// and the bound are both divided by `σ`.
pub fn smoothed_spectrum(
    model: &SpectralModel,
    kernel: &TestFunction,
    omega0: f64,
    sigma: f64,
    opts: &PlanOptions,
) -> Result<MomentResult> {
    let g = kernel.shift_scale(omega0, sigma)?;
    let mut r = moment(model, &g, opts).map_err(|e| match e {
        Error::NoValidRoute(msg) => match minimal_sigma(model, kernel) {
            Some(min) => Error::NoValidRoute(format!("{msg}; this kernel needs sigma > {min}")),
            None => Error::NoValidRoute(msg),
        },
        other => other,
    })?;
    r.value /= sigma;
    r.a_priori_bound = r.a_priori_bound.map(|b| b / sigma);
    Ok(r)
}

/// One [`smoothed_spectrum`] per grid point, evaluated in parallel; failures
/// are recorded per point.
pub fn spectrum_scan(
    model: &SpectralModel,
    kernel: &TestFunction,
    grid: &[f64],
    sigma: f64,
    opts: &PlanOptions,
) -> Result<SpectrumScan> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::InvalidScale(sigma));
    }
    let points = grid
        .par_iter()
        .map(|&omega0| match smoothed_spectrum(model, kernel, omega0, sigma, opts) {
            Ok(r) => ScanPoint {
                omega0,
                value: Some(r.real()),
                route: Some(r.route_used.route),
                bound: r.a_priori_bound,
                error: None,
            },
            Err(e) => ScanPoint {
                omega0,
                value: None,
                route: None,
                bound: None,
                error: Some(e.to_string()),
            },
        })
        .collect();
    Ok(SpectrumScan {
        sigma,
        kernel: kernel.clone(),
        points,
    })
}

/// `C(t)` recovered as the generalized moment of `e^{iωt}`.
pub fn correlation_reconstruct(model: &SpectralModel, t: f64, opts: &PlanOptions) -> Result<MomentResult> {
    if !t.is_finite() {
        return Err(Error::domain(Complex64::new(t, 0.0), "finite real time"));
    }
    moment(model, &PaleyWienerFunction::exp(t).into(), opts)
}
