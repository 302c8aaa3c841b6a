use crate::error::{Error, Result};
use crate::models::{AnalyticityClass, SpectralModel, Support};
use crate::paley_wiener::TestFunction;
use crate::quadrature::ContourConfig;

use super::fast::select_nodes;
use super::iterated::{default_laguerre_order, f_plane_circle};
use super::{ExecutionPlan, Route};

/// Overrides and targets for [`plan`]. Unset fields take the defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanOptions {
    pub tau: Option<f64>,
    pub rho1: Option<f64>,
    pub rho2: Option<f64>,
    pub n_nodes: Option<usize>,
    pub laguerre_order: Option<usize>,
    pub tol: f64,
    /// Skip the fast path, as when the iterated integral is requested.
    pub exclude_fast: bool,
}

impl Default for PlanOptions {
    fn default() -> Self {
        Self {
            tau: None,
            rho1: None,
            rho2: None,
            n_nodes: None,
            laguerre_order: None,
            tol: 1e-10,
            exclude_fast: false,
        }
    }
}

impl PlanOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

/// The route with the default contour and tolerance.
pub fn route_validity(model: &SpectralModel, f: &TestFunction) -> Result<ExecutionPlan> {
    plan(model, f, &PlanOptions::default())
}

fn fmt_tau0(t: f64) -> String {
    if t.is_finite() {
        format!("{t}")
    } else {
        "inf".into()
    }
}

/// Admissible routes in order of preference, or the reasons each failed.
pub(super) fn admissible(model: &SpectralModel, f: &TestFunction, exclude_fast: bool) -> std::result::Result<(Route, String), String> {
    let band = f.band_limit();
    let tau0 = model.tau0;
    let t0 = fmt_tau0(tau0);
    let mut reasons = Vec::new();

    match band {
        Some(b) if b < tau0 && !exclude_fast => {
            return Ok((Route::FastPath, format!("B = {b} < tau0 = {t0}")));
        }
        Some(b) if !exclude_fast => reasons.push(format!("fast path needs B < tau0, got B = {b} >= tau0 = {t0}")),
        None => reasons.push("f is not band-limited".to_string()),
        _ => {}
    }
    if let Support::Compact(r) = model.support {
        return Ok((Route::CompactSupport, format!("measure supported on [-{r}, {r}]")));
    }
    reasons.push("support is not compact".into());
    let band = match band {
        Some(b) => b,
        None => {
            return Err(format!(
                "{}; entire functions outside the Paley-Wiener class are admitted only for compactly supported measures",
                reasons.join("; ")
            ))
        }
    };
    match model.analyticity_class {
        AnalyticityClass::PlaneMinusBranchCuts => {
            return Ok((
                Route::BranchCutAnalytic,
                format!("C analytic off the cuts {{iy : |y| >= {t0}}}; any B (B = {band})"),
            ))
        }
        AnalyticityClass::EntirePlane => {
            return Ok((Route::BranchCutAnalytic, format!("C entire; any B (B = {band})")));
        }
        AnalyticityClass::StripOnly => reasons.push("C is analytic only in a strip".into()),
    }
    if band < 2.0 * tau0 {
        return Ok((
            Route::StripBandLimited,
            format!("B = {band} < 2 tau0 = {}", fmt_tau0(2.0 * tau0)),
        ));
    }
    reasons.push(format!("strip route needs B < 2 tau0, got B = {band} >= 2 tau0 = {}", fmt_tau0(2.0 * tau0)));
    Err(reasons.join("; "))
}

/// Origin-centred contour: `τ = (B+τ₀)/2` (or `max(1, 2B)` for entire `C`),
/// `ρ₁ = (B/τ+1)/2`, `ρ₂ = (1+τ₀/τ)/2` (or 2 for entire `C`).
pub(crate) fn default_contour(band: f64, tau0: f64, opts: &PlanOptions) -> ContourConfig {
    let tau = opts.tau.unwrap_or(if tau0.is_finite() {
        0.5 * (band + tau0)
    } else {
        (2.0 * band).max(1.0)
    });
    let rho1 = opts.rho1.unwrap_or(0.5 * (band / tau + 1.0));
    let rho2 = opts.rho2.unwrap_or(if tau0.is_finite() {
        0.5 * (1.0 + tau0 / tau)
    } else {
        2.0
    });
    ContourConfig::new(tau, opts.n_nodes.unwrap_or(0), rho1, rho2)
}

/// Picks the route and sizes its contour.
pub fn plan(model: &SpectralModel, f: &TestFunction, opts: &PlanOptions) -> Result<ExecutionPlan> {
    let (route, justification) = admissible(model, f, opts.exclude_fast).map_err(Error::NoValidRoute)?;
    let tau0 = model.tau0;
    let band = f.band_limit();
    let laguerre = |default: usize| opts.laguerre_order.unwrap_or(default);

    // Not band-limited: per-node radius on the origin circle.
    let Some(band) = band else {
        return Ok(ExecutionPlan {
            route,
            justification,
            contour: ContourConfig::new(1.0, 0, 0.5, 2.0),
            laguerre_order: laguerre(64),
            f_plane: None,
            tol: opts.tol,
        });
    };

    if band < tau0 {
        let mut contour = default_contour(band, tau0, opts);
        ContourConfig {
            n_nodes: contour.n_nodes.max(1),
            ..contour
        }
        .check_annulus(band, tau0)?;
        if contour.n_nodes == 0 {
            contour.n_nodes = select_nodes(model, f, &contour, opts.tol)?.0;
        }
        return Ok(ExecutionPlan {
            route,
            justification,
            contour,
            laguerre_order: if route == Route::FastPath { 0 } else { laguerre(default_laguerre_order(band, tau0)) },
            f_plane: None,
            tol: opts.tol,
        });
    }

    let (circle, order) = f_plane_circle(route, band, tau0, opts.tol)?;
    Ok(ExecutionPlan {
        route,
        justification,
        contour: ContourConfig::new(circle.radius, opts.n_nodes.unwrap_or(64), 0.5, 2.0),
        laguerre_order: laguerre(order),
        f_plane: Some(circle),
        tol: opts.tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paley_wiener::PaleyWienerFunction;

    fn exp_fn(t: f64) -> TestFunction {
        PaleyWienerFunction::exp(t).into()
    }

    #[test]
    fn compact_support_takes_entire_gaussian() {
        let m = SpectralModel::uniform(1.0).unwrap();
        let p = route_validity(&m, &TestFunction::gaussian()).unwrap();
        assert_eq!(p.route, Route::CompactSupport);
    }

    #[test]
    fn strip_model_band_limits() {
        let m = SpectralModel::strip(1.0).unwrap();
        assert_eq!(route_validity(&m, &exp_fn(0.5)).unwrap().route, Route::FastPath);
        assert_eq!(route_validity(&m, &exp_fn(1.5)).unwrap().route, Route::StripBandLimited);
        let err = route_validity(&m, &exp_fn(2.5)).unwrap_err();
        match err {
            Error::NoValidRoute(msg) => assert!(msg.contains("2 tau0"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn open_interval_boundaries() {
        let m = SpectralModel::strip(1.0).unwrap();
        assert_eq!(route_validity(&m, &exp_fn(1.0)).unwrap().route, Route::StripBandLimited);
        assert!(matches!(route_validity(&m, &exp_fn(2.0)), Err(Error::NoValidRoute(_))));
        let e = SpectralModel::exponential();
        assert_eq!(route_validity(&e, &exp_fn(1.0)).unwrap().route, Route::BranchCutAnalytic);
    }

    #[test]
    fn gaussian_f_needs_compact_support() {
        let m = SpectralModel::exponential();
        assert!(matches!(
            route_validity(&m, &TestFunction::gaussian()),
            Err(Error::NoValidRoute(_))
        ));
    }

    #[test]
    fn default_fast_contour() {
        let m = SpectralModel::exponential();
        let p = route_validity(&m, &PaleyWienerFunction::sinc(0.5).into()).unwrap();
        assert_eq!(p.route, Route::FastPath);
        assert!((p.contour.tau - 0.75).abs() < 1e-15);
        assert!((p.contour.rho1 - (0.5 / 0.75 + 1.0) / 2.0).abs() < 1e-15);
        assert!((p.contour.rho2 - (1.0 + 1.0 / 0.75) / 2.0).abs() < 1e-15);
        assert!(p.contour.n_nodes >= 8 && p.contour.n_nodes <= 4096);
        let g = SpectralModel::gaussian();
        let p = route_validity(&g, &PaleyWienerFunction::sinc(0.8).into()).unwrap();
        assert_eq!(p.contour.tau, 1.6);
        assert_eq!(p.contour.rho2, 2.0);
    }
}
