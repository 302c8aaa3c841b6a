//! Generalized moments `∫ f dP` from the correlation function.
//!
//! Four routes are available. The fast path collapses the double integral
//! into a single trapezoidal sum on `|z| = τ`. The other three evaluate the
//! contour functional `P_f(s)` and integrate it against `e^{-s}` by
//! Gauss-Laguerre quadrature.

mod fast;
mod iterated;
mod router;

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::SpectralModel;
use crate::paley_wiener::TestFunction;
use crate::quadrature::ContourConfig;

pub use fast::{error_bound, estimate_m, moment_fast, select_nodes};
pub use iterated::{moment_iterated, moment_iterated_tol, monomial_moment, pf_at};
pub use router::{plan, route_validity, PlanOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Compactly supported measure; admits entire `f` of subexponential growth.
    CompactSupport,
    /// `C` analytic off `{iy : |y| ≥ τ₀}`; any band limit.
    BranchCutAnalytic,
    /// `C` analytic in `|Im z| < τ₀` only; needs `B < 2τ₀`.
    StripBandLimited,
    /// Single trapezoidal sum; needs `B < τ₀`.
    FastPath,
}

impl Route {
    pub fn as_str(&self) -> &'static str {
        match self {
            Route::CompactSupport => "compact_support",
            Route::BranchCutAnalytic => "branch_cut_analytic",
            Route::StripBandLimited => "strip_band_limited",
            Route::FastPath => "fast_path",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Circle `|θ − center| = radius` in the plane of `F(θ) = ∫ f(θω) dP(ω)`,
/// with the scale `λ` of the Gauss-Laguerre rule used for the outer
/// integral (`s = u/λ`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FPlaneCircle {
    pub center: f64,
    pub radius: f64,
    pub laguerre_scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExecutionPlan {
    pub route: Route,
    pub justification: String,
    /// Origin-centred circle for the fast path and for `P_f` on `|z| = τ`.
    /// On the F-plane routes only `n_nodes` is used, as the starting count.
    pub contour: ContourConfig,
    /// Gauss-Laguerre order of the outer integral; 0 on the fast path.
    pub laguerre_order: usize,
    /// Set when `P_f` is represented through `F(θ)`.
    pub f_plane: Option<FPlaneCircle>,
    /// Absolute tolerance the plan was sized for.
    pub tol: f64,
}

impl fmt::Display for ExecutionPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "route={} ({})", self.route, self.justification)?;
        match (&self.f_plane, self.route) {
            (Some(c), _) => write!(
                f,
                "; F-plane circle center={} radius={:.7} laguerre_order={} scale={:.7}",
                c.center, c.radius, self.laguerre_order, c.laguerre_scale
            ),
            (None, Route::FastPath) => write!(
                f,
                "; tau={:.7} n_nodes={} rho1={:.7} rho2={:.7}",
                self.contour.tau, self.contour.n_nodes, self.contour.rho1, self.contour.rho2
            ),
            (None, Route::CompactSupport) if self.contour.n_nodes == 0 => {
                write!(f, "; per-node radius, laguerre_order={}", self.laguerre_order)
            }
            (None, _) => write!(
                f,
                "; tau={:.7} n_nodes={} laguerre_order={}",
                self.contour.tau, self.contour.n_nodes, self.laguerre_order
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentResult {
    /// Imaginary part is zeroed when the model is symmetric and `f` is real
    /// on the real axis.
    pub value: Complex64,
    pub real_valued: bool,
    /// Estimated bound on the trapezoidal error (fast path only).
    pub a_priori_bound: Option<f64>,
    pub route_used: ExecutionPlan,
    pub nodes_used: usize,
}

impl MomentResult {
    pub fn real(&self) -> f64 {
        self.value.re
    }
}

/// Runs a plan produced by [`plan`].
pub fn compute(model: &SpectralModel, f: &TestFunction, plan: &ExecutionPlan) -> Result<MomentResult> {
    match plan.route {
        Route::FastPath => fast::run(model, f, plan.clone()),
        _ => iterated::run(model, f, plan.clone()),
    }
}

/// Plans and computes in one step.
pub fn moment(model: &SpectralModel, f: &TestFunction, opts: &PlanOptions) -> Result<MomentResult> {
    let p = plan(model, f, opts)?;
    compute(model, f, &p)
}

pub(crate) fn finish(
    model: &SpectralModel,
    f: &TestFunction,
    raw: Complex64,
    a_priori_bound: Option<f64>,
    route_used: ExecutionPlan,
    nodes_used: usize,
) -> Result<MomentResult> {
    let real_valued = model.is_symmetric() && f.is_real_on_real_axis();
    let value = if real_valued {
        let allowed = 1e-10 * (1.0 + raw.re.abs());
        if raw.im.abs() > allowed {
            return Err(Error::ToleranceNotMet {
                achieved: raw.im.abs(),
                requested: allowed,
            });
        }
        Complex64::new(raw.re, 0.0)
    } else {
        raw
    };
    Ok(MomentResult {
        value,
        real_valued,
        a_priori_bound,
        route_used,
        nodes_used,
    })
}
