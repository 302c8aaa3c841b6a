//! Generalized moments `∫ f(ω) dP(ω)` of a spectral measure computed from
//! its correlation function `C(t) = ∫ e^{iωt} dP(ω)` near the origin, by
//! contour integration against band-limited (Paley-Wiener) test functions.

pub mod engine;
pub mod error;
pub mod models;
pub mod paley_wiener;
pub mod quadrature;
pub mod reconstruction;

pub use engine::{
    compute, error_bound, estimate_m, moment, moment_fast, moment_iterated, moment_iterated_tol, monomial_moment,
    pf_at, plan, route_validity, select_nodes, ExecutionPlan, FPlaneCircle, MomentResult, PlanOptions, Route,
};
pub use error::{Error, Result};
pub use models::{oracle_generalized_moment, AnalyticityClass, ModelKind, SpectralModel, Support};
pub use paley_wiener::{shift_scale, EntireFunction, PaleyWienerFunction, PwKind, ShiftScale, TestFunction};
pub use quadrature::{ContourConfig, LaguerreRule};
pub use reconstruction::{correlation_reconstruct, smoothed_spectrum, spectrum_scan, ScanPoint, SpectrumScan};
