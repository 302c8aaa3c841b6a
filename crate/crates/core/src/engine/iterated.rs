use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::models::SpectralModel;
use crate::paley_wiener::TestFunction;
use crate::quadrature::{circle_nodes, gauss_laguerre, ContourConfig, LaguerreRule};

use super::router::admissible;
use super::{finish, ExecutionPlan, FPlaneCircle, MomentResult, Route};

const DEFAULT_TOL: f64 = 1e-11;
const F_PLANE_MAX_NODES: usize = 16384;
const COMPACT_MAX_NODES: usize = 8192;
const RADIUS_SAMPLES: usize = 64;

fn minus_i(z: Complex64) -> Complex64 {
    Complex64::new(z.im, -z.re)
}

/// Trapezoidal approximation of `P_f(s) = (1/2πi)∮ f(s/z)C(−iz)/z dz` on
/// `|z| = τ` with `N` nodes: `(1/N) Σ f(s/z_k)C(−iz_k)`.
pub fn pf_at(model: &SpectralModel, f: &TestFunction, s: f64, contour: &ContourConfig) -> Result<Complex64> {
    if !(s >= 0.0) || !s.is_finite() {
        return Err(Error::domain(Complex64::new(s, 0.0), "P_f is integrated over s >= 0"));
    }
    if contour.n_nodes == 0 || !(contour.tau > 0.0) {
        return Err(Error::InvalidAnnulus(format!(
            "need tau > 0 and n_nodes > 0, got tau = {}, n_nodes = {}",
            contour.tau, contour.n_nodes
        )));
    }
    origin_pf(model, f, s, contour.tau, contour.n_nodes)
}

fn origin_pf(model: &SpectralModel, f: &TestFunction, s: f64, tau: f64, n: usize) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for z in circle_nodes(Complex64::new(0.0, 0.0), tau, n) {
        acc += f.eval(s / z) * model.correlation_at(minus_i(z))?;
    }
    Ok(acc / n as f64)
}

/// `μ_k = (k!/2πi)∮ C(−iz)/z^{k+1} dz` by the trapezoidal rule on `|z| = τ`.
pub fn monomial_moment(model: &SpectralModel, k: u32, contour: &ContourConfig) -> Result<f64> {
    let n = contour.n_nodes;
    let tau = contour.tau;
    if n == 0 || !(tau > 0.0) {
        return Err(Error::InvalidAnnulus(format!(
            "need tau > 0 and n_nodes > 0, got tau = {tau}, n_nodes = {n}"
        )));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let kf = f64::from(k);
    for j in 0..n {
        let phi = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
        let z = Complex64::from_polar(tau, phi);
        let z_pow = Complex64::from_polar(tau.powf(-kf), -kf * phi);
        acc += model.correlation_at(minus_i(z))? * z_pow;
    }
    let fact: f64 = (1..=k).map(f64::from).product();
    Ok(fact * acc.re / n as f64)
}

/// Gauss-Laguerre order for the origin-circle path, from the decay ratio
/// `x/√(1+x²)`, `x = B/τ₀`, of the Laguerre coefficients of `P_f`.
pub(crate) fn default_laguerre_order(band: f64, tau0: f64) -> usize {
    let x = if tau0.is_finite() { band / tau0 } else { 0.0 };
    let q = x / (1.0 + x * x).sqrt();
    if q <= 0.0 {
        return 40;
    }
    let n = (1e-14f64.ln() / (2.0 * q.ln())).ceil();
    (n as usize).clamp(40, 128)
}

/// Worst-case Laguerre coefficient ratio `max |λ z/(z−1) − 1|` on the circle
/// and the scale `λ` minimising it.
fn laguerre_scale(center: f64, radius: f64) -> (f64, f64) {
    let nodes = circle_nodes(Complex64::new(center, 0.0), radius, 512);
    let ratio = |lambda: f64| {
        nodes
            .iter()
            .map(|&z| (z / (z - 1.0) * lambda - 1.0).norm())
            .fold(0.0, f64::max)
    };
    let mut best = (1.0, ratio(1.0));
    for j in 0..=600 {
        let lambda = 10f64.powf(-3.0 + 3.6 * j as f64 / 600.0);
        let r = ratio(lambda);
        if r < best.1 {
            best = (lambda, r);
        }
    }
    best
}

/// Circle for the `F(θ)` representation of `P_f` and the Laguerre order it
/// needs for `tol`.
///
/// Branch-cut class: centred at 1, crossing the imaginary axis at
/// `±i·min(0.8τ₀/B, 3)`, below the cut tips `±iτ₀/B`. Strip class: centred
/// at 1/2 with radius midway between 1/2 and `τ₀/B`.
pub(crate) fn f_plane_circle(route: Route, band: f64, tau0: f64, tol: f64) -> Result<(FPlaneCircle, usize)> {
    let y = tau0 / band;
    let (center, radius) = match route {
        Route::BranchCutAnalytic => {
            let y1 = (0.8 * y).min(3.0);
            (1.0, (1.0 + y1 * y1).sqrt())
        }
        Route::StripBandLimited => {
            if !(y > 0.5) {
                return Err(Error::NoValidRoute(format!(
                    "strip route needs B < 2 tau0, got B = {band}, tau0 = {tau0}"
                )));
            }
            (0.5, 0.5 * (0.5 + y))
        }
        other => {
            return Err(Error::NoValidRoute(format!(
                "route {other} does not use the F-plane representation"
            )))
        }
    };
    let (lambda, ratio) = laguerre_scale(center, radius);
    if !(ratio < 1.0) {
        return Err(Error::NoValidRoute(format!(
            "Laguerre expansion does not converge on the F-plane circle (ratio {ratio})"
        )));
    }
    let tol = if tol > 0.0 { tol } else { DEFAULT_TOL };
    let order = ((1e-2 * tol).ln() / (2.0 * ratio.ln())).ceil() as usize;
    Ok((
        FPlaneCircle {
            center,
            radius,
            laguerre_scale: lambda,
        },
        order.clamp(32, 128),
    ))
}

/// `∫₀^∞ e^{-s} P_f(s) ds` with `P_f` on the contour selected by the route
/// logic (fast path excluded). `contour` is used as given on the origin
/// circle; F-plane routes start from `contour.n_nodes` and double.
pub fn moment_iterated(
    model: &SpectralModel,
    f: &TestFunction,
    contour: &ContourConfig,
    laguerre_order: usize,
) -> Result<MomentResult> {
    moment_iterated_tol(model, f, contour, laguerre_order, DEFAULT_TOL)
}

/// [`moment_iterated`] with an explicit tolerance for its adaptive parts.
pub fn moment_iterated_tol(
    model: &SpectralModel,
    f: &TestFunction,
    contour: &ContourConfig,
    laguerre_order: usize,
    tol: f64,
) -> Result<MomentResult> {
    let (route, justification) = admissible(model, f, true).map_err(Error::NoValidRoute)?;
    let tau0 = model.tau0;
    let mut plan = ExecutionPlan {
        route,
        justification,
        contour: *contour,
        laguerre_order,
        f_plane: None,
        tol,
    };
    match f.band_limit() {
        None => plan.contour.n_nodes = 0,
        Some(band) if band < tau0 => {
            if !(contour.tau > band && contour.tau < tau0) || contour.n_nodes == 0 {
                return Err(Error::InvalidAnnulus(format!(
                    "origin circle needs B < tau < tau0 and n_nodes > 0, got B = {band}, tau = {}, tau0 = {tau0}, n_nodes = {}",
                    contour.tau, contour.n_nodes
                )));
            }
        }
        Some(band) => {
            let (circle, _) = f_plane_circle(route, band, tau0, tol)?;
            plan.contour.tau = circle.radius;
            plan.contour.n_nodes = contour.n_nodes.max(16);
            plan.f_plane = Some(circle);
        }
    }
    run(model, f, plan)
}

pub(crate) fn run(model: &SpectralModel, f: &TestFunction, plan: ExecutionPlan) -> Result<MomentResult> {
    let rule = gauss_laguerre(plan.laguerre_order)?;
    let tol = if plan.tol > 0.0 { plan.tol } else { DEFAULT_TOL };
    let (raw, nodes) = if let Some(circle) = plan.f_plane {
        f_plane_moment(model, f, &circle, &rule, plan.contour.n_nodes.max(16), tol)?
    } else if f.band_limit().is_none() {
        compact_moment(model, f, &rule, tol)?
    } else {
        (origin_moment(model, f, &plan.contour, &rule)?, plan.contour.n_nodes)
    };
    finish(model, f, raw, None, plan, nodes)
}

/// Fixed origin circle: `Σ_j w_j (1/N) Σ_k f(s_j/z_k) C(−iz_k)`.
fn origin_moment(model: &SpectralModel, f: &TestFunction, contour: &ContourConfig, rule: &LaguerreRule) -> Result<Complex64> {
    let n = contour.n_nodes;
    let nodes = circle_nodes(Complex64::new(0.0, 0.0), contour.tau, n);
    let corr: Vec<Complex64> = nodes
        .iter()
        .map(|&z| model.correlation_at(minus_i(z)))
        .collect::<Result<_>>()?;
    let pf: Vec<Complex64> = rule
        .nodes
        .par_iter()
        .map(|&s| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (z, c) in nodes.iter().zip(&corr) {
                acc += f.eval(s / z) * c;
            }
            acc / n as f64
        })
        .collect();
    Ok(rule.weights.iter().zip(&pf).map(|(&w, &p)| p * w).sum())
}

/// Radius minimising the sampled peak of `|f(s/z)C(−iz)|` over a geometric grid.
fn compact_radius(model: &SpectralModel, f: &TestFunction, s: f64) -> Result<(f64, f64)> {
    let mut best = (1.0, f64::INFINITY);
    for m in -24..=32 {
        let tau = 2f64.powf(m as f64 / 4.0);
        let mut peak: f64 = 0.0;
        for z in circle_nodes(Complex64::new(0.0, 0.0), tau, RADIUS_SAMPLES) {
            peak = peak.max((f.eval(s / z) * model.correlation_at(minus_i(z))?).norm());
        }
        if peak.is_finite() && peak < best.1 {
            best = (tau, peak);
        }
    }
    if !best.1.is_finite() {
        return Err(Error::ToleranceNotMet {
            achieved: f64::INFINITY,
            requested: 0.0,
        });
    }
    Ok(best)
}

/// `P_f(s)` on an origin circle chosen per `s`, doubling nodes until stable.
fn compact_pf(model: &SpectralModel, f: &TestFunction, s: f64, tol: f64) -> Result<(Complex64, usize)> {
    let (tau, peak) = compact_radius(model, f, s)?;
    let floor = 64.0 * f64::EPSILON * peak;
    let mut n = 32;
    let mut prev = origin_pf(model, f, s, tau, n)?;
    loop {
        n *= 2;
        let cur = origin_pf(model, f, s, tau, n)?;
        let diff = (cur - prev).norm();
        if diff <= tol.max(floor) {
            return Ok((cur, n));
        }
        if n >= COMPACT_MAX_NODES {
            return Err(Error::ToleranceNotMet {
                achieved: diff,
                requested: tol.max(floor),
            });
        }
        prev = cur;
    }
}

fn compact_moment(model: &SpectralModel, f: &TestFunction, rule: &LaguerreRule, tol: f64) -> Result<(Complex64, usize)> {
    let order = rule.order as f64;
    let per_node: Vec<(Complex64, usize)> = rule
        .nodes
        .par_iter()
        .zip(&rule.weights)
        .map(|(&s, &w)| compact_pf(model, f, s, 0.1 * tol / (order * w.max(f64::MIN_POSITIVE))))
        .collect::<Result<_>>()?;
    let value = rule.weights.iter().zip(&per_node).map(|(&w, (p, _))| p * w).sum();
    let nodes = per_node.iter().map(|(_, n)| *n).max().unwrap_or(0);
    Ok((value, nodes))
}

/// `F(θ) = ∫ f̂(κ) C(θκ) dκ`.
fn f_transform(model: &SpectralModel, f: &TestFunction, theta: Complex64) -> Result<Complex64> {
    f.pair_with_transform(|kappa| model.correlation_at(theta * kappa))
        .unwrap_or_else(|| Err(Error::NoValidRoute("F(theta) needs the transform of f".into())))
}

/// `∫₀^∞ e^{-s}[(1/2πi)∮ z⁻¹F(z)e^{s/z} dz] ds` on the F-plane circle, with
/// the Laguerre sum moved inside: `(1/N) Σ_k F(z_k)(z_k − c)/z_k · L(z_k)`,
/// `L(z) = Σ_j W_j e^{S_j/z}`. Nodes double until two passes agree to `tol`.
fn f_plane_moment(
    model: &SpectralModel,
    f: &TestFunction,
    circle: &FPlaneCircle,
    rule: &LaguerreRule,
    start: usize,
    tol: f64,
) -> Result<(Complex64, usize)> {
    let lambda = circle.laguerre_scale;
    let outer: Vec<(f64, f64)> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .filter(|(_, &w)| w > 0.0)
        .map(|(&u, &w)| (w.ln() + u * (1.0 - 1.0 / lambda) - lambda.ln(), u / lambda))
        .collect();
    let c = Complex64::new(circle.center, 0.0);
    let term = |z: Complex64| -> Result<Complex64> {
        let zi = z.inv();
        let l: Complex64 = outer.iter().map(|&(lw, s)| (zi * s + lw).exp()).sum();
        Ok(f_transform(model, f, z)? * (z - c) * zi * l)
    };
    let pass = |n: usize, offset: f64| -> Result<Complex64> {
        let terms: Vec<Complex64> = (0..n)
            .into_par_iter()
            .map(|k| {
                let phi = 2.0 * std::f64::consts::PI * (k as f64 + offset) / n as f64;
                term(c + Complex64::from_polar(circle.radius, phi))
            })
            .collect::<Result<_>>()?;
        Ok(terms.iter().sum())
    };
    let mut n = start;
    let mut sum = pass(n, 0.0)?;
    let mut value = sum / n as f64;
    loop {
        sum += pass(n, 0.5)?;
        n *= 2;
        let next = sum / n as f64;
        let diff = (next - value).norm();
        if diff <= tol {
            return Ok((next, n));
        }
        if n >= F_PLANE_MAX_NODES {
            return Err(Error::ToleranceNotMet {
                achieved: diff,
                requested: tol,
            });
        }
        value = next;
    }
}
