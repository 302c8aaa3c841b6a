use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::models::SpectralModel;
use crate::paley_wiener::TestFunction;
use crate::quadrature::{circle_nodes, ContourConfig};

use super::{finish, ExecutionPlan, MomentResult, Route};

const MAX_NODES: usize = 4096;
const M_INFLATION: f64 = 1.5;

/// `τM₂ρ₂/(ρ₂^{N+1} − 1) + τM₁ρ₁^N/(1 − ρ₁^{N+1})`.
pub fn error_bound(m1: f64, m2: f64, tau: f64, rho1: f64, rho2: f64, n: usize) -> Result<f64> {
    if !(rho1 > 0.0 && rho1 < 1.0 && rho2 > 1.0) {
        return Err(Error::InvalidAnnulus(format!(
            "need 0 < rho1 < 1 < rho2, got rho1 = {rho1}, rho2 = {rho2}"
        )));
    }
    if n < 1 || !(m1 >= 0.0 && m2 >= 0.0) || !(tau > 0.0) {
        return Err(Error::InvalidAnnulus(format!(
            "need N >= 1, M1, M2 >= 0 and tau > 0, got N = {n}, M1 = {m1}, M2 = {m2}, tau = {tau}"
        )));
    }
    let np1 = (n + 1) as f64;
    let outer = tau * m2 * rho2 / (rho2.powf(np1) - 1.0);
    let inner = tau * m1 * rho1.powf(n as f64) / (1.0 - rho1.powf(np1));
    Ok(outer + inner)
}

/// The summand `Φ_f(1/z)·C(−iz)/z` of the collapsed contour integral.
fn integrand(model: &SpectralModel, f: &TestFunction, z: Complex64) -> Result<Complex64> {
    let c = model.correlation_at(Complex64::new(0.0, -1.0) * z)?;
    Ok(f.phi_eval(z.inv())? * c / z)
}

/// Sampled maxima of `|Φ_f(1/z)C(−iz)/z|` on `|z| = ρ₁τ` and `|z| = ρ₂τ`
/// at `4(N+1)` points each, inflated by 1.5.
pub fn estimate_m(model: &SpectralModel, f: &TestFunction, contour: &ContourConfig) -> Result<(f64, f64)> {
    let samples = 4 * contour.n_nodes.max(1);
    let peak = |radius: f64| -> Result<f64> {
        let nodes = circle_nodes(Complex64::new(0.0, 0.0), radius, samples);
        let values: Vec<f64> = nodes
            .par_iter()
            .map(|&z| integrand(model, f, z).map(|v| v.norm()))
            .collect::<Result<_>>()?;
        Ok(values.into_iter().fold(0.0, f64::max))
    };
    let m1 = peak(contour.rho1 * contour.tau)?;
    let m2 = peak(contour.rho2 * contour.tau)?;
    Ok((M_INFLATION * m1, M_INFLATION * m2))
}

fn bound_for(model: &SpectralModel, f: &TestFunction, contour: &ContourConfig) -> Result<f64> {
    let (m1, m2) = estimate_m(model, f, contour)?;
    error_bound(m1, m2, contour.tau, contour.rho1, contour.rho2, contour.n_nodes - 1)
}

/// Smallest node count `N+1 ≤ 4096` whose estimated bound is below `tol`,
/// with that bound. Returns 4096 and its bound if none qualifies.
pub fn select_nodes(model: &SpectralModel, f: &TestFunction, contour: &ContourConfig, tol: f64) -> Result<(usize, f64)> {
    let mut c = *contour;
    let mut lo = 1usize;
    let mut hi = 8usize;
    let mut hi_bound;
    loop {
        c.n_nodes = hi;
        hi_bound = bound_for(model, f, &c)?;
        if hi_bound < tol || hi == MAX_NODES {
            break;
        }
        lo = hi;
        hi = (hi * 2).min(MAX_NODES);
    }
    if hi_bound >= tol {
        return Ok((hi, hi_bound));
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        c.n_nodes = mid;
        let b = bound_for(model, f, &c)?;
        if b < tol {
            hi = mid;
            hi_bound = b;
        } else {
            lo = mid;
        }
    }
    Ok((hi, hi_bound))
}

/// `(1/(N+1)) Σ_k Φ_f(τ⁻¹e^{−iφ_k})·C(−iτe^{iφ_k})`, summed in ascending `k`.
pub(crate) fn fast_sum(model: &SpectralModel, f: &TestFunction, tau: f64, n: usize) -> Result<Complex64> {
    let nodes = circle_nodes(Complex64::new(0.0, 0.0), tau, n);
    let terms: Vec<Complex64> = nodes
        .par_iter()
        .map(|&z| Ok(f.phi_eval(z.inv())? * model.correlation_at(Complex64::new(0.0, -1.0) * z)?))
        .collect::<Result<_>>()?;
    let sum: Complex64 = terms.iter().sum();
    Ok(sum / n as f64)
}

/// The collapsed single-contour evaluation with its estimated a-priori bound.
pub fn moment_fast(model: &SpectralModel, f: &TestFunction, contour: &ContourConfig) -> Result<MomentResult> {
    let band = f
        .band_limit()
        .ok_or_else(|| Error::NoValidRoute("fast path needs a band-limited f".into()))?;
    if !(band < model.tau0) {
        return Err(Error::NoValidRoute(format!(
            "fast path needs B < tau0, got B = {band} >= tau0 = {}",
            model.tau0
        )));
    }
    contour.check_annulus(band, model.tau0)?;
    let plan = ExecutionPlan {
        route: Route::FastPath,
        justification: format!("B = {band} < tau0 = {}", model.tau0),
        contour: *contour,
        laguerre_order: 0,
        f_plane: None,
        tol: 0.0,
    };
    run(model, f, plan)
}

pub(crate) fn run(model: &SpectralModel, f: &TestFunction, plan: ExecutionPlan) -> Result<MomentResult> {
    let c = plan.contour;
    let band = f.band_limit().unwrap_or(f64::INFINITY);
    c.check_annulus(band, model.tau0)?;
    let raw = fast_sum(model, f, c.tau, c.n_nodes)?;
    let bound = if c.n_nodes >= 2 { Some(bound_for(model, f, &c)?) } else { None };
    finish(model, f, raw, bound, plan, c.n_nodes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paley_wiener::PaleyWienerFunction;

    #[test]
    fn bound_arithmetic() {
        let b = error_bound(1.0, 1.0, 1.0, 0.5, 2.0, 10).unwrap();
        let expect = 2.0 / 2047.0 + 0.5f64.powi(10) / (1.0 - 0.5f64.powi(11));
        assert!((b - expect).abs() < 1e-16);
        assert!((b - 0.001_954_079_140_205_178).abs() < 1e-17);
    }

    #[test]
    fn bound_decreases() {
        let mut prev = f64::INFINITY;
        for n in 1..200 {
            let b = error_bound(3.0, 2.0, 0.8, 0.7, 1.2, n).unwrap();
            assert!(b < prev);
            prev = b;
        }
        assert!(prev < 1e-14);
    }

    #[test]
    fn bound_rejects_bad_annulus() {
        assert!(matches!(error_bound(1.0, 1.0, 1.0, 1.0, 2.0, 4), Err(Error::InvalidAnnulus(_))));
        assert!(matches!(error_bound(1.0, 1.0, 1.0, 0.5, 1.0, 4), Err(Error::InvalidAnnulus(_))));
        assert!(matches!(error_bound(1.0, 1.0, 1.0, 0.5, 2.0, 0), Err(Error::InvalidAnnulus(_))));
    }

    #[test]
    fn constant_gives_total_mass() {
        // Exact up to the aliasing term of order (tau/tau0)^(N+1).
        let one: TestFunction = PaleyWienerFunction::polynomial(vec![1.0]).into();
        let m = SpectralModel::free_particle(2.0, 1.0).unwrap();
        for n in [56, 64, 65, 128] {
            let c = ContourConfig::new(0.5, n, 0.5, 1.5);
            let r = moment_fast(&m, &one, &c).unwrap();
            assert!((r.real() - m.total_mass).abs() < 1e-15, "{n}: {}", r.real());
        }
    }

    #[test]
    fn complex_exponential_reproduces_correlation() {
        let m = SpectralModel::exponential();
        let f: TestFunction = PaleyWienerFunction::exp(0.5).into();
        let c = ContourConfig::new(0.75, 128, 0.8, 1.2);
        let r = moment_fast(&m, &f, &c).unwrap();
        assert!((r.value - Complex64::new(0.8, 0.0)).norm() < 1e-12, "{}", r.value);
        assert!(!r.real_valued);
    }

    #[test]
    fn rejects_band_at_tau0() {
        let m = SpectralModel::exponential();
        let f: TestFunction = PaleyWienerFunction::exp(1.0).into();
        let c = ContourConfig::new(1.1, 64, 0.95, 1.2);
        assert!(matches!(moment_fast(&m, &f, &c), Err(Error::NoValidRoute(_))));
    }
}
