use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Newton iteration on the Legendre three-term recurrence, started from the
/// Tricomi approximation of each root.
pub fn gauss_legendre(n: usize) -> GaussLegendre {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    GaussLegendre { nodes, weights }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

pub(crate) fn rule64() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(64))
}

pub(crate) fn rule20() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(20))
}

/// Composite rule: `panels` equal sub-intervals of `[a, b]`, each with `rule`.
pub fn integrate_panels<F>(f: &mut F, a: f64, b: f64, panels: usize, rule: &GaussLegendre) -> Result<Complex64>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let h = (b - a) / panels as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = a + h * p as f64;
        let mid = lo + 0.5 * h;
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            acc += f(mid + 0.5 * h * x)? * w;
        }
    }
    Ok(acc * (0.5 * h))
}

/// Composite 20-point Gauss-Legendre on `[a, b]`, doubling the panel count
/// until two successive values agree to `rel_tol` (relative to the larger of
/// the value and `scale`).
pub fn integrate_until_stable<F>(mut f: F, a: f64, b: f64, start_panels: usize, rel_tol: f64, scale: f64) -> Result<Complex64>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let rule = rule20();
    let mut panels = start_panels.max(1);
    let mut prev = integrate_panels(&mut f, a, b, panels, rule)?;
    loop {
        panels *= 2;
        let cur = integrate_panels(&mut f, a, b, panels, rule)?;
        let diff = (cur - prev).norm();
        if diff <= rel_tol * cur.norm().max(scale) {
            return Ok(cur);
        }
        if panels >= 1 << 14 {
            return Err(Error::ToleranceNotMet {
                achieved: diff,
                requested: rel_tol * cur.norm().max(scale),
            });
        }
        prev = cur;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rules_match_tables() {
        let r = gauss_legendre(2);
        assert!((r.nodes[1] - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-15);
        let r = gauss_legendre(3);
        assert!(r.nodes[1].abs() < 1e-15);
        assert!((r.weights[1] - 8.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn rule64_integrates_polynomials_and_exponentials() {
        let r = rule64();
        let sum: f64 = r.weights.iter().sum();
        assert!((sum - 2.0).abs() < 1e-14);
        let v = integrate_panels(&mut |x| Ok(Complex64::new(x.powi(126), 0.0)), -1.0, 1.0, 1, r).unwrap();
        assert!((v.re - 2.0 / 127.0).abs() < 1e-14);
        let v = integrate_panels(&mut |x| Ok(Complex64::new(x.exp(), 0.0)), 0.0, 1.0, 3, r).unwrap();
        assert!((v.re - (1f64.exp() - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn stable_integration_of_oscillatory_integrand() {
        let v = integrate_until_stable(|x| Ok(Complex64::new(0.0, 40.0 * x).exp()), 0.0, 1.0, 1, 1e-13, 1.0).unwrap();
        let exact = (Complex64::new(0.0, 40.0).exp() - 1.0) / Complex64::new(0.0, 40.0);
        assert!((v - exact).norm() < 1e-13);
    }
}
