use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;

/// Equispaced nodes `center + radius·e^{i2πk/n}`, starting at angle 0.
pub fn circle_nodes(center: Complex64, radius: f64, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|k| center + Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64))
        .collect()
}

/// Trapezoidal approximation of `(1/2πi)∮ g(z) dz` on `|z| = tau` with `n`
/// nodes: `(1/n) Σ g(z_k)·z_k`. Summation runs in ascending `k`.
pub fn trapezoid_circle<G>(g: G, tau: f64, n: usize) -> Result<Complex64>
where
    G: FnMut(Complex64) -> Result<Complex64>,
{
    trapezoid_on_circle(g, Complex64::new(0.0, 0.0), tau, n)
}

/// Same as [`trapezoid_circle`] on an arbitrary circle: `(1/n) Σ g(z_k)(z_k − c)`.
pub fn trapezoid_on_circle<G>(mut g: G, center: Complex64, radius: f64, n: usize) -> Result<Complex64>
where
    G: FnMut(Complex64) -> Result<Complex64>,
{
    let mut acc = Complex64::new(0.0, 0.0);
    for z in circle_nodes(center, radius, n) {
        acc += g(z)? * (z - center);
    }
    Ok(acc / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn reciprocal_is_exact_for_any_radius() {
        for &(tau, n) in &[(0.3, 1), (1.0, 5), (7.5, 33)] {
            let v = trapezoid_circle(|z| Ok(z.inv()), tau, n).unwrap();
            assert!((v - c(1.0, 0.0)).norm() < 1e-15, "{tau} {n}: {v}");
        }
    }

    #[test]
    fn inverse_square_vanishes() {
        let v = trapezoid_circle(|z| Ok(z.powi(-2)), 1.0, 8).unwrap();
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn aliasing_when_power_matches_node_count() {
        let v = trapezoid_circle(|z| Ok(z.powi(7) / z), 1.0, 7).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-14, "{v}");
    }

    #[test]
    fn first_node_sits_on_positive_axis() {
        let nodes = circle_nodes(c(0.0, 0.0), 2.0, 4);
        assert!((nodes[0] - c(2.0, 0.0)).norm() < 1e-15);
        assert!((nodes[1] - c(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn errors_propagate() {
        let r = trapezoid_circle(
            |z| {
                if z.im > 0.5 {
                    Err(crate::Error::domain(z, "test"))
                } else {
                    Ok(z)
                }
            },
            1.0,
            4,
        );
        assert!(r.is_err());
    }
}
