//! Numerical kernels: trapezoidal sums on circles, Gauss rules, adaptive
//! real-line integration and the modified Bessel function K₁.

mod adaptive;
mod bessel;
mod circle;
mod laguerre;
mod legendre;

pub use adaptive::{adaptive_interval, adaptive_real_line, Tail};
pub(crate) use adaptive::adaptive_real_line_complex;
pub use bessel::bessel_k1;
pub use circle::{circle_nodes, trapezoid_circle, trapezoid_on_circle};
pub use laguerre::{gauss_laguerre, LaguerreRule, MAX_LAGUERRE_ORDER};
pub use legendre::{gauss_legendre, integrate_panels, integrate_until_stable, GaussLegendre};
pub(crate) use legendre::rule64 as legendre_rule64;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Circle radius, node count and annulus radii for a contour sum about the
/// origin. `rho1` and `rho2` are relative to `tau`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourConfig {
    pub tau: f64,
    pub n_nodes: usize,
    pub rho1: f64,
    pub rho2: f64,
}

impl ContourConfig {
    pub fn new(tau: f64, n_nodes: usize, rho1: f64, rho2: f64) -> Self {
        Self {
            tau,
            n_nodes,
            rho1,
            rho2,
        }
    }

    pub fn with_nodes(mut self, n_nodes: usize) -> Self {
        self.n_nodes = n_nodes;
        self
    }

    /// Checks `band < rho1·tau < tau < rho2·tau < tau0`.
    pub fn check_annulus(&self, band: f64, tau0: f64) -> Result<()> {
        if !(self.tau > 0.0) || self.n_nodes == 0 {
            return Err(Error::InvalidAnnulus(format!(
                "tau = {} and n_nodes = {} must be positive",
                self.tau, self.n_nodes
            )));
        }
        if !(self.rho1 > 0.0 && self.rho1 < 1.0 && self.rho2 > 1.0) {
            return Err(Error::InvalidAnnulus(format!(
                "need 0 < rho1 < 1 < rho2, got rho1 = {}, rho2 = {}",
                self.rho1, self.rho2
            )));
        }
        if !(band < self.rho1 * self.tau) {
            return Err(Error::InvalidAnnulus(format!(
                "band limit {band} must be below rho1*tau = {}",
                self.rho1 * self.tau
            )));
        }
        if !(self.rho2 * self.tau < tau0) {
            return Err(Error::InvalidAnnulus(format!(
                "rho2*tau = {} must be below tau0 = {tau0}",
                self.rho2 * self.tau
            )));
        }
        Ok(())
    }
}
