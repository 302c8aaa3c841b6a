//! Spectral measures `dP(ω)` together with their correlation functions
//! `C(t) = ∫ e^{iωt} dP(ω)` evaluated at complex times.
//!
//! Every built-in model is symmetric, so `C` is real and even on the real
//! axis. Models carry the half-width `tau0` of the strip in which `C` is
//! analytic and a coarser analyticity class that decides which routes the
//! moment engine may take.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paley_wiener::TestFunction;
use crate::quadrature::{adaptive_real_line_complex as adaptive_line, bessel_k1, Tail};

/// Region in which a correlation function extends analytically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AnalyticityClass {
    EntirePlane,
    /// Analytic except on `{iy : |y| ≥ tau0}`.
    PlaneMinusBranchCuts,
    /// Analytic only in `|Im z| < tau0`.
    StripOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Support {
    Compact(f64),
    RealLine,
}

/// Closed-form fixture families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum ModelKind {
    /// Density `e^{-|ω|}/2`, correlation `1/(1+t²)`.
    Exponential,
    /// Flux-flux spectrum of the free particle.
    FreeParticle { beta: f64, hbar: f64 },
    /// Uniform probability on `[-r, r]`.
    Uniform { r: f64 },
    /// Standard normal density.
    Gaussian,
    /// Laplace density `(a/2)e^{-a|ω|}` whose correlation `a²/(a²+t²)` is
    /// only used inside the strip `|Im t| < a`.
    Strip { tau0: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralModel {
    pub name: String,
    pub total_mass: f64,
    pub tau0: f64,
    pub analyticity_class: AnalyticityClass,
    pub support: Support,
    pub kind: ModelKind,
}

impl SpectralModel {
    pub fn exponential() -> Self {
        Self {
            name: "exponential".into(),
            total_mass: 1.0,
            tau0: 1.0,
            analyticity_class: AnalyticityClass::PlaneMinusBranchCuts,
            support: Support::RealLine,
            kind: ModelKind::Exponential,
        }
    }

    /// Units with `h = 2πħ`. The measure has total mass `2/(β²hħ)`.
    pub fn free_particle(beta: f64, hbar: f64) -> Result<Self> {
        if !(beta > 0.0 && hbar > 0.0) {
            return Err(Error::Parse(format!(
                "free_particle needs beta > 0 and hbar > 0, got beta = {beta}, hbar = {hbar}"
            )));
        }
        let h = 2.0 * PI * hbar;
        let tau0 = 0.5 * beta * hbar;
        Ok(Self {
            name: "free_particle".into(),
            total_mass: 1.0 / (beta * h * tau0),
            tau0,
            analyticity_class: AnalyticityClass::PlaneMinusBranchCuts,
            support: Support::RealLine,
            kind: ModelKind::FreeParticle { beta, hbar },
        })
    }

    pub fn uniform(r: f64) -> Result<Self> {
        if !(r > 0.0) {
            return Err(Error::Parse(format!("uniform needs r > 0, got {r}")));
        }
        Ok(Self {
            name: "uniform".into(),
            total_mass: 1.0,
            tau0: f64::INFINITY,
            analyticity_class: AnalyticityClass::EntirePlane,
            support: Support::Compact(r),
            kind: ModelKind::Uniform { r },
        })
    }

    pub fn gaussian() -> Self {
        Self {
            name: "gaussian".into(),
            total_mass: 1.0,
            tau0: f64::INFINITY,
            analyticity_class: AnalyticityClass::EntirePlane,
            support: Support::RealLine,
            kind: ModelKind::Gaussian,
        }
    }

    pub fn strip(tau0: f64) -> Result<Self> {
        if !(tau0 > 0.0) || !tau0.is_finite() {
            return Err(Error::Parse(format!("strip needs finite tau0 > 0, got {tau0}")));
        }
        Ok(Self {
            name: "strip".into(),
            total_mass: 1.0,
            tau0,
            analyticity_class: AnalyticityClass::StripOnly,
            support: Support::RealLine,
            kind: ModelKind::Strip { tau0 },
        })
    }

    pub fn from_kind(kind: ModelKind) -> Result<Self> {
        match kind {
            ModelKind::Exponential => Ok(Self::exponential()),
            ModelKind::FreeParticle { beta, hbar } => Self::free_particle(beta, hbar),
            ModelKind::Uniform { r } => Self::uniform(r),
            ModelKind::Gaussian => Ok(Self::gaussian()),
            ModelKind::Strip { tau0 } => Self::strip(tau0),
        }
    }

    /// All built-in measures are symmetric about the origin.
    pub fn is_symmetric(&self) -> bool {
        true
    }

    pub fn has_density(&self) -> bool {
        true
    }

    fn domain_description(&self) -> String {
        match self.analyticity_class {
            AnalyticityClass::EntirePlane => "entire plane".into(),
            AnalyticityClass::PlaneMinusBranchCuts => format!(
                "plane minus the cuts {{iy : |y| >= {}}}",
                self.tau0
            ),
            AnalyticityClass::StripOnly => format!("strip |Im z| < {}", self.tau0),
        }
    }

    pub fn in_domain(&self, z: Complex64) -> bool {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return false;
        }
        match self.analyticity_class {
            AnalyticityClass::EntirePlane => true,
            AnalyticityClass::PlaneMinusBranchCuts => z.re != 0.0 || z.im.abs() < self.tau0,
            AnalyticityClass::StripOnly => z.im.abs() < self.tau0,
        }
    }

    /// `C(z)` at a complex time inside the declared analyticity domain.
    pub fn correlation_at(&self, z: Complex64) -> Result<Complex64> {
        if !self.in_domain(z) {
            return Err(Error::domain(z, self.domain_description()));
        }
        let one = Complex64::new(1.0, 0.0);
        Ok(match self.kind {
            ModelKind::Exponential => (one + z * z).inv(),
            ModelKind::Strip { tau0 } => {
                let a2 = tau0 * tau0;
                (z * z + a2).inv() * a2
            }
            ModelKind::FreeParticle { .. } => {
                // Principal branch of w^{3/2} has its cut where z² + tau0² ≤ 0,
                // which is exactly the excluded set on the imaginary axis.
                let a2 = self.tau0 * self.tau0;
                let w = z * z + a2;
                (w * w.sqrt()).inv() * (self.total_mass * a2 * self.tau0)
            }
            ModelKind::Uniform { r } => sinc_complex(z * r),
            ModelKind::Gaussian => (-0.5 * z * z).exp(),
        })
    }

    /// Spectral density at a real frequency.
    pub fn density_at(&self, omega: f64) -> Result<f64> {
        Ok(match self.kind {
            ModelKind::Exponential => 0.5 * (-omega.abs()).exp(),
            ModelKind::Strip { tau0 } => 0.5 * tau0 * (-tau0 * omega.abs()).exp(),
            ModelKind::FreeParticle { beta, hbar } => {
                let h = 2.0 * PI * hbar;
                let x = 0.5 * omega.abs() * hbar * beta;
                // (1/βh)·(|ω|ħβ/2π)·K₁(|ω|ħβ/2) = (x/π)·K₁(x)/(βh)
                let x_k1 = if x == 0.0 { 1.0 } else { x * bessel_k1(x)? };
                x_k1 / (PI * beta * h)
            }
            ModelKind::Uniform { r } => {
                if omega.abs() <= r {
                    0.5 / r
                } else {
                    0.0
                }
            }
            ModelKind::Gaussian => (-0.5 * omega * omega).exp() / (2.0 * PI).sqrt(),
        })
    }

    /// Decay envelope of the density, used to truncate real-line integrals.
    /// `degree` is the polynomial growth of whatever multiplies the density.
    pub fn tail(&self, degree: f64) -> Tail {
        match self.kind {
            ModelKind::Exponential => Tail::Exponential {
                rate: 1.0,
                scale: 0.5,
                degree,
            },
            ModelKind::Strip { tau0 } => Tail::Exponential {
                rate: tau0,
                scale: 0.5 * tau0,
                degree,
            },
            ModelKind::FreeParticle { beta, hbar } => {
                // x K₁(x) ≤ 1.3·(1+x)^{1/2} e^{-x}
                let h = 2.0 * PI * hbar;
                let tau0 = self.tau0;
                Tail::Exponential {
                    rate: tau0,
                    scale: 1.3 * (1.0 + tau0).sqrt() / (PI * beta * h),
                    degree: degree + 0.5,
                }
            }
            ModelKind::Uniform { r } => Tail::Compact { lo: -r, hi: r },
            ModelKind::Gaussian => Tail::Gaussian {
                variance: 1.0,
                scale: (2.0 * PI).sqrt().recip(),
                degree,
            },
        }
    }
}

/// `sin(w)/w`, entire.
pub(crate) fn sinc_complex(w: Complex64) -> Complex64 {
    if w.norm() < 1e-3 {
        let w2 = w * w;
        Complex64::new(1.0, 0.0) - w2 / 6.0 + w2 * w2 / 120.0 - w2 * w2 * w2 / 5040.0
    } else {
        w.sin() / w
    }
}

impl fmt::Display for SpectralModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ModelKind::Exponential => write!(f, "exponential"),
            ModelKind::FreeParticle { beta, hbar } => {
                write!(f, "free_particle:beta={beta},hbar={hbar}")
            }
            ModelKind::Uniform { r } => write!(f, "uniform:r={r}"),
            ModelKind::Gaussian => write!(f, "gaussian"),
            ModelKind::Strip { tau0 } => write!(f, "strip:tau0={tau0}"),
        }
    }
}

/// Splits `name:key=val,key=val` into the name and its parameters.
pub(crate) fn parse_descriptor(s: &str) -> Result<(String, Vec<(String, f64)>)> {
    let (name, rest) = match s.split_once(':') {
        Some((n, r)) => (n.trim(), r),
        None => (s.trim(), ""),
    };
    if name.is_empty() {
        return Err(Error::Parse(format!("empty descriptor `{s}`")));
    }
    let mut params = Vec::new();
    for item in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got `{item}`")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("`{v}` is not a number (key `{k}`)")))?;
        params.push((k.trim().to_string(), v));
    }
    Ok((name.to_ascii_lowercase(), params))
}

pub(crate) fn take_param(params: &mut Vec<(String, f64)>, keys: &[&str]) -> Option<f64> {
    let pos = params.iter().position(|(k, _)| keys.contains(&k.as_str()))?;
    Some(params.remove(pos).1)
}

pub(crate) fn reject_leftovers(name: &str, params: &[(String, f64)]) -> Result<()> {
    match params.first() {
        None => Ok(()),
        Some((k, _)) => Err(Error::Parse(format!("unknown parameter `{k}` for `{name}`"))),
    }
}

impl FromStr for SpectralModel {
    type Err = Error;

    /// `exponential`, `free_particle:beta=2,hbar=1`, `uniform:r=1`,
    /// `gaussian`, `strip:tau0=1`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, mut params) = parse_descriptor(s)?;
        let model = match name.as_str() {
            "exponential" | "exp" => Self::exponential(),
            "free_particle" | "free-particle" | "freeparticle" => {
                let beta = take_param(&mut params, &["beta", "b"]).unwrap_or(2.0);
                let hbar = take_param(&mut params, &["hbar", "h"]).unwrap_or(1.0);
                Self::free_particle(beta, hbar)?
            }
            "uniform" => Self::uniform(take_param(&mut params, &["r"]).unwrap_or(1.0))?,
            "gaussian" | "normal" => Self::gaussian(),
            "strip" => Self::strip(take_param(&mut params, &["tau0"]).unwrap_or(1.0))?,
            other => return Err(Error::Parse(format!("unknown model `{other}`"))),
        };
        reject_leftovers(&name, &params)?;
        Ok(model)
    }
}

/// `∫ f(ω)·density(ω) dω` by adaptive quadrature with deterministic tail
/// truncation. Independent of every contour-based path.
pub fn oracle_generalized_moment(model: &SpectralModel, f: &TestFunction, tol: f64) -> Result<Complex64> {
    if !model.has_density() {
        return Err(Error::NoDensity(model.name.clone()));
    }
    let (c, degree) = f.real_axis_growth();
    let mut tail = model.tail(degree);
    match &mut tail {
        Tail::Exponential { scale, .. } | Tail::Gaussian { scale, .. } => *scale *= c,
        Tail::Compact { .. } => {}
    }
    adaptive_line(
        |w| Ok(f.eval(Complex64::new(w, 0.0)) * model.density_at(w)?),
        tail,
        tol,
    )
}
