//! Entire band-limited test functions `f(z) = ∫ f̂(κ) e^{iκz} dκ` with
//! compactly supported `f̂`, their shifted/rescaled versions, and the
//! Laplace-type transform `Φ_f(z) = ∫₀^∞ e^{-s} f(zs) ds`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{parse_descriptor, reject_leftovers, take_param};
use crate::quadrature::{integrate_panels, integrate_until_stable, legendre_rule64};

const SINC_SERIES_RADIUS: f64 = 1e-2;
const BUMP_STABILITY: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The five supported families, named by their transform `f̂`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum PwKind {
    /// `f̂ = δ(κ − t)`, `f(z) = e^{izt}`.
    ComplexExponential(f64),
    /// `f̂ = 1/2` on `[-B, B]`, `f(z) = sin(Bz)/z`.
    Sinc(f64),
    /// `f(z) = z^k`.
    Monomial(u32),
    /// `f(z) = Σ a_k z^k`, coefficients in ascending order.
    Polynomial(Vec<f64>),
    /// `f̂(κ) = exp(-κ²/(B² − κ²))` on `|κ| < B`.
    BumpTransform(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaleyWienerFunction {
    pub kind: PwKind,
}

/// `g(z) = base((z − center)/scale)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftScale {
    pub base: PaleyWienerFunction,
    pub center: f64,
    pub scale: f64,
}

/// Entire functions of subexponential growth that are not band-limited.
/// Only admissible against compactly supported measures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum EntireFunction {
    /// `exp(-((z − center)/scale)²/2)`.
    Gaussian { center: f64, scale: f64 },
}

/// Anything the moment engine can integrate against `dP`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TestFunction {
    PaleyWiener(PaleyWienerFunction),
    Shifted(ShiftScale),
    Entire(EntireFunction),
}

fn bump_density(b: f64, kappa: f64) -> f64 {
    let d = b * b - kappa * kappa;
    if d <= 0.0 {
        0.0
    } else {
        (-kappa * kappa / d).exp()
    }
}

/// `∫_{-B}^{B} bump(κ)·h(κ) dκ` by the trapezoidal rule with node doubling.
/// The integrand and all its derivatives vanish at `±B`, so only interior
/// nodes contribute and convergence is superalgebraic.
fn bump_integral<H>(b: f64, mut h: H, abs_scale: f64) -> Result<Complex64>
where
    H: FnMut(f64) -> Result<Complex64>,
{
    let mut intervals = 32usize;
    let mut step = 2.0 * b / intervals as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 1..intervals {
        let k = -b + step * j as f64;
        sum += h(k)? * bump_density(b, k);
    }
    let mut prev = sum * step;
    loop {
        // Only the new midpoints need evaluating.
        for j in 0..intervals {
            let k = -b + step * (j as f64 + 0.5);
            sum += h(k)? * bump_density(b, k);
        }
        intervals *= 2;
        step *= 0.5;
        let cur = sum * step;
        let diff = (cur - prev).norm();
        if diff <= BUMP_STABILITY * cur.norm().max(abs_scale) {
            return Ok(cur);
        }
        if intervals >= 1 << 20 {
            return Err(Error::ToleranceNotMet {
                achieved: diff,
                requested: BUMP_STABILITY * cur.norm().max(abs_scale),
            });
        }
        prev = cur;
    }
}

/// `∫_{-1}^{1} exp(-κ²/(1−κ²)) dκ`; the bump with band `B` has total
/// integral `B` times this.
pub fn bump_unit_mass() -> f64 {
    static MASS: std::sync::OnceLock<f64> = std::sync::OnceLock::new();
    *MASS.get_or_init(|| {
        bump_integral(1.0, |_| Ok(c(1.0, 0.0)), 0.0)
            .expect("bump mass converges")
            .re
    })
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(c(0.0, 0.0), |acc, &a| acc * z + a)
}

impl PaleyWienerFunction {
    pub fn new(kind: PwKind) -> Self {
        Self { kind }
    }

    pub fn sinc(band: f64) -> Self {
        Self::new(PwKind::Sinc(band))
    }

    pub fn exp(t: f64) -> Self {
        Self::new(PwKind::ComplexExponential(t))
    }

    pub fn bump(band: f64) -> Self {
        Self::new(PwKind::BumpTransform(band))
    }

    pub fn monomial(k: u32) -> Self {
        Self::new(PwKind::Monomial(k))
    }

    pub fn polynomial(coeffs: Vec<f64>) -> Self {
        Self::new(PwKind::Polynomial(coeffs))
    }

    /// Radius of the support of `f̂`.
    pub fn band_limit(&self) -> f64 {
        match self.kind {
            PwKind::ComplexExponential(t) => t.abs(),
            PwKind::Sinc(b) | PwKind::BumpTransform(b) => b.abs(),
            PwKind::Monomial(_) | PwKind::Polynomial(_) => 0.0,
        }
    }

    /// Polynomial coefficients, if `f` is a polynomial.
    pub fn polynomial_coefficients(&self) -> Option<Vec<f64>> {
        match &self.kind {
            PwKind::Monomial(k) => {
                let mut a = vec![0.0; *k as usize + 1];
                a[*k as usize] = 1.0;
                Some(a)
            }
            PwKind::Polynomial(a) => Some(a.clone()),
            _ => None,
        }
    }

    /// Constants `(C, N)` with `|f(z)| ≤ C(1+|z|)^N e^{B|Im z|}`.
    pub fn growth_constants(&self) -> (f64, f64) {
        match &self.kind {
            PwKind::ComplexExponential(_) => (1.0, 0.0),
            // ‖f̂‖₁ bounds |f| by e^{B|Im z|}.
            PwKind::Sinc(b) => (b.abs(), 0.0),
            PwKind::BumpTransform(b) => (b.abs() * bump_unit_mass(), 0.0),
            PwKind::Monomial(k) => (1.0, f64::from(*k)),
            PwKind::Polynomial(a) => (
                a.iter().map(|x| x.abs()).sum::<f64>().max(f64::MIN_POSITIVE),
                a.len().saturating_sub(1) as f64,
            ),
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match &self.kind {
            PwKind::ComplexExponential(t) => (c(0.0, *t) * z).exp(),
            PwKind::Sinc(b) => {
                let w = z * *b;
                if w.norm() < SINC_SERIES_RADIUS {
                    let w2 = w * w;
                    // B·Σ (-1)^j w^{2j}/(2j+1)!, six terms
                    let mut term = c(1.0, 0.0);
                    let mut sum = term;
                    for j in 1..6u32 {
                        term = -term * w2 / f64::from((2 * j) * (2 * j + 1));
                        sum += term;
                    }
                    sum * *b
                } else {
                    (w).sin() / z
                }
            }
            PwKind::Monomial(k) => z.powu(*k),
            PwKind::Polynomial(a) => horner(a, z),
            PwKind::BumpTransform(b) => {
                let scale = b * bump_unit_mass() * (b * z.im.abs()).exp();
                bump_integral(*b, |k| Ok((c(0.0, k) * z).exp()), scale)
                    .expect("bump transform converges for finite arguments")
            }
        }
    }

    /// `∫ f̂(κ) h(κ) dκ` for the kinds whose transform is a measure
    /// (point mass or density). Polynomials return `None`.
    pub fn pair_with_transform<H>(&self, mut h: H) -> Option<Result<Complex64>>
    where
        H: FnMut(f64) -> Result<Complex64>,
    {
        match self.kind {
            PwKind::ComplexExponential(t) => Some(h(t)),
            PwKind::Sinc(b) => {
                let b = b.abs();
                Some(integrate_until_stable(&mut h, -b, b, 2, 1e-14, 1e-300).map(|v| 0.5 * v))
            }
            PwKind::BumpTransform(b) => {
                let b = b.abs();
                Some(bump_integral(b, h, 0.0))
            }
            PwKind::Monomial(_) | PwKind::Polynomial(_) => None,
        }
    }

    /// `Φ_f(z) = ∫₀^∞ e^{-s} f(zs) ds`, defined for `|Im z| < 1/B`.
    pub fn phi_eval(&self, z: Complex64) -> Result<Complex64> {
        check_phi_strip(self.band_limit(), z)?;
        let one = c(1.0, 0.0);
        match &self.kind {
            PwKind::ComplexExponential(t) => Ok((one - c(0.0, *t) * z).inv()),
            PwKind::Monomial(k) => Ok(z.powu(*k) * factorial(*k)),
            PwKind::Polynomial(a) => {
                let damped: Vec<f64> = a
                    .iter()
                    .enumerate()
                    .map(|(k, &ak)| ak * factorial(k as u32))
                    .collect();
                Ok(horner(&damped, z))
            }
            PwKind::Sinc(b) => {
                let b = b.abs();
                let mut h = |k: f64| Ok((one - c(0.0, k) * z).inv());
                integrate_panels(&mut h, -b, b, 1, legendre_rule64()).map(|v| 0.5 * v)
            }
            PwKind::BumpTransform(b) => {
                bump_integral(b.abs(), |k| Ok((one - c(0.0, k) * z).inv()), 0.0)
            }
        }
    }
}

fn check_phi_strip(band: f64, z: Complex64) -> Result<()> {
    if band > 0.0 && !(z.im.abs() * band < 1.0) {
        return Err(Error::domain(
            z,
            format!("strip |Im z| < 1/B = {} of Phi_f", 1.0 / band),
        ));
    }
    Ok(())
}

/// `f((z − ω₀)/σ)`, band limit `B/σ`.
pub fn shift_scale(f: &PaleyWienerFunction, center: f64, scale: f64) -> Result<ShiftScale> {
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(Error::InvalidScale(scale));
    }
    Ok(ShiftScale {
        base: f.clone(),
        center,
        scale,
    })
}

impl ShiftScale {
    fn local(&self, z: Complex64) -> Complex64 {
        (z - self.center) / self.scale
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.base.eval(self.local(z))
    }

    pub fn band_limit(&self) -> f64 {
        self.base.band_limit() / self.scale
    }

    /// The shifted polynomial re-expanded about the origin.
    pub fn polynomial_coefficients(&self) -> Option<Vec<f64>> {
        let a = self.base.polynomial_coefficients()?;
        let n = a.len();
        let mut out = vec![0.0; n];
        // a_k ((z − ω₀)/σ)^k = a_k σ^{-k} Σ_j C(k,j) z^j (−ω₀)^{k−j}
        for (k, &ak) in a.iter().enumerate() {
            let lead = ak / self.scale.powi(k as i32);
            for (j, slot) in out.iter_mut().enumerate().take(k + 1) {
                *slot += lead * binomial(k, j) * (-self.center).powi((k - j) as i32);
            }
        }
        Some(out)
    }

    pub fn growth_constants(&self) -> (f64, f64) {
        let (cb, n) = self.base.growth_constants();
        // 1 + |z − ω₀|/σ ≤ (1 + |ω₀|/σ)·max(1, 1/σ)·(1 + |z|)
        let factor = (1.0 + self.center.abs() / self.scale) * (1.0f64).max(1.0 / self.scale);
        (cb * factor.powf(n), n)
    }

    /// The transform of `g` is `ĝ(κ) = σ f̂(σκ) e^{-iκω₀}`; in the base
    /// variable `u = σκ` this pairs `f̂(u)` with `e^{-iuω₀/σ} h(u/σ)`.
    pub fn pair_with_transform<H>(&self, mut h: H) -> Option<Result<Complex64>>
    where
        H: FnMut(f64) -> Result<Complex64>,
    {
        let (w0, s) = (self.center, self.scale);
        self.base
            .pair_with_transform(|u| Ok(c(0.0, -u * w0 / s).exp() * h(u / s)?))
    }

    pub fn phi_eval(&self, z: Complex64) -> Result<Complex64> {
        check_phi_strip(self.band_limit(), z)?;
        if let Some(coeffs) = self.polynomial_coefficients() {
            return PaleyWienerFunction::polynomial(coeffs).phi_eval(z);
        }
        let one = c(1.0, 0.0);
        self.pair_with_transform(|k| Ok((one - c(0.0, k) * z).inv()))
            .expect("non-polynomial kinds have a measure transform")
    }
}

impl EntireFunction {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match *self {
            EntireFunction::Gaussian { center, scale } => {
                let u = (z - center) / scale;
                (-0.5 * u * u).exp()
            }
        }
    }
}

impl From<PaleyWienerFunction> for TestFunction {
    fn from(f: PaleyWienerFunction) -> Self {
        TestFunction::PaleyWiener(f)
    }
}

impl From<ShiftScale> for TestFunction {
    fn from(f: ShiftScale) -> Self {
        TestFunction::Shifted(f)
    }
}

impl TestFunction {
    /// `exp(-z²/2)`.
    pub fn gaussian() -> Self {
        TestFunction::Entire(EntireFunction::Gaussian {
            center: 0.0,
            scale: 1.0,
        })
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            TestFunction::PaleyWiener(f) => f.eval(z),
            TestFunction::Shifted(g) => g.eval(z),
            TestFunction::Entire(e) => e.eval(z),
        }
    }

    /// `None` for functions that are not band-limited.
    pub fn band_limit(&self) -> Option<f64> {
        match self {
            TestFunction::PaleyWiener(f) => Some(f.band_limit()),
            TestFunction::Shifted(g) => Some(g.band_limit()),
            TestFunction::Entire(_) => None,
        }
    }

    pub fn polynomial_coefficients(&self) -> Option<Vec<f64>> {
        match self {
            TestFunction::PaleyWiener(f) => f.polynomial_coefficients(),
            TestFunction::Shifted(g) => g.polynomial_coefficients(),
            TestFunction::Entire(_) => None,
        }
    }

    pub fn phi_eval(&self, z: Complex64) -> Result<Complex64> {
        match self {
            TestFunction::PaleyWiener(f) => f.phi_eval(z),
            TestFunction::Shifted(g) => g.phi_eval(z),
            TestFunction::Entire(_) => Err(Error::NoValidRoute(
                "Phi_f is only provided for band-limited functions".into(),
            )),
        }
    }

    pub fn pair_with_transform<H>(&self, h: H) -> Option<Result<Complex64>>
    where
        H: FnMut(f64) -> Result<Complex64>,
    {
        match self {
            TestFunction::PaleyWiener(f) => f.pair_with_transform(h),
            TestFunction::Shifted(g) => g.pair_with_transform(h),
            TestFunction::Entire(_) => None,
        }
    }

    /// `(C, N)` with `|f(x)| ≤ C(1+|x|)^N` on the real axis.
    pub fn real_axis_growth(&self) -> (f64, f64) {
        match self {
            TestFunction::PaleyWiener(f) => f.growth_constants(),
            TestFunction::Shifted(g) => g.growth_constants(),
            TestFunction::Entire(_) => (1.0, 0.0),
        }
    }

    /// Whether `f` maps the real axis into the reals.
    pub fn is_real_on_real_axis(&self) -> bool {
        let base_real = |k: &PwKind| !matches!(k, PwKind::ComplexExponential(t) if *t != 0.0);
        match self {
            TestFunction::PaleyWiener(f) => base_real(&f.kind),
            TestFunction::Shifted(g) => base_real(&g.base.kind),
            TestFunction::Entire(_) => true,
        }
    }

    /// Shift and rescale: `f((z − ω₀)/σ)`.
    pub fn shift_scale(&self, center: f64, scale: f64) -> Result<TestFunction> {
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::InvalidScale(scale));
        }
        Ok(match self {
            TestFunction::PaleyWiener(f) => TestFunction::Shifted(shift_scale(f, center, scale)?),
            TestFunction::Shifted(g) => TestFunction::Shifted(ShiftScale {
                base: g.base.clone(),
                center: center + scale * g.center,
                scale: scale * g.scale,
            }),
            TestFunction::Entire(EntireFunction::Gaussian { center: c0, scale: s0 }) => {
                TestFunction::Entire(EntireFunction::Gaussian {
                    center: center + scale * c0,
                    scale: scale * s0,
                })
            }
        })
    }
}

impl fmt::Display for PaleyWienerFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PwKind::ComplexExponential(t) => write!(f, "exp:t={t}"),
            PwKind::Sinc(b) => write!(f, "sinc:band={b}"),
            PwKind::Monomial(k) => write!(f, "monomial:k={k}"),
            PwKind::BumpTransform(b) => write!(f, "bump:band={b}"),
            PwKind::Polynomial(a) => {
                write!(f, "poly:")?;
                let terms: Vec<String> = a
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0.0)
                    .map(|(k, v)| format!("a{k}={v}"))
                    .collect();
                if terms.is_empty() {
                    write!(f, "a0=0")
                } else {
                    write!(f, "{}", terms.join(","))
                }
            }
        }
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestFunction::PaleyWiener(p) => write!(f, "{p}"),
            TestFunction::Shifted(g) => {
                write!(f, "{},omega0={},sigma={}", g.base, g.center, g.scale)
            }
            TestFunction::Entire(EntireFunction::Gaussian { center, scale }) => {
                if *center == 0.0 && *scale == 1.0 {
                    write!(f, "gaussian")
                } else {
                    write!(f, "gaussian:omega0={center},sigma={scale}")
                }
            }
        }
    }
}

impl FromStr for TestFunction {
    type Err = Error;

    /// `exp:t=..`, `sinc:band=..`, `bump:band=..`, `monomial:k=..`,
    /// `poly:a0=..,a2=..`, `gaussian`; any of them may add
    /// `omega0=..,sigma=..` to shift and rescale.
    fn from_str(s: &str) -> Result<Self> {
        let (name, mut params) = parse_descriptor(s)?;
        let center = take_param(&mut params, &["omega0", "center"]);
        let scale = take_param(&mut params, &["sigma", "scale"]);
        let missing = |what: &str| Error::Parse(format!("`{name}` needs `{what}`"));
        let base = match name.as_str() {
            "exp" | "complex_exponential" | "exponential" => {
                let t = take_param(&mut params, &["t", "time"]).ok_or_else(|| missing("t"))?;
                TestFunction::from(PaleyWienerFunction::exp(t))
            }
            "sinc" => {
                let b = take_param(&mut params, &["band", "b"]).ok_or_else(|| missing("band"))?;
                TestFunction::from(PaleyWienerFunction::sinc(b))
            }
            "bump" => {
                let b = take_param(&mut params, &["band", "b"]).ok_or_else(|| missing("band"))?;
                TestFunction::from(PaleyWienerFunction::bump(b))
            }
            "monomial" => {
                let k = take_param(&mut params, &["k"]).ok_or_else(|| missing("k"))?;
                if k < 0.0 || k.fract() != 0.0 || k > 64.0 {
                    return Err(Error::Parse(format!("monomial degree must be an integer in 0..=64, got {k}")));
                }
                TestFunction::from(PaleyWienerFunction::monomial(k as u32))
            }
            "poly" | "polynomial" => {
                let mut coeffs: Vec<f64> = Vec::new();
                let mut rest = Vec::new();
                for (k, v) in params.drain(..) {
                    match k.strip_prefix('a').and_then(|d| d.parse::<usize>().ok()) {
                        Some(idx) if idx <= 64 => {
                            if coeffs.len() <= idx {
                                coeffs.resize(idx + 1, 0.0);
                            }
                            coeffs[idx] = v;
                        }
                        _ => rest.push((k, v)),
                    }
                }
                params = rest;
                if coeffs.is_empty() {
                    return Err(missing("a0=..,a1=.."));
                }
                TestFunction::from(PaleyWienerFunction::polynomial(coeffs))
            }
            "gaussian" | "gauss" => TestFunction::gaussian(),
            other => return Err(Error::Parse(format!("unknown function `{other}`"))),
        };
        reject_leftovers(&name, &params)?;
        if let Some(b) = base.band_limit() {
            if !b.is_finite() {
                return Err(Error::Parse(format!("band limit must be finite in `{s}`")));
            }
        }
        if center.is_some() || scale.is_some() {
            base.shift_scale(center.unwrap_or(0.0), scale.unwrap_or(1.0))
        } else {
            Ok(base)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinc_at_origin_equals_band() {
        let f = PaleyWienerFunction::sinc(1.0);
        assert!((f.eval(c(0.0, 0.0)) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((f.eval(c(1e-9, 0.0)) - c(1.0, 0.0)).norm() < 1e-15);
        let g = PaleyWienerFunction::sinc(0.3);
        assert!((g.eval(c(0.0, 0.0)).re - 0.3).abs() < 1e-16);
    }

    #[test]
    fn sinc_series_meets_direct_formula_at_switch() {
        let f = PaleyWienerFunction::sinc(1.0);
        for z in [c(0.0099, 0.0), c(0.007, 0.007), c(0.0, 0.00999)] {
            let series = f.eval(z);
            let direct = z.sin() / z;
            assert!((series - direct).norm() < 1e-15, "{z}");
        }
    }

    #[test]
    fn complex_exponential_off_axis() {
        let f = PaleyWienerFunction::exp(1.0);
        let v = f.eval(c(0.0, 1.0));
        assert!((v.re - (-1f64).exp()).abs() < 1e-15 && v.im.abs() < 1e-15);
    }

    #[test]
    fn bump_at_origin_is_total_mass() {
        let f = PaleyWienerFunction::bump(1.0);
        let v = f.eval(c(0.0, 0.0));
        assert!((v.re - 1.206_900_322_437_876_2).abs() < 1e-12, "{v}");
    }

    #[test]
    fn band_limits() {
        assert_eq!(PaleyWienerFunction::exp(0.5).band_limit(), 0.5);
        assert_eq!(PaleyWienerFunction::exp(-0.5).band_limit(), 0.5);
        assert_eq!(PaleyWienerFunction::polynomial(vec![1.0, 2.0, 3.0]).band_limit(), 0.0);
        let g = shift_scale(&PaleyWienerFunction::sinc(1.0), 3.0, 2.0).unwrap();
        assert_eq!(g.band_limit(), 0.5);
        let g = shift_scale(&PaleyWienerFunction::sinc(1.0), 0.0, 0.5).unwrap();
        assert_eq!(g.band_limit(), 2.0);
    }

    #[test]
    fn shift_scale_identity_and_pure_shift() {
        let f = PaleyWienerFunction::sinc(1.0);
        let id = shift_scale(&f, 0.0, 1.0).unwrap();
        for j in 0..20 {
            let z = c(-5.0 + 0.53 * j as f64, 0.1 * j as f64 - 1.0);
            assert_eq!(id.eval(z), f.eval(z));
        }
        let g = shift_scale(&f, 2.0, 1.0).unwrap();
        assert_eq!(g.eval(c(2.0, 0.0)), c(1.0, 0.0));
        assert_eq!(shift_scale(&f, 0.0, 0.0), Err(Error::InvalidScale(0.0)));
        assert!(matches!(shift_scale(&f, 0.0, -1.0), Err(Error::InvalidScale(_))));
    }

    #[test]
    fn phi_closed_forms() {
        let one = PaleyWienerFunction::polynomial(vec![1.0]);
        assert_eq!(one.phi_eval(c(3.0, -2.0)).unwrap(), c(1.0, 0.0));
        let m3 = PaleyWienerFunction::monomial(3);
        assert!((m3.phi_eval(c(2.0, 0.0)).unwrap() - c(48.0, 0.0)).norm() < 1e-13);
        let e = PaleyWienerFunction::exp(1.0);
        assert!((e.phi_eval(c(1.0, 0.0)).unwrap() - c(0.5, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn phi_sinc_matches_arctan() {
        // (1/2)∫_{-B}^{B} dκ/(1 − izκ) = arctan(Bz)/z
        let f = PaleyWienerFunction::sinc(0.5);
        for z in [c(1.0, 0.0), c(0.3, 1.2), c(-1.3, -0.4)] {
            let v = f.phi_eval(z).unwrap();
            let exact = (z * 0.5).atan() / z;
            assert!((v - exact).norm() < 1e-14, "{z}: {v} vs {exact}");
        }
    }

    #[test]
    fn phi_strip_violation() {
        let f = PaleyWienerFunction::sinc(0.5);
        assert!(matches!(f.phi_eval(c(0.0, 2.0)), Err(Error::Domain { .. })));
        assert!(f.phi_eval(c(100.0, 1.99)).is_ok());
    }

    #[test]
    fn shifted_polynomial_reexpansion() {
        let p = PaleyWienerFunction::polynomial(vec![1.0, -2.0, 0.5, 3.0]);
        let g = shift_scale(&p, 0.7, 1.3).unwrap();
        let q = PaleyWienerFunction::polynomial(g.polynomial_coefficients().unwrap());
        for z in [c(0.0, 0.0), c(1.1, -0.4), c(-3.0, 2.0)] {
            assert!((g.eval(z) - q.eval(z)).norm() < 1e-12);
        }
    }

    #[test]
    fn shifted_exponential_phase() {
        // g(z) = e^{it(z−ω₀)/σ}; its transform is a point mass at t/σ with
        // phase e^{-itω₀/σ}.
        let g = shift_scale(&PaleyWienerFunction::exp(0.8), 1.5, 2.0).unwrap();
        let z = c(0.4, 0.1);
        let via_transform = g
            .pair_with_transform(|k| Ok((c(0.0, k) * z).exp()))
            .unwrap()
            .unwrap();
        assert!((via_transform - g.eval(z)).norm() < 1e-15);
    }

    #[test]
    fn descriptor_parsing() {
        let f: TestFunction = "sinc:band=0.5".parse().unwrap();
        assert_eq!(f, TestFunction::from(PaleyWienerFunction::sinc(0.5)));
        let f: TestFunction = "poly:a0=1,a2=1".parse().unwrap();
        assert_eq!(f, TestFunction::from(PaleyWienerFunction::polynomial(vec![1.0, 0.0, 1.0])));
        let f: TestFunction = "bump:band=1,omega0=0.5,sigma=2".parse().unwrap();
        assert_eq!(f.band_limit(), Some(0.5));
        for s in ["exp:t=1", "monomial:k=3", "gaussian", "bump:band=1,omega0=0.5,sigma=2"] {
            let f: TestFunction = s.parse().unwrap();
            assert_eq!(f.to_string().parse::<TestFunction>().unwrap(), f);
        }
        assert!("sinc".parse::<TestFunction>().is_err());
        assert!("sinc:band=1,zz=2".parse::<TestFunction>().is_err());
        assert!("monomial:k=1.5".parse::<TestFunction>().is_err());
        assert!("exp:t=1,sigma=0".parse::<TestFunction>().is_err());
    }
}
