use num_complex::Complex64;

use crate::error::{Error, Result};

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 4000;

/// How the integrand decays, declared by the caller. Determines the
/// truncation window `[-W, W]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tail {
    /// Integrand vanishes outside `[lo, hi]`.
    Compact { lo: f64, hi: f64 },
    /// `|h(ω)| ≤ scale·(1+|ω|)^degree·e^{-rate|ω|}`.
    Exponential { rate: f64, scale: f64, degree: f64 },
    /// `|h(ω)| ≤ scale·(1+|ω|)^degree·e^{-ω²/(2·variance)}`.
    Gaussian { variance: f64, scale: f64, degree: f64 },
}

impl Tail {
    /// Bound on `∫_{|ω|>w} |h|`.
    fn tail_integral(&self, w: f64) -> f64 {
        match *self {
            Tail::Compact { .. } => 0.0,
            Tail::Exponential { rate, scale, degree } => {
                let eff = rate - degree / (1.0 + w);
                if eff <= 0.0 {
                    return f64::INFINITY;
                }
                2.0 * scale * (1.0 + w).powf(degree) * (-rate * w).exp() / eff
            }
            Tail::Gaussian {
                variance,
                scale,
                degree,
            } => {
                let eff = w / variance - degree / (1.0 + w);
                if eff <= 0.0 {
                    return f64::INFINITY;
                }
                2.0 * scale * (1.0 + w).powf(degree) * (-w * w / (2.0 * variance)).exp() / eff
            }
        }
    }

    /// Integration window: the compact support, or the smallest `[-W, W]`
    /// (on a geometric grid) whose neglected tail is below `tol/10`.
    pub fn window(&self, tol: f64) -> (f64, f64) {
        if let Tail::Compact { lo, hi } = *self {
            return (lo, hi);
        }
        let mut w = 1.0;
        while self.tail_integral(w) > 0.1 * tol {
            w *= 1.125;
            if w > 1e8 {
                break;
            }
        }
        (-w, w)
    }
}

struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

fn kronrod<F>(f: &mut F, a: f64, b: f64) -> Result<Segment>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(center - dx)? + f(center + dx)?;
        kron += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    let value = kron * half;
    let error = ((kron - gauss) * half).norm();
    Ok(Segment { a, b, value, error })
}

/// Globally adaptive Gauss-Kronrod 7/15 on `[a, b]` with breakpoints.
pub(crate) fn adaptive_complex<F>(mut f: F, breakpoints: &[f64], tol: f64) -> Result<Complex64>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let mut segments = Vec::new();
    for pair in breakpoints.windows(2) {
        if pair[1] > pair[0] {
            segments.push(kronrod(&mut f, pair[0], pair[1])?);
        }
    }
    loop {
        let total: f64 = segments.iter().map(|s| s.error).sum();
        if total <= tol {
            break;
        }
        if segments.len() >= MAX_INTERVALS {
            return Err(Error::ToleranceNotMet {
                achieved: total,
                requested: tol,
            });
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one segment");
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.a + seg.b);
        if !(mid > seg.a && mid < seg.b) {
            return Err(Error::ToleranceNotMet {
                achieved: total,
                requested: tol,
            });
        }
        segments.push(kronrod(&mut f, seg.a, mid)?);
        segments.push(kronrod(&mut f, mid, seg.b)?);
    }
    Ok(segments.iter().map(|s| s.value).sum())
}

/// `∫ h` over a finite interval to absolute tolerance `tol`.
pub fn adaptive_interval<F>(mut h: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    adaptive_complex(|x| Ok(Complex64::new(h(x), 0.0)), &[a, b], tol).map(|v| v.re)
}

/// `∫_ℝ h` to absolute tolerance `tol`, truncating according to `tail` and
/// splitting at the origin.
pub fn adaptive_real_line<F>(mut h: F, tail: Tail, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    adaptive_real_line_complex(|x| Ok(Complex64::new(h(x), 0.0)), tail, tol).map(|v| v.re)
}

pub(crate) fn adaptive_real_line_complex<F>(f: F, tail: Tail, tol: f64) -> Result<Complex64>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let (lo, hi) = tail.window(tol);
    let mut points = vec![lo];
    if lo < 0.0 && hi > 0.0 {
        points.push(0.0);
    }
    points.push(hi);
    adaptive_complex(f, &points, 0.9 * tol)
}
