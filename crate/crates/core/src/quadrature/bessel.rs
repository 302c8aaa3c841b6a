use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Modified Bessel function of the second kind, order one.
///
/// Power series with the logarithmic term below `x = 2`; above it, Steed's
/// evaluation of Temme's continued fraction for `K₀`, `K₁`.
pub fn bessel_k1(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(Complex64::new(x, 0.0), "K1 requires x > 0"));
    }
    Ok(if x < 2.0 { k1_series(x) } else { k1_continued_fraction(x) })
}

fn k1_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    // term_k = (x²/4)^k / (k!(k+1)!)
    let mut term = 1.0;
    let mut psi_k1 = -EULER_GAMMA; // ψ(k+1)
    let mut psi_k2 = 1.0 - EULER_GAMMA; // ψ(k+2)
    let mut i1_sum = 0.0;
    let mut psi_sum = 0.0;
    for k in 0..60 {
        i1_sum += term;
        let contrib = (psi_k1 + psi_k2) * term;
        psi_sum += contrib;
        let kf = k as f64;
        psi_k1 += 1.0 / (kf + 1.0);
        psi_k2 += 1.0 / (kf + 2.0);
        term *= q / ((kf + 1.0) * (kf + 2.0));
        if term < 1e-18 * i1_sum {
            break;
        }
    }
    let i1 = 0.5 * x * i1_sum;
    1.0 / x + (0.5 * x).ln() * i1 - 0.25 * x * psi_sum
}

fn k1_continued_fraction(x: f64) -> f64 {
    // Order mu = 0 specialisation.
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    h *= a1;
    let k0 = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    k0 * (x + 0.5 - h) / x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        // Reference digits from 30-digit arithmetic.
        let cases = [
            (1.0, 0.601_907_230_197_234_6),
            (0.1, 9.853_844_780_870_606),
            (2.0, 0.139_865_881_816_522_4),
            (10.0, 1.864_877_345_382_558e-5),
        ];
        for (x, expect) in cases {
            let v = bessel_k1(x).unwrap();
            assert!(((v - expect) / expect).abs() < 1e-12, "K1({x}) = {v}, want {expect}");
        }
    }

    #[test]
    fn seam_is_continuous() {
        let below = k1_series(2.0);
        let above = k1_continued_fraction(2.0);
        assert!(((below - above) / above).abs() < 1e-13, "{below} {above}");
    }

    #[test]
    fn small_argument_limit() {
        for x in [1e-2, 1e-3] {
            assert!((x * bessel_k1(x).unwrap() - 1.0).abs() < 1e-3);
        }
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(bessel_k1(0.0).is_err());
        assert!(bessel_k1(-1.0).is_err());
    }
}
