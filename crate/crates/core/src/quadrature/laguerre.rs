use nalgebra::DMatrix;

use crate::error::{Error, Result};

pub const MAX_LAGUERRE_ORDER: usize = 128;

/// Gauss-Laguerre rule for `∫₀^∞ e^{-s} h(s) ds`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaguerreRule {
    pub order: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl LaguerreRule {
    pub fn integrate<T, F>(&self, mut h: F) -> T
    where
        T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
        F: FnMut(f64) -> T,
    {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::default(), |acc, (&s, &w)| acc + h(s) * w)
    }
}

/// `(L_n(x), L_{n-1}(x))`, both divided by a common power of 10 when large.
fn laguerre_pair(n: usize, x: f64) -> (f64, f64) {
    const RESCALE: f64 = 1e100;
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut prev = 1.0;
    let mut cur = 1.0 - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
        }
    }
    (cur, prev)
}

/// `ln w` for the Christoffel weight `w = 1/Σ_{k<n} L_k(x)²`, with the
/// recurrence rescaled so the outer nodes do not overflow.
fn christoffel_log_weight(n: usize, x: f64) -> f64 {
    const RESCALE: f64 = 1e100;
    let mut prev = 1.0;
    let mut cur = 1.0 - x;
    let mut sum = 1.0;
    let mut log_scale = 0.0;
    if n >= 2 {
        sum += cur * cur;
    }
    for k in 1..n.saturating_sub(1) {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        sum += cur * cur;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            sum /= RESCALE * RESCALE;
            log_scale += RESCALE.ln();
        }
    }
    -(sum.ln() + 2.0 * log_scale)
}

/// Nodes from the eigenvalues of the symmetric Jacobi matrix (diagonal
/// `2k+1`, off-diagonal `k`), polished by Newton steps on `L_n`. Weights
/// are Christoffel numbers.
pub fn gauss_laguerre(n: usize) -> Result<LaguerreRule> {
    if n == 0 || n > MAX_LAGUERRE_ORDER {
        return Err(Error::OrderOutOfRange(n));
    }
    let jacobi = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            (2 * i + 1) as f64
        } else if i.abs_diff(j) == 1 {
            i.max(j) as f64
        } else {
            0.0
        }
    });
    let mut nodes: Vec<f64> = jacobi.symmetric_eigenvalues().iter().copied().collect();
    nodes.sort_by(|a, b| a.total_cmp(b));

    let nf = n as f64;
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..4 {
            let (ln, lnm1) = laguerre_pair(n, *x);
            let denom = nf * (ln - lnm1);
            if denom == 0.0 {
                break;
            }
            let step = *x * ln / denom;
            *x -= step;
            if step.abs() <= 1e-16 * x.abs() {
                break;
            }
        }
        weights.push(christoffel_log_weight(n, *x).exp());
    }
    Ok(LaguerreRule {
        order: n,
        nodes,
        weights,
    })
}
