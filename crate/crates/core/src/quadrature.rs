//! One-dimensional Gaussian rules.
//!
//! Gauss–Legendre on [-1, 1] backs the θ rule on the sphere and the panel
//! integrators used by the hydrogen transforms; generalized Gauss–Laguerre
//! backs the radial `r² dr` integrals.

use std::f64::consts::PI;

use crate::error::{invalid, Result};

/// Nodes and weights of a one-dimensional rule.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Integrate `f` over `[a, b]` after mapping a rule defined on `[-1, 1]`.
    pub fn integrate_on<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

/// Legendre polynomial P_n(x) and its derivative.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    let dp = n * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// n-point Gauss–Legendre rule on [-1, 1], nodes in ascending order.
pub fn gauss_legendre(n: usize) -> Result<GaussRule> {
    if n == 0 {
        return Err(invalid("Gauss-Legendre rule needs at least one node"));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        // Tricomi initial guess, then Newton.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(GaussRule { nodes, weights })
}

/// Generalized Laguerre polynomial L_n^α(x), returned with L_{n-1}^α(x).
fn laguerre_pair(n: usize, alpha: f64, x: f64) -> (f64, f64) {
    let mut p_prev = 0.0;
    let mut p = 1.0;
    for k in 1..=n {
        let k = k as f64;
        let next = ((2.0 * k - 1.0 + alpha - x) * p - (k - 1.0 + alpha) * p_prev) / k;
        p_prev = p;
        p = next;
    }
    (p, p_prev)
}

fn ln_gamma(x: f64) -> f64 {
    // Lanczos approximation (g = 7, n = 9); plenty for the weight prefactor.
    const COEFFS: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = COEFFS[0];
    let t = x + 7.5;
    for (i, c) in COEFFS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// n-point generalized Gauss–Laguerre rule for ∫₀^∞ x^α e^{-x} g(x) dx.
///
/// Weights are returned as `ln w_i` as well so callers can fold the
/// `e^{x}` factor back in without overflow.
#[derive(Debug, Clone)]
pub struct LaguerreRule {
    pub alpha: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub ln_weights: Vec<f64>,
}

pub fn gauss_laguerre(n: usize, alpha: f64) -> Result<LaguerreRule> {
    if n == 0 {
        return Err(invalid("Gauss-Laguerre rule needs at least one node"));
    }
    if alpha <= -1.0 {
        return Err(invalid(format!("Laguerre exponent must exceed -1, got {alpha}")));
    }
    let nf = n as f64;
    let mut nodes = Vec::with_capacity(n);
    let mut ln_weights = Vec::with_capacity(n);
    let ln_ratio = ln_gamma(alpha + nf) - ln_gamma(nf);
    let mut z = 0.0;
    for i in 0..n {
        // Initial guesses after the classical asymptotic estimates.
        z = if i == 0 {
            (1.0 + alpha) * (3.0 + 0.92 * alpha) / (1.0 + 2.4 * nf + 1.8 * alpha)
        } else if i == 1 {
            z + (15.0 + 6.25 * alpha) / (1.0 + 0.9 * alpha + 2.5 * nf)
        } else {
            let ai = (i - 1) as f64;
            z + ((1.0 + 2.55 * ai) / (1.9 * ai) + 1.26 * ai * alpha / (1.0 + 3.5 * ai))
                * (z - nodes[i - 2])
                / (1.0 + 0.3 * alpha)
        };
        for _ in 0..200 {
            let (p, pm1) = laguerre_pair(n, alpha, z);
            let dp = (nf * p - (nf + alpha) * pm1) / z;
            let dz = p / dp;
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        let (p, p_prev) = laguerre_pair(n, alpha, z);
        let dp = (nf * p - (nf + alpha) * p_prev) / z;
        nodes.push(z);
        // w = -Γ(n+α)/Γ(n) / (n · L'_n(x) · L_{n-1}(x)); the product is negative.
        ln_weights.push(ln_ratio - (nf * (dp * p_prev).abs()).ln());
    }
    let weights = ln_weights.iter().map(|lw| lw.exp()).collect();
    Ok(LaguerreRule {
        alpha,
        nodes,
        weights,
        ln_weights,
    })
}
