//! The γ-representation of angular states.
//!
//! With u = ln tan(θ/2) one has cosθ = tanh u, sinθ = sech u and
//! dθ = sech u du, so the θ-dependence of an m = 0 state becomes a
//! Fourier integral in u. Its transform variable γ labels the continuum
//! eigenvalues γħ of rΠ_z.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::angular::LegendreTable;
use crate::distribution::{CurveKind, DistributionCurve};
use crate::error::{invalid, Error, Result};
use crate::hydrogen::{expectation_inverse_r, HydrogenState};

/// Truncation of the u-integral; the integrand decays like e^{-|u|}.
pub const U_MAX: f64 = 40.0;

/// Ratio of the direct integral (with the φ-integral and its 1/√(2π)
/// prefactor) to the unit-normalized coefficient.
pub const RAW_TO_NORMALIZED: f64 = 2.506_628_274_631_000_5;

/// Allowed gap between the trapezoid sums at spacing h and 2h.
pub const Q_ACCURACY: f64 = 1e-10;

/// Default γ grid. The p_z density decays like γ^-6, so its mass beyond
/// ±40 is about 3e-9.
pub const DEFAULT_GAMMA_MAX: f64 = 40.0;
pub const DEFAULT_GAMMA_POINTS: usize = 8001;

/// Uniform grid on [−half_range, half_range] with an odd number of points.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaGrid {
    pub half_range: f64,
    pub values: Vec<f64>,
}

impl GammaGrid {
    pub fn new(half_range: f64, points: usize) -> Result<Self> {
        if !(half_range > 0.0 && half_range.is_finite()) {
            return Err(invalid(format!("gamma half-range must be positive, got {half_range}")));
        }
        if points < 3 || points.is_multiple_of(2) {
            return Err(invalid(format!(
                "gamma grid needs an odd number of points (at least 3) so that it contains 0, got {points}"
            )));
        }
        let c = (points / 2) as i64;
        // negative half mirrors the positive half bit-for-bit
        let values = (-c..=c)
            .map(|j| {
                let x = half_range * (j.unsigned_abs() as f64 / c as f64);
                if j < 0 {
                    -x
                } else {
                    x
                }
            })
            .collect();
        Ok(GammaGrid { half_range, values })
    }

    pub fn default_grid() -> Result<Self> {
        GammaGrid::new(DEFAULT_GAMMA_MAX, DEFAULT_GAMMA_POINTS)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_range / (self.values.len() - 1) as f64
    }

    pub fn center(&self) -> usize {
        self.values.len() / 2
    }
}

/// Number of trapezoid steps on [0, U_MAX] for the given degree and γ.
/// Always even, so that the doubled spacing also ends on U_MAX.
fn u_steps(l: u32, gamma: f64) -> usize {
    let h = 0.05f64.min(PI / (8.0 * (gamma.abs() + l as f64) + 1.0));
    let half = (U_MAX / h).ceil() as usize;
    half + half % 2
}

/// Y_l0(θ(u)) sech u at the trapezoid nodes u = k·h, k = 0..=steps.
#[derive(Debug, Clone)]
struct HalfLineSamples {
    l: u32,
    h: f64,
    values: Vec<f64>,
}

impl HalfLineSamples {
    fn new(l: u32, steps: usize) -> Self {
        let h = U_MAX / steps as f64;
        let values = (0..=steps)
            .map(|k| {
                let u = k as f64 * h;
                let sech = 1.0 / u.cosh();
                LegendreTable::new(l, u.tanh(), sech).get(l, 0) * sech
            })
            .collect();
        HalfLineSamples { l, h, values }
    }

    /// Trapezoid sums over |u| ≤ U_MAX at spacing h and 2h. Nodes ±u are
    /// paired through the parity of Y_l0, so the results are purely real
    /// for even l and purely imaginary for odd l.
    fn paired_sums(&self, gamma: f64) -> (Complex64, Complex64) {
        let even = self.l.is_multiple_of(2);
        // the u = 0 node is halved here and doubled below; it vanishes for odd l
        let centre = if even { 0.5 * self.values[0] } else { 0.0 };
        let (mut fine, mut coarse) = (centre, centre);
        let last = self.values.len() - 1;
        for k in 1..=last {
            let u = k as f64 * self.h;
            let phase = if even { (gamma * u).cos() } else { (gamma * u).sin() };
            let term = self.values[k] * phase;
            let w = if k == last { 0.5 } else { 1.0 };
            fine += w * term;
            if k % 2 == 0 {
                coarse += w * term;
            }
        }
        let wrap = |acc: f64, h: f64| {
            let total = 2.0 * h * acc;
            if even {
                Complex64::new(total, 0.0)
            } else {
                Complex64::new(0.0, total)
            }
        };
        (wrap(fine, self.h), wrap(coarse, 2.0 * self.h))
    }

    /// Sum at spacing h, checked against the sum at 2h.
    fn coefficient(&self, gamma: f64) -> Result<Complex64> {
        let (fine, coarse) = self.paired_sums(gamma);
        let deviation = (fine - coarse).norm();
        if deviation > Q_ACCURACY {
            return Err(Error::Accuracy {
                what: format!("q_coeff(l={}, gamma={gamma}) trapezoid halving", self.l),
                deviation,
                tolerance: Q_ACCURACY,
            });
        }
        Ok(fine)
    }
}

/// The direct integral with the 1/√(2π) prefactor and the φ-integral of
/// an m = 0 state, before the Parseval rescaling.
pub fn q_coeff_raw(l: u32, gamma: f64) -> Result<Complex64> {
    let phi_integral = 2.0 * PI;
    Ok(q_coeff(l, gamma)? * (phi_integral / (2.0 * PI).sqrt()))
}

/// Unit-normalized coefficient Q_l0(γ) = ∫ Y_l0(θ(u)) sech u e^{iγu} du,
/// so that ∫ |Q_l0|² dγ = 1.
pub fn q_coeff(l: u32, gamma: f64) -> Result<Complex64> {
    if !gamma.is_finite() {
        return Err(invalid(format!("gamma must be finite, got {gamma}")));
    }
    HalfLineSamples::new(l, u_steps(l, gamma)).coefficient(gamma)
}

/// [`q_coeff`] at many γ, sharing one u-grid fine enough for the largest |γ|.
pub fn q_coeff_many(l: u32, gammas: &[f64]) -> Result<Vec<Complex64>> {
    if let Some(bad) = gammas.iter().find(|g| !g.is_finite()) {
        return Err(invalid(format!("gamma must be finite, got {bad}")));
    }
    let widest = gammas.iter().fold(0.0f64, |a, g| a.max(g.abs()));
    let samples = HalfLineSamples::new(l, u_steps(l, widest));
    gammas.par_iter().map(|&g| samples.coefficient(g)).collect()
}

/// ½√π sech(πγ/2).
pub fn q00_analytic(gamma: f64) -> f64 {
    0.5 * PI.sqrt() / (0.5 * PI * gamma).cosh()
}

fn q_abs_sq_on(l: u32, grid: &GammaGrid) -> Result<Vec<f64>> {
    Ok(q_coeff_many(l, &grid.values)?.iter().map(|q| q.norm_sqr()).collect())
}

/// Density of rΠ_z eigenvalues for the ground state: |Q_00(γ)|² weighted
/// by a0·⟨1/r⟩, which is 1 for the ground state.
pub fn pi_z_density(s: &HydrogenState, grid: &GammaGrid) -> Result<DistributionCurve> {
    if !s.is_ground() {
        return Err(Error::Unsupported(format!(
            "Pi_z density is defined for the ground state only, got n={}",
            s.n
        )));
    }
    let weight = s.a0 * expectation_inverse_r(s)?;
    let values = q_abs_sq_on(0, grid)?.into_iter().map(|v| v * weight).collect();
    DistributionCurve::new("piz_density", grid.values.clone(), values, CurveKind::Density)
}

/// (8/3π)(1+γ²)^{-3} − (π/4)sech²(πγ/2): the p_z density minus the
/// Π_z density in natural units. Even in γ.
pub fn density_difference(gamma: f64) -> f64 {
    let g2 = gamma * gamma;
    8.0 / (3.0 * PI) / (1.0 + g2).powi(3) - 0.25 * PI / (0.5 * PI * gamma).cosh().powi(2)
}

/// γ times [`density_difference`], on a symmetric grid. Built as
/// γ·f(|γ|), so the curve is odd bit-for-bit.
pub fn combined_z_distribution(grid: &GammaGrid) -> Result<DistributionCurve> {
    let values = grid
        .values
        .iter()
        .map(|&g| g * density_difference(g.abs()))
        .collect();
    DistributionCurve::new("signed_density", grid.values.clone(), values, CurveKind::Signed)
}

/// |Q_l0(γ)|² for an m = 0 state.
pub fn expand_state_in_gamma(s: &HydrogenState, grid: &GammaGrid) -> Result<DistributionCurve> {
    if s.m != 0 {
        return Err(Error::Unsupported(format!(
            "gamma expansion implemented for m = 0 only, got m={}",
            s.m
        )));
    }
    let values = q_abs_sq_on(s.l, grid)?;
    DistributionCurve::new(
        format!("q_l0_abs_sq(l={})", s.l),
        grid.values.clone(),
        values,
        CurveKind::Density,
    )
}

/// Roots of `f` in (lo, hi], located by scanning `samples` intervals and
/// bisecting each sign change to full precision.
pub fn find_roots<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, samples: usize) -> Vec<f64> {
    let mut roots = Vec::new();
    let step = (hi - lo) / samples as f64;
    let mut a = lo;
    let mut fa = f(a);
    for k in 1..=samples {
        let b = lo + k as f64 * step;
        let fb = f(b);
        if fb == 0.0 {
            roots.push(b);
        } else if fa != 0.0 && fa.signum() != fb.signum() {
            let (mut x0, mut x1, mut f0) = (a, b, fa);
            while x1 - x0 > 4.0 * f64::EPSILON * x1.abs().max(1.0) {
                let mid = 0.5 * (x0 + x1);
                let fm = f(mid);
                if fm == 0.0 {
                    x0 = mid;
                    x1 = mid;
                    break;
                }
                if fm.signum() == f0.signum() {
                    x0 = mid;
                    f0 = fm;
                } else {
                    x1 = mid;
                }
            }
            roots.push(0.5 * (x0 + x1));
        }
        a = b;
        fa = fb;
    }
    roots
}

/// Positive γ where the p_z and Π_z densities cross, on (0, hi].
pub fn density_crossings(hi: f64) -> Vec<f64> {
    find_roots(density_difference, 0.0, hi, 6000)
}
