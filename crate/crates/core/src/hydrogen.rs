//! Hydrogen bound states (n ≤ 3) and their momentum-space distributions.
//!
//! The momentum amplitude of an s-state is the spherical transform
//! `c(p) = (2πħ)^{-3/2} √(4π) ∫ R(r) j₀(pr/ħ) r² dr`. For small p·r it is
//! integrated with generalized Gauss–Laguerre; once the Bessel factor
//! oscillates across the Laguerre support the integral switches to
//! composite Gauss–Legendre panels, each spanning at most two periods.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::angular::{eval_ylm, BasisIndex};
use crate::distribution::{CurveKind, DistributionCurve};
use crate::error::{invalid, Error, Result};
use crate::quadrature::{gauss_laguerre, gauss_legendre, GaussRule};

/// Nodes of the default radial rule.
pub const RADIAL_NODES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HydrogenState {
    pub n: u32,
    pub l: u32,
    pub m: i32,
    /// Bohr radius.
    pub a0: f64,
    pub hbar: f64,
}

impl HydrogenState {
    /// State in natural units ħ = a0 = 1.
    pub fn new(n: u32, l: u32, m: i32) -> Result<Self> {
        if n == 0 {
            return Err(invalid("principal quantum number must be at least 1"));
        }
        if l >= n {
            return Err(invalid(format!("l must be below n, got n={n}, l={l}")));
        }
        if m.unsigned_abs() > l {
            return Err(invalid(format!("|m| must not exceed l, got l={l}, m={m}")));
        }
        Ok(HydrogenState {
            n,
            l,
            m,
            a0: 1.0,
            hbar: 1.0,
        })
    }

    pub fn ground() -> Self {
        HydrogenState::new(1, 0, 0).expect("valid quantum numbers")
    }

    pub fn with_units(self, a0: f64, hbar: f64) -> Result<Self> {
        if !(a0 > 0.0 && hbar > 0.0) {
            return Err(invalid(format!("a0 and hbar must be positive, got {a0}, {hbar}")));
        }
        Ok(HydrogenState { a0, hbar, ..self })
    }

    pub fn is_ground(&self) -> bool {
        self.n == 1
    }

    /// Momentum scale b = ħ/a0.
    pub fn momentum_scale(&self) -> f64 {
        self.hbar / self.a0
    }

    /// R_nl(r) = a0^{-3/2} Σ c_k (r/a0)^k e^{-r/(n a0)}; returns the c_k.
    fn radial_coefficients(&self) -> Result<&'static [f64]> {
        const S2: f64 = std::f64::consts::SQRT_2;
        const S3: f64 = 1.732_050_807_568_877_2;
        const S6: f64 = 2.449_489_742_783_178;
        const S24: f64 = 4.898_979_485_566_356;
        const S30: f64 = 5.477_225_575_051_661;
        static R10: [f64; 1] = [2.0];
        static R20: [f64; 2] = [1.0 / S2, -0.5 / S2];
        static R21: [f64; 2] = [0.0, 1.0 / S24];
        static R30: [f64; 3] = [2.0 / (3.0 * S3), -4.0 / (9.0 * S3), 4.0 / (81.0 * S3)];
        static R31: [f64; 3] = [0.0, 8.0 / (27.0 * S6), -8.0 / (162.0 * S6)];
        static R32: [f64; 3] = [0.0, 0.0, 4.0 / (81.0 * S30)];
        match (self.n, self.l) {
            (1, 0) => Ok(&R10),
            (2, 0) => Ok(&R20),
            (2, 1) => Ok(&R21),
            (3, 0) => Ok(&R30),
            (3, 1) => Ok(&R31),
            (3, 2) => Ok(&R32),
            _ => Err(Error::Unsupported(format!(
                "radial function tabulated only for n <= 3, got n={}",
                self.n
            ))),
        }
    }

    /// Radial function R_nl(r).
    pub fn radial(&self, r: f64) -> Result<f64> {
        let coeffs = self.radial_coefficients()?;
        Ok(radial_eval(coeffs, self.n, self.a0, r))
    }

    /// Radius past which r·R_nl is below double precision.
    fn radial_cutoff(&self) -> f64 {
        40.0 * self.n as f64 * self.a0
    }
}

fn radial_eval(coeffs: &[f64], n: u32, a0: f64, r: f64) -> f64 {
    let rho = r / a0;
    let poly = coeffs.iter().rev().fold(0.0, |acc, c| acc * rho + c);
    poly * (-rho / n as f64).exp() / a0.powf(1.5)
}

/// ψ_nlm(r, θ, φ) = R_nl(r) Y_lm(θ, φ).
pub fn psi_value(s: &HydrogenState, r: f64, theta: f64, phi: f64) -> Result<Complex64> {
    if r < 0.0 {
        return Err(invalid(format!("radius must be non-negative, got {r}")));
    }
    let y = eval_ylm(BasisIndex::new(s.l, s.m)?, theta, phi)?;
    Ok(y * s.radial(r)?)
}

/// Rule for ∫₀^∞ F(r) r² dr, exact when F(r) e^{r/scale} is a polynomial
/// of degree below 2·nodes.
#[derive(Debug, Clone)]
pub struct RadialGrid {
    pub scale: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl RadialGrid {
    pub fn new(n_nodes: usize, scale: f64) -> Result<Self> {
        RadialGrid::with_power(n_nodes, scale, 2)
    }

    /// Rule for ∫₀^∞ F(r) r^k dr.
    pub fn with_power(n_nodes: usize, scale: f64, k: i32) -> Result<Self> {
        if !(scale > 0.0) {
            return Err(invalid(format!("radial scale must be positive, got {scale}")));
        }
        let rule = gauss_laguerre(n_nodes, k as f64)?;
        let jacobian = scale.powi(k + 1);
        let nodes = rule.nodes.iter().map(|x| x * scale).collect();
        // fold e^{x} into the weights in log space
        let weights = rule
            .ln_weights
            .iter()
            .zip(&rule.nodes)
            .map(|(lw, x)| (lw + x).exp() * jacobian)
            .collect();
        Ok(RadialGrid { scale, nodes, weights })
    }

    /// Grid matched to the decay of R_nl², scale n·a0/2.
    pub fn for_density(s: &HydrogenState) -> Result<Self> {
        RadialGrid::new(RADIAL_NODES, 0.5 * s.n as f64 * s.a0)
    }

    /// Grid matched to the decay of R_nl itself, scale n·a0.
    pub fn for_amplitude(s: &HydrogenState) -> Result<Self> {
        RadialGrid::new(RADIAL_NODES, s.n as f64 * s.a0)
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&r, &w)| w * f(r)).sum()
    }

    pub fn max_node(&self) -> f64 {
        self.nodes.last().copied().unwrap_or(0.0)
    }
}

/// ∫₀^∞ R_nl² r² dr.
pub fn radial_norm(s: &HydrogenState) -> Result<f64> {
    let coeffs = s.radial_coefficients()?;
    let grid = RadialGrid::for_density(s)?;
    Ok(grid.integrate(|r| radial_eval(coeffs, s.n, s.a0, r).powi(2)))
}

/// ⟨1/r⟩ = ∫₀^∞ R_nl² r dr.
pub fn expectation_inverse_r(s: &HydrogenState) -> Result<f64> {
    let coeffs = s.radial_coefficients()?;
    let grid = RadialGrid::with_power(RADIAL_NODES, 0.5 * s.n as f64 * s.a0, 1)?;
    Ok(grid.integrate(|r| radial_eval(coeffs, s.n, s.a0, r).powi(2)))
}

/// sin(x)/x with the removable singularity handled.
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// Integrator for ∫₀^∞ R(r) j₀(kr) r² dr.
#[derive(Debug, Clone)]
struct BesselTransform {
    state: HydrogenState,
    coeffs: &'static [f64],
    laguerre: RadialGrid,
    panel_rule: GaussRule,
}

impl BesselTransform {
    fn new(state: &HydrogenState) -> Result<Self> {
        if state.l != 0 {
            return Err(Error::Unsupported(format!(
                "momentum amplitude implemented for s-states only, got l={}",
                state.l
            )));
        }
        Ok(BesselTransform {
            state: *state,
            coeffs: state.radial_coefficients()?,
            laguerre: RadialGrid::for_amplitude(state)?,
            panel_rule: gauss_legendre(16)?,
        })
    }

    fn radial(&self, r: f64) -> f64 {
        radial_eval(self.coeffs, self.state.n, self.state.a0, r)
    }

    /// Whether the Laguerre rule resolves the oscillation at wavenumber k.
    fn laguerre_resolves(&self, k: f64) -> bool {
        k * self.laguerre.max_node() <= self.laguerre.nodes.len() as f64
    }

    fn integral(&self, k: f64) -> f64 {
        if self.laguerre_resolves(k) {
            return self.laguerre.integrate(|r| self.radial(r) * sinc(k * r));
        }
        // composite Gauss–Legendre, at most two periods per panel
        let cutoff = self.state.radial_cutoff();
        let width = (4.0 * PI / k).min(self.state.a0);
        let panels = (cutoff / width).ceil() as usize;
        let width = cutoff / panels as f64;
        let mut acc = 0.0;
        for i in 0..panels {
            let a = i as f64 * width;
            acc += self
                .panel_rule
                .integrate_on(a, a + width, |r| self.radial(r) * r * (k * r).sin());
        }
        acc / k
    }

    fn amplitude(&self, p: f64) -> f64 {
        let hbar = self.state.hbar;
        let prefactor = (4.0 * PI).sqrt() / (2.0 * PI * hbar).powf(1.5);
        prefactor * self.integral(p / hbar)
    }
}

/// Momentum amplitude c(p) of an s-state, normalized so that
/// ∫ |c|² 4πp² dp = 1.
pub fn momentum_amplitude(s: &HydrogenState, p: f64) -> Result<Complex64> {
    if !(p >= 0.0) {
        return Err(invalid(format!("momentum magnitude must be non-negative, got {p}")));
    }
    let t = BesselTransform::new(s)?;
    Ok(Complex64::new(t.amplitude(p), 0.0))
}

/// Amplitudes at many momenta, evaluated in parallel, in input order.
pub fn momentum_amplitudes(s: &HydrogenState, momenta: &[f64]) -> Result<Vec<f64>> {
    if let Some(bad) = momenta.iter().find(|p| !(**p >= 0.0)) {
        return Err(invalid(format!("momentum magnitude must be non-negative, got {bad}")));
    }
    let t = BesselTransform::new(s)?;
    Ok(momenta.par_iter().map(|&p| t.amplitude(p)).collect())
}

/// Largest Gauss–Legendre rule for the panel integrals of |c(p)|² in p,
/// used on intervals of width b/4; narrower intervals get fewer nodes.
const MOMENTUM_PANEL_NODES: usize = 8;
const MIN_PANEL_NODES: usize = 3;

/// Breakpoints from `start` outward with widths growing geometrically,
/// until `end` is reached.
fn tail_breakpoints(start: f64, end: f64, b: f64) -> Vec<f64> {
    let mut pts = vec![start];
    let mut t = start;
    while t < end {
        t += (0.25 * b).max(0.2 * t);
        pts.push(t.min(end));
    }
    pts
}

/// ∫ g(p, c(p)) dp over each interval between consecutive breakpoints.
fn interval_integrals<G>(s: &HydrogenState, breaks: &[f64], g: G) -> Result<Vec<f64>>
where
    G: Fn(f64, f64) -> f64,
{
    let rules = (MIN_PANEL_NODES..=MOMENTUM_PANEL_NODES)
        .map(gauss_legendre)
        .collect::<Result<Vec<_>>>()?;
    let quarter = 0.25 * s.momentum_scale();
    let mut nodes = Vec::new();
    let mut spans = Vec::with_capacity(breaks.len());
    for w in breaks.windows(2) {
        let (half, mid) = (0.5 * (w[1] - w[0]), 0.5 * (w[1] + w[0]));
        let n = ((MOMENTUM_PANEL_NODES as f64 * (w[1] - w[0]) / quarter).ceil() as usize)
            .clamp(MIN_PANEL_NODES, MOMENTUM_PANEL_NODES);
        let rule = &rules[n - MIN_PANEL_NODES];
        spans.push((nodes.len(), half, rule));
        nodes.extend(rule.nodes.iter().map(|x| mid + half * x));
    }
    let amps = momentum_amplitudes(s, &nodes)?;
    Ok(spans
        .iter()
        .map(|&(start, half, rule)| {
            let sum: f64 = rule
                .weights
                .iter()
                .enumerate()
                .map(|(j, w)| w * g(nodes[start + j], amps[start + j]))
                .sum();
            half * sum
        })
        .collect())
}

/// Marginal density of p_z,
/// `∫∫ |c|² dp_x dp_y = 2π ∫_{|p_z|}^∞ |c(p)|² p dp`,
/// evaluated as a cumulative integral over the sorted |p_z| values plus a
/// tail out to 32 times the largest of them.
pub fn marginal_pz(s: &HydrogenState, pz_grid: &[f64]) -> Result<DistributionCurve> {
    if s.l != 0 {
        return Err(Error::Unsupported(format!(
            "p_z marginal implemented for isotropic states only, got l={}",
            s.l
        )));
    }
    if pz_grid.iter().any(|p| !p.is_finite()) {
        return Err(invalid("p_z grid contains non-finite values"));
    }
    let b = s.momentum_scale();
    let mut magnitudes: Vec<f64> = pz_grid.iter().map(|p| p.abs()).collect();
    magnitudes.sort_by(|x, y| x.total_cmp(y));
    magnitudes.dedup();

    // Breakpoints: every |p_z| value, with long gaps subdivided.
    let max_gap = 0.25 * b;
    let mut breaks = Vec::new();
    let mut anchor_positions = Vec::with_capacity(magnitudes.len());
    for (i, &m) in magnitudes.iter().enumerate() {
        if i > 0 {
            let prev = magnitudes[i - 1];
            let pieces = ((m - prev) / max_gap).ceil().max(1.0) as usize;
            for k in 1..pieces {
                breaks.push(prev + (m - prev) * k as f64 / pieces as f64);
            }
        }
        anchor_positions.push(breaks.len());
        breaks.push(m);
    }
    let top = *magnitudes.last().unwrap_or(&0.0);
    let tail = tail_breakpoints(top, 32.0 * top.max(b), b);
    breaks.extend_from_slice(&tail[1..]);

    let masses = interval_integrals(s, &breaks, |p, c| 2.0 * PI * c * c * p)?;
    // suffix sums from the far tail inward
    let mut above = vec![0.0; breaks.len()];
    for i in (0..masses.len()).rev() {
        above[i] = above[i + 1] + masses[i];
    }
    let lookup = |p: f64| -> f64 {
        let k = magnitudes.binary_search_by(|m| m.total_cmp(&p)).expect("grid value");
        above[anchor_positions[k]]
    };
    let mut abscissa = pz_grid.to_vec();
    abscissa.sort_by(|x, y| x.total_cmp(y));
    let values = abscissa.iter().map(|p| lookup(p.abs())).collect();
    DistributionCurve::new(
        format!("pz_density(n={})", s.n),
        abscissa,
        values,
        CurveKind::Density,
    )
}

/// ∫₀^∞ |c(p)|² 4πp² dp, with the same panel scheme as the marginal.
pub fn momentum_normalization(s: &HydrogenState) -> Result<f64> {
    let b = s.momentum_scale();
    let breaks = tail_breakpoints(0.0, 1024.0 * b, b);
    let parts = interval_integrals(s, &breaks, |p, c| 4.0 * PI * c * c * p * p)?;
    Ok(parts.iter().sum())
}

/// Printed closed forms for the ground state, used as references.
pub mod closed_form {
    use std::f64::consts::PI;

    /// c(p) = 2^{3/2} b^{5/2} / π · (p² + b²)^{-2}
    pub fn ground_amplitude(p: f64, b: f64) -> f64 {
        2f64.powf(1.5) * b.powf(2.5) / PI / (p * p + b * b).powi(2)
    }

    /// |c(p_z)|² = 8b⁵/(3π) · (b² + p_z²)^{-3}
    pub fn ground_marginal(pz: f64, b: f64) -> f64 {
        8.0 * b.powi(5) / (3.0 * PI) / (b * b + pz * pz).powi(3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_number_validation() {
        assert!(HydrogenState::new(0, 0, 0).is_err());
        assert!(HydrogenState::new(2, 2, 0).is_err());
        assert!(HydrogenState::new(2, 1, 2).is_err());
        assert!(HydrogenState::ground().with_units(-1.0, 1.0).is_err());
        let s = HydrogenState::new(4, 0, 0).unwrap();
        assert!(matches!(s.radial(1.0), Err(Error::Unsupported(_))));
        assert!(matches!(psi_value(&s, 1.0, 0.0, 0.0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn ground_state_values() {
        let s = HydrogenState::ground();
        let at0 = psi_value(&s, 0.0, 0.3, 0.0).unwrap();
        assert!((at0.re - 2.0 / (4.0 * PI).sqrt()).abs() < 1e-15);
        assert!((at0.re - 0.564_189_6).abs() < 1e-7);
        let at1 = psi_value(&s, 1.0, 0.3, 0.0).unwrap();
        assert!((at1.re / at0.re - (-1f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn radial_functions_are_normalized() {
        for (n, l) in [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)] {
            for a0 in [1.0, 0.529] {
                let s = HydrogenState::new(n, l, 0).unwrap().with_units(a0, 1.0).unwrap();
                let norm = radial_norm(&s).unwrap();
                assert!((norm - 1.0).abs() < 1e-10, "n={n} l={l} a0={a0}: {norm}");
            }
        }
    }

    #[test]
    fn inverse_radius_expectation() {
        for (n, l) in [(1, 0), (2, 0), (2, 1), (3, 0), (3, 2)] {
            let s = HydrogenState::new(n, l, 0).unwrap().with_units(2.0, 1.0).unwrap();
            let v = expectation_inverse_r(&s).unwrap();
            let want = 1.0 / (n as f64 * n as f64 * 2.0);
            assert!((v - want).abs() < 1e-10, "n={n} l={l}: {v}");
        }
    }

    #[test]
    fn radial_grid_exactness() {
        // ∫ e^{-2r/a0} r^k r² dr = (k+2)! (a0/2)^{k+3}
        let a0 = 1.0;
        let grid = RadialGrid::new(RADIAL_NODES, a0 / 2.0).unwrap();
        let mut fact = 2.0f64;
        for k in 0..60 {
            fact *= (k + 3) as f64;
            let want = fact / (k + 3) as f64 * (a0 / 2.0).powi(k + 3);
            let got = grid.integrate(|r| (-2.0 * r / a0).exp() * r.powi(k));
            assert!(((got - want) / want).abs() < 1e-12, "k={k}: {got} vs {want}");
        }
    }

    #[test]
    fn amplitude_route_switch_is_seamless() {
        let s = HydrogenState::ground();
        let t = BesselTransform::new(&s).unwrap();
        let mut k = 0.01;
        while t.laguerre_resolves(k) {
            k *= 1.01;
        }
        let lag = t.laguerre.integrate(|r| t.radial(r) * sinc(0.99 * k * r));
        let exact = 4.0 / (1.0 + (0.99 * k).powi(2)).powi(2);
        assert!(((lag - exact) / exact).abs() < 1e-12);
        let panels = t.integral(k);
        let exact = 4.0 / (1.0 + k * k).powi(2);
        assert!(((panels - exact) / exact).abs() < 1e-12);
    }

    #[test]
    fn amplitude_only_for_s_states() {
        let s = HydrogenState::new(2, 1, 0).unwrap();
        assert!(matches!(momentum_amplitude(&s, 1.0), Err(Error::Unsupported(_))));
        assert!(matches!(marginal_pz(&s, &[0.0]), Err(Error::Unsupported(_))));
        assert!(momentum_amplitude(&HydrogenState::ground(), -1.0).is_err());
    }

    #[test]
    fn closed_form_reference_values() {
        assert!((closed_form::ground_amplitude(0.0, 1.0) - 0.900_316_3).abs() < 1e-7);
        assert!((closed_form::ground_amplitude(1.0, 1.0) - 0.225_079_1).abs() < 1e-7);
        assert!((closed_form::ground_marginal(0.0, 1.0) - 0.848_826_4).abs() < 1e-7);
        assert!((closed_form::ground_marginal(1.0, 1.0) - 0.106_103_3).abs() < 1e-7);
    }

    #[test]
    fn marginal_is_even_by_construction() {
        let s = HydrogenState::ground();
        let grid = [-2.5, -1.0, 0.0, 1.0, 2.5];
        let c = marginal_pz(&s, &grid).unwrap();
        assert_eq!(c.values[0], c.values[4]);
        assert_eq!(c.values[1], c.values[3]);
    }
}
