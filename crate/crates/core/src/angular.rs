//! Quadrature on the unit sphere and orthonormal spherical harmonics.
//!
//! Harmonics carry the Condon–Shortley phase, so that
//! `Y_{l,-m} = (-1)^m conj(Y_{l,m})` and the ladder matrix elements of
//! `L_±` are the positive textbook ones. The θ rule is Gauss–Legendre in
//! cosθ, which never places a node on a pole.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::quadrature::gauss_legendre;

/// Product rule: Gauss–Legendre in cosθ times uniform φ.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularQuadrature {
    /// θ nodes in (0, π), ascending.
    pub theta_nodes: Vec<f64>,
    /// Weights for the measure sinθ dθ; they sum to 2.
    pub theta_weights: Vec<f64>,
    pub n_phi: usize,
    cos_theta: Vec<f64>,
    sin_theta: Vec<f64>,
}

/// Build an `n_theta × n_phi` product rule.
pub fn build_quadrature(n_theta: usize, n_phi: usize) -> Result<AngularQuadrature> {
    if n_theta < 2 || n_phi < 2 {
        return Err(invalid(format!(
            "quadrature needs n_theta >= 2 and n_phi >= 2, got ({n_theta}, {n_phi})"
        )));
    }
    let rule = gauss_legendre(n_theta)?;
    // Ascending θ means descending cosθ.
    let cos_theta: Vec<f64> = rule.nodes.iter().rev().copied().collect();
    let theta_weights: Vec<f64> = rule.weights.iter().rev().copied().collect();
    let sin_theta = cos_theta.iter().map(|c| (1.0 - c * c).sqrt()).collect();
    let theta_nodes = cos_theta.iter().map(|c| c.acos()).collect();
    Ok(AngularQuadrature {
        theta_nodes,
        theta_weights,
        n_phi,
        cos_theta,
        sin_theta,
    })
}

impl AngularQuadrature {
    pub fn n_theta(&self) -> usize {
        self.theta_nodes.len()
    }

    pub fn n_nodes(&self) -> usize {
        self.n_theta() * self.n_phi
    }

    pub fn cos_theta(&self) -> &[f64] {
        &self.cos_theta
    }

    pub fn sin_theta(&self) -> &[f64] {
        &self.sin_theta
    }

    pub fn phi(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.n_phi as f64
    }

    pub fn phi_nodes(&self) -> Vec<f64> {
        (0..self.n_phi).map(|j| self.phi(j)).collect()
    }

    pub fn phi_weight(&self) -> f64 {
        2.0 * PI / self.n_phi as f64
    }

    /// Largest band limit L such that every product of harmonics with total
    /// degree ≤ L is integrated exactly.
    pub fn exact_degree(&self) -> usize {
        (2 * self.n_theta() - 1).min(self.n_phi - 1)
    }

    /// Integrate a function of (θ, φ) against dΩ.
    pub fn integrate<F: FnMut(f64, f64) -> Complex64>(&self, mut f: F) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (theta, w) in self.theta_nodes.iter().zip(&self.theta_weights) {
            let mut row = Complex64::new(0.0, 0.0);
            for j in 0..self.n_phi {
                row += f(*theta, self.phi(j));
            }
            acc += row * *w;
        }
        acc * self.phi_weight()
    }
}

/// Quantum numbers (l, m) of one basis harmonic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisIndex {
    pub l: u32,
    pub m: i32,
}

impl BasisIndex {
    pub fn new(l: u32, m: i32) -> Result<Self> {
        if m.unsigned_abs() > l {
            return Err(invalid(format!("|m| must not exceed l, got l={l}, m={m}")));
        }
        Ok(BasisIndex { l, m })
    }

    /// Position `l(l+1) + m` in the flattened basis.
    pub fn flat(&self) -> usize {
        let l = self.l as i64;
        (l * (l + 1) + self.m as i64) as usize
    }

    pub fn from_flat(k: usize) -> Self {
        let l = (k as f64).sqrt() as u32;
        // guard against sqrt rounding on perfect squares
        let l = if ((l + 1) * (l + 1)) as usize <= k { l + 1 } else { l };
        let l = if (l * l) as usize > k { l - 1 } else { l };
        let m = k as i64 - (l as i64) * (l as i64 + 1);
        BasisIndex { l, m: m as i32 }
    }
}

/// Spherical harmonics with l ≤ l_max, dimension (l_max+1)².
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisTruncation {
    pub l_max: u32,
}

impl BasisTruncation {
    pub fn new(l_max: u32) -> Self {
        BasisTruncation { l_max }
    }

    pub fn dim(&self) -> usize {
        ((self.l_max + 1) * (self.l_max + 1)) as usize
    }

    /// Dimension of the sub-space l ≤ l_max − shells (zero if empty).
    pub fn interior_dim(&self, shells: u32) -> usize {
        if shells > self.l_max {
            0
        } else {
            let top = self.l_max - shells;
            ((top + 1) * (top + 1)) as usize
        }
    }

    pub fn indices(&self) -> impl Iterator<Item = BasisIndex> {
        (0..self.dim()).map(BasisIndex::from_flat)
    }

    pub fn contains(&self, idx: BasisIndex) -> bool {
        idx.l <= self.l_max
    }
}

#[inline]
fn tri(l: usize, m: usize) -> usize {
    l * (l + 1) / 2 + m
}

/// Orthonormalized associated Legendre functions P̄_l^m(cosθ) for
/// 0 ≤ m ≤ l ≤ l_max, including the Condon–Shortley phase and the
/// 1/√(4π) factor, so that Y_lm = P̄_l^m e^{imφ} for m ≥ 0.
///
/// Upward recursion in l from the diagonal m = l.
#[derive(Debug, Clone)]
pub struct LegendreTable {
    l_max: usize,
    values: Vec<f64>,
}

impl LegendreTable {
    pub fn new(l_max: u32, cos_theta: f64, sin_theta: f64) -> Self {
        let l_max = l_max as usize;
        let mut values = vec![0.0; tri(l_max, l_max) + 1];
        values[0] = 1.0 / (4.0 * PI).sqrt();
        for m in 1..=l_max {
            let mf = m as f64;
            values[tri(m, m)] =
                -((2.0 * mf + 1.0) / (2.0 * mf)).sqrt() * sin_theta * values[tri(m - 1, m - 1)];
        }
        for m in 0..l_max {
            let mf = m as f64;
            values[tri(m + 1, m)] = (2.0 * mf + 3.0).sqrt() * cos_theta * values[tri(m, m)];
            for l in (m + 2)..=l_max {
                let lf = l as f64;
                let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
                let lp = lf - 1.0;
                let a_prev = ((4.0 * lp * lp - 1.0) / (lp * lp - mf * mf)).sqrt();
                values[tri(l, m)] =
                    a * (cos_theta * values[tri(l - 1, m)] - values[tri(l - 2, m)] / a_prev);
            }
        }
        LegendreTable { l_max, values }
    }

    /// P̄_l^m for m ≥ 0.
    pub fn get(&self, l: u32, m: u32) -> f64 {
        debug_assert!(m <= l && l as usize <= self.l_max);
        self.values[tri(l as usize, m as usize)]
    }

    /// sinθ · dP̄_l^m/dθ = l cosθ P̄_l^m − √((2l+1)/(2l−1)·(l²−m²)) P̄_{l−1}^m.
    pub fn sin_dtheta(&self, l: u32, m: u32, cos_theta: f64) -> f64 {
        let lf = l as f64;
        let mf = m as f64;
        let lower = if l > m {
            ((2.0 * lf + 1.0) / (2.0 * lf - 1.0) * (lf * lf - mf * mf)).sqrt() * self.get(l - 1, m)
        } else {
            0.0
        };
        lf * cos_theta * self.get(l, m) - lower
    }
}

/// Phase relating Y_{l,m} to P̄_l^{|m|} e^{imφ}.
#[inline]
pub(crate) fn cs_sign(m: i32) -> f64 {
    if m < 0 && m % 2 != 0 {
        -1.0
    } else {
        1.0
    }
}

/// Evaluate the orthonormal harmonic Y_lm(θ, φ).
pub fn eval_ylm(idx: BasisIndex, theta: f64, phi: f64) -> Result<Complex64> {
    let idx = BasisIndex::new(idx.l, idx.m)?;
    if !(0.0..=PI).contains(&theta) {
        return Err(invalid(format!("theta must lie in [0, pi], got {theta}")));
    }
    let table = LegendreTable::new(idx.l, theta.cos(), theta.sin());
    let p = table.get(idx.l, idx.m.unsigned_abs());
    Ok(Complex64::from_polar(cs_sign(idx.m) * p, idx.m as f64 * phi))
}

/// Function values on the nodes of one [`AngularQuadrature`], θ-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereSamples {
    pub n_theta: usize,
    pub n_phi: usize,
    pub values: Vec<Complex64>,
}

impl SphereSamples {
    pub fn from_fn<F: FnMut(f64, f64) -> Complex64>(q: &AngularQuadrature, mut f: F) -> Self {
        let mut values = Vec::with_capacity(q.n_nodes());
        for &theta in &q.theta_nodes {
            for j in 0..q.n_phi {
                values.push(f(theta, q.phi(j)));
            }
        }
        SphereSamples {
            n_theta: q.n_theta(),
            n_phi: q.n_phi,
            values,
        }
    }

    fn matches(&self, q: &AngularQuadrature) -> bool {
        self.n_theta == q.n_theta() && self.n_phi == q.n_phi && self.values.len() == q.n_nodes()
    }
}

/// ⟨f, g⟩ = Σ w_θ (2π/n_φ) conj(f) g.
pub fn inner_product(f: &SphereSamples, g: &SphereSamples, q: &AngularQuadrature) -> Result<Complex64> {
    if !f.matches(q) || !g.matches(q) {
        return Err(invalid("samples were not taken on this quadrature grid"));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, w) in q.theta_weights.iter().enumerate() {
        let row = i * q.n_phi;
        let s: Complex64 = (0..q.n_phi)
            .map(|j| f.values[row + j].conj() * g.values[row + j])
            .sum();
        acc += s * *w;
    }
    Ok(acc * q.phi_weight())
}

/// Forward transform by quadrature: maps samples on the grid to the
/// coefficients ⟨Y_lm, f⟩ for every harmonic in the truncation.
#[derive(Debug, Clone)]
pub struct SphericalProjector {
    pub basis: BasisTruncation,
    pub quadrature: AngularQuadrature,
    tables: Vec<LegendreTable>,
    // e^{-i m φ_j}, indexed [(m + l_max) * n_phi + j]
    twiddles: Vec<Complex64>,
}

impl SphericalProjector {
    pub fn new(basis: BasisTruncation, quadrature: AngularQuadrature) -> Self {
        let tables = quadrature
            .cos_theta()
            .iter()
            .zip(quadrature.sin_theta())
            .map(|(&c, &s)| LegendreTable::new(basis.l_max, c, s))
            .collect();
        let l_max = basis.l_max as i32;
        let mut twiddles = Vec::with_capacity((2 * l_max as usize + 1) * quadrature.n_phi);
        for m in -l_max..=l_max {
            for j in 0..quadrature.n_phi {
                twiddles.push(Complex64::from_polar(1.0, -(m as f64) * quadrature.phi(j)));
            }
        }
        SphericalProjector {
            basis,
            quadrature,
            tables,
            twiddles,
        }
    }

    pub fn legendre(&self, theta_index: usize) -> &LegendreTable {
        &self.tables[theta_index]
    }

    /// Y_lm at node (i, j).
    pub fn ylm_at(&self, idx: BasisIndex, i: usize, j: usize) -> Complex64 {
        let p = self.tables[i].get(idx.l, idx.m.unsigned_abs());
        let tw = self.twiddle(idx.m, j).conj();
        tw * (cs_sign(idx.m) * p)
    }

    /// ∂_θ Y_lm at node (i, j).
    pub fn dtheta_ylm_at(&self, idx: BasisIndex, i: usize, j: usize) -> Complex64 {
        let q = &self.quadrature;
        let d = self.tables[i].sin_dtheta(idx.l, idx.m.unsigned_abs(), q.cos_theta()[i]) / q.sin_theta()[i];
        self.twiddle(idx.m, j).conj() * (cs_sign(idx.m) * d)
    }

    fn twiddle(&self, m: i32, j: usize) -> Complex64 {
        let row = (m + self.basis.l_max as i32) as usize;
        self.twiddles[row * self.quadrature.n_phi + j]
    }

    pub fn sample_basis(&self, idx: BasisIndex) -> SphereSamples {
        let q = &self.quadrature;
        let mut values = Vec::with_capacity(q.n_nodes());
        for i in 0..q.n_theta() {
            for j in 0..q.n_phi {
                values.push(self.ylm_at(idx, i, j));
            }
        }
        SphereSamples {
            n_theta: q.n_theta(),
            n_phi: q.n_phi,
            values,
        }
    }

    /// Coefficients ⟨Y_lm, f⟩ in flat-index order.
    pub fn project(&self, f: &SphereSamples) -> Result<Vec<Complex64>> {
        let q = &self.quadrature;
        if !f.matches(q) {
            return Err(invalid("samples were not taken on this quadrature grid"));
        }
        let l_max = self.basis.l_max as i32;
        let n_m = (2 * l_max + 1) as usize;
        // φ sums first: fhat[i][m] = (2π/n_φ) Σ_j e^{-imφ_j} f(i, j)
        let mut fhat = vec![Complex64::new(0.0, 0.0); q.n_theta() * n_m];
        for i in 0..q.n_theta() {
            let row = &f.values[i * q.n_phi..(i + 1) * q.n_phi];
            for mi in 0..n_m {
                let tw = &self.twiddles[mi * q.n_phi..(mi + 1) * q.n_phi];
                let s: Complex64 = row.iter().zip(tw).map(|(v, t)| v * t).sum();
                fhat[i * n_m + mi] = s * q.phi_weight();
            }
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.basis.dim()];
        for idx in self.basis.indices() {
            let mi = (idx.m + l_max) as usize;
            let mabs = idx.m.unsigned_abs();
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, w) in q.theta_weights.iter().enumerate() {
                acc += fhat[i * n_m + mi] * (w * self.tables[i].get(idx.l, mabs));
            }
            out[idx.flat()] = acc * cs_sign(idx.m);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for (nt, np) in [(2, 4), (5, 3), (21, 42), (40, 7)] {
            let q = build_quadrature(nt, np).unwrap();
            let s: f64 = q.theta_weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-14);
            assert!(q.theta_nodes.iter().all(|&t| t > 0.0 && t < PI));
        }
    }

    #[test]
    fn two_point_rule() {
        let q = build_quadrature(2, 4).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert!((q.cos_theta()[0] - s).abs() < 1e-15);
        assert!((q.cos_theta()[1] + s).abs() < 1e-15);
        assert!((q.theta_weights[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cos_squared_integral() {
        let q = build_quadrature(16, 8).unwrap();
        let v = q.integrate(|t, _| Complex64::new(t.cos().powi(2), 0.0));
        assert!((v.re - 4.0 * PI / 3.0).abs() < 1e-13);
    }

    #[test]
    fn phi_rule_exact_for_exponentials() {
        let q = build_quadrature(2, 9).unwrap();
        for k in -8i32..=8 {
            let s: Complex64 = (0..q.n_phi)
                .map(|j| Complex64::from_polar(q.phi_weight(), k as f64 * q.phi(j)))
                .sum();
            let want = if k == 0 { 2.0 * PI } else { 0.0 };
            assert!((s - want).norm() < 1e-13, "k={k}");
        }
    }

    #[test]
    fn rejects_small_rules() {
        assert!(build_quadrature(1, 4).is_err());
        assert!(build_quadrature(4, 1).is_err());
    }

    #[test]
    fn flat_index_bijection() {
        let basis = BasisTruncation::new(12);
        for (k, idx) in basis.indices().enumerate() {
            assert_eq!(idx.flat(), k);
            assert!(idx.m.unsigned_abs() <= idx.l);
        }
        assert_eq!(basis.dim(), 169);
        assert_eq!(basis.interior_dim(2), 121);
        assert_eq!(basis.interior_dim(13), 0);
    }

    #[test]
    fn closed_form_harmonics() {
        let y00 = eval_ylm(BasisIndex::new(0, 0).unwrap(), 1.3, 0.4).unwrap();
        assert!((y00.re - 0.282_094_791_773_878_14).abs() < 1e-15 && y00.im == 0.0);
        let y10 = eval_ylm(BasisIndex::new(1, 0).unwrap(), 0.0, 0.0).unwrap();
        assert!((y10.re - (3.0 / (4.0 * PI)).sqrt()).abs() < 1e-15);
        // Y_11 = -√(3/8π) sinθ e^{iφ}
        let (t, p) = (0.7, 1.1);
        let y11 = eval_ylm(BasisIndex::new(1, 1).unwrap(), t, p).unwrap();
        let want = Complex64::from_polar(-(3.0 / (8.0 * PI)).sqrt() * t.sin(), p);
        assert!((y11 - want).norm() < 1e-15);
        // Y_20 = √(5/16π)(3cos²θ − 1)
        let y20 = eval_ylm(BasisIndex::new(2, 0).unwrap(), t, p).unwrap();
        let want = (5.0 / (16.0 * PI)).sqrt() * (3.0 * t.cos().powi(2) - 1.0);
        assert!((y20.re - want).abs() < 1e-15);
    }

    #[test]
    fn invalid_arguments() {
        assert!(BasisIndex::new(1, 2).is_err());
        assert!(eval_ylm(BasisIndex { l: 1, m: -3 }, 0.5, 0.0).is_err());
        assert!(eval_ylm(BasisIndex { l: 1, m: 0 }, 3.5, 0.0).is_err());
    }

    #[test]
    fn orthonormality_matrix() {
        let l_max = 10u32;
        let basis = BasisTruncation::new(l_max);
        let q = build_quadrature(l_max as usize + 1, 2 * l_max as usize + 1).unwrap();
        let proj = SphericalProjector::new(basis, q);
        let mut frob = 0.0;
        for idx in basis.indices() {
            let coeffs = proj.project(&proj.sample_basis(idx)).unwrap();
            for (k, c) in coeffs.iter().enumerate() {
                let want = if k == idx.flat() { 1.0 } else { 0.0 };
                frob += (c - want).norm_sqr();
            }
        }
        assert!(frob.sqrt() < 1e-12, "frobenius {}", frob.sqrt());
    }

    #[test]
    fn inner_products() {
        let q = build_quadrature(4, 5).unwrap();
        let y00 = BasisIndex::new(0, 0).unwrap();
        let y10 = BasisIndex::new(1, 0).unwrap();
        let f00 = SphereSamples::from_fn(&q, |t, p| eval_ylm(y00, t, p).unwrap());
        let f10 = SphereSamples::from_fn(&q, |t, p| eval_ylm(y10, t, p).unwrap());
        let c00 = SphereSamples::from_fn(&q, |t, p| eval_ylm(y00, t, p).unwrap() * t.cos());
        assert!((inner_product(&f00, &f00, &q).unwrap() - 1.0).norm() < 1e-14);
        assert!(inner_product(&f10, &f00, &q).unwrap().norm() < 1e-13);
        let g = inner_product(&c00, &f10, &q).unwrap();
        assert!((g - 1.0 / 3f64.sqrt()).norm() < 1e-12);

        let other = build_quadrature(5, 5).unwrap();
        let wrong = SphereSamples::from_fn(&other, |_, _| Complex64::new(1.0, 0.0));
        assert!(inner_product(&wrong, &f00, &q).is_err());
    }

    #[test]
    fn inner_product_is_conjugate_linear_in_first_slot() {
        let q = build_quadrature(6, 7).unwrap();
        let idx = BasisIndex::new(2, 1).unwrap();
        let f = SphereSamples::from_fn(&q, |t, p| eval_ylm(idx, t, p).unwrap());
        let alpha = Complex64::new(0.3, -1.7);
        let scaled = SphereSamples {
            values: f.values.iter().map(|v| v * alpha).collect(),
            ..f.clone()
        };
        let a = inner_product(&scaled, &f, &q).unwrap();
        let b = inner_product(&f, &f, &q).unwrap() * alpha.conj();
        assert!((a - b).norm() < 1e-13);
    }

    #[test]
    fn theta_derivative_matches_finite_difference() {
        let (t, h) = (0.9, 1e-5);
        for l in 0..6u32 {
            for m in 0..=l {
                let c = |x: f64| LegendreTable::new(l, x.cos(), x.sin()).get(l, m);
                let fd = (c(t + h) - c(t - h)) / (2.0 * h);
                let tab = LegendreTable::new(l, t.cos(), t.sin());
                let an = tab.sin_dtheta(l, m, t.cos()) / t.sin();
                assert!((fd - an).abs() < 1e-8, "l={l} m={m}: {fd} vs {an}");
            }
        }
    }
}
