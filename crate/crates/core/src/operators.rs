//! Dense matrices of L_i, the direction cosines x_i/r, and the scaled
//! geometric momentum rΠ_i on a truncated spherical-harmonic basis.
//!
//! All angular operators are expressed in units of ħ. Rows are bras and
//! columns kets, both in [`BasisIndex::flat`] order.
//!
//! Multiplication operators such as x_i/r couple shell l to l ± 1, so the
//! projection of a product onto the truncated basis misses the states just
//! above l_max. Every matrix records how many of its top shells may carry
//! such truncation error (`contaminated_shells`); algebra checks compare
//! only the interior block below them.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::angular::{AngularQuadrature, BasisIndex, BasisTruncation, SphereSamples, SphericalProjector};
use crate::error::{invalid, Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Cartesian component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// The pair (j, k) completing this axis to a cyclic triple (i, j, k).
    pub fn cyclic(self) -> (Axis, Axis) {
        match self {
            Axis::X => (Axis::Y, Axis::Z),
            Axis::Y => (Axis::Z, Axis::X),
            Axis::Z => (Axis::X, Axis::Y),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Levi-Civita symbol ε_ijk.
pub fn levi_civita(i: Axis, j: Axis, k: Axis) -> f64 {
    let idx = |a: Axis| match a {
        Axis::X => 0i32,
        Axis::Y => 1,
        Axis::Z => 2,
    };
    let (a, b, c) = (idx(i), idx(j), idx(k));
    ((a - b) * (b - c) * (c - a)) as f64 / 2.0
}

#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    pub data: DMatrix<Complex64>,
    pub basis: BasisTruncation,
    pub name: String,
    pub hermitian: bool,
    pub contaminated_shells: u32,
}

impl OperatorMatrix {
    pub fn zeros(basis: BasisTruncation, name: impl Into<String>) -> Self {
        let n = basis.dim();
        OperatorMatrix {
            data: DMatrix::from_element(n, n, ZERO),
            basis,
            name: name.into(),
            hermitian: true,
            contaminated_shells: 0,
        }
    }

    pub fn identity(basis: BasisTruncation) -> Self {
        let n = basis.dim();
        OperatorMatrix {
            data: DMatrix::identity(n, n),
            ..OperatorMatrix::zeros(basis, "1")
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// ⟨bra| A |ket⟩.
    pub fn element(&self, bra: BasisIndex, ket: BasisIndex) -> Complex64 {
        self.data[(bra.flat(), ket.flat())]
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        OperatorMatrix {
            data: self.data.map(|z| z * factor),
            name: format!("({factor})*{}", self.name),
            hermitian: self.hermitian && factor.im == 0.0,
            ..self.clone()
        }
    }

    pub fn adjoint(&self) -> Self {
        OperatorMatrix {
            data: self.data.adjoint(),
            name: format!("{}^H", self.name),
            ..self.clone()
        }
    }

    /// Frobenius norm over the block l ≤ l_max − shells.
    pub fn interior_norm(&self, shells: u32) -> f64 {
        let n = self.basis.interior_dim(shells);
        let mut acc = 0.0;
        for c in 0..n {
            for r in 0..n {
                acc += self.data[(r, c)].norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Largest entry modulus over the block l ≤ l_max − shells.
    pub fn interior_max_abs(&self, shells: u32) -> f64 {
        let n = self.basis.interior_dim(shells);
        self.data
            .view((0, 0), (n, n))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Frobenius norm over the uncontaminated block of this matrix.
    pub fn clean_norm(&self) -> f64 {
        self.interior_norm(self.contaminated_shells)
    }

    /// Largest |A − A^H| entry on the interior block.
    pub fn hermiticity_defect(&self, shells: u32) -> f64 {
        let n = self.basis.interior_dim(shells);
        let mut worst: f64 = 0.0;
        for c in 0..n {
            for r in 0..=c {
                worst = worst.max((self.data[(r, c)] - self.data[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// Copy of the interior block l ≤ l_max − shells.
    pub fn interior_block(&self, shells: u32) -> DMatrix<Complex64> {
        let n = self.basis.interior_dim(shells);
        self.data.view((0, 0), (n, n)).into_owned()
    }

    /// Matrix product that skips structural zeros of the right factor.
    fn product(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        same_basis(self, rhs)?;
        let n = self.dim();
        let mut out = DMatrix::from_element(n, n, ZERO);
        for j in 0..n {
            for k in 0..n {
                let b = rhs.data[(k, j)];
                if b == ZERO {
                    continue;
                }
                for i in 0..n {
                    let a = self.data[(i, k)];
                    if a != ZERO {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(OperatorMatrix {
            data: out,
            basis: self.basis,
            name: format!("{}*{}", self.name, rhs.name),
            hermitian: false,
            contaminated_shells: self.contaminated_shells + rhs.contaminated_shells,
        })
    }

    fn combine(&self, rhs: &OperatorMatrix, sign: f64, op: char) -> Result<OperatorMatrix> {
        same_basis(self, rhs)?;
        Ok(OperatorMatrix {
            data: &self.data + rhs.data.map(|z| z * sign),
            basis: self.basis,
            name: format!("{}{op}{}", self.name, rhs.name),
            hermitian: self.hermitian && rhs.hermitian,
            contaminated_shells: self.contaminated_shells.max(rhs.contaminated_shells),
        })
    }

    pub fn try_add(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.combine(rhs, 1.0, '+')
    }

    pub fn try_sub(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.combine(rhs, -1.0, '-')
    }

    pub fn try_mul(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.product(rhs)
    }

    /// Nonzero entries as (bra, ket, value), column-major order of kets.
    pub fn nonzero_elements(&self, threshold: f64) -> Vec<(BasisIndex, BasisIndex, Complex64)> {
        let mut out = Vec::new();
        for bra in self.basis.indices() {
            for ket in self.basis.indices() {
                let z = self.element(bra, ket);
                if z.norm() > threshold {
                    out.push((bra, ket, z));
                }
            }
        }
        out
    }
}

fn same_basis(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<()> {
    if a.basis != b.basis {
        return Err(invalid(format!(
            "basis mismatch: {} has l_max={}, {} has l_max={}",
            a.name, a.basis.l_max, b.name, b.basis.l_max
        )));
    }
    Ok(())
}

// Operator sugar for code that already knows the bases agree.
impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn add(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.try_add(rhs).expect("operator bases differ")
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn sub(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.try_sub(rhs).expect("operator bases differ")
    }
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.product(rhs).expect("operator bases differ")
    }
}

impl Mul<Complex64> for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: Complex64) -> OperatorMatrix {
        self.scaled(rhs)
    }
}

/// [A, B] = AB − BA.
pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    let ab = a.try_mul(b)?;
    let ba = b.try_mul(a)?;
    let mut c = ab.try_sub(&ba)?;
    c.name = format!("[{},{}]", a.name, b.name);
    c.contaminated_shells = a.contaminated_shells + b.contaminated_shells;
    c.hermitian = false;
    Ok(c)
}

fn ladder_coeff(l: i32, m: i32, raise: bool) -> f64 {
    let (l, m) = (l as f64, m as f64);
    if raise {
        ((l - m) * (l + m + 1.0)).sqrt()
    } else {
        ((l + m) * (l - m + 1.0)).sqrt()
    }
}

/// Exact L_i from the ladder construction.
pub fn build_angular_momentum(axis: Axis, basis: BasisTruncation) -> OperatorMatrix {
    let mut op = OperatorMatrix::zeros(basis, format!("L{axis}"));
    for ket in basis.indices() {
        let (l, m) = (ket.l as i32, ket.m);
        let col = ket.flat();
        match axis {
            Axis::Z => op.data[(col, col)] = Complex64::new(m as f64, 0.0),
            Axis::X | Axis::Y => {
                // L_x = (L+ + L-)/2, L_y = (L+ − L-)/(2i)
                if m < l {
                    let up = BasisIndex { l: ket.l, m: m + 1 }.flat();
                    let c = 0.5 * ladder_coeff(l, m, true);
                    op.data[(up, col)] = match axis {
                        Axis::X => Complex64::new(c, 0.0),
                        _ => Complex64::new(0.0, -c),
                    };
                }
                if m > -l {
                    let down = BasisIndex { l: ket.l, m: m - 1 }.flat();
                    let c = 0.5 * ladder_coeff(l, m, false);
                    op.data[(down, col)] = match axis {
                        Axis::X => Complex64::new(c, 0.0),
                        _ => Complex64::new(0.0, c),
                    };
                }
            }
        }
    }
    op
}

/// Ladder operators L_+ (raise = true) or L_-.
fn build_ladder(basis: BasisTruncation, raise: bool) -> OperatorMatrix {
    let mut op = OperatorMatrix::zeros(basis, if raise { "L+" } else { "L-" });
    op.hermitian = false;
    for ket in basis.indices() {
        let (l, m) = (ket.l as i32, ket.m);
        let target = if raise { m + 1 } else { m - 1 };
        if target.abs() <= l {
            let bra = BasisIndex { l: ket.l, m: target }.flat();
            op.data[(bra, ket.flat())] = Complex64::new(ladder_coeff(l, m, raise), 0.0);
        }
    }
    op
}

/// cosθ from the three-term recursion
/// cosθ Y_lm = a_lm Y_{l+1,m} + a_{l−1,m} Y_{l−1,m},
/// a_lm = √(((l+1)² − m²)/((2l+1)(2l+3))).
fn cos_theta_recursion(basis: BasisTruncation) -> OperatorMatrix {
    let mut op = OperatorMatrix::zeros(basis, "erz");
    for ket in basis.indices() {
        if ket.l == basis.l_max {
            continue;
        }
        let (l, m) = (ket.l as f64, ket.m as f64);
        let a = (((l + 1.0).powi(2) - m * m) / ((2.0 * l + 1.0) * (2.0 * l + 3.0))).sqrt();
        let up = BasisIndex { l: ket.l + 1, m: ket.m }.flat();
        op.data[(up, ket.flat())] = Complex64::new(a, 0.0);
        op.data[(ket.flat(), up)] = Complex64::new(a, 0.0);
    }
    op
}

/// Direction cosines from the cosθ recursion and the commutators
/// n_+ = −[L_+, n_z], n_- = [L_-, n_z]. Both products are exact on the
/// truncated basis since L is block diagonal in l.
pub fn direction_cosine_recursion(axis: Axis, basis: BasisTruncation) -> OperatorMatrix {
    let nz = cos_theta_recursion(basis);
    let mut op = match axis {
        Axis::Z => nz,
        Axis::X | Axis::Y => {
            let n_plus = commutator(&build_ladder(basis, true), &nz)
                .expect("same basis")
                .scaled(Complex64::new(-1.0, 0.0));
            let n_minus = commutator(&build_ladder(basis, false), &nz).expect("same basis");
            if axis == Axis::X {
                (&n_plus + &n_minus).scaled(Complex64::new(0.5, 0.0))
            } else {
                (&n_plus - &n_minus).scaled(Complex64::new(0.0, -0.5))
            }
        }
    };
    op.name = format!("er{axis}");
    op.hermitian = true;
    op.contaminated_shells = 1;
    op
}

fn direction_component(axis: Axis, theta: f64, phi: f64) -> f64 {
    match axis {
        Axis::X => theta.sin() * phi.cos(),
        Axis::Y => theta.sin() * phi.sin(),
        Axis::Z => theta.cos(),
    }
}

/// Project `apply(ket, i, j)` (the operator applied to Y_ket, sampled at
/// node (i, j)) onto every bra.
fn project_operator<F>(proj: &SphericalProjector, name: String, apply: F) -> Result<OperatorMatrix>
where
    F: Fn(BasisIndex, usize, usize) -> Complex64,
{
    let basis = proj.basis;
    let q = &proj.quadrature;
    let mut op = OperatorMatrix::zeros(basis, name);
    for ket in basis.indices() {
        let mut values = Vec::with_capacity(q.n_nodes());
        for i in 0..q.n_theta() {
            for j in 0..q.n_phi {
                values.push(apply(ket, i, j));
            }
        }
        let samples = SphereSamples {
            n_theta: q.n_theta(),
            n_phi: q.n_phi,
            values,
        };
        let col = proj.project(&samples)?;
        for (row, z) in col.into_iter().enumerate() {
            op.data[(row, ket.flat())] = z;
        }
    }
    Ok(op)
}

fn max_abs_difference(a: &OperatorMatrix, b: &OperatorMatrix) -> f64 {
    a.data
        .iter()
        .zip(b.data.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Tolerance of the internal consistency checks on quadrature builds.
pub const BUILD_CHECK_TOLERANCE: f64 = 1e-10;

/// ⟨l'm'| x_i/r |lm⟩ by quadrature, checked against the recursion.
pub fn build_direction_cosine(
    axis: Axis,
    basis: BasisTruncation,
    q: &AngularQuadrature,
) -> Result<OperatorMatrix> {
    let proj = SphericalProjector::new(basis, q.clone());
    build_direction_cosine_with(axis, &proj)
}

fn build_direction_cosine_with(axis: Axis, proj: &SphericalProjector) -> Result<OperatorMatrix> {
    let q = &proj.quadrature;
    let phis = q.phi_nodes();
    let mut op = project_operator(proj, format!("er{axis}"), |ket, i, j| {
        proj.ylm_at(ket, i, j) * direction_component(axis, q.theta_nodes[i], phis[j])
    })?;
    op.hermitian = true;
    op.contaminated_shells = 1;
    let reference = direction_cosine_recursion(axis, proj.basis);
    let deviation = max_abs_difference(&op, &reference);
    if deviation > BUILD_CHECK_TOLERANCE {
        return Err(Error::Accuracy {
            what: format!(
                "direction cosine er{axis} on a {}x{} rule disagrees with the cos-theta recursion",
                q.n_theta(),
                q.n_phi
            ),
            deviation,
            tolerance: BUILD_CHECK_TOLERANCE,
        });
    }
    Ok(op)
}

/// rΠ = L × e_r − iħ e_r, from the exact L matrices and quadrature e_r.
pub fn build_geometric_momentum(
    axis: Axis,
    basis: BasisTruncation,
    q: &AngularQuadrature,
) -> Result<OperatorMatrix> {
    let (j, k) = axis.cyclic();
    let lj = build_angular_momentum(j, basis);
    let lk = build_angular_momentum(k, basis);
    let nj = build_direction_cosine(j, basis, q)?;
    let nk = build_direction_cosine(k, basis, q)?;
    let ni = build_direction_cosine(axis, basis, q)?;
    geometric_momentum_from_parts(axis, &lj, &lk, &nj, &nk, &ni)
}

fn geometric_momentum_from_parts(
    axis: Axis,
    lj: &OperatorMatrix,
    lk: &OperatorMatrix,
    nj: &OperatorMatrix,
    nk: &OperatorMatrix,
    ni: &OperatorMatrix,
) -> Result<OperatorMatrix> {
    // (L × n)_i = L_j n_k − L_k n_j
    let cross = lj.try_mul(nk)?.try_sub(&lk.try_mul(nj)?)?;
    let mut op = cross.try_sub(&ni.scaled(I))?;
    op.name = format!("rPi{axis}");
    op.hermitian = true;
    op.contaminated_shells = 1;
    Ok(op)
}

/// rΠ_i from the differential operators applied to each Y_lm, then projected.
///
///   rΠ_x = −iħ(cosθ cosφ ∂_θ − (sinφ/sinθ) ∂_φ − sinθ cosφ)
///   rΠ_y = −iħ(cosθ sinφ ∂_θ + (cosφ/sinθ) ∂_φ − sinθ sinφ)
///   rΠ_z =  iħ(sinθ ∂_θ + cosθ)
pub fn build_geometric_momentum_direct(
    axis: Axis,
    basis: BasisTruncation,
    q: &AngularQuadrature,
) -> Result<OperatorMatrix> {
    let proj = SphericalProjector::new(basis, q.clone());
    build_geometric_momentum_direct_with(axis, &proj)
}

fn build_geometric_momentum_direct_with(axis: Axis, proj: &SphericalProjector) -> Result<OperatorMatrix> {
    let q = &proj.quadrature;
    let phis = q.phi_nodes();
    let mut op = project_operator(proj, format!("rPi{axis}"), |ket, i, j| {
        let (ct, st) = (q.cos_theta()[i], q.sin_theta()[i]);
        let (cp, sp) = (phis[j].cos(), phis[j].sin());
        let y = proj.ylm_at(ket, i, j);
        let dy = proj.dtheta_ylm_at(ket, i, j);
        let dphi_y = y * Complex64::new(0.0, ket.m as f64);
        match axis {
            Axis::X => -I * (dy * (ct * cp) - dphi_y * (sp / st) - y * (st * cp)),
            Axis::Y => -I * (dy * (ct * sp) + dphi_y * (cp / st) - y * (st * sp)),
            Axis::Z => I * (dy * st + y * ct),
        }
    })?;
    op.hermitian = true;
    op.contaminated_shells = 1;
    // The projection of a self-adjoint operator is hermitian only when the
    // rule resolves every product exactly.
    let deviation = op.hermiticity_defect(0);
    if deviation > BUILD_CHECK_TOLERANCE {
        return Err(Error::Accuracy {
            what: format!(
                "direct rPi{axis} on a {}x{} rule is not hermitian",
                q.n_theta(),
                q.n_phi
            ),
            deviation,
            tolerance: BUILD_CHECK_TOLERANCE,
        });
    }
    Ok(op)
}

/// Every operator of the algebra on one basis, sharing one projector.
#[derive(Debug, Clone)]
pub struct OperatorSet {
    pub basis: BasisTruncation,
    pub l: [OperatorMatrix; 3],
    pub er: [OperatorMatrix; 3],
    pub rpi: [OperatorMatrix; 3],
}

impl OperatorSet {
    pub fn build(basis: BasisTruncation, q: &AngularQuadrature) -> Result<Self> {
        let proj = SphericalProjector::new(basis, q.clone());
        let l = Axis::ALL.map(|a| build_angular_momentum(a, basis));
        let er = [
            build_direction_cosine_with(Axis::X, &proj)?,
            build_direction_cosine_with(Axis::Y, &proj)?,
            build_direction_cosine_with(Axis::Z, &proj)?,
        ];
        let mut rpi = Vec::with_capacity(3);
        for axis in Axis::ALL {
            let (j, k) = axis.cyclic();
            rpi.push(geometric_momentum_from_parts(
                axis,
                &l[axis_index(j)],
                &l[axis_index(k)],
                &er[axis_index(j)],
                &er[axis_index(k)],
                &er[axis_index(axis)],
            )?);
        }
        let rpi: [OperatorMatrix; 3] = rpi.try_into().expect("three components");
        Ok(OperatorSet { basis, l, er, rpi })
    }

    pub fn angular_momentum(&self, axis: Axis) -> &OperatorMatrix {
        &self.l[axis_index(axis)]
    }

    pub fn direction_cosine(&self, axis: Axis) -> &OperatorMatrix {
        &self.er[axis_index(axis)]
    }

    pub fn geometric_momentum(&self, axis: Axis) -> &OperatorMatrix {
        &self.rpi[axis_index(axis)]
    }
}

pub(crate) fn axis_index(a: Axis) -> usize {
    match a {
        Axis::X => 0,
        Axis::Y => 1,
        Axis::Z => 2,
    }
}

/// Connected components of the nonzero pattern of a square matrix.
fn blocks(m: &DMatrix<Complex64>) -> Vec<Vec<usize>> {
    let n = m.nrows();
    let mut label = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        label[start] = id;
        let mut cursor = 0;
        while cursor < members.len() {
            let r = members[cursor];
            cursor += 1;
            for c in 0..n {
                if label[c] == usize::MAX && (m[(r, c)] != ZERO || m[(c, r)] != ZERO) {
                    label[c] = id;
                    members.push(c);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// exp(−i·angle·G) for a hermitian G, block by block.
pub fn unitary_from_generator(generator: &OperatorMatrix, angle: f64) -> Result<DMatrix<Complex64>> {
    let defect = generator.hermiticity_defect(0);
    if defect > 1e-12 {
        return Err(invalid(format!(
            "rotation generator {} is not hermitian (defect {defect:e})",
            generator.name
        )));
    }
    let n = generator.dim();
    let mut u = DMatrix::from_element(n, n, ZERO);
    for members in blocks(&generator.data) {
        let k = members.len();
        let sub = DMatrix::from_fn(k, k, |r, c| generator.data[(members[r], members[c])]);
        let eig = SymmetricEigen::new(sub);
        let phases = DMatrix::from_diagonal(
            &eig.eigenvalues
                .map(|lambda| Complex64::from_polar(1.0, -angle * lambda)),
        );
        let block = &eig.eigenvectors * phases * eig.eigenvectors.adjoint();
        for r in 0..k {
            for c in 0..k {
                u[(members[r], members[c])] = block[(r, c)];
            }
        }
    }
    Ok(u)
}

/// exp(−i·angle·G) · A · exp(+i·angle·G) for an arbitrary hermitian G.
pub fn rotation_conjugate_by(
    generator: &OperatorMatrix,
    angle: f64,
    a: &OperatorMatrix,
) -> Result<OperatorMatrix> {
    same_basis(generator, a)?;
    let u = unitary_from_generator(generator, angle)?;
    if angle == 0.0 {
        return Ok(a.clone());
    }
    let u_op = OperatorMatrix {
        data: u,
        basis: a.basis,
        name: "U".into(),
        hermitian: false,
        contaminated_shells: 0,
    };
    let u_dag = u_op.adjoint();
    let mut out = u_op.try_mul(a)?.try_mul(&u_dag)?;
    out.name = format!("R{}({angle})[{}]", generator.name, a.name);
    out.hermitian = a.hermitian;
    out.contaminated_shells = a.contaminated_shells;
    Ok(out)
}

/// exp(−i·angle·L_axis/ħ) · A · exp(+i·angle·L_axis/ħ).
pub fn rotation_conjugate(axis: Axis, angle: f64, a: &OperatorMatrix) -> Result<OperatorMatrix> {
    rotation_conjugate_by(&build_angular_momentum(axis, a.basis), angle, a)
}

/// Eigenvalues of the interior block of a hermitian matrix, ascending.
pub fn interior_eigenvalues(a: &OperatorMatrix, shells: u32) -> Vec<f64> {
    let block = a.interior_block(shells);
    let mut ev: Vec<f64> = SymmetricEigen::new(block).eigenvalues.iter().copied().collect();
    ev.sort_by(|x, y| x.total_cmp(y));
    ev
}
