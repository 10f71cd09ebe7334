//! The residual table behind `radmom verify`.
//!
//! Each check reduces one identity to a single non-negative residual and
//! compares it with a tolerance. Tolerances are multiplied by a global
//! scale, except for lower bounds, which assert that something fails.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::angular::{build_quadrature, AngularQuadrature, BasisIndex, BasisTruncation, SphericalProjector};
use crate::distribution::{trapezoid, DistributionCurve};
use crate::error::{invalid, Result};
use crate::hydrogen::{
    closed_form, expectation_inverse_r, marginal_pz, momentum_amplitudes, momentum_normalization,
    radial_norm, HydrogenState,
};
use crate::identities::{
    corpus, decomposition_residual, definition_closure_residual, gradient_consistency_residual,
    lz_eigenfunction_residual, pr_squared_residual, rpi_z_eigenfunction_residual, sample_points,
    symmetrized_decomposition_residual, transversality_residual, PThetaVariant, SpherePoint,
};
use crate::operators::{
    build_geometric_momentum_direct, commutator, interior_eigenvalues, levi_civita,
    rotation_conjugate, Axis, OperatorMatrix, OperatorSet,
};
use crate::transforms::{
    combined_z_distribution, density_crossings, density_difference, expand_state_in_gamma,
    pi_z_density, q00_analytic, q_coeff_many, q_coeff_raw, GammaGrid, RAW_TO_NORMALIZED,
};

pub const DEFAULT_LMAX: u32 = 20;
/// Sample points per corpus field in the pointwise sweeps.
pub const DEFAULT_POINTS: usize = 64;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub l_max: u32,
    pub n_theta: usize,
    pub n_phi: usize,
    pub gamma: GammaGrid,
    pub tolerance_scale: f64,
    pub points: usize,
}

impl VerifyConfig {
    /// Smallest rule that is exact for products of two basis functions
    /// with one direction cosine.
    pub fn minimum_quadrature(l_max: u32) -> (usize, usize) {
        (l_max as usize + 1, 2 * l_max as usize + 2)
    }

    pub fn with_lmax(l_max: u32) -> Result<Self> {
        let (n_theta, n_phi) = Self::minimum_quadrature(l_max);
        Ok(VerifyConfig {
            l_max,
            n_theta,
            n_phi,
            gamma: GammaGrid::default_grid()?,
            tolerance_scale: 1.0,
            points: DEFAULT_POINTS,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.l_max < 2 {
            return Err(invalid(format!(
                "l_max must be at least 2 so the interior block is non-empty, got {}",
                self.l_max
            )));
        }
        let (nt, np) = Self::minimum_quadrature(self.l_max);
        if self.n_theta < nt || self.n_phi < np {
            return Err(invalid(format!(
                "quadrature {}x{} is too small for l_max={}; need at least {nt}x{np}",
                self.n_theta, self.n_phi, self.l_max
            )));
        }
        if !(self.tolerance_scale > 0.0 && self.tolerance_scale.is_finite()) {
            return Err(invalid(format!(
                "tolerance scale must be positive, got {}",
                self.tolerance_scale
            )));
        }
        if self.points == 0 {
            return Err(invalid("need at least one sample point"));
        }
        Ok(())
    }
}

/// How a residual is compared with its tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// residual ≤ tolerance
    AtMost,
    /// residual > tolerance; used where an identity must visibly fail.
    Exceeds,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub id: String,
    pub identity: String,
    pub residual: f64,
    pub tolerance: f64,
    pub bound: Bound,
    pub pass: bool,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// CSV table `check_id,identity,residual,tolerance,pass`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check_id,identity,residual,tolerance,pass\n");
        for c in &self.checks {
            let tol = match c.bound {
                Bound::AtMost => format!("{:e}", c.tolerance),
                Bound::Exceeds => format!(">{:e}", c.tolerance),
            };
            let _ = writeln!(
                out,
                "{},\"{}\",{:e},{},{}",
                c.id,
                c.identity,
                c.residual,
                tol,
                if c.pass { "PASS" } else { "FAIL" }
            );
        }
        out
    }
}

struct Recorder {
    scale: f64,
    checks: Vec<Check>,
}

impl Recorder {
    fn at_most(&mut self, id: impl Into<String>, identity: impl Into<String>, residual: f64, tolerance: f64) {
        let tolerance = tolerance * self.scale;
        self.checks.push(Check {
            id: id.into(),
            identity: identity.into(),
            residual,
            tolerance,
            pass: residual <= tolerance,
            bound: Bound::AtMost,
        });
    }

    fn exceeds(&mut self, id: impl Into<String>, identity: impl Into<String>, residual: f64, floor: f64) {
        self.checks.push(Check {
            id: id.into(),
            identity: identity.into(),
            residual,
            tolerance: floor,
            pass: residual > floor,
            bound: Bound::Exceeds,
        });
    }
}

/// Run every suite and collect the residual table.
pub fn run(cfg: &VerifyConfig) -> Result<Report> {
    cfg.validate()?;
    let mut rec = Recorder {
        scale: cfg.tolerance_scale,
        checks: Vec::new(),
    };
    let q = build_quadrature(cfg.n_theta, cfg.n_phi)?;
    let basis = BasisTruncation::new(cfg.l_max);
    angular_checks(&mut rec, basis, &q)?;
    operator_checks(&mut rec, basis, &q)?;
    identity_checks(&mut rec, cfg.points)?;
    let pz = marginal_pz(&HydrogenState::ground(), &cfg.gamma.values)?;
    hydrogen_checks(&mut rec, &pz)?;
    transform_checks(&mut rec, &cfg.gamma, &pz)?;
    Ok(Report { checks: rec.checks })
}

fn angular_checks(rec: &mut Recorder, basis: BasisTruncation, q: &AngularQuadrature) -> Result<()> {
    let wsum: f64 = q.theta_weights.iter().sum();
    rec.at_most("quad.weight_sum", "sum of theta weights = 2", (wsum - 2.0).abs(), 1e-14);

    let proj = SphericalProjector::new(basis, q.clone());
    let n = basis.dim();
    let samples: Vec<_> = basis.indices().map(|i| proj.sample_basis(i)).collect();
    let mut gram = 0.0;
    for (a, fa) in samples.iter().enumerate() {
        let coeffs = proj.project(fa)?;
        for (b, c) in coeffs.iter().enumerate().take(n) {
            let want = if a == b { 1.0 } else { 0.0 };
            gram += (c - want).norm_sqr();
        }
    }
    rec.at_most("ylm.orthonormal", "<Y_lm|Y_l'm'> = delta", gram.sqrt(), 1e-12);

    let mut conj_defect: f64 = 0.0;
    for idx in basis.indices().filter(|i| i.m > 0) {
        let neg = BasisIndex::new(idx.l, -idx.m)?;
        let sign = if idx.m % 2 == 0 { 1.0 } else { -1.0 };
        for i in 0..q.n_theta() {
            for j in 0..q.n_phi {
                let d = proj.ylm_at(idx, i, j).conj() - proj.ylm_at(neg, i, j) * sign;
                conj_defect = conj_defect.max(d.norm());
            }
        }
    }
    rec.at_most("ylm.conjugation", "conj(Y_lm) = (-1)^m Y_l,-m", conj_defect, 1e-14);
    Ok(())
}

fn residual_norm(lhs: &OperatorMatrix, rhs: &OperatorMatrix) -> Result<f64> {
    Ok(lhs.try_sub(rhs)?.clean_norm())
}

fn operator_checks(rec: &mut Recorder, basis: BasisTruncation, q: &AngularQuadrature) -> Result<()> {
    let ops = OperatorSet::build(basis, q)?;
    let tag = |a: Axis| a.label();

    // the nine so(3,1) commutation relations, one per cyclic pair
    for i in Axis::ALL {
        let (j, k) = i.cyclic();
        let eps = levi_civita(i, j, k);
        let c = commutator(ops.angular_momentum(i), ops.angular_momentum(j))?;
        let r = residual_norm(&c, &ops.angular_momentum(k).scaled(I * eps))?;
        rec.at_most(
            format!("algebra.L{}L{}", tag(i), tag(j)),
            format!("[L{0},L{1}] = i hbar L{2}", tag(i), tag(j), tag(k)),
            r,
            1e-10,
        );
        let c = commutator(ops.angular_momentum(i), ops.geometric_momentum(j))?;
        let r = residual_norm(&c, &ops.geometric_momentum(k).scaled(I * eps))?;
        rec.at_most(
            format!("algebra.L{}rPi{}", tag(i), tag(j)),
            format!("[L{0},rPi{1}] = i hbar rPi{2}", tag(i), tag(j), tag(k)),
            r,
            1e-10,
        );
        let c = commutator(ops.geometric_momentum(i), ops.geometric_momentum(j))?;
        let r = residual_norm(&c, &ops.angular_momentum(k).scaled(-I * eps))?;
        rec.at_most(
            format!("algebra.rPi{}rPi{}", tag(i), tag(j)),
            format!("[rPi{0},rPi{1}] = -i hbar L{2}", tag(i), tag(j), tag(k)),
            r,
            1e-10,
        );
    }
    for i in Axis::ALL {
        let c = commutator(ops.angular_momentum(i), ops.geometric_momentum(i))?;
        rec.at_most(
            format!("algebra.L{0}rPi{0}", tag(i)),
            format!("[L{0},rPi{0}] = 0", tag(i)),
            c.clean_norm(),
            1e-10,
        );
    }

    let mut unit = OperatorMatrix::identity(basis).scaled(Complex64::new(-1.0, 0.0));
    let mut trans = OperatorMatrix::zeros(basis, "transversality");
    for a in Axis::ALL {
        let n = ops.direction_cosine(a);
        let p = ops.geometric_momentum(a);
        unit = unit.try_add(&n.try_mul(n)?)?;
        trans = trans.try_add(&n.try_mul(p)?)?.try_add(&p.try_mul(n)?)?;
    }
    rec.at_most("er.unit_length", "sum_i (er_i)^2 = 1", unit.clean_norm(), 1e-12);
    rec.at_most("rpi.transversality", "sum_i {er_i, rPi_i} = 0", trans.clean_norm(), 1e-10);

    for a in Axis::ALL {
        let p = ops.geometric_momentum(a);
        rec.at_most(
            format!("rpi.hermitian.{}", tag(a)),
            format!("rPi{0} = rPi{0}^H", tag(a)),
            p.hermiticity_defect(p.contaminated_shells),
            1e-12,
        );
        let direct = build_geometric_momentum_direct(a, basis, q)?;
        rec.at_most(
            format!("rpi.direct.{}", tag(a)),
            format!("L x er - i hbar er = differential rPi{}", tag(a)),
            residual_norm(p, &direct)?,
            1e-10,
        );
    }

    let lz = ops.angular_momentum(Axis::Z);
    let lx = ops.angular_momentum(Axis::X);
    let ly = ops.angular_momentum(Axis::Y);
    // exact matrices on both sides: compared entry by entry
    let rot = rotation_conjugate(Axis::Y, PI / 2.0, lz)?;
    rec.at_most(
        "rotation.Lz_to_Lx",
        "exp(-i pi Ly/2) Lz exp(i pi Ly/2) = Lx (max entry)",
        rot.try_sub(lx)?.interior_max_abs(0),
        1e-12,
    );
    let rot = rotation_conjugate(Axis::X, -PI / 2.0, lz)?;
    rec.at_most(
        "rotation.Lz_to_Ly",
        "exp(i pi Lx/2) Lz exp(-i pi Lx/2) = Ly (max entry)",
        rot.try_sub(ly)?.interior_max_abs(0),
        1e-12,
    );
    let rpz = ops.geometric_momentum(Axis::Z);
    let rot = rotation_conjugate(Axis::Y, PI / 2.0, rpz)?;
    rec.at_most(
        "rotation.rPiz_to_rPix",
        "exp(-i pi Ly/2) rPiz exp(i pi Ly/2) = rPix",
        residual_norm(&rot, ops.geometric_momentum(Axis::X))?,
        1e-10,
    );
    let rot = rotation_conjugate(Axis::X, -PI / 2.0, rpz)?;
    rec.at_most(
        "rotation.rPiz_to_rPiy",
        "exp(i pi Lx/2) rPiz exp(-i pi Lx/2) = rPiy",
        residual_norm(&rot, ops.geometric_momentum(Axis::Y))?,
        1e-10,
    );

    let off_integer = interior_eigenvalues(lz, 0)
        .iter()
        .map(|e| (e - e.round()).abs())
        .fold(0.0, f64::max);
    rec.at_most("lz.spectrum", "eigenvalues of Lz are integers", off_integer, 1e-12);
    Ok(())
}

fn identity_checks(rec: &mut Recorder, count: usize) -> Result<()> {
    let fields = corpus();
    let points = sample_points(count);
    let sweep = |f: &dyn Fn(&crate::identities::TestField, &SpherePoint) -> Result<f64>| -> Result<f64> {
        let mut worst: f64 = 0.0;
        for field in &fields {
            for p in &points {
                worst = worst.max(f(field, p)?);
            }
        }
        Ok(worst)
    };
    let fd_gate = sweep(&|f, p| Ok(f.gradient_defect(&p.cartesian(), 1e-5)))?;
    rec.at_most("corpus.fd_gate", "supplied gradient = central difference", fd_gate, 1e-6);
    rec.at_most(
        "grad.spherical",
        "spherical gradient = cartesian gradient",
        sweep(&gradient_consistency_residual)?,
        1e-10,
    );
    rec.at_most(
        "grad.decomposition",
        "grad f = er (d_r + 1/r) f + grad_tran f",
        sweep(&decomposition_residual)?,
        1e-10,
    );
    rec.at_most(
        "grad.symmetrized_cot_half",
        "symmetrized decomposition, P_theta = -i hbar (d_theta + cot/2)",
        sweep(&|f, p| symmetrized_decomposition_residual(f, p, PThetaVariant::CotHalf, 1.0))?,
        1e-10,
    );
    let z = crate::identities::corpus_field("z").expect("corpus contains z");
    let tan_residual =
        symmetrized_decomposition_residual(&z, &SpherePoint::new(1.0, PI / 4.0, 0.3)?, PThetaVariant::Tan, 1.0)?;
    rec.exceeds(
        "grad.symmetrized_tan_fails",
        "symmetrized decomposition with P_theta = -i hbar (d_theta + tan) does not close",
        tan_residual,
        0.1,
    );
    rec.at_most(
        "grad.transversality",
        "er . grad_tran f + grad_tran . (er f) = 0",
        sweep(&transversality_residual)?,
        1e-10,
    );
    rec.at_most(
        "grad.definition_closure",
        "-i hbar grad f = Pi f + er P_r f",
        sweep(&|f, p| definition_closure_residual(f, p, 1.0))?,
        1e-10,
    );
    rec.at_most(
        "grad.pr_squared",
        "P_r^2 = -hbar^2 laplacian - L^2/r^2",
        sweep(&|f, p| pr_squared_residual(f, p, 1.0))?,
        1e-8,
    );

    let thetas: Vec<f64> = (1..40).map(|k| k as f64 * PI / 40.0).collect();
    let mut worst: f64 = 0.0;
    for gamma in [0.0, 1.0, -1.0, 3.7, -3.7] {
        worst = worst.max(rpi_z_eigenfunction_residual(gamma, &thetas, 1.0)?);
    }
    rec.at_most(
        "eigen.rPiz",
        "rPiz u_gamma = gamma hbar u_gamma",
        worst,
        1e-12,
    );
    let phis: Vec<f64> = (0..32).map(|k| k as f64 * PI / 16.0).collect();
    let worst = (-3..=3)
        .map(|m| lz_eigenfunction_residual(m, &phis, 1.0))
        .fold(0.0, f64::max);
    rec.at_most("eigen.Lz", "Lz e^{i m phi} = m hbar e^{i m phi}", worst, 1e-12);
    Ok(())
}

fn hydrogen_checks(rec: &mut Recorder, m: &DistributionCurve) -> Result<()> {
    let mut norm_defect: f64 = 0.0;
    let mut inv_r_defect: f64 = 0.0;
    for (n, l) in [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)] {
        let s = HydrogenState::new(n, l, 0)?;
        norm_defect = norm_defect.max((radial_norm(&s)? - 1.0).abs());
        let want = 1.0 / (n * n) as f64;
        inv_r_defect = inv_r_defect.max((expectation_inverse_r(&s)? - want).abs());
    }
    rec.at_most("hydrogen.radial_norm", "int R_nl^2 r^2 dr = 1", norm_defect, 1e-10);
    rec.at_most("hydrogen.inverse_r", "<1/r> = 1/(n^2 a0)", inv_r_defect, 1e-10);

    let s = HydrogenState::ground();
    let momenta: Vec<f64> = (0..=1000).map(|k| k as f64 * 0.01).collect();
    let amps = momentum_amplitudes(&s, &momenta)?;
    let worst = momenta
        .iter()
        .zip(&amps)
        .map(|(&p, c)| (c / closed_form::ground_amplitude(p, 1.0) - 1.0).abs())
        .fold(0.0, f64::max);
    rec.at_most("hydrogen.amplitude", "c(p) = 2^{3/2}/pi (p^2+1)^-2", worst, 1e-6);
    rec.at_most(
        "hydrogen.amplitude_norm",
        "int |c|^2 4 pi p^2 dp = 1",
        (momentum_normalization(&s)? - 1.0).abs(),
        1e-8,
    );

    let worst = m
        .abscissa
        .iter()
        .zip(&m.values)
        .filter(|(p, _)| p.abs() <= 8.0)
        .map(|(&p, v)| (v / closed_form::ground_marginal(p, 1.0) - 1.0).abs())
        .fold(0.0, f64::max);
    rec.at_most("hydrogen.marginal", "|c(p_z)|^2 = 8/(3 pi) (1+p_z^2)^-3", worst, 1e-6);
    rec.at_most("hydrogen.marginal_norm", "int |c(p_z)|^2 dp_z = 1", m.normalization_defect(), 1e-8);
    let n = m.len();
    let odd_part = (0..n)
        .map(|i| (m.values[i] - m.values[n - 1 - i]).abs())
        .fold(0.0, f64::max);
    rec.at_most("hydrogen.marginal_even", "|c(p_z)|^2 even", odd_part, 0.0);
    Ok(())
}

fn transform_checks(rec: &mut Recorder, gamma: &GammaGrid, pz: &DistributionCurve) -> Result<()> {
    let span: Vec<f64> = (0..=2000).map(|k| -10.0 + k as f64 * 0.01).collect();
    let qs = q_coeff_many(0, &span)?;
    let worst = span
        .iter()
        .zip(&qs)
        .map(|(&g, q)| (q.norm() / q00_analytic(g) - 1.0).abs())
        .fold(0.0, f64::max);
    rec.at_most("q00.closed_form", "Q_00 = sqrt(pi)/2 sech(pi gamma/2)", worst, 1e-8);
    let ratio = q_coeff_raw(0, 0.0)?.re / q00_analytic(0.0);
    rec.at_most(
        "q00.raw_ratio",
        "raw / normalized = sqrt(2 pi)",
        (ratio - RAW_TO_NORMALIZED).abs(),
        1e-8,
    );
    for l in 0..=2u32 {
        let s = HydrogenState::new(l + 1, l, 0)?;
        let c = expand_state_in_gamma(&s, gamma)?;
        rec.at_most(
            format!("parseval.l{l}"),
            format!("int |Q_{l}0|^2 dgamma = 1"),
            c.normalization_defect(),
            1e-6,
        );
    }

    let s = HydrogenState::ground();
    let piz = pi_z_density(&s, gamma)?;
    rec.at_most("fig1.piz_norm", "int |Q_00|^2 dgamma = 1", piz.normalization_defect(), 1e-8);
    rec.exceeds(
        "fig1.peak_order",
        "peak of p_z density exceeds peak of Pi_z density",
        pz.max_value() - piz.max_value(),
        0.0,
    );

    let z = combined_z_distribution(gamma)?;
    let n = z.len();
    let even_part = (0..n)
        .map(|i| (z.values[i] + z.values[n - 1 - i]).abs())
        .fold(0.0, f64::max);
    rec.at_most("fig2.odd", "signed distribution is odd", even_part, 0.0);
    rec.at_most("fig2.zero_at_origin", "signed distribution vanishes at 0", z.values[gamma.center()].abs(), 0.0);
    let sum: f64 = z.values.iter().sum();
    rec.at_most("fig2.grid_sum", "sum over symmetric grid = 0", sum.abs(), 1e-12);
    let bracket: Vec<f64> = gamma.values.iter().map(|&g| density_difference(g)).collect();
    rec.at_most(
        "fig2.bracket_integral",
        "int (p_z density - Pi_z density) dgamma = 0",
        trapezoid(&gamma.values, &bracket).abs(),
        1e-8,
    );
    let crossings = density_crossings(6.0);
    let changes = z.sign_changes(0.0, 6.0);
    rec.at_most(
        "fig2.single_sign_change",
        format!(
            "exactly one sign change for gamma in (0, 6]; found {changes} on the grid, roots at {crossings:?}"
        ),
        (changes as f64 - 1.0).abs(),
        0.0,
    );
    Ok(())
}
