//! Pointwise checks of the differential-operator identities behind the
//! radial momentum decomposition.
//!
//! Every residual is evaluated from a [`TestField`]'s exact Cartesian
//! derivatives, mapped to (r, θ, φ) by the chain rule, so no basis
//! truncation or finite-difference noise enters the comparison.

mod field;

use std::f64::consts::PI;

use num_complex::Complex64;

pub use field::{corpus, corpus_field, Mat3, TestField, Vec3};

use crate::error::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Minimum angular distance from either pole.
pub const POLE_EXCLUSION: f64 = 1e-3;

/// A point in spherical coordinates, kept away from the z axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
}

impl SpherePoint {
    pub fn new(r: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("radius must be positive, got {r}")));
        }
        if !(theta > POLE_EXCLUSION && theta < PI - POLE_EXCLUSION) {
            return Err(Error::Domain(format!(
                "theta={theta} lies within {POLE_EXCLUSION} of a pole"
            )));
        }
        Ok(SpherePoint { r, theta, phi })
    }

    pub fn cartesian(&self) -> [f64; 3] {
        let st = self.theta.sin();
        [
            self.r * st * self.phi.cos(),
            self.r * st * self.phi.sin(),
            self.r * self.theta.cos(),
        ]
    }
}

/// Deterministic Halton points over r ∈ [0.1, 5], θ ∈ [0.1, π − 0.1], φ ∈ [0, 2π).
pub fn sample_points(count: usize) -> Vec<SpherePoint> {
    fn radical_inverse(mut i: usize, base: usize) -> f64 {
        let (mut f, mut out) = (1.0, 0.0);
        while i > 0 {
            f /= base as f64;
            out += f * (i % base) as f64;
            i /= base;
        }
        out
    }
    (1..=count)
        .map(|i| SpherePoint {
            r: 0.1 + 4.9 * radical_inverse(i, 2),
            theta: 0.1 + (PI - 0.2) * radical_inverse(i, 3),
            phi: 2.0 * PI * radical_inverse(i, 5),
        })
        .collect()
}

type Real3 = [f64; 3];

/// Local frame and its derivatives, each written out component by component.
#[derive(Debug, Clone, Copy)]
struct Frame {
    r: f64,
    sin_t: f64,
    cos_t: f64,
    e_r: Real3,
    e_t: Real3,
    e_p: Real3,
    de_r_dt: Real3,
    de_r_dp: Real3,
    de_t_dt: Real3,
    de_p_dp: Real3,
}

impl Frame {
    fn at(p: &SpherePoint) -> Self {
        let (st, ct) = p.theta.sin_cos();
        let (sp, cp) = p.phi.sin_cos();
        Frame {
            r: p.r,
            sin_t: st,
            cos_t: ct,
            e_r: [st * cp, st * sp, ct],
            e_t: [ct * cp, ct * sp, -st],
            e_p: [-sp, cp, 0.0],
            de_r_dt: [ct * cp, ct * sp, -st],
            de_r_dp: [-st * sp, st * cp, 0.0],
            de_t_dt: [-st * cp, -st * sp, -ct],
            de_p_dp: [-cp, -sp, 0.0],
        }
    }
}

fn dot(a: &Real3, v: &Vec3) -> Complex64 {
    v[0] * a[0] + v[1] * a[1] + v[2] * a[2]
}

fn quad_form(a: &Real3, m: &Mat3, b: &Real3) -> Complex64 {
    let mut acc = ZERO;
    for i in 0..3 {
        for j in 0..3 {
            acc += m[i][j] * (a[i] * b[j]);
        }
    }
    acc
}

fn scale(a: &Real3, s: Complex64) -> Vec3 {
    [s * a[0], s * a[1], s * a[2]]
}

fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn mul(a: Vec3, s: Complex64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn vnorm(a: &Vec3) -> f64 {
    (a[0].norm_sqr() + a[1].norm_sqr() + a[2].norm_sqr()).sqrt()
}

/// f and its partial derivatives in (r, θ, φ).
#[derive(Debug, Clone, Copy)]
struct Spherical {
    f: Complex64,
    d_r: Complex64,
    d_t: Complex64,
    d_p: Complex64,
    d_rr: Complex64,
    d_tt: Complex64,
    d_pp: Complex64,
}

fn spherical_parts(f: &TestField, p: &SpherePoint, fr: &Frame) -> Spherical {
    let x = p.cartesian();
    let g = f.gradient(&x);
    let h = f.hessian(&x);
    let r = fr.r;
    let rs = r * fr.sin_t;
    // ∂_φ(r sinθ e_φ) = −r sinθ (sinθ e_r + cosθ e_θ)
    let dp_tangent: Real3 = std::array::from_fn(|i| rs * fr.de_p_dp[i]);
    Spherical {
        f: f.value(&x),
        d_r: dot(&fr.e_r, &g),
        d_t: dot(&fr.e_t, &g) * r,
        d_p: dot(&fr.e_p, &g) * rs,
        d_rr: quad_form(&fr.e_r, &h, &fr.e_r),
        d_tt: quad_form(&fr.e_t, &h, &fr.e_t) * (r * r) - dot(&fr.e_r, &g) * r,
        d_pp: quad_form(&fr.e_p, &h, &fr.e_p) * (rs * rs) + dot(&dp_tangent, &g),
    }
}

fn checked_frame(p: &SpherePoint) -> Result<Frame> {
    SpherePoint::new(p.r, p.theta, p.phi)?;
    Ok(Frame::at(p))
}

/// ∇_sp f = e_r ∂_r f + e_θ (1/r) ∂_θ f + e_φ (1/(r sinθ)) ∂_φ f, in Cartesian components.
pub fn spherical_gradient(f: &TestField, p: &SpherePoint) -> Result<Vec3> {
    let fr = checked_frame(p)?;
    let s = spherical_parts(f, p, &fr);
    Ok(gradient_from_parts(&s, &fr))
}

fn gradient_from_parts(s: &Spherical, fr: &Frame) -> Vec3 {
    add(
        add(scale(&fr.e_r, s.d_r), scale(&fr.e_t, s.d_t / fr.r)),
        scale(&fr.e_p, s.d_p / (fr.r * fr.sin_t)),
    )
}

/// ∇_tran f = e_θ (1/r)∂_θ f + e_φ (1/(r sinθ))∂_φ f − e_r f/r.
fn transverse_gradient(s: &Spherical, fr: &Frame) -> Vec3 {
    let r = fr.r;
    sub(
        add(scale(&fr.e_t, s.d_t / r), scale(&fr.e_p, s.d_p / (r * fr.sin_t))),
        scale(&fr.e_r, s.f / r),
    )
}

/// |∇_sp f − ∇_cart f|: the spherical gradient reproduces the Cartesian one.
pub fn gradient_consistency_residual(f: &TestField, p: &SpherePoint) -> Result<f64> {
    let sp = spherical_gradient(f, p)?;
    Ok(vnorm(&sub(sp, f.gradient(&p.cartesian()))))
}

/// ‖∇_sp f − [e_r(∂_r + 1/r) f + ∇_tran f]‖.
pub fn decomposition_residual(f: &TestField, p: &SpherePoint) -> Result<f64> {
    let fr = checked_frame(p)?;
    let s = spherical_parts(f, p, &fr);
    let lhs = gradient_from_parts(&s, &fr);
    let radial = scale(&fr.e_r, s.d_r + s.f / fr.r);
    let rhs = add(radial, transverse_gradient(&s, &fr));
    Ok(vnorm(&sub(lhs, rhs)))
}

/// Which correction term enters P_θ = −iħ(∂_θ + c(θ)).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PThetaVariant {
    /// c(θ) = cotθ / 2
    CotHalf,
    /// c(θ) = sinθ / cosθ
    Tan,
}

impl PThetaVariant {
    fn correction(self, sin_t: f64, cos_t: f64) -> f64 {
        match self {
            PThetaVariant::CotHalf => 0.5 * cos_t / sin_t,
            PThetaVariant::Tan => sin_t / cos_t,
        }
    }
}

/// ½(e·(Pf) + P(e f)) for a scalar momentum P = −iħ(∂ + c) along one
/// coordinate whose unit vector e has derivative `de` along it.
fn symmetrized(e: &Real3, de: &Real3, f: Complex64, df: Complex64, correction: f64, hbar: f64) -> Vec3 {
    let mi = -I * hbar;
    let e_pf = scale(e, mi * (df + f * correction));
    // P(e f) = −iħ(∂e · f + e ∂f + c e f)
    let p_ef = mul(add(scale(de, f), scale(e, df + f * correction)), mi);
    mul(add(e_pf, p_ef), Complex64::new(0.5, 0.0))
}

/// ‖−iħ∇_sp f − [{e_r,P_r} + (1/r){e_θ,P_θ} + (1/(r sinθ)){e_φ,P_φ}] f‖.
pub fn symmetrized_decomposition_residual(
    f: &TestField,
    p: &SpherePoint,
    variant: PThetaVariant,
    hbar: f64,
) -> Result<f64> {
    let fr = checked_frame(p)?;
    let s = spherical_parts(f, p, &fr);
    let lhs = mul(gradient_from_parts(&s, &fr), -I * hbar);

    let r = fr.r;
    // P_r = −iħ(∂_r + 1/r); e_r does not depend on r.
    let radial = symmetrized(&fr.e_r, &[0.0; 3], s.f, s.d_r, 1.0 / r, hbar);
    let polar = symmetrized(
        &fr.e_t,
        &fr.de_t_dt,
        s.f,
        s.d_t,
        variant.correction(fr.sin_t, fr.cos_t),
        hbar,
    );
    let azimuthal = symmetrized(&fr.e_p, &fr.de_p_dp, s.f, s.d_p, 0.0, hbar);
    let rhs = add(
        radial,
        add(
            mul(polar, Complex64::new(1.0 / r, 0.0)),
            mul(azimuthal, Complex64::new(1.0 / (r * fr.sin_t), 0.0)),
        ),
    );
    Ok(vnorm(&sub(lhs, rhs)))
}

/// |e_r·(∇_tran f) + ∇_tran·(e_r f)|, with the divergence-like term taking
/// derivatives of e_r itself.
pub fn transversality_residual(f: &TestField, p: &SpherePoint) -> Result<f64> {
    let fr = checked_frame(p)?;
    let s = spherical_parts(f, p, &fr);
    let first = dot(&fr.e_r, &transverse_gradient(&s, &fr));

    // V = e_r f
    let v = scale(&fr.e_r, s.f);
    let dv_t = add(scale(&fr.de_r_dt, s.f), scale(&fr.e_r, s.d_t));
    let dv_p = add(scale(&fr.de_r_dp, s.f), scale(&fr.e_r, s.d_p));
    let r = fr.r;
    let second = dot(&fr.e_t, &dv_t) / r + dot(&fr.e_p, &dv_p) / (r * fr.sin_t) - dot(&fr.e_r, &v) / r;
    Ok((first + second).norm())
}

/// Π f from the component formulas
///   Π_x = −(iħ/r)(cosθ cosφ ∂_θ − (sinφ/sinθ) ∂_φ − sinθ cosφ)
///   Π_y = −(iħ/r)(cosθ sinφ ∂_θ + (cosφ/sinθ) ∂_φ − sinθ sinφ)
///   Π_z =  (iħ/r)(sinθ ∂_θ + cosθ)
pub fn geometric_momentum_applied(f: &TestField, p: &SpherePoint, hbar: f64) -> Result<Vec3> {
    let fr = checked_frame(p)?;
    let s = spherical_parts(f, p, &fr);
    Ok(geometric_momentum_from_parts(&s, p, hbar))
}

fn geometric_momentum_from_parts(s: &Spherical, p: &SpherePoint, hbar: f64) -> Vec3 {
    let (st, ct) = p.theta.sin_cos();
    let (sp, cp) = p.phi.sin_cos();
    let k = I * (hbar / p.r);
    [
        -k * (s.d_t * (ct * cp) - s.d_p * (sp / st) - s.f * (st * cp)),
        -k * (s.d_t * (ct * sp) + s.d_p * (cp / st) - s.f * (st * sp)),
        k * (s.d_t * st + s.f * ct),
    ]
}

/// ‖−iħ∇_cart f − Π f − e_r P_r f‖ with each term evaluated on its own.
pub fn definition_closure_residual(f: &TestField, p: &SpherePoint, hbar: f64) -> Result<f64> {
    let fr = checked_frame(p)?;
    let s = spherical_parts(f, p, &fr);
    let total = mul(f.gradient(&p.cartesian()), -I * hbar);
    let pi = geometric_momentum_from_parts(&s, p, hbar);
    let radial = scale(&fr.e_r, -I * hbar * (s.d_r + s.f / fr.r));
    Ok(vnorm(&sub(sub(total, pi), radial)))
}

/// |P_r² f − (−ħ²∇²f − L²f/r²)| with P_r² = −ħ²(∂_r² + (2/r)∂_r) and
/// L² = −ħ²[(1/sinθ)∂_θ(sinθ ∂_θ) + (1/sin²θ)∂_φ²].
pub fn pr_squared_residual(f: &TestField, p: &SpherePoint, hbar: f64) -> Result<f64> {
    let fr = checked_frame(p)?;
    let s = spherical_parts(f, p, &fr);
    let h2 = hbar * hbar;
    let r = fr.r;
    let pr2 = -h2 * (s.d_rr + 2.0 * s.d_r / r);
    let l2 = -h2 * (s.d_tt + s.d_t * (fr.cos_t / fr.sin_t) + s.d_pp / (fr.sin_t * fr.sin_t));
    let total = -h2 * f.laplacian(&p.cartesian());
    Ok((pr2 - (total - l2 / (r * r))).norm())
}

/// u_γ(θ) = (1/√2π)(1/sinθ) exp(−iγ ln tan(θ/2)), the continuum eigenfunction of rΠ_z.
pub fn rpi_z_eigenfunction(gamma: f64, theta: f64) -> Complex64 {
    let phase = -gamma * (theta / 2.0).tan().ln();
    Complex64::from_polar(1.0 / ((2.0 * PI).sqrt() * theta.sin()), phase)
}

/// max over samples of |iħ(sinθ ∂_θ + cosθ)u − γħ u| / |u|.
pub fn rpi_z_eigenfunction_residual(gamma: f64, theta_samples: &[f64], hbar: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &theta in theta_samples {
        if !(theta > POLE_EXCLUSION && theta < PI - POLE_EXCLUSION) {
            return Err(Error::Domain(format!("theta={theta} lies on or near a pole")));
        }
        let (st, ct) = theta.sin_cos();
        let u = rpi_z_eigenfunction(gamma, theta);
        // d/dθ (1/sinθ) = −cosθ/sin²θ and d/dθ ln tan(θ/2) = 1/sinθ
        let amplitude = 1.0 / ((2.0 * PI).sqrt() * st);
        let phase = Complex64::from_polar(1.0, -gamma * (theta / 2.0).tan().ln());
        let du = phase * (-amplitude * ct / st) + u * Complex64::new(0.0, -gamma / st);
        let applied = I * hbar * (du * st + u * ct);
        worst = worst.max((applied - u * (gamma * hbar)).norm() / u.norm());
    }
    Ok(worst)
}

/// |L_z v − mħ v| / |v| for v = e^{imφ}/√2π, with ∂_φ v in closed form.
pub fn lz_eigenfunction_residual(m: i32, phi_samples: &[f64], hbar: f64) -> f64 {
    phi_samples
        .iter()
        .map(|&phi| {
            let v = Complex64::from_polar(1.0 / (2.0 * PI).sqrt(), m as f64 * phi);
            let dv = Complex64::from_polar(m as f64 / (2.0 * PI).sqrt(), m as f64 * phi + PI / 2.0);
            (-I * hbar * dv - v * (m as f64 * hbar)).norm() / v.norm()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(name: &str) -> TestField {
        corpus_field(name).unwrap_or_else(|| panic!("no corpus field {name}"))
    }

    #[test]
    fn pole_points_rejected() {
        assert!(matches!(SpherePoint::new(1.0, 0.0005, 0.0), Err(Error::Domain(_))));
        assert!(matches!(SpherePoint::new(1.0, PI - 1e-4, 0.0), Err(Error::Domain(_))));
        assert!(matches!(SpherePoint::new(0.0, 1.0, 0.0), Err(Error::Domain(_))));
        let bad = SpherePoint { r: 1.0, theta: 0.0, phi: 0.0 };
        assert!(spherical_gradient(&field("z"), &bad).is_err());
    }

    #[test]
    fn gradient_of_z_and_r() {
        let p = SpherePoint::new(2.3, 0.8, 2.1).unwrap();
        let g = spherical_gradient(&field("z"), &p).unwrap();
        assert!((g[0].norm() + g[1].norm() + (g[2] - 1.0).norm()) < 1e-15);

        // r itself: value r, gradient e_r
        let r_field = TestField::new(
            "r",
            |x| Complex64::new((x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt(), 0.0),
            |x| {
                let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
                [0, 1, 2].map(|i| Complex64::new(x[i] / r, 0.0))
            },
            |_| [[ZERO; 3]; 3],
            |_| ZERO,
        );
        let g = spherical_gradient(&r_field, &p).unwrap();
        let e_r = Frame::at(&p).e_r;
        for i in 0..3 {
            assert!((g[i].re - e_r[i]).abs() < 1e-15 && g[i].im == 0.0);
        }
    }

    #[test]
    fn gradient_of_x2y_at_diagonal() {
        let p = SpherePoint::new(2.0, (1.0 / 3f64.sqrt()).acos(), PI / 4.0).unwrap();
        let x = p.cartesian();
        let g = spherical_gradient(&field("x^2*y"), &p).unwrap();
        let want = [2.0 * x[0] * x[1], x[0] * x[0], 0.0];
        for i in 0..3 {
            assert!((g[i].re - want[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn decomposition_simple_fields() {
        let p = SpherePoint::new(1.7, 1.2, 0.3).unwrap();
        assert_eq!(decomposition_residual(&field("1"), &p).unwrap(), 0.0);
        assert!(decomposition_residual(&field("z"), &p).unwrap() < 1e-12);
        assert!(decomposition_residual(&field("(x+iy)*exp(-r^2)"), &p).unwrap() < 1e-10);
    }

    #[test]
    fn p_theta_variants() {
        let p = SpherePoint::new(1.3, 0.6, 1.9).unwrap();
        for name in ["z", "x^2*y"] {
            let ok = symmetrized_decomposition_residual(&field(name), &p, PThetaVariant::CotHalf, 1.0).unwrap();
            assert!(ok <= 1e-10, "{name}: {ok}");
        }
        let q = SpherePoint::new(1.0, PI / 4.0, 0.7).unwrap();
        let bad = symmetrized_decomposition_residual(&field("z"), &q, PThetaVariant::Tan, 1.0).unwrap();
        // analytic: |f|ħ/r · |tanθ − cotθ/2| = cos(π/4) · 0.5
        assert!((bad - 0.5 * (PI / 4.0).cos()).abs() < 1e-12, "{bad}");
        assert!(bad > 0.1);
    }

    #[test]
    fn pr_squared_named_fields() {
        let p = SpherePoint::new(0.9, 2.2, 4.0).unwrap();
        for name in ["1*exp(-r)", "z*exp(-r)", "(x^2-y^2)*exp(-r^2)"] {
            let r = pr_squared_residual(&field(name), &p, 1.0).unwrap();
            assert!(r <= 1e-8, "{name}: {r}");
        }
    }

    #[test]
    fn eigenfunction_residuals() {
        let thetas = [0.5, 1.0, 2.0];
        assert_eq!(rpi_z_eigenfunction_residual(0.0, &thetas, 1.0).unwrap(), 0.0);
        for g in [1.0, -1.0, 3.7, -3.7] {
            assert!(rpi_z_eigenfunction_residual(g, &thetas, 1.0).unwrap() <= 1e-12);
        }
        assert!(rpi_z_eigenfunction_residual(1.0, &[0.0], 1.0).is_err());
        assert!(lz_eigenfunction_residual(3, &[0.1, 2.0, 5.5], 1.0) < 1e-14);
    }

    #[test]
    fn halton_points_in_range() {
        let pts = sample_points(64);
        assert_eq!(pts.len(), 64);
        for p in &pts {
            assert!(p.r >= 0.1 && p.r <= 5.0);
            assert!(p.theta >= 0.1 && p.theta <= PI - 0.1);
            assert!((0.0..2.0 * PI).contains(&p.phi));
        }
        assert_eq!(pts, sample_points(64));
    }
}
