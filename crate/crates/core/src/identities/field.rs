//! Scalar test fields with exact Cartesian derivatives.
//!
//! Each corpus field is a polynomial factor times a radial envelope; the
//! value, gradient, Hessian and Laplacian are all closed forms.

use std::sync::Arc;

use num_complex::Complex64;

pub type Vec3 = [Complex64; 3];
pub type Mat3 = [[Complex64; 3]; 3];

type ScalarFn = dyn Fn(&[f64; 3]) -> Complex64 + Send + Sync;
type VectorFn = dyn Fn(&[f64; 3]) -> Vec3 + Send + Sync;
type MatrixFn = dyn Fn(&[f64; 3]) -> Mat3 + Send + Sync;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

#[derive(Clone)]
pub struct TestField {
    pub name: String,
    value: Arc<ScalarFn>,
    gradient: Arc<VectorFn>,
    hessian: Arc<MatrixFn>,
    laplacian: Arc<ScalarFn>,
}

impl std::fmt::Debug for TestField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TestField").field("name", &self.name).finish()
    }
}

impl TestField {
    pub fn new(
        name: impl Into<String>,
        value: impl Fn(&[f64; 3]) -> Complex64 + Send + Sync + 'static,
        gradient: impl Fn(&[f64; 3]) -> Vec3 + Send + Sync + 'static,
        hessian: impl Fn(&[f64; 3]) -> Mat3 + Send + Sync + 'static,
        laplacian: impl Fn(&[f64; 3]) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        TestField {
            name: name.into(),
            value: Arc::new(value),
            gradient: Arc::new(gradient),
            hessian: Arc::new(hessian),
            laplacian: Arc::new(laplacian),
        }
    }

    pub fn value(&self, x: &[f64; 3]) -> Complex64 {
        (self.value)(x)
    }

    pub fn gradient(&self, x: &[f64; 3]) -> Vec3 {
        (self.gradient)(x)
    }

    pub fn hessian(&self, x: &[f64; 3]) -> Mat3 {
        (self.hessian)(x)
    }

    pub fn laplacian(&self, x: &[f64; 3]) -> Complex64 {
        (self.laplacian)(x)
    }

    /// Largest deviation between the supplied gradient and a central
    /// difference of the value with step `h`.
    pub fn gradient_defect(&self, x: &[f64; 3], h: f64) -> f64 {
        let g = self.gradient(x);
        (0..3)
            .map(|i| {
                let (mut xp, mut xm) = (*x, *x);
                xp[i] += h;
                xm[i] -= h;
                let fd = (self.value(&xp) - self.value(&xm)) / (2.0 * h);
                (fd - g[i]).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Same gate for the Hessian (differencing the gradient) and the
    /// Laplacian (trace of the differenced Hessian).
    pub fn hessian_defect(&self, x: &[f64; 3], h: f64) -> f64 {
        let hess = self.hessian(x);
        let mut worst: f64 = 0.0;
        let mut trace = ZERO;
        for j in 0..3 {
            let (mut xp, mut xm) = (*x, *x);
            xp[j] += h;
            xm[j] -= h;
            let (gp, gm) = (self.gradient(&xp), self.gradient(&xm));
            for i in 0..3 {
                let fd = (gp[i] - gm[i]) / (2.0 * h);
                worst = worst.max((fd - hess[i][j]).norm());
                if i == j {
                    trace += fd;
                }
            }
        }
        worst.max((trace - self.laplacian(x)).norm())
    }
}

/// Polynomial factor with exact derivatives.
#[derive(Clone)]
struct Poly {
    name: &'static str,
    value: fn(&[f64; 3]) -> Complex64,
    gradient: fn(&[f64; 3]) -> Vec3,
    hessian: fn(&[f64; 3]) -> Mat3,
    laplacian: fn(&[f64; 3]) -> Complex64,
}

/// Radial envelope g(r) with g' and g''.
#[derive(Clone, Copy)]
enum Envelope {
    One,
    Exp,
    Gauss,
}

impl Envelope {
    fn eval(self, r: f64) -> (f64, f64, f64) {
        match self {
            Envelope::One => (1.0, 0.0, 0.0),
            Envelope::Exp => {
                let e = (-r).exp();
                (e, -e, e)
            }
            Envelope::Gauss => {
                let e = (-r * r).exp();
                (e, -2.0 * r * e, (4.0 * r * r - 2.0) * e)
            }
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            Envelope::One => "",
            Envelope::Exp => "*exp(-r)",
            Envelope::Gauss => "*exp(-r^2)",
        }
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn norm(x: &[f64; 3]) -> f64 {
    (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()
}

fn product(poly: Poly, env: Envelope) -> TestField {
    let name = format!("{}{}", poly.name, env.suffix());
    let (p1, p2, p3, p4) = (poly.clone(), poly.clone(), poly.clone(), poly);
    TestField::new(
        name,
        move |x| (p1.value)(x) * env.eval(norm(x)).0,
        move |x| {
            let r = norm(x);
            let (g, dg, _) = env.eval(r);
            let (p, gp) = ((p2.value)(x), (p2.gradient)(x));
            std::array::from_fn(|i| gp[i] * g + p * (dg * x[i] / r))
        },
        move |x| {
            let r = norm(x);
            let (g, dg, d2g) = env.eval(r);
            let (p, gp, hp) = ((p3.value)(x), (p3.gradient)(x), (p3.hessian)(x));
            let u = [x[0] / r, x[1] / r, x[2] / r];
            std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    let delta = if i == j { 1.0 } else { 0.0 };
                    hp[i][j] * g
                        + (gp[i] * u[j] + gp[j] * u[i]) * dg
                        + p * (d2g * u[i] * u[j] + dg * (delta - u[i] * u[j]) / r)
                })
            })
        },
        move |x| {
            let r = norm(x);
            let (g, dg, d2g) = env.eval(r);
            let (p, gp) = ((p4.value)(x), (p4.gradient)(x));
            let radial_dot = (gp[0] * x[0] + gp[1] * x[1] + gp[2] * x[2]) / r;
            (p4.laplacian)(x) * g + radial_dot * (2.0 * dg) + p * (d2g + 2.0 * dg / r)
        },
    )
}

const Z3: Mat3 = [[ZERO; 3]; 3];

fn constant() -> Poly {
    Poly {
        name: "1",
        value: |_| c(1.0),
        gradient: |_| [ZERO; 3],
        hessian: |_| Z3,
        laplacian: |_| ZERO,
    }
}

fn coord_z() -> Poly {
    Poly {
        name: "z",
        value: |x| c(x[2]),
        gradient: |_| [ZERO, ZERO, c(1.0)],
        hessian: |_| Z3,
        laplacian: |_| ZERO,
    }
}

fn x2y() -> Poly {
    Poly {
        name: "x^2*y",
        value: |x| c(x[0] * x[0] * x[1]),
        gradient: |x| [c(2.0 * x[0] * x[1]), c(x[0] * x[0]), ZERO],
        hessian: |x| {
            [
                [c(2.0 * x[1]), c(2.0 * x[0]), ZERO],
                [c(2.0 * x[0]), ZERO, ZERO],
                [ZERO, ZERO, ZERO],
            ]
        },
        laplacian: |x| c(2.0 * x[1]),
    }
}

fn x_plus_iy() -> Poly {
    Poly {
        name: "(x+iy)",
        value: |x| Complex64::new(x[0], x[1]),
        gradient: |_| [c(1.0), Complex64::new(0.0, 1.0), ZERO],
        hessian: |_| Z3,
        laplacian: |_| ZERO,
    }
}

fn x2_minus_y2() -> Poly {
    Poly {
        name: "(x^2-y^2)",
        value: |x| c(x[0] * x[0] - x[1] * x[1]),
        gradient: |x| [c(2.0 * x[0]), c(-2.0 * x[1]), ZERO],
        hessian: |_| {
            [
                [c(2.0), ZERO, ZERO],
                [ZERO, c(-2.0), ZERO],
                [ZERO, ZERO, ZERO],
            ]
        },
        laplacian: |_| ZERO,
    }
}

fn xz_plus_2iy() -> Poly {
    Poly {
        name: "(xz+2iy)",
        value: |x| Complex64::new(x[0] * x[2], 2.0 * x[1]),
        gradient: |x| [c(x[2]), Complex64::new(0.0, 2.0), c(x[0])],
        hessian: |_| {
            [
                [ZERO, ZERO, c(1.0)],
                [ZERO, ZERO, ZERO],
                [c(1.0), ZERO, ZERO],
            ]
        },
        laplacian: |_| ZERO,
    }
}

fn cubic_mix() -> Poly {
    // 3z² − r² + xyz, a d-wave plus an f-type term
    Poly {
        name: "(2z^2-x^2-y^2+xyz)",
        value: |x| c(2.0 * x[2] * x[2] - x[0] * x[0] - x[1] * x[1] + x[0] * x[1] * x[2]),
        gradient: |x| {
            [
                c(-2.0 * x[0] + x[1] * x[2]),
                c(-2.0 * x[1] + x[0] * x[2]),
                c(4.0 * x[2] + x[0] * x[1]),
            ]
        },
        hessian: |x| {
            [
                [c(-2.0), c(x[2]), c(x[1])],
                [c(x[2]), c(-2.0), c(x[0])],
                [c(x[1]), c(x[0]), c(4.0)],
            ]
        },
        laplacian: |_| ZERO,
    }
}

/// The fixed corpus used by every pointwise identity sweep.
pub fn corpus() -> Vec<TestField> {
    vec![
        product(constant(), Envelope::One),
        product(coord_z(), Envelope::One),
        product(x2y(), Envelope::One),
        product(constant(), Envelope::Exp),
        product(coord_z(), Envelope::Exp),
        product(x_plus_iy(), Envelope::Gauss),
        product(x2_minus_y2(), Envelope::Gauss),
        product(xz_plus_2iy(), Envelope::Gauss),
        product(cubic_mix(), Envelope::Exp),
    ]
}

/// Look up a corpus field by name.
pub fn corpus_field(name: &str) -> Option<TestField> {
    corpus().into_iter().find(|f| f.name == name)
}
