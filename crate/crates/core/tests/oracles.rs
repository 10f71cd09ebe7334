//! Frozen reference values for every module.

use std::f64::consts::PI;

use approx::{assert_abs_diff_eq, assert_relative_eq};
use num_complex::Complex64;

use radmom::angular::{build_quadrature, eval_ylm, inner_product, BasisIndex, BasisTruncation, SphereSamples, SphericalProjector};
use radmom::hydrogen::{closed_form, expectation_inverse_r, marginal_pz, momentum_amplitude, momentum_normalization, HydrogenState};
use radmom::identities::{
    corpus_field, decomposition_residual, pr_squared_residual, rpi_z_eigenfunction_residual,
    spherical_gradient, symmetrized_decomposition_residual, transversality_residual, PThetaVariant, SpherePoint,
};
use radmom::operators::{
    build_angular_momentum, build_direction_cosine, build_geometric_momentum, build_geometric_momentum_direct, Axis,
    OperatorSet,
};
use radmom::transforms::{
    combined_z_distribution, density_crossings, pi_z_density, q00_analytic, q_coeff, q_coeff_many, q_coeff_raw,
    GammaGrid, RAW_TO_NORMALIZED,
};

fn idx(l: u32, m: i32) -> BasisIndex {
    BasisIndex::new(l, m).unwrap()
}

#[test]
fn two_point_rule() {
    let q = build_quadrature(2, 4).unwrap();
    let c = q.cos_theta();
    assert_abs_diff_eq!(c[0].abs(), 1.0 / 3f64.sqrt(), epsilon = 1e-15);
    assert_abs_diff_eq!(c[0], -c[1], epsilon = 1e-15);
    assert_abs_diff_eq!(q.theta_weights[0], 1.0, epsilon = 1e-15);
    assert_abs_diff_eq!(q.theta_weights[1], 1.0, epsilon = 1e-15);
}

#[test]
fn cos_squared_integral() {
    let q = build_quadrature(16, 8).unwrap();
    let v = q.integrate(|t, _| Complex64::new(t.cos().powi(2), 0.0));
    assert_abs_diff_eq!(v.re, 4.0 * PI / 3.0, epsilon = 1e-13);
}

#[test]
fn y10_at_north_pole() {
    let y = eval_ylm(idx(1, 0), 0.0, 0.0).unwrap();
    assert_abs_diff_eq!(y.re, (3.0 / (4.0 * PI)).sqrt(), epsilon = 1e-15);
    assert_abs_diff_eq!(y.re, 0.488_602_5, epsilon = 1e-7);
}

#[test]
fn orthonormal_on_minimal_rule() {
    let l_max = 6;
    let q = build_quadrature(l_max + 1, 2 * l_max + 1).unwrap();
    let proj = SphericalProjector::new(BasisTruncation::new(l_max as u32), q.clone());
    let samples: Vec<_> = proj.basis.indices().map(|i| proj.sample_basis(i)).collect();
    for (a, fa) in samples.iter().enumerate() {
        for (b, fb) in samples.iter().enumerate() {
            let ip = inner_product(fa, fb, &q).unwrap();
            let expect = if a == b { 1.0 } else { 0.0 };
            assert!((ip - expect).norm() < 1e-12, "<{a}|{b}> = {ip}");
        }
    }
}

#[test]
fn gaunt_projection() {
    let q = build_quadrature(8, 16).unwrap();
    let proj = SphericalProjector::new(BasisTruncation::new(3), q.clone());
    let f = SphereSamples::from_fn(&q, |t, p| t.cos() * eval_ylm(idx(0, 0), t, p).unwrap());
    let coeffs = proj.project(&f).unwrap();
    assert_abs_diff_eq!(coeffs[idx(1, 0).flat()].re, 1.0 / 3f64.sqrt(), epsilon = 1e-12);
    assert_abs_diff_eq!(coeffs[idx(0, 0).flat()].norm(), 0.0, epsilon = 1e-12);
}

#[test]
fn ladder_and_gaunt_elements() {
    let basis = BasisTruncation::new(4);
    let q = build_quadrature(5, 10).unwrap();
    let lx = build_angular_momentum(Axis::X, basis);
    assert_abs_diff_eq!(lx.element(idx(1, 1), idx(1, 0)).re, 0.5f64.sqrt(), epsilon = 1e-15);
    let erz = build_direction_cosine(Axis::Z, basis, &q).unwrap();
    assert_abs_diff_eq!(erz.element(idx(1, 0), idx(0, 0)).re, 0.577_350_3, epsilon = 1e-7);
    let rpz = build_geometric_momentum(Axis::Z, basis, &q).unwrap();
    let z = rpz.element(idx(1, 0), idx(0, 0));
    assert_abs_diff_eq!(z.re, 0.0, epsilon = 1e-14);
    assert_abs_diff_eq!(z.im, 1.0 / 3f64.sqrt(), epsilon = 1e-14);
}

#[test]
fn unit_vector_and_two_constructions() {
    let basis = BasisTruncation::new(8);
    let q = build_quadrature(9, 18).unwrap();
    let set = OperatorSet::build(basis, &q).unwrap();
    let mut sum = set.er[0].try_mul(&set.er[0]).unwrap();
    for e in &set.er[1..] {
        sum = sum.try_add(&e.try_mul(e).unwrap()).unwrap();
    }
    let id = radmom::operators::OperatorMatrix::identity(basis);
    assert!(sum.try_sub(&id).unwrap().interior_max_abs(1) < 1e-12);
    for axis in Axis::ALL {
        let direct = build_geometric_momentum_direct(axis, basis, &q).unwrap();
        let diff = direct.try_sub(set.geometric_momentum(axis)).unwrap();
        assert!(diff.interior_norm(1) < 1e-10, "{axis:?}");
    }
}

fn at_radius(r: f64, dir: [f64; 3]) -> SpherePoint {
    let n = (dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]).sqrt();
    let theta = (dir[2] / n).acos();
    let phi = dir[1].atan2(dir[0]);
    SpherePoint::new(r, theta, phi).unwrap()
}

#[test]
fn gradient_of_x2y() {
    let f = corpus_field("x^2*y").unwrap();
    let p = at_radius(2.0, [1.0, 1.0, 1.0]);
    let [x, y, _] = p.cartesian();
    let g = spherical_gradient(&f, &p).unwrap();
    let exact = [2.0 * x * y, x * x, 0.0];
    for i in 0..3 {
        assert_abs_diff_eq!(g[i].re, exact[i], epsilon = 1e-12);
        assert_abs_diff_eq!(g[i].im, 0.0, epsilon = 1e-12);
    }
    assert!(decomposition_residual(&f, &p).unwrap() < 1e-12);
}

#[test]
fn transversality_for_named_fields() {
    let p = SpherePoint::new(1.3, 0.9, 2.1).unwrap();
    assert!(transversality_residual(&corpus_field("z").unwrap(), &p).unwrap() < 1e-12);
    assert!(transversality_residual(&corpus_field("(x+iy)*exp(-r^2)").unwrap(), &p).unwrap() < 1e-10);
}

#[test]
fn p_theta_variants() {
    let z = corpus_field("z").unwrap();
    let p = SpherePoint::new(1.0, PI / 4.0, 0.3).unwrap();
    assert!(symmetrized_decomposition_residual(&z, &p, PThetaVariant::CotHalf, 1.0).unwrap() <= 1e-10);
    assert!(symmetrized_decomposition_residual(&z, &p, PThetaVariant::Tan, 1.0).unwrap() > 0.1);
    let x2y = corpus_field("x^2*y").unwrap();
    let q = SpherePoint::new(1.7, 1.1, 0.4).unwrap();
    assert!(symmetrized_decomposition_residual(&x2y, &q, PThetaVariant::CotHalf, 1.0).unwrap() <= 1e-10);
}

#[test]
fn pr_squared_named_fields() {
    let p = SpherePoint::new(0.8, 1.2, 0.5).unwrap();
    assert!(pr_squared_residual(&corpus_field("z*exp(-r)").unwrap(), &p, 1.0).unwrap() <= 1e-8);
    assert!(pr_squared_residual(&corpus_field("(x^2-y^2)*exp(-r^2)").unwrap(), &p, 1.0).unwrap() <= 1e-8);
}

#[test]
fn eigenfunction_residuals() {
    assert!(rpi_z_eigenfunction_residual(1.0, &[0.5, 1.0, 2.0], 1.0).unwrap() <= 1e-12);
    assert!(rpi_z_eigenfunction_residual(-3.7, &[0.5, 1.0, 2.0], 1.0).unwrap() <= 1e-12);
    assert!(rpi_z_eigenfunction_residual(1.0, &[0.0], 1.0).is_err());
}

#[test]
fn inverse_r_expectations() {
    let a0 = 1.7;
    for (n, l, expect) in [(1, 0, 1.0 / a0), (2, 0, 0.25 / a0), (2, 1, 0.25 / a0)] {
        let s = HydrogenState::new(n, l, 0).unwrap().with_units(a0, 1.0).unwrap();
        assert_relative_eq!(expectation_inverse_r(&s).unwrap(), expect, max_relative = 1e-10);
    }
}

#[test]
fn ground_momentum_amplitude() {
    let s = HydrogenState::ground();
    assert_abs_diff_eq!(momentum_amplitude(&s, 0.0).unwrap().norm(), 0.900_316_3, epsilon = 1e-7);
    assert_abs_diff_eq!(momentum_amplitude(&s, 1.0).unwrap().norm(), 0.225_079_1, epsilon = 1e-7);
    assert_abs_diff_eq!(closed_form::ground_amplitude(0.0, 1.0), 2f64.powf(1.5) / PI, epsilon = 1e-15);
    assert_abs_diff_eq!(momentum_normalization(&s).unwrap(), 1.0, epsilon = 1e-8);
}

#[test]
fn ground_marginal_values() {
    let s = HydrogenState::ground();
    let curve = marginal_pz(&s, &[-1.0, 0.0, 1.0]).unwrap();
    assert_abs_diff_eq!(curve.values[1], 0.848_826_4, epsilon = 1e-7);
    assert_abs_diff_eq!(curve.values[2], 0.106_103_3, epsilon = 1e-7);
    let grid = GammaGrid::default_grid().unwrap();
    let full = marginal_pz(&s, &grid.values).unwrap();
    assert!(full.normalization_defect() < 1e-8);
}

#[test]
fn q_coefficients() {
    // √π/2 · sech(π) with sech(π) = 0.0862667
    assert_relative_eq!(q_coeff(0, 2.0).unwrap().re, 0.076_451_9, max_relative = 1e-6);
    assert!(q_coeff(1, 0.0).unwrap().norm() < 1e-14);
    let raw = q_coeff_raw(0, 1.5).unwrap();
    assert_relative_eq!(raw.re / q00_analytic(1.5), RAW_TO_NORMALIZED, max_relative = 1e-8);
    assert_relative_eq!(RAW_TO_NORMALIZED, (2.0 * PI).sqrt(), max_relative = 1e-15);
    let gs = [-3.0, 0.0, 0.25, 7.5];
    let many = q_coeff_many(2, &gs).unwrap();
    for (g, m) in gs.iter().zip(&many) {
        assert!((q_coeff(2, *g).unwrap() - m).norm() < 1e-12);
    }
}

#[test]
fn pi_z_density_peak_and_mass() {
    let grid = GammaGrid::default_grid().unwrap();
    let d = pi_z_density(&HydrogenState::ground(), &grid).unwrap();
    assert_abs_diff_eq!(d.values[grid.center()], PI / 4.0, epsilon = 1e-9);
    assert!(d.normalization_defect() < 1e-8);
}

#[test]
fn combined_distribution_sum_and_crossings() {
    let grid = GammaGrid::new(8.0, 1601).unwrap();
    let c = combined_z_distribution(&grid).unwrap();
    assert!(c.values.iter().sum::<f64>().abs() <= 1e-12);
    assert_eq!(c.values[grid.center()], 0.0);
    // two positive crossings of the bracket p_z density − Π_z density
    let roots = density_crossings(6.0);
    assert_eq!(roots.len(), 2);
    assert_abs_diff_eq!(roots[0], 0.411_378_7, epsilon = 1e-6);
    assert_abs_diff_eq!(roots[1], 1.765_001_2, epsilon = 1e-6);
}
