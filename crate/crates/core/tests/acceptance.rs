//! One line per acceptance criterion, at the stated tolerances.
//! Exits nonzero when any criterion fails.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_complex::Complex64;

use radmom::angular::{build_quadrature, BasisTruncation};
use radmom::hydrogen::{closed_form, expectation_inverse_r, marginal_pz, HydrogenState};
use radmom::identities::{
    corpus, corpus_field, pr_squared_residual, rpi_z_eigenfunction_residual, sample_points,
    symmetrized_decomposition_residual, transversality_residual, PThetaVariant, SpherePoint,
};
use radmom::operators::{commutator, levi_civita, rotation_conjugate, Axis, OperatorMatrix, OperatorSet};
use radmom::output::Table;
use radmom::transforms::{q00_analytic, q_coeff_many, q_coeff_raw, GammaGrid, RAW_TO_NORMALIZED};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

type Criterion = fn() -> Outcome;

fn q00_closed_form() -> Outcome {
    let gammas: Vec<f64> = (-1000..=1000).map(|k| k as f64 * 0.01).collect();
    let q = q_coeff_many(0, &gammas).expect("q_coeff");
    let worst = gammas
        .iter()
        .zip(&q)
        .map(|(g, c)| (c - q00_analytic(*g)).norm() / q00_analytic(*g))
        .fold(0.0, f64::max);
    let ratio_dev = [-7.0, -2.5, 0.0, 0.3, 4.0, 9.5]
        .iter()
        .map(|g| (q_coeff_raw(0, *g).unwrap().re / q00_analytic(*g) / RAW_TO_NORMALIZED - 1.0).abs())
        .fold(0.0, f64::max);
    let ratio_exact = (RAW_TO_NORMALIZED / (2.0 * PI).sqrt() - 1.0).abs();
    outcome(
        worst <= 1e-8 && ratio_dev <= 1e-8 && ratio_exact <= 1e-15,
        format!("max rel err {worst:.2e} on |gamma|<=10; raw/closed vs sqrt(2pi) {ratio_dev:.2e}"),
    )
}

fn build_set(l_max: u32) -> OperatorSet {
    let q = build_quadrature(l_max as usize + 1, 2 * l_max as usize + 2).unwrap();
    OperatorSet::build(BasisTruncation::new(l_max), &q).unwrap()
}

fn residual(a: &OperatorMatrix, b: &OperatorMatrix) -> f64 {
    a.try_sub(b).unwrap().clean_norm()
}

fn algebra_closure() -> Outcome {
    let start = Instant::now();
    let ops = build_set(20);
    let mut worst: f64 = 0.0;
    for i in Axis::ALL {
        let (j, k) = i.cyclic();
        let eps = I * levi_civita(i, j, k);
        let (li, lj, lk) = (ops.angular_momentum(i), ops.angular_momentum(j), ops.angular_momentum(k));
        let (pi, pj, pk) = (ops.geometric_momentum(i), ops.geometric_momentum(j), ops.geometric_momentum(k));
        worst = worst.max(residual(&commutator(li, lj).unwrap(), &lk.scaled(eps)));
        worst = worst.max(residual(&commutator(li, pj).unwrap(), &pk.scaled(eps)));
        worst = worst.max(residual(&commutator(pi, pj).unwrap(), &lk.scaled(-eps)));
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst <= 1e-10 && secs <= 10.0,
        format!("nine commutators at l_max=20: max Frobenius residual {worst:.2e}, {secs:.2} s"),
    )
}

fn transversality() -> Outcome {
    let ops = build_set(20);
    let mut sum = OperatorMatrix::zeros(ops.basis, "anticommutator");
    for a in Axis::ALL {
        let n = ops.direction_cosine(a);
        let p = ops.geometric_momentum(a);
        sum = sum.try_add(&n.try_mul(p).unwrap()).unwrap().try_add(&p.try_mul(n).unwrap()).unwrap();
    }
    let matrix = sum.clean_norm();
    let points = sample_points(64);
    let mut pointwise: f64 = 0.0;
    for f in corpus() {
        for p in &points {
            pointwise = pointwise.max(transversality_residual(&f, p).unwrap());
        }
    }
    outcome(
        matrix <= 1e-10 && pointwise <= 1e-10,
        format!("matrix {matrix:.2e}; pointwise {pointwise:.2e} over 9 fields x 64 points"),
    )
}

fn pr_squared() -> Outcome {
    let fields = corpus();
    let points = sample_points(50);
    let mut worst: f64 = 0.0;
    for f in &fields {
        for p in &points {
            worst = worst.max(pr_squared_residual(f, p, 1.0).unwrap());
        }
    }
    outcome(
        fields.len() >= 5 && worst <= 1e-8,
        format!("max residual {worst:.2e} over {} fields x {} points", fields.len(), points.len()),
    )
}

fn rotation() -> Outcome {
    let ops = build_set(20);
    let lz = rotation_conjugate(Axis::Y, PI / 2.0, ops.angular_momentum(Axis::Z)).unwrap();
    let diff = lz.try_sub(ops.angular_momentum(Axis::X)).unwrap();
    let (entry, frob) = (diff.interior_max_abs(0), diff.interior_norm(0));
    let rp = rotation_conjugate(Axis::Y, PI / 2.0, ops.geometric_momentum(Axis::Z)).unwrap();
    let rpi = residual(&rp, ops.geometric_momentum(Axis::X));
    outcome(
        entry <= 1e-12 && rpi <= 1e-10,
        format!("Lz->Lx max entry {entry:.2e} (Frobenius {frob:.2e}); rPiz->rPix interior {rpi:.2e}"),
    )
}

fn hydrogen_marginal() -> Outcome {
    let grid = GammaGrid::default_grid().unwrap();
    let curve = marginal_pz(&HydrogenState::ground(), &grid.values).unwrap();
    let worst = curve
        .abscissa
        .iter()
        .zip(&curve.values)
        .filter(|(p, _)| p.abs() <= 8.0)
        .map(|(p, v)| {
            let exact = closed_form::ground_marginal(*p, 1.0);
            (v - exact).abs() / exact
        })
        .fold(0.0, f64::max);
    let peak = curve.value_at(0.0).unwrap();
    let mass = curve.integral;
    outcome(
        worst <= 1e-6 && (peak - 0.848_826_4).abs() < 5e-8 && (mass - 1.0).abs() <= 1e-8,
        format!("max rel err {worst:.2e} on |p_z|<=8; peak {peak:.7}; integral 1{:+.1e}", mass - 1.0),
    )
}

fn run_cli(args: &[&str]) -> Table {
    let out = Command::new(env!("CARGO_BIN_EXE_radmom")).args(args).output().expect("radmom runs");
    assert!(out.status.success(), "radmom {args:?}: {}", String::from_utf8_lossy(&out.stderr));
    Table::parse_csv(&String::from_utf8(out.stdout).unwrap()).expect("csv")
}

fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2).zip(y.windows(2)).map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1])).sum()
}

fn fig1() -> Outcome {
    let t = run_cli(&["fig1"]);
    let x = t.column("gamma").unwrap();
    let mut ok = true;
    let mut parts = Vec::new();
    for (col, want) in [("pz_density", 8.0 / (3.0 * PI)), ("piz_density", PI / 4.0)] {
        let y = t.column(col).unwrap();
        let peak = y.iter().copied().fold(f64::MIN, f64::max);
        let at_zero = y[x.iter().position(|g| *g == 0.0).unwrap()];
        let mass = trapezoid(&x, &y);
        ok &= (peak - want).abs() < 1e-7 && peak == at_zero && (mass - 1.0).abs() <= 1e-6;
        parts.push(format!("{col} peak {peak:.7} integral 1{:+.1e}", mass - 1.0));
    }
    outcome(ok, parts.join("; "))
}

fn fig2() -> Outcome {
    let t = run_cli(&["fig2"]);
    let x = t.column("gamma").unwrap();
    let y = t.column("signed_density").unwrap();
    let n = y.len();
    let odd = (0..n).map(|i| (y[i] + y[n - 1 - i]).abs()).fold(0.0, f64::max);
    let zero = y[n / 2].abs();
    let sum = y.iter().sum::<f64>().abs();
    let positive: Vec<f64> = x
        .iter()
        .zip(&y)
        .filter(|(g, v)| **g > 0.0 && **g <= 6.0 && **v != 0.0)
        .map(|(_, v)| *v)
        .collect();
    let changes = positive.windows(2).filter(|w| w[0].signum() != w[1].signum()).count();
    outcome(
        odd == 0.0 && zero == 0.0 && sum <= 1e-12 && changes == 1,
        format!("odd defect {odd:.1e}; value at 0 {zero:.1e}; grid sum {sum:.1e}; sign changes on (0,6]: {changes}"),
    )
}

fn eigenfunction() -> Outcome {
    let thetas: Vec<f64> = (1..200).map(|k| PI * k as f64 / 200.0).collect();
    let worst = [0.0, 1.0, -1.0, 3.7, -3.7]
        .iter()
        .map(|g| rpi_z_eigenfunction_residual(*g, &thetas, 1.0).unwrap())
        .fold(0.0, f64::max);
    outcome(worst <= 1e-12, format!("max relative residual {worst:.2e}"))
}

fn p_theta_form() -> Outcome {
    let points = sample_points(64);
    let mut cot: f64 = 0.0;
    for f in corpus() {
        for p in &points {
            cot = cot.max(symmetrized_decomposition_residual(&f, p, PThetaVariant::CotHalf, 1.0).unwrap());
        }
    }
    let z = corpus_field("z").unwrap();
    let p = SpherePoint::new(1.0, PI / 4.0, 0.0).unwrap();
    let tan = symmetrized_decomposition_residual(&z, &p, PThetaVariant::Tan, 1.0).unwrap();
    outcome(
        cot <= 1e-10 && tan > 0.1,
        format!("cot/2 form {cot:.2e} over corpus; tan form at theta=pi/4 {tan:.3}"),
    )
}

fn inverse_r() -> Outcome {
    let mut worst: f64 = 0.0;
    for a0 in [1.0, 0.529_177_210_903, 2.0] {
        let s = HydrogenState::ground().with_units(a0, 1.0).unwrap();
        worst = worst.max((expectation_inverse_r(&s).unwrap() * a0 - 1.0).abs());
    }
    outcome(worst <= 1e-10, format!("max rel err {worst:.2e}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 11] = [
        ("Q00 closed form", q00_closed_form),
        ("commutator algebra", algebra_closure),
        ("transversality", transversality),
        ("P_r^2 identity", pr_squared),
        ("rotation equivalence", rotation),
        ("hydrogen p_z marginal", hydrogen_marginal),
        ("figure 1 data", fig1),
        ("figure 2 data", fig2),
        ("rPi_z eigenfunction", eigenfunction),
        ("P_theta correction", p_theta_form),
        ("<1/r> ground state", inverse_r),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status}  {name}: {}", k + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
