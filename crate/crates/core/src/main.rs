use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use radmom::angular::{build_quadrature, BasisTruncation};
use radmom::hydrogen::{marginal_pz, HydrogenState};
use radmom::operators::{Axis, OperatorSet};
use radmom::output::{format_elements, svg_plot, write_text, Series, Table};
use radmom::transforms::{
    combined_z_distribution, pi_z_density, q00_analytic, q_coeff_many, GammaGrid, DEFAULT_GAMMA_MAX,
    DEFAULT_GAMMA_POINTS, RAW_TO_NORMALIZED,
};
use radmom::verify::{self, VerifyConfig, DEFAULT_LMAX};
use radmom::Error;

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

/// Radial momentum decomposition: verification suites and figure data.
#[derive(Debug, Parser)]
#[command(name = "radmom", version)]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Options {
    /// Largest angular momentum of the truncated basis.
    #[arg(long = "lmax", global = true, default_value_t = DEFAULT_LMAX)]
    l_max: u32,
    /// Gauss–Legendre nodes in cos(theta) [default: lmax+1]
    #[arg(long, global = true)]
    n_theta: Option<usize>,
    /// Uniform phi nodes [default: 2*lmax+2]
    #[arg(long, global = true)]
    n_phi: Option<usize>,
    /// Half-width of the symmetric gamma (or p_z) grid.
    #[arg(long, global = true, default_value_t = DEFAULT_GAMMA_MAX)]
    gamma_max: f64,
    /// Number of grid points; must be odd.
    #[arg(long, global = true, default_value_t = DEFAULT_GAMMA_POINTS)]
    gamma_points: usize,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Multiplies every upper-bound tolerance of `verify`.
    #[arg(long, global = true, default_value_t = 1.0)]
    tolerance_scale: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run all verification suites and print the residual table.
    Verify,
    /// p_z and Pi_z densities of the hydrogen ground state.
    Fig1,
    /// Signed distribution of the z-component of e_r P_r.
    Fig2,
    /// Coefficients Q_l0(gamma) on the gamma grid.
    Qcoeff {
        #[arg(long, default_value_t = 0)]
        l: u32,
    },
    /// Nonzero matrix elements of one operator.
    SpectrumDump {
        #[arg(value_enum)]
        operator: OperatorName,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OperatorName {
    #[value(name = "Lx")]
    Lx,
    #[value(name = "Ly")]
    Ly,
    #[value(name = "Lz")]
    Lz,
    #[value(name = "erx")]
    Erx,
    #[value(name = "ery")]
    Ery,
    #[value(name = "erz")]
    Erz,
    #[value(name = "rPix")]
    RPix,
    #[value(name = "rPiy")]
    RPiy,
    #[value(name = "rPiz")]
    RPiz,
}

impl OperatorName {
    fn label(self) -> &'static str {
        match self {
            OperatorName::Lx => "Lx",
            OperatorName::Ly => "Ly",
            OperatorName::Lz => "Lz",
            OperatorName::Erx => "erx",
            OperatorName::Ery => "ery",
            OperatorName::Erz => "erz",
            OperatorName::RPix => "rPix",
            OperatorName::RPiy => "rPiy",
            OperatorName::RPiz => "rPiz",
        }
    }
}

/// Why a command stopped.
enum Failure {
    Checks(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(EXIT_CHECK_FAILED)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidArgument(_) => EXIT_USAGE,
                Error::Io(_) => EXIT_IO,
                Error::Accuracy { .. } | Error::Domain(_) | Error::Unsupported(_) => EXIT_CHECK_FAILED,
            })
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("RADMOM_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| format!("RADMOM_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let o = &cli.opts;
    match &cli.command {
        Command::Verify => cmd_verify(o),
        Command::Fig1 => cmd_fig1(o),
        Command::Fig2 => cmd_fig2(o),
        Command::Qcoeff { l } => cmd_qcoeff(o, *l),
        Command::SpectrumDump { operator } => cmd_spectrum_dump(o, *operator),
    }
}

fn emit(o: &Options, text: &str) -> Result<(), Failure> {
    match &o.out {
        Some(path) => write_text(path, text)?,
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(Error::from)?;
        }
    }
    Ok(())
}

fn gamma_grid(o: &Options) -> Result<GammaGrid, Failure> {
    Ok(GammaGrid::new(o.gamma_max, o.gamma_points)?)
}

fn verify_config(o: &Options) -> Result<VerifyConfig, Failure> {
    let mut cfg = VerifyConfig::with_lmax(o.l_max)?;
    if let Some(n) = o.n_theta {
        cfg.n_theta = n;
    }
    if let Some(n) = o.n_phi {
        cfg.n_phi = n;
    }
    cfg.gamma = gamma_grid(o)?;
    cfg.tolerance_scale = o.tolerance_scale;
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_verify(o: &Options) -> Result<(), Failure> {
    let cfg = verify_config(o)?;
    let report = verify::run(&cfg)?;
    emit(o, &report.to_csv())?;
    let failed: Vec<&str> = report.failures().map(|c| c.id.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Checks(format!(
            "{} of {} checks failed: {}",
            failed.len(),
            report.checks.len(),
            failed.join(", ")
        )))
    }
}

fn units_header(t: Table, grid: &GammaGrid) -> Table {
    t.with_meta("units", "natural (hbar=a0=b=1)")
        .with_meta("gamma_max", grid.half_range)
        .with_meta("gamma_points", grid.len())
        .with_meta("q_raw_to_normalized", RAW_TO_NORMALIZED)
}

fn cmd_fig1(o: &Options) -> Result<(), Failure> {
    let grid = gamma_grid(o)?;
    let s = HydrogenState::ground();
    let pz = marginal_pz(&s, &grid.values)?;
    let piz = pi_z_density(&s, &grid)?;
    let text = match o.format {
        Format::Csv => {
            let mut t = units_header(Table::new(&["gamma", "pz_density", "piz_density"]), &grid)
                .with_meta("pz_integral", pz.integral)
                .with_meta("piz_integral", piz.integral);
            for (i, g) in grid.values.iter().enumerate() {
                t.push_row(vec![*g, pz.values[i], piz.values[i]])?;
            }
            t.to_csv()
        }
        Format::Svg => svg_plot(
            "Distribution densities of p_z and Pi_z",
            &[
                Series { label: "p_z", x: &grid.values, y: &pz.values },
                Series { label: "Pi_z", x: &grid.values, y: &piz.values },
            ],
            (-grid.half_range.min(4.0), grid.half_range.min(4.0)),
        ),
    };
    emit(o, &text)
}

fn cmd_fig2(o: &Options) -> Result<(), Failure> {
    let grid = gamma_grid(o)?;
    let z = combined_z_distribution(&grid)?;
    let text = match o.format {
        Format::Csv => {
            let sum: f64 = z.values.iter().sum();
            let mut t = units_header(Table::new(&["gamma", "signed_density"]), &grid)
                .with_meta("grid_sum", sum)
                .with_meta("integral", z.integral);
            for (g, v) in grid.values.iter().zip(&z.values) {
                t.push_row(vec![*g, *v])?;
            }
            t.to_csv()
        }
        Format::Svg => svg_plot(
            "Signed distribution of the z-component of e_r P_r",
            &[Series { label: "signed", x: &grid.values, y: &z.values }],
            (-grid.half_range.min(6.0), grid.half_range.min(6.0)),
        ),
    };
    emit(o, &text)
}

fn cmd_qcoeff(o: &Options, l: u32) -> Result<(), Failure> {
    let grid = gamma_grid(o)?;
    let q = q_coeff_many(l, &grid.values)?;
    let mut columns = vec!["gamma", "re_q", "im_q", "abs_sq"];
    if l == 0 {
        columns.push("analytic");
    }
    let mut t = units_header(Table::new(&columns), &grid).with_meta("l", l).with_meta("m", 0);
    for (g, c) in grid.values.iter().zip(&q) {
        let mut row = vec![*g, c.re, c.im, c.norm_sqr()];
        if l == 0 {
            row.push(q00_analytic(*g));
        }
        t.push_row(row)?;
    }
    match o.format {
        Format::Csv => emit(o, &t.to_csv()),
        Format::Svg => {
            let abs_sq = t.column("abs_sq").unwrap_or_default();
            let label = format!("|Q_{l}0|^2");
            let svg = svg_plot(
                &format!("Q_{l}0 coefficients"),
                &[Series { label: &label, x: &grid.values, y: &abs_sq }],
                (-grid.half_range.min(8.0), grid.half_range.min(8.0)),
            );
            emit(o, &svg)
        }
    }
}

fn cmd_spectrum_dump(o: &Options, name: OperatorName) -> Result<(), Failure> {
    if o.format == Format::Svg {
        return Err(Error::InvalidArgument("spectrum-dump writes CSV only".into()).into());
    }
    let basis = BasisTruncation::new(o.l_max);
    let n_theta = o.n_theta.unwrap_or(o.l_max as usize + 1);
    let n_phi = o.n_phi.unwrap_or(2 * o.l_max as usize + 2);
    let q = build_quadrature(n_theta.max(2), n_phi.max(2))?;
    let ops = OperatorSet::build(basis, &q)?;
    let op = match name {
        OperatorName::Lx => ops.angular_momentum(Axis::X),
        OperatorName::Ly => ops.angular_momentum(Axis::Y),
        OperatorName::Lz => ops.angular_momentum(Axis::Z),
        OperatorName::Erx => ops.direction_cosine(Axis::X),
        OperatorName::Ery => ops.direction_cosine(Axis::Y),
        OperatorName::Erz => ops.direction_cosine(Axis::Z),
        OperatorName::RPix => ops.geometric_momentum(Axis::X),
        OperatorName::RPiy => ops.geometric_momentum(Axis::Y),
        OperatorName::RPiz => ops.geometric_momentum(Axis::Z),
    };
    let header = format!(
        "# operator={}\n# l_max={}\n# n_theta={}\n# n_phi={}\n# threshold=1e-14\n",
        name.label(),
        o.l_max,
        q.n_theta(),
        q.n_phi
    );
    let body = format_elements(name.label(), &op.nonzero_elements(1e-14));
    emit(o, &(header + &body))
}
