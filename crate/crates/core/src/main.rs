use std::process::ExitCode;

use clap::builder::TypedValueParser;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gha::hartree::{critical_coupling, solve_level, xi, Branch, OscillatorModel};
use gha::hipt::{second_order, second_order_with, HiptOptions};
use gha::oracle::{converged_levels, converged_levels_with};
use gha::qft::{self, FieldTheory};
use gha::reports::{self, format, Meta, Tolerances};
use gha::vacuum::{log_grid, log_log_slope, strong_coupling_scaling, vacuum_structure};
use gha::{GhaError, Phase};

#[derive(Parser)]
#[command(name = "gha", version, about = "Generalized Hartree approximation toolkit")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Omit generator, timestamp and thread count from the output.
    #[arg(long, global = true)]
    no_meta: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Hartree energies (and second-order corrections) of selected levels.
    Spectrum(SpectrumArgs),
    /// Double-well levels with phase selection and the g²/(16λ) shift.
    Dwo(DwoArgs),
    /// Second-order breakdown for one level.
    Hipt(HiptArgs),
    /// Converged levels from truncated-basis diagonalization.
    Oracle(OracleArgs),
    /// Bogoliubov structure of the Hartree vacuum.
    Vacuum(VacuumArgs),
    /// λφ⁴ field theory in the Hartree vacuum.
    #[command(subcommand)]
    Qft(QftCommand),
    /// Reproduce a benchmark table (1-4).
    Table(TableArgs),
}

#[derive(Args)]
struct ModelArgs {
    /// Anharmonic power 2k (4, 6 or 8).
    #[arg(long, default_value_t = 4)]
    power: u32,
    /// Coefficient of φ²/2.
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    g: f64,
    #[arg(long)]
    lambda: f64,
}

impl ModelArgs {
    fn model(&self) -> gha::Result<OscillatorModel<f64>> {
        OscillatorModel::new(self.power, self.g, self.lambda)
    }
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Comma-separated level indices.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    levels: Vec<usize>,
    /// Perturbative order: 0 or 2.
    #[arg(long, default_value_t = 0, value_parser = clap::builder::PossibleValuesParser::new(["0", "2"]).map(|s| s.parse::<u8>().unwrap()))]
    order: u8,
}

#[derive(Args)]
struct DwoArgs {
    #[arg(long)]
    lambda: f64,
    /// Negative coefficient of φ²/2.
    #[arg(long, allow_hyphen_values = true, default_value_t = -1.0)]
    g: f64,
    #[arg(long, value_delimiter = ',', default_value = "0")]
    levels: Vec<usize>,
    #[arg(long, default_value_t = 0, value_parser = clap::builder::PossibleValuesParser::new(["0", "2"]).map(|s| s.parse::<u8>().unwrap()))]
    order: u8,
}

#[derive(Args)]
struct HiptArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 0)]
    level: usize,
    /// Keep only even level differences in the second-order sum.
    #[arg(long)]
    strict_paper: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Highest level to converge.
    #[arg(long, default_value_t = 0)]
    n_max: usize,
    /// Absolute convergence tolerance under basis doubling.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Basis frequency; defaults to the Hartree frequency of level n_max.
    #[arg(long)]
    basis_frequency: Option<f64>,
}

#[derive(Args)]
struct VacuumArgs {
    /// Evaluate directly at this Hartree frequency.
    #[arg(long, conflicts_with_all = ["lambda", "scaling"])]
    omega: Option<f64>,
    /// Quartic coupling; the frequency comes from the gap equation.
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    g: f64,
    #[arg(long, default_value_t = 0)]
    level: usize,
    /// Sample n₀(λ) on a log grid and fit the log-log slope.
    #[arg(long)]
    scaling: bool,
    #[arg(long, default_value_t = 1e3)]
    lambda_min: f64,
    #[arg(long, default_value_t = 1e5)]
    lambda_max: f64,
    #[arg(long, default_value_t = 41)]
    points: usize,
}

#[derive(Args)]
struct TheoryArgs {
    /// Bare mass squared.
    #[arg(long, default_value_t = 1.0)]
    mass2: f64,
    #[arg(long)]
    lambda: f64,
    /// Momentum cutoff Λ.
    #[arg(long, default_value_t = 10.0)]
    cutoff: f64,
}

impl TheoryArgs {
    fn theory(&self) -> gha::Result<FieldTheory<f64>> {
        FieldTheory::new(self.mass2, self.lambda, self.cutoff)
    }
}

#[derive(Subcommand)]
enum QftCommand {
    /// Mass gap at a given σ, plus the vacuum branches.
    Gap {
        #[command(flatten)]
        theory: TheoryArgs,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        sigma: f64,
    },
    /// Effective potential on a σ grid.
    Potential {
        #[command(flatten)]
        theory: TheoryArgs,
        #[arg(long, default_value_t = 3.0)]
        sigma_max: f64,
        #[arg(long, default_value_t = 61)]
        points: usize,
    },
    /// Renormalized mass and coupling.
    Renorm {
        #[command(flatten)]
        theory: TheoryArgs,
    },
    /// Vacuum structure function and condensate densities on a k grid.
    Structure {
        #[command(flatten)]
        theory: TheoryArgs,
        #[arg(long, default_value_t = 5.0)]
        k_max: f64,
        #[arg(long, default_value_t = 51)]
        points: usize,
    },
    /// Static potential on an r grid, in closed form and by Fourier quadrature.
    Static {
        /// Renormalized mass m_R.
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long, default_value_t = 0.1)]
        r_min: f64,
        #[arg(long, default_value_t = 10.0)]
        r_max: f64,
        #[arg(long, default_value_t = 20)]
        points: usize,
    },
    /// One Stevenson integral, closed form and quadrature.
    Stevenson {
        #[arg(long, allow_hyphen_values = true)]
        n: i32,
        #[arg(long = "M2")]
        m2: f64,
        #[arg(long, default_value_t = 10.0)]
        cutoff: f64,
    },
}

#[derive(Args)]
struct TableArgs {
    /// Table number, 1-4.
    #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
    id: u8,
    /// Exit with status 1 when any non-disputed cell fails.
    #[arg(long)]
    compare: bool,
    /// Relative tolerance applied to every cell.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Serialize)]
struct Envelope<'a, I: Serialize, R: Serialize, X: Serialize> {
    command: &'a str,
    input: I,
    results: &'a [R],
    #[serde(skip_serializing_if = "Option::is_none")]
    extra: Option<X>,
    #[serde(skip_serializing_if = "Option::is_none")]
    meta: Option<Meta>,
}

struct Out {
    format: Format,
    meta: bool,
}

impl Out {
    fn emit<I: Serialize, R: Serialize, X: Serialize>(
        &self,
        command: &str,
        input: I,
        results: &[R],
        extra: Option<X>,
    ) -> gha::Result<String> {
        match self.format {
            Format::Json => format::json(&Envelope { command, input, results, extra, meta: self.meta.then(Meta::now) }),
            Format::Csv => format::csv(results),
            Format::Md => format::markdown(results),
        }
    }
}

#[derive(Serialize)]
struct LevelRow {
    n: usize,
    phase: Phase,
    omega: f64,
    sigma: f64,
    e0: f64,
    delta_e2: Option<f64>,
    e2: Option<f64>,
}

fn level_rows(model: &OscillatorModel<f64>, levels: &[usize], order: u8) -> gha::Result<Vec<LevelRow>> {
    levels
        .iter()
        .map(|&n| {
            let s = solve_level(model, n)?;
            let second = if order == 2 { Some(second_order(model, n)?) } else { None };
            Ok(LevelRow {
                n,
                phase: s.phase,
                omega: s.omega,
                sigma: s.sigma,
                e0: s.energy,
                delta_e2: second.as_ref().map(|r| r.delta_e2),
                e2: second.as_ref().map(|r| r.e2),
            })
        })
        .collect()
}

#[derive(Serialize)]
struct ModelInput {
    power: u32,
    g: f64,
    lambda: f64,
}

impl From<&OscillatorModel<f64>> for ModelInput {
    fn from(m: &OscillatorModel<f64>) -> Self {
        Self { power: m.power(), g: m.g, lambda: m.lambda }
    }
}

#[derive(Serialize)]
struct DwoRow {
    n: usize,
    phase: Phase,
    lambda_c: f64,
    omega: f64,
    sigma: f64,
    e0: f64,
    /// `E + g²/(16λ)`.
    e0_shifted: f64,
    e2_shifted: Option<f64>,
    branches: String,
}

fn describe_branches(branches: &[Branch<f64>]) -> String {
    branches
        .iter()
        .map(|b| format!("{}:omega={}:sigma={}:E={}", b.phase, b.omega, b.sigma, b.energy))
        .collect::<Vec<_>>()
        .join(";")
}

fn run(cli: &Cli) -> gha::Result<(String, bool)> {
    let out = Out { format: cli.format, meta: !cli.no_meta };
    let none: Option<()> = None;
    match &cli.command {
        Command::Spectrum(a) => {
            let model = a.model.model()?;
            let rows = level_rows(&model, &a.levels, a.order)?;
            Ok((out.emit("spectrum", ModelInput::from(&model), &rows, none)?, true))
        }
        Command::Dwo(a) => {
            let model = OscillatorModel::quartic(a.g, a.lambda)?;
            if !model.is_double_well() {
                return Err(GhaError::InvalidModel("dwo needs g < 0".into()));
            }
            let shift = a.g * a.g / (16.0 * a.lambda);
            let rows = a
                .levels
                .iter()
                .map(|&n| {
                    let s = solve_level(&model, n)?;
                    let e2 = if a.order == 2 { Some(second_order(&model, n)?.e2 + shift) } else { None };
                    Ok(DwoRow {
                        n,
                        phase: s.phase,
                        lambda_c: critical_coupling(xi(n), a.g)?,
                        omega: s.omega,
                        sigma: s.sigma,
                        e0: s.energy,
                        e0_shifted: s.energy + shift,
                        e2_shifted: e2,
                        branches: describe_branches(&s.branches),
                    })
                })
                .collect::<gha::Result<Vec<_>>>()?;
            Ok((out.emit("dwo", ModelInput::from(&model), &rows, none)?, true))
        }
        Command::Hipt(a) => {
            let model = a.model.model()?;
            let report = second_order_with(&model, a.level, HiptOptions { strict_paper: a.strict_paper })?;
            let level = solve_level(&model, a.level)?;
            let summary = [LevelRow {
                n: report.n,
                phase: level.phase,
                omega: level.omega,
                sigma: level.sigma,
                e0: report.e0,
                delta_e2: Some(report.delta_e2),
                e2: Some(report.e2),
            }];
            match cli.format {
                Format::Json => Ok((out.emit("hipt", ModelInput::from(&model), &summary, Some(&report))?, true)),
                _ => Ok((out.emit("hipt", (), &report.contributions, none)?, true)),
            }
        }
        Command::Oracle(a) => {
            let model = a.model.model()?;
            let est = match a.basis_frequency {
                Some(w) => converged_levels_with(&model, a.n_max, a.tol, w)?,
                None => converged_levels(&model, a.n_max, a.tol)?,
            };
            #[derive(Serialize)]
            struct Row {
                n: usize,
                energy: f64,
                convergence_error: f64,
            }
            let rows: Vec<Row> = est
                .levels
                .iter()
                .zip(&est.convergence_error)
                .enumerate()
                .map(|(n, (&energy, &convergence_error))| Row { n, energy, convergence_error })
                .collect();
            #[derive(Serialize)]
            struct Extra {
                dimension_used: usize,
                basis_frequency: f64,
            }
            let extra = Extra { dimension_used: est.dimension_used, basis_frequency: est.basis_frequency };
            Ok((out.emit("oracle", ModelInput::from(&model), &rows, Some(extra))?, true))
        }
        Command::Vacuum(a) => vacuum(a, &out),
        Command::Qft(q) => qft_command(q, &out),
        Command::Table(a) => {
            let tolerances = a.tol.map_or_else(Tolerances::default, Tolerances::uniform);
            let mut report = reports::run_table(a.id, &tolerances)?;
            if out.meta {
                report.meta = Some(Meta::now());
            }
            let text = match cli.format {
                Format::Json => format::json(&report)?,
                Format::Csv => format::report_csv(&report)?,
                Format::Md => format::report_markdown(&report)?,
            };
            Ok((text, !a.compare || report.passed()))
        }
    }
}

fn vacuum(a: &VacuumArgs, out: &Out) -> gha::Result<(String, bool)> {
    #[derive(Serialize)]
    struct Row {
        lambda: Option<f64>,
        omega: f64,
        alpha: f64,
        n0: f64,
        u: f64,
    }
    let none: Option<()> = None;
    if a.scaling {
        let model = OscillatorModel::quartic(a.g, a.lambda_min.max(100.0))?;
        let samples = strong_coupling_scaling(&model, &log_grid(a.lambda_min, a.lambda_max, a.points))?;
        #[derive(Serialize)]
        struct Sample {
            lambda: f64,
            n0: f64,
        }
        #[derive(Serialize)]
        struct Fit {
            log_log_slope: f64,
        }
        let rows: Vec<Sample> = samples.iter().map(|&(lambda, n0)| Sample { lambda, n0 }).collect();
        let fit = Fit { log_log_slope: log_log_slope(&samples)? };
        return Ok((out.emit("vacuum", (a.lambda_min, a.lambda_max, a.points), &rows, Some(fit))?, true));
    }
    let (lambda, omega) = match (a.omega, a.lambda) {
        (Some(w), _) => (None, w),
        (None, Some(l)) => (Some(l), solve_level(&OscillatorModel::quartic(a.g, l)?, a.level)?.omega),
        (None, None) => return Err(GhaError::Domain("vacuum needs --omega, --lambda or --scaling".into())),
    };
    let v = vacuum_structure(omega)?;
    let rows = [Row { lambda, omega, alpha: v.alpha, n0: v.n0, u: v.u }];
    Ok((out.emit("vacuum", (), &rows, none)?, true))
}

fn linear_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let points = points.max(2);
    (0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64).collect()
}

fn qft_command(q: &QftCommand, out: &Out) -> gha::Result<(String, bool)> {
    let none: Option<()> = None;
    match q {
        QftCommand::Gap { theory, sigma } => {
            let t = theory.theory()?;
            let state = qft::solve_mass_gap(&t, *sigma)?;
            let branches = qft::vev_branches(&t)?;
            Ok((out.emit("qft gap", t, &[state], Some(branches))?, true))
        }
        QftCommand::Potential { theory, sigma_max, points } => {
            let t = theory.theory()?;
            #[derive(Serialize)]
            struct Row {
                sigma: f64,
                m2_gap: f64,
                u: f64,
            }
            let rows = linear_grid(-sigma_max, *sigma_max, *points)
                .into_iter()
                .map(|sigma| {
                    Ok(Row {
                        sigma,
                        m2_gap: qft::solve_mass_gap(&t, sigma)?.m2_gap,
                        u: qft::effective_potential(&t, sigma)?,
                    })
                })
                .collect::<gha::Result<Vec<_>>>()?;
            Ok((out.emit("qft potential", t, &rows, none)?, true))
        }
        QftCommand::Renorm { theory } => {
            let t = theory.theory()?;
            let r = qft::renormalized(&t)?;
            #[derive(Serialize)]
            struct Row {
                m_r2: f64,
                m2_bar: f64,
                lambda_r: f64,
                ratio: f64,
            }
            let rows = [Row {
                m_r2: r.m_r2,
                m2_bar: qft::solve_mass_gap(&t, 0.0)?.m2_gap,
                lambda_r: r.lambda_r,
                ratio: r.lambda_r / t.lambda,
            }];
            Ok((out.emit("qft renorm", t, &rows, none)?, true))
        }
        QftCommand::Structure { theory, k_max, points } => {
            let t = theory.theory()?;
            let m2_gap = qft::solve_mass_gap(&t, 0.0)?.m2_gap;
            let m_r2 = qft::renormalized(&t)?.m_r2;
            #[derive(Serialize)]
            struct Row {
                k: f64,
                u: f64,
                rho: f64,
                n_finite: f64,
            }
            let rows = linear_grid(0.0, *k_max, *points)
                .into_iter()
                .map(|k| {
                    Ok(Row {
                        k,
                        u: qft::structure_function(k, t.m2, m2_gap)?,
                        rho: qft::density_ratio(k, m_r2)?,
                        n_finite: qft::finite_cutoff_density(k, t.m2, m2_gap)?,
                    })
                })
                .collect::<gha::Result<Vec<_>>>()?;
            #[derive(Serialize)]
            struct Extra {
                peak_density: f64,
            }
            let extra = Extra { peak_density: qft::peak_density(t.m2, m_r2)? };
            Ok((out.emit("qft structure", t, &rows, Some(extra))?, true))
        }
        QftCommand::Static { mass, r_min, r_max, points } => {
            #[derive(Serialize)]
            struct Row {
                r: f64,
                u_bessel: f64,
                u_fourier: f64,
                log_slope: f64,
            }
            let rows = log_grid(*r_min, *r_max, *points)
                .into_iter()
                .map(|r| {
                    Ok(Row {
                        r,
                        u_bessel: qft::static_potential(r, *mass)?,
                        u_fourier: qft::static_potential_fourier(r, *mass)?,
                        log_slope: qft::static_log_slope(r, *mass)?,
                    })
                })
                .collect::<gha::Result<Vec<_>>>()?;
            Ok((out.emit("qft static", mass, &rows, none)?, true))
        }
        QftCommand::Stevenson { n, m2, cutoff } => {
            #[derive(Serialize)]
            struct Row {
                n: i32,
                m2: f64,
                cutoff: f64,
                closed_form: f64,
                quadrature: f64,
            }
            let rows = [Row {
                n: *n,
                m2: *m2,
                cutoff: *cutoff,
                closed_form: qft::stevenson(*n, *m2, *cutoff)?,
                quadrature: qft::stevenson_quadrature(*n, *m2, *cutoff)?,
            }];
            Ok((out.emit("qft stevenson", (), &rows, none)?, true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
