//! `bouncer`: tables and sweep data for the quantum bouncer with a Robin
//! mirror, plus an oracle verification suite.

mod commands;
mod config;
mod output;
mod verify;

use clap::{Parser, Subcommand};
use commands::{Observable, OperatorSpec};
use config::{Format, Resolved, RunConfig};
use robin_bouncer::qbounce::Measurement;
use robin_bouncer::spectrum::SelfAdjointParam;
use robin_bouncer::Error;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_)
            | Error::Domain { .. }
            | Error::UnsupportedRange { .. }
            | Error::Unsupported(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "bouncer", version, about = "Quantum bouncer spectra under the Robin condition psi(0) = lambda x0 psi'(0)")]
struct Cli {
    /// Output format; fit and verify default to json, everything else to csv.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// TOML file with format, precision and [constants] overrides.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Significant digits of numeric output.
    #[arg(long, global = true)]
    precision: Option<usize>,
    /// Gravitational acceleration in m/s^2.
    #[arg(long, global = true)]
    g: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Levels zeta_n and energies E_n in peV.
    Spectrum {
        #[arg(long, value_parser = commands::parse_lambda)]
        lambda: SelfAdjointParam,
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        /// Add Dirichlet energies and their difference E^D - E.
        #[arg(long)]
        dirichlet_reference: bool,
    },
    /// Sampled psi_n(xi) and densities on [0, xi_max].
    Eigenfunction {
        #[arg(long, value_parser = commands::parse_lambda)]
        lambda: SelfAdjointParam,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 12.0)]
        xi_max: f64,
        #[arg(long, default_value_t = 241)]
        points: usize,
    },
    /// Closed-form matrix elements for all pairs up to n_max.
    Elements {
        #[arg(long, value_parser = commands::parse_lambda)]
        lambda: SelfAdjointParam,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        /// x, x<q>, p, p-left, p2, delta; repeat or comma-separate.
        #[arg(long, value_delimiter = ',', value_parser = commands::parse_operator,
              default_value = "x,x2,p,p2,delta")]
        operator: Vec<OperatorSpec>,
    },
    /// Truncated sum rule with tail estimate.
    Sumrule {
        #[arg(long, value_parser = commands::parse_rule)]
        kind: String,
        #[arg(long, value_parser = commands::parse_lambda)]
        lambda: SelfAdjointParam,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 2000)]
        m_max: usize,
        /// Momentum transfer for the Bethe rule.
        #[arg(long, default_value_t = 1.0)]
        q: f64,
    },
    /// Delta x Delta p against the boundary-corrected bound.
    Uncertainty {
        #[arg(long, value_parser = commands::parse_lambda)]
        lambda: SelfAdjointParam,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
    },
    /// Chi-squared fit of lambda to measured frequencies.
    Fit {
        #[arg(long)]
        nu: f64,
        #[arg(long)]
        sigma: f64,
        #[arg(long, value_parser = commands::parse_transition, default_value = "1:6")]
        transition: (usize, usize),
        /// Additional measurement "nu,sigma,n:k"; may repeat.
        #[arg(long, value_parser = commands::parse_measurement)]
        extra: Vec<Measurement>,
    },
    /// Local g from a measured frequency at fixed lambda.
    ExtractG {
        #[arg(long)]
        nu: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long, value_parser = commands::parse_transition, default_value = "1:6")]
        transition: (usize, usize),
        #[arg(long, default_value_t = 0.0)]
        lambda: f64,
    },
    /// Decay constant and probability under the mirror.
    Penetration {
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 1)]
        n_max: usize,
    },
    /// Robin parameter from the U(1) phase and deficiency scale.
    PhaseMap {
        #[arg(long, default_value_t = 32)]
        theta_steps: usize,
        #[arg(long, default_value_t = 16)]
        eps_steps: usize,
        #[arg(long, default_value_t = 3.0)]
        eps_max: f64,
    },
    /// One observable over a lambda grid.
    Sweep {
        #[arg(long, allow_negative_numbers = true)]
        lambda_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        lambda_max: f64,
        #[arg(long)]
        steps: usize,
        /// energy(n), energy-pev(n), energy-approx-dirichlet(n),
        /// energy-approx-neumann(n), transition(n,k), uncertainty-bound(n),
        /// uncertainty-bound-ket(n)
        #[arg(long, value_parser = commands::parse_observable)]
        observable: Observable,
    },
    /// Run the oracle cross-check suite.
    Verify {
        /// Shift every root used by the suite by this amount.
        #[arg(long, hide = true, default_value_t = 0.0, allow_negative_numbers = true)]
        tamper_root: f64,
    },
}

fn name(c: &Command) -> &'static str {
    match c {
        Command::Spectrum { .. } => "spectrum",
        Command::Eigenfunction { .. } => "eigenfunction",
        Command::Elements { .. } => "elements",
        Command::Sumrule { .. } => "sumrule",
        Command::Uncertainty { .. } => "uncertainty",
        Command::Fit { .. } => "fit",
        Command::ExtractG { .. } => "extract-g",
        Command::Penetration { .. } => "penetration",
        Command::PhaseMap { .. } => "phase-map",
        Command::Sweep { .. } => "sweep",
        Command::Verify { .. } => "verify",
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let file = match &cli.config {
        Some(p) => RunConfig::load(p).map_err(Failure::Usage)?,
        None => RunConfig::default(),
    };
    let cfg = Resolved::new(file, cli.format, cli.precision, cli.g).map_err(Failure::Usage)?;
    let scales = cfg.scales().map_err(Failure::Usage)?;
    let command = name(&cli.command);
    let default_format = match cli.command {
        Command::Fit { .. } | Command::Verify { .. } => Format::Json,
        _ => Format::Csv,
    };
    let format = cfg.format.unwrap_or(default_format);
    let mut ok = true;
    let table = match cli.command {
        Command::Spectrum { lambda, n_max, dirichlet_reference } => {
            commands::spectrum(lambda, n_max, dirichlet_reference, &scales)?
        }
        Command::Eigenfunction { lambda, n_max, xi_max, points } => {
            commands::eigenfunction(lambda, n_max, xi_max, points)?
        }
        Command::Elements { lambda, n_max, operator } => commands::elements(lambda, n_max, &operator)?,
        Command::Sumrule { kind, lambda, n, m_max, q } => commands::sumrule(&kind, n, lambda, m_max, q)?,
        Command::Uncertainty { lambda, n_max } => commands::uncertainty(lambda, n_max)?,
        Command::Fit { nu, sigma, transition, extra } => {
            let mut data = vec![Measurement::new(nu, sigma, transition.0, transition.1)?];
            data.extend(extra);
            commands::fit(&data, &scales)?
        }
        Command::ExtractG { nu, sigma, transition, lambda } => {
            let m = Measurement::new(nu, sigma, transition.0, transition.1)?;
            commands::extract(&m, lambda, &scales)?
        }
        Command::Penetration { lambda, n_max } => commands::penetration_table(lambda, n_max, &scales)?,
        Command::PhaseMap { theta_steps, eps_steps, eps_max } => {
            commands::phase_map(theta_steps, eps_steps, eps_max)?
        }
        Command::Sweep { lambda_min, lambda_max, steps, observable } => {
            commands::sweep(lambda_min, lambda_max, steps, observable, &scales)?
        }
        Command::Verify { tamper_root } => {
            let checks = verify::run(tamper_root)?;
            for c in checks.iter().filter(|c| !c.passed()) {
                eprintln!("check {} failed: residual {:e} > tolerance {:e}", c.name, c.residual, c.tolerance);
                ok = false;
            }
            verify::table(&checks)
        }
    };
    let text = output::render(&table, &cfg, command, format);
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Failure::Numerical(format!("cannot write output: {e}")))?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Numerical(m)) => {
            eprintln!("numerical failure: {m}");
            ExitCode::from(2)
        }
    }
}
