//! Command-line front end: every figure-quality data set the library can
//! produce, emitted as CSV (default) or JSON. A run is fully determined by
//! its flags plus the seed (--seed, falling back to HERMITELAB_SEED, then 0).

mod commands;
mod table;

use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::process::ExitCode;

use table::{Format, Table};

#[derive(Parser)]
#[command(name = "hermitelab", version, about = "Hermite polynomial laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Output file (stdout when omitted).
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,
    /// Output format.
    #[arg(long, global = true, default_value = "csv", value_parser = parse_format)]
    format: Format,
    /// Root RNG seed; defaults to HERMITELAB_SEED, then 0.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

fn parse_format(s: &str) -> Result<Format, String> {
    match s {
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        other => Err(format!("unknown format `{other}` (use csv or json)")),
    }
}

impl OutputArgs {
    fn seed(&self) -> u64 {
        self.seed
            .or_else(|| {
                std::env::var("HERMITELAB_SEED")
                    .ok()
                    .and_then(|v| v.parse().ok())
            })
            .unwrap_or(0)
    }
}

#[derive(Subcommand)]
enum Command {
    /// 1D Hermite polynomials: evaluation, coefficient tables, MC oracle.
    Hermite {
        #[command(subcommand)]
        sub: HermiteCmd,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Multivariable Hermite polynomial evaluation.
    MvHermite {
        /// Comma-separated index vector, e.g. 3,1.
        #[arg(long)]
        nvec: String,
        /// Comma-separated evaluation point, e.g. 0.5,1.0.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// 2x2 correlation shorthand: unit diagonal with this off-diagonal.
        #[arg(long, conflicts_with = "cov", allow_hyphen_values = true)]
        rho: Option<f64>,
        /// Full covariance matrix, rows separated by `;`: "1,0.3;0.3,1".
        #[arg(long, allow_hyphen_values = true)]
        cov: Option<String>,
        /// Also evaluate the dual polynomial.
        #[arg(long)]
        dual: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Large-n approximation formulas against the exact values.
    Asymptotics {
        #[command(subcommand)]
        sub: AsymptoticsCmd,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Oscillator wave functions and their limit laws.
    Wavefn {
        #[command(subcommand)]
        sub: WavefnCmd,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Hermite kernel diagonals and their limit laws.
    Kernel {
        #[command(subcommand)]
        sub: KernelCmd,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Dyson Brownian motion: paths, watermelons, spectra.
    Dyson {
        #[command(subcommand)]
        sub: DysonCmd,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Tracy-Widom CDF tables and empirical edge fluctuations.
    Tracywidom {
        #[command(subcommand)]
        sub: TracyWidomCmd,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Edgeworth corrections against Monte Carlo.
    Edgeworth {
        #[command(subcommand)]
        sub: EdgeworthCmd,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Subcommand)]
enum HermiteCmd {
    /// Evaluate the polynomial at a point.
    Eval {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        /// Gaussian variance parameter.
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Evaluate the dual polynomial instead.
        #[arg(long)]
        dual: bool,
    },
    /// Coefficient table of the degree-n polynomial at variance t.
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
    },
    /// Monte Carlo oracle of the defining Gaussian expectation.
    Mc {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum AsymptoticsCmd {
    /// Exact values vs every approximation formula over a grid.
    Compare {
        #[arg(long, default_value_t = 25)]
        n: usize,
        /// Grid as lo:hi:step.
        #[arg(long, default_value = "-12:12:0.05", allow_hyphen_values = true)]
        grid: String,
    },
}

#[derive(Subcommand)]
enum WavefnCmd {
    /// Rescaled squared wave function against the arcsine law.
    Arcsine {
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value = "-2.2:2.2:0.005", allow_hyphen_values = true)]
        grid: String,
    },
}

#[derive(Subcommand)]
enum KernelCmd {
    /// Rescaled kernel diagonal against the semicircle law.
    Semicircle {
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value = "-2.5:2.5:0.005", allow_hyphen_values = true)]
        grid: String,
    },
}

#[derive(Subcommand)]
enum DysonCmd {
    /// Euler-Maruyama particle paths.
    Sde {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        horizon: f64,
        #[arg(long, default_value_t = 0.001)]
        dt: f64,
        /// Record every k-th macro step.
        #[arg(long, default_value_t = 1)]
        stride: usize,
    },
    /// Non-intersecting bridge (watermelon) paths on [0, t*].
    Watermelon {
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        tstar: f64,
        #[arg(long, default_value_t = 400)]
        steps: usize,
    },
    /// Eigenvalue histogram vs the DPP intensity.
    Spectrum {
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 0.01)]
        t: f64,
        #[arg(long, default_value_t = 1000)]
        draws: usize,
        #[arg(long, default_value_t = 100)]
        bins: usize,
        /// Histogram range as lo:hi.
        #[arg(long, default_value = "-2.5:2.5", allow_hyphen_values = true)]
        range: String,
    },
}

#[derive(Subcommand)]
enum TracyWidomCmd {
    /// CDF table on a grid.
    Cdf {
        #[arg(long, default_value = "-10:6:0.1", allow_hyphen_values = true)]
        grid: String,
    },
    /// Rescaled top-eigenvalue sample vs the limit CDF.
    Empirical {
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 2000)]
        draws: usize,
    },
}

#[derive(Subcommand)]
enum EdgeworthCmd {
    /// 1D ReLU-layer demo: Gaussian, corrected density, MC KDE.
    Demo1d {
        /// Number of neurons in the layer.
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        #[arg(long, default_value = "-5:5:0.01", allow_hyphen_values = true)]
        grid: String,
        /// KDE bandwidth override.
        #[arg(long)]
        bandwidth: Option<f64>,
    },
    /// 2D correlated demo at angle theta.
    Demo2d {
        #[arg(long, default_value_t = 0.55)]
        theta: f64,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 262_144)]
        samples: usize,
        #[arg(long, default_value = "-4:4:0.05", allow_hyphen_values = true)]
        grid: String,
    },
    /// Cumulants of an external sample batch (CSV, one row per sample).
    FromCsv {
        #[arg(long)]
        input: std::path::PathBuf,
        /// Highest cumulant order to report.
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
}

fn run(cli: Cli) -> Result<(Table, OutputArgs), String> {
    match cli.command {
        Command::Hermite { sub, out } => {
            let table = match sub {
                HermiteCmd::Eval { n, x, t, dual } => commands::hermite_eval(n, x, t, dual)?,
                HermiteCmd::Table { n, t } => commands::hermite_table(n, t)?,
                HermiteCmd::Mc { n, x, t, samples } => {
                    commands::hermite_mc(n, x, t, samples, out.seed())?
                }
            };
            Ok((table, out))
        }
        Command::MvHermite {
            nvec,
            x,
            rho,
            cov,
            dual,
            out,
        } => Ok((commands::mv_hermite(&nvec, &x, rho, cov.as_deref(), dual)?, out)),
        Command::Asymptotics { sub, out } => {
            let AsymptoticsCmd::Compare { n, grid } = sub;
            Ok((commands::asymptotics_compare(n, &grid)?, out))
        }
        Command::Wavefn { sub, out } => {
            let WavefnCmd::Arcsine { n, grid } = sub;
            Ok((commands::wavefn_arcsine(n, &grid)?, out))
        }
        Command::Kernel { sub, out } => {
            let KernelCmd::Semicircle { n, grid } = sub;
            Ok((commands::kernel_semicircle(n, &grid)?, out))
        }
        Command::Dyson { sub, out } => {
            let table = match sub {
                DysonCmd::Sde {
                    n,
                    horizon,
                    dt,
                    stride,
                } => commands::dyson_sde(n, horizon, dt, stride, out.seed())?,
                DysonCmd::Watermelon { n, tstar, steps } => {
                    commands::dyson_watermelon(n, tstar, steps, out.seed())?
                }
                DysonCmd::Spectrum {
                    n,
                    t,
                    draws,
                    bins,
                    range,
                } => commands::dyson_spectrum(n, t, draws, bins, &range, out.seed())?,
            };
            Ok((table, out))
        }
        Command::Tracywidom { sub, out } => {
            let table = match sub {
                TracyWidomCmd::Cdf { grid } => commands::tracywidom_cdf(&grid)?,
                TracyWidomCmd::Empirical { n, draws } => {
                    commands::tracywidom_empirical(n, draws, out.seed())?
                }
            };
            Ok((table, out))
        }
        Command::Edgeworth { sub, out } => {
            let table = match sub {
                EdgeworthCmd::Demo1d {
                    n,
                    samples,
                    grid,
                    bandwidth,
                } => commands::edgeworth_demo1d(n, samples, &grid, bandwidth, out.seed())?,
                EdgeworthCmd::Demo2d {
                    theta,
                    n,
                    samples,
                    grid,
                } => commands::edgeworth_demo2d(theta, n, samples, &grid, out.seed())?,
                EdgeworthCmd::FromCsv { input, order } => {
                    commands::edgeworth_from_csv(&input, order)?
                }
            };
            Ok((table, out))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((table, out)) => {
            let result = match &out.output {
                Some(path) => std::fs::File::create(path)
                    .map_err(|e| format!("--output {}: {e}", path.display()))
                    .and_then(|mut f| {
                        table
                            .write(&mut f, out.format)
                            .map_err(|e| format!("--output {}: {e}", path.display()))
                    }),
                None => {
                    let stdout = std::io::stdout();
                    let mut lock = stdout.lock();
                    match table.write(&mut lock, out.format).and_then(|_| lock.flush()) {
                        Ok(()) => Ok(()),
                        // Quietly stop when the consumer closed the pipe.
                        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {
                            return ExitCode::SUCCESS
                        }
                        Err(e) => Err(e.to_string()),
                    }
                }
            };
            if let Err(message) = result {
                eprintln!("error: {message}");
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}
