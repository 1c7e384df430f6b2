use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "spiked-clt",
    version,
    about = "CLT parameters and Monte Carlo checks for spiked random matrices"
)]
pub struct Cli {
    /// Output format; `power` defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for Monte Carlo and self-test work.
    #[arg(long, global = true, env = "SPIKED_CLT_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Limit parameters (mu, sigma^2, mu_bar) of a linear spectral statistic.
    Params(ParamsArgs),
    /// Simulate the ensemble and compare with the predicted Gaussian.
    Simulate(SimulateArgs),
    /// Power of the multiple-sample significance test.
    Power(PowerArgs),
    /// Check the closed-form integral catalog against quadrature.
    Identities(IdentitiesArgs),
    /// Run the numerical oracle-equivalence suite.
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "C", alias = "c")]
    C,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// A: spiked Wishart, B: non-central Wishart, C: non-central F.
    #[arg(long, value_enum)]
    pub model: ModelArg,
    /// Ratio m/n (models A and B).
    #[arg(long)]
    pub c: Option<f64>,
    /// Ratio m1/n (model C).
    #[arg(long)]
    pub c1: Option<f64>,
    /// Ratio m2/n (model C).
    #[arg(long)]
    pub c2: Option<f64>,
    /// delta for model A, nu for models B and C.
    #[arg(long)]
    pub spike: Option<f64>,
    /// linear | lrt | lrt:c=V | capacity | capacity:T=V | log1p | poly:c0,c1,.. | cheb:a0,a1,..[@lo,hi]
    #[arg(long, default_value = "linear")]
    pub statistic: String,
}

/// Derive the capacity parameter `T = nt (K0/m + 1) / (n P)` from channel settings.
#[derive(Debug, Clone, Args)]
pub struct SnrArgs {
    /// SNR P in dB.
    #[arg(long = "P-db", allow_negative_numbers = true)]
    pub p_db: Option<f64>,
    /// Rician factor K0 (defaults to the model B spike).
    #[arg(long = "K0")]
    pub k0: Option<f64>,
    /// Receive antennas.
    #[arg(long)]
    pub nr: Option<usize>,
    /// Transmit antennas.
    #[arg(long)]
    pub nt: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct ParamsArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub snr: SnrArgs,
    /// Matrix dimension; needed for the predicted mean.
    #[arg(long)]
    pub n: Option<usize>,
    /// Degrees of freedom (only used to derive T from the SNR flags).
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub snr: SnrArgs,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub m1: Option<usize>,
    #[arg(long)]
    pub m2: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also write the histogram (bin_left, bin_right, count, density) here.
    #[arg(long)]
    pub hist_csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PowerArgs {
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    #[arg(long)]
    pub c1: f64,
    #[arg(long)]
    pub c2: f64,
    /// Single spike value.
    #[arg(long, conflicts_with = "nu_grid")]
    pub nu: Option<f64>,
    /// `start:stop:step` or a comma-separated list.
    #[arg(long)]
    pub nu_grid: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct IdentitiesArgs {
    /// Randomized parameter draws per identity.
    #[arg(long, default_value_t = 100)]
    pub draws: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
