use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "hypspec", version, about = "Length spectra and flux-twisted trace-formula statistics")]
pub struct Cli {
    /// Suppress human-readable progress and summaries.
    #[arg(long, global = true)]
    pub quiet: bool,

    /// Print machine-readable JSON on standard output.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for parallel stages.
    #[arg(long, global = true, env = "HYPSPEC_WORKERS")]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate primitive closed geodesics up to a length cutoff and write a cache file.
    Enumerate(EnumerateArgs),
    /// Evaluate the correction integral I_{f,q}(L, tau).
    Ifq(IfqArgs),
    /// Evaluate a random-matrix number-variance density.
    Density(DensityArgs),
    /// Exact and sampled flux moments of the geometric side for one configuration.
    Variance(VarianceArgs),
    /// Monte-Carlo variance of a smoothed linear statistic in a Gaussian ensemble.
    Rmt(RmtArgs),
    /// Check a generator set.
    Validate(ValidateArgs),
    /// Sweep L or tau and write one CSV row per point.
    Scan(ScanArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyArg {
    Bump,
    Fejer,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorArg {
    Laplace,
    Dirac,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EnsembleArg {
    Goe,
    Gue,
    Gse,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct TestFunctionArgs {
    /// Support radius of the Fourier transform.
    #[arg(long = "A", default_value_t = 1.0)]
    pub a: f64,

    #[arg(long, value_enum, default_value_t = FamilyArg::Bump)]
    pub family: FamilyArg,

    /// Absolute quadrature tolerance.
    #[arg(long, default_value_t = hypspec::kernels::DEFAULT_TOLERANCE)]
    pub tol: f64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct EnumerateArgs {
    /// `bolza` or a TOML file with generator matrices.
    #[arg(long, default_value = "bolza")]
    pub gens: String,

    /// Length cutoff.
    #[arg(long = "lmax")]
    pub l_max: f64,

    /// Cache file to write.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct IfqArgs {
    #[command(flatten)]
    pub test_function: TestFunctionArgs,

    #[arg(long = "L")]
    pub l: f64,

    #[arg(long)]
    pub tau: f64,

    /// Flux denominator: a positive integer or `inf`.
    #[arg(long)]
    pub q: String,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DensityArgs {
    #[command(flatten)]
    pub test_function: TestFunctionArgs,

    #[arg(long, value_enum)]
    pub kind: EnsembleArg,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SpectrumArgs {
    /// Spectrum cache file. Without it the spectrum is enumerated from
    /// `--gens` up to the required cutoff A*L.
    #[arg(long)]
    pub spectrum: Option<PathBuf>,

    #[arg(long, default_value = "bolza")]
    pub gens: String,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SamplingArgs {
    /// Flux denominator: a positive integer or `inf`.
    #[arg(long)]
    pub q: String,

    #[arg(long, value_enum, default_value_t = OperatorArg::Laplace)]
    pub op: OperatorArg,

    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,

    #[arg(long)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct VarianceArgs {
    #[command(flatten)]
    pub spectrum: SpectrumArgs,

    #[command(flatten)]
    pub test_function: TestFunctionArgs,

    #[command(flatten)]
    pub sampling: SamplingArgs,

    #[arg(long = "L")]
    pub l: f64,

    #[arg(long)]
    pub tau: f64,

    /// JSON report path.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// CSV path for a single-row table.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct RmtArgs {
    #[arg(long, value_enum)]
    pub kind: EnsembleArg,

    /// Matrix dimension.
    #[arg(long, default_value_t = 512)]
    pub n: usize,

    #[arg(long, default_value_t = 2000)]
    pub reps: usize,

    #[arg(long = "A", default_value_t = 1.0)]
    pub a: f64,

    /// Window width in mean spacings.
    #[arg(long = "W", default_value_t = 32.0)]
    pub w: f64,

    /// Window center as a fraction of the semicircle radius.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub center: f64,

    #[arg(long)]
    pub seed: u64,

    /// Use dense matrices instead of the tridiagonal model.
    #[arg(long)]
    pub dense: bool,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ValidateArgs {
    /// `bolza` or a TOML file with generator matrices.
    #[arg(long, default_value = "bolza")]
    pub gens: String,

    /// Also validate a spectrum cache file.
    #[arg(long)]
    pub spectrum: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ScanArgs {
    #[command(flatten)]
    pub spectrum: SpectrumArgs,

    #[command(flatten)]
    pub test_function: TestFunctionArgs,

    #[command(flatten)]
    pub sampling: SamplingArgs,

    /// A value or a range `start:step:end` (inclusive).
    #[arg(long = "L")]
    pub l: String,

    /// A value or a range `start:step:end` (inclusive).
    #[arg(long)]
    pub tau: String,

    /// CSV output path; standard output when omitted.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}
