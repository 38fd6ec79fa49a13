use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    /// Aligned columns.
    #[default]
    Text,
    Csv,
    Json,
}

/// Cost-aware thinning of Markov chain output.
///
/// Advancing the chain costs one unit; evaluating the quantity of interest
/// costs THETA units. Efficiencies compare thinning by a factor k against
/// keeping every state at equal compute budget.
///
/// When rho^k underflows to zero the efficiency is evaluated at its
/// limit instead of failing.
#[derive(Debug, Parser)]
#[command(name = "thinning", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimal and near-optimal thinning factor for an AR(1) autocorrelation.
    Opt(OptArgs),
    /// Optimal k, its efficiency and the smallest near-optimal k over a grid.
    Tables(TablesArgs),
    /// Recommend a thinning factor for a recorded trace.
    Analyze(AnalyzeArgs),
    /// Certified gains and candidate factors for a band of AR(1) envelopes.
    Band(BandArgs),
    /// Monte Carlo check of the closed forms on simulated AR(1) chains.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
pub struct OptArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub rho: f64,
    /// Accept factors within a fraction ETA of the optimal efficiency.
    #[arg(long, default_value_t = thinning::DEFAULT_ETA)]
    pub eta: f64,
    /// Refuse searches that would evaluate more than this many factors.
    #[arg(long, default_value_t = thinning::DEFAULT_K_LIMIT)]
    pub k_limit: u64,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    #[arg(long, default_value_t = thinning::DEFAULT_ETA)]
    pub eta: f64,
    /// Comma-separated costs (default 0.001,0.01,...,1000).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub thetas: Option<Vec<f64>>,
    /// Comma-separated autocorrelations (default 0.1,0.5,0.9,...,0.999999).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub rhos: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnalysisMode {
    /// Fit rho from the lag-1 autocorrelation and use the closed forms.
    Ar1,
    /// Use the estimated autocorrelations directly.
    Generic,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Trace file: one value per line or single-column CSV; `-` reads stdin.
    /// The trace must already be past warmup.
    pub trace: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long, default_value_t = 1000)]
    pub max_lag: usize,
    #[arg(long, value_enum, default_value_t = AnalysisMode::Ar1)]
    pub mode: AnalysisMode,
    #[arg(long, default_value_t = thinning::DEFAULT_ETA)]
    pub eta: f64,
}

#[derive(Debug, Args)]
pub struct BandArgs {
    /// Lower AR(1) envelope.
    #[arg(long, allow_negative_numbers = true)]
    pub lo: f64,
    /// Upper AR(1) envelope.
    #[arg(long, allow_negative_numbers = true)]
    pub hi: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long, value_delimiter = ',', default_values_t = vec![1.0, 2.0, 4.0, 10.0])]
    pub gains: Vec<f64>,
    /// Largest factor considered for dominance (default 4 x kmax of the upper envelope).
    #[arg(long)]
    pub k_cap: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub rho: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub theta: f64,
    /// Compute budget in chain transitions, e.g. 1e6.
    #[arg(long, allow_negative_numbers = true)]
    pub budget: f64,
    /// Comma-separated thinning factors; must include 1.
    #[arg(long = "k", value_delimiter = ',', required = true)]
    pub k: Vec<u64>,
    #[arg(long, default_value_t = 200)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Marginal variance of the simulated chain.
    #[arg(long, default_value_t = 1.0)]
    pub sigma2: f64,
}
