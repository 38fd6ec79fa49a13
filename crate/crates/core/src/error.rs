use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("theta must be nonnegative (got {0})")]
    NegativeTheta(f64),
    #[error("rho must lie strictly between -1 and 1 (got {0})")]
    RhoOutOfRange(f64),
    #[error("rho must be nonnegative for the optimal-k search (got {0})")]
    NegativeRho(f64),
    #[error("acceptance rate alpha must lie in [0, 1] (got {0})")]
    AlphaOutOfRange(f64),
    #[error("thinning factor must be at least {min} (got {k})")]
    FactorTooSmall { k: u64, min: u64 },
    #[error("budget must be positive and finite (got {0})")]
    InvalidBudget(f64),
    #[error("budget {budget} buys no samples at thinning factor {k} with theta {theta}")]
    ZeroSamples { budget: f64, k: u64, theta: f64 },
    #[error("optimal k too expensive: the search requires checking {kmax} values (limit {limit})")]
    TooExpensive { kmax: u64, limit: u64 },
    #[error("doubling search overflowed before the efficiency curve turned down")]
    SearchOverflow,
    #[error("invalid autocorrelation sequence: {0}")]
    InvalidAcf(String),
    #[error("geometric tail ratio {0} is not below one; the tail sum diverges")]
    DivergentTail(f64),
    #[error("asymptotic variance factor 1 + 2R is not positive ({0})")]
    NonPositiveVariance(f64),
    #[error("autocorrelations are not nonnegative and nonincreasing (first violation at lag {lag})")]
    NotMonotone { lag: usize },
    #[error("series has zero sample variance")]
    ZeroVariance,
    #[error("series of length {len} is too short for max lag {max_lag}")]
    SeriesTooShort { len: usize, max_lag: usize },
    #[error("empty series")]
    EmptySeries,
    #[error("line {line}: cannot parse {token:?} as a number")]
    Parse { line: usize, token: String },
    #[error("band requires 0 <= rho_lo <= rho_hi < 1 (got [{lo}, {hi}])")]
    InvalidBand { lo: f64, hi: f64 },
    #[error("gain must be at least 1 (got {0})")]
    InvalidGain(f64),
    #[error("eta must lie strictly between 0 and 1 (got {0})")]
    InvalidEta(f64),
    #[error("k search cap {0} is too small: the non-dominated set reaches it")]
    CapTooSmall(u64),
    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),
}
