//! Statistical efficiency of thinning Markov chain output when evaluating
//! the quantity of interest costs `theta` times as much as one chain step.
//!
//! - [`ar1`]: closed forms and thresholds for AR(1) autocorrelations.
//! - [`acf`]: the same efficiency for arbitrary autocorrelation sequences,
//!   plus estimation from traces.
//! - [`optimizer`]: optimal and near-optimal thinning factors and tables.
//! - [`band`]: bounds when the autocorrelations sit between two AR(1) envelopes.
//! - [`sim`]: a Monte Carlo oracle that checks the closed forms.
//!
//! ```
//! use thinning::{kopt, eff, ThinningProblem, DEFAULT_K_LIMIT};
//!
//! let p = ThinningProblem::new(1.0, 0.99).unwrap();
//! let k = kopt(&p, DEFAULT_K_LIMIT).unwrap();
//! assert_eq!(k, 39);
//! assert!((eff(k, &p) - 1.93).abs() < 0.005);
//! ```

// NaN must fail every range check, so guards are written as `!(x > 0.0)`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acf;
pub mod ar1;
pub mod band;
pub mod error;
pub mod optimizer;
pub mod sim;
pub mod trace;

pub use acf::{
    acf_sums, efford, efford_finite_budget, estimate_acf, fit_ar1_rho, monotone_theta_bound,
    thinning_hurts, AcfSequence, AcfSums, Budget, TailPolicy, ThetaBound,
};
pub use ar1::{
    acceptance_adjusted_eff, critical_theta, eff, eff_limit_rho1, leff_prime, no_thinning_is_optimal,
    no_thinning_rho_bound, no_thinning_theta_bound, AcceptanceAdjustedProblem, ThinningProblem,
};
pub use band::{
    band_report, default_k_cap, eff_bounds, gain_search_cap, guaranteed_gain_interval, nondominated_set, upper_bound,
    BandReport, GainInterval, RhoBand,
};
pub use error::{Error, Result};
pub use optimizer::{
    efficiency_curve, getkmax, k_for_rho1_limit, kok, kopt, make_tables, EfficiencyCurve, KoptTables,
    TableCell, TableSpec, DEFAULT_ETA, DEFAULT_K_LIMIT,
};
pub use sim::{
    empirical_efficiency, generate_ar1, thinned_mean_variance, KRecord, SimulationConfig,
    SimulationReport, ThinnedVariance,
};
pub use trace::read_series;
