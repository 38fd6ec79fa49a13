//! Monte Carlo oracle for the efficiency formulas.
//!
//! Each replicate draws one stationary Gaussian AR(1) path from its own
//! random stream, derived from `(seed, replicate)`. The estimator for factor
//! `k` reads the first `k * n_k` states of that path, with
//! `n_k = floor(B / (k + theta))`, and averages every `k`-th one. Sharing the
//! path across factors within a replicate (common random numbers) makes the
//! estimated variance ratios far less noisy than independent paths would.
//! `theta` only enters through the sample counts; no delay is simulated.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::acf::Budget;
use crate::ar1::{eff, ThinningProblem};
use crate::error::{Error, Result};

/// Fewest samples per replicate allowed at any factor.
pub const MIN_SAMPLES: u64 = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub rho: f64,
    pub theta: f64,
    pub budget: Budget,
    pub k_values: Vec<u64>,
    pub replications: usize,
    pub seed: u64,
    pub sigma2: f64,
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        ThinningProblem::new(self.theta, self.rho)?;
        if !(self.sigma2 > 0.0 && self.sigma2.is_finite()) {
            return Err(Error::InvalidConfig(format!("sigma2 must be positive (got {})", self.sigma2)));
        }
        if self.replications < 3 {
            return Err(Error::InvalidConfig("at least 3 replications are required".into()));
        }
        if self.k_values.is_empty() {
            return Err(Error::InvalidConfig("no thinning factors given".into()));
        }
        for &k in &self.k_values {
            if k == 0 {
                return Err(Error::FactorTooSmall { k, min: 1 });
            }
            let n = self.budget.samples(k, self.theta);
            if n < MIN_SAMPLES {
                return Err(Error::InvalidConfig(format!(
                    "budget {} gives only {n} samples at k = {k}; need at least {MIN_SAMPLES}",
                    self.budget.get()
                )));
            }
        }
        Ok(())
    }

    /// States of the chain the estimator for `k` consumes: `k * n_k`.
    pub fn chain_length(&self, k: u64) -> u64 {
        k * self.budget.samples(k, self.theta)
    }

    fn stream(&self, replicate: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(replicate as u64);
        rng
    }
}

/// Stationary AR(1) path `y_1 ~ N(0, sigma2)`,
/// `y_{t+1} = rho y_t + e_t` with `e_t ~ N(0, sigma2 (1 - rho^2))`.
pub fn generate_ar1(rho: f64, n: usize, sigma2: f64, seed: u64) -> Result<Vec<f64>> {
    ThinningProblem::new(0.0, rho)?;
    if !(sigma2 > 0.0) {
        return Err(Error::InvalidConfig(format!("sigma2 must be positive (got {sigma2})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(ar1_path(&mut rng, rho, n, sigma2))
}

fn ar1_path<R: Rng>(rng: &mut R, rho: f64, n: usize, sigma2: f64) -> Vec<f64> {
    let sd = sigma2.sqrt();
    let innovation_sd = (sigma2 * (1.0 - rho * rho)).sqrt();
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    let mut y = sd * rng.sample::<f64, _>(StandardNormal);
    out.push(y);
    for _ in 1..n {
        y = rho * y + innovation_sd * rng.sample::<f64, _>(StandardNormal);
        out.push(y);
    }
    out
}

/// Mean of `y_k, y_2k, ..., y_{n k}` (1-based) from a path of at least `n k` states.
fn thinned_mean(path: &[f64], k: u64, n: u64) -> f64 {
    let k = k as usize;
    let sum: f64 = path[k - 1..(k * n as usize)].iter().step_by(k).sum();
    sum / n as f64
}

/// Thinned means for every factor in `ks`, one row per replicate.
fn replicate_means(cfg: &SimulationConfig, ks: &[u64]) -> Vec<Vec<f64>> {
    let longest = ks.iter().map(|&k| cfg.chain_length(k)).max().unwrap_or(0) as usize;
    (0..cfg.replications)
        .into_par_iter()
        .map(|rep| {
            let path = ar1_path(&mut cfg.stream(rep), cfg.rho, longest, cfg.sigma2);
            ks.iter()
                .map(|&k| thinned_mean(&path, k, cfg.budget.samples(k, cfg.theta)))
                .collect()
        })
        .collect()
}

fn sample_variance(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
}

/// Leave-one-out sample variances.
fn jackknife_variances(xs: &[f64]) -> Vec<f64> {
    let n = xs.len() as f64;
    let s1: f64 = xs.iter().sum();
    let s2: f64 = xs.iter().map(|x| x * x).sum();
    xs.iter()
        .map(|x| {
            let (a, b) = (s1 - x, s2 - x * x);
            (b - a * a / (n - 1.0)) / (n - 2.0)
        })
        .collect()
}

/// Jackknife standard error from leave-one-out replicates of a statistic.
fn jackknife_se(leave_one_out: &[f64]) -> f64 {
    let n = leave_one_out.len() as f64;
    let mean = leave_one_out.iter().sum::<f64>() / n;
    ((n - 1.0) / n * leave_one_out.iter().map(|v| (v - mean).powi(2)).sum::<f64>()).sqrt()
}

/// Variance of the thinned mean across replicates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThinnedVariance {
    pub n_k: u64,
    pub var_hat: f64,
    pub se: f64,
}

pub fn thinned_mean_variance(cfg: &SimulationConfig, k: u64) -> Result<ThinnedVariance> {
    cfg.validate()?;
    if k == 0 {
        return Err(Error::FactorTooSmall { k, min: 1 });
    }
    let n_k = cfg.budget.samples(k, cfg.theta);
    if n_k == 0 {
        return Err(Error::ZeroSamples { budget: cfg.budget.get(), k, theta: cfg.theta });
    }
    let means: Vec<f64> = replicate_means(cfg, &[k]).into_iter().map(|row| row[0]).collect();
    Ok(ThinnedVariance {
        n_k,
        var_hat: sample_variance(&means),
        se: jackknife_se(&jackknife_variances(&means)),
    })
}

/// Empirical against closed-form efficiency for one factor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KRecord {
    pub k: u64,
    pub n_k: u64,
    /// Variance of the thinned mean across replicates.
    pub var_hat: f64,
    /// Jackknife standard error of `var_hat`.
    pub se: f64,
    /// `var_hat(k = 1) / var_hat(k)`.
    pub eff_emp: f64,
    /// Jackknife standard error of `eff_emp`; zero for `k = 1`.
    pub eff_se: f64,
    /// Asymptotic closed form `eff(k)`.
    pub eff_pred: f64,
    /// Closed form at this budget, with floored sample counts.
    pub eff_pred_budget: f64,
    /// Set when `|eff_emp - eff_pred_budget| > 3 eff_se`.
    pub flag: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub config: SimulationConfig,
    pub records: Vec<KRecord>,
}

impl SimulationReport {
    pub fn record(&self, k: u64) -> Option<&KRecord> {
        self.records.iter().find(|r| r.k == k)
    }
}

/// Finite-budget AR(1) efficiency: `(n_k / n_1) g(rho) / g(rho^k)`.
fn budget_eff(k: u64, p: &ThinningProblem, budget: Budget) -> f64 {
    let ratio = budget.samples(k, p.theta()) as f64 / budget.samples(1, p.theta()) as f64;
    // eff(k) carries (1+theta)/(k+theta); swap it for the floored counts
    ratio * eff(k, p) * (k as f64 + p.theta()) / (1.0 + p.theta())
}

pub fn empirical_efficiency(cfg: &SimulationConfig) -> Result<SimulationReport> {
    cfg.validate()?;
    if !cfg.k_values.contains(&1) {
        return Err(Error::InvalidConfig("k = 1 must be among the thinning factors".into()));
    }
    let problem = ThinningProblem::new(cfg.theta, cfg.rho)?;
    let rows = replicate_means(cfg, &cfg.k_values);
    let column = |j: usize| -> Vec<f64> { rows.iter().map(|row| row[j]).collect() };
    let base_idx = cfg.k_values.iter().position(|&k| k == 1).unwrap();
    let base = column(base_idx);
    let base_var = sample_variance(&base);
    let base_loo = jackknife_variances(&base);

    let records = cfg
        .k_values
        .iter()
        .enumerate()
        .map(|(j, &k)| {
            let means = column(j);
            let var_hat = sample_variance(&means);
            let loo = jackknife_variances(&means);
            let ratio_loo: Vec<f64> = base_loo.iter().zip(&loo).map(|(b, v)| b / v).collect();
            let eff_emp = base_var / var_hat;
            let eff_se = jackknife_se(&ratio_loo);
            let eff_pred_budget = budget_eff(k, &problem, cfg.budget);
            KRecord {
                k,
                n_k: cfg.budget.samples(k, cfg.theta),
                var_hat,
                se: jackknife_se(&loo),
                eff_emp,
                eff_se,
                eff_pred: eff(k, &problem),
                eff_pred_budget,
                flag: (eff_emp - eff_pred_budget).abs() > 3.0 * eff_se,
            }
        })
        .collect();
    Ok(SimulationReport { config: cfg.clone(), records })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(rho: f64, theta: f64, budget: f64, ks: &[u64], reps: usize) -> SimulationConfig {
        SimulationConfig {
            rho,
            theta,
            budget: Budget::new(budget).unwrap(),
            k_values: ks.to_vec(),
            replications: reps,
            seed: 11,
            sigma2: 1.0,
        }
    }

    fn lag1(xs: &[f64]) -> f64 {
        let n = xs.len() as f64;
        let m = xs.iter().sum::<f64>() / n;
        let c0: f64 = xs.iter().map(|x| (x - m).powi(2)).sum();
        xs.windows(2).map(|w| (w[0] - m) * (w[1] - m)).sum::<f64>() / c0
    }

    #[test]
    fn generator_is_deterministic() {
        let a = generate_ar1(0.7, 1000, 2.0, 5).unwrap();
        assert_eq!(a, generate_ar1(0.7, 1000, 2.0, 5).unwrap());
        assert_ne!(a, generate_ar1(0.7, 1000, 2.0, 6).unwrap());
        assert!(generate_ar1(1.0, 10, 1.0, 0).is_err());
    }

    #[test]
    fn white_noise_has_no_lag_correlation() {
        let n = 100_000;
        let y = generate_ar1(0.0, n, 1.0, 3).unwrap();
        assert!(lag1(&y).abs() < 3.0 / (n as f64).sqrt());
    }

    #[test]
    fn stationary_variance() {
        let y = generate_ar1(0.9, 1_000_000, 1.0, 9).unwrap();
        let m = y.iter().sum::<f64>() / y.len() as f64;
        let v = y.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (y.len() - 1) as f64;
        assert!((v - 1.0).abs() < 0.01, "{v}");
    }

    #[test]
    fn thinned_path_is_ar1_in_rho_pow_k() {
        let (rho, k) = (0.9f64, 3usize);
        let y = generate_ar1(rho, 600_000, 1.0, 21).unwrap();
        let thinned: Vec<f64> = y[k - 1..].iter().step_by(k).copied().collect();
        let n = thinned.len() as f64;
        assert!((lag1(&thinned) - rho.powi(3)).abs() < 3.0 / n.sqrt());
    }

    #[test]
    fn chain_length_accounting() {
        let cfg = config(0.5, 1.5, 1000.0, &[1, 3, 7], 5);
        assert_eq!(cfg.chain_length(1), 400);
        assert_eq!(cfg.chain_length(3), 3 * 222);
        assert_eq!(cfg.chain_length(7), 7 * 117);
        let path: Vec<f64> = (1..=10).map(f64::from).collect();
        assert_eq!(thinned_mean(&path, 3, 3), (3.0 + 6.0 + 9.0) / 3.0);
    }

    #[test]
    fn config_validation() {
        assert!(config(0.5, 1.0, 50.0, &[1, 10], 10).validate().is_err());
        assert!(config(0.5, 1.0, 1e4, &[0], 10).validate().is_err());
        assert!(config(0.5, 1.0, 1e4, &[1], 2).validate().is_err());
        assert!(empirical_efficiency(&config(0.5, 1.0, 1e4, &[2, 3], 10)).is_err());
    }

    #[test]
    fn jackknife_helpers() {
        let xs = [1.0, 4.0, 2.0, 8.0, 5.0];
        let loo = jackknife_variances(&xs);
        for (i, v) in loo.iter().enumerate() {
            let rest: Vec<f64> = xs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| *x).collect();
            assert!((v - sample_variance(&rest)).abs() < 1e-12);
        }
        // jackknife SE of a mean equals the usual s / sqrt(n)
        let loo_means: Vec<f64> = (0..5)
            .map(|i| (xs.iter().sum::<f64>() - xs[i]) / 4.0)
            .collect();
        let want = (sample_variance(&xs) / 5.0).sqrt();
        assert!((jackknife_se(&loo_means) - want).abs() < 1e-12);
    }

    #[test]
    fn iid_mean_variance() {
        let cfg = config(0.0, 1.0, 20_000.0, &[1], 400);
        let tv = thinned_mean_variance(&cfg, 1).unwrap();
        assert_eq!(tv.n_k, 10_000);
        let scaled = tv.n_k as f64 * tv.var_hat;
        assert!((scaled - 1.0).abs() < 3.0 * tv.n_k as f64 * tv.se, "{scaled}");
    }

    #[test]
    fn thinned_variance_matches_asymptotics() {
        let cfg = config(0.9, 1.0, 2e5, &[1, 3], 2000);
        let tv = thinned_mean_variance(&cfg, 1).unwrap();
        let scaled = tv.n_k as f64 * tv.var_hat;
        assert!((scaled - 19.0).abs() < 0.05 * 19.0, "{scaled}");
        let tv3 = thinned_mean_variance(&cfg, 3).unwrap();
        let r3 = 0.9f64.powi(3);
        let want = (1.0 + r3) / (1.0 - r3);
        let scaled = tv3.n_k as f64 * tv3.var_hat;
        assert!((scaled - want).abs() < 0.05 * want, "{scaled} vs {want}");
    }

    #[test]
    fn white_noise_efficiency() {
        let cfg = config(0.0, 1.0, 1e5, &[1, 3], 400);
        let report = empirical_efficiency(&cfg).unwrap();
        let r = report.record(3).unwrap();
        assert!((r.eff_emp - 0.5).abs() < 3.0 * r.eff_se, "{r:?}");
        let one = report.record(1).unwrap();
        assert_eq!((one.eff_emp, one.eff_se), (1.0, 0.0));
        assert!(one.se > 0.0 && r.se > 0.0);
    }

    #[test]
    fn reports_are_reproducible() {
        let cfg = config(0.8, 2.0, 5e4, &[1, 2, 5], 50);
        assert_eq!(empirical_efficiency(&cfg).unwrap(), empirical_efficiency(&cfg).unwrap());
        // the standalone variance reads the same paths
        let report = empirical_efficiency(&cfg).unwrap();
        let tv = thinned_mean_variance(&cfg, 5).unwrap();
        assert_eq!(tv.var_hat, report.record(5).unwrap().var_hat);
    }
}
