//! Thinning efficiency for arbitrary lag autocorrelations.
//!
//! Efficiency depends on the autocorrelations only through the sums
//! `R = sum_l rho_l` and `R_k = sum_l rho_{kl}`, with `R_{-k} = R - R_k`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How lags past the stored values are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailPolicy {
    /// `rho_l = 0` beyond the last stored lag.
    #[default]
    Truncate,
    /// `rho_l = rho_L * r^(l-L)` with `r = rho_L / rho_{L-1}`, used when
    /// `0 < r < 1`. Falls back to truncation when `r <= 0` or only one lag
    /// is stored.
    GeometricExtrapolate,
}

/// Lag autocorrelations `rho_1, ..., rho_L`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcfSequence {
    values: Vec<f64>,
    tail: TailPolicy,
}

impl AcfSequence {
    pub fn new(values: Vec<f64>, tail: TailPolicy) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidAcf("at least one lag is required".into()));
        }
        if let Some(i) = values.iter().position(|v| !(v.abs() < 1.0)) {
            return Err(Error::InvalidAcf(format!(
                "lag {} autocorrelation {} is not in (-1, 1)",
                i + 1,
                values[i]
            )));
        }
        let acf = Self { values, tail };
        acf.tail_ratio()?;
        Ok(acf)
    }

    pub fn truncated(values: Vec<f64>) -> Result<Self> {
        Self::new(values, TailPolicy::Truncate)
    }

    /// `rho^1, ..., rho^len`, truncated.
    pub fn geometric(rho: f64, len: usize) -> Result<Self> {
        let values = (1..=len).map(|l| rho.powi(l as i32)).collect();
        Self::truncated(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tail_policy(&self) -> TailPolicy {
        self.tail
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Lag-`l` autocorrelation under the tail policy (`l >= 1`).
    pub fn lag(&self, l: usize) -> f64 {
        assert!(l >= 1, "lags start at 1");
        if l <= self.values.len() {
            return self.values[l - 1];
        }
        match self.tail_ratio() {
            Ok(Some(r)) => self.values[self.values.len() - 1] * r.powi((l - self.values.len()) as i32),
            _ => 0.0,
        }
    }

    /// Ratio used for the extrapolated tail, if any.
    fn tail_ratio(&self) -> Result<Option<f64>> {
        if self.tail != TailPolicy::GeometricExtrapolate || self.values.len() < 2 {
            return Ok(None);
        }
        let last = self.values[self.values.len() - 1];
        let prev = self.values[self.values.len() - 2];
        if prev == 0.0 || last == 0.0 {
            return Ok(None);
        }
        let r = last / prev;
        if r >= 1.0 {
            Err(Error::DivergentTail(r))
        } else if r <= 0.0 {
            Ok(None)
        } else {
            Ok(Some(r))
        }
    }

    /// Whether `rho_1 >= rho_2 >= ... >= 0` holds, including the tail.
    /// Returns the first offending lag otherwise.
    pub fn check_monotone_nonnegative(&self) -> std::result::Result<(), usize> {
        let mut prev = f64::INFINITY;
        for (i, &v) in self.values.iter().enumerate() {
            if v < 0.0 || v > prev {
                return Err(i + 1);
            }
            prev = v;
        }
        Ok(())
    }
}

/// Compute budget in units of one chain transition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Budget(f64);

impl Budget {
    pub fn new(b: f64) -> Result<Self> {
        if b > 0.0 && b.is_finite() {
            Ok(Self(b))
        } else {
            Err(Error::InvalidBudget(b))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// Number of samples affordable at stride `k`: `floor(B / (k + theta))`.
    pub fn samples(self, k: u64, theta: f64) -> u64 {
        (self.0 / (k as f64 + theta)).floor() as u64
    }
}

/// `R`, `R_k` and `R_{-k}` for one thinning factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AcfSums {
    pub r: f64,
    pub r_k: f64,
    pub r_minus_k: f64,
    pub k: u64,
}

/// Sum the autocorrelations, splitting lags into multiples of `k` and the rest.
pub fn acf_sums(acf: &AcfSequence, k: u64) -> Result<AcfSums> {
    if k == 0 {
        return Err(Error::FactorTooSmall { k, min: 1 });
    }
    let stride = k as usize;
    let mut on = 0.0;
    let mut off = 0.0;
    for (i, &v) in acf.values.iter().enumerate() {
        if (i + 1) % stride == 0 {
            on += v;
        } else {
            off += v;
        }
    }
    if let Some(r) = acf.tail_ratio()? {
        let len = acf.values.len() as u64;
        let last = acf.values[acf.values.len() - 1];
        let total_tail = last * r / (1.0 - r);
        // first multiple of k beyond the stored lags
        let first = (len / k + 1) * k;
        let on_tail = last * r.powf((first - len) as f64) / (1.0 - r.powf(k as f64));
        on += on_tail;
        off += total_tail - on_tail;
    }
    Ok(AcfSums {
        r: on + off,
        r_k: on,
        r_minus_k: off,
        k,
    })
}

fn check_theta(theta: f64) -> Result<()> {
    if theta >= 0.0 && theta.is_finite() {
        Ok(())
    } else {
        Err(Error::NegativeTheta(theta))
    }
}

fn variance_factors(sums: &AcfSums) -> Result<(f64, f64)> {
    let full = 1.0 + 2.0 * sums.r;
    let thinned = 1.0 + 2.0 * sums.r_k;
    if !(full > 0.0) {
        return Err(Error::NonPositiveVariance(full));
    }
    if !(thinned > 0.0) {
        return Err(Error::NonPositiveVariance(thinned));
    }
    Ok((full, thinned))
}

/// Asymptotic efficiency `((1+theta)/(k+theta)) (1+2R)/(1+2R_k)`.
pub fn efford(k: u64, acf: &AcfSequence, theta: f64) -> Result<f64> {
    check_theta(theta)?;
    let sums = acf_sums(acf, k)?;
    let (full, thinned) = variance_factors(&sums)?;
    Ok((1.0 + theta) / (k as f64 + theta) * full / thinned)
}

/// Efficiency at a finite budget, where sample counts are floored.
pub fn efford_finite_budget(k: u64, acf: &AcfSequence, theta: f64, budget: Budget) -> Result<f64> {
    check_theta(theta)?;
    let base = budget.samples(1, theta);
    if base == 0 {
        return Err(Error::ZeroSamples { budget: budget.get(), k: 1, theta });
    }
    let thinned_n = budget.samples(k, theta);
    if thinned_n == 0 {
        return Err(Error::ZeroSamples { budget: budget.get(), k, theta });
    }
    let sums = acf_sums(acf, k)?;
    let (full, thinned) = variance_factors(&sums)?;
    Ok(thinned_n as f64 / base as f64 * full / thinned)
}

/// Whether thinning by `k` is strictly less efficient than not thinning,
/// decided from the sums: `R_{-k} < ((k-1)/(theta+1)) (R_k + 1/2)`.
pub fn thinning_hurts(k: u64, acf: &AcfSequence, theta: f64) -> Result<bool> {
    check_theta(theta)?;
    let s = acf_sums(acf, k)?;
    Ok(s.r_minus_k < (k - 1) as f64 / (theta + 1.0) * (s.r_k + 0.5))
}

/// Cost bound for nonnegative nonincreasing autocorrelations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaBound {
    /// For `theta >= bound`, thinning by `k` cannot be less efficient.
    Finite(f64),
    /// `R_k = 0`; the bound places no constraint on `theta`.
    Unconstrained,
}

/// `1 / (2 R_k)` for monotone nonnegative autocorrelations.
pub fn monotone_theta_bound(acf: &AcfSequence, k: u64) -> Result<ThetaBound> {
    acf.check_monotone_nonnegative()
        .map_err(|lag| Error::NotMonotone { lag })?;
    let s = acf_sums(acf, k)?;
    if s.r_k > 0.0 {
        Ok(ThetaBound::Finite(1.0 / (2.0 * s.r_k)))
    } else {
        Ok(ThetaBound::Unconstrained)
    }
}

/// Sample autocorrelations of a (post-warmup) trace, cut where the
/// initial positive sequence ends.
///
/// Lags `1..=max_lag` are computed against the lag-0 sum of squares. The
/// result stops before the first lag `l` with `rho_l + rho_{l+1} <= 0`,
/// but always keeps lag 1.
pub fn estimate_acf(series: &[f64], max_lag: usize) -> Result<AcfSequence> {
    if series.is_empty() {
        return Err(Error::EmptySeries);
    }
    if max_lag == 0 {
        return Err(Error::InvalidAcf("max_lag must be at least 1".into()));
    }
    if series.len() <= max_lag {
        return Err(Error::SeriesTooShort { len: series.len(), max_lag });
    }
    let n = series.len();
    let mean = series.iter().sum::<f64>() / n as f64;
    let centered: Vec<f64> = series.iter().map(|y| y - mean).collect();
    let c0: f64 = centered.iter().map(|d| d * d).sum();
    if !(c0 > 0.0) {
        return Err(Error::ZeroVariance);
    }
    let lag = |l: usize| -> f64 {
        centered[..n - l]
            .iter()
            .zip(&centered[l..])
            .map(|(a, b)| a * b)
            .sum::<f64>()
            / c0
    };

    let mut values = Vec::with_capacity(max_lag.min(1024));
    let mut current = lag(1);
    for l in 1..=max_lag {
        if l == max_lag {
            values.push(current);
            break;
        }
        let next = lag(l + 1);
        if current + next <= 0.0 {
            if values.is_empty() {
                values.push(current);
            }
            break;
        }
        values.push(current);
        current = next;
    }
    AcfSequence::truncated(values)
}

/// Lag-one readoff (the Yule-Walker AR(1) estimate), clamped inside (-1, 1).
pub fn fit_ar1_rho(acf: &AcfSequence) -> f64 {
    const EDGE: f64 = 1.0 - 1e-12;
    acf.values[0].clamp(-EDGE, EDGE)
}
