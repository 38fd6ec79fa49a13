//! Closed-form efficiency of thinning when the quantity of interest has
//! AR(1) autocorrelations `rho_l = rho^l`.
//!
//! Efficiency compares thinning by a factor `k` against keeping every
//! state, at equal compute budget. Advancing the chain costs one unit and
//! evaluating the quantity of interest costs `theta` units.

use crate::error::{Error, Result};

/// Cost ratio and AR(1) parameter for one closed-form instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThinningProblem {
    theta: f64,
    rho: f64,
}

impl ThinningProblem {
    pub fn new(theta: f64, rho: f64) -> Result<Self> {
        if !(theta >= 0.0) || !theta.is_finite() {
            return Err(Error::NegativeTheta(theta));
        }
        if !(rho > -1.0 && rho < 1.0) {
            return Err(Error::RhoOutOfRange(rho));
        }
        Ok(Self { theta, rho })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }
}

/// AR(1) instance where only accepted proposals incur the evaluation cost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcceptanceAdjustedProblem {
    problem: ThinningProblem,
    alpha: f64,
}

impl AcceptanceAdjustedProblem {
    pub fn new(theta: f64, rho: f64, alpha: f64) -> Result<Self> {
        let problem = ThinningProblem::new(theta, rho)?;
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::AlphaOutOfRange(alpha));
        }
        Ok(Self { problem, alpha })
    }

    pub fn theta(&self) -> f64 {
        self.problem.theta
    }

    pub fn rho(&self) -> f64 {
        self.problem.rho
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// `rho^k`, evaluated as `exp(k ln|rho|)` with the sign restored for
/// negative `rho`. Underflow to zero is the correct limit.
pub fn rho_pow(rho: f64, k: u64) -> f64 {
    if rho == 0.0 {
        return 0.0;
    }
    let magnitude = (k as f64 * rho.abs().ln()).exp();
    if rho < 0.0 && k % 2 == 1 {
        -magnitude
    } else {
        magnitude
    }
}

/// `1 - x^k` for `x` in `[0, 1]`, accurate when `x^k` is close to one.
pub(crate) fn one_minus_pow(x: f64, k: u64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        -(k as f64 * x.ln()).exp_m1()
    }
}

/// `ln((1 - rho^k) / (1 + rho^k))`.
///
/// For positive `rho` the numerator comes from `expm1`, which keeps full
/// relative precision when `rho^k` is within a few ulps of one.
pub fn log_decay_ratio(rho: f64, k: u64) -> f64 {
    if rho == 0.0 {
        return 0.0;
    }
    if rho > 0.0 {
        let log_pow = k as f64 * rho.ln();
        (-log_pow.exp_m1()).ln() - log_pow.exp().ln_1p()
    } else {
        let p = rho_pow(rho, k);
        (-p).ln_1p() - p.ln_1p()
    }
}

/// Natural log of [`eff`].
pub fn log_eff(k: u64, p: &ThinningProblem) -> f64 {
    assert!(k >= 1, "thinning factor must be at least 1");
    // ln((1+theta)/(k+theta)) written so that k = 1 gives exactly zero
    let cost = -((k - 1) as f64 / (1.0 + p.theta)).ln_1p();
    cost + log_decay_ratio(p.rho, k) - log_decay_ratio(p.rho, 1)
}

/// Asymptotic efficiency of thinning by `k` relative to no thinning:
/// `((1+theta)/(k+theta)) * ((1+rho)/(1-rho)) * ((1-rho^k)/(1+rho^k))`.
pub fn eff(k: u64, p: &ThinningProblem) -> f64 {
    log_eff(k, p).exp()
}

/// `log(eff(k))` with the `k`-independent constant dropped:
/// `-log(k+theta) + log1p(-rho^k) - log1p(rho^k)`.
///
/// Unlike a naive implementation this does not fail once `rho^k`
/// underflows; the value then reduces to `-log(k+theta)`.
pub fn leff_prime(k: u64, p: &ThinningProblem) -> f64 {
    -(k as f64 + p.theta).ln() + log_decay_ratio(p.rho, k)
}

/// Limit of `eff(k)` as `rho -> 1`: `k (1+theta) / (k+theta)`.
pub fn eff_limit_rho1(k: u64, theta: f64) -> f64 {
    let k = k as f64;
    k * (1.0 + theta) / (k + theta)
}

/// Cost above which thinning by `k >= 2` beats no thinning when `0 < rho < 1`.
pub fn critical_theta(k: u64, rho: f64) -> Result<f64> {
    if k < 2 {
        return Err(Error::FactorTooSmall { k, min: 2 });
    }
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::RhoOutOfRange(rho));
    }
    let half_span = (k - 1) as f64 / 2.0;
    // rho - rho^k = rho (1 - rho^(k-1))
    let gap = rho * one_minus_pow(rho, k - 1);
    Ok(half_span * (1.0 - rho) * (1.0 + rho_pow(rho, k)) / gap - 1.0)
}

/// Largest cost at which `k = 1` is still optimal: `(1-rho)^2 / (2 rho)`.
pub fn no_thinning_theta_bound(rho: f64) -> f64 {
    if rho <= 0.0 {
        f64::INFINITY
    } else {
        (1.0 - rho).powi(2) / (2.0 * rho)
    }
}

/// Largest `rho` at which `k = 1` is optimal for cost `theta > 0`:
/// `1 + theta - sqrt(theta^2 + 2 theta)`, computed as its reciprocal
/// conjugate to avoid cancellation at large `theta`.
pub fn no_thinning_rho_bound(theta: f64) -> f64 {
    1.0 / (1.0 + theta + (theta * theta + 2.0 * theta).sqrt())
}

/// Whether `k = 1` maximizes `eff(k)` over all integers `k >= 1`.
pub fn no_thinning_is_optimal(p: &ThinningProblem) -> bool {
    p.rho <= 0.0 || p.theta <= no_thinning_theta_bound(p.rho)
}

/// Efficiency when only accepted proposals need a fresh evaluation:
/// the per-sample cost at factor `k` is `theta (1 - alpha^k)`.
pub fn acceptance_adjusted_eff(k: u64, q: &AcceptanceAdjustedProblem) -> f64 {
    assert!(k >= 1, "thinning factor must be at least 1");
    let theta = q.theta();
    let base_cost = 1.0 + theta * one_minus_pow(q.alpha, 1);
    let thinned_cost = k as f64 + theta * one_minus_pow(q.alpha, k);
    let decay = log_decay_ratio(q.rho(), k) - log_decay_ratio(q.rho(), 1);
    base_cost / thinned_cost * decay.exp()
}
