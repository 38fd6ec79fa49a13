//! Efficiency bounds when the autocorrelations are only known to lie
//! between two AR(1) envelopes, `rho_lo^l <= rho_l <= rho_hi^l`.
//!
//! For factors `r` and `s`, the relative efficiency `efford(r, s)` of
//! thinning by `r` instead of `s` is bracketed by
//!
//! ```text
//! ((s+theta)/(r+theta)) g(rho_lo^s) / g(rho_hi^r)
//!     <= efford(r, s) <=
//! ((s+theta)/(r+theta)) g(rho_hi^s) / g(rho_lo^r) = U_rs
//! ```
//!
//! with `g(x) = (1+x)/(1-x)`. A factor `r` with `U_rs < 1` for some `s`
//! cannot be optimal for any sequence inside the band.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::ar1::{log_decay_ratio, ThinningProblem};
use crate::error::{Error, Result};
use crate::optimizer::getkmax;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RhoBand {
    rho_lo: f64,
    rho_hi: f64,
}

impl RhoBand {
    pub fn new(rho_lo: f64, rho_hi: f64) -> Result<Self> {
        if !(0.0 <= rho_lo && rho_lo <= rho_hi && rho_hi < 1.0) {
            return Err(Error::InvalidBand { lo: rho_lo, hi: rho_hi });
        }
        Ok(Self { rho_lo, rho_hi })
    }

    pub fn lo(&self) -> f64 {
        self.rho_lo
    }

    pub fn hi(&self) -> f64 {
        self.rho_hi
    }
}

/// `ln g(rho^k) = ln((1+rho^k)/(1-rho^k))`; zero when `rho = 0`.
fn log_g(rho: f64, k: u64) -> f64 {
    -log_decay_ratio(rho, k)
}

/// Log of `(k+theta) g(rho^k)`, the per-factor variance-cost product the
/// bounds are ratios of.
fn log_cost_variance(k: u64, rho: f64, theta: f64) -> f64 {
    (k as f64 + theta).ln() + log_g(rho, k)
}

fn check(r: u64, s: u64, theta: f64) -> Result<()> {
    if r == 0 || s == 0 {
        return Err(Error::FactorTooSmall { k: r.min(s), min: 1 });
    }
    if !(theta >= 0.0 && theta.is_finite()) {
        return Err(Error::NegativeTheta(theta));
    }
    Ok(())
}

/// Lower and upper bounds on `efford(r, s)` over all ACFs in the band.
pub fn eff_bounds(r: u64, s: u64, band: &RhoBand, theta: f64) -> Result<(f64, f64)> {
    check(r, s, theta)?;
    let lower = log_cost_variance(s, band.rho_lo, theta) - log_cost_variance(r, band.rho_hi, theta);
    let upper = log_cost_variance(s, band.rho_hi, theta) - log_cost_variance(r, band.rho_lo, theta);
    Ok((lower.exp(), upper.exp()))
}

/// `U_rs`, the upper bound on `efford(r, s)`.
pub fn upper_bound(r: u64, s: u64, band: &RhoBand, theta: f64) -> Result<f64> {
    eff_bounds(r, s, band, theta).map(|(_, u)| u)
}

/// Factors certified to beat no thinning by at least `gain`-fold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GainInterval {
    pub gain: f64,
    /// Smallest and largest certified factor; `None` when nothing qualifies.
    pub range: Option<(u64, u64)>,
    /// False if some factor inside `range` failed the certificate, in which
    /// case `range` is the enclosing hull.
    pub contiguous: bool,
    pub k_cap: u64,
}

impl GainInterval {
    pub fn as_range(&self) -> Option<RangeInclusive<u64>> {
        self.range.map(|(a, b)| a..=b)
    }
}

/// All `2 <= k <= k_cap` with `U_{1k} < 1/gain`, i.e. `efford(k) > gain`
/// for every ACF in the band.
pub fn guaranteed_gain_interval(band: &RhoBand, theta: f64, gain: f64, k_cap: u64) -> Result<GainInterval> {
    if !(gain >= 1.0 && gain.is_finite()) {
        return Err(Error::InvalidGain(gain));
    }
    check(1, 1, theta)?;
    let log_target = -gain.ln();
    let base = log_g(band.rho_lo, 1) + (1.0 + theta).ln();
    let certified: Vec<u64> = (2..=k_cap)
        .filter(|&k| log_cost_variance(k, band.rho_hi, theta) - base < log_target)
        .collect();
    let range = certified.first().map(|&a| (a, *certified.last().unwrap()));
    let contiguous = match range {
        Some((a, b)) => certified.len() as u64 == b - a + 1,
        None => true,
    };
    Ok(GainInterval { gain, range, contiguous, k_cap })
}

/// A cap beyond which no factor can be certified for any gain `>= 1`.
///
/// Starts at `getkmax` for the upper envelope, where `U_{1k}` is already
/// increasing in `k`, and doubles until `U_{1k} >= 1`.
pub fn gain_search_cap(band: &RhoBand, theta: f64) -> Result<u64> {
    let mut k = getkmax(&ThinningProblem::new(theta, band.rho_hi)?)?;
    while upper_bound(1, k, band, theta)? < 1.0 {
        k = k.checked_mul(2).ok_or(Error::SearchOverflow)?;
    }
    Ok(k)
}

/// Default cap for the dominance scan: four times `getkmax` on the upper envelope.
pub fn default_k_cap(band: &RhoBand, theta: f64) -> Result<u64> {
    Ok(4 * getkmax(&ThinningProblem::new(theta, band.rho_hi)?)?)
}

/// Factors `r <= k_cap` not ruled out by any `s <= k_cap`, `s != r`.
///
/// `U_rs = C_hi(s) / C_lo(r)` with `C(k) = (k+theta) g(rho^k)`, so `r` is
/// dominated exactly when the smallest `C_hi(s)` over `s != r` falls below
/// `C_lo(r)`. Tracking the two smallest `C_hi` values makes the scan linear.
pub fn nondominated_set(band: &RhoBand, theta: f64, k_cap: u64) -> Result<Vec<u64>> {
    check(1, 1, theta)?;
    if k_cap == 0 {
        return Err(Error::FactorTooSmall { k: 0, min: 1 });
    }
    let hi: Vec<f64> = (1..=k_cap).map(|k| log_cost_variance(k, band.rho_hi, theta)).collect();
    let (mut best, mut second) = ((f64::INFINITY, 0usize), f64::INFINITY);
    for (i, &v) in hi.iter().enumerate() {
        if v < best.0 {
            second = best.0;
            best = (v, i);
        } else if v < second {
            second = v;
        }
    }
    let set: Vec<u64> = (1..=k_cap)
        .filter(|&r| {
            let i = (r - 1) as usize;
            let rival = if i == best.1 { second } else { best.0 };
            rival - log_cost_variance(r, band.rho_lo, theta) >= 0.0
        })
        .collect();
    if set.last() == Some(&k_cap) && k_cap > 1 {
        return Err(Error::CapTooSmall(k_cap));
    }
    Ok(set)
}

/// Guaranteed-gain intervals and the non-dominated factors for one band.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandReport {
    pub band: RhoBand,
    pub theta: f64,
    pub guaranteed_gain_sets: Vec<GainInterval>,
    /// Smallest and largest non-dominated factor.
    pub candidate_set: (u64, u64),
    /// False if the non-dominated factors have gaps; `candidate_set` is then their hull.
    pub candidate_contiguous: bool,
    pub k_search_cap: u64,
}

/// Build a report; `k_cap` defaults to [`default_k_cap`]. Gain intervals
/// scan up to the larger of `k_cap` and [`gain_search_cap`].
pub fn band_report(band: &RhoBand, theta: f64, gains: &[f64], k_cap: Option<u64>) -> Result<BandReport> {
    let k_cap = match k_cap {
        Some(c) => c,
        None => default_k_cap(band, theta)?,
    };
    let gain_cap = gain_search_cap(band, theta)?.max(k_cap);
    let guaranteed_gain_sets = gains
        .iter()
        .map(|&g| guaranteed_gain_interval(band, theta, g, gain_cap))
        .collect::<Result<Vec<_>>>()?;
    let set = nondominated_set(band, theta, k_cap)?;
    let (first, last) = (set[0], *set.last().unwrap());
    Ok(BandReport {
        band: *band,
        theta,
        guaranteed_gain_sets,
        candidate_set: (first, last),
        candidate_contiguous: set.len() as u64 == last - first + 1,
        k_search_cap: k_cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ar1::eff;

    #[test]
    fn band_validation() {
        assert!(RhoBand::new(0.5, 0.4).is_err());
        assert!(RhoBand::new(-0.1, 0.4).is_err());
        assert!(RhoBand::new(0.5, 1.0).is_err());
        assert!(RhoBand::new(0.0, 0.0).is_ok());
    }

    #[test]
    fn degenerate_band_is_exact_ratio() {
        let band = RhoBand::new(0.9, 0.9).unwrap();
        let (lo, hi) = eff_bounds(17, 1, &band, 10.0).unwrap();
        let p = ThinningProblem::new(10.0, 0.9).unwrap();
        assert!((lo - eff(17, &p)).abs() < 1e-12 && (hi - lo).abs() < 1e-12);
        assert_eq!(format!("{lo:.2}"), "5.53");
    }

    #[test]
    fn zero_lower_envelope() {
        let band = RhoBand::new(0.0, 0.5).unwrap();
        let (lo, hi) = eff_bounds(3, 1, &band, 2.0).unwrap();
        assert!(lo <= hi);
        assert!(lo.is_finite() && lo > 0.0);
    }

    #[test]
    fn reference_band_intervals() {
        let band = RhoBand::new(0.98, 0.99).unwrap();
        let cap = gain_search_cap(&band, 10.0).unwrap();
        let want = [(1.0, (3, 1078)), (2.0, (6, 529)), (4.0, (28, 195))];
        for (gain, range) in want {
            let g = guaranteed_gain_interval(&band, 10.0, gain, cap).unwrap();
            assert_eq!(g.range, Some(range), "gain {gain}");
            assert!(g.contiguous);
        }
        let band = RhoBand::new(0.9, 0.95).unwrap();
        let cap = gain_search_cap(&band, 100.0).unwrap();
        let g = guaranteed_gain_interval(&band, 100.0, 10.0, cap).unwrap();
        assert_eq!(g.range, Some((34, 87)));
    }

    #[test]
    fn reference_band_nondominated() {
        let band = RhoBand::new(0.98, 0.99).unwrap();
        let set = nondominated_set(&band, 10.0, default_k_cap(&band, 10.0).unwrap()).unwrap();
        assert_eq!(set, (8..=220).collect::<Vec<_>>());
        let band = RhoBand::new(0.9, 0.95).unwrap();
        let set = nondominated_set(&band, 100.0, default_k_cap(&band, 100.0).unwrap()).unwrap();
        assert_eq!(set, (16..=74).collect::<Vec<_>>());
    }

    #[test]
    fn zero_band() {
        let band = RhoBand::new(0.0, 0.0).unwrap();
        let g = guaranteed_gain_interval(&band, 5.0, 1.0 + 1e-9, 100).unwrap();
        assert_eq!(g.range, None);
        let set = nondominated_set(&band, 5.0, default_k_cap(&band, 5.0).unwrap()).unwrap();
        assert_eq!(set, vec![1]);
    }

    #[test]
    fn small_cap_is_reported() {
        let band = RhoBand::new(0.98, 0.99).unwrap();
        assert_eq!(nondominated_set(&band, 10.0, 100), Err(Error::CapTooSmall(100)));
    }

    #[test]
    fn linear_scan_matches_pairwise() {
        for &(lo, hi, theta) in &[(0.5, 0.8, 3.0), (0.9, 0.93, 40.0), (0.0, 0.7, 1.0), (0.6, 0.6, 2.0)] {
            let band = RhoBand::new(lo, hi).unwrap();
            let cap = default_k_cap(&band, theta).unwrap();
            let brute: Vec<u64> = (1..=cap)
                .filter(|&r| {
                    (1..=cap)
                        .filter(|&s| s != r)
                        .all(|s| upper_bound(r, s, &band, theta).unwrap() >= 1.0)
                })
                .collect();
            assert_eq!(nondominated_set(&band, theta, cap).unwrap(), brute, "band [{lo}, {hi}] theta {theta}");
        }
    }
}
