//! Optimal and near-optimal thinning factors for the AR(1) model.
//!
//! `log eff(e^x)` is strictly concave in `x`, so over the integers the
//! efficiency rises to a single peak and then falls. Doubling `k` until the
//! efficiency drops gives an upper bound `kmax` on the optimum; every
//! `k <= kmax` is then evaluated and the best one kept. All comparisons use
//! `leff_prime`, and reported efficiencies come from exponentiated
//! differences so nothing overflows at large costs.

use serde::{Deserialize, Serialize};

use crate::ar1::{leff_prime, ThinningProblem};
use crate::error::{Error, Result};

pub const DEFAULT_K_LIMIT: u64 = 10_000_000;
pub const DEFAULT_ETA: f64 = 0.05;

fn search_problem(p: &ThinningProblem) -> Result<()> {
    if p.rho() < 0.0 {
        return Err(Error::NegativeRho(p.rho()));
    }
    Ok(())
}

fn check_eta(eta: f64) -> Result<()> {
    if eta > 0.0 && eta < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidEta(eta))
    }
}

/// Upper bound on the optimal factor: `2m` for the first power of two `m`
/// with `leff_prime(2m) <= leff_prime(m)`.
pub fn getkmax(p: &ThinningProblem) -> Result<u64> {
    search_problem(p)?;
    let mut m: u64 = 1;
    while leff_prime(2 * m, p) > leff_prime(m, p) {
        m = m.checked_mul(2).filter(|m| *m < 1 << 62).ok_or(Error::SearchOverflow)?;
    }
    Ok(2 * m)
}

/// `leff_prime(k)` for `k = 1..=kmax`.
fn leff_values(p: &ThinningProblem, kmax: u64) -> Vec<f64> {
    (1..=kmax).map(|k| leff_prime(k, p)).collect()
}

/// Index of the first maximum (ties go to the smallest `k`).
fn first_argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

fn bounded_kmax(p: &ThinningProblem, k_limit: u64) -> Result<u64> {
    let kmax = getkmax(p)?;
    if kmax > k_limit {
        return Err(Error::TooExpensive { kmax, limit: k_limit });
    }
    Ok(kmax)
}

/// Optimal thinning factor; the smallest maximizer on ties.
pub fn kopt(p: &ThinningProblem, k_limit: u64) -> Result<u64> {
    let kmax = bounded_kmax(p, k_limit)?;
    Ok(first_argmax(&leff_values(p, kmax)) as u64 + 1)
}

/// Smallest `k` whose efficiency is at least `1 - eta` times the optimum.
pub fn kok(p: &ThinningProblem, eta: f64, k_limit: u64) -> Result<u64> {
    check_eta(eta)?;
    Ok(efficiency_curve(p, eta, k_limit)?.k_ok)
}

/// Smallest `k` reaching relative efficiency `1 - eta` in the `rho -> 1`
/// limit: `ceil(theta (1 - eta) / eta)`, at least 1.
pub fn k_for_rho1_limit(theta: f64, eta: f64) -> Result<u64> {
    check_eta(eta)?;
    if !(theta >= 0.0) {
        return Err(Error::NegativeTheta(theta));
    }
    let k = (theta * (1.0 - eta) / eta).ceil();
    Ok((k as u64).max(1))
}

/// Efficiency over `k = 1..=kmax` with its optimum and the smallest
/// near-optimal factor.
#[derive(Debug, Clone, PartialEq)]
pub struct EfficiencyCurve {
    pub problem: ThinningProblem,
    pub kmax: u64,
    /// `leff_prime(k)` at index `k - 1`.
    pub values: Vec<f64>,
    pub k_opt: u64,
    pub k_ok: u64,
    pub eta: f64,
}

impl EfficiencyCurve {
    pub fn leff_prime(&self, k: u64) -> f64 {
        self.values[(k - 1) as usize]
    }

    /// `eff(k) / eff(j)`, taken from log differences.
    pub fn relative(&self, k: u64, j: u64) -> f64 {
        (self.leff_prime(k) - self.leff_prime(j)).exp()
    }

    /// Efficiency of `k` relative to no thinning.
    pub fn eff(&self, k: u64) -> f64 {
        self.relative(k, 1)
    }

    pub fn eff_opt(&self) -> f64 {
        self.eff(self.k_opt)
    }

    pub fn eff_ok(&self) -> f64 {
        self.eff(self.k_ok)
    }
}

pub fn efficiency_curve(p: &ThinningProblem, eta: f64, k_limit: u64) -> Result<EfficiencyCurve> {
    check_eta(eta)?;
    let kmax = bounded_kmax(p, k_limit)?;
    let values = leff_values(p, kmax);
    let best = first_argmax(&values);
    let cutoff = values[best] + (-eta).ln_1p();
    let ok = values[..=best]
        .iter()
        .position(|v| *v >= cutoff)
        .expect("the optimum always clears its own cutoff");
    Ok(EfficiencyCurve {
        problem: *p,
        kmax,
        values,
        k_opt: best as u64 + 1,
        k_ok: ok as u64 + 1,
        eta,
    })
}

/// Grid for the optimal-k tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableSpec {
    pub theta_values: Vec<f64>,
    pub rho_values: Vec<f64>,
    pub eta: f64,
}

impl Default for TableSpec {
    fn default() -> Self {
        Self {
            theta_values: (-3..=3).map(|c| 10f64.powi(c)).collect(),
            rho_values: [0.1, 0.5]
                .into_iter()
                .chain((1..=6).map(|c| 1.0 - 10f64.powi(-c)))
                .collect(),
            eta: DEFAULT_ETA,
        }
    }
}

/// One grid cell of the optimal-k tables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableCell {
    pub k_opt: u64,
    pub eff_opt: f64,
    pub k_ok: u64,
}

/// Optimal k, its efficiency, and the smallest near-optimal k, indexed
/// `[theta][rho]`. Cells whose search failed hold the error.
#[derive(Debug, Clone, PartialEq)]
pub struct KoptTables {
    pub spec: TableSpec,
    pub cells: Vec<Vec<Result<TableCell>>>,
}

impl KoptTables {
    pub fn k_opt(&self) -> Vec<Vec<Option<u64>>> {
        self.map(|c| c.k_opt)
    }

    pub fn eff_opt(&self) -> Vec<Vec<Option<f64>>> {
        self.map(|c| c.eff_opt)
    }

    pub fn k_ok(&self) -> Vec<Vec<Option<u64>>> {
        self.map(|c| c.k_ok)
    }

    fn map<T>(&self, f: impl Fn(&TableCell) -> T) -> Vec<Vec<Option<T>>> {
        self.cells
            .iter()
            .map(|row| row.iter().map(|c| c.as_ref().ok().map(&f)).collect())
            .collect()
    }
}

fn table_cell(theta: f64, rho: f64, eta: f64) -> Result<TableCell> {
    let p = ThinningProblem::new(theta, rho)?;
    let curve = efficiency_curve(&p, eta, DEFAULT_K_LIMIT)?;
    Ok(TableCell {
        k_opt: curve.k_opt,
        eff_opt: curve.eff_opt(),
        k_ok: curve.k_ok,
    })
}

pub fn make_tables(spec: &TableSpec) -> Result<KoptTables> {
    check_eta(spec.eta)?;
    if spec.theta_values.is_empty() || spec.rho_values.is_empty() {
        return Err(Error::InvalidConfig("table grids must be nonempty".into()));
    }
    let cells = spec
        .theta_values
        .iter()
        .map(|&theta| {
            spec.rho_values
                .iter()
                .map(|&rho| table_cell(theta, rho, spec.eta))
                .collect()
        })
        .collect();
    Ok(KoptTables { spec: spec.clone(), cells })
}
