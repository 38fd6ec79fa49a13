use std::fs::File;
use std::io::{self, BufReader};
use std::path::Path;

use thinning::{
    band_report, efficiency_curve, efford, empirical_efficiency, estimate_acf, fit_ar1_rho, make_tables,
    no_thinning_theta_bound, read_series, thinning_hurts, AcfSequence, BandReport, Budget, Error, RhoBand,
    SimulationConfig, SimulationReport, TableSpec, ThinningProblem,
};

use crate::args::{AnalysisMode, AnalyzeArgs, BandArgs, OptArgs, SimulateArgs, TablesArgs};
use crate::report::{AnalyzeReport, OptReport, TablesReport, Verdict};

/// Factors the trace report always tests.
pub const VERDICT_FACTORS: [u64; 3] = [2, 5, 10];

#[derive(Debug)]
pub enum CommandError {
    Domain(Error),
    Io(String, io::Error),
}

impl std::fmt::Display for CommandError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CommandError::Domain(e) => write!(f, "{e}"),
            CommandError::Io(what, e) => write!(f, "{what}: {e}"),
        }
    }
}

impl std::error::Error for CommandError {}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        CommandError::Domain(e)
    }
}

pub type Result<T> = std::result::Result<T, CommandError>;

pub fn opt(args: &OptArgs) -> Result<OptReport> {
    let p = ThinningProblem::new(args.theta, args.rho)?;
    if !(args.eta > 0.0 && args.eta < 1.0) {
        return Err(Error::InvalidEta(args.eta).into());
    }
    let (theta, rho) = (p.theta(), p.rho());
    let threshold = (rho > 0.0).then(|| no_thinning_theta_bound(rho));
    let report = if rho < 0.0 {
        // every k > 1 is worse than keeping all states
        OptReport {
            theta,
            rho,
            eta: args.eta,
            k_opt: 1,
            eff_opt: 1.0,
            k_ok: 1,
            eff_ok: 1.0,
            no_thinning_optimal: true,
            no_thinning_threshold: threshold,
            ceiling: 1.0 + theta,
            kmax: None,
        }
    } else {
        let c = efficiency_curve(&p, args.eta, args.k_limit)?;
        OptReport {
            theta,
            rho,
            eta: args.eta,
            k_opt: c.k_opt,
            eff_opt: c.eff_opt(),
            k_ok: c.k_ok,
            eff_ok: c.eff_ok(),
            no_thinning_optimal: c.k_opt == 1,
            no_thinning_threshold: threshold,
            ceiling: 1.0 + theta,
            kmax: Some(c.kmax),
        }
    };
    Ok(report)
}

pub fn tables(args: &TablesArgs) -> Result<TablesReport> {
    let defaults = TableSpec::default();
    let spec = TableSpec {
        theta_values: args.thetas.clone().unwrap_or(defaults.theta_values),
        rho_values: args.rhos.clone().unwrap_or(defaults.rho_values),
        eta: args.eta,
    };
    let t = make_tables(&spec)?;
    let mut failures = Vec::new();
    for (i, row) in t.cells.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            if let Err(e) = cell {
                failures.push(format!("theta={} rho={}: {e}", spec.theta_values[i], spec.rho_values[j]));
            }
        }
    }
    Ok(TablesReport {
        eta: spec.eta,
        k_opt: t.k_opt(),
        eff_opt: t.eff_opt(),
        k_ok: t.k_ok(),
        theta_values: spec.theta_values,
        rho_values: spec.rho_values,
        failures,
    })
}

pub fn load_trace(path: &Path) -> Result<Vec<f64>> {
    let series = if path.as_os_str() == "-" {
        read_series(io::stdin().lock())?
    } else {
        let file = File::open(path).map_err(|e| CommandError::Io(format!("cannot read {}", path.display()), e))?;
        read_series(BufReader::new(file))?
    };
    Ok(series)
}

pub fn analyze(args: &AnalyzeArgs, series: &[f64]) -> Result<AnalyzeReport> {
    if !(args.theta >= 0.0 && args.theta.is_finite()) {
        return Err(Error::NegativeTheta(args.theta).into());
    }
    if !(args.eta > 0.0 && args.eta < 1.0) {
        return Err(Error::InvalidEta(args.eta).into());
    }
    // short traces: use every available lag
    let max_lag = args.max_lag.min(series.len().saturating_sub(1)).max(1);
    let acf = estimate_acf(series, max_lag)?;
    let theta = args.theta;

    let (rho_hat, k_opt, eff_opt, k_ok, eff_ok) = match args.mode {
        AnalysisMode::Ar1 => {
            let rho = fit_ar1_rho(&acf);
            if rho > 0.0 {
                let c = efficiency_curve(&ThinningProblem::new(theta, rho)?, args.eta, thinning::DEFAULT_K_LIMIT)?;
                (Some(rho), c.k_opt, c.eff_opt(), c.k_ok, c.eff_ok())
            } else {
                (Some(rho), 1, 1.0, 1, 1.0)
            }
        }
        AnalysisMode::Generic => {
            let (k_opt, eff_opt, k_ok, eff_ok) = generic_optimum(&acf, theta, args.eta)?;
            (None, k_opt, eff_opt, k_ok, eff_ok)
        }
    };

    let verdicts = VERDICT_FACTORS
        .iter()
        .map(|&k| Verdict {
            k,
            thinning_hurts: thinning_hurts(k, &acf, theta).ok(),
            efficiency: efford(k, &acf, theta).ok(),
        })
        .collect();

    Ok(AnalyzeReport {
        mode: args.mode,
        theta,
        eta: args.eta,
        n: series.len(),
        max_lag,
        acf_len: acf.len(),
        acf_lag1: acf.values()[0],
        integrated_autocorrelation: 1.0 + 2.0 * acf.values().iter().sum::<f64>(),
        rho_hat,
        k_opt,
        eff_opt,
        k_ok,
        eff_ok,
        verdicts,
    })
}

/// Exhaustive search over `k = 1..=L+1`. Beyond the last kept lag the
/// efficiency only falls with `k`, so nothing larger can win.
fn generic_optimum(acf: &AcfSequence, theta: f64, eta: f64) -> Result<(u64, f64, u64, f64)> {
    let effs: Vec<(u64, f64)> = (1..=acf.len() as u64 + 1)
        .filter_map(|k| efford(k, acf, theta).ok().map(|e| (k, e)))
        .collect();
    let &(k_opt, eff_opt) = effs
        .iter()
        .fold(None, |best: Option<&(u64, f64)>, c| match best {
            Some(b) if b.1 >= c.1 => Some(b),
            _ => Some(c),
        })
        .ok_or_else(|| Error::InvalidAcf("no factor has a positive variance estimate".into()))?;
    let &(k_ok, eff_ok) = effs
        .iter()
        .find(|(k, e)| *k <= k_opt && *e >= (1.0 - eta) * eff_opt)
        .expect("k_opt itself qualifies");
    Ok((k_opt, eff_opt, k_ok, eff_ok))
}

pub fn band(args: &BandArgs) -> Result<BandReport> {
    let band = RhoBand::new(args.lo, args.hi)?;
    Ok(band_report(&band, args.theta, &args.gains, args.k_cap)?)
}

pub fn simulation_config(args: &SimulateArgs) -> Result<SimulationConfig> {
    let cfg = SimulationConfig {
        rho: args.rho,
        theta: args.theta,
        budget: Budget::new(args.budget)?,
        k_values: args.k.clone(),
        replications: args.reps,
        seed: args.seed,
        sigma2: args.sigma2,
    };
    cfg.validate()?;
    Ok(cfg)
}

pub fn simulate(args: &SimulateArgs) -> Result<SimulationReport> {
    Ok(empirical_efficiency(&simulation_config(args)?)?)
}
