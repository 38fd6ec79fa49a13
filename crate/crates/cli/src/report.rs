use serde::{Deserialize, Serialize};
use thinning::{BandReport, SimulationReport};

use crate::args::AnalysisMode;
use crate::format::{aligned, csv_line, fixed2, opt, sig6};

/// A command result that can be rendered as aligned text or CSV; JSON
/// goes through serde.
pub trait Render {
    fn text(&self) -> String;
    fn csv(&self) -> String;
}

fn s(v: impl ToString) -> String {
    v.to_string()
}

/// Two-column `name value` block.
fn key_values(pairs: &[(&str, String)]) -> String {
    let rows: Vec<Vec<String>> = pairs.iter().map(|(k, v)| vec![s(k), v.clone()]).collect();
    aligned(&rows)
}

/// Header line plus one data line.
fn csv_record(pairs: &[(&str, String)]) -> String {
    let header: Vec<String> = pairs.iter().map(|(k, _)| s(k)).collect();
    let values: Vec<String> = pairs.iter().map(|(_, v)| v.clone()).collect();
    csv_line(&header) + &csv_line(&values)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptReport {
    pub theta: f64,
    pub rho: f64,
    pub eta: f64,
    pub k_opt: u64,
    pub eff_opt: f64,
    pub k_ok: u64,
    pub eff_ok: f64,
    /// Whether keeping every state is optimal.
    pub no_thinning_optimal: bool,
    /// `(1-rho)^2 / (2 rho)`; absent when `rho <= 0` (no finite threshold).
    pub no_thinning_threshold: Option<f64>,
    /// `1 + theta`, the supremum of the efficiency.
    pub ceiling: f64,
    /// Search bracket; absent when `rho <= 0`.
    pub kmax: Option<u64>,
}

impl OptReport {
    fn pairs(&self) -> Vec<(&'static str, String)> {
        vec![
            ("theta", sig6(self.theta)),
            ("rho", sig6(self.rho)),
            ("eta", sig6(self.eta)),
            ("k_opt", s(self.k_opt)),
            ("eff_opt", sig6(self.eff_opt)),
            ("k_ok", s(self.k_ok)),
            ("eff_ok", sig6(self.eff_ok)),
            ("no_thinning_optimal", s(self.no_thinning_optimal)),
            ("no_thinning_threshold", opt(self.no_thinning_threshold, sig6)),
            ("ceiling", sig6(self.ceiling)),
            ("kmax", opt(self.kmax, s)),
        ]
    }
}

impl Render for OptReport {
    fn text(&self) -> String {
        key_values(&self.pairs())
    }

    fn csv(&self) -> String {
        csv_record(&self.pairs())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TablesReport {
    pub eta: f64,
    pub theta_values: Vec<f64>,
    pub rho_values: Vec<f64>,
    /// Indexed `[theta][rho]`; `None` where the search failed.
    pub k_opt: Vec<Vec<Option<u64>>>,
    pub eff_opt: Vec<Vec<Option<f64>>>,
    pub k_ok: Vec<Vec<Option<u64>>>,
    /// `theta`, `rho` and reason for every failed cell.
    pub failures: Vec<String>,
}

impl TablesReport {
    fn matrix(&self, title: &str, cell: impl Fn(usize, usize) -> String) -> String {
        let mut rows = vec![std::iter::once(s("theta \\ rho"))
            .chain(self.rho_values.iter().map(|&r| sig6(r)))
            .collect::<Vec<_>>()];
        for (i, &theta) in self.theta_values.iter().enumerate() {
            let mut row = vec![sig6(theta)];
            row.extend((0..self.rho_values.len()).map(|j| cell(i, j)));
            rows.push(row);
        }
        format!("{title}\n{}", aligned(&rows))
    }
}

impl Render for TablesReport {
    fn text(&self) -> String {
        let a = self.matrix("k_opt", |i, j| opt(self.k_opt[i][j], s));
        let b = self.matrix("eff_opt", |i, j| opt(self.eff_opt[i][j], fixed2));
        let c = self.matrix(&format!("k_ok (eta = {})", sig6(self.eta)), |i, j| opt(self.k_ok[i][j], s));
        format!("{a}\n{b}\n{c}")
    }

    fn csv(&self) -> String {
        let mut out = csv_line(&["eta", "theta", "rho", "k_opt", "eff_opt", "k_ok"].map(s));
        for (i, &theta) in self.theta_values.iter().enumerate() {
            for (j, &rho) in self.rho_values.iter().enumerate() {
                out += &csv_line(&[
                    sig6(self.eta),
                    sig6(theta),
                    sig6(rho),
                    opt(self.k_opt[i][j], s),
                    opt(self.eff_opt[i][j], fixed2),
                    opt(self.k_ok[i][j], s),
                ]);
            }
        }
        out
    }
}

/// Outcome of the thinning test at one factor of a trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub k: u64,
    /// `None` if the estimated autocorrelations make the test undefined.
    pub thinning_hurts: Option<bool>,
    pub efficiency: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub mode: AnalysisMode,
    pub theta: f64,
    pub eta: f64,
    pub n: usize,
    pub max_lag: usize,
    /// Lags kept after the initial positive sequence cut.
    pub acf_len: usize,
    pub acf_lag1: f64,
    /// `1 + 2 sum(rho_l)` over the kept lags.
    pub integrated_autocorrelation: f64,
    /// Fitted AR(1) coefficient (ar1 mode only).
    pub rho_hat: Option<f64>,
    pub k_opt: u64,
    pub eff_opt: f64,
    pub k_ok: u64,
    pub eff_ok: f64,
    pub verdicts: Vec<Verdict>,
}

impl AnalyzeReport {
    fn pairs(&self) -> Vec<(&'static str, String)> {
        vec![
            ("mode", s(mode_name(self.mode))),
            ("theta", sig6(self.theta)),
            ("eta", sig6(self.eta)),
            ("n", s(self.n)),
            ("max_lag", s(self.max_lag)),
            ("acf_len", s(self.acf_len)),
            ("acf_lag1", sig6(self.acf_lag1)),
            ("integrated_autocorrelation", sig6(self.integrated_autocorrelation)),
            ("rho_hat", opt(self.rho_hat, sig6)),
            ("k_opt", s(self.k_opt)),
            ("eff_opt", sig6(self.eff_opt)),
            ("k_ok", s(self.k_ok)),
            ("eff_ok", sig6(self.eff_ok)),
        ]
    }

    fn verdict_rows(&self) -> Vec<Vec<String>> {
        self.verdicts
            .iter()
            .map(|v| vec![s(v.k), opt(v.thinning_hurts, s), opt(v.efficiency, sig6)])
            .collect()
    }
}

fn mode_name(mode: AnalysisMode) -> &'static str {
    match mode {
        AnalysisMode::Ar1 => "ar1",
        AnalysisMode::Generic => "generic",
    }
}

impl Render for AnalyzeReport {
    fn text(&self) -> String {
        let mut rows = vec![["k", "thinning_hurts", "efficiency"].map(s).to_vec()];
        rows.extend(self.verdict_rows());
        format!("{}\n{}", key_values(&self.pairs()), aligned(&rows))
    }

    /// Summary record, a blank line, then the per-factor verdicts.
    fn csv(&self) -> String {
        let mut out = csv_record(&self.pairs());
        out.push('\n');
        out += &csv_line(&["k", "thinning_hurts", "efficiency"].map(s));
        for row in self.verdict_rows() {
            out += &csv_line(&row);
        }
        out
    }
}

fn interval(range: Option<(u64, u64)>, contiguous: bool) -> String {
    match range {
        None => s("empty"),
        Some((a, b)) if contiguous => format!("{a}..{b}"),
        Some((a, b)) => format!("{a}..{b} (gaps)"),
    }
}

impl Render for BandReport {
    fn text(&self) -> String {
        let mut rows = vec![
            vec![s("rho_lo"), sig6(self.band.lo())],
            vec![s("rho_hi"), sig6(self.band.hi())],
            vec![s("theta"), sig6(self.theta)],
        ];
        for g in &self.guaranteed_gain_sets {
            rows.push(vec![format!("gain {}", sig6(g.gain)), interval(g.range, g.contiguous)]);
        }
        let (a, b) = self.candidate_set;
        rows.push(vec![s("non-dominated"), interval(Some((a, b)), self.candidate_contiguous)]);
        rows.push(vec![s("k_search_cap"), s(self.k_search_cap)]);
        aligned(&rows)
    }

    /// One line per gain, then the non-dominated set with an empty gain.
    fn csv(&self) -> String {
        let mut out = csv_line(&["rho_lo", "rho_hi", "theta", "k_search_cap", "set", "gain", "k_min", "k_max", "contiguous"].map(s));
        let head = [sig6(self.band.lo()), sig6(self.band.hi()), sig6(self.theta), s(self.k_search_cap)];
        for g in &self.guaranteed_gain_sets {
            let (lo, hi) = match g.range {
                Some((a, b)) => (s(a), s(b)),
                None => (s("NA"), s("NA")),
            };
            let mut row = head.to_vec();
            row.extend([s("gain"), sig6(g.gain), lo, hi, s(g.contiguous)]);
            out += &csv_line(&row);
        }
        let mut row = head.to_vec();
        row.extend([
            s("nondominated"),
            s("NA"),
            s(self.candidate_set.0),
            s(self.candidate_set.1),
            s(self.candidate_contiguous),
        ]);
        out += &csv_line(&row);
        out
    }
}

const SIM_COLUMNS: [&str; 9] = ["k", "n_k", "var_hat", "se", "eff_emp", "eff_se", "eff_pred", "eff_pred_budget", "flag"];

fn sim_rows(report: &SimulationReport) -> Vec<Vec<String>> {
    report
        .records
        .iter()
        .map(|r| {
            vec![
                s(r.k),
                s(r.n_k),
                sig6(r.var_hat),
                sig6(r.se),
                sig6(r.eff_emp),
                sig6(r.eff_se),
                sig6(r.eff_pred),
                sig6(r.eff_pred_budget),
                s(r.flag),
            ]
        })
        .collect()
}

impl Render for SimulationReport {
    fn text(&self) -> String {
        let c = &self.config;
        let header = key_values(&[
            ("rho", sig6(c.rho)),
            ("theta", sig6(c.theta)),
            ("budget", sig6(c.budget.get())),
            ("reps", s(c.replications)),
            ("seed", s(c.seed)),
            ("sigma2", sig6(c.sigma2)),
        ]);
        let mut rows = vec![SIM_COLUMNS.map(s).to_vec()];
        rows.extend(sim_rows(self));
        format!("{header}\n{}", aligned(&rows))
    }

    /// The configuration is repeated on every line.
    fn csv(&self) -> String {
        let c = &self.config;
        let config = [
            sig6(c.rho),
            sig6(c.theta),
            sig6(c.budget.get()),
            s(c.replications),
            s(c.seed),
            sig6(c.sigma2),
        ];
        let mut header = ["rho", "theta", "budget", "reps", "seed", "sigma2"].map(s).to_vec();
        header.extend(SIM_COLUMNS.map(s));
        let mut out = csv_line(&header);
        for row in sim_rows(self) {
            out += &csv_line(&[config.to_vec(), row].concat());
        }
        out
    }
}
