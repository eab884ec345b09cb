//! Seeded Monte Carlo engine.
//!
//! Every trial draws from its own counter-based stream keyed by
//! `(master seed, purpose, p, trial index)`. Trials may run on any number of
//! worker threads; results are always reduced in trial-index order, so every
//! output is a deterministic function of the configuration and seed.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    kappa_limit, muirhead_lower_smallest, muirhead_upper_largest, theorem2_bound, theorem3_bound,
    DofConvention, MPLaw,
};
use crate::error::{Error, Result};
use crate::rng::{GaussianStream, Purpose, StreamId, MAX_STREAM_INDEX, MAX_STREAM_P};
use crate::spectra::{default_horizon, h_set_xi, j_set, SpectrumFamily};
use crate::stats::{ecdf, ks_one_sample, Proportion};
use crate::wishart::{
    extreme_eigs_trial, sample_covariance, sample_gaussian_matrix, sample_size, Matrix, TrialRecord,
};

/// Default `κ` for the bottom-cluster set.
pub const DEFAULT_KAPPA: f64 = 0.5;
/// Number of histogram bins in [`mp_compare`].
pub const MP_BINS: usize = 50;

/// Everything a Monte Carlo run depends on.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub family: SpectrumFamily,
    pub p_list: Vec<usize>,
    pub q: f64,
    pub trials: usize,
    pub master_seed: u64,
    pub dof_convention: DofConvention,
    /// Truncation of the clustering quantifier; `None` uses [`default_horizon`].
    pub horizon: Option<usize>,
    pub kappa: f64,
    /// Worker threads; `None` uses the global pool. Never affects results.
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(
        family: SpectrumFamily,
        p_list: Vec<usize>,
        q: f64,
        trials: usize,
        master_seed: u64,
    ) -> Self {
        ExperimentConfig {
            family,
            p_list,
            q,
            trials,
            master_seed,
            dof_convention: DofConvention::N,
            horizon: None,
            kappa: DEFAULT_KAPPA,
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.q > 0.0 && self.q < 1.0) {
            return Err(Error::Config(format!(
                "q must lie in (0, 1), got {}",
                self.q
            )));
        }
        if self.trials == 0 {
            return Err(Error::NoTrials);
        }
        if self.trials as u64 > MAX_STREAM_INDEX {
            return Err(Error::Config(format!(
                "at most {MAX_STREAM_INDEX} trials are supported"
            )));
        }
        if !(self.kappa > 0.0 && self.kappa < kappa_limit()) {
            return Err(Error::Config(format!(
                "kappa must lie in (0, sqrt(2/pi) = {:.6}), got {}",
                kappa_limit(),
                self.kappa
            )));
        }
        if self.threads == Some(0) {
            return Err(Error::Config("threads must be at least 1".into()));
        }
        for &p in &self.p_list {
            if p > MAX_STREAM_P {
                return Err(Error::Config(format!(
                    "p = {p} exceeds the supported maximum {MAX_STREAM_P}"
                )));
            }
            sample_size(p, self.q).map_err(|e| Error::Config(format!("p = {p}: {e}")))?;
            if let Some(h) = self.horizon {
                if h < p {
                    return Err(Error::HorizonTooSmall { p, horizon: h });
                }
            }
        }
        Ok(())
    }

    pub fn horizon_for(&self, p: usize) -> usize {
        self.horizon.unwrap_or_else(|| default_horizon(p))
    }
}

/// Runs `f` on a pool with `threads` workers (or the global pool).
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::Config(format!("cannot build thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// All `trials` draws for dimension `p`, in trial-index order.
pub fn run_trials(config: &ExperimentConfig, p: usize) -> Result<Vec<TrialRecord>> {
    config.validate()?;
    sample_size(p, config.q)?;
    with_threads(config.threads, || {
        (0..config.trials as u64)
            .into_par_iter()
            .map(|t| {
                let mut stream =
                    GaussianStream::new(config.master_seed, StreamId::new(Purpose::Trial, p, t));
                extreme_eigs_trial(&config.family, p, config.q, &mut stream)
            })
            .collect::<Result<Vec<_>>>()
    })?
}

/// Frequency of `l_1 > λ_1` with a Wilson 95% interval.
pub fn estimate_overshoot(config: &ExperimentConfig, p: usize) -> Result<Proportion> {
    let records = run_trials(config, p)?;
    Ok(Proportion::new(
        records.iter().filter(|r| r.overshoot).count(),
        records.len(),
    ))
}

/// Frequency of `l_p < λ_p` with a Wilson 95% interval.
pub fn estimate_undershoot(config: &ExperimentConfig, p: usize) -> Result<Proportion> {
    let records = run_trials(config, p)?;
    Ok(Proportion::new(
        records.iter().filter(|r| r.undershoot).count(),
        records.len(),
    ))
}

/// One dimension of a [`sweep`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub p: usize,
    pub n: usize,
    pub phi: usize,
    pub xi: usize,
    pub overshoot: Proportion,
    pub undershoot: Proportion,
    /// Asymptotic reference `e^{−c φ}` for `P(l_1 ≤ λ_1)`.
    pub theorem2_bound: f64,
    /// Asymptotic reference `1 − e^{−c_κ ξ}` for `P(l_p ≤ λ_p)`.
    pub theorem3_bound: f64,
    pub mean_l1: f64,
    pub mean_lp: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub q: f64,
    pub trials: usize,
    pub kappa: f64,
    pub rows: Vec<SweepRow>,
}

/// Overshoot/undershoot frequencies and clustering cardinals along `p_list`.
pub fn sweep(config: &ExperimentConfig) -> Result<SweepResult> {
    config.validate()?;
    if config.p_list.is_empty() {
        return Err(Error::Config("p list is empty".into()));
    }
    if !config.p_list.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Config("p list must be strictly ascending".into()));
    }
    let mut rows = Vec::with_capacity(config.p_list.len());
    for &p in &config.p_list {
        let horizon = config.horizon_for(p);
        let phi = j_set(&config.family, p, horizon)?.cardinal;
        let xi = h_set_xi(&config.family, p, config.kappa, horizon)?.cardinal;
        let records = run_trials(config, p)?;
        let t = records.len();
        let over = records.iter().filter(|r| r.overshoot).count();
        let under = records.iter().filter(|r| r.undershoot).count();
        rows.push(SweepRow {
            p,
            n: records[0].n,
            phi,
            xi,
            overshoot: Proportion::new(over, t),
            undershoot: Proportion::new(under, t),
            theorem2_bound: theorem2_bound(phi as u64),
            theorem3_bound: theorem3_bound(xi as u64, config.kappa)?,
            mean_l1: records.iter().map(|r| r.l1).sum::<f64>() / t as f64,
            mean_lp: records.iter().map(|r| r.lp).sum::<f64>() / t as f64,
        });
    }
    Ok(SweepResult {
        q: config.q,
        trials: config.trials,
        kappa: config.kappa,
        rows,
    })
}

/// One grid point of [`cdf_vs_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CdfBoundRow {
    pub x: f64,
    pub emp_cdf_l1: f64,
    pub muirhead_upper: f64,
    pub emp_cdf_lp: f64,
    pub muirhead_lower: f64,
    /// Larger of the two empirical-CDF standard errors at `x`.
    pub stderr: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CdfBoundTable {
    pub p: usize,
    pub n: usize,
    pub trials: usize,
    pub dof_convention: DofConvention,
    pub rows: Vec<CdfBoundRow>,
    pub pass: bool,
}

/// Slack multiplier on the standard error in [`cdf_vs_bound`].
pub const STDERR_SLACK: f64 = 3.0;

fn cdf_stderr(f: f64, trials: usize) -> f64 {
    let t = trials as f64;
    (f * (1.0 - f) / t).sqrt().max(1.0 / (2.0 * t))
}

/// Compares the empirical CDFs of `l_1` and `l_p` with the product bounds.
///
/// A row passes when `F̂_{l1}(x) ≤ upper(x) + 3 se` and
/// `F̂_{lp}(x) ≥ lower(x) − 3 se`, with `se = max(√(F̂(1−F̂)/T), 1/(2T))`
/// taken over both empirical CDFs.
pub fn cdf_vs_bound(config: &ExperimentConfig, p: usize, x_grid: &[f64]) -> Result<CdfBoundTable> {
    if x_grid.iter().any(|&x| !(x >= 0.0)) || !x_grid.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Config(
            "x grid must be nonnegative and strictly ascending".into(),
        ));
    }
    let records = run_trials(config, p)?;
    let n = records[0].n;
    let spectrum = config.family.spectrum_at(p)?;
    let mut l1: Vec<f64> = records.iter().map(|r| r.l1).collect();
    let mut lp: Vec<f64> = records.iter().map(|r| r.lp).collect();
    l1.sort_by(f64::total_cmp);
    lp.sort_by(f64::total_cmp);
    let t = records.len();
    let mut rows = Vec::with_capacity(x_grid.len());
    for &x in x_grid {
        let emp_cdf_l1 = ecdf(&l1, x);
        let emp_cdf_lp = ecdf(&lp, x);
        let upper = muirhead_upper_largest(&spectrum, n, x, config.dof_convention)?;
        let lower = muirhead_lower_smallest(&spectrum, n, x, config.dof_convention)?;
        let se = cdf_stderr(emp_cdf_l1, t).max(cdf_stderr(emp_cdf_lp, t));
        let pass =
            emp_cdf_l1 <= upper + STDERR_SLACK * se && emp_cdf_lp >= lower - STDERR_SLACK * se;
        rows.push(CdfBoundRow {
            x,
            emp_cdf_l1,
            muirhead_upper: upper,
            emp_cdf_lp,
            muirhead_lower: lower,
            stderr: se,
            pass,
        });
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(CdfBoundTable {
        p,
        n,
        trials: t,
        dof_convention: config.dof_convention,
        rows,
        pass,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    /// Fraction of pooled eigenvalues in the bin.
    pub mass: f64,
}

/// Pooled sample spectrum of `Σ = I` compared with the Marchenko–Pastur law.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MpComparison {
    pub p: usize,
    pub n: usize,
    pub q: f64,
    pub trials: usize,
    pub law: MPLaw,
    pub ks: f64,
    pub eigenvalue_count: usize,
    pub histogram: Vec<HistogramBin>,
}

/// Pools the sample eigenvalues of `trials` identity-covariance draws and
/// measures their KS distance to the Marchenko–Pastur CDF. The histogram has
/// 50 bins over `[0, 1.2 λ₊]`; values outside land in the edge bins.
pub fn mp_compare(
    p: usize,
    q: f64,
    trials: usize,
    master_seed: u64,
    threads: Option<usize>,
) -> Result<MpComparison> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    if p > MAX_STREAM_P || trials as u64 > MAX_STREAM_INDEX {
        return Err(Error::Config(format!(
            "p = {p} or trials = {trials} out of range"
        )));
    }
    let law = MPLaw::new(q)?;
    let n = sample_size(p, q)?;
    let spectrum = crate::spectra::Spectrum::identity(p, 1.0)?;
    let per_trial = with_threads(threads, || {
        (0..trials as u64)
            .into_par_iter()
            .map(|t| {
                let mut stream =
                    GaussianStream::new(master_seed, StreamId::new(Purpose::MarchenkoPastur, p, t));
                let x = sample_gaussian_matrix(p, n, &spectrum, &mut stream)?;
                sample_covariance(&x)?.eigenvalues()
            })
            .collect::<Result<Vec<_>>>()
    })??;
    let mut pooled: Vec<f64> = per_trial.into_iter().flatten().collect();
    pooled.sort_by(f64::total_cmp);
    let ks = ks_one_sample(&pooled, |x| law.cdf(x));

    let top = 1.2 * law.lambda_plus;
    let width = top / MP_BINS as f64;
    let mut counts = [0usize; MP_BINS];
    for &v in &pooled {
        let k = ((v / width).floor().max(0.0) as usize).min(MP_BINS - 1);
        counts[k] += 1;
    }
    let total = pooled.len() as f64;
    let histogram = counts
        .iter()
        .enumerate()
        .map(|(k, &c)| HistogramBin {
            lo: k as f64 * width,
            hi: (k + 1) as f64 * width,
            mass: c as f64 / total,
        })
        .collect();
    Ok(MpComparison {
        p,
        n,
        q,
        trials,
        law,
        ks,
        eigenvalue_count: pooled.len(),
        histogram,
    })
}

/// Largest sample eigenvalue from `trials` draws whose population covariance
/// is `Q diag(λ) Qᵀ` for a fixed orthogonal `rotation` (identity when
/// `None`). Used to check that only the population spectrum matters.
pub fn largest_eigenvalue_samples(
    config: &ExperimentConfig,
    p: usize,
    rotation: Option<&Matrix>,
) -> Result<Vec<f64>> {
    config.validate()?;
    let n = sample_size(p, config.q)?;
    let spectrum = config.family.spectrum_at(p)?;
    with_threads(config.threads, || {
        (0..config.trials as u64)
            .into_par_iter()
            .map(|t| {
                let mut stream =
                    GaussianStream::new(config.master_seed, StreamId::new(Purpose::Rotation, p, t));
                let mut x = sample_gaussian_matrix(p, n, &spectrum, &mut stream)?;
                if let Some(q) = rotation {
                    x = x.rotated(q)?;
                }
                Ok(sample_covariance(&x)?.eigenvalues()?[0])
            })
            .collect::<Result<Vec<_>>>()
    })?
}
