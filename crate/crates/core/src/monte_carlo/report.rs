use rayon::prelude::*;
use serde::Serialize;

use crate::clt::{clt_params, CltParams};
use crate::ensemble::{EnsembleSpec, Regime};
use crate::error::{ensure, Error, Result};
use crate::normal::normal_cdf;
use crate::quadrature::QuadratureConfig;
use crate::statistic::LinearStatistic;

use super::pairwise_sum;
use super::sampler::{empirical_statistic, sample_ensemble, SampleConfig};

/// At most this fraction of trials may be lost to eigensolver failures.
const MAX_DISCARD_FRACTION: f64 = 1e-3;
const DEFAULT_BINS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComparisonMean {
    Predicted,
    OutlierAdjusted,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    /// `counts.len() + 1` bin edges.
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn from_samples(values: &[f64], bins: usize) -> Self {
        let bins = bins.max(1);
        let (mut lo, mut hi) = values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
        if !(lo.is_finite() && hi.is_finite()) {
            lo = 0.0;
            hi = 1.0;
        }
        if hi <= lo {
            lo -= 0.5;
            hi += 0.5;
        }
        let width = (hi - lo) / bins as f64;
        let edges: Vec<f64> = (0..=bins).map(|i| lo + width * i as f64).collect();
        let mut counts = vec![0u64; bins];
        for &v in values {
            let i = (((v - lo) / width) as usize).min(bins - 1);
            counts[i] += 1;
        }
        Histogram { edges, counts }
    }

    /// `(bin_left, bin_right, count, density)` rows; densities integrate to one.
    pub fn rows(&self) -> Vec<(f64, f64, u64, f64)> {
        let total: u64 = self.counts.iter().sum();
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let (l, r) = (self.edges[i], self.edges[i + 1]);
                let density = if total == 0 {
                    0.0
                } else {
                    c as f64 / (total as f64 * (r - l))
                };
                (l, r, c, density)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalReport {
    /// Trials that contributed a value.
    pub trials: usize,
    pub discarded: usize,
    pub sample_mean: f64,
    pub sample_var: f64,
    /// Mean of the reference Gaussian (see `comparison_mean_used`).
    pub reference_mean: f64,
    pub reference_std: f64,
    pub ks_distance: f64,
    /// `(sample_mean - reference_mean) / (reference_std / sqrt(trials))`.
    pub mean_zscore: f64,
    pub comparison_mean_used: ComparisonMean,
    pub histogram: Histogram,
    pub params: CltParams,
}

/// Per-trial statistic values, in trial order.
#[derive(Debug, Clone, PartialEq)]
pub struct Samples {
    pub values: Vec<f64>,
    pub discarded: usize,
}

/// Draws `cfg.trials` realisations (in parallel) and evaluates the statistic
/// on each. Eigensolver failures are logged and discarded; anything else aborts.
pub fn simulate_statistic(spec: &EnsembleSpec, stat: &LinearStatistic, cfg: &SampleConfig) -> Result<Samples> {
    cfg.validate(spec)?;
    let outcomes: Vec<Result<Option<f64>>> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| match sample_ensemble(spec, cfg, i) {
            Ok(eigs) => empirical_statistic(&eigs, stat, spec, cfg.n).map(Some),
            Err(e) if e.is_numerical() => {
                log::warn!("trial {i} discarded: {e}");
                Ok(None)
            }
            Err(e) => Err(e),
        })
        .collect();
    let mut values = Vec::with_capacity(cfg.trials);
    let mut discarded = 0;
    for o in outcomes {
        match o? {
            Some(v) => values.push(v),
            None => discarded += 1,
        }
    }
    if discarded as f64 > MAX_DISCARD_FRACTION * cfg.trials as f64 {
        return Err(Error::TooManyDiscarded {
            discarded,
            trials: cfg.trials,
        });
    }
    Ok(Samples { values, discarded })
}

/// Kolmogorov–Smirnov distance between the samples and `N(mean, std^2)`.
pub fn ks_distance(samples: &[f64], mean: f64, std: f64) -> Result<f64> {
    ensure(
        std > 0.0 && std.is_finite(),
        "std",
        std,
        "reference standard deviation must be positive",
    )?;
    ensure(!samples.is_empty(), "samples", 0.0, "need at least one sample")?;
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    Ok(sorted.iter().enumerate().fold(0.0f64, |d, (i, &x)| {
        let f = normal_cdf((x - mean) / std);
        d.max((i as f64 + 1.0) / n - f).max(f - i as f64 / n)
    }))
}

fn moments(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = pairwise_sum(values) / n;
    let dev: Vec<f64> = values.iter().map(|v| (v - mean) * (v - mean)).collect();
    let var = if values.len() > 1 {
        pairwise_sum(&dev) / (n - 1.0)
    } else {
        0.0
    };
    (mean, var)
}

/// Simulates the statistic and compares it with the CLT prediction at the
/// finite ratios `m/n`. Above the threshold the outlier-adjusted mean is the
/// reference, since the simulated statistic includes the outlier eigenvalue.
pub fn run_experiment(spec: &EnsembleSpec, stat: &LinearStatistic, cfg: &SampleConfig) -> Result<EmpiricalReport> {
    let finite = cfg.finite_spec(spec)?;
    let params = clt_params(&finite, stat, cfg.n, &QuadratureConfig::default())?;
    let samples = simulate_statistic(spec, stat, cfg)?;
    let (sample_mean, sample_var) = moments(&samples.values);
    let (reference_mean, comparison_mean_used) = if params.regime == Regime::Supercritical {
        (params.outlier_adjusted_mean, ComparisonMean::OutlierAdjusted)
    } else {
        (params.predicted_mean, ComparisonMean::Predicted)
    };
    let reference_std = params.sigma2.max(0.0).sqrt();
    let trials = samples.values.len();
    let (ks, zscore) = if reference_std > 0.0 {
        (
            ks_distance(&samples.values, reference_mean, reference_std)?,
            (sample_mean - reference_mean) / (reference_std / (trials as f64).sqrt()),
        )
    } else {
        // Degenerate prediction: a point mass.
        let all_equal = samples.values.iter().all(|&v| v == reference_mean);
        (
            if all_equal { 0.0 } else { 1.0 },
            if sample_mean == reference_mean {
                0.0
            } else {
                f64::INFINITY
            },
        )
    };
    Ok(EmpiricalReport {
        trials,
        discarded: samples.discarded,
        sample_mean,
        sample_var,
        reference_mean,
        reference_std,
        ks_distance: ks,
        mean_zscore: zscore,
        comparison_mean_used,
        histogram: Histogram::from_samples(&samples.values, DEFAULT_BINS),
        params,
    })
}
