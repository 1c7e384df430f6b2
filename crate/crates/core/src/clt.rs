//! End-to-end Gaussian parameters for `sum_k f(x_k)`.

use serde::Serialize;

use crate::ensemble::{spike_geometry, support_interval, EnsembleSpec, Model, Regime, SpikeGeometry};
use crate::error::{ensure, Error, Result};
use crate::quadrature::{mean_integral, spike_correction, variance_from_series, ChebyshevSeries, QuadratureConfig};
use crate::statistic::{check_domain_from, DomainCheck, FMatrixComposition, LinearStatistic};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CltParams {
    pub n: usize,
    pub mu: f64,
    pub sigma2: f64,
    /// Spike correction for the bulk statistic (outlier eigenvalue excluded).
    pub mu_bar: f64,
    /// `n mu + mu_bar`.
    pub predicted_mean: f64,
    /// `predicted_mean + f(z0)` above the threshold, where the outlier
    /// eigenvalue at `z0` is counted in the statistic; otherwise `predicted_mean`.
    pub outlier_adjusted_mean: f64,
    pub regime: Regime,
}

impl CltParams {
    /// Correction that pairs with the full statistic, outlier included.
    pub fn mu_bar_outlier_adjusted(&self) -> f64 {
        self.outlier_adjusted_mean - self.n as f64 * self.mu
    }
}

/// The statistic as seen by the quadrature: `f` itself for the Wishart models,
/// `f(x / (1 - x))` for the F matrix, whose bulk lives in `(0, 1)`.
pub(crate) fn bulk_statistic_value(spec: &EnsembleSpec, stat: &LinearStatistic, x: f64) -> f64 {
    use crate::statistic::SpectralFunction;
    match spec.model() {
        Model::A | Model::B => stat.value(x),
        Model::C => FMatrixComposition(stat).value(x),
    }
}

fn domain_check(spec: &EnsembleSpec, stat: &LinearStatistic, a: f64) -> Result<()> {
    let lower = match spec.model() {
        Model::A | Model::B => a,
        Model::C => a / (1.0 - a),
    };
    match check_domain_from(stat, lower) {
        DomainCheck::Ok => Ok(()),
        DomainCheck::Violation { lower: bound, .. } => Err(Error::DomainViolation {
            statistic: stat.to_string(),
            x: lower,
            lower: bound,
        }),
    }
}

/// Chebyshev expansion of the statistic on the model's bulk.
pub fn bulk_series(spec: &EnsembleSpec, stat: &LinearStatistic, cfg: &QuadratureConfig) -> Result<ChebyshevSeries> {
    let interval = support_interval(spec)?;
    domain_check(spec, stat, interval.a)?;
    match spec.model() {
        Model::A | Model::B => ChebyshevSeries::fit(stat, interval, cfg),
        Model::C => ChebyshevSeries::fit(&FMatrixComposition(stat), interval, cfg),
    }
}

pub fn clt_params(spec: &EnsembleSpec, stat: &LinearStatistic, n: usize, cfg: &QuadratureConfig) -> Result<CltParams> {
    ensure(n >= 2, "n", n as f64, "matrix dimension must be at least 2")?;
    cfg.validate()?;
    let geom = spike_geometry(spec)?;
    clt_params_with_geometry(spec, stat, n, &geom, cfg)
}

pub(crate) fn clt_params_with_geometry(
    spec: &EnsembleSpec,
    stat: &LinearStatistic,
    n: usize,
    geom: &SpikeGeometry,
    cfg: &QuadratureConfig,
) -> Result<CltParams> {
    if geom.regime == Regime::Critical {
        return Err(Error::CriticalRegime {
            spike: geom.spike,
            threshold: geom.threshold,
        });
    }
    let series = bulk_series(spec, stat, cfg)?;
    let mu = mean_integral(&series, spec)?;
    let sigma2 = variance_from_series(&series);
    let mu_bar = spike_correction(&series, geom, cfg)?;
    let predicted_mean = n as f64 * mu + mu_bar;
    let outlier_adjusted_mean = match (geom.regime, geom.saddle) {
        (Regime::Supercritical, Some(s)) => predicted_mean + bulk_statistic_value(spec, stat, s.z0),
        _ => predicted_mean,
    };
    Ok(CltParams {
        n,
        mu,
        sigma2,
        mu_bar,
        predicted_mean,
        outlier_adjusted_mean,
        regime: geom.regime,
    })
}

/// `(predicted_mean, sigma)`.
pub fn predicted_distribution(params: &CltParams) -> (f64, f64) {
    (params.predicted_mean, params.sigma2.max(0.0).sqrt())
}
