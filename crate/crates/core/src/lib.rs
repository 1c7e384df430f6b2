//! Gaussian limits of linear spectral statistics `sum_k f(x_k)` for three spiked
//! Hermitian ensembles: spiked complex Wishart, rank-one non-central Wishart,
//! and the non-central multivariate F matrix.
//!
//! The limit is `N(n mu + mu_bar, sigma^2)`: `mu` and `sigma^2` depend only on the
//! bulk, and the spike enters through the `O(1)` correction `mu_bar`, which is
//! evaluated at the saddlepoint `z0` where an outlier eigenvalue would sit.

// `!(x < bound)` is used deliberately so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod closed_forms;
pub mod clt;
pub mod ensemble;
pub mod error;
pub mod monte_carlo;
pub mod normal;
pub mod quadrature;
pub mod statistic;

pub use closed_forms::{
    capacity_params, high_snr_power_offset, lrt_params, multisample_params, test_power, ClosedForm, PowerOffset,
    TestPowerInput,
};
pub use clt::{clt_params, predicted_distribution, CltParams};
pub use ensemble::{
    criticality_threshold, spike_geometry, support_interval, EnsembleSpec, Model, Regime, Saddle, SpikeGeometry,
    SupportInterval,
};
pub use error::{Error, Result};
pub use monte_carlo::{run_experiment, sample_ensemble, EmpiricalReport, SampleConfig};
pub use quadrature::{ChebyshevSeries, QuadratureConfig};
pub use statistic::{check_domain, evaluate_statistic, make_statistic, DomainCheck, LinearStatistic, SpectralFunction};
