//! Finite-size simulation of the three ensembles and comparison of the
//! empirical statistic with the predicted Gaussian.

mod report;
mod sampler;

pub use report::{
    ks_distance, run_experiment, simulate_statistic, ComparisonMean, EmpiricalReport, Histogram, Samples,
};
pub use sampler::{empirical_statistic, sample_ensemble, trial_rng, Dims, SampleConfig};

/// Order-fixed pairwise summation: deterministic and accurate to `O(log n)` ulps.
pub(crate) fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 16 {
        values.iter().sum()
    } else {
        let (l, r) = values.split_at(values.len() / 2);
        pairwise_sum(l) + pairwise_sum(r)
    }
}
