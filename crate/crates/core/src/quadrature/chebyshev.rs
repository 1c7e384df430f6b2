use std::f64::consts::PI;

use serde::Serialize;

use crate::ensemble::SupportInterval;
use crate::error::{Error, Result};
use crate::statistic::{clenshaw, SpectralFunction};

use super::QuadratureConfig;

const INITIAL_ORDER: usize = 32;
const TAIL_DECAY: f64 = 1e-12;

/// `f(center + half_width cos(theta)) = a_0/2 + sum_{k>=1} a_k cos(k theta)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChebyshevSeries {
    pub interval: SupportInterval,
    pub coeffs: Vec<f64>,
}

impl ChebyshevSeries {
    /// Samples `f` at `N` Chebyshev angles, doubling `N` from 32 until the
    /// trailing coefficients have decayed below `1e-12` of the largest one.
    pub fn fit<F: SpectralFunction + ?Sized>(f: &F, interval: SupportInterval, cfg: &QuadratureConfig) -> Result<Self> {
        let mut n = INITIAL_ORDER.min(cfg.max_order);
        loop {
            let samples: Vec<f64> = (0..n)
                .map(|j| f.value(interval.at_angle(PI * (j as f64 + 0.5) / n as f64)))
                .collect();
            if let Some((j, &bad)) = samples.iter().enumerate().find(|(_, v)| !v.is_finite()) {
                let x = interval.at_angle(PI * (j as f64 + 0.5) / n as f64);
                return Err(Error::Numerical(format!(
                    "statistic is {bad} at x = {x} inside the support"
                )));
            }
            let coeffs = cosine_transform(&samples);
            let tail = relative_tail(&coeffs);
            if tail <= TAIL_DECAY {
                log::debug!("Chebyshev fit accepted at order {n} (tail {tail:e})");
                return Ok(ChebyshevSeries { interval, coeffs });
            }
            if n >= cfg.max_order {
                return Err(Error::Analyticity { order: n, tail });
            }
            n = (2 * n).min(cfg.max_order);
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `h(theta)`.
    pub fn eval_angle(&self, theta: f64) -> f64 {
        clenshaw(&self.coeffs, theta.cos())
    }

    pub fn eval(&self, x: f64) -> f64 {
        let u = (x - self.interval.center()) / self.interval.half_width();
        clenshaw(&self.coeffs, u)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

pub fn chebyshev_coefficients<F: SpectralFunction + ?Sized>(
    f: &F,
    interval: SupportInterval,
    cfg: &QuadratureConfig,
) -> Result<ChebyshevSeries> {
    ChebyshevSeries::fit(f, interval, cfg)
}

/// `a_k = (2/N) sum_j s_j cos(k theta_j)` with `theta_j = pi (j + 1/2) / N`.
fn cosine_transform(samples: &[f64]) -> Vec<f64> {
    let n = samples.len();
    // cos(k theta_j) = cos(pi k (2j+1) / 2N); tabulate over one period 4N.
    let period = 4 * n;
    let table: Vec<f64> = (0..period).map(|m| (PI * m as f64 / (2 * n) as f64).cos()).collect();
    let scale = 2.0 / n as f64;
    (0..n)
        .map(|k| {
            let mut acc = 0.0;
            for (j, &s) in samples.iter().enumerate() {
                acc += s * table[(k * (2 * j + 1)) % period];
            }
            scale * acc
        })
        .collect()
}

/// Largest coefficient in the last quarter of the series relative to the
/// largest overall; looking at a block rather than `a_K` alone guards against
/// parity zeros.
fn relative_tail(coeffs: &[f64]) -> f64 {
    let max = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if max == 0.0 {
        return 0.0;
    }
    let start = coeffs.len() - coeffs.len() / 4;
    coeffs[start..].iter().fold(0.0f64, |m, c| m.max(c.abs())) / max
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statistic::LinearStatistic;
    use approx::assert_abs_diff_eq;

    fn iv(a: f64, b: f64) -> SupportInterval {
        SupportInterval::new(a, b).unwrap()
    }

    #[test]
    fn linear_statistic_coefficients() {
        let s = ChebyshevSeries::fit(&LinearStatistic::linear(), iv(0.5, 3.5), &QuadratureConfig::default()).unwrap();
        assert_abs_diff_eq!(s.coeffs[0] / 2.0, 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.coeffs[1], 1.5, epsilon = 1e-14);
        assert!(s.coeffs[2..].iter().all(|c| c.abs() < 1e-14));
    }

    #[test]
    fn square_on_zero_four() {
        let sq = LinearStatistic::polynomial(vec![0.0, 0.0, 1.0]).unwrap();
        let s = ChebyshevSeries::fit(&sq, iv(0.0, 4.0), &QuadratureConfig::default()).unwrap();
        assert_abs_diff_eq!(s.coeffs[0] / 2.0, 6.0, epsilon = 1e-13);
        assert_abs_diff_eq!(s.coeffs[1], 8.0, epsilon = 1e-13);
        assert_abs_diff_eq!(s.coeffs[2], 2.0, epsilon = 1e-13);
    }

    #[test]
    fn constant_has_only_a0() {
        let k = LinearStatistic::polynomial(vec![3.0]).unwrap();
        let s = ChebyshevSeries::fit(&k, iv(1.0, 2.0), &QuadratureConfig::default()).unwrap();
        assert_abs_diff_eq!(s.coeffs[0], 6.0, epsilon = 1e-14);
        assert!(s.coeffs[1..].iter().all(|c| c.abs() < 1e-14));
    }

    #[test]
    fn reconstruction_and_tail() {
        let stats = [
            LinearStatistic::lrt(1.5).unwrap(),
            LinearStatistic::capacity(0.3).unwrap(),
            LinearStatistic::log1p(),
        ];
        let c: f64 = 1.5;
        let interval = iv((1.0 - c.sqrt()).powi(2), (1.0 + c.sqrt()).powi(2));
        for stat in &stats {
            let s = ChebyshevSeries::fit(stat, interval, &QuadratureConfig::default()).unwrap();
            let fmax = (0..64)
                .map(|i| stat.value(interval.at_angle(PI * i as f64 / 63.0)).abs())
                .fold(0.0, f64::max);
            for i in 0..64 {
                let t = PI * (i as f64 + 0.37) / 64.0;
                let err = (s.eval_angle(t) - stat.value(interval.at_angle(t))).abs();
                assert!(err <= 1e-9 * (1.0 + fmax), "{stat}: {err}");
            }
            let last = *s.coeffs.last().unwrap();
            assert!(last.abs() <= 1e-12 * s.max_abs_coeff());
        }
    }

    #[test]
    fn rough_statistic_is_rejected() {
        // log singularity just below the support: the series cannot decay fast enough.
        let stat = LinearStatistic::capacity(1e-9).unwrap();
        let cfg = QuadratureConfig {
            max_order: 64,
            ..QuadratureConfig::default()
        };
        assert!(matches!(
            ChebyshevSeries::fit(&stat, iv(0.0, 4.0), &cfg),
            Err(Error::Analyticity { .. })
        ));
    }
}
