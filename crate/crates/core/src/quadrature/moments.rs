use std::f64::consts::PI;

use crate::ensemble::{support_interval, EnsembleSpec, Model, Regime, SpikeGeometry, SupportInterval};
use crate::error::{Error, Result};
use crate::statistic::SpectralFunction;

use super::adaptive::{integrate, Tolerance};
use super::{ChebyshevSeries, QuadratureConfig};

const MAX_SPIKE_NODES: usize = 1 << 18;

fn check_support(series: &ChebyshevSeries, expected: &SupportInterval) -> Result<()> {
    if series.interval.approx_eq(expected) {
        Ok(())
    } else {
        Err(Error::SupportMismatch {
            series_a: series.interval.a,
            series_b: series.interval.b,
            expected_a: expected.a,
            expected_b: expected.b,
        })
    }
}

/// `sum_{k>=1} a_k r^k` by Horner's rule.
fn power_sum(coeffs: &[f64], r: f64) -> f64 {
    coeffs.iter().skip(1).rev().fold(0.0, |acc, &a| (acc + a) * r)
}

/// `int_0^pi h(theta) / (z - x(theta)) dtheta` for real `z` outside the support,
/// summed exactly from the coefficients.
pub fn cauchy_moment(series: &ChebyshevSeries, z: f64) -> Result<f64> {
    let iv = series.interval;
    let (a, b, c, h) = (iv.a, iv.b, iv.center(), iv.half_width());
    let a0 = 0.5 * series.coeffs[0];
    if z > b {
        let root = ((z - a) * (z - b)).sqrt();
        let w = (z - c + root) / h;
        Ok(PI / root * (a0 + power_sum(&series.coeffs, 1.0 / w)))
    } else if z < a {
        let root = ((a - z) * (b - z)).sqrt();
        let w = (c - z + root) / h;
        Ok(-PI / root * (a0 + power_sum(&series.coeffs, -1.0 / w)))
    } else {
        Err(Error::InvalidParameter {
            name: "z",
            value: z,
            reason: "Cauchy moment needs z outside the support",
        })
    }
}

/// `int_0^pi h(theta) / x(theta) dtheta` scaled by `ab`; finite even when `a = 0`.
fn ab_inverse_moment(series: &ChebyshevSeries) -> f64 {
    let iv = series.interval;
    let sab = (iv.a * iv.b).sqrt();
    let w = (iv.center() + sab) / iv.half_width();
    PI * sab * (0.5 * series.coeffs[0] + power_sum(&series.coeffs, -1.0 / w))
}

/// First-order term of the mean, `int f(x) rho_0(x) dx` against the model's
/// equilibrium density.
///
/// The density's square-root factor becomes a polynomial-plus-poles weight in
/// `theta`, and the pole moments are summed exactly from the coefficients, so
/// no quadrature error enters beyond the fit itself.
pub fn mean_integral(series: &ChebyshevSeries, spec: &EnsembleSpec) -> Result<f64> {
    let iv = support_interval(spec)?;
    check_support(series, &iv)?;
    let k = &series.coeffs;
    let a0 = 0.5 * k[0];
    let a1 = k.get(1).copied().unwrap_or(0.0);
    let (a, b, c, h) = (iv.a, iv.b, iv.center(), iv.half_width());
    let plain = PI * a0;
    match spec.model() {
        Model::A | Model::B => {
            // (b-x)(x-a)/x = (a+b) - x - ab/x
            let linear = PI * (c * a0 + 0.5 * h * a1);
            Ok(((a + b) * plain - linear - ab_inverse_moment(series)) / (2.0 * PI))
        }
        Model::C => {
            let EnsembleSpec::NoncentralF { c1, c2, .. } = *spec else {
                unreachable!()
            };
            // (b-x)(x-a)/(x(1-x)) = 1 - ab/x - (1-a)(1-b)/(1-x)
            let upper = (1.0 - a) * (1.0 - b) * cauchy_moment(series, 1.0)?;
            Ok((c1 + c2) * (plain - ab_inverse_moment(series) - upper) / (2.0 * PI))
        }
    }
}

/// `sigma^2 = (1/4) sum_k k a_k^2`, the double principal-value variance integral
/// reduced through the finite Hilbert transform of the harmonics.
pub fn variance_from_series(series: &ChebyshevSeries) -> f64 {
    0.25 * series
        .coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, a)| k as f64 * a * a)
        .sum::<f64>()
}

/// Inner principal value `P int f'(y) sqrt((b-y)(y-a)) / (x - y) dy` at the
/// outer midpoint nodes `theta_j = pi (j + 1/2) / n`.
///
/// The inner rule is the trapezoid rule at `phi_k = pi k / n`, which interleaves
/// with the outer nodes. Subtracting `f'(x)` removes the pole; the subtracted
/// part is restored exactly as `f'(x) pi (x - center)`.
fn pv_inner<F: SpectralFunction + ?Sized>(f: &F, iv: &SupportInterval, n: usize) -> Result<Vec<(f64, f64)>> {
    let (c, h) = (iv.center(), iv.half_width());
    let fp = |x: f64| {
        f.derivative(x)
            .ok_or_else(|| Error::MissingDerivative("spectral function".into()))
    };
    let step = PI / n as f64;
    let inner_nodes: Vec<(f64, f64, f64)> = (0..=n)
        .map(|k| {
            let phi = step * k as f64;
            let weight = if k == 0 || k == n { 0.5 } else { 1.0 };
            let y = c + h * phi.cos();
            let s = h * phi.sin();
            fp(y).map(|d| (y, weight * s * s, d))
        })
        .collect::<Result<_>>()?;
    (0..n)
        .map(|j| {
            let x = iv.at_angle(step * (j as f64 + 0.5));
            let dx = fp(x)?;
            let smooth: f64 = inner_nodes.iter().map(|&(y, wy, dy)| wy * (dy - dx) / (x - y)).sum();
            Ok((x, smooth * step + dx * PI * (x - c)))
        })
        .collect()
}

/// Direct evaluation of the variance double integral; shares no code with
/// [`variance_from_series`].
pub fn variance_pv_oracle<F: SpectralFunction + ?Sized>(
    f: &F,
    interval: &SupportInterval,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    cfg.validate()?;
    let n = cfg.pv_grid;
    let inner = pv_inner(f, interval, n)?;
    let sum: f64 = inner.iter().map(|&(x, v)| f.value(x) * v).sum();
    Ok(sum * (PI / n as f64) / (2.0 * PI * PI))
}

/// `(1/2 pi) int_0^pi h(theta) (S/(z0 - x) - 1) dtheta` by the midpoint rule,
/// doubling until successive estimates agree.
fn spike_integral(series: &ChebyshevSeries, z0: f64, root: f64, tol: f64) -> Result<f64> {
    let iv = series.interval;
    let hmax = series.coeffs.iter().map(|a| a.abs()).sum::<f64>();
    let scale = hmax * (1.0 + root.abs() / (z0 - iv.b).max(f64::MIN_POSITIVE));
    let rule = |n: usize| {
        let step = PI / n as f64;
        let sum: f64 = (0..n)
            .map(|j| {
                let t = step * (j as f64 + 0.5);
                series.eval_angle(t) * (root / (z0 - iv.at_angle(t)) - 1.0)
            })
            .sum();
        sum * step / (2.0 * PI)
    };
    let mut n = (2 * series.order()).max(64);
    let mut prev = rule(n);
    while n < MAX_SPIKE_NODES {
        n *= 2;
        let next = rule(n);
        if (next - prev).abs() <= tol * scale {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NonConvergence {
        what: "spike correction quadrature",
        iterations: n,
    })
}

/// `(1/2) sum_{k>=1} a_k w^{-k}`; only meaningful when `|w| > 1`, i.e. below the
/// threshold.
pub fn spike_correction_series(series: &ChebyshevSeries, geom: &SpikeGeometry) -> Option<f64> {
    match (geom.regime, geom.saddle) {
        (Regime::ZeroSpike, _) => Some(0.0),
        (Regime::Subcritical, Some(s)) if s.w.abs() > 1.0 => Some(0.5 * power_sum(&series.coeffs, 1.0 / s.w)),
        _ => None,
    }
}

/// Spike-dependent `O(1)` mean term.
///
/// Exactly zero without a spike; refused at the threshold. Below the threshold
/// the quadrature is cross-checked against the Joukowski series.
pub fn spike_correction(series: &ChebyshevSeries, geom: &SpikeGeometry, cfg: &QuadratureConfig) -> Result<f64> {
    check_support(series, &geom.interval)?;
    let saddle = match (geom.regime, geom.saddle) {
        (Regime::ZeroSpike, _) => return Ok(0.0),
        (Regime::Critical, _) => {
            return Err(Error::CriticalRegime {
                spike: geom.spike,
                threshold: geom.threshold,
            })
        }
        (_, Some(s)) => s,
        (_, None) => return Err(Error::Numerical("spike geometry without saddlepoint".into())),
    };
    let integral = spike_integral(series, saddle.z0, saddle.root, 1e-3 * cfg.rel_tol)?;
    if let Some(series_value) = spike_correction_series(series, geom) {
        if (integral - series_value).abs() > cfg.rel_tol * (1.0 + integral.abs()) {
            return Err(Error::SeriesMismatch {
                integral,
                series: series_value,
            });
        }
    }
    Ok(integral)
}

/// Both sides of the identity
/// `int f(x) rho_2(x, z) dx = int ln(z - x) rho_1(x) dx` for real `z > b`:
/// the left by adaptive quadrature, the right through the principal-value
/// machinery of the variance oracle.
pub fn log_kernel_equivalence<F: SpectralFunction + ?Sized>(
    f: &F,
    interval: &SupportInterval,
    z: f64,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64)> {
    cfg.validate()?;
    if !(z.is_finite() && z > interval.b) {
        return Err(Error::InvalidParameter {
            name: "z",
            value: z,
            reason: "must lie above the support",
        });
    }
    let root = ((z - interval.a) * (z - interval.b)).sqrt();
    let tol = Tolerance { abs: 1e-15, rel: 1e-13 };
    let side1 = integrate(
        |t| {
            let x = interval.at_angle(t);
            f.value(x) * (root / (z - x) - 1.0)
        },
        0.0,
        PI,
        tol,
    )? / (2.0 * PI);
    let n = cfg.pv_grid;
    let inner = pv_inner(f, interval, n)?;
    let sum: f64 = inner.iter().map(|&(x, v)| (z - x).ln() * v).sum();
    let side2 = -sum * (PI / n as f64) / (2.0 * PI * PI);
    Ok((side1, side2))
}
