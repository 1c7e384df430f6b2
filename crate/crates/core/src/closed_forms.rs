//! Closed-form Gaussian parameters for the three application statistics, the
//! high-SNR power offset of the Rician MIMO channel, and the power of the
//! multiple-sample significance test.
//!
//! The spike corrections here are continuous through the threshold: above it
//! they equal the outlier-adjusted correction (bulk value plus `f(z0)`), i.e.
//! they describe the full statistic including the outlier eigenvalue.

use serde::Serialize;

use crate::ensemble::{support_interval, EnsembleSpec};
use crate::error::{ensure, Result};
use crate::normal::{normal_cdf, normal_quantile};
use crate::quadrature::hyp2f2_power_offset_term;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedForm {
    pub mu: f64,
    pub sigma2: f64,
    pub mu_bar: f64,
}

/// Likelihood-ratio statistic `x/c - ln(x/c) - 1` under the spiked Wishart model.
pub fn lrt_params(c: f64, delta: f64) -> Result<ClosedForm> {
    ensure(
        c.is_finite() && c > 1.0,
        "c",
        c,
        "likelihood-ratio closed forms need c > 1",
    )?;
    ensure(
        delta.is_finite() && delta >= 0.0,
        "delta",
        delta,
        "spike must be non-negative",
    )?;
    let l = (-1.0 / c).ln_1p();
    Ok(ClosedForm {
        mu: 1.0 + (c - 1.0) * l,
        sigma2: -1.0 / c - l,
        mu_bar: delta - delta.ln_1p(),
    })
}

/// Capacity statistic `ln(1 + x/T)` under the non-central Wishart model.
pub fn capacity_params(c: f64, nu: f64, t: f64) -> Result<ClosedForm> {
    ensure(t.is_finite() && t > 0.0, "T", t, "must be positive")?;
    ensure(nu.is_finite() && nu >= 0.0, "nu", nu, "spike must be non-negative")?;
    let iv = support_interval(&EnsembleSpec::model_b(c, 0.0)?)?;
    let (a, b) = (iv.a, iv.b);
    let (sa, sb) = ((t + a).sqrt(), (t + b).sqrt());
    let big_a = sa * sb;
    let sab = (a * b).sqrt();
    // sqrt(ab) = c - 1 exactly; the expression below stays finite at c = 1.
    let inverse_term = if sab > 0.0 {
        sab * (((sab + big_a).powi(2) - t * t) / (a.sqrt() + b.sqrt()).powi(2)).ln()
    } else {
        0.0
    };
    let mu = 0.5 * ((a + b) * ((sa + sb) / 2.0).ln() - 0.5 * (sa - sb).powi(2) - inverse_term - 2.0 * t.ln());
    let q = ((t + a) / (t + b)).sqrt().sqrt();
    let sigma2 = 2.0 * (0.5 * q + 0.5 / q).ln();
    let mu_bar = if nu == 0.0 {
        0.0
    } else {
        let num = 2.0 * (t * nu + (1.0 + nu) * (c + nu)).powi(2);
        let den = nu * nu * (1.0 + c + t) * big_a
            + 2.0 * c * nu * (1.0 + c + t + big_a)
            + nu * nu * (t * t + 2.0 * t * (1.0 + c) + 1.0 + c * c)
            + 2.0 * c * c;
        0.5 * (num / den).ln()
    };
    Ok(ClosedForm { mu, sigma2, mu_bar })
}

/// `ln(1 + x)` of the F-matrix eigenvalues (minus log Wilks' Lambda).
pub fn multisample_params(c1: f64, c2: f64, nu: f64) -> Result<ClosedForm> {
    ensure(nu.is_finite() && nu >= 0.0, "nu", nu, "spike must be non-negative")?;
    let iv = support_interval(&EnsembleSpec::model_c(c1, c2, 0.0)?)?;
    let (a, b) = (iv.a, iv.b);
    let (ra, rb) = ((1.0 - a).sqrt(), (1.0 - b).sqrt());
    let sab = (a * b).sqrt();
    let mu = -(c1 + c2)
        * (((ra + rb) / 2.0).ln() - 0.5 * sab * ((1.0 - (sab - ra * rb).powi(2)) / (a.sqrt() + b.sqrt()).powi(2)).ln()
            + ra * rb * (0.5 / ra + 0.5 / rb).ln());
    let sigma2 = ((ra + rb).powi(2) / (4.0 * ra * rb)).ln();
    Ok(ClosedForm {
        mu,
        sigma2,
        mu_bar: (nu / (c1 + c2)).ln_1p(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerOffset {
    /// `1 + (c-1) ln((c-1)/c) + ln(K0/m + 1) - ln(1 + K0/c)/n`.
    pub log_term: f64,
    /// Finite-size reference with the `2F2` term scaled by `K0/(m ln 2)`, as it
    /// is usually quoted.
    pub hyp2f2_as_written: f64,
    /// The same reference with the `2F2` term scaled by `K0/m`, consistently in
    /// nats.
    pub hyp2f2_nats: f64,
}

/// High-SNR power offset `L_inf(K0)` of the Rician channel.
pub fn high_snr_power_offset(c: f64, k0: f64, n: u32, m: u32) -> Result<PowerOffset> {
    ensure(n >= 1, "n", n as f64, "must be at least 1")?;
    ensure(m >= n, "m", m as f64, "must be at least n")?;
    ensure(c.is_finite() && c >= 1.0, "c", c, "must be at least 1")?;
    ensure(k0.is_finite() && k0 >= 0.0, "K0", k0, "must be non-negative")?;
    let (nf, mf) = (n as f64, m as f64);
    // x ln x -> 0 as c -> 1.
    let bulk = if c == 1.0 {
        0.0
    } else {
        (c - 1.0) * ((c - 1.0) / c).ln()
    };
    let common = 1.0 + bulk + (k0 / mf).ln_1p();
    let h = k0 / mf * hyp2f2_power_offset_term(mf, nf * k0)?;
    Ok(PowerOffset {
        log_term: common - (k0 / c).ln_1p() / nf,
        hyp2f2_as_written: common - h / std::f64::consts::LN_2,
        hyp2f2_nats: common - h,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TestPowerInput {
    pub alpha: f64,
    pub nu: f64,
    pub c1: f64,
    pub c2: f64,
}

/// `beta = 1 - Phi(Phi^{-1}(1 - alpha) - mu_bar_R / sigma_R)`, computed as
/// `Phi(Phi^{-1}(alpha) + mu_bar_R / sigma_R)` so that `beta = alpha` holds to
/// rounding at `nu = 0`.
pub fn test_power(input: &TestPowerInput) -> Result<f64> {
    let alpha = input.alpha;
    ensure(alpha > 0.0 && alpha < 1.0, "alpha", alpha, "must lie in (0, 1)")?;
    let cf = multisample_params(input.c1, input.c2, input.nu)?;
    let shift = cf.mu_bar / cf.sigma2.sqrt();
    Ok(normal_cdf(normal_quantile(alpha) + shift))
}

/// Rejection threshold of the test: the upper `alpha` point of the null law
/// `N(n mu_R, sigma_R^2)`.
pub fn null_rejection_threshold(alpha: f64, c1: f64, c2: f64, n: usize) -> Result<f64> {
    ensure(alpha > 0.0 && alpha < 1.0, "alpha", alpha, "must lie in (0, 1)")?;
    let cf = multisample_params(c1, c2, 0.0)?;
    Ok(n as f64 * cf.mu - cf.sigma2.sqrt() * normal_quantile(alpha))
}
