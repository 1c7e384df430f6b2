//! Confluent hypergeometric `1F1`: series oracle and the large-`n` saddlepoint
//! approximation used for the F-matrix density, plus the `2F2` term of the
//! finite-size power offset.

use std::f64::consts::PI;

use statrs::function::gamma::{gamma_lr, ln_gamma};

use crate::error::{ensure, Error, Result};

const MAX_TERMS: usize = 200_000;
const SERIES_TOL: f64 = 1e-15;

/// `1F1(a; b; x) = sum_k (a)_k / (b)_k x^k / k!`, summed until the terms fall
/// below `1e-15` of the partial sum.
pub fn hyp1f1_series(a: f64, b: f64, x: f64) -> Result<f64> {
    ensure(a.is_finite() && x.is_finite(), "x", x, "arguments must be finite")?;
    ensure(
        b.is_finite() && !(b <= 0.0 && b.fract() == 0.0),
        "b",
        b,
        "b must not be a non-positive integer",
    )?;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) / (b + kf) * x / (kf + 1.0);
        sum += term;
        if !sum.is_finite() {
            return Err(Error::Numerical("1F1 series overflowed; use ln_hyp1f1_series".into()));
        }
        if term == 0.0 || (term.abs() <= SERIES_TOL * sum.abs() && (a + kf) * x / ((b + kf) * (kf + 1.0)) < 0.5) {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        what: "1F1 series",
        iterations: MAX_TERMS,
    })
}

/// `ln 1F1(a; b; x)` for `a, b > 0` and `x >= 0`, where every term is positive
/// and the sum may exceed the floating-point range.
pub fn ln_hyp1f1_series(a: f64, b: f64, x: f64) -> Result<f64> {
    ensure(a > 0.0 && a.is_finite(), "a", a, "log-space series needs a > 0")?;
    ensure(b > 0.0 && b.is_finite(), "b", b, "log-space series needs b > 0")?;
    ensure(x >= 0.0 && x.is_finite(), "x", x, "log-space series needs x >= 0")?;
    if x == 0.0 {
        return Ok(0.0);
    }
    // Log-sum-exp with a running scale.
    let mut ln_term = 0.0f64;
    let mut scale = 0.0f64;
    let mut acc = 1.0f64;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let ratio = (a + kf) / (b + kf) * x / (kf + 1.0);
        ln_term += ratio.ln();
        if ln_term > scale {
            acc = acc * (scale - ln_term).exp() + 1.0;
            scale = ln_term;
        } else {
            acc += (ln_term - scale).exp();
        }
        if ratio < 0.5 && (ln_term - scale).exp() <= SERIES_TOL * acc {
            return Ok(scale + acc.ln());
        }
    }
    Err(Error::NonConvergence {
        what: "1F1 log-space series",
        iterations: MAX_TERMS,
    })
}

/// Saddlepoint approximation of `ln 1F1(nu + 1; nv + 1; n gamma z)` for large `n`.
///
/// The contour integral `(1/2 pi i) oint t^{nu} e^{n gamma z t} (t-1)^{-n(u-v)-1} dt`
/// around `t = 1` carries the prefactor `Gamma(n(u-v)+1) Gamma(nv+1) / Gamma(nu+1)`,
/// and its saddle at `t > 1` contributes `(t-1)^{-n(u-v)}`.
pub fn ln_hyp1f1_asymptotic(u: f64, v: f64, gamma: f64, z: f64, n: u32) -> Result<f64> {
    ensure(v > 0.0 && v.is_finite(), "v", v, "must be positive")?;
    ensure(u > v && u.is_finite(), "u", u, "must exceed v")?;
    ensure(gamma > 0.0 && gamma.is_finite(), "gamma", gamma, "must be positive")?;
    ensure(z > 1.0 && z.is_finite(), "z", z, "must exceed 1")?;
    ensure(n >= 1, "n", n as f64, "must be at least 1")?;
    let nf = n as f64;
    let gz = gamma * z;
    let t = (gz - v + ((v - gz).powi(2) + 4.0 * gz * u).sqrt()) / (2.0 * gz);
    let curvature = -v * (t - 1.0).powi(2) + (u - v) * (2.0 * t - 1.0);
    if curvature <= 0.0 {
        return Err(Error::Numerical("degenerate saddlepoint curvature".into()));
    }
    let d = nf * (u - v);
    Ok(
        ln_gamma(d + 1.0) + ln_gamma(nf * v + 1.0) - ln_gamma(nf * u + 1.0) + nf * gz * t + (nf * u + 1.0) * t.ln()
            - d * (t - 1.0).ln()
            - 0.5 * (2.0 * PI * nf).ln()
            - 0.5 * curvature.ln(),
    )
}

pub fn hyp1f1_asymptotic(u: f64, v: f64, gamma: f64, z: f64, n: u32) -> Result<f64> {
    let v = ln_hyp1f1_asymptotic(u, v, gamma, z, n)?.exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Numerical(
            "1F1 approximation overflows; use ln_hyp1f1_asymptotic".into(),
        ))
    }
}

/// `2F2(1, 1; 2, m+1; -x)`.
///
/// The alternating defining series is useless in floating point once `x` is
/// moderately large, so it is summed in the positive form
/// `(1/x) sum_{k>=0} m/(m+k) P(k+1, x)` with `P` the regularized lower
/// incomplete gamma function.
pub fn hyp2f2_power_offset_term(m: f64, x: f64) -> Result<f64> {
    ensure(m > 0.0 && m.is_finite(), "m", m, "must be positive")?;
    ensure(x >= 0.0 && x.is_finite(), "x", x, "must be non-negative")?;
    if x == 0.0 {
        return Ok(1.0);
    }
    let mut sum = 0.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let term = m / (m + kf) * gamma_lr(kf + 1.0, x);
        sum += term;
        if kf > x && term <= 1e-17 * sum {
            return Ok(sum / x);
        }
    }
    Err(Error::NonConvergence {
        what: "2F2 series",
        iterations: MAX_TERMS,
    })
}
