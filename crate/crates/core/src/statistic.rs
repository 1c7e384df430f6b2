//! Linear statistics `f` applied to eigenvalues.
//!
//! The catalog is closed: a handful of application statistics plus generic
//! polynomial and Chebyshev families. Chebyshev coefficients cover any analytic
//! `f` in practice; their decay rate is the analyticity proxy we rely on.

use std::fmt;
use std::str::FromStr;

use crate::ensemble::SupportInterval;
use crate::error::{ensure, Error, Result};

/// Anything that can be expanded and integrated against the spectral kernels.
pub trait SpectralFunction: Sync {
    fn value(&self, x: f64) -> f64;

    fn derivative(&self, x: f64) -> Option<f64>;

    fn has_derivative(&self) -> bool {
        self.derivative(0.5).is_some()
    }
}

impl<F: Fn(f64) -> f64 + Sync> SpectralFunction for F {
    fn value(&self, x: f64) -> f64 {
        self(x)
    }

    fn derivative(&self, _x: f64) -> Option<f64> {
        None
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StatisticKind {
    /// `f(x) = x`
    Linear,
    /// `f(x) = sum_k coeffs[k] x^k`
    Polynomial(Vec<f64>),
    /// `f(x) = x/c - ln(x/c) - 1`, the covariance likelihood-ratio statistic.
    Lrt { c: f64 },
    /// `f(x) = ln(1 + x/T)`, mutual information per eigenvalue.
    Capacity { t: f64 },
    /// `f(x) = ln(1 + x)`
    Log1p,
    /// `f(x) = coeffs[0]/2 + sum_{k>=1} coeffs[k] T_k(u)` with `u` the affine
    /// image of `x` from `[lo, hi]` onto `[-1, 1]`.
    Chebyshev { coeffs: Vec<f64>, lo: f64, hi: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearStatistic {
    kind: StatisticKind,
    /// Derivative coefficients for the Chebyshev family, in the same `[lo, hi]` frame.
    cheb_derivative: Vec<f64>,
}

impl LinearStatistic {
    fn from_kind(kind: StatisticKind) -> Self {
        let cheb_derivative = match &kind {
            StatisticKind::Chebyshev { coeffs, lo, hi } => chebyshev_derivative_coeffs(coeffs, *lo, *hi),
            _ => Vec::new(),
        };
        LinearStatistic { kind, cheb_derivative }
    }

    pub fn linear() -> Self {
        Self::from_kind(StatisticKind::Linear)
    }

    pub fn polynomial(coeffs: Vec<f64>) -> Result<Self> {
        ensure(
            !coeffs.is_empty(),
            "coefficients",
            0.0,
            "polynomial needs at least one coefficient",
        )?;
        for &c in &coeffs {
            ensure(c.is_finite(), "coefficient", c, "coefficients must be finite")?;
        }
        Ok(Self::from_kind(StatisticKind::Polynomial(coeffs)))
    }

    /// The statistic is defined for any `c > 0`; `c >= 1` is required because it
    /// is meant to be paired with a Wishart support of the same ratio.
    pub fn lrt(c: f64) -> Result<Self> {
        ensure(
            c.is_finite() && c >= 1.0,
            "c",
            c,
            "likelihood-ratio statistic needs c >= 1",
        )?;
        Ok(Self::from_kind(StatisticKind::Lrt { c }))
    }

    pub fn capacity(t: f64) -> Result<Self> {
        ensure(t.is_finite() && t > 0.0, "T", t, "capacity scale must be positive")?;
        Ok(Self::from_kind(StatisticKind::Capacity { t }))
    }

    pub fn log1p() -> Self {
        Self::from_kind(StatisticKind::Log1p)
    }

    pub fn chebyshev(coeffs: Vec<f64>, lo: f64, hi: f64) -> Result<Self> {
        ensure(
            !coeffs.is_empty(),
            "coefficients",
            0.0,
            "Chebyshev series needs at least one coefficient",
        )?;
        for &c in &coeffs {
            ensure(c.is_finite(), "coefficient", c, "coefficients must be finite")?;
        }
        ensure(lo.is_finite(), "lo", lo, "interval endpoint must be finite")?;
        ensure(hi.is_finite() && hi > lo, "hi", hi, "interval must satisfy lo < hi")?;
        Ok(Self::from_kind(StatisticKind::Chebyshev { coeffs, lo, hi }))
    }

    pub fn kind(&self) -> &StatisticKind {
        &self.kind
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            StatisticKind::Linear => "linear",
            StatisticKind::Polynomial(_) => "polynomial",
            StatisticKind::Lrt { .. } => "lrt",
            StatisticKind::Capacity { .. } => "capacity",
            StatisticKind::Log1p => "log1p",
            StatisticKind::Chebyshev { .. } => "chebyshev",
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match &self.kind {
            StatisticKind::Linear | StatisticKind::Log1p => Vec::new(),
            StatisticKind::Polynomial(c) => c.clone(),
            StatisticKind::Lrt { c } => vec![*c],
            StatisticKind::Capacity { t } => vec![*t],
            StatisticKind::Chebyshev { coeffs, lo, hi } => {
                let mut p = vec![*lo, *hi];
                p.extend_from_slice(coeffs);
                p
            }
        }
    }

    /// Greatest lower bound of the real domain; `-inf` when unrestricted.
    pub fn domain_lower(&self) -> f64 {
        match self.kind {
            StatisticKind::Lrt { .. } => 0.0,
            StatisticKind::Capacity { t } => -t,
            StatisticKind::Log1p => -1.0,
            _ => f64::NEG_INFINITY,
        }
    }

    pub fn requires_positive_support(&self) -> bool {
        matches!(self.kind, StatisticKind::Lrt { .. })
    }

    pub fn in_domain(&self, x: f64) -> bool {
        x > self.domain_lower()
    }

    fn raw_value(&self, x: f64) -> f64 {
        match &self.kind {
            StatisticKind::Linear => x,
            StatisticKind::Polynomial(c) => c.iter().rev().fold(0.0, |acc, &k| acc * x + k),
            StatisticKind::Lrt { c } => {
                let r = x / c;
                r - r.ln() - 1.0
            }
            StatisticKind::Capacity { t } => (x / t).ln_1p(),
            StatisticKind::Log1p => x.ln_1p(),
            StatisticKind::Chebyshev { coeffs, lo, hi } => clenshaw(coeffs, to_unit(x, *lo, *hi)),
        }
    }

    fn raw_derivative(&self, x: f64) -> f64 {
        match &self.kind {
            StatisticKind::Linear => 1.0,
            StatisticKind::Polynomial(c) => c
                .iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(0.0, |acc, (k, &ck)| acc * x + k as f64 * ck),
            StatisticKind::Lrt { c } => 1.0 / c - 1.0 / x,
            StatisticKind::Capacity { t } => 1.0 / (t + x),
            StatisticKind::Log1p => 1.0 / (1.0 + x),
            StatisticKind::Chebyshev { lo, hi, .. } => clenshaw(&self.cheb_derivative, to_unit(x, *lo, *hi)),
        }
    }
}

impl SpectralFunction for LinearStatistic {
    fn value(&self, x: f64) -> f64 {
        self.raw_value(x)
    }

    fn derivative(&self, x: f64) -> Option<f64> {
        Some(self.raw_derivative(x))
    }

    fn has_derivative(&self) -> bool {
        true
    }
}

/// `f(x / (1 - x))`: a statistic of F-matrix eigenvalues expressed in the
/// variable `x / (1 + x)` in which the F-matrix bulk lives.
#[derive(Debug, Clone, Copy)]
pub struct FMatrixComposition<'a>(pub &'a LinearStatistic);

impl SpectralFunction for FMatrixComposition<'_> {
    fn value(&self, x: f64) -> f64 {
        self.0.raw_value(x / (1.0 - x))
    }

    fn derivative(&self, x: f64) -> Option<f64> {
        let u = 1.0 - x;
        Some(self.0.raw_derivative(x / u) / (u * u))
    }

    fn has_derivative(&self) -> bool {
        true
    }
}

impl fmt::Display for LinearStatistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match &self.kind {
            StatisticKind::Linear => write!(f, "linear"),
            StatisticKind::Polynomial(c) => write!(f, "poly:{}", join(c)),
            StatisticKind::Lrt { c } => write!(f, "lrt:c={c}"),
            StatisticKind::Capacity { t } => write!(f, "capacity:T={t}"),
            StatisticKind::Log1p => write!(f, "log1p"),
            StatisticKind::Chebyshev { coeffs, lo, hi } => write!(f, "cheb:{}@{lo},{hi}", join(coeffs)),
        }
    }
}

pub fn make_statistic(kind: &str, params: &[f64]) -> Result<LinearStatistic> {
    let arity = |n: usize| {
        if params.len() == n {
            Ok(())
        } else {
            Err(Error::InvalidParameter {
                name: "params",
                value: params.len() as f64,
                reason: "wrong number of parameters for statistic",
            })
        }
    };
    match kind {
        "linear" => arity(0).map(|_| LinearStatistic::linear()),
        "log1p" => arity(0).map(|_| LinearStatistic::log1p()),
        "lrt" => {
            arity(1)?;
            LinearStatistic::lrt(params[0])
        }
        "capacity" => {
            arity(1)?;
            LinearStatistic::capacity(params[0])
        }
        "polynomial" | "poly" => LinearStatistic::polynomial(params.to_vec()),
        "chebyshev" | "cheb" => {
            if params.len() < 3 {
                return arity(3).map(|_| unreachable!());
            }
            LinearStatistic::chebyshev(params[2..].to_vec(), params[0], params[1])
        }
        other => Err(Error::UnknownStatistic(other.to_string())),
    }
}

/// A parsed statistic argument whose Chebyshev interval may still be open.
///
/// Accepted forms: `linear`, `lrt`, `lrt:c=<v>`, `capacity`, `capacity:T=<v>`, `log1p`,
/// `poly:c0,c1,...`, `cheb:a0,a1,...` and `cheb:a0,a1,...@lo,hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct StatisticArg {
    pub kind: String,
    pub values: Vec<f64>,
    pub interval: Option<(f64, f64)>,
}

impl StatisticArg {
    /// Builds the statistic, filling defaults from the ensemble: the `lrt` ratio
    /// defaults to `default_c` and the Chebyshev interval to `default_interval`.
    pub fn build(&self, default_c: Option<f64>, default_interval: (f64, f64)) -> Result<LinearStatistic> {
        match self.kind.as_str() {
            "lrt" if self.values.is_empty() => {
                let c = default_c.ok_or(Error::InvalidParameter {
                    name: "c",
                    value: f64::NAN,
                    reason: "lrt needs an explicit c for this ensemble",
                })?;
                LinearStatistic::lrt(c)
            }
            "capacity" if self.values.is_empty() => Err(Error::InvalidParameter {
                name: "T",
                value: f64::NAN,
                reason: "capacity needs `capacity:T=<value>` or an SNR specification",
            }),
            "cheb" | "chebyshev" => {
                let (lo, hi) = self.interval.unwrap_or(default_interval);
                LinearStatistic::chebyshev(self.values.clone(), lo, hi)
            }
            kind => make_statistic(kind, &self.values),
        }
    }
}

impl FromStr for StatisticArg {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, rest) = match s.split_once(':') {
            Some((k, r)) => (k.trim(), Some(r.trim())),
            None => (s, None),
        };
        let number = |t: &str| -> Result<f64> {
            let v: f64 = t
                .trim()
                .parse()
                .map_err(|_| Error::UnknownStatistic(format!("{s}: `{t}` is not a number")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::UnknownStatistic(format!("{s}: `{t}` is not finite")))
            }
        };
        let list = |t: &str| -> Result<Vec<f64>> { t.split(',').map(number).collect() };
        let keyed = |t: &str, key: &str| -> Result<f64> {
            match t.split_once('=') {
                Some((k, v)) if k.trim().eq_ignore_ascii_case(key) => number(v),
                Some(_) => Err(Error::UnknownStatistic(format!("{s}: expected `{key}=<value>`"))),
                None => number(t),
            }
        };

        let (kind, values, interval) = match (kind, rest) {
            ("linear", None) | ("log1p", None) | ("lrt", None) | ("capacity", None) => (kind, Vec::new(), None),
            ("lrt", Some(r)) => (kind, vec![keyed(r, "c")?], None),
            ("capacity", Some(r)) => (kind, vec![keyed(r, "T")?], None),
            ("poly" | "polynomial", Some(r)) => ("poly", list(r)?, None),
            ("cheb" | "chebyshev", Some(r)) => match r.split_once('@') {
                Some((coeffs, iv)) => {
                    let iv = list(iv)?;
                    if iv.len() != 2 {
                        return Err(Error::UnknownStatistic(format!("{s}: interval needs lo,hi")));
                    }
                    ("cheb", list(coeffs)?, Some((iv[0], iv[1])))
                }
                None => ("cheb", list(r)?, None),
            },
            _ => return Err(Error::UnknownStatistic(s.to_string())),
        };
        Ok(StatisticArg {
            kind: kind.to_string(),
            values,
            interval,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DomainCheck {
    Ok,
    Violation { lower: f64, support_lower: f64 },
}

impl DomainCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, DomainCheck::Ok)
    }
}

impl fmt::Display for DomainCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainCheck::Ok => write!(f, "ok"),
            DomainCheck::Violation { lower, support_lower } => write!(
                f,
                "support starts at {support_lower} but the statistic requires x > {lower}"
            ),
        }
    }
}

pub fn check_domain(stat: &LinearStatistic, interval: &SupportInterval) -> DomainCheck {
    check_domain_from(stat, interval.a)
}

pub(crate) fn check_domain_from(stat: &LinearStatistic, support_lower: f64) -> DomainCheck {
    let lower = stat.domain_lower();
    if lower < support_lower {
        DomainCheck::Ok
    } else {
        DomainCheck::Violation { lower, support_lower }
    }
}

pub fn evaluate_statistic(stat: &LinearStatistic, x: f64) -> Result<f64> {
    if stat.in_domain(x) {
        Ok(stat.raw_value(x))
    } else {
        Err(Error::DomainViolation {
            statistic: stat.to_string(),
            x,
            lower: stat.domain_lower(),
        })
    }
}

fn to_unit(x: f64, lo: f64, hi: f64) -> f64 {
    (2.0 * x - lo - hi) / (hi - lo)
}

/// `coeffs[0]/2 + sum_{k>=1} coeffs[k] T_k(u)`.
pub(crate) fn clenshaw(coeffs: &[f64], u: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &c in coeffs.iter().skip(1).rev() {
        let b0 = 2.0 * u * b1 - b2 + c;
        b2 = b1;
        b1 = b0;
    }
    u * b1 - b2 + 0.5 * coeffs[0]
}

/// Coefficients of `d/dx` of a Chebyshev series on `[lo, hi]`.
fn chebyshev_derivative_coeffs(coeffs: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let n = coeffs.len();
    if n < 2 {
        return vec![0.0];
    }
    let mut d = vec![0.0; n + 1];
    for k in (1..n).rev() {
        d[k - 1] = d[k + 1] + 2.0 * k as f64 * coeffs[k];
    }
    d.truncate(n - 1);
    let scale = 2.0 / (hi - lo);
    d.iter_mut().for_each(|v| *v *= scale);
    d
}
