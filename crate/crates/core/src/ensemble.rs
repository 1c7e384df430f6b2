//! The three spiked ensembles and their large-dimension geometry.
//!
//! Models A and B are Wishart matrices of size `n` with `m` degrees of freedom
//! (`m/n -> c`), carrying either a covariance spike `1 + delta` (A) or a rank-one
//! non-centrality `n * nu` (B). Model C is the multivariate F matrix
//! `W1 W2^{-1}` whose numerator carries the rank-one non-centrality; its
//! geometry lives in the transformed variable `x / (1 + x)`.

use serde::Serialize;

use crate::error::{ensure, Result};

/// Relative half-width of the band around the detachment threshold that is
/// classified as critical.
pub const DEFAULT_CRITICAL_BAND: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Model {
    A,
    B,
    C,
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Model::A => "A",
            Model::B => "B",
            Model::C => "C",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnsembleSpec {
    /// Model A: central complex Wishart whose covariance has one eigenvalue `1 + delta`.
    SpikedWishart { c: f64, delta: f64 },
    /// Model B: identity-covariance Wishart with rank-one non-centrality `n * nu`.
    NoncentralWishart { c: f64, nu: f64 },
    /// Model C: `W1 W2^{-1}` with `W1` carrying the rank-one non-centrality `n * nu`.
    NoncentralF { c1: f64, c2: f64, nu: f64 },
}

impl EnsembleSpec {
    pub fn model_a(c: f64, delta: f64) -> Result<Self> {
        let spec = EnsembleSpec::SpikedWishart { c, delta };
        spec.validate()?;
        Ok(spec)
    }

    pub fn model_b(c: f64, nu: f64) -> Result<Self> {
        let spec = EnsembleSpec::NoncentralWishart { c, nu };
        spec.validate()?;
        Ok(spec)
    }

    pub fn model_c(c1: f64, c2: f64, nu: f64) -> Result<Self> {
        let spec = EnsembleSpec::NoncentralF { c1, c2, nu };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            EnsembleSpec::SpikedWishart { c, .. } | EnsembleSpec::NoncentralWishart { c, .. } => {
                ensure(c.is_finite() && c >= 1.0, "c", c, "aspect ratio must satisfy c >= 1")?;
            }
            EnsembleSpec::NoncentralF { c1, c2, .. } => {
                ensure(c1.is_finite() && c1 > 1.0, "c1", c1, "aspect ratio must satisfy c1 > 1")?;
                ensure(c2.is_finite() && c2 > 1.0, "c2", c2, "aspect ratio must satisfy c2 > 1")?;
            }
        }
        let s = self.spike();
        ensure(
            s.is_finite() && s >= 0.0,
            "spike",
            s,
            "spike must be finite and non-negative",
        )
    }

    pub fn model(&self) -> Model {
        match self {
            EnsembleSpec::SpikedWishart { .. } => Model::A,
            EnsembleSpec::NoncentralWishart { .. } => Model::B,
            EnsembleSpec::NoncentralF { .. } => Model::C,
        }
    }

    /// `delta` for Model A, `nu` for Models B and C.
    pub fn spike(&self) -> f64 {
        match *self {
            EnsembleSpec::SpikedWishart { delta, .. } => delta,
            EnsembleSpec::NoncentralWishart { nu, .. } | EnsembleSpec::NoncentralF { nu, .. } => nu,
        }
    }

    pub fn with_spike(&self, spike: f64) -> Self {
        match *self {
            EnsembleSpec::SpikedWishart { c, .. } => EnsembleSpec::SpikedWishart { c, delta: spike },
            EnsembleSpec::NoncentralWishart { c, .. } => EnsembleSpec::NoncentralWishart { c, nu: spike },
            EnsembleSpec::NoncentralF { c1, c2, .. } => EnsembleSpec::NoncentralF { c1, c2, nu: spike },
        }
    }
}

/// Bulk support `[a, b]` of the limiting eigenvalue density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupportInterval {
    pub a: f64,
    pub b: f64,
}

impl SupportInterval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        ensure(
            a.is_finite() && a >= 0.0,
            "a",
            a,
            "lower endpoint must be finite and >= 0",
        )?;
        ensure(
            b.is_finite() && b > a,
            "b",
            b,
            "upper endpoint must exceed the lower endpoint",
        )?;
        Ok(SupportInterval { a, b })
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.b - self.a)
    }

    /// Point of the interval at angle `theta`: `center + half_width * cos(theta)`.
    pub fn at_angle(&self, theta: f64) -> f64 {
        self.center() + self.half_width() * theta.cos()
    }

    pub(crate) fn approx_eq(&self, other: &SupportInterval) -> bool {
        let scale = 1.0 + self.b.abs().max(other.b.abs());
        (self.a - other.a).abs() <= 1e-12 * scale && (self.b - other.b).abs() <= 1e-12 * scale
    }
}

pub fn support_interval(spec: &EnsembleSpec) -> Result<SupportInterval> {
    spec.validate()?;
    match *spec {
        EnsembleSpec::SpikedWishart { c, .. } | EnsembleSpec::NoncentralWishart { c, .. } => {
            let r = c.sqrt();
            Ok(SupportInterval {
                a: (1.0 - r) * (1.0 - r),
                b: (1.0 + r) * (1.0 + r),
            })
        }
        EnsembleSpec::NoncentralF { c1, c2, .. } => {
            let s = c1 + c2;
            let base = c1 * (s - 1.0) + c2;
            let r = 2.0 * (c1 * c2 * (s - 1.0)).sqrt();
            Ok(SupportInterval {
                a: (base - r) / (s * s),
                b: (base + r) / (s * s),
            })
        }
    }
}

/// Spike value at which an outlier eigenvalue separates from the bulk.
pub fn criticality_threshold(spec: &EnsembleSpec) -> Result<f64> {
    spec.validate()?;
    Ok(match *spec {
        EnsembleSpec::SpikedWishart { c, .. } => 1.0 / c.sqrt(),
        EnsembleSpec::NoncentralWishart { c, .. } => c.sqrt(),
        EnsembleSpec::NoncentralF { c1, c2, .. } => (c1 + (c1 * c2 * (c1 + c2 - 1.0)).sqrt()) / (c2 - 1.0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    ZeroSpike,
    Subcritical,
    Critical,
    Supercritical,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Regime::ZeroSpike => "zero_spike",
            Regime::Subcritical => "subcritical",
            Regime::Critical => "critical",
            Regime::Supercritical => "supercritical",
        };
        f.write_str(s)
    }
}

/// Saddlepoint data for a non-zero spike.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Saddle {
    /// Saddlepoint, which is also the location of the outlier eigenvalue.
    pub z0: f64,
    /// Branch-resolved `sqrt((z0 - a)(z0 - b))`: positive below the threshold,
    /// negative above it.
    pub root: f64,
    /// Joukowski coordinate, `z0 = center + half_width * (w + 1/w) / 2` with
    /// `root = half_width * (w - 1/w) / 2`.
    pub w: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpikeGeometry {
    pub spike: f64,
    pub regime: Regime,
    pub threshold: f64,
    pub interval: SupportInterval,
    /// `None` exactly when `regime == ZeroSpike`.
    pub saddle: Option<Saddle>,
}

impl SpikeGeometry {
    pub fn z0(&self) -> Option<f64> {
        self.saddle.map(|s| s.z0)
    }

    pub fn root(&self) -> Option<f64> {
        self.saddle.map(|s| s.root)
    }
}

pub fn spike_geometry(spec: &EnsembleSpec) -> Result<SpikeGeometry> {
    spike_geometry_with_band(spec, DEFAULT_CRITICAL_BAND)
}

pub fn spike_geometry_with_band(spec: &EnsembleSpec, band: f64) -> Result<SpikeGeometry> {
    ensure(
        band.is_finite() && band >= 0.0,
        "band",
        band,
        "critical band must be non-negative",
    )?;
    let interval = support_interval(spec)?;
    let threshold = criticality_threshold(spec)?;
    let spike = spec.spike();

    if spike == 0.0 {
        return Ok(SpikeGeometry {
            spike,
            regime: Regime::ZeroSpike,
            threshold,
            interval,
            saddle: None,
        });
    }

    if (spike - threshold).abs() < band * threshold {
        return Ok(SpikeGeometry {
            spike,
            regime: Regime::Critical,
            threshold,
            interval,
            saddle: Some(Saddle {
                z0: interval.b,
                root: 0.0,
                w: 1.0,
            }),
        });
    }

    let (z0, root) = match *spec {
        EnsembleSpec::SpikedWishart { c, delta } => (
            (1.0 + c * delta) * (1.0 + delta) / delta,
            (1.0 - c * delta * delta) / delta,
        ),
        EnsembleSpec::NoncentralWishart { c, nu } => ((1.0 + nu) * (c + nu) / nu, c / nu - nu),
        EnsembleSpec::NoncentralF { c1, c2, nu } => {
            let s = c1 + c2;
            let z0 = (1.0 + nu) * (c1 + nu) / (nu * (s + nu));
            let root = (c1 * s + 2.0 * c1 * nu - (c2 - 1.0) * nu * nu) / (nu * (s + nu) * s);
            (z0, root)
        }
    };
    let regime = if spike < threshold {
        Regime::Subcritical
    } else {
        Regime::Supercritical
    };
    let w = (z0 - interval.center() + root) / interval.half_width();

    Ok(SpikeGeometry {
        spike,
        regime,
        threshold,
        interval,
        saddle: Some(Saddle { z0, root, w }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use approx::assert_relative_eq;

    #[test]
    fn support_endpoints() {
        let s = support_interval(&EnsembleSpec::model_a(1.0, 0.0).unwrap()).unwrap();
        assert_eq!((s.a, s.b), (0.0, 4.0));

        let s = support_interval(&EnsembleSpec::model_b(2.0, 0.0).unwrap()).unwrap();
        assert_relative_eq!(s.a, 0.171_572_875_253_809_9, epsilon = 1e-12);
        assert_relative_eq!(s.b, 5.828_427_124_746_19, epsilon = 1e-12);
        assert_relative_eq!(s.center().powi(2) - s.half_width().powi(2), s.a * s.b, epsilon = 1e-12);

        let s = support_interval(&EnsembleSpec::model_c(2.0, 2.0, 0.0).unwrap()).unwrap();
        assert_relative_eq!(s.a, (2.0 - 3f64.sqrt()) / 4.0, epsilon = 1e-14);
        assert_relative_eq!(s.b, (2.0 + 3f64.sqrt()) / 4.0, epsilon = 1e-14);
    }

    #[test]
    fn invalid_ratios_rejected() {
        assert!(EnsembleSpec::model_a(0.5, 0.0).is_err());
        assert!(EnsembleSpec::model_c(1.0, 2.0, 0.0).is_err());
        assert!(EnsembleSpec::model_c(2.0, 1.0, 0.0).is_err());
        assert!(EnsembleSpec::model_b(2.0, -1.0).is_err());
        let raw = EnsembleSpec::NoncentralWishart { c: 0.9, nu: 1.0 };
        assert!(matches!(
            support_interval(&raw),
            Err(Error::InvalidParameter { name: "c", .. })
        ));
    }

    #[test]
    fn thresholds() {
        assert_eq!(
            criticality_threshold(&EnsembleSpec::model_a(4.0, 0.0).unwrap()).unwrap(),
            0.5
        );
        assert_relative_eq!(
            criticality_threshold(&EnsembleSpec::model_b(2.0, 0.0).unwrap()).unwrap(),
            2f64.sqrt()
        );
        assert_relative_eq!(
            criticality_threshold(&EnsembleSpec::model_c(2.0, 2.0, 0.0).unwrap()).unwrap(),
            2.0 + 2.0 * 3f64.sqrt(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn model_a_geometry() {
        let g = spike_geometry(&EnsembleSpec::model_a(2.0, 0.5).unwrap()).unwrap();
        let s = g.saddle.unwrap();
        assert_eq!(g.regime, Regime::Subcritical);
        assert_relative_eq!(s.z0, 6.0, epsilon = 1e-14);
        assert_relative_eq!(s.root, 1.0, epsilon = 1e-14);
        assert_relative_eq!(s.w, 2f64.sqrt(), epsilon = 1e-13);

        let g = spike_geometry(&EnsembleSpec::model_a(2.0, 1.0).unwrap()).unwrap();
        let s = g.saddle.unwrap();
        assert_eq!(g.regime, Regime::Supercritical);
        assert_relative_eq!(s.z0, 6.0, epsilon = 1e-14);
        assert_relative_eq!(s.root, -1.0, epsilon = 1e-14);
        assert!(s.w.abs() < 1.0);
    }

    #[test]
    fn model_c_geometry() {
        let g = spike_geometry(&EnsembleSpec::model_c(2.0, 2.0, 1.0).unwrap()).unwrap();
        let s = g.saddle.unwrap();
        assert_eq!(g.regime, Regime::Subcritical);
        assert_relative_eq!(s.z0, 1.2, epsilon = 1e-14);
        assert_relative_eq!(s.root, 0.55, epsilon = 1e-14);
        let (a, b) = (g.interval.a, g.interval.b);
        assert_relative_eq!((s.z0 - a) * (s.z0 - b), 0.3025, epsilon = 1e-13);
    }

    #[test]
    fn coinciding_saddlepoints_are_kept_apart() {
        let specs = [
            EnsembleSpec::model_a(2.0, 0.5).unwrap(),
            EnsembleSpec::model_a(2.0, 1.0).unwrap(),
            EnsembleSpec::model_b(2.0, 1.0).unwrap(),
            EnsembleSpec::model_b(2.0, 2.0).unwrap(),
        ];
        let geoms: Vec<_> = specs.iter().map(|s| spike_geometry(s).unwrap()).collect();
        for g in &geoms {
            assert_relative_eq!(g.z0().unwrap(), 6.0, epsilon = 1e-13);
        }
        let regimes: Vec<_> = geoms.iter().map(|g| g.regime).collect();
        assert_eq!(
            regimes,
            [
                Regime::Subcritical,
                Regime::Supercritical,
                Regime::Subcritical,
                Regime::Supercritical
            ]
        );
        assert_relative_eq!(geoms[2].root().unwrap(), 1.0, epsilon = 1e-14);
        assert_relative_eq!(geoms[3].root().unwrap(), -1.0, epsilon = 1e-14);
    }

    #[test]
    fn zero_and_critical_spikes() {
        let g = spike_geometry(&EnsembleSpec::model_b(3.0, 0.0).unwrap()).unwrap();
        assert_eq!(g.regime, Regime::ZeroSpike);
        assert!(g.saddle.is_none());

        let spec = EnsembleSpec::model_b(3.0, 3f64.sqrt() * (1.0 + 1e-12)).unwrap();
        let g = spike_geometry(&spec).unwrap();
        assert_eq!(g.regime, Regime::Critical);
        assert_eq!(g.z0(), Some(g.interval.b));
    }

    #[test]
    fn continuity_at_threshold() {
        for spec in [
            EnsembleSpec::model_a(2.5, 0.0).unwrap(),
            EnsembleSpec::model_b(1.7, 0.0).unwrap(),
            EnsembleSpec::model_c(1.5, 3.0, 0.0).unwrap(),
        ] {
            let t = criticality_threshold(&spec).unwrap();
            for side in [1.0 - 1e-4, 1.0 + 1e-4] {
                let g = spike_geometry(&spec.with_spike(t * side)).unwrap();
                let s = g.saddle.unwrap();
                let scale = g.interval.b;
                assert!((s.z0 - g.interval.b).abs() < 1e-6 * scale.max(1.0), "{spec:?} {s:?}");
                // the root vanishes linearly in the distance to the threshold
                assert!(s.root.abs() < 1e-3 * scale.max(1.0));
            }
        }
    }
}
