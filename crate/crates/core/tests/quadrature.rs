use proptest::prelude::*;

use spiked_clt::clt::bulk_series;
use spiked_clt::quadrature::{
    random_identity_params, spike_correction, spike_correction_series, variance_from_series, variance_pv_oracle,
    verify_identity, IDENTITIES,
};
use spiked_clt::statistic::FMatrixComposition;
use spiked_clt::{spike_geometry, support_interval, EnsembleSpec, LinearStatistic, Model, QuadratureConfig};

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn builtins(c: f64) -> Vec<LinearStatistic> {
    vec![
        LinearStatistic::linear(),
        LinearStatistic::log1p(),
        LinearStatistic::capacity(0.7).unwrap(),
        LinearStatistic::lrt(c).unwrap(),
        LinearStatistic::polynomial(vec![0.5, -1.0, 0.25, 0.1]).unwrap(),
        LinearStatistic::chebyshev(vec![0.3, 1.0, -0.5, 0.2], 0.0, 8.0).unwrap(),
    ]
}

#[test]
fn series_variance_matches_principal_value_oracle_on_every_model() {
    let specs = [
        EnsembleSpec::model_a(1.3, 0.0).unwrap(),
        EnsembleSpec::model_b(3.0, 0.0).unwrap(),
        EnsembleSpec::model_c(2.5, 3.0, 0.0).unwrap(),
    ];
    for spec in &specs {
        let iv = support_interval(spec).unwrap();
        let c = match *spec {
            EnsembleSpec::SpikedWishart { c, .. } | EnsembleSpec::NoncentralWishart { c, .. } => c,
            _ => 1.0,
        };
        for stat in builtins(c) {
            let v = variance_from_series(&bulk_series(spec, &stat, &cfg()).unwrap());
            let oracle = match spec.model() {
                Model::C => variance_pv_oracle(&FMatrixComposition(&stat), &iv, &cfg()),
                _ => variance_pv_oracle(&stat, &iv, &cfg()),
            }
            .unwrap();
            assert!(
                (v - oracle).abs() <= 1e-6 * (1.0 + v),
                "{stat} on {spec:?}: {v} vs {oracle}"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn spike_integral_matches_series_below_threshold(model in 0usize..3, c in 1.2f64..4.0, frac in 0.05f64..0.8) {
        let base = match model {
            0 => EnsembleSpec::model_a(c, 1.0),
            1 => EnsembleSpec::model_b(c, 1.0),
            _ => EnsembleSpec::model_c(c, 2.5, 1.0),
        }.unwrap();
        let t = spiked_clt::criticality_threshold(&base).unwrap();
        let spec = base.with_spike(frac * t);
        let geom = spike_geometry(&spec).unwrap();
        let w = geom.saddle.unwrap().w;
        prop_assume!(w.abs() >= 1.05);
        for stat in [LinearStatistic::linear(), LinearStatistic::log1p(), LinearStatistic::capacity(0.5).unwrap()] {
            let series = bulk_series(&spec, &stat, &cfg()).unwrap();
            let integral = spike_correction(&series, &geom, &cfg()).unwrap();
            let sum = spike_correction_series(&series, &geom).unwrap();
            prop_assert!((integral - sum).abs() <= 1e-8 * (1.0 + integral.abs()), "{} {} vs {}", stat, integral, sum);
        }
    }
}

#[test]
fn identity_catalog_over_random_draws() {
    let mut rng = spiked_clt::monte_carlo::trial_rng(7, 0);
    for id in IDENTITIES {
        for _ in 0..100 {
            let p = random_identity_params(id, &mut rng).unwrap();
            let r = verify_identity(id, &p).unwrap();
            assert!(r.residual < 1e-9, "{id} {p:?}: {r:?}");
        }
    }
}

#[test]
fn identity_domain_errors() {
    assert!(verify_identity("C264", &[2.0, 1.0]).is_err());
    assert!(verify_identity("C266", &[1.0, 2.0, 3.0]).is_err());
    assert!(verify_identity("C999", &[1.0, 2.0]).is_err());
}
