use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use spiked_clt::clt::bulk_series;
use spiked_clt::monte_carlo::{run_experiment, trial_rng, EmpiricalReport, SampleConfig};
use spiked_clt::quadrature::{
    log_kernel_equivalence, random_identity_params, spike_correction, spike_correction_series, variance_from_series,
    variance_pv_oracle, verify_identity, IDENTITIES,
};
use spiked_clt::statistic::{FMatrixComposition, StatisticArg};
use spiked_clt::{
    capacity_params, clt_params, lrt_params, multisample_params, spike_geometry, support_interval, test_power,
    EnsembleSpec, LinearStatistic, Model, QuadratureConfig, Regime, TestPowerInput,
};

use crate::args::{
    Cli, Command, Format, IdentitiesArgs, ModelArg, ModelArgs, ParamsArgs, PowerArgs, SimulateArgs, SnrArgs,
};
use crate::{output, CliError, CliResult};

const IDENTITY_TOL: f64 = 1e-9;

pub fn run(cli: Cli) -> CliResult<()> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::Validation("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Numerical(format!("thread pool: {e}")))?;
    }
    let out = cli.out.as_deref();
    match cli.command {
        Command::Params(a) => params(&a, cli.format.unwrap_or(Format::Json), out),
        Command::Simulate(a) => simulate(&a, cli.format.unwrap_or(Format::Json), out),
        Command::Power(a) => power(&a, cli.format.unwrap_or(Format::Csv), out),
        Command::Identities(a) => identities(&a, cli.format.unwrap_or(Format::Json), out),
        Command::Selftest => selftest(cli.format.unwrap_or(Format::Json), out),
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn emit<T: Serialize>(rows: &[T], single: bool, format: Format, out: Option<&Path>) -> CliResult<()> {
    match (format, single) {
        (Format::Json, true) => output::json(&rows[0], out),
        (Format::Json, false) => output::json(rows, out),
        (Format::Csv, _) => output::csv(rows, out),
    }
}

/// Model ratios after reconciling `--c/--c1/--c2` with any dimension flags.
enum Ratios {
    Wishart(f64),
    F(f64, f64),
}

fn check_model_flags(m: &ModelArgs) -> CliResult<()> {
    match m.model {
        ModelArg::A | ModelArg::B if m.c1.is_some() || m.c2.is_some() => {
            Err(invalid("--c1/--c2 apply to model C only; use --c"))
        }
        ModelArg::C if m.c.is_some() => Err(invalid("model C takes --c1 and --c2, not --c")),
        _ => Ok(()),
    }
}

fn spike_value(m: &ModelArgs, snr: &SnrArgs) -> f64 {
    match (m.spike, m.model) {
        (Some(s), _) => s,
        // The Rician factor is the non-centrality of the channel model.
        (None, ModelArg::B) => snr.k0.unwrap_or(0.0),
        (None, _) => 0.0,
    }
}

fn make_spec(model: ModelArg, ratios: Ratios, spike: f64) -> CliResult<EnsembleSpec> {
    Ok(match (model, ratios) {
        (ModelArg::A, Ratios::Wishart(c)) => EnsembleSpec::model_a(c, spike)?,
        (ModelArg::B, Ratios::Wishart(c)) => EnsembleSpec::model_b(c, spike)?,
        (ModelArg::C, Ratios::F(c1, c2)) => EnsembleSpec::model_c(c1, c2, spike)?,
        _ => unreachable!("ratios are resolved per model"),
    })
}

/// Antenna configuration: `n = min(nr, nt)`, `m = max(nr, nt)`.
fn antenna_dims(snr: &SnrArgs) -> CliResult<Option<(usize, usize)>> {
    match (snr.nr, snr.nt) {
        (Some(r), Some(t)) => Ok(Some((r.min(t), r.max(t)))),
        (None, None) => Ok(None),
        _ => Err(invalid("--nr and --nt must be given together")),
    }
}

/// `T = nt (K0/m + 1) / (n P)`, with `P` converted from dB.
fn snr_capacity_t(snr: &SnrArgs, spike: f64, n: Option<usize>, m: Option<f64>) -> CliResult<Option<f64>> {
    let Some(p_db) = snr.p_db else {
        if snr.k0.is_some() {
            return Err(invalid("--K0 needs --P-db"));
        }
        return Ok(None);
    };
    if !p_db.is_finite() {
        return Err(invalid("--P-db must be finite"));
    }
    let n = n.ok_or_else(|| invalid("--P-db needs the dimension (--n or --nr/--nt)"))?;
    let m = m.ok_or_else(|| invalid("--P-db needs the degrees of freedom (--m, --c or --nr/--nt)"))?;
    let k0 = snr.k0.unwrap_or(spike);
    if !(k0.is_finite() && k0 >= 0.0) {
        return Err(invalid("--K0 must be non-negative"));
    }
    let nt = snr.nt.unwrap_or(n) as f64;
    let p = 10f64.powf(p_db / 10.0);
    Ok(Some(nt * (k0 / m + 1.0) / (n as f64 * p)))
}

fn build_statistic(m: &ModelArgs, spec: &EnsembleSpec, snr_t: Option<f64>) -> CliResult<LinearStatistic> {
    let mut arg: StatisticArg = m.statistic.parse()?;
    if arg.kind == "capacity" {
        match (arg.values.is_empty(), snr_t) {
            (true, Some(t)) => arg.values = vec![t],
            (false, Some(_)) => return Err(invalid("give either capacity:T=<value> or --P-db, not both")),
            _ => {}
        }
    } else if snr_t.is_some() {
        return Err(invalid("--P-db applies to the capacity statistic only"));
    }
    let iv = support_interval(spec)?;
    let (default_c, default_interval) = match *spec {
        EnsembleSpec::SpikedWishart { c, .. } | EnsembleSpec::NoncentralWishart { c, .. } => (Some(c), (iv.a, iv.b)),
        // The statistic acts on the F eigenvalue x = y / (1 - y).
        EnsembleSpec::NoncentralF { .. } => (None, (iv.a / (1.0 - iv.a), iv.b / (1.0 - iv.b))),
    };
    Ok(arg.build(default_c, default_interval)?)
}

fn model_name(spec: &EnsembleSpec) -> &'static str {
    match spec.model() {
        Model::A => "A",
        Model::B => "B",
        Model::C => "C",
    }
}

fn ratios_of(spec: &EnsembleSpec) -> (Option<f64>, Option<f64>, Option<f64>) {
    match *spec {
        EnsembleSpec::SpikedWishart { c, .. } | EnsembleSpec::NoncentralWishart { c, .. } => (Some(c), None, None),
        EnsembleSpec::NoncentralF { c1, c2, .. } => (None, Some(c1), Some(c2)),
    }
}

#[derive(Debug, Serialize)]
struct ParamsOut {
    model: &'static str,
    c: Option<f64>,
    c1: Option<f64>,
    c2: Option<f64>,
    spike: f64,
    statistic: String,
    n: Option<usize>,
    a: f64,
    b: f64,
    threshold: f64,
    z0: Option<f64>,
    #[serde(rename = "S")]
    s: Option<f64>,
    regime: Regime,
    mu: f64,
    sigma2: f64,
    mu_bar: f64,
    mu_bar_outlier_adjusted: f64,
    predicted_mean: Option<f64>,
    outlier_adjusted_mean: Option<f64>,
}

fn params(a: &ParamsArgs, format: Format, out: Option<&Path>) -> CliResult<()> {
    check_model_flags(&a.model)?;
    let dims = antenna_dims(&a.snr)?;
    let n = a.n.or(dims.map(|d| d.0));
    let ratios = match a.model.model {
        ModelArg::C => Ratios::F(
            a.model.c1.ok_or_else(|| invalid("model C needs --c1"))?,
            a.model.c2.ok_or_else(|| invalid("model C needs --c2"))?,
        ),
        _ => Ratios::Wishart(match (a.model.c, dims) {
            (Some(c), _) => c,
            (None, Some((dn, dm))) => dm as f64 / dn as f64,
            (None, None) => return Err(invalid("--c is required")),
        }),
    };
    let spike = spike_value(&a.model, &a.snr);
    let spec = make_spec(a.model.model, ratios, spike)?;
    let m = a.m.map(|m| m as f64).or(dims.map(|d| d.1 as f64)).or_else(|| {
        let (c, _, _) = ratios_of(&spec);
        Some(c? * n? as f64)
    });
    let t = snr_capacity_t(&a.snr, spike, n, m)?;
    let stat = build_statistic(&a.model, &spec, t)?;

    let geom = spike_geometry(&spec)?;
    // mu, sigma2 and mu_bar do not depend on n; the means only make sense with it.
    let p = clt_params(&spec, &stat, n.unwrap_or(2), &QuadratureConfig::default())?;
    let (c, c1, c2) = ratios_of(&spec);
    let row = ParamsOut {
        model: model_name(&spec),
        c,
        c1,
        c2,
        spike,
        statistic: stat.to_string(),
        n,
        a: geom.interval.a,
        b: geom.interval.b,
        threshold: geom.threshold,
        z0: geom.z0(),
        s: geom.root(),
        regime: p.regime,
        mu: p.mu,
        sigma2: p.sigma2,
        mu_bar: p.mu_bar,
        mu_bar_outlier_adjusted: p.mu_bar_outlier_adjusted(),
        predicted_mean: n.map(|_| p.predicted_mean),
        outlier_adjusted_mean: n.map(|_| p.outlier_adjusted_mean),
    };
    emit(&[row], true, format, out)
}

#[derive(Debug, Serialize)]
struct SimulateOut<'a> {
    model: &'static str,
    c: Option<f64>,
    c1: Option<f64>,
    c2: Option<f64>,
    spike: f64,
    statistic: String,
    n: usize,
    m: Option<usize>,
    m1: Option<usize>,
    m2: Option<usize>,
    seed: u64,
    #[serde(flatten)]
    report: &'a EmpiricalReport,
}

/// Flat summary row for CSV output; the histogram goes to `--hist-csv`.
#[derive(Debug, Serialize)]
struct SimulateRow {
    model: &'static str,
    spike: f64,
    statistic: String,
    n: usize,
    trials: usize,
    discarded: usize,
    seed: u64,
    sample_mean: f64,
    sample_var: f64,
    reference_mean: f64,
    reference_std: f64,
    ks_distance: f64,
    mean_zscore: f64,
    comparison_mean_used: String,
    mu: f64,
    sigma2: f64,
    mu_bar: f64,
    predicted_mean: f64,
    outlier_adjusted_mean: f64,
    regime: Regime,
}

#[derive(Debug, Serialize)]
struct HistRow {
    bin_left: f64,
    bin_right: f64,
    count: u64,
    density: f64,
}

fn matches_ratio(flag: Option<f64>, ratio: f64, name: &str) -> CliResult<()> {
    match flag {
        Some(v) if (v - ratio).abs() > 1e-12 * ratio.max(1.0) => Err(invalid(format!(
            "--{name} {v} disagrees with the dimension ratio {ratio}"
        ))),
        _ => Ok(()),
    }
}

fn simulate(a: &SimulateArgs, format: Format, out: Option<&Path>) -> CliResult<()> {
    check_model_flags(&a.model)?;
    let dims = antenna_dims(&a.snr)?;
    let n = a.n.or(dims.map(|d| d.0)).ok_or_else(|| invalid("--n is required"))?;
    let spike = spike_value(&a.model, &a.snr);
    let (cfg, ratios) = match a.model.model {
        ModelArg::C => {
            if a.m.is_some() {
                return Err(invalid("model C takes --m1 and --m2, not --m"));
            }
            let m1 = a.m1.ok_or_else(|| invalid("model C needs --m1"))?;
            let m2 = a.m2.ok_or_else(|| invalid("model C needs --m2"))?;
            let (c1, c2) = (m1 as f64 / n as f64, m2 as f64 / n as f64);
            matches_ratio(a.model.c1, c1, "c1")?;
            matches_ratio(a.model.c2, c2, "c2")?;
            (SampleConfig::f_matrix(n, m1, m2, a.trials, a.seed), Ratios::F(c1, c2))
        }
        _ => {
            if a.m1.is_some() || a.m2.is_some() {
                return Err(invalid("--m1/--m2 apply to model C only; use --m"));
            }
            let m = a.m.or(dims.map(|d| d.1)).ok_or_else(|| invalid("--m is required"))?;
            let c = m as f64 / n as f64;
            matches_ratio(a.model.c, c, "c")?;
            (SampleConfig::wishart(n, m, a.trials, a.seed), Ratios::Wishart(c))
        }
    };
    let spec = make_spec(a.model.model, ratios, spike)?;
    let m_dof = match cfg.dims {
        spiked_clt::monte_carlo::Dims::Wishart { m } => Some(m as f64),
        _ => None,
    };
    let t = snr_capacity_t(&a.snr, spike, Some(n), m_dof)?;
    let stat = build_statistic(&a.model, &spec, t)?;
    let report = run_experiment(&spec, &stat, &cfg)?;

    if let Some(path) = &a.hist_csv {
        let rows: Vec<HistRow> = report
            .histogram
            .rows()
            .into_iter()
            .map(|(bin_left, bin_right, count, density)| HistRow {
                bin_left,
                bin_right,
                count,
                density,
            })
            .collect();
        output::csv(&rows, Some(path))?;
    }

    let (c, c1, c2) = ratios_of(&spec);
    let (m, m1, m2) = match cfg.dims {
        spiked_clt::monte_carlo::Dims::Wishart { m } => (Some(m), None, None),
        spiked_clt::monte_carlo::Dims::FMatrix { m1, m2 } => (None, Some(m1), Some(m2)),
    };
    match format {
        Format::Json => output::json(
            &SimulateOut {
                model: model_name(&spec),
                c,
                c1,
                c2,
                spike,
                statistic: stat.to_string(),
                n,
                m,
                m1,
                m2,
                seed: a.seed,
                report: &report,
            },
            out,
        ),
        Format::Csv => {
            let p = &report.params;
            let row = SimulateRow {
                model: model_name(&spec),
                spike,
                statistic: stat.to_string(),
                n,
                trials: report.trials,
                discarded: report.discarded,
                seed: a.seed,
                sample_mean: report.sample_mean,
                sample_var: report.sample_var,
                reference_mean: report.reference_mean,
                reference_std: report.reference_std,
                ks_distance: report.ks_distance,
                mean_zscore: report.mean_zscore,
                comparison_mean_used: serde_json::to_value(report.comparison_mean_used)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_string))
                    .unwrap_or_default(),
                mu: p.mu,
                sigma2: p.sigma2,
                mu_bar: p.mu_bar,
                predicted_mean: p.predicted_mean,
                outlier_adjusted_mean: p.outlier_adjusted_mean,
                regime: p.regime,
            };
            output::csv(&[row], out)
        }
    }
}

#[derive(Debug, Serialize)]
struct PowerRow {
    alpha: f64,
    nu: f64,
    c1: f64,
    c2: f64,
    beta: f64,
}

fn parse_grid(s: &str) -> CliResult<Vec<f64>> {
    let num = |t: &str| -> CliResult<f64> {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| invalid(format!("--nu-grid: `{t}` is not a finite number")))
    };
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [start, stop, step] => {
            let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
            if !(step > 0.0) || stop < start {
                return Err(invalid("--nu-grid start:stop:step needs step > 0 and stop >= start"));
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            if count > 1_000_000 {
                return Err(invalid("--nu-grid has more than a million points"));
            }
            Ok((0..count).map(|i| start + step * i as f64).collect())
        }
        [list] => list.split(',').map(num).collect(),
        _ => Err(invalid("--nu-grid must be start:stop:step or a comma-separated list")),
    }
}

fn power(a: &PowerArgs, format: Format, out: Option<&Path>) -> CliResult<()> {
    let grid = match (&a.nu, &a.nu_grid) {
        (Some(nu), None) => vec![*nu],
        (None, Some(g)) => parse_grid(g)?,
        _ => return Err(invalid("give --nu or --nu-grid")),
    };
    let rows = grid
        .into_iter()
        .map(|nu| {
            let beta = test_power(&TestPowerInput {
                alpha: a.alpha,
                nu,
                c1: a.c1,
                c2: a.c2,
            })?;
            Ok(PowerRow {
                alpha: a.alpha,
                nu,
                c1: a.c1,
                c2: a.c2,
                beta,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    emit(&rows, false, format, out)
}

#[derive(Debug, Serialize)]
struct IdentityRow {
    id: &'static str,
    draws: usize,
    max_residual: f64,
    pass: bool,
}

fn identities(a: &IdentitiesArgs, format: Format, out: Option<&Path>) -> CliResult<()> {
    if a.draws == 0 {
        return Err(invalid("--draws must be at least 1"));
    }
    let rows = IDENTITIES
        .par_iter()
        .enumerate()
        .map(|(k, &id)| {
            let mut rng = trial_rng(a.seed, k as u64);
            let mut worst = 0.0f64;
            for _ in 0..a.draws {
                let p = random_identity_params(id, &mut rng)?;
                let r = verify_identity(id, &p)?.residual;
                // NaN must not hide behind max().
                worst = if r.is_nan() { f64::NAN } else { worst.max(r) };
            }
            Ok(IdentityRow {
                id,
                draws: a.draws,
                max_residual: worst,
                pass: worst < IDENTITY_TOL,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    emit(&rows, false, format, out)?;
    let failed: Vec<&str> = rows.iter().filter(|r| !r.pass).map(|r| r.id).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Numerical(format!(
            "identity residuals too large: {}",
            failed.join(", ")
        )))
    }
}

#[derive(Debug, Serialize)]
struct CheckRow {
    check: String,
    discrepancy: f64,
    tolerance: f64,
    pass: bool,
}

impl CheckRow {
    fn new(check: String, discrepancy: f64, tolerance: f64) -> Self {
        CheckRow {
            check,
            discrepancy,
            tolerance,
            pass: discrepancy <= tolerance,
        }
    }
}

type Check = Box<dyn Fn() -> spiked_clt::Result<CheckRow> + Send + Sync>;

fn selftest_checks() -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();
    let cfg = QuadratureConfig::default();

    // Series variance against the principal-value double integral.
    let stats = |c: f64| -> Vec<LinearStatistic> {
        vec![
            LinearStatistic::linear(),
            LinearStatistic::polynomial(vec![0.0, 0.0, 1.0]).expect("valid"),
            LinearStatistic::lrt(c).expect("valid"),
            LinearStatistic::capacity(1.0).expect("valid"),
            LinearStatistic::log1p(),
        ]
    };
    let mut specs: Vec<EnsembleSpec> = [1.5, 2.0, 5.0]
        .iter()
        .map(|&c| EnsembleSpec::model_a(c, 0.0).expect("valid"))
        .collect();
    specs.push(EnsembleSpec::model_c(2.0, 2.0, 0.0).expect("valid"));
    for spec in specs {
        let ratio = match spec {
            EnsembleSpec::SpikedWishart { c, .. } => c,
            _ => 2.0,
        };
        for stat in stats(ratio) {
            checks.push(Box::new(move || {
                let series = bulk_series(&spec, &stat, &cfg)?;
                let iv = support_interval(&spec)?;
                let v = variance_from_series(&series);
                let oracle = match spec.model() {
                    Model::C => variance_pv_oracle(&FMatrixComposition(&stat), &iv, &cfg)?,
                    _ => variance_pv_oracle(&stat, &iv, &cfg)?,
                };
                Ok(CheckRow::new(
                    format!("variance series vs oracle: {} {stat}", describe(&spec)),
                    (v - oracle).abs(),
                    1e-6 * (1.0 + v.abs()),
                ))
            }));
        }
    }

    // Spike correction: contour integral vs Chebyshev series below the threshold.
    for spec in [
        EnsembleSpec::model_a(2.0, 0.3),
        EnsembleSpec::model_b(2.0, 0.5),
        EnsembleSpec::model_c(2.0, 2.0, 0.5),
    ] {
        let spec = spec.expect("valid");
        for stat in [LinearStatistic::linear(), LinearStatistic::log1p()] {
            checks.push(Box::new(move || {
                let series = bulk_series(&spec, &stat, &cfg)?;
                let geom = spike_geometry(&spec)?;
                let integral = spike_correction(&series, &geom, &cfg)?;
                let sum = spike_correction_series(&series, &geom)
                    .ok_or_else(|| spiked_clt::Error::Numerical("series does not converge".into()))?;
                Ok(CheckRow::new(
                    format!("spike correction integral vs series: {} {stat}", describe(&spec)),
                    (integral - sum).abs(),
                    1e-8 * (1.0 + integral.abs()),
                ))
            }));
        }
    }

    // Zero spike: no correction.
    for spec in [
        EnsembleSpec::model_a(2.0, 0.0),
        EnsembleSpec::model_b(3.0, 0.0),
        EnsembleSpec::model_c(2.0, 3.0, 0.0),
    ] {
        let spec = spec.expect("valid");
        checks.push(Box::new(move || {
            let p = clt_params(&spec, &LinearStatistic::log1p(), 10, &cfg)?;
            Ok(CheckRow::new(
                format!("zero spike correction: {}", describe(&spec)),
                p.mu_bar.abs(),
                1e-12,
            ))
        }));
    }

    // Closed forms against the generic engine.
    checks.push(Box::new(move || {
        let cf = lrt_params(2.0, 1.0)?;
        let p = clt_params(&EnsembleSpec::model_a(2.0, 1.0)?, &LinearStatistic::lrt(2.0)?, 10, &cfg)?;
        let d = (cf.mu - p.mu)
            .abs()
            .max((cf.sigma2 - p.sigma2).abs())
            .max((cf.mu_bar - p.mu_bar_outlier_adjusted()).abs());
        Ok(CheckRow::new("closed form vs engine: lrt c=2 delta=1".into(), d, 1e-8))
    }));
    checks.push(Box::new(move || {
        let cf = capacity_params(2.0, 0.5, 1.0)?;
        let p = clt_params(
            &EnsembleSpec::model_b(2.0, 0.5)?,
            &LinearStatistic::capacity(1.0)?,
            10,
            &cfg,
        )?;
        let d = (cf.mu - p.mu)
            .abs()
            .max((cf.sigma2 - p.sigma2).abs())
            .max((cf.mu_bar - p.mu_bar_outlier_adjusted()).abs());
        Ok(CheckRow::new(
            "closed form vs engine: capacity c=2 nu=0.5 T=1".into(),
            d,
            1e-8,
        ))
    }));
    checks.push(Box::new(move || {
        let cf = multisample_params(2.0, 2.0, 4.0)?;
        let p = clt_params(
            &EnsembleSpec::model_c(2.0, 2.0, 4.0)?,
            &LinearStatistic::log1p(),
            10,
            &cfg,
        )?;
        let d = (cf.mu - p.mu)
            .abs()
            .max((cf.sigma2 - p.sigma2).abs())
            .max((cf.mu_bar - p.mu_bar_outlier_adjusted()).abs());
        Ok(CheckRow::new(
            "closed form vs engine: log1p c1=c2=2 nu=4".into(),
            d,
            1e-8,
        ))
    }));

    // Spike-kernel integral against the logarithmic form.
    for degree in 1..=6 {
        for z in [2.5, 4.0, 20.0] {
            checks.push(Box::new(move || {
                let mut coeffs = vec![0.0; degree + 1];
                coeffs[degree] = 1.0;
                let f = LinearStatistic::polynomial(coeffs)?;
                let iv = spiked_clt::SupportInterval::new(1.0, 2.0)?;
                let (s1, s2) = log_kernel_equivalence(&f, &iv, z, &cfg)?;
                Ok(CheckRow::new(
                    format!("log kernel equivalence: x^{degree} on [1,2], z={z}"),
                    (s1 - s2).abs(),
                    1e-8 * (1.0 + s1.abs()),
                ))
            }));
        }
    }
    checks
}

fn describe(spec: &EnsembleSpec) -> String {
    match *spec {
        EnsembleSpec::SpikedWishart { c, delta } => format!("A c={c} delta={delta}"),
        EnsembleSpec::NoncentralWishart { c, nu } => format!("B c={c} nu={nu}"),
        EnsembleSpec::NoncentralF { c1, c2, nu } => format!("C c1={c1} c2={c2} nu={nu}"),
    }
}

fn selftest(format: Format, out: Option<&Path>) -> CliResult<()> {
    let rows = selftest_checks()
        .par_iter()
        .map(|check| check())
        .collect::<spiked_clt::Result<Vec<_>>>()?;
    emit(&rows, false, format, out)?;
    let failed = rows.iter().filter(|r| !r.pass).count();
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::Numerical(format!("{failed} self-test checks failed")))
    }
}
