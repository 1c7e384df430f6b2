use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{Complex, DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::ensemble::{EnsembleSpec, Model};
use crate::error::{ensure, Error, Result};
use crate::statistic::{evaluate_statistic, LinearStatistic};

type C64 = Complex<f64>;

const RESIDUAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Dims {
    /// `n x m` Gaussian factor (spiked and non-central Wishart).
    Wishart { m: usize },
    /// Numerator and denominator degrees of freedom of the F matrix.
    FMatrix { m1: usize, m2: usize },
}

/// Finite-size simulation settings. The spike comes from the [`EnsembleSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SampleConfig {
    pub n: usize,
    pub dims: Dims,
    pub trials: usize,
    pub seed: u64,
}

impl SampleConfig {
    pub fn wishart(n: usize, m: usize, trials: usize, seed: u64) -> Self {
        SampleConfig {
            n,
            dims: Dims::Wishart { m },
            trials,
            seed,
        }
    }

    pub fn f_matrix(n: usize, m1: usize, m2: usize, trials: usize, seed: u64) -> Self {
        SampleConfig {
            n,
            dims: Dims::FMatrix { m1, m2 },
            trials,
            seed,
        }
    }

    pub fn validate(&self, spec: &EnsembleSpec) -> Result<()> {
        ensure(self.n >= 1, "n", self.n as f64, "dimension must be positive")?;
        ensure(
            self.trials >= 1,
            "trials",
            self.trials as f64,
            "need at least one trial",
        )?;
        match (spec.model(), self.dims) {
            (Model::A | Model::B, Dims::Wishart { m }) => ensure(m >= self.n, "m", m as f64, "need m >= n"),
            (Model::C, Dims::FMatrix { m1, m2 }) => {
                ensure(m1 > self.n, "m1", m1 as f64, "need m1 > n")?;
                ensure(m2 > self.n, "m2", m2 as f64, "need m2 > n")
            }
            (Model::C, _) => Err(Error::InvalidParameter {
                name: "dims",
                value: f64::NAN,
                reason: "the F matrix needs m1 and m2",
            }),
            _ => Err(Error::InvalidParameter {
                name: "dims",
                value: f64::NAN,
                reason: "Wishart models need a single m",
            }),
        }
    }

    /// The ensemble with its ratios set to this configuration's `m/n`.
    pub fn finite_spec(&self, spec: &EnsembleSpec) -> Result<EnsembleSpec> {
        self.validate(spec)?;
        let n = self.n as f64;
        match (*spec, self.dims) {
            (EnsembleSpec::SpikedWishart { delta, .. }, Dims::Wishart { m }) => {
                EnsembleSpec::model_a(m as f64 / n, delta)
            }
            (EnsembleSpec::NoncentralWishart { nu, .. }, Dims::Wishart { m }) => {
                EnsembleSpec::model_b(m as f64 / n, nu)
            }
            (EnsembleSpec::NoncentralF { nu, .. }, Dims::FMatrix { m1, m2 }) => {
                EnsembleSpec::model_c(m1 as f64 / n, m2 as f64 / n, nu)
            }
            _ => unreachable!("validated above"),
        }
    }
}

/// Per-trial generator: the stream depends only on `(seed, trial_index)`.
pub fn trial_rng(seed: u64, trial_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial_index);
    rng
}

/// `rows x cols` matrix of standard complex Gaussians, `E|g|^2 = 1`.
fn complex_gaussian<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> DMatrix<C64> {
    DMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re * FRAC_1_SQRT_2, im * FRAC_1_SQRT_2)
    })
}

/// Ascending eigenvalues of a Hermitian matrix, rejecting decompositions whose
/// residual `|W v - lambda v|` exceeds `1e-8 |W|`.
fn hermitian_eigenvalues(w: DMatrix<C64>) -> Result<Vec<f64>> {
    let eig = SymmetricEigen::new(w.clone());
    let norm = eig.eigenvalues.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    for (j, &lambda) in eig.eigenvalues.iter().enumerate() {
        let v = eig.eigenvectors.column(j);
        let r = (&w * v - v * C64::new(lambda, 0.0)).norm();
        if !(r <= RESIDUAL_TOL * norm.max(f64::MIN_POSITIVE)) {
            return Err(Error::Numerical(format!(
                "eigensolver residual {r:e} exceeds tolerance for eigenvalue {lambda}"
            )));
        }
    }
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Draws one realisation and returns its `n` eigenvalues in ascending order.
pub fn sample_ensemble(spec: &EnsembleSpec, cfg: &SampleConfig, trial_index: usize) -> Result<Vec<f64>> {
    cfg.validate(spec)?;
    ensure(
        trial_index < cfg.trials,
        "trial_index",
        trial_index as f64,
        "must be below the trial count",
    )?;
    let mut rng = trial_rng(cfg.seed, trial_index as u64);
    let n = cfg.n;
    match (*spec, cfg.dims) {
        (EnsembleSpec::SpikedWishart { delta, .. }, Dims::Wishart { m }) => {
            let mut g = complex_gaussian(&mut rng, n, m);
            // Sigma^{1/2} = diag(sqrt(1 + delta), 1, ..., 1)
            let s = (1.0 + delta).sqrt();
            g.row_mut(0).iter_mut().for_each(|v| *v *= s);
            hermitian_eigenvalues(&g * g.adjoint())
        }
        (EnsembleSpec::NoncentralWishart { nu, .. }, Dims::Wishart { m }) => {
            let mut g = complex_gaussian(&mut rng, n, m);
            // M = sqrt(n nu) e1 e1^T, so M M^dag has the single eigenvalue n nu.
            g[(0, 0)] += C64::new((n as f64 * nu).sqrt(), 0.0);
            hermitian_eigenvalues(&g * g.adjoint())
        }
        (EnsembleSpec::NoncentralF { nu, .. }, Dims::FMatrix { m1, m2 }) => {
            let mut g1 = complex_gaussian(&mut rng, n, m1);
            g1[(0, 0)] += C64::new((n as f64 * nu).sqrt(), 0.0);
            let g2 = complex_gaussian(&mut rng, n, m2);
            let w1 = &g1 * g1.adjoint();
            let w2 = &g2 * g2.adjoint();
            // Eigenvalues of W1 W2^{-1} via the pencil: L^{-1} W1 L^{-dag} with W2 = L L^dag.
            let chol = w2
                .cholesky()
                .ok_or_else(|| Error::Numerical("denominator Wishart matrix is not positive definite".into()))?;
            let l = chol.l();
            let y = l
                .solve_lower_triangular(&w1)
                .ok_or_else(|| Error::Numerical("singular Cholesky factor".into()))?;
            let a = l
                .solve_lower_triangular(&y.adjoint())
                .ok_or_else(|| Error::Numerical("singular Cholesky factor".into()))?;
            let a = (&a + a.adjoint()) * C64::new(0.5, 0.0);
            hermitian_eigenvalues(a)
        }
        _ => unreachable!("validated above"),
    }
}

/// `sum_k f(x_k / n)` for the Wishart models, `sum_k f(x_k)` for the F matrix.
pub fn empirical_statistic(eigs: &[f64], stat: &LinearStatistic, spec: &EnsembleSpec, n: usize) -> Result<f64> {
    let scale = match spec.model() {
        Model::A | Model::B => 1.0 / n as f64,
        Model::C => 1.0,
    };
    let values = eigs
        .iter()
        .map(|&x| evaluate_statistic(stat, x * scale))
        .collect::<Result<Vec<f64>>>()?;
    Ok(super::pairwise_sum(&values))
}
