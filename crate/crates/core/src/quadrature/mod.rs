//! Numerical core: Chebyshev expansion of `f` on the bulk, the mean, variance
//! and spike-correction integrals, and the formula-sheet checks.

mod adaptive;
mod chebyshev;
mod hypergeometric;
mod identities;
mod moments;

pub use adaptive::{integrate, integrate_arcsine, integrate_complex, principal_value_theta, Tolerance};
pub use chebyshev::{chebyshev_coefficients, ChebyshevSeries};
pub use hypergeometric::{
    hyp1f1_asymptotic, hyp1f1_series, hyp2f2_power_offset_term, ln_hyp1f1_asymptotic, ln_hyp1f1_series,
};
pub use identities::{random_identity_params, verify_identity, IdentityCheck, IDENTITIES};
pub use moments::{
    cauchy_moment, log_kernel_equivalence, mean_integral, spike_correction, spike_correction_series,
    variance_from_series, variance_pv_oracle,
};

use serde::Serialize;

use crate::error::{ensure, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureConfig {
    /// Largest Chebyshev sampling order tried before declaring `f` too rough.
    pub max_order: usize,
    /// Relative tolerance for cross-checks between independent evaluations.
    pub rel_tol: f64,
    /// Node count per dimension of the principal-value oracle.
    pub pv_grid: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            max_order: 2048,
            rel_tol: 1e-10,
            pv_grid: 4001,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        ensure(
            self.max_order >= 16,
            "max_order",
            self.max_order as f64,
            "must be at least 16",
        )?;
        ensure(
            self.rel_tol > 0.0 && self.rel_tol.is_finite(),
            "rel_tol",
            self.rel_tol,
            "must be positive",
        )?;
        ensure(
            self.pv_grid >= 16,
            "pv_grid",
            self.pv_grid as f64,
            "must be at least 16",
        )
    }
}
