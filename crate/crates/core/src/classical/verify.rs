//! Residual drivers for the dynamical identity and the restriction functor
//! between Levi splittings.
//!
//! Exact mode works on the symbolic torus: the full identity for an abelian
//! Levi, and its component transverse to the Levi for a nonabelian one,
//! whose mixed components involve off-torus derivative data and are covered
//! by the numeric mode instead.  Numeric mode works at group points with
//! finite-difference translation operators and reports residual norms.

use crate::liealg::{LeviSplitting, LieAlgebra};
use crate::scalar::{Rat, RatFun, F64};
use crate::tensor::{alt, cyb, invariance_residual, quotient_project, Tensor};

use super::group::{dl_numeric, dress_numeric, lstar_basis, EvalResult, GroupPoint};
use super::torus::{cartan_invariance_residuals, delta_otimes_id, pl_lhs_torus, sigma_torus};
use super::ClassicalError;

/// Outcome of the exact torus check.
pub struct ExactOutcome {
    /// Residual of the identity; zero iff the check passes.
    pub residual: Tensor<RatFun>,
    /// Cartan-direction equivariance residuals.
    pub cartan_equivariance: Vec<Tensor<RatFun>>,
    /// True when the Levi is nonabelian and the residual was projected onto
    /// the transverse component.
    pub transverse_only: bool,
}

impl ExactOutcome {
    pub fn is_zero(&self) -> bool {
        self.residual.is_zero() && self.cartan_equivariance.iter().all(|t| t.is_zero())
    }
}

/// Exact residual of the dynamical identity on the symbolic torus.
pub fn verify_pl_cdybe_exact(
    alg: &LieAlgebra,
    split: &LeviSplitting,
    rho: &Tensor<RatFun>,
    z: &Tensor<Rat>,
) -> Result<ExactOutcome, ClassicalError> {
    let zf: Tensor<RatFun> = z.map_coeffs(|c| RatFun::constant(c.clone()));
    let full = pl_lhs_torus(alg, rho) - zf;
    let nonabelian = !split.levi_pos().is_empty();
    let residual = if nonabelian {
        quotient_project(&full, &split.quotient_mask(alg))
            .map_err(|e| ClassicalError::NumericOnly(e.to_string()))?
    } else {
        full
    };
    Ok(ExactOutcome {
        residual,
        cartan_equivariance: cartan_invariance_residuals(alg, rho),
        transverse_only: nonabelian,
    })
}

/// Numeric residuals at one group point.
#[derive(Debug, Clone)]
pub struct PointOutcome {
    /// Sup-norm of the identity residual.
    pub identity_residual: f64,
    /// Largest equivariance residual over the Levi basis directions.
    pub equivariance_residual: f64,
}

/// Numeric residuals of the dynamical identity at group points, with
/// finite-difference translation operators of the given step.
pub fn verify_pl_cdybe_numeric(
    alg: &LieAlgebra,
    split: &LeviSplitting,
    eval: &dyn Fn(&GroupPoint) -> EvalResult,
    z: &Tensor<F64>,
    pts: &[GroupPoint],
    step: f64,
) -> Result<Vec<PointOutcome>, ClassicalError> {
    let r0 = crate::liealg::standard_structures::<Rat>(alg).r_skew;
    let mut out = Vec::with_capacity(pts.len());
    for pt in pts {
        let rho0 = eval(pt)?;
        let lhs = cyb(alg, &rho0)
            + alt(&dl_numeric(alg, split, eval, pt, step)?)
            + alt(&delta_otimes_id(alg, &r0, &rho0));
        let identity_residual = (lhs - z.clone()).norm_inf();
        let mut equivariance_residual = 0.0f64;
        for (levi_idx, _) in lstar_basis(alg, split) {
            let dress = dress_numeric(alg, split, eval, pt, levi_idx, step)?;
            let a: Vec<F64> = alg.basis_vec(levi_idx);
            let res = invariance_residual(alg, &a, &rho0, &dress)
                .map_err(|e| ClassicalError::NumericOnly(e.to_string()))?;
            equivariance_residual = equivariance_residual.max(res.norm_inf());
        }
        out.push(PointOutcome { identity_residual, equivariance_residual });
    }
    Ok(out)
}

/// Restriction of a torus r-matrix along a chain step: add the canonical
/// r-matrix summed over the given complementary positive roots.
pub fn compose_restrict_torus(
    alg: &LieAlgebra,
    roots: &[usize],
    rho: &Tensor<RatFun>,
) -> Tensor<RatFun> {
    rho.clone() + super::torus::sigma_torus_relative(alg, roots)
}

/// Restriction of a torus r-matrix to a Levi splitting: add the splitting's
/// canonical r-matrix.
pub fn compose_restrict_split_torus(
    alg: &LieAlgebra,
    split: &LeviSplitting,
    rho: &Tensor<RatFun>,
) -> Tensor<RatFun> {
    rho.clone() + sigma_torus(alg, split)
}

/// Numeric restriction at a group point of the smaller dual group: the
/// evaluated r-matrix plus the splitting's canonical r-matrix at the point.
pub fn compose_restrict_group(
    alg: &LieAlgebra,
    split: &LeviSplitting,
    pt: &GroupPoint,
    rho_at_pt: &Tensor<F64>,
) -> Result<Tensor<F64>, ClassicalError> {
    Ok(rho_at_pt.clone() + super::group::sigma_group(alg, split, pt)?)
}
