//! Classical dynamical r-matrices on dual Poisson-Lie groups.
//!
//! A Levi splitting of a semisimple algebra selects a family of base points:
//! symbolic points of the maximal torus, where every object is a tensor over
//! rational functions in the torus coordinates and identities are checked
//! exactly, and numeric group points, pairs of opposite-Borel factors acting
//! through their adjoint matrices, where identities are checked against
//! float tolerances with finite-difference translation operators.
//!
//! [`torus`] holds the closed torus forms and exact residuals, [`group`] the
//! numeric evaluators and difference operators, [`spectral`] the eigenvalue
//! calculus behind the one-parameter families, and [`verify`] the residual
//! drivers and the restriction functor between splittings.

pub mod group;
pub mod spectral;
pub mod torus;
pub mod verify;

pub use group::{
    dense_ad, dl_numeric, dress_numeric, exp_matrix, from_dual_coords, from_torus, left_displace,
    lstar_basis, omega_det, omega_group, random_lstar_point, right_displace, sigma_group,
    split_pair,
    tensor_as_matrix, u_basis, EvalResult, GroupPoint,
};
pub use spectral::{apply_slot1, real_spectrum, rho_bfp, rho_bfp_levi, rho_nu, z_bfp, Spectrum};
pub use torus::{
    cartan_invariance_residuals, delta_otimes_id, dl_torus, eval_ratfun_tensor, omega_torus,
    pl_lhs_torus, sigma_omega_residual, sigma_torus, sigma_torus_relative, t_monomial, torus_vars,
    usual_residual_torus, z_r0,
};
pub use verify::{
    compose_restrict_group, compose_restrict_split_torus, compose_restrict_torus,
    verify_pl_cdybe_exact, verify_pl_cdybe_numeric, ExactOutcome, PointOutcome,
};

/// Errors raised while constructing or checking classical r-matrices.
#[derive(Debug, Clone, thiserror::Error)]
pub enum ClassicalError {
    /// The requested object has no closed symbolic form; it only exists at
    /// numeric base points.
    #[error("operation requires a numeric base point: {0}")]
    NumericOnly(String),
    /// The base point sits on the singular locus of the operator being
    /// inverted.
    #[error("singular base point: {0}")]
    SingularPoint(String),
    /// A coefficient function has a pole at the base point that no joint
    /// cancellation removes.
    #[error("spectral pole at the base point: {0}")]
    SpectralPole(String),
    /// The adjoint spectrum at the base point is not real positive, so the
    /// scalar calculus of the family is undefined there.
    #[error("spectrum is not real positive: {0}")]
    NonRealSpectrum(String),
    /// The adjoint operator at the base point has a defective or oversized
    /// fixed space.
    #[error("base point is not regular semisimple: {0}")]
    NotRegularSemisimple(String),
}
