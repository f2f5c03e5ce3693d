//! Quantized enveloping algebras of ranks 1 and 2 at desk scale.
//!
//! The presentation is the Drinfeld–Jimbo one over the exact coefficient
//! field Q(q, k): generators `e_i`, `f_i`, `k_i^{±1}` per simple root, with
//! all Cartan dependence carried by rational-function coefficients in the
//! `k_i` and the deformation variable `q`.  Products are kept in the normal
//! form E·(Cartan coefficient)·F, where E-words and F-words are weakly
//! increasing sequences over a split-adapted PBW letter alphabet (strict
//! nilradical letters first, Levi letters last), so the parabolic
//! Harish-Chandra projection is literally "keep the terms whose strict
//! letters are absent".
//!
//! Only the simply-laced desk instances are wired: A1, A1xA1, and A2 (whose
//! alphabet adds the quantum root vector of the highest root).  The
//! non-simply-laced rank-2 types would need a longer alphabet and rescaled
//! commutators; [`QAlgebra::build`] refuses them.
//!
//! Series semantics: `q = exp(hbar/2)`, and evaluating a character chi sends
//! `k_i` to `exp(chi(h_i)/2)`.  Truncated-series evaluations substitute
//! exact exponential series for `q` and the `k_i`, so every "modulo
//! hbar^N" statement is checked with exact rational series arithmetic.
//!
//! Module layout:
//!
//! * [`engine`] — the letter alphabet, rewriting tables, normal-ordering
//!   product, and the sparse multi-slot element type [`QElem`].
//! * [`hopf`] — coproduct, antipode, counit, and character evaluation as
//!   slot operations, plus the relative Harish-Chandra projection.
//! * [`coideal`] — the one-sided coideal map and membership predicate.
//! * [`shapovalov`] — weight-space pairing matrices, their determinants,
//!   and the determinant factorization cross-check.
//! * [`twist`] — the dynamical-twist tower: the inversion element, the
//!   twist itself, the twist-equation residual, the composition check, and
//!   character evaluation of the reduced twist.

pub mod coideal;
pub mod engine;
pub mod hopf;
pub mod shapovalov;
pub mod twist;

pub use coideal::{coideal_alpha, coideal_beta, coideal_member};
pub use engine::{Gen, QAlgebra, QElem, QMode};
pub use hopf::{
    antipode_slot, coproduct_slot, counit_slot, eval_cartan_slot, hc_h, hc_slot, merge_slots,
    promote,
};
pub use shapovalov::{dck_check, kostant_partitions, shapovalov, DckReport, ShapovalovData};

use crate::scalar::ScalarError;

/// Errors surfaced by the quantum layer.
#[derive(Clone, Debug, PartialEq)]
pub enum QuantumError {
    /// The requested algebra is outside the wired desk-scale instances.
    UnsupportedRank(String),
    /// An argument was required to lie in a parabolic subalgebra but does not.
    NotInParabolic(String),
    /// A weight-space pairing matrix failed to invert over the localized ring.
    SingularPairing(String),
    /// A series computation needed more negative powers than the floor allows.
    TruncationOverflow(String),
    /// A character sits on the singular locus of the relevant localization.
    NotRegular(String),
    /// An underlying scalar-domain failure (pole hit, unbound variable, ...).
    Scalar(ScalarError),
}

impl From<ScalarError> for QuantumError {
    fn from(e: ScalarError) -> Self {
        QuantumError::Scalar(e)
    }
}

impl std::fmt::Display for QuantumError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QuantumError::UnsupportedRank(m) => write!(f, "unsupported rank: {m}"),
            QuantumError::NotInParabolic(m) => write!(f, "not in the parabolic: {m}"),
            QuantumError::SingularPairing(m) => write!(f, "singular pairing: {m}"),
            QuantumError::TruncationOverflow(m) => write!(f, "truncation overflow: {m}"),
            QuantumError::NotRegular(m) => write!(f, "character not regular: {m}"),
            QuantumError::Scalar(e) => write!(f, "scalar error: {e}"),
        }
    }
}

impl std::error::Error for QuantumError {}
