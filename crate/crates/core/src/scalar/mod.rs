//! Scalar domains: exact rationals, multivariate rational functions,
//! truncated Laurent series, and floats, all behind the [`Scalar`] trait.
//!
//! Every higher layer is generic over [`Scalar`], so the same tensor and
//! r-matrix code runs exactly (rationals, rational functions, series) or
//! numerically (floats). Domains with context (variable sets, precision
//! windows) merge contexts on combination; genuinely incompatible inputs
//! surface as [`ScalarError::DomainMismatch`] at the operation layer.

mod float;
mod poly;
mod rat;
mod ratfun;
mod series;

pub use float::F64;
pub use poly::{Poly, Vars};
pub use rat::Rat;
pub use ratfun::RatFun;
pub use series::TruncSeries;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Errors raised by scalar arithmetic and evaluation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    /// Inverting or dividing by an exact zero.
    #[error("division by zero")]
    DivisionByZero,
    /// Combining values from incompatible scalar domains.
    #[error("mixed scalar domains: {0}")]
    DomainMismatch(String),
    /// A series operation (exp) applied to an argument with a constant or
    /// principal part.
    #[error("series argument has a non-nilpotent part")]
    NonNilpotentInput,
    /// Evaluating a rational function at a zero of its denominator.
    #[error("evaluation hits a pole")]
    PoleHit,
    /// Evaluation with a variable left unbound.
    #[error("unbound variable {0}")]
    UnboundVariable(String),
    /// A series computation needed terms below the truncation floor.
    #[error("series computation exceeded its truncation floor")]
    TruncationOverflow,
}

/// Common interface of all scalar domains.
///
/// Arithmetic is by value; `try_inv` is the only fallible operation. `zero`
/// and `one` are context-free neutral elements that merge with any context.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: &Rat) -> Self;
    fn is_zero(&self) -> bool;
    fn try_inv(&self) -> Result<Self, ScalarError>;

    fn from_int(n: i64) -> Self {
        Self::from_rat(&Rat::from_int(n))
    }

    fn scale(&self, r: &Rat) -> Self {
        self.clone() * Self::from_rat(r)
    }
}
