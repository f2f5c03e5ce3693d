//! Double-precision floats behind the scalar interface.

use super::{Rat, Scalar, ScalarError};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An `f64` scalar. Zero tests are exact; numerical tolerances live at the
/// verification layer, not here.
#[derive(Clone, Copy, PartialEq, serde::Serialize)]
pub struct F64(pub f64);

impl Scalar for F64 {
    fn zero() -> Self {
        F64(0.0)
    }

    fn one() -> Self {
        F64(1.0)
    }

    fn from_rat(r: &Rat) -> Self {
        F64(r.to_f64())
    }

    fn is_zero(&self) -> bool {
        self.0 == 0.0
    }

    fn try_inv(&self) -> Result<Self, ScalarError> {
        if self.0 == 0.0 {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(F64(1.0 / self.0))
        }
    }
}

impl Add for F64 {
    type Output = F64;
    fn add(self, rhs: F64) -> F64 {
        F64(self.0 + rhs.0)
    }
}

impl Sub for F64 {
    type Output = F64;
    fn sub(self, rhs: F64) -> F64 {
        F64(self.0 - rhs.0)
    }
}

impl Mul for F64 {
    type Output = F64;
    fn mul(self, rhs: F64) -> F64 {
        F64(self.0 * rhs.0)
    }
}

impl Neg for F64 {
    type Output = F64;
    fn neg(self) -> F64 {
        F64(-self.0)
    }
}

impl fmt::Display for F64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for F64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
