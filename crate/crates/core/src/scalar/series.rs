//! Truncated Laurent series with honest precision tracking.

use super::{Rat, Scalar, ScalarError};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A truncated Laurent series `sum c_d x^d` over a coefficient domain `C`.
///
/// Coefficients are reliable exactly for degrees `d < prec`; stored keys are
/// always `< prec` and `>= floor`. The floor is the deepest degree the
/// computation is allowed to populate: a product or inverse that would need
/// terms below the combined floor panics, which is the truncation-discipline
/// assertion firing (operation layers validate parameters up front and report
/// [`ScalarError::TruncationOverflow`] instead of computing).
///
/// Exact constants carry `prec = i32::MAX` and merge with any window.
#[derive(Clone, PartialEq)]
pub struct TruncSeries<C: Scalar> {
    floor: i32,
    prec: i32,
    coeffs: BTreeMap<i32, C>,
}

impl<C: Scalar> TruncSeries<C> {
    // ----- constructors -----

    pub fn zero_prec(prec: i32) -> Self {
        TruncSeries { floor: 0, prec, coeffs: BTreeMap::new() }
    }

    pub fn from_terms(floor: i32, prec: i32, terms: impl IntoIterator<Item = (i32, C)>) -> Self {
        let mut s = TruncSeries { floor, prec, coeffs: BTreeMap::new() };
        for (d, c) in terms {
            assert!(d >= floor, "term below floor");
            if d < prec && !c.is_zero() {
                s.add_coeff(d, c);
            }
        }
        s
    }

    pub fn constant(c: C) -> Self {
        Self::from_terms(0, i32::MAX, [(0, c)])
    }

    /// The series variable itself, exact.
    pub fn gen() -> Self {
        Self::from_terms(0, i32::MAX, [(1, C::one())])
    }

    /// The series variable to an integral power, exact (floor adjusts for
    /// negative powers).
    pub fn gen_pow(e: i32) -> Self {
        Self::from_terms(e.min(0), i32::MAX, [(e, C::one())])
    }

    // ----- accessors -----

    pub fn prec(&self) -> i32 {
        self.prec
    }

    pub fn floor(&self) -> i32 {
        self.floor
    }

    pub fn coeff(&self, d: i32) -> C {
        self.coeffs.get(&d).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i32, &C)> {
        self.coeffs.iter()
    }

    /// Lower bound on the valuation: the lowest stored degree, or `prec`
    /// when nothing is stored (zero to precision).
    pub fn val_lower_bound(&self) -> i32 {
        self.coeffs.keys().next().copied().unwrap_or(self.prec)
    }

    fn add_coeff(&mut self, d: i32, c: C) {
        if c.is_zero() || d >= self.prec {
            return;
        }
        assert!(d >= self.floor, "series computation exceeded its truncation floor");
        match self.coeffs.entry(d) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Restricts the reliable window (never widens it).
    pub fn truncate(&self, prec: i32) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        let mut out = self.clone();
        out.prec = prec;
        out.coeffs.retain(|&d, _| d < prec);
        out
    }

    /// Equality of all coefficients below `prec` (both operands must reach it).
    pub fn eq_mod(&self, other: &Self, prec: i32) -> bool {
        assert!(self.prec >= prec && other.prec >= prec, "insufficient precision for comparison");
        let mut keys: Vec<i32> = self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter().filter(|&d| d < prec).all(|d| self.coeff(d) == other.coeff(d))
    }

    pub fn is_zero_mod(&self, prec: i32) -> bool {
        assert!(self.prec >= prec, "insufficient precision for comparison");
        self.coeffs.range(..prec).next().is_none()
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> TruncSeries<D> {
        let mut out = TruncSeries { floor: self.floor, prec: self.prec, coeffs: BTreeMap::new() };
        for (&d, c) in &self.coeffs {
            let v = f(c);
            if !v.is_zero() {
                out.coeffs.insert(d, v);
            }
        }
        out
    }

    fn merged_floor(&self, other: &Self) -> i32 {
        self.floor.min(other.floor)
    }

    // ----- arithmetic -----

    pub fn scale_c(&self, c: &C) -> Self {
        self.map_coeffs(|x| x.clone() * c.clone())
    }

    pub fn mul_pow(&self, e: i32) -> Self {
        // Shift by x^e, exact.
        let mut out = TruncSeries {
            floor: self.floor.min(self.floor + e).min(0.min(e)),
            prec: self.prec.saturating_add(e),
            coeffs: BTreeMap::new(),
        };
        for (&d, c) in &self.coeffs {
            out.coeffs.insert(d + e, c.clone());
        }
        out
    }

    /// Multiplicative inverse; the leading coefficient must be invertible.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        let Some((&v, lead)) = self.coeffs.iter().next() else {
            return Err(ScalarError::DivisionByZero);
        };
        let lead_inv = lead.try_inv()?;
        if self.coeffs.len() > 1 {
            assert!(self.prec < i32::MAX, "inverting a multi-term exact series needs a finite window");
        }
        // Relative window; self = x^v * lead * (1 + u) with val(u) >= 1.
        let rel_prec = (self.prec as i64 - v as i64).min(i32::MAX as i64) as i32;
        let mut u = TruncSeries { floor: 0, prec: rel_prec, coeffs: BTreeMap::new() };
        for (&d, c) in self.coeffs.iter().skip(1) {
            u.add_coeff(d - v, c.clone() * lead_inv.clone());
        }
        // (1 + u)^{-1} = sum (-u)^k.
        let one = TruncSeries::from_terms(0, rel_prec, [(0, C::one())]);
        let mut acc = one.clone();
        let mut pow = one;
        let uval = u.val_lower_bound().max(1);
        let mut k = 1;
        while (k as i64) * (uval as i64) < rel_prec as i64 {
            pow = pow * (-u.clone());
            if pow.coeffs.is_empty() {
                break;
            }
            acc = acc + pow.clone();
            k += 1;
        }
        let shifted = acc.scale_c(&lead_inv).mul_pow(-v);
        let mut out = shifted;
        out.floor = out.floor.min(self.floor).min(-v);
        Ok(out)
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self.clone() * rhs.inv()?)
    }

    /// Exponential of a series with strictly positive valuation.
    pub fn exp(&self) -> Result<Self, ScalarError> {
        if let Some((&v, _)) = self.coeffs.iter().next() {
            if v <= 0 {
                return Err(ScalarError::NonNilpotentInput);
            }
            assert!(self.prec < i32::MAX, "exponentiating an exact series needs a finite window");
        }
        let prec = self.prec;
        let mut acc = TruncSeries::from_terms(0, prec, [(0, C::one())]);
        let mut pow = acc.clone();
        let mut factorial = Rat::one();
        let vb = self.val_lower_bound().max(1);
        let mut k: i64 = 1;
        while k * (vb as i64) < prec as i64 {
            pow = pow * self.clone();
            factorial = factorial * Rat::from_int(k);
            let term = pow.map_coeffs(|c| c.scale(&factorial.try_inv().expect("nonzero factorial")));
            if term.coeffs.is_empty() {
                break;
            }
            acc = acc + term;
            k += 1;
        }
        Ok(acc)
    }

    pub fn pow_i32(&self, e: i32) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = TruncSeries::constant(C::one());
        for _ in 0..e.unsigned_abs() {
            acc = acc * base.clone();
        }
        Ok(acc)
    }

    /// Evaluation at `x = 0`: the constant coefficient. A principal part is a
    /// division by zero; positive-degree terms vanish.
    pub fn eval_at_zero(&self) -> Result<C, ScalarError> {
        if self.coeffs.keys().next().is_some_and(|&d| d < 0) {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self.coeff(0))
    }
}

impl<C: Scalar> Scalar for TruncSeries<C> {
    fn zero() -> Self {
        TruncSeries { floor: 0, prec: i32::MAX, coeffs: BTreeMap::new() }
    }

    fn one() -> Self {
        Self::constant(C::one())
    }

    fn from_rat(r: &Rat) -> Self {
        Self::constant(C::from_rat(r))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn try_inv(&self) -> Result<Self, ScalarError> {
        self.inv()
    }
}

impl<C: Scalar> Add for TruncSeries<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = TruncSeries {
            floor: self.merged_floor(&rhs),
            prec: self.prec.min(rhs.prec),
            coeffs: BTreeMap::new(),
        };
        for (&d, c) in self.coeffs.iter().chain(rhs.coeffs.iter()) {
            out.add_coeff(d, c.clone());
        }
        out
    }
}

impl<C: Scalar> Sub for TruncSeries<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Scalar> Neg for TruncSeries<C> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<C: Scalar> Mul for TruncSeries<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let va = self.val_lower_bound() as i64;
        let vb = rhs.val_lower_bound() as i64;
        let prec = (self.prec as i64 + vb).min(rhs.prec as i64 + va).min(i32::MAX as i64);
        let prec = prec.max(i32::MIN as i64) as i32;
        let mut out = TruncSeries {
            floor: self.merged_floor(&rhs),
            prec,
            coeffs: BTreeMap::new(),
        };
        for (&da, ca) in &self.coeffs {
            for (&db, cb) in &rhs.coeffs {
                out.add_coeff(da + db, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Scalar> fmt::Display for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        } else {
            let mut first = true;
            for (d, c) in &self.coeffs {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                match d {
                    0 => write!(f, "({c:?})")?,
                    1 => write!(f, "({c:?})*h")?,
                    _ => write!(f, "({c:?})*h^{d}")?,
                }
            }
        }
        if self.prec != i32::MAX {
            write!(f, " + O(h^{})", self.prec)?;
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Scalar + Serialize> Serialize for TruncSeries<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TruncSeries", 3)?;
        st.serialize_field("floor", &self.floor)?;
        st.serialize_field("order", &self.prec)?;
        let coeffs: BTreeMap<String, &C> =
            self.coeffs.iter().map(|(d, c)| (d.to_string(), c)).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = TruncSeries<Rat>;

    fn h() -> S {
        S::gen()
    }

    fn c(n: i64, d: i64) -> S {
        S::constant(Rat::new(n, d))
    }

    #[test]
    fn product_window() {
        // (1+h)(1-h) at order 4 = 1 - h^2.
        let a = (c(1, 1) + h()).truncate(4);
        let b = (c(1, 1) - h()).truncate(4);
        let p = a * b;
        assert_eq!(p.prec(), 4);
        assert_eq!(p.coeff(0), Rat::from_int(1));
        assert_eq!(p.coeff(1), Rat::zero());
        assert_eq!(p.coeff(2), Rat::from_int(-1));
        assert_eq!(p.coeff(3), Rat::zero());
    }

    #[test]
    fn exp_identities() {
        let n = 8;
        let e = h().truncate(n).exp().unwrap();
        let em = (-h()).truncate(n).exp().unwrap();
        let prod = e * em;
        assert!(prod.eq_mod(&S::one(), n));
    }

    #[test]
    fn q_minus_q_inverse() {
        // q = e^h: q - q^{-1} at order 5 is 2h + h^3/3.
        let n = 5;
        let q = h().truncate(n).exp().unwrap();
        let diff = q.clone() - q.inv().unwrap();
        let expect = S::from_terms(0, n, [(1, Rat::from_int(2)), (3, Rat::new(1, 3))]);
        assert!(diff.eq_mod(&expect, n));
    }

    #[test]
    fn exp_rejects_constant_terms() {
        assert_eq!((c(1, 1) + h().truncate(6)).exp(), Err(ScalarError::NonNilpotentInput));
        assert_eq!(S::gen_pow(-1).truncate(6).exp(), Err(ScalarError::NonNilpotentInput));
    }

    #[test]
    fn laurent_inverse() {
        // 1/(1 - e^{-h}) has a simple pole at 0; evaluating there divides by zero.
        let n = 6;
        let em = (-h()).truncate(n).exp().unwrap();
        let den = S::one().truncate(n) - em;
        let inv = den.inv().unwrap();
        assert_eq!(inv.val_lower_bound(), -1);
        assert_eq!(inv.coeff(-1), Rat::from_int(1));
        assert_eq!(inv.coeff(0), Rat::new(1, 2));
        assert_eq!(inv.eval_at_zero(), Err(ScalarError::DivisionByZero));
        // The inverse really inverts.
        assert!((inv * den).eq_mod(&S::one(), n - 2));
    }

    #[test]
    fn honest_precision_shrinks() {
        // Multiplying by h^2-valuation data cannot promise degree-(n-1) terms.
        let n = 5;
        let a = h().truncate(n) * h().truncate(n); // val 2, prec n+1 each -> prec n+2? no: min(n+1, n+1)
        let b = a.clone() * S::one().truncate(n);
        assert!(b.prec() >= n);
        // Dividing by val-2 data costs two orders.
        let q = h().truncate(n).try_div(&a).unwrap();
        assert_eq!(q.val_lower_bound(), -1);
    }

    #[test]
    #[should_panic(expected = "floor")]
    fn floor_violation_panics() {
        let deep = S::from_terms(-1, 10, [(-1, Rat::from_int(1))]);
        let _ = deep.clone() * deep; // needs degree -2 < floor -1
    }

    #[test]
    fn zero_to_precision_divides_badly() {
        let z = S::zero_prec(4);
        assert_eq!(z.inv(), Err(ScalarError::DivisionByZero));
    }
}
