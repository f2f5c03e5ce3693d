//! Multivariate rational functions in canonical reduced form.

use super::poly::Poly;
use super::{Rat, Scalar, ScalarError, Vars};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A quotient of polynomials, always stored with numerator and denominator
/// coprime and the denominator monic under the fixed monomial order, so two
/// equal functions have equal representations.
#[derive(Clone, PartialEq)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.num_terms() == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        let (num, den) = Poly::align(&num, &den);
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.num_terms() == 0 {
            let vars = num.vars().clone();
            return RatFun {
                num,
                den: Poly::constant_in(&vars, Rat::one()),
            };
        }
        let g = Poly::gcd(&num, &den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.lead().expect("nonzero denominator").1.clone();
        if !lc.is_one() {
            let inv = lc.try_inv().expect("nonzero leading coefficient");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFun { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        let one = Poly::constant_in(p.vars(), Rat::one());
        RatFun { num: p, den: one }
    }

    pub fn constant(r: Rat) -> Self {
        Self::from_poly(Poly::constant_in(&Vars::empty(), r))
    }

    /// The variable `name` inside the context `vars`.
    pub fn var_in(vars: &Vars, name: &str) -> Self {
        Self::from_poly(Poly::var_in(vars, name))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(n * d.try_inv().expect("nonzero denominator"))
    }

    pub fn derivative(&self, var: &str) -> RatFun {
        let n = self.num.derivative(var) * self.den.clone()
            - self.num.clone() * self.den.derivative(var);
        let d = self.den.clone() * self.den.clone();
        Self::reduce(n, d)
    }

    /// Full evaluation at rational points; a vanishing denominator is a pole.
    pub fn eval_rat(&self, binds: &HashMap<String, Rat>) -> Result<Rat, ScalarError> {
        let d = self.den.eval_rat(binds)?;
        if d.is_zero() {
            return Err(ScalarError::PoleHit);
        }
        let n = self.num.eval_rat(binds)?;
        Ok(n * d.try_inv().expect("checked nonzero"))
    }

    /// Evaluation in any scalar domain, values indexed by this context's
    /// variable order.
    pub fn eval_generic<S: Scalar>(&self, vals: &[S]) -> Result<S, ScalarError> {
        let d = self.den.eval_generic(vals);
        let dinv = d.try_inv().map_err(|e| match e {
            ScalarError::DivisionByZero => ScalarError::PoleHit,
            other => other,
        })?;
        Ok(self.num.eval_generic(vals) * dinv)
    }

    /// Substitutes rational functions for a subset of variables.
    pub fn substitute(&self, binds: &HashMap<String, RatFun>) -> Result<RatFun, ScalarError> {
        // Clear denominators: for f = n/d substitute termwise over a common
        // denominator built from the bound values.
        let mut poly_binds_num: HashMap<String, Poly> = HashMap::new();
        let mut poly_binds_den: HashMap<String, Poly> = HashMap::new();
        for (k, v) in binds {
            poly_binds_num.insert(k.clone(), v.num.clone());
            poly_binds_den.insert(k.clone(), v.den.clone());
        }
        let sub_poly = |p: &Poly| -> RatFun {
            // p(x_i -> n_i / d_i) = sum_m c_m prod n_i^{e_i} d_i^{E_i - e_i} / prod d_i^{E_i}
            // with E_i the maximal exponent; assembled termwise.
            let vars = p.vars().clone();
            let maxdeg: Vec<u32> = (0..vars.len()).map(|i| p.degree_in(i)).collect();
            let mut ctx = vars.clone();
            for b in binds.values() {
                ctx = Poly::align(&Poly::zero_in(&ctx), &Poly::zero_in(b.num.vars())).0.vars().clone();
                ctx = Poly::align(&Poly::zero_in(&ctx), &Poly::zero_in(b.den.vars())).0.vars().clone();
            }
            let num_of = |name: &str| -> Option<&Poly> { poly_binds_num.get(name) };
            let mut total = Poly::zero_in(&ctx);
            for (m, c) in p.terms() {
                let mut term = Poly::constant_in(&ctx, c.clone());
                for (i, &e) in m.iter().enumerate() {
                    let name = &vars.names()[i];
                    match num_of(name) {
                        Some(n) => {
                            let d = &poly_binds_den[name];
                            term = term
                                * n.into_context(&ctx).pow(e)
                                * d.into_context(&ctx).pow(maxdeg[i] - e);
                        }
                        None => {
                            term = term * Poly::var_in(&ctx, name).pow(e);
                        }
                    }
                }
                total = total + term;
            }
            let mut den = Poly::constant_in(&ctx, Rat::one());
            for (i, name) in vars.names().iter().enumerate() {
                if let Some(d) = poly_binds_den.get(name) {
                    den = den * d.into_context(&ctx).pow(maxdeg[i]);
                }
            }
            RatFun::reduce(total, den)
        };
        let n = sub_poly(&self.num);
        let d = sub_poly(&self.den);
        if d.num.num_terms() == 0 {
            return Err(ScalarError::PoleHit);
        }
        Ok(n * RatFun { num: d.den, den: d.num })
    }
}

impl Scalar for RatFun {
    fn zero() -> Self {
        Self::constant(Rat::zero())
    }

    fn one() -> Self {
        Self::constant(Rat::one())
    }

    fn from_rat(r: &Rat) -> Self {
        Self::constant(r.clone())
    }

    fn is_zero(&self) -> bool {
        self.num.num_terms() == 0
    }

    fn try_inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, rhs: RatFun) -> RatFun {
        let n = self.num.clone() * rhs.den.clone() + rhs.num.clone() * self.den.clone();
        let d = self.den * rhs.den;
        Self::reduce(n, d)
    }
}

impl Sub for RatFun {
    type Output = RatFun;
    fn sub(self, rhs: RatFun) -> RatFun {
        self + (-rhs)
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, rhs: RatFun) -> RatFun {
        Self::reduce(self.num * rhs.num, self.den * rhs.den)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            let c = self.den.constant_value().expect("constant denominator");
            if c.is_one() {
                return write!(f, "{}", self.num);
            }
        }
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for RatFun {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RatFun", 3)?;
        st.serialize_field("vars", self.num.vars().names())?;
        st.serialize_field("num", &self.num)?;
        st.serialize_field("den", &self.den)?;
        st.end()
    }
}
