//! Sparse multivariate polynomials over the rationals.
//!
//! Monomials are exponent vectors ordered lexicographically in a fixed,
//! name-sorted variable order; combining polynomials over different variable
//! sets merges them by name. Exact division and a primitive-PRS gcd supply
//! what [`super::RatFun`] needs to stay reduced and canonically normalized.

use super::{Rat, Scalar, ScalarError};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// An ordered set of variable names shared by a family of polynomials.
#[derive(Clone, PartialEq, Eq)]
pub struct Vars(Arc<Vec<String>>);

impl Vars {
    /// Variables are kept sorted by name; this is the fixed monomial order
    /// underlying all normalization.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        let mut v: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        v.sort();
        v.dedup();
        Vars(Arc::new(v))
    }

    pub fn empty() -> Self {
        Vars(Arc::new(Vec::new()))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    fn union(&self, other: &Vars) -> Vars {
        if self == other {
            return self.clone();
        }
        let mut v: Vec<String> = self.0.iter().chain(other.0.iter()).cloned().collect();
        v.sort();
        v.dedup();
        Vars(Arc::new(v))
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

pub type Mono = Vec<u32>;

/// A polynomial in the variables of its [`Vars`] context, as a sparse map
/// from exponent vectors to nonzero rational coefficients.
#[derive(Clone)]
pub struct Poly {
    vars: Vars,
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    // ----- constructors -----

    pub fn zero_in(vars: &Vars) -> Self {
        Poly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant_in(vars: &Vars, c: Rat) -> Self {
        let mut p = Poly::zero_in(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    /// The variable `name` as a polynomial; `name` must be in `vars`.
    pub fn var_in(vars: &Vars, name: &str) -> Self {
        let i = vars
            .index_of(name)
            .unwrap_or_else(|| panic!("variable {name} not in context {:?}", vars));
        let mut mono = vec![0u32; vars.len()];
        mono[i] = 1;
        let mut p = Poly::zero_in(vars);
        p.terms.insert(mono, Rat::one());
        p
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Mono, Rat)>) -> Self {
        let mut p = Poly::zero_in(vars);
        for (m, c) in terms {
            assert_eq!(m.len(), vars.len(), "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    // ----- basic accessors -----

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            Some(Rat::zero())
        } else if self.is_constant() {
            Some(self.terms.values().next().unwrap().clone())
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Leading (lex-greatest) monomial and coefficient; `None` for zero.
    pub fn lead(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m[var]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, mono: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
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

    // ----- context alignment -----

    /// Reinterprets in a superset context; panics if a used variable is absent.
    pub fn into_context(&self, vars: &Vars) -> Poly {
        if &self.vars == vars {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| {
                vars.index_of(n)
                    .unwrap_or_else(|| panic!("variable {n} missing from target context"))
            })
            .collect();
        let mut out = Poly::zero_in(vars);
        for (m, c) in &self.terms {
            let mut mono = vec![0u32; vars.len()];
            for (i, &e) in m.iter().enumerate() {
                mono[map[i]] = e;
            }
            out.terms.insert(mono, c.clone());
        }
        out
    }

    pub fn align(a: &Poly, b: &Poly) -> (Poly, Poly) {
        if a.vars == b.vars {
            (a.clone(), b.clone())
        } else {
            let v = a.vars.union(&b.vars);
            (a.into_context(&v), b.into_context(&v))
        }
    }

    // ----- arithmetic helpers -----

    pub fn map_coeffs(&self, f: impl Fn(&Rat) -> Rat) -> Poly {
        let mut out = Poly::zero_in(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> Poly {
        if r.is_zero() {
            return Poly::zero_in(&self.vars);
        }
        self.map_coeffs(|c| c.clone() * r.clone())
    }

    pub fn mul_mono(&self, mono: &Mono, c: &Rat) -> Poly {
        let mut out = Poly::zero_in(&self.vars);
        for (m, k) in &self.terms {
            let mm: Mono = m.iter().zip(mono).map(|(a, b)| a + b).collect();
            out.add_term(mm, k.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant_in(&self.vars, Rat::one());
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// Partial derivative with respect to the named variable.
    pub fn derivative(&self, name: &str) -> Poly {
        let Some(i) = self.vars.index_of(name) else {
            return Poly::zero_in(&self.vars);
        };
        let mut out = Poly::zero_in(&self.vars);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut mm = m.clone();
            mm[i] -= 1;
            out.add_term(mm, c.clone() * Rat::from_int(m[i] as i64));
        }
        out
    }

    // ----- evaluation and substitution -----

    /// Full evaluation; every variable must be bound.
    pub fn eval_rat(&self, binds: &HashMap<String, Rat>) -> Result<Rat, ScalarError> {
        let vals: Vec<Rat> = self
            .vars
            .names()
            .iter()
            .map(|n| binds.get(n).cloned().ok_or_else(|| ScalarError::UnboundVariable(n.clone())))
            .collect::<Result<_, _>>()?;
        Ok(self.eval_generic(&vals))
    }

    /// Evaluation in any scalar domain, values indexed by variable order.
    pub fn eval_generic<S: Scalar>(&self, vals: &[S]) -> S {
        assert_eq!(vals.len(), self.vars.len());
        // Power tables keep repeated exponentiation linear.
        let mut pows: Vec<Vec<S>> = Vec::with_capacity(vals.len());
        for (i, v) in vals.iter().enumerate() {
            let maxe = self.degree_in(i) as usize;
            let mut t = Vec::with_capacity(maxe + 1);
            t.push(S::one());
            for e in 1..=maxe {
                let prev = t[e - 1].clone();
                t.push(prev * v.clone());
            }
            pows.push(t);
        }
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut term = S::from_rat(c);
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    term = term * pows[i][e as usize].clone();
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// Substitutes polynomials for a subset of variables, keeping the rest.
    pub fn substitute(&self, binds: &HashMap<String, Poly>) -> Poly {
        let mut ctx = self.vars.clone();
        for p in binds.values() {
            ctx = ctx.union(p.vars());
        }
        let vals: Vec<Poly> = self
            .vars
            .names()
            .iter()
            .map(|n| match binds.get(n) {
                Some(p) => p.into_context(&ctx),
                None => Poly::var_in(&ctx, n),
            })
            .collect();
        let mut acc = Poly::zero_in(&ctx);
        for (m, c) in &self.terms {
            let mut term = Poly::constant_in(&ctx, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    term = term * vals[i].pow(e);
                }
            }
            acc = acc + term;
        }
        acc
    }

    // ----- division and gcd -----

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (mut a, d) = Poly::align(self, d);
        let (dm, dc) = d.lead()?;
        let dm = dm.clone();
        let dc = dc.clone();
        let mut q = Poly::zero_in(a.vars());
        while let Some((am, ac)) = a.lead() {
            let mut mono = Vec::with_capacity(am.len());
            for (x, y) in am.iter().zip(&dm) {
                if x < y {
                    return None;
                }
                mono.push(x - y);
            }
            let coef = ac.clone() * dc.try_inv().expect("nonzero leading coefficient");
            q.add_term(mono.clone(), coef.clone());
            a = a - d.mul_mono(&mono, &coef);
        }
        Some(q)
    }

    /// Per-variable minimum exponent over all terms (the monomial content).
    fn mono_content(&self) -> Mono {
        let n = self.vars.len();
        let mut m = vec![u32::MAX; n];
        for mono in self.terms.keys() {
            for i in 0..n {
                m[i] = m[i].min(mono[i]);
            }
        }
        if self.terms.is_empty() {
            m = vec![0; n];
        }
        m
    }

    /// Monic (leading coefficient 1) rescaling; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.try_inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic gcd under the fixed monomial order.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (a, b) = Poly::align(a, b);
        Poly::gcd_aligned(&a, &b).monic()
    }

    fn gcd_aligned(a: &Poly, b: &Poly) -> Poly {
        if a.terms.is_empty() {
            return b.clone();
        }
        if b.terms.is_empty() {
            return a.clone();
        }
        if a.is_constant() || b.is_constant() {
            return Poly::constant_in(a.vars(), Rat::one());
        }
        // Monomial fast path: gcd with a monomial is a monomial content.
        if a.is_monomial() || b.is_monomial() {
            let ca = a.mono_content();
            let cb = b.mono_content();
            let m: Mono = ca.iter().zip(&cb).map(|(x, y)| *x.min(y)).collect();
            return Poly::from_terms(a.vars(), [(m, Rat::one())]);
        }
        // Main variable: first variable occurring in both.
        let nv = a.vars.len();
        let shared = (0..nv).find(|&i| a.degree_in(i) > 0 && b.degree_in(i) > 0);
        let Some(x) = shared else {
            // Disjoint supports: only constants divide both.
            return Poly::constant_in(a.vars(), Rat::one());
        };
        let ua = UniView::split(a, x);
        let ub = UniView::split(b, x);
        let cont_a = ua.content();
        let cont_b = ub.content();
        let ppa = ua.div_content(&cont_a);
        let ppb = ub.div_content(&cont_b);
        let mut f = if ppa.deg() >= ppb.deg() { ppa.clone() } else { ppb.clone() };
        let mut g = if ppa.deg() >= ppb.deg() { ppb } else { ppa };
        loop {
            let r = UniView::prem(&f, &g);
            if r.is_zero() {
                break;
            }
            let rc = r.content();
            f = g;
            g = r.div_content(&rc);
        }
        let cont = Poly::gcd_aligned(&cont_a, &cont_b);
        cont * g.assemble(a.vars(), x)
    }
}

/// A polynomial viewed as univariate in one variable, with polynomial
/// coefficients in the remaining ones (same context, exponent zeroed).
#[derive(Clone)]
struct UniView {
    coeffs: BTreeMap<u32, Poly>,
}

impl UniView {
    fn split(p: &Poly, x: usize) -> UniView {
        let mut coeffs: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in p.terms() {
            let e = m[x];
            let mut mm = m.clone();
            mm[x] = 0;
            coeffs
                .entry(e)
                .or_insert_with(|| Poly::zero_in(p.vars()))
                .add_term(mm, c.clone());
        }
        coeffs.retain(|_, p| !p.terms.is_empty());
        UniView { coeffs }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn deg(&self) -> u32 {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    fn lead(&self) -> &Poly {
        self.coeffs.values().next_back().expect("nonzero univariate view")
    }

    fn content(&self) -> Poly {
        let mut it = self.coeffs.values();
        let first = it.next().expect("nonzero univariate view").clone();
        it.fold(first, |acc, p| Poly::gcd_aligned(&acc, p))
    }

    fn div_content(&self, cont: &Poly) -> UniView {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&e, p)| (e, p.div_exact(cont).expect("content divides")))
            .collect();
        UniView { coeffs }
    }

    fn scale(&self, p: &Poly) -> UniView {
        let coeffs = self.coeffs.iter().map(|(&e, c)| (e, c.clone() * p.clone())).collect();
        UniView { coeffs }
    }

    fn shift_mul(&self, k: u32, p: &Poly) -> UniView {
        let coeffs = self.coeffs.iter().map(|(&e, c)| (e + k, c.clone() * p.clone())).collect();
        UniView { coeffs }
    }

    fn sub(&self, other: &UniView) -> UniView {
        let mut coeffs = self.coeffs.clone();
        for (&e, p) in &other.coeffs {
            let entry = coeffs.entry(e).or_insert_with(|| Poly::zero_in(p.vars()));
            *entry = entry.clone() - p.clone();
        }
        coeffs.retain(|_, p| !p.terms.is_empty());
        UniView { coeffs }
    }

    /// Pseudo-remainder of `a` by `b` in the split variable.
    fn prem(a: &UniView, b: &UniView) -> UniView {
        let db = b.deg();
        let lb = b.lead().clone();
        let mut r = a.clone();
        while !r.is_zero() && r.deg() >= db {
            let k = r.deg() - db;
            let lr = r.lead().clone();
            r = r.scale(&lb).sub(&b.shift_mul(k, &lr));
        }
        r
    }

    fn assemble(&self, vars: &Vars, x: usize) -> Poly {
        let mut out = Poly::zero_in(vars);
        for (&e, p) in &self.coeffs {
            for (m, c) in p.terms() {
                let mut mm = m.clone();
                mm[x] += e;
                out.add_term(mm, c.clone());
            }
        }
        out
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Poly) -> bool {
        let (a, b) = Poly::align(self, other);
        a.terms == b.terms
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        let (mut a, b) = Poly::align(&self, &rhs);
        for (m, c) in b.terms {
            a.add_term(m, c);
        }
        a
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.map_coeffs(|c| -c.clone())
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        let (a, b) = Poly::align(&self, &rhs);
        let mut out = Poly::zero_in(a.vars());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m: Mono = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.add_term(m, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.vars.names();
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const_mono = m.iter().all(|&e| e == 0);
            if !mag.is_one() || is_const_mono {
                write!(f, "{mag}")?;
                if !is_const_mono {
                    write!(f, "*")?;
                }
            }
            let mut firstv = true;
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !firstv {
                    write!(f, "*")?;
                }
                firstv = false;
                if e == 1 {
                    write!(f, "{}", names[i])?;
                } else {
                    write!(f, "{}^{}", names[i], e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            let key = m.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",");
            map.serialize_entry(&key, c)?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn tvars() -> Vars {
        Vars::new(&["t1", "t2"])
    }

    fn t1() -> Poly {
        Poly::var_in(&tvars(), "t1")
    }

    fn t2() -> Poly {
        Poly::var_in(&tvars(), "t2")
    }

    fn c(n: i64) -> Poly {
        Poly::constant_in(&tvars(), Rat::from_int(n))
    }

    #[test]
    fn ring_identities() {
        let p = t1() + t2().scale(&q(2, 1));
        let z = p.clone() - p.clone();
        assert!(z.num_terms() == 0);
        assert_eq!((t1() + c(1)) * (t1() - c(1)), t1() * t1() - c(1));
    }

    #[test]
    fn context_merge_by_name() {
        let a = Poly::var_in(&Vars::new(&["t1"]), "t1");
        let b = Poly::var_in(&Vars::new(&["t2"]), "t2");
        let s = a + b;
        assert_eq!(s, t1() + t2());
    }

    #[test]
    fn exact_division() {
        let p = (t1() + t2()).pow(3);
        let d = (t1() + t2()).pow(2);
        assert_eq!(p.div_exact(&d).unwrap(), t1() + t2());
        assert!(t1().div_exact(&(t1() + c(1))).is_none());
    }

    #[test]
    fn gcd_univariate() {
        // (t1^2 - 1) and (t1^2 - 2 t1 + 1) share the factor (t1 - 1).
        let a = t1() * t1() - c(1);
        let b = t1() * t1() - t1().scale(&q(2, 1)) + c(1);
        assert_eq!(Poly::gcd(&a, &b), t1() - c(1));
    }

    #[test]
    fn gcd_multivariate() {
        let g = t1() * t2() - c(1);
        let a = g.clone() * (t1() + c(2));
        let b = g.clone() * (t2() - c(3)) * (t2() - c(3));
        assert_eq!(Poly::gcd(&a, &b), g);
    }

    #[test]
    fn gcd_coprime_and_monomial() {
        assert_eq!(Poly::gcd(&(t1() + c(1)), &t2()), c(1));
        let m1 = t1().pow(3) * t2();
        let m2 = t1() * t2().pow(2) + t1().pow(2) * t2().pow(2);
        assert_eq!(Poly::gcd(&m1, &m2), t1() * t2());
    }

    #[test]
    fn derivative_and_eval() {
        let p = t1().pow(3) * t2() + t1().scale(&q(1, 2));
        let d = p.derivative("t1");
        assert_eq!(d, t1().pow(2).scale(&q(3, 1)) * t2() + c(1).scale(&q(1, 2)));
        let mut binds = HashMap::new();
        binds.insert("t1".to_string(), q(2, 1));
        binds.insert("t2".to_string(), q(3, 1));
        assert_eq!(p.eval_rat(&binds).unwrap(), q(25, 1));
        binds.remove("t2");
        assert!(matches!(p.eval_rat(&binds), Err(ScalarError::UnboundVariable(_))));
    }

    #[test]
    fn substitution_partial() {
        let p = t1() * t2();
        let mut binds = HashMap::new();
        binds.insert("t1".to_string(), t2() + c(1));
        assert_eq!(p.substitute(&binds), (t2() + c(1)) * t2());
    }
}
