//! Sparse tensors over a basis, with the slot calculus used by the
//! classical-side identities: brackets acting in shared slots, cyclic
//! symmetrization, wedge products, and quotient projections.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::scalar::{Rat, Scalar};

#[derive(Debug, Error, PartialEq)]
pub enum TensorError {
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("tensor is not antisymmetric")]
    NotAntisymmetric,
}

/// Anything with a basis and a bracket table; tensor slot operations only
/// need structure constants.
pub trait Algebra {
    fn dim(&self) -> usize;
    fn bracket_basis(&self, i: usize, j: usize) -> Vec<(usize, Rat)>;
}

impl Algebra for crate::liealg::LieAlgebra {
    fn dim(&self) -> usize {
        LieAlgebra::dim(self)
    }
    fn bracket_basis(&self, i: usize, j: usize) -> Vec<(usize, Rat)> {
        LieAlgebra::bracket_basis(self, i, j)
    }
}

use crate::liealg::LieAlgebra;

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<S: Scalar> {
    dim: usize,
    slots: usize,
    terms: BTreeMap<Vec<usize>, S>,
}

impl<S: Scalar> Tensor<S> {
    pub fn zero(dim: usize, slots: usize) -> Self {
        Tensor { dim, slots, terms: BTreeMap::new() }
    }

    pub fn from_terms(dim: usize, slots: usize, terms: Vec<(Vec<usize>, S)>) -> Self {
        let mut t = Self::zero(dim, slots);
        for (idx, c) in terms {
            t.add_term(idx, c);
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &[usize]) -> S {
        self.terms.get(idx).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, idx: Vec<usize>, c: S) {
        assert_eq!(idx.len(), self.slots, "index arity mismatch");
        assert!(idx.iter().all(|&i| i < self.dim), "index out of range");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(idx).or_insert_with(S::zero);
        *entry = entry.clone() + c;
        self.prune();
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.dim, self.slots);
        for (idx, x) in &self.terms {
            out.add_term(idx.clone(), x.clone() * c.clone());
        }
        out
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self.scale(&S::from_rat(r))
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Tensor<T> {
        let mut out = Tensor::zero(self.dim, self.slots);
        for (idx, x) in &self.terms {
            out.add_term(idx.clone(), f(x));
        }
        out
    }

    /// Applies a slot relocation: entry at `idx` moves to the index tuple
    /// with `new[perm[s]] = idx[s]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.slots);
        let mut out = Self::zero(self.dim, self.slots);
        for (idx, c) in &self.terms {
            let mut new = vec![0usize; self.slots];
            for (s, &p) in perm.iter().enumerate() {
                new[p] = idx[s];
            }
            out.add_term(new, c.clone());
        }
        out
    }

    /// Swap of the two slots of a 2-tensor.
    pub fn transpose(&self) -> Self {
        assert_eq!(self.slots, 2);
        self.permute(&[1, 0])
    }

    /// Outer product, concatenating slots.
    pub fn outer(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zero(self.dim, self.slots + other.slots);
        for (ia, ca) in &self.terms {
            for (ib, cb) in &other.terms {
                let mut idx = ia.clone();
                idx.extend_from_slice(ib);
                out.add_term(idx, ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Embeds an n-tensor into m slots at the given positions, the other
    /// slots implicitly carrying the unit of the enveloping algebra; only
    /// meaningful inside slot-bracket expressions where the unit drops out.
    pub fn at_slots(&self, total: usize, positions: &[usize]) -> SlotPlaced<S> {
        assert_eq!(positions.len(), self.slots);
        SlotPlaced { tensor: self.clone(), total, positions: positions.to_vec() }
    }

    pub fn checked_antisymmetric(&self) -> Result<&Self, TensorError> {
        assert_eq!(self.slots, 2);
        let skew = self.transpose().scale_rat(&Rat::from_int(-1));
        if *self == skew {
            Ok(self)
        } else {
            Err(TensorError::NotAntisymmetric)
        }
    }
}

impl<S: Scalar> std::ops::Add for Tensor<S> {
    type Output = Tensor<S>;
    fn add(self, rhs: Tensor<S>) -> Tensor<S> {
        assert_eq!(self.dim, rhs.dim, "tensor dimension mismatch");
        assert_eq!(self.slots, rhs.slots, "tensor arity mismatch");
        let mut out = self;
        for (idx, c) in rhs.terms {
            out.add_term(idx, c);
        }
        out
    }
}

impl<S: Scalar> std::ops::Sub for Tensor<S> {
    type Output = Tensor<S>;
    fn sub(self, rhs: Tensor<S>) -> Tensor<S> {
        let neg = rhs.scale_rat(&Rat::from_int(-1));
        self + neg
    }
}

/// A tensor placed into chosen slots of a larger product.
pub struct SlotPlaced<S: Scalar> {
    tensor: Tensor<S>,
    total: usize,
    positions: Vec<usize>,
}

/// Slot-bracket of two placed 2-tensors: shared slots multiply through the
/// bracket, disjoint slots pass through.  Exactly one slot must be shared.
pub fn slot_bracket<S: Scalar>(
    alg: &dyn Algebra,
    a: &SlotPlaced<S>,
    b: &SlotPlaced<S>,
) -> Tensor<S> {
    assert_eq!(a.total, b.total);
    let shared: Vec<usize> = a
        .positions
        .iter()
        .filter(|p| b.positions.contains(p))
        .cloned()
        .collect();
    assert_eq!(shared.len(), 1, "slot bracket needs exactly one shared slot");
    let s = shared[0];
    let apos = a.positions.iter().position(|&p| p == s).unwrap();
    let bpos = b.positions.iter().position(|&p| p == s).unwrap();
    let mut out = Tensor::zero(alg.dim(), a.total);
    for (ia, ca) in &a.tensor.terms {
        for (ib, cb) in &b.tensor.terms {
            for (bk, c) in alg.bracket_basis(ia[apos], ib[bpos]) {
                let mut idx = vec![usize::MAX; a.total];
                idx[s] = bk;
                for (t, &p) in a.positions.iter().enumerate() {
                    if t != apos {
                        idx[p] = ia[t];
                    }
                }
                for (t, &p) in b.positions.iter().enumerate() {
                    if t != bpos {
                        idx[p] = ib[t];
                    }
                }
                assert!(idx.iter().all(|&v| v != usize::MAX), "slots left unfilled");
                out.add_term(idx, ca.clone() * cb.clone() * S::from_rat(&c));
            }
        }
    }
    out
}

/// [r12, s13] + [r12, s23] + [r13, s23]; the polarization of the classical
/// Yang-Baxter operator, with cyb(r) = mixed_cyb(r, r).
pub fn mixed_cyb<S: Scalar>(alg: &dyn Algebra, r: &Tensor<S>, s: &Tensor<S>) -> Tensor<S> {
    let t12 = |t: &Tensor<S>| t.at_slots(3, &[0, 1]);
    let t13 = |t: &Tensor<S>| t.at_slots(3, &[0, 2]);
    let t23 = |t: &Tensor<S>| t.at_slots(3, &[1, 2]);
    let a = slot_bracket(alg, &t12(r), &t13(s));
    let b = slot_bracket(alg, &t12(r), &t23(s));
    let c = slot_bracket(alg, &t13(r), &t23(s));
    a + b + c
}

/// The classical Yang-Baxter operator CYB(r) = [r12,r13]+[r12,r23]+[r13,r23].
pub fn cyb<S: Scalar>(alg: &dyn Algebra, r: &Tensor<S>) -> Tensor<S> {
    mixed_cyb(alg, r, r)
}

/// CYB(r + s) - CYB(r) - CYB(s), computed directly from cross terms.
pub fn cyb_bilinear<S: Scalar>(alg: &dyn Algebra, r: &Tensor<S>, s: &Tensor<S>) -> Tensor<S> {
    mixed_cyb(alg, r, s) + mixed_cyb(alg, s, r)
}

/// Cyclic symmetrization x + Rx + R^2x with R(a@b@c) = c@a@b.
pub fn alt<S: Scalar>(x: &Tensor<S>) -> Tensor<S> {
    assert_eq!(x.slots(), 3, "cyclic symmetrization acts on 3-tensors");
    let r1 = x.permute(&[1, 2, 0]);
    let r2 = r1.permute(&[1, 2, 0]);
    x.clone() + r1 + r2
}

/// Adjoint action of a basis-coefficient vector on a tensor, slot by slot:
/// sum over slots of (1 @ .. @ ad(a) @ .. @ 1).
pub fn ad_action<S: Scalar>(alg: &dyn Algebra, a: &[S], x: &Tensor<S>) -> Tensor<S> {
    let mut out = Tensor::zero(x.dim(), x.slots());
    for (idx, c) in x.terms() {
        for slot in 0..x.slots() {
            for (i, ai) in a.iter().enumerate() {
                if ai.is_zero() {
                    continue;
                }
                for (b, k) in alg.bracket_basis(i, idx[slot]) {
                    let mut new = idx.clone();
                    new[slot] = b;
                    out.add_term(new, ai.clone() * c.clone() * S::from_rat(&k));
                }
            }
        }
    }
    out
}

/// dress + [a@1 + 1@a, rho]; vanishing expresses infinitesimal equivariance.
pub fn invariance_residual<S: Scalar>(
    alg: &dyn Algebra,
    a: &[S],
    rho: &Tensor<S>,
    dress: &Tensor<S>,
) -> Result<Tensor<S>, TensorError> {
    if rho.dim() != alg.dim() || dress.dim() != alg.dim() {
        return Err(TensorError::DomainMismatch(
            "tensor dimension does not match the algebra".into(),
        ));
    }
    if rho.slots() != 2 || dress.slots() != 2 {
        return Err(TensorError::DomainMismatch("expected 2-tensors".into()));
    }
    Ok(dress.clone() + ad_action(alg, a, rho))
}

/// Kills every term with a slot index outside the kept set; the coordinate
/// projection onto a quotient by a subalgebra spanned by basis vectors.
pub fn quotient_project<S: Scalar>(x: &Tensor<S>, keep: &[bool]) -> Result<Tensor<S>, TensorError> {
    if keep.len() != x.dim() {
        return Err(TensorError::DomainMismatch(
            "kept-set length does not match the dimension".into(),
        ));
    }
    let mut out = Tensor::zero(x.dim(), x.slots());
    for (idx, c) in x.terms() {
        if idx.iter().all(|&i| keep[i]) {
            out.add_term(idx.clone(), c.clone());
        }
    }
    Ok(out)
}

/// x @ y - y @ x for basis indices.
pub fn wedge_basis<S: Scalar>(dim: usize, i: usize, j: usize) -> Tensor<S> {
    Tensor::from_terms(
        dim,
        2,
        vec![(vec![i, j], S::one()), (vec![j, i], S::zero() - S::one())],
    )
}

impl Tensor<crate::scalar::F64> {
    pub fn norm_inf(&self) -> f64 {
        self.terms.values().map(|c| c.0.abs()).fold(0.0, f64::max)
    }
}
