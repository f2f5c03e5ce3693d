//! The double g x g with the difference form.  The diagonal copy and the
//! opposite-Borel subalgebra are complementary isotropic subalgebras, and
//! the induced r-matrix solves the Yang-Baxter equation; this is verified
//! at construction time.

use crate::scalar::{Rat, Scalar};
use crate::tensor::{self, Algebra, Tensor};

use super::algebra::{BasisLabel, LieAlgebra};
use super::structures::cartan_block_inverse;
use super::LieError;

#[derive(Clone, Debug)]
pub struct DrinfeldDouble {
    g: LieAlgebra,
}

impl DrinfeldDouble {
    pub fn new(g: &LieAlgebra) -> Result<Self, LieError> {
        let d = DrinfeldDouble { g: g.clone() };
        d.validate()?;
        Ok(d)
    }

    pub fn base(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn dim(&self) -> usize {
        2 * self.g.dim()
    }

    /// (x, 0) for x over the base.
    pub fn left<S: Scalar>(&self, x: &[S]) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim()];
        v[..x.len()].clone_from_slice(x);
        v
    }

    /// (0, x) for x over the base.
    pub fn right<S: Scalar>(&self, x: &[S]) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim()];
        v[x.len()..].clone_from_slice(x);
        v
    }

    /// Diagonal embedding (x, x).
    pub fn diagonal<S: Scalar>(&self, x: &[S]) -> Vec<S> {
        let mut v = self.left(x);
        let n = self.g.dim();
        for (i, c) in x.iter().enumerate() {
            v[n + i] = c.clone();
        }
        v
    }

    pub fn components<S: Scalar>(&self, w: &[S]) -> (Vec<S>, Vec<S>) {
        let n = self.g.dim();
        (w[..n].to_vec(), w[n..].to_vec())
    }

    /// Componentwise bracket of dense vectors over the double.
    pub fn bracket<S: Scalar>(&self, x: &[S], y: &[S]) -> Vec<S> {
        let (x1, x2) = self.components(x);
        let (y1, y2) = self.components(y);
        let mut out = self.left(&self.g.bracket(&x1, &y1));
        let second = self.g.bracket(&x2, &y2);
        let n = self.g.dim();
        for (i, c) in second.into_iter().enumerate() {
            out[n + i] = c;
        }
        out
    }

    /// Difference form <(a,b),(c,d)> = <a,c> - <b,d>.
    pub fn form<S: Scalar>(&self, x: &[S], y: &[S]) -> S {
        let (x1, x2) = self.components(x);
        let (y1, y2) = self.components(y);
        self.g.form(&x1, &y1) - self.g.form(&x2, &y2)
    }

    /// Splits w = diag(m) + w' with w' in the opposite-Borel subalgebra;
    /// returns (m, w').
    pub fn split<S: Scalar>(&self, w: &[S]) -> (Vec<S>, Vec<S>) {
        let g = &self.g;
        let n = g.dim();
        let (x, y) = self.components(w);
        // w' = (c + u, -c + v) with u raising, v lowering, c Cartan:
        // x - y = 2c + u - v fixes all three.
        let mut m = vec![S::zero(); n];
        let mut wp = vec![S::zero(); self.dim()];
        for idx in 0..n {
            let delta = x[idx].clone() - y[idx].clone();
            match g.label(idx) {
                BasisLabel::E(_) => {
                    // u component: lives in the first leg of w'.
                    wp[idx] = delta.clone();
                    m[idx] = x[idx].clone() - delta;
                }
                BasisLabel::F(_) => {
                    // v = -(x - y) on lowering indices, second leg of w'.
                    wp[n + idx] = S::zero() - delta.clone();
                    m[idx] = x[idx].clone();
                }
                BasisLabel::H(_) => {
                    let c = delta.scale(&Rat::new(1, 2));
                    wp[idx] = c.clone();
                    wp[n + idx] = S::zero() - c.clone();
                    m[idx] = x[idx].clone() - c;
                }
            }
        }
        (m, wp)
    }

    /// Canonical r-matrix of the double, pairing the diagonal basis with its
    /// dual basis inside the complementary subalgebra.
    pub fn canonical_r(&self) -> Tensor<Rat> {
        let g = &self.g;
        let n = g.dim();
        let npos = g.roots().num_positive();
        let mut pairs: Vec<(Vec<Rat>, Vec<Rat>)> = Vec::new();
        for k in 0..npos {
            // diag(f_k) pairs with (e_k, 0); diag(e_k) with -(0, f_k).
            pairs.push((
                self.diagonal(&g.basis_vec(g.f_index(k))),
                self.left(&g.basis_vec(g.e_index(k))),
            ));
            let mut dual = self.right(&g.basis_vec::<Rat>(g.f_index(k)));
            for c in dual.iter_mut() {
                *c = -c.clone();
            }
            pairs.push((self.diagonal(&g.basis_vec(g.e_index(k))), dual));
        }
        let binv = cartan_block_inverse(g);
        for i in 0..g.rank() {
            let mut dual = vec![Rat::from_int(0); self.dim()];
            for j in 0..g.rank() {
                let c = Rat::new(1, 2) * binv[i][j].clone();
                dual[g.h_index(j)] = c.clone();
                dual[n + g.h_index(j)] = -c;
            }
            pairs.push((self.diagonal(&g.basis_vec(g.h_index(i))), dual));
        }
        let mut r = Tensor::zero(self.dim(), 2);
        for (a, b) in pairs {
            for (i, ca) in a.iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                for (j, cb) in b.iter().enumerate() {
                    if !cb.is_zero() {
                        r.add_term(vec![i, j], ca.clone() * cb.clone());
                    }
                }
            }
        }
        r
    }

    fn validate(&self) -> Result<(), LieError> {
        let g = &self.g;
        let n = g.dim();
        let fail = |m: &str| LieError::NotQuasitriangular(m.into());
        // Diagonal and complement are isotropic and closed under bracket.
        let diag: Vec<Vec<Rat>> = (0..n).map(|i| self.diagonal(&g.basis_vec(i))).collect();
        let mut dual: Vec<Vec<Rat>> = Vec::new();
        for k in 0..g.roots().num_positive() {
            dual.push(self.left(&g.basis_vec(g.e_index(k))));
            dual.push(self.right(&g.basis_vec(g.f_index(k))));
        }
        for i in 0..g.rank() {
            let mut v = self.left(&g.basis_vec::<Rat>(g.h_index(i)));
            v[n + g.h_index(i)] = Rat::from_int(-1);
            dual.push(v);
        }
        for family in [&diag, &dual] {
            for a in family.iter() {
                for b in family.iter() {
                    if !self.form(a, b).is_zero() {
                        return Err(fail("a Lagrangian subalgebra is not isotropic"));
                    }
                }
            }
        }
        // Closure: the diagonal is obviously closed; check the complement.
        let in_dual_span = |w: &[Rat]| -> bool {
            // Complement = raising-left + lowering-right + antidiagonal Cartan:
            // membership is coordinate-wise.
            for idx in 0..n {
                match g.label(idx) {
                    BasisLabel::E(_) => {
                        if !w[n + idx].is_zero() {
                            return false;
                        }
                    }
                    BasisLabel::F(_) => {
                        if !w[idx].is_zero() {
                            return false;
                        }
                    }
                    BasisLabel::H(_) => {
                        if w[idx].clone() + w[n + idx].clone() != Rat::from_int(0) {
                            return false;
                        }
                    }
                }
            }
            true
        };
        for a in dual.iter() {
            for b in dual.iter() {
                if !in_dual_span(&self.bracket(a, b)) {
                    return Err(fail("the dual subalgebra is not closed under the bracket"));
                }
            }
        }
        // The induced r-matrix solves the Yang-Baxter equation.
        let r = self.canonical_r();
        if !tensor::cyb(self, &r).is_zero() {
            return Err(fail("the canonical r-matrix fails the Yang-Baxter equation"));
        }
        Ok(())
    }
}

impl Algebra for DrinfeldDouble {
    fn dim(&self) -> usize {
        DrinfeldDouble::dim(self)
    }
    fn bracket_basis(&self, i: usize, j: usize) -> Vec<(usize, Rat)> {
        let n = self.g.dim();
        if (i < n) != (j < n) {
            return Vec::new();
        }
        let off = if i < n { 0 } else { n };
        self.g
            .bracket_basis(i - off, j - off)
            .into_iter()
            .map(|(b, c)| (b + off, c))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubles_of_small_algebras_validate() {
        for name in ["A1", "A2", "B2"] {
            let g = LieAlgebra::by_name(name).unwrap();
            DrinfeldDouble::new(&g).unwrap();
        }
    }

    #[test]
    fn split_is_a_direct_sum_decomposition() {
        let g = LieAlgebra::by_name("A2").unwrap();
        let d = DrinfeldDouble::new(&g).unwrap();
        // A generic vector: every double basis element with varied weights.
        let mut w = vec![Rat::from_int(0); d.dim()];
        for (i, x) in w.iter_mut().enumerate() {
            *x = Rat::from_int(i as i64 + 1);
        }
        let (m, wp) = d.split(&w);
        let rebuilt: Vec<Rat> = d
            .diagonal(&m)
            .iter()
            .zip(&wp)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        assert_eq!(rebuilt, w);
        // wp pairs to zero against every diagonal vector... only against the
        // diagonal of the orthogonal complement in general; instead check
        // its membership coordinates directly.
        let n = g.dim();
        for idx in 0..n {
            match g.label(idx) {
                super::BasisLabel::E(_) => assert!(wp[n + idx].is_zero()),
                super::BasisLabel::F(_) => assert!(wp[idx].is_zero()),
                super::BasisLabel::H(_) => {
                    assert!(wp[idx].clone() + wp[n + idx].clone() == Rat::from_int(0))
                }
            }
        }
    }
}
