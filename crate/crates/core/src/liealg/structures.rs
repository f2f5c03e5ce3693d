//! The standard quasitriangular structure, its skew half, and the invariant
//! Casimir 2-tensor.

use crate::scalar::{Rat, Scalar};
use crate::tensor::Tensor;

use super::algebra::LieAlgebra;

pub struct StandardStructures<S: Scalar> {
    /// sum e_a @ f_a + (1/2) sum (B^-1)_ij h_i @ h_j.
    pub r_plus: Tensor<S>,
    /// Skew half (1/2) sum e_a ^ f_a.
    pub r_skew: Tensor<S>,
    /// r_plus + its transpose; the form-dual of the identity.
    pub casimir: Tensor<S>,
}

pub fn standard_structures<S: Scalar>(g: &LieAlgebra) -> StandardStructures<S> {
    let dim = g.dim();
    let n = g.roots().num_positive();
    let half = Rat::new(1, 2);

    let mut r_plus = Tensor::zero(dim, 2);
    let mut r_skew = Tensor::zero(dim, 2);
    for k in 0..n {
        let (e, f) = (g.e_index(k), g.f_index(k));
        r_plus.add_term(vec![e, f], S::one());
        r_skew.add_term(vec![e, f], S::from_rat(&half));
        r_skew.add_term(vec![f, e], S::from_rat(&(-half.clone())));
    }
    let binv = cartan_block_inverse(g);
    for i in 0..g.rank() {
        for j in 0..g.rank() {
            let c = half.clone() * binv[i][j].clone();
            r_plus.add_term(vec![g.h_index(i), g.h_index(j)], S::from_rat(&c));
        }
    }
    let casimir = r_plus.clone() + r_plus.transpose();
    StandardStructures { r_plus, r_skew, casimir }
}

/// Inverse of the Gram matrix of the form restricted to the Cartan.
pub fn cartan_block_inverse(g: &LieAlgebra) -> Vec<Vec<Rat>> {
    let rank = g.rank();
    let b: Vec<Vec<Rat>> = (0..rank)
        .map(|i| (0..rank).map(|j| g.gram()[g.h_index(i)][g.h_index(j)].clone()).collect())
        .collect();
    invert(&b).expect("Cartan block of the invariant form is nondegenerate")
}

/// Gauss-Jordan inverse of a square rational matrix.
pub fn invert(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| Rat::from_int((i == j) as i64)).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        inv.swap(c, p);
        let d = a[c][c].clone().try_inv().ok()?;
        for j in 0..n {
            a[c][j] = a[c][j].clone() * d.clone();
            inv[c][j] = inv[c][j].clone() * d.clone();
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..n {
                    a[i][j] = a[i][j].clone() - f.clone() * a[c][j].clone();
                    inv[i][j] = inv[i][j].clone() - f.clone() * inv[c][j].clone();
                }
            }
        }
    }
    Some(inv)
}
