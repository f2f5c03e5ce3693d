//! Levi decompositions g = u_+ + l + u_- attached to subsets of the simple
//! roots, with the center of the Levi and the grouping of the complementary
//! roots by their restriction to that center.

use crate::scalar::{Rat, Scalar};

use super::algebra::{BasisLabel, LieAlgebra};
use super::roots::RootSystem;

/// Roots outside the Levi with the same restriction to the center are
/// collected into one class, keyed by coordinates over the complementary
/// simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiRoot {
    pub key: Vec<i64>,
    /// Indices into the positive-root list.
    pub fiber: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct LeviSplitting {
    subset: Vec<usize>,
    complement: Vec<usize>,
    levi_pos: Vec<usize>,
    nil_pos: Vec<usize>,
    center: Vec<Vec<Rat>>,
    quasi: Vec<QuasiRoot>,
}

impl LeviSplitting {
    /// `subset` holds 0-based simple root indices generating the Levi.
    pub fn new(g: &LieAlgebra, subset: &[usize]) -> Self {
        let rank = g.rank();
        let mut subset: Vec<usize> = subset.to_vec();
        subset.sort_unstable();
        subset.dedup();
        assert!(
            subset.iter().all(|&i| i < rank),
            "Levi subset index out of range"
        );
        let complement: Vec<usize> = (0..rank).filter(|i| !subset.contains(i)).collect();

        let rs = g.roots();
        let mut levi_pos = Vec::new();
        let mut nil_pos = Vec::new();
        for (k, root) in rs.positive().iter().enumerate() {
            let inside = (0..rank).all(|j| root[j] == 0 || subset.contains(&j));
            if inside {
                levi_pos.push(k);
            } else {
                nil_pos.push(k);
            }
        }

        let center = center_basis(rs, &subset);
        let quasi = quasi_roots(rs, &complement, &nil_pos);
        LeviSplitting { subset, complement, levi_pos, nil_pos, center, quasi }
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    /// Positive roots of the Levi, as indices into the positive-root list.
    pub fn levi_pos(&self) -> &[usize] {
        &self.levi_pos
    }

    /// Positive roots outside the Levi.
    pub fn nil_pos(&self) -> &[usize] {
        &self.nil_pos
    }

    pub fn dim_u_plus(&self) -> usize {
        self.nil_pos.len()
    }

    /// Basis of the center of the Levi, as dense Cartan-supported vectors.
    pub fn center(&self) -> &[Vec<Rat>] {
        &self.center
    }

    pub fn quasi_roots(&self) -> &[QuasiRoot] {
        &self.quasi
    }

    /// True at basis indices belonging to the Levi subalgebra.
    pub fn levi_mask(&self, g: &LieAlgebra) -> Vec<bool> {
        (0..g.dim())
            .map(|idx| match g.label(idx) {
                BasisLabel::H(_) => true,
                BasisLabel::E(k) | BasisLabel::F(k) => self.levi_pos.contains(&k),
            })
            .collect()
    }

    /// True at basis indices surviving in g / l.
    pub fn quotient_mask(&self, g: &LieAlgebra) -> Vec<bool> {
        self.levi_mask(g).into_iter().map(|b| !b).collect()
    }

    /// Coordinates of a positive root over the complementary simple roots;
    /// constant on each quasi-root fiber.
    pub fn quasi_key(&self, rs: &RootSystem, pos_index: usize) -> Vec<i64> {
        let root = &rs.positive()[pos_index];
        self.complement.iter().map(|&s| root[s]).collect()
    }
}

fn center_basis(rs: &RootSystem, subset: &[usize]) -> Vec<Vec<Rat>> {
    let rank = rs.rank();
    // x = sum c_j h_j lies in the center iff <alpha_i, x> = 0 for i in the
    // subset; <alpha_i, h_j> = a_ji.
    let rows: Vec<Vec<Rat>> = subset
        .iter()
        .map(|&i| (0..rank).map(|j| Rat::from_int(rs.cartan()[j][i])).collect())
        .collect();
    kernel(&rows, rank)
}

fn kernel(rows: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) {
            m.swap(r, p);
            let inv = m[r][c].clone().try_inv().unwrap();
            for x in m[r].iter_mut() {
                *x = x.clone() * inv.clone();
            }
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in 0..cols {
                        m[i][j] = m[i][j].clone() - f.clone() * m[r][j].clone();
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::from_int(0); cols];
        v[free] = Rat::from_int(1);
        for (row, &p) in m.iter().take(r).zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

fn quasi_roots(rs: &RootSystem, complement: &[usize], nil_pos: &[usize]) -> Vec<QuasiRoot> {
    let mut classes: Vec<QuasiRoot> = Vec::new();
    for &k in nil_pos {
        let key: Vec<i64> = complement.iter().map(|&s| rs.positive()[k][s]).collect();
        match classes.iter_mut().find(|q| q.key == key) {
            Some(q) => q.fiber.push(k),
            None => classes.push(QuasiRoot { key, fiber: vec![k] }),
        }
    }
    classes.sort_by(|a, b| a.key.cmp(&b.key));
    classes
}
