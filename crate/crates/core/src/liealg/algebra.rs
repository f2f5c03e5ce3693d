//! Finite-dimensional semisimple Lie algebras with explicit bracket tables.
//!
//! Basis order: raising vectors by root order, then the Cartan coroots, then
//! lowering vectors by root order.  Lowering vectors are normalized against
//! the invariant form: `[e_a, f_a] = t_a`, the form-dual of the root, so
//! `<e_a, f_a> = 1` throughout.

use std::collections::HashMap;

use crate::scalar::{Rat, Scalar};

use super::nilpotent::NilpotentModel;
use super::roots::{Root, RootSystem};
use super::LieError;

/// Basis labels; indices point into the positive-root list or the Cartan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisLabel {
    E(usize),
    H(usize),
    F(usize),
}

type SparseVec = Vec<(usize, Rat)>;

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    rs: RootSystem,
    dim: usize,
    labels: Vec<BasisLabel>,
    table: Vec<Vec<SparseVec>>,
    /// Gram matrix of the invariant bilinear form.
    gram: Vec<Vec<Rat>>,
}

impl LieAlgebra {
    pub fn new(cartan: &[Vec<i64>]) -> Result<Self, LieError> {
        let rs = RootSystem::new(cartan)?;
        Self::from_roots(rs)
    }

    pub fn by_name(name: &str) -> Result<Self, LieError> {
        let rs = RootSystem::by_name(name)?;
        Self::from_roots(rs)
    }

    fn from_roots(rs: RootSystem) -> Result<Self, LieError> {
        let rank = rs.rank();
        let n = rs.num_positive();
        let dim = 2 * n + rank;
        let mut labels = Vec::with_capacity(dim);
        for k in 0..n {
            labels.push(BasisLabel::E(k));
        }
        for i in 0..rank {
            labels.push(BasisLabel::H(i));
        }
        for k in 0..n {
            labels.push(BasisLabel::F(k));
        }

        let model = NilpotentModel::build(&rs);
        let mut partial: HashMap<(usize, usize), SparseVec> = HashMap::new();
        let e = |k: usize| k;
        let h = |i: usize| n + i;
        let f = |k: usize| n + rank + k;

        // Cartan rows: [h_i, e_a] = <a, a_i^v> e_a, [h_i, f_a] = -<a, a_i^v> f_a.
        for i in 0..rank {
            for j in 0..rank {
                partial.insert((h(i), h(j)), Vec::new());
            }
            for (k, root) in rs.positive().iter().enumerate() {
                let c = rs.coroot_pairing(i, root);
                partial.insert((h(i), e(k)), sparse(e(k), Rat::from_int(c)));
                partial.insert((h(i), f(k)), sparse(f(k), Rat::from_int(-c)));
                partial.insert((e(k), h(i)), sparse(e(k), Rat::from_int(-c)));
                partial.insert((f(k), h(i)), sparse(f(k), Rat::from_int(c)));
            }
        }

        // Nilpotent rows from the word model; the same constants serve the
        // lowering side because both are presented by the same relations.
        for a in 0..n {
            for b in 0..n {
                let sum: Root = rs.positive()[a]
                    .iter()
                    .zip(&rs.positive()[b])
                    .map(|(x, y)| x + y)
                    .collect();
                let nab = if rs.is_positive_root(&sum) {
                    model.pair_constant(&rs, a, b)
                } else {
                    Rat::from_int(0)
                };
                let target = rs.root_index(&sum);
                partial.insert(
                    (e(a), e(b)),
                    target.map(|t| sparse(e(t), nab.clone())).unwrap_or_default(),
                );
                partial.insert(
                    (f(a), f(b)),
                    target.map(|t| sparse(f(t), nab)).unwrap_or_default(),
                );
            }
        }

        // Simple mixed brackets: [e_i, f_j] = delta_ij h_i in the word basis.
        for (a, ra) in rs.positive().iter().enumerate() {
            if RootSystem::height(ra) != 1 {
                continue;
            }
            for (b, rb) in rs.positive().iter().enumerate() {
                if RootSystem::height(rb) != 1 {
                    continue;
                }
                let v = if ra == rb {
                    let i = ra.iter().position(|&c| c == 1).unwrap();
                    sparse(h(i), Rat::from_int(1))
                } else {
                    Vec::new()
                };
                partial.insert((e(a), f(b)), negate(&v, false));
                partial.insert((f(b), e(a)), negate(&v, true));
            }
        }

        // Mixed brackets by total height, rewriting the higher side through a
        // known decomposition and the Jacobi identity.
        let max_ht = rs.positive().iter().map(|r| RootSystem::height(r)).max().unwrap();
        for total in 3..=(2 * max_ht) {
            for (a, ra) in rs.positive().iter().enumerate() {
                for (b, rb) in rs.positive().iter().enumerate() {
                    let (ha, hb) = (RootSystem::height(ra), RootSystem::height(rb));
                    if ha + hb != total || partial.contains_key(&(e(a), f(b))) {
                        continue;
                    }
                    let v = if ha >= 2 {
                        // e_a = (1/N)[e_c, e_i]:
                        // [e_a, f_b] = (1/N)([e_c, [e_i, f_b]] - [e_i, [e_c, f_b]]).
                        let (c, i, nrec) = decompose(&rs, &partial, a, &e);
                        let t1 = bracket_with(&partial, e(c), &lookup(&partial, e(i), f(b)));
                        let t2 = bracket_with(&partial, e(i), &lookup(&partial, e(c), f(b)));
                        scale(&sub(&t1, &t2), &nrec)
                    } else {
                        // f_b = (1/N)[f_c, f_j]:
                        // [e_a, f_b] = (1/N)([[e_a, f_c], f_j] + [f_c, [e_a, f_j]]).
                        let (c, j, nrec) = decompose(&rs, &partial, b, &f);
                        let t1 = bracket_right(&partial, &lookup(&partial, e(a), f(c)), f(j));
                        let t2 = bracket_with(&partial, f(c), &lookup(&partial, e(a), f(j)));
                        scale(&add(&t1, &t2), &nrec)
                    };
                    partial.insert((f(b), e(a)), negate(&v, true));
                    partial.insert((e(a), f(b)), v);
                }
            }
        }

        // Rescale the lowering basis so [e_a, f_a] = t_a = sum m_i d_i h_i.
        let mut scale_f = vec![Rat::from_int(1); n];
        for (a, root) in rs.positive().iter().enumerate() {
            let v = lookup(&partial, e(a), f(a));
            let t_a: Vec<Rat> = (0..rank)
                .map(|i| Rat::from_int(root[i] * rs.d()[i]))
                .collect();
            // v must be proportional to t_a, in particular Cartan-valued.
            let mut ratio: Option<Rat> = None;
            let mut dense = vec![Rat::from_int(0); dim];
            for (idx, c) in &v {
                if !matches!(labels[*idx], BasisLabel::H(_)) {
                    return Err(LieError::JacobiFailure(
                        "pairing bracket has support outside the Cartan".into(),
                    ));
                }
                dense[*idx] = c.clone();
            }
            for i in 0..rank {
                if t_a[i].is_zero() {
                    if !dense[h(i)].is_zero() {
                        return Err(LieError::JacobiFailure(
                            "pairing bracket is not proportional to the dual coroot".into(),
                        ));
                    }
                    continue;
                }
                let r = dense[h(i)].clone() * t_a[i].clone().try_inv().unwrap();
                if let Some(prev) = &ratio {
                    if *prev != r {
                        return Err(LieError::JacobiFailure(
                            "pairing bracket is not proportional to the dual coroot".into(),
                        ));
                    }
                }
                ratio = Some(r);
            }
            let r = ratio.ok_or_else(|| {
                LieError::JacobiFailure("pairing bracket vanished on a root".into())
            })?;
            if r.is_zero() {
                return Err(LieError::JacobiFailure("degenerate pairing bracket".into()));
            }
            scale_f[a] = r.try_inv().unwrap();
        }

        // Basis change multipliers: s = 1 on e and h rows, s = scale_f on f.
        let mult = |idx: usize| -> Rat {
            match labels[idx] {
                BasisLabel::F(k) => scale_f[k].clone(),
                _ => Rat::from_int(1),
            }
        };
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for ((i, j), v) in &partial {
            let mut out = Vec::new();
            for (bidx, c) in v {
                let coef = mult(*i) * mult(*j) * c.clone() * mult(*bidx).try_inv().unwrap();
                if !coef.is_zero() {
                    out.push((*bidx, coef));
                }
            }
            out.sort_by_key(|(bidx, _)| *bidx);
            table[*i][*j] = out;
        }

        // Invariant form: <e_a, f_b> = delta, <h_i, h_j> = a_ij / d_j.
        let mut gram = vec![vec![Rat::from_int(0); dim]; dim];
        for a in 0..n {
            gram[e(a)][f(a)] = Rat::from_int(1);
            gram[f(a)][e(a)] = Rat::from_int(1);
        }
        for i in 0..rank {
            for j in 0..rank {
                gram[h(i)][h(j)] = Rat::new(rs.cartan()[i][j], rs.d()[j]);
            }
        }

        let alg = LieAlgebra { rs, dim, labels, table, gram };
        alg.verify()?;
        Ok(alg)
    }

    /// Exhaustive consistency checks: antisymmetry, the Jacobi identity on
    /// every basis triple, and invariance of the bilinear form.
    fn verify(&self) -> Result<(), LieError> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                let lhs = self.bracket_basis(i, j);
                let rhs = negate(&self.bracket_basis(j, i), true);
                if lhs != rhs {
                    return Err(LieError::JacobiFailure(format!(
                        "bracket table is not antisymmetric at ({i}, {j})"
                    )));
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let mut acc = self.bracket_sparse(&self.bracket_basis(i, j), &sparse(k, Rat::from_int(1)));
                    acc = add(&acc, &self.bracket_sparse(&self.bracket_basis(j, k), &sparse(i, Rat::from_int(1))));
                    acc = add(&acc, &self.bracket_sparse(&self.bracket_basis(k, i), &sparse(j, Rat::from_int(1))));
                    if !acc.is_empty() {
                        return Err(LieError::JacobiFailure(format!(
                            "Jacobi identity fails on basis triple ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let lhs = self.form_sparse(&self.bracket_basis(i, j), &sparse(k, Rat::from_int(1)));
                    let rhs = self.form_sparse(&sparse(i, Rat::from_int(1)), &self.bracket_basis(j, k));
                    if lhs != rhs {
                        return Err(LieError::JacobiFailure(format!(
                            "form invariance fails on basis triple ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn roots(&self) -> &RootSystem {
        &self.rs
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn label(&self, idx: usize) -> BasisLabel {
        self.labels[idx]
    }

    pub fn e_index(&self, k: usize) -> usize {
        k
    }

    pub fn h_index(&self, i: usize) -> usize {
        self.rs.num_positive() + i
    }

    pub fn f_index(&self, k: usize) -> usize {
        self.rs.num_positive() + self.rank() + k
    }

    /// Index of the basis vector carrying the given weight for the adjoint
    /// Cartan action; the Cartan itself has weight zero.
    pub fn weight_of(&self, idx: usize) -> Vec<i64> {
        match self.labels[idx] {
            BasisLabel::E(k) => self.rs.positive()[k].clone(),
            BasisLabel::H(_) => vec![0; self.rank()],
            BasisLabel::F(k) => self.rs.positive()[k].iter().map(|c| -c).collect(),
        }
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        self.table[i][j].clone()
    }

    fn bracket_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc: HashMap<usize, Rat> = HashMap::new();
        for (i, ci) in x {
            for (j, cj) in y {
                for (b, c) in &self.table[*i][*j] {
                    let entry = acc.entry(*b).or_insert_with(|| Rat::from_int(0));
                    *entry = entry.clone() + ci.clone() * cj.clone() * c.clone();
                }
            }
        }
        collect(acc)
    }

    fn form_sparse(&self, x: &SparseVec, y: &SparseVec) -> Rat {
        let mut s = Rat::from_int(0);
        for (i, ci) in x {
            for (j, cj) in y {
                s = s + ci.clone() * cj.clone() * self.gram[*i][*j].clone();
            }
        }
        s
    }

    /// Bracket of dense coefficient vectors over any scalar ring.
    pub fn bracket<S: Scalar>(&self, x: &[S], y: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for (i, ci) in x.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, cj) in y.iter().enumerate() {
                if cj.is_zero() {
                    continue;
                }
                for (b, c) in &self.table[i][j] {
                    out[*b] = out[*b].clone() + ci.clone() * cj.clone() * S::from_rat(c);
                }
            }
        }
        out
    }

    /// Invariant form of dense coefficient vectors.
    pub fn form<S: Scalar>(&self, x: &[S], y: &[S]) -> S {
        let mut s = S::zero();
        for (i, ci) in x.iter().enumerate() {
            for (j, cj) in y.iter().enumerate() {
                if !self.gram[i][j].is_zero() {
                    s = s + ci.clone() * cj.clone() * S::from_rat(&self.gram[i][j]);
                }
            }
        }
        s
    }

    pub fn gram(&self) -> &Vec<Vec<Rat>> {
        &self.gram
    }

    /// Matrix of ad(x) acting on the basis, columns indexed by input basis.
    pub fn ad_matrix<S: Scalar>(&self, x: &[S]) -> Vec<Vec<S>> {
        let mut m = vec![vec![S::zero(); self.dim]; self.dim];
        for (i, ci) in x.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (b, c) in &self.table[i][j] {
                    m[*b][j] = m[*b][j].clone() + ci.clone() * S::from_rat(c);
                }
            }
        }
        m
    }

    /// Dense basis vector.
    pub fn basis_vec<S: Scalar>(&self, idx: usize) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim];
        v[idx] = S::one();
        v
    }

    /// Form-dual `t_a` of a positive root, as a dense Cartan vector.
    pub fn t_alpha<S: Scalar>(&self, k: usize) -> Vec<S> {
        let root = &self.rs.positive()[k];
        let mut v = vec![S::zero(); self.dim];
        for i in 0..self.rank() {
            v[self.h_index(i)] = S::from_rat(&Rat::from_int(root[i] * self.rs.d()[i]));
        }
        v
    }
}

fn sparse(idx: usize, c: Rat) -> SparseVec {
    if c.is_zero() {
        Vec::new()
    } else {
        vec![(idx, c)]
    }
}

fn collect(acc: HashMap<usize, Rat>) -> SparseVec {
    let mut v: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_by_key(|(i, _)| *i);
    v
}

fn add(a: &SparseVec, b: &SparseVec) -> SparseVec {
    let mut acc: HashMap<usize, Rat> = a.iter().cloned().collect();
    for (i, c) in b {
        let entry = acc.entry(*i).or_insert_with(|| Rat::from_int(0));
        *entry = entry.clone() + c.clone();
    }
    collect(acc)
}

fn sub(a: &SparseVec, b: &SparseVec) -> SparseVec {
    add(a, &negate(b, true))
}

fn negate(v: &SparseVec, really: bool) -> SparseVec {
    if really {
        v.iter().map(|(i, c)| (*i, -c.clone())).collect()
    } else {
        v.clone()
    }
}

fn scale(v: &SparseVec, c: &Rat) -> SparseVec {
    v.iter()
        .map(|(i, x)| (*i, x.clone() * c.clone()))
        .filter(|(_, x)| !x.is_zero())
        .collect()
}

/// Finds a decomposition x_a = (1/N)[x_c, x_i] with i simple and N nonzero,
/// reading N off the already-known nilpotent rows.  Returns (c, i, 1/N).
fn decompose(
    rs: &RootSystem,
    partial: &HashMap<(usize, usize), SparseVec>,
    a: usize,
    side: &dyn Fn(usize) -> usize,
) -> (usize, usize, Rat) {
    let root = &rs.positive()[a];
    for (i, ri) in rs.positive().iter().enumerate() {
        if RootSystem::height(ri) != 1 {
            continue;
        }
        let rest: Root = root.iter().zip(ri).map(|(x, y)| x - y).collect();
        if rest.iter().any(|&c| c < 0) {
            continue;
        }
        if let Some(c) = rs.root_index(&rest) {
            let v = lookup(partial, side(c), side(i));
            if let Some((_, n)) = v.iter().find(|(idx, _)| *idx == side(a)) {
                return (c, i, n.clone().try_inv().unwrap());
            }
        }
    }
    panic!("no simple-root decomposition found for a composite root");
}

fn lookup(partial: &HashMap<(usize, usize), SparseVec>, i: usize, j: usize) -> SparseVec {
    partial
        .get(&(i, j))
        .unwrap_or_else(|| panic!("bracket ({i}, {j}) used before it was derived"))
        .clone()
}

/// [basis_i, v] with every needed table entry already present.
fn bracket_with(
    partial: &HashMap<(usize, usize), SparseVec>,
    i: usize,
    v: &SparseVec,
) -> SparseVec {
    let mut acc: HashMap<usize, Rat> = HashMap::new();
    for (j, cj) in v {
        for (b, c) in lookup(partial, i, *j) {
            let entry = acc.entry(b).or_insert_with(|| Rat::from_int(0));
            *entry = entry.clone() + cj.clone() * c;
        }
    }
    collect(acc)
}

/// [v, basis_j] with every needed table entry already present.
fn bracket_right(
    partial: &HashMap<(usize, usize), SparseVec>,
    v: &SparseVec,
    j: usize,
) -> SparseVec {
    let mut acc: HashMap<usize, Rat> = HashMap::new();
    for (i, ci) in v {
        for (b, c) in lookup(partial, *i, j) {
            let entry = acc.entry(b).or_insert_with(|| Rat::from_int(0));
            *entry = entry.clone() + ci.clone() * c;
        }
    }
    collect(acc)
}
