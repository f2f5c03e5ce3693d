//! Word model for the positive nilpotent subalgebra.
//!
//! Bracket words in the generators are expanded inside the free associative
//! algebra and reduced modulo the span of the defining relations.  Each root
//! space is one-dimensional, so the reduction expresses any bracket as a
//! rational multiple of a chosen basis word.  All structure constants of the
//! nilpotent part are extracted this way; nothing is taken from tables.

use std::collections::BTreeMap;

use crate::scalar::{Rat, Scalar};

use super::roots::RootSystem;

/// Noncommutative polynomial in the generators, graded by letter counts.
type Word = Vec<u8>;
type Expansion = BTreeMap<Word, Rat>;

fn add_term(p: &mut Expansion, w: Word, c: Rat) {
    let entry = p.entry(w).or_insert_with(|| Rat::from_int(0));
    *entry = entry.clone() + c;
}

fn cleanup(p: &mut Expansion) {
    p.retain(|_, c| !c.is_zero());
}

fn mul(a: &Expansion, b: &Expansion) -> Expansion {
    let mut out = Expansion::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            add_term(&mut out, w, ca.clone() * cb.clone());
        }
    }
    cleanup(&mut out);
    out
}

fn commutator(a: &Expansion, b: &Expansion) -> Expansion {
    let mut out = mul(a, b);
    for (w, c) in mul(b, a) {
        add_term(&mut out, w, -c);
    }
    cleanup(&mut out);
    out
}

fn letter(i: u8) -> Expansion {
    let mut p = Expansion::new();
    p.insert(vec![i], Rat::from_int(1));
    p
}

/// Left-normed bracket [[..[x1,x2],x3]..,xk] of a word.
fn left_normed(word: &[u8]) -> Expansion {
    let mut acc = letter(word[0]);
    for &l in &word[1..] {
        acc = commutator(&acc, &letter(l));
    }
    acc
}

fn multidegree(word: &[u8], rank: usize) -> Vec<i64> {
    let mut d = vec![0i64; rank];
    for &l in word {
        d[l as usize] += 1;
    }
    d
}

/// All words with the given letter counts, in lexicographic order.
fn words_of_degree(deg: &[i64]) -> Vec<Word> {
    let mut out = Vec::new();
    let mut counts: Vec<i64> = deg.to_vec();
    let mut cur = Vec::new();
    fn rec(counts: &mut Vec<i64>, cur: &mut Word, out: &mut Vec<Word>) {
        if counts.iter().all(|&c| c == 0) {
            out.push(cur.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i] > 0 {
                counts[i] -= 1;
                cur.push(i as u8);
                rec(counts, cur, out);
                cur.pop();
                counts[i] += 1;
            }
        }
    }
    rec(&mut counts, &mut cur, &mut out);
    out
}

/// Row-reduced span with pivot bookkeeping, over a fixed monomial list.
struct Span {
    monomials: Vec<Word>,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Span {
    fn new(monomials: Vec<Word>) -> Self {
        Span { monomials, rows: Vec::new(), pivots: Vec::new() }
    }

    fn to_vec(&self, p: &Expansion) -> Vec<Rat> {
        let mut v = vec![Rat::from_int(0); self.monomials.len()];
        for (w, c) in p {
            let idx = self
                .monomials
                .binary_search(w)
                .expect("expansion monomial outside the graded component");
            v[idx] = c.clone();
        }
        v
    }

    /// Reduces v against the stored rows in place.
    fn reduce(&self, v: &mut [Rat]) {
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            if !v[piv].is_zero() {
                let f = v[piv].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x = x.clone() - f.clone() * r.clone();
                }
            }
        }
    }

    /// Inserts v if independent; returns whether the span grew.
    fn insert(&mut self, mut v: Vec<Rat>) -> bool {
        self.reduce(&mut v);
        match v.iter().position(|c| !c.is_zero()) {
            None => false,
            Some(piv) => {
                let lead = v[piv].clone();
                for x in v.iter_mut() {
                    *x = x.clone() * lead.try_inv().unwrap();
                }
                self.rows.push(v);
                self.pivots.push(piv);
                true
            }
        }
    }
}

/// One graded component of the quotient algebra.
struct Component {
    span: Span,
    /// Reduced coordinates of the basis word's bracket; None for a
    /// multidegree that is not a root (the component vanishes).
    basis: Option<(Word, Vec<Rat>)>,
}

pub struct NilpotentModel {
    rank: usize,
    components: BTreeMap<Vec<i64>, Component>,
    /// Chosen basis word for every positive root, in root order.
    pub basis_words: Vec<Word>,
}

impl NilpotentModel {
    pub fn build(rs: &RootSystem) -> Self {
        let rank = rs.rank();
        let mut serre: Vec<(Vec<i64>, Expansion)> = Vec::new();
        for i in 0..rank {
            for j in 0..rank {
                if i == j {
                    continue;
                }
                let m = 1 - rs.cartan()[i][j];
                let mut s = letter(j as u8);
                for _ in 0..m {
                    s = commutator(&letter(i as u8), &s);
                }
                let mut deg = vec![0i64; rank];
                deg[i] = m;
                deg[j] += 1;
                serre.push((deg, s));
            }
        }

        let mut components = BTreeMap::new();
        let mut basis_words = Vec::new();
        for root in rs.positive() {
            let comp = Self::component(rank, rs, root, &serre);
            basis_words.push(comp.basis.as_ref().expect("root space is nontrivial").0.clone());
            components.insert(root.clone(), comp);
        }
        // Non-root multidegrees reachable as sums of two roots must reduce to
        // zero; build those components too so brackets can be checked there.
        for a in rs.positive() {
            for b in rs.positive() {
                let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if !components.contains_key(&sum) && !rs.is_positive_root(&sum) {
                    let comp = Self::component(rank, rs, &sum, &serre);
                    assert!(comp.basis.is_none(), "unexpected nonzero component off the root lattice");
                    components.insert(sum, comp);
                }
            }
        }
        NilpotentModel { rank, components, basis_words }
    }

    fn component(
        _rank: usize,
        rs: &RootSystem,
        deg: &[i64],
        serre: &[(Vec<i64>, Expansion)],
    ) -> Component {
        let monomials = words_of_degree(deg);
        let mut span = Span::new(monomials);
        // The relation ideal in this degree: iterated brackets of letters
        // against each defining relation, in every order and interleaving.
        for (sdeg, s) in serre {
            let rest: Vec<i64> = deg.iter().zip(sdeg).map(|(a, b)| a - b).collect();
            if rest.iter().any(|&c| c < 0) {
                continue;
            }
            for w in words_of_degree(&rest) {
                let mut x = s.clone();
                for &l in &w {
                    x = commutator(&letter(l), &x);
                }
                let v = span.to_vec(&x);
                span.insert(v);
            }
        }
        let basis = if rs.is_positive_root(deg) {
            let mut chosen = None;
            for w in words_of_degree(deg) {
                let mut v = span.to_vec(&left_normed(&w));
                span.reduce(&mut v);
                if v.iter().any(|c| !c.is_zero()) {
                    chosen = Some((w, v));
                    break;
                }
            }
            Some(chosen.expect("all bracket words vanished on a root space"))
        } else {
            // Every bracket word must reduce to zero here.
            for w in words_of_degree(deg) {
                let mut v = span.to_vec(&left_normed(&w));
                span.reduce(&mut v);
                assert!(v.iter().all(|c| c.is_zero()), "nonzero component off the root system");
            }
            None
        };
        Component { span, basis }
    }

    /// Expresses a graded expansion as a multiple of the basis vector of its
    /// component.  Returns the scalar; zero when the component vanishes.
    fn express(&self, deg: &[i64], p: &Expansion) -> Rat {
        let comp = self.components.get(deg).expect("component was not built");
        let mut v = comp.span.to_vec(p);
        comp.span.reduce(&mut v);
        match &comp.basis {
            None => {
                assert!(v.iter().all(|c| c.is_zero()));
                Rat::from_int(0)
            }
            Some((_, b)) => {
                let k = b.iter().position(|c| !c.is_zero()).unwrap();
                let lambda = v[k].clone() * b[k].clone().try_inv().unwrap();
                // The quotient is one-dimensional: the reduction must be an
                // exact multiple of the basis vector.
                for (x, y) in v.iter().zip(b) {
                    assert_eq!(x.clone(), lambda.clone() * y.clone(), "root space reduction is inconsistent");
                }
                lambda
            }
        }
    }

    /// Structure constant N with [x_a, x_b] = N x_{a+b} in the word basis.
    pub fn pair_constant(&self, rs: &RootSystem, a: usize, b: usize) -> Rat {
        let ra = &rs.positive()[a];
        let rb = &rs.positive()[b];
        let sum: Vec<i64> = ra.iter().zip(rb).map(|(x, y)| x + y).collect();
        let pa = left_normed(&self.basis_words[a]);
        let pb = left_normed(&self.basis_words[b]);
        let prod = commutator(&pa, &pb);
        if prod.is_empty() {
            return Rat::from_int(0);
        }
        debug_assert_eq!(multidegree(prod.keys().next().unwrap(), self.rank), sum);
        self.express(&sum, &prod)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_basis_words_and_constants() {
        let rs = RootSystem::by_name("A2").unwrap();
        let model = NilpotentModel::build(&rs);
        // Roots in order: a1, a2, a1+a2; the composite basis word is the
        // lexicographically least word with nonvanishing bracket.
        assert_eq!(model.basis_words[2], vec![0, 1]);
        // [x_{a1}, x_{a2}] = +x_{a1+a2} since the basis word is [x1, x2].
        let n = model.pair_constant(&rs, 0, 1);
        assert_eq!(n, Rat::from_int(1));
        // [x, x] = 0 and sums off the root system vanish.
        assert!(model.pair_constant(&rs, 1, 1).is_zero());
        assert!(model.pair_constant(&rs, 2, 1).is_zero());
    }

    #[test]
    fn serre_relation_kills_triple_bracket() {
        let rs = RootSystem::by_name("A2").unwrap();
        let model = NilpotentModel::build(&rs);
        // [[x1,x2],x2] has multidegree (1,2), not a root: must vanish.
        let p = left_normed(&[0, 1, 1]);
        let zero = model.express(&vec![1, 2], &p);
        assert!(zero.is_zero());
    }

    #[test]
    fn g2_long_string_survives() {
        let rs = RootSystem::by_name("G2").unwrap();
        let model = NilpotentModel::build(&rs);
        assert_eq!(model.basis_words.len(), 6);
        // The highest root 2a1+3a2 has a nonzero basis word.
        let top = rs.root_index(&[2, 3]).unwrap();
        assert!(!model.basis_words[top].is_empty());
    }
}
