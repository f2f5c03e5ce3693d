//! Letter alphabet, rewriting tables, and the normal-ordering product.
//!
//! Elements live in the normal form E·c·F per tensor slot: a weakly
//! increasing word of E-letters, a rational-function coefficient in `q` and
//! the slot's `k` variables, and a weakly increasing word of F-letters.
//! The letter order is split-adapted: strict nilradical letters first (by
//! root height, then coordinates), Levi letters last.  Every rewriting rule
//! replaces a descending adjacent pair, and repeated application terminates
//! for each wired alphabet; confluence is exercised by the random-word
//! oracle in the tests rather than assumed.

use super::QuantumError;
use crate::liealg::{LeviSplitting, LieAlgebra};
use crate::scalar::{Poly, Rat, RatFun, Scalar, Vars};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Coefficient semantics for a built algebra.
///
/// Both modes use the same exact engine; the series mode records the
/// truncation order used when results are expanded in `hbar`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QMode {
    /// Exact rational functions in `q`.
    ExactQ,
    /// Results meant to be read modulo `hbar^{N+1}` via `q = exp(hbar/2)`.
    HbarSeries(u32),
}

/// A generator: `E(i)`/`F(i)` for the i-th simple root, or a Cartan
/// monomial `k_i^{pow}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    E(usize),
    F(usize),
    K(usize, i64),
}

/// One PBW letter: a positive root with its generator data.
#[derive(Clone, Debug)]
pub struct Letter {
    root: Vec<i64>,
    simple: Option<usize>,
    levi: bool,
}

impl Letter {
    pub fn root(&self) -> &[i64] {
        &self.root
    }

    pub fn is_levi(&self) -> bool {
        self.levi
    }

    pub fn simple_index(&self) -> Option<usize> {
        self.simple
    }
}

/// A rewriting alternative: rational coefficient, power of `q`, word.
type Alt = (Rat, i64, Vec<u8>);

/// The quantized enveloping algebra of a desk-scale split.
#[derive(Clone, Debug)]
pub struct QAlgebra {
    g: LieAlgebra,
    levi: Vec<usize>,
    mode: QMode,
    letters: Vec<Letter>,
    /// Letter index of each simple root.
    simple_letter: Vec<u8>,
    /// Descent rules: (x, y) with x > y in letter order maps x·y to a sum.
    rules: HashMap<(u8, u8), Vec<Alt>>,
    /// Expansion of each letter into words over simple letters.
    expansions: Vec<Vec<Alt>>,
}

impl QAlgebra {
    /// Builds the algebra for a Levi splitting.  Only the simply-laced
    /// ranks 1 and 2 are wired: A1, A1xA1, and A2.
    pub fn build(
        g: &LieAlgebra,
        split: &LeviSplitting,
        mode: QMode,
    ) -> Result<QAlgebra, QuantumError> {
        let rs = g.roots();
        if rs.rank() > 2 {
            return Err(QuantumError::UnsupportedRank(format!(
                "rank {} exceeds the desk scale",
                rs.rank()
            )));
        }
        if rs.d().iter().any(|&d| d != 1) {
            return Err(QuantumError::UnsupportedRank(
                "letter tables cover the simply-laced types A1, A1xA1, A2 only".into(),
            ));
        }
        let levi: Vec<usize> = split.subset().to_vec();
        // Split-adapted letter order: strict letters by (height, coords),
        // then Levi letters the same way.
        let in_levi = |r: &[i64]| -> bool {
            r.iter()
                .enumerate()
                .all(|(i, &c)| c == 0 || levi.contains(&i))
        };
        let mut roots: Vec<Vec<i64>> = rs.positive().to_vec();
        roots.sort_by_key(|r| (in_levi(r), r.iter().sum::<i64>(), std::cmp::Reverse(r.clone())));
        let letters: Vec<Letter> = roots
            .iter()
            .map(|r| {
                let simple = (r.iter().sum::<i64>() == 1)
                    .then(|| r.iter().position(|&c| c == 1).unwrap());
                Letter {
                    root: r.clone(),
                    simple,
                    levi: in_levi(r),
                }
            })
            .collect();
        let mut simple_letter = vec![0u8; rs.rank()];
        for (l, letter) in letters.iter().enumerate() {
            if let Some(i) = letter.simple {
                simple_letter[i] = l as u8;
            }
        }
        let mut alg = QAlgebra {
            g: g.clone(),
            levi,
            mode,
            letters,
            simple_letter,
            rules: HashMap::new(),
            expansions: Vec::new(),
        };
        alg.install_tables()?;
        Ok(alg)
    }

    /// Rewriting and expansion tables for the wired instances.
    fn install_tables(&mut self) -> Result<(), QuantumError> {
        let n = self.letters.len();
        self.expansions = (0..n)
            .map(|l| vec![(Rat::one(), 0, vec![l as u8])])
            .collect();
        if self.g.rank() == 1 {
            return Ok(());
        }
        let s0 = self.simple_letter[0];
        let s1 = self.simple_letter[1];
        if self.g.roots().num_positive() == 2 {
            // A1xA1: the two simple letters commute exactly.
            let (lo, hi) = if s0 < s1 { (s0, s1) } else { (s1, s0) };
            self.rules
                .insert((hi, lo), vec![(Rat::one(), 0, vec![lo, hi])]);
            return Ok(());
        }
        // A2 with a composite letter for the highest root.  The defining
        // relation is eT = e0·e1 − q^{-1}·e1·e0; with the Serre relations
        // it yields the exchange rules below, installed in whichever
        // direction descends for the current letter order.
        let t = (0..n as u8)
            .find(|&l| self.letters[l as usize].simple.is_none())
            .ok_or_else(|| {
                QuantumError::UnsupportedRank("missing composite letter for A2".into())
            })?;
        self.expansions[t as usize] = vec![
            (Rat::one(), 0, vec![s0, s1]),
            (-Rat::one(), -1, vec![s1, s0]),
        ];
        let pairs: Vec<(u8, u8, Vec<Alt>)> = vec![
            // e0·e1 = eT + q^{-1} e1·e0 and the reverse direction.
            (
                s0,
                s1,
                vec![(Rat::one(), 0, vec![t]), (Rat::one(), -1, vec![s1, s0])],
            ),
            (
                s1,
                s0,
                vec![(Rat::one(), 1, vec![s0, s1]), (-Rat::one(), 1, vec![t])],
            ),
            // e0·eT = q eT·e0 and eT·e1 = q e1·eT, with inverses.
            (s0, t, vec![(Rat::one(), 1, vec![t, s0])]),
            (t, s0, vec![(Rat::one(), -1, vec![s0, t])]),
            (s1, t, vec![(Rat::one(), -1, vec![t, s1])]),
            (t, s1, vec![(Rat::one(), 1, vec![s1, t])]),
        ];
        for (a, b, alts) in pairs {
            if a > b {
                self.rules.insert((a, b), alts);
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn levi_subset(&self) -> &[usize] {
        &self.levi
    }

    pub fn mode(&self) -> &QMode {
        &self.mode
    }

    pub fn rank(&self) -> usize {
        self.g.rank()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn simple_letter(&self, i: usize) -> u8 {
        self.simple_letter[i]
    }

    /// Total root weight of a letter word.
    pub fn word_weight(&self, seq: &[u8]) -> Vec<i64> {
        let mut w = vec![0i64; self.rank()];
        for &l in seq {
            for (i, c) in self.letters[l as usize].root.iter().enumerate() {
                w[i] += c;
            }
        }
        w
    }

    /// Root height of a letter word.
    pub fn word_height(&self, seq: &[u8]) -> i64 {
        seq.iter()
            .map(|&l| self.letters[l as usize].root.iter().sum::<i64>())
            .sum()
    }

    /// Number of strict (non-Levi) letters in a word.
    pub fn strict_count(&self, seq: &[u8]) -> usize {
        seq.iter()
            .filter(|&&l| !self.letters[l as usize].levi)
            .count()
    }

    /// Variable context for coefficients of `slots`-slot elements.
    pub fn coeff_vars(&self, slots: usize) -> Vars {
        let mut names = vec!["q".to_string()];
        for s in 1..=slots {
            for i in 0..self.rank() {
                names.push(kvar_name(i, s, slots));
            }
        }
        Vars::new(&names)
    }

    pub fn rf_one(&self, slots: usize) -> RatFun {
        RatFun::from_poly(Poly::constant_in(&self.coeff_vars(slots), Rat::one()))
    }

    /// `q^n` as a coefficient.
    pub fn rf_qpow(&self, slots: usize, n: i64) -> RatFun {
        rf_mono(&self.coeff_vars(slots), &[("q", n)])
    }

    /// A Cartan monomial `prod_i k_i^{p_i}` in one slot.
    pub fn rf_kmono(&self, slots: usize, slot: usize, pows: &[(usize, i64)]) -> RatFun {
        let vars = self.coeff_vars(slots);
        let named: Vec<(String, i64)> = pows
            .iter()
            .map(|&(i, p)| (kvar_name(i, slot, slots), p))
            .collect();
        let borrowed: Vec<(&str, i64)> = named.iter().map(|(n, p)| (n.as_str(), *p)).collect();
        rf_mono(&vars, &borrowed)
    }

    /// The commutator coefficient `(k_i − k_i^{-1})/(q − q^{-1})` in a slot.
    pub fn comm_coeff(&self, slots: usize, slot: usize, i: usize) -> RatFun {
        let vars = self.coeff_vars(slots);
        let k = kvar_name(i, slot, slots);
        // (k − 1/k)/(q − 1/q) = q(k² − 1) / (k(q² − 1)).
        let num = poly_mono(&vars, &[("q", 1), (k.as_str(), 2)]) - poly_mono(&vars, &[("q", 1)]);
        let den =
            poly_mono(&vars, &[(k.as_str(), 1), ("q", 2)]) - poly_mono(&vars, &[(k.as_str(), 1)]);
        RatFun::new(num, den).expect("nonzero denominator")
    }

    /// Collects the substitution that moves a slot's Cartan dependence
    /// across a word of the given root weight: `k_i ↦ q^{(a_i, w)} k_i`.
    fn shift_binds(
        &self,
        slots: usize,
        slot: usize,
        w: &[i64],
        binds: &mut HashMap<String, RatFun>,
    ) {
        let vars = self.coeff_vars(slots);
        let rs = self.g.roots();
        for i in 0..self.rank() {
            let mut unit = vec![0i64; self.rank()];
            unit[i] = 1;
            let n = rs.inner(&unit, w);
            if n != 0 {
                let k = kvar_name(i, slot, slots);
                let m = rf_mono(&vars, &[("q", n), (k.as_str(), 1)]);
                binds.insert(k, m);
            }
        }
    }

    /// Applies `k ↦ q^{(a,w)} k` shifts for several slots at once.
    fn shift_coeff(&self, c: &RatFun, slots: usize, shifts: &[(usize, Vec<i64>)]) -> RatFun {
        let mut binds = HashMap::new();
        for (slot, w) in shifts {
            if w.iter().any(|&x| x != 0) {
                self.shift_binds(slots, *slot, w, &mut binds);
            }
        }
        if binds.is_empty() {
            c.clone()
        } else {
            c.substitute(&binds).expect("monomial substitution")
        }
    }

    /// Straightens a one-sided letter word into a sum of sorted words.
    fn normalize_word(&self, seq: &[u8]) -> Vec<Alt> {
        let mut sorted: BTreeMap<Vec<u8>, HashMap<i64, Rat>> = BTreeMap::new();
        let mut work: Vec<Alt> = vec![(Rat::one(), 0, seq.to_vec())];
        while let Some((c, qp, w)) = work.pop() {
            match (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
                None => {
                    let by_q = sorted.entry(w).or_default();
                    let cell = by_q.entry(qp).or_insert_with(Rat::zero);
                    *cell = cell.clone() + c;
                }
                Some(i) => {
                    for (rc, rq, rw) in &self.rules[&(w[i], w[i + 1])] {
                        let mut nw = w[..i].to_vec();
                        nw.extend_from_slice(rw);
                        nw.extend_from_slice(&w[i + 2..]);
                        work.push((c.clone() * rc.clone(), qp + rq, nw));
                    }
                }
            }
        }
        let mut out = Vec::new();
        for (w, by_q) in sorted {
            for (qp, c) in by_q {
                if !c.is_zero() {
                    out.push((c, qp, w.clone()));
                }
            }
        }
        out
    }

    /// Expands composite letters of a word into simple-letter words.
    pub fn expand_letters(&self, seq: &[u8]) -> Vec<Alt> {
        let mut acc: Vec<Alt> = vec![(Rat::one(), 0, Vec::new())];
        for &l in seq {
            let mut next = Vec::new();
            for (c, qp, w) in &acc {
                for (ec, eq, ew) in &self.expansions[l as usize] {
                    let mut nw = w.clone();
                    nw.extend_from_slice(ew);
                    next.push((c.clone() * ec.clone(), qp + eq, nw));
                }
            }
            acc = next;
        }
        acc
    }

    /// Moves one F-generator right across an E-generator word.  Each result
    /// triple (c, E, F) stands for the normally placed product E·c·F.
    fn move_f(
        &self,
        a: u8,
        eseq: &[u8],
        slots: usize,
        slot: usize,
    ) -> Vec<(RatFun, Vec<u8>, Vec<u8>)> {
        if eseq.is_empty() {
            return vec![(self.rf_one(slots), Vec::new(), vec![a])];
        }
        let b = eseq[0];
        let rest = &eseq[1..];
        let mut out: Vec<(RatFun, Vec<u8>, Vec<u8>)> = self
            .move_f(a, rest, slots, slot)
            .into_iter()
            .map(|(c, mut e, f)| {
                e.insert(0, b);
                (c, e, f)
            })
            .collect();
        if a == b {
            let i = self.letters[a as usize].simple.expect("generator letter");
            let c = self.comm_coeff(slots, slot, i);
            let w = self.word_weight(rest);
            let shifted = self.shift_coeff(&c, slots, &[(slot, w)]);
            out.push((-shifted, rest.to_vec(), Vec::new()));
        }
        out
    }

    /// Crosses an F-generator word over an E-generator word, producing
    /// normally placed triples (c, E, F).
    fn cross(
        &self,
        fseq: &[u8],
        eseq: &[u8],
        slots: usize,
        slot: usize,
    ) -> Vec<(RatFun, Vec<u8>, Vec<u8>)> {
        if fseq.is_empty() {
            return vec![(self.rf_one(slots), eseq.to_vec(), Vec::new())];
        }
        let (rest, last) = fseq.split_at(fseq.len() - 1);
        let a = last[0];
        let mut out = Vec::new();
        for (ct, epart, fpart) in self.move_f(a, eseq, slots, slot) {
            for (c2, e2, f2) in self.cross(rest, &epart, slots, slot) {
                let shifted = self.shift_coeff(&ct, slots, &[(slot, self.word_weight(&f2))]);
                let mut f = f2;
                f.extend_from_slice(&fpart);
                out.push((c2 * shifted, e2, f));
            }
        }
        out
    }

    /// Normal-ordered product of two elements with equal slot counts.
    pub fn mul(&self, x: &QElem, y: &QElem) -> QElem {
        assert_eq!(x.slots, y.slots, "slot counts must agree");
        let slots = x.slots;
        let mut out = QElem::zero(slots);
        for (kx, cx) in &x.terms {
            for (ky, cy) in &y.terms {
                let mut slot_alts: Vec<Vec<SlotProd>> = Vec::with_capacity(slots);
                for s in 0..slots {
                    slot_alts.push(self.slot_products(&kx[s], &ky[s], slots, s + 1));
                }
                let mut partial = vec![Assembly {
                    factor: self.rf_one(slots),
                    key: Vec::new(),
                    eshifts: Vec::new(),
                    fshifts: Vec::new(),
                }];
                for (s, alts) in slot_alts.iter().enumerate() {
                    let mut next = Vec::new();
                    for asm in &partial {
                        for sp in alts {
                            let mut key = asm.key.clone();
                            key.push((sp.eword.clone(), sp.fword.clone()));
                            let mut eshifts = asm.eshifts.clone();
                            let mut fshifts = asm.fshifts.clone();
                            if sp.eshift.iter().any(|&x| x != 0) {
                                eshifts.push((s + 1, sp.eshift.clone()));
                            }
                            if sp.fshift.iter().any(|&x| x != 0) {
                                fshifts.push((s + 1, sp.fshift.clone()));
                            }
                            next.push(Assembly {
                                factor: asm.factor.clone() * sp.factor.clone(),
                                key,
                                eshifts,
                                fshifts,
                            });
                        }
                    }
                    partial = next;
                }
                for asm in partial {
                    let ca = self.shift_coeff(cx, slots, &asm.eshifts);
                    let cb = self.shift_coeff(cy, slots, &asm.fshifts);
                    out.add_term(asm.key, ca * cb * asm.factor);
                }
            }
        }
        out
    }

    /// All normal-ordered contributions of one slot's crossing, i.e. of
    /// (ex·fx)·(ey·fy) with the factors' Cartan parts handled outside.
    fn slot_products(
        &self,
        left: &SlotKey,
        right: &SlotKey,
        slots: usize,
        slot: usize,
    ) -> Vec<SlotProd> {
        let (ex, fx) = left;
        let (ey, fy) = right;
        let mut out = Vec::new();
        for (fc, fq, fgen) in self.expand_letters(fx) {
            for (ec, eq, egen) in self.expand_letters(ey) {
                for (cc, erem, frem) in self.cross(&fgen, &egen, slots, slot) {
                    let eshift = self.word_weight(&erem);
                    let fshift = self.word_weight(&frem);
                    let mut eall = ex.clone();
                    eall.extend_from_slice(&erem);
                    let mut fall = frem.clone();
                    fall.extend_from_slice(fy);
                    for (nc, nq, eword) in self.normalize_word(&eall) {
                        for (mc, mq, fword) in self.normalize_word(&fall) {
                            let scalar = fc.clone() * ec.clone() * nc.clone() * mc.clone();
                            let factor = cc.clone()
                                * self.rf_qpow(slots, fq + eq + nq + mq)
                                * RatFun::constant(scalar);
                            out.push(SlotProd {
                                eword: eword.clone(),
                                fword,
                                factor,
                                eshift: eshift.clone(),
                                fshift: fshift.clone(),
                            });
                        }
                    }
                }
            }
        }
        out
    }

    /// The unit element.
    pub fn one(&self, slots: usize) -> QElem {
        let mut out = QElem::zero(slots);
        out.add_term(vec![(Vec::new(), Vec::new()); slots], self.rf_one(slots));
        out
    }

    /// A single generator placed in one slot of a `slots`-slot element.
    pub fn generator_slot(&self, g: Gen, slots: usize, slot: usize) -> QElem {
        let mut key = vec![(Vec::new(), Vec::new()); slots];
        let coeff = match g {
            Gen::E(i) => {
                key[slot - 1].0.push(self.simple_letter[i]);
                self.rf_one(slots)
            }
            Gen::F(i) => {
                key[slot - 1].1.push(self.simple_letter[i]);
                self.rf_one(slots)
            }
            Gen::K(i, p) => self.rf_kmono(slots, slot, &[(i, p)]),
        };
        let mut out = QElem::zero(slots);
        out.add_term(key, coeff);
        out
    }

    pub fn generator(&self, g: Gen) -> QElem {
        self.generator_slot(g, 1, 1)
    }

    /// A bare letter monomial (coefficient one) placed in one slot.
    pub fn letter_elem(&self, l: u8, lower: bool, slots: usize, slot: usize) -> QElem {
        let mut key = vec![(Vec::new(), Vec::new()); slots];
        if lower {
            key[slot - 1].1.push(l);
        } else {
            key[slot - 1].0.push(l);
        }
        let mut out = QElem::zero(slots);
        out.add_term(key, self.rf_one(slots));
        out
    }

    /// Product of generators, multiplied left to right.
    pub fn word(&self, gens: &[Gen]) -> QElem {
        let mut acc = self.one(1);
        for &g in gens {
            acc = self.mul(&acc, &self.generator(g));
        }
        acc
    }

    /// Product of generators, multiplied right to left.  Same value as
    /// [`QAlgebra::word`]; the different association exercises independent
    /// rewrite sequences.
    pub fn word_foldr(&self, gens: &[Gen]) -> QElem {
        let mut acc = self.one(1);
        for &g in gens.iter().rev() {
            acc = self.mul(&self.generator(g), &acc);
        }
        acc
    }

    /// Normal form of a generator word.
    pub fn normal_order(&self, gens: &[Gen]) -> QElem {
        self.word(gens)
    }

    /// Letter display name, lowercase base for the F-copy.
    pub fn letter_name(&self, l: u8, lower: bool) -> String {
        let base = if lower { "f" } else { "e" };
        match self.letters[l as usize].simple {
            Some(i) => format!("{base}{i}"),
            None => format!("{base}T"),
        }
    }

    /// Renders an element against this algebra's letter names.
    pub fn show(&self, x: &QElem) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (key, c)) in x.terms.iter().enumerate() {
            if n > 0 {
                out.push_str("  +  ");
            }
            out.push_str(&format!("[{c}]"));
            for (s, (ew, fw)) in key.iter().enumerate() {
                if s > 0 {
                    out.push_str(" (x)");
                }
                if ew.is_empty() && fw.is_empty() {
                    out.push_str(" 1");
                    continue;
                }
                for &l in ew {
                    out.push(' ');
                    out.push_str(&self.letter_name(l, false));
                }
                for &l in fw {
                    out.push(' ');
                    out.push_str(&self.letter_name(l, true));
                }
            }
        }
        out
    }
}

/// One slot's contribution to a product term.
struct SlotProd {
    eword: Vec<u8>,
    fword: Vec<u8>,
    factor: RatFun,
    eshift: Vec<i64>,
    fshift: Vec<i64>,
}

/// Accumulator for the per-slot Cartesian assembly of a product.
struct Assembly {
    factor: RatFun,
    key: Vec<SlotKey>,
    eshifts: Vec<(usize, Vec<i64>)>,
    fshifts: Vec<(usize, Vec<i64>)>,
}

/// Per-slot (E-word, F-word) pair in normal form.
pub type SlotKey = (Vec<u8>, Vec<u8>);

/// A sparse sum of normal-form monomials with rational-function
/// coefficients, over a fixed number of tensor slots.
#[derive(Clone, Debug, PartialEq)]
pub struct QElem {
    slots: usize,
    terms: BTreeMap<Vec<SlotKey>, RatFun>,
}

impl QElem {
    pub fn zero(slots: usize) -> QElem {
        QElem {
            slots,
            terms: BTreeMap::new(),
        }
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<SlotKey>, &RatFun)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &[SlotKey]) -> Option<&RatFun> {
        self.terms.get(key)
    }

    /// Adds a single term, dropping the entry if the total cancels.
    pub fn add_term(&mut self, key: Vec<SlotKey>, c: RatFun) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let next = o.get().clone() + c;
                if next.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = next;
                }
            }
        }
    }

    pub fn add(&self, other: &QElem) -> QElem {
        assert_eq!(self.slots, other.slots);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &QElem) -> QElem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QElem {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, s: &RatFun) -> QElem {
        if s.is_zero() {
            return QElem::zero(self.slots);
        }
        self.map_coeffs(|c| c.clone() * s.clone())
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatFun) -> RatFun) -> QElem {
        let mut out = QElem::zero(self.slots);
        for (k, c) in &self.terms {
            let nc = f(c);
            if !nc.is_zero() {
                out.add_term(k.clone(), nc);
            }
        }
        out
    }

    /// Keeps only the terms the predicate accepts.
    pub fn filter_terms(&self, pred: impl Fn(&[SlotKey]) -> bool) -> QElem {
        let mut out = QElem::zero(self.slots);
        for (k, c) in &self.terms {
            if pred(k) {
                out.add_term(k.clone(), c.clone());
            }
        }
        out
    }
}

impl fmt::Display for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, c) in &self.terms {
            if !first {
                write!(f, "  +  ")?;
            }
            first = false;
            write!(f, "[{c}]")?;
            for (s, (ew, fw)) in key.iter().enumerate() {
                if s > 0 {
                    write!(f, " (x)")?;
                }
                if ew.is_empty() && fw.is_empty() {
                    write!(f, " 1")?;
                    continue;
                }
                for &l in ew {
                    write!(f, " E{l}")?;
                }
                for &l in fw {
                    write!(f, " F{l}")?;
                }
            }
        }
        Ok(())
    }
}

/// Coefficient variable name of `k_i` in a slot.
pub fn kvar_name(i: usize, slot: usize, slots: usize) -> String {
    if slots == 1 {
        format!("k{i}")
    } else {
        format!("k{i}.{slot}")
    }
}

/// A Laurent monomial over named variables, as a rational function.
pub fn rf_mono(vars: &Vars, pows: &[(&str, i64)]) -> RatFun {
    let num: Vec<(&str, u32)> = pows
        .iter()
        .filter(|&&(_, p)| p > 0)
        .map(|&(n, p)| (n, p as u32))
        .collect();
    let den: Vec<(&str, u32)> = pows
        .iter()
        .filter(|&&(_, p)| p < 0)
        .map(|&(n, p)| (n, (-p) as u32))
        .collect();
    RatFun::new(poly_mono(vars, &num), poly_mono(vars, &den)).expect("monomial denominator")
}

/// A monomial polynomial from named exponents.
pub fn poly_mono(vars: &Vars, pows: &[(&str, u32)]) -> Poly {
    let mut mono = vec![0u32; vars.len()];
    for &(name, p) in pows {
        let idx = vars.index_of(name).expect("known variable");
        mono[idx] += p;
    }
    Poly::from_terms(vars, [(mono, Rat::one())])
}

/// Rebuilds a polynomial in the target context, dropping variable names
/// that no term uses; every live variable must exist in the target.
pub fn poly_recontext(p: &Poly, target: &Vars) -> Poly {
    let names = p.vars().names();
    let map: Vec<Option<usize>> = names.iter().map(|n| target.index_of(n)).collect();
    let mut terms = Vec::new();
    for (m, c) in p.terms() {
        let mut mono = vec![0u32; target.len()];
        for (i, &e) in m.iter().enumerate() {
            if e > 0 {
                let j = map[i]
                    .unwrap_or_else(|| panic!("variable {} missing from target context", names[i]));
                mono[j] += e;
            }
        }
        terms.push((mono, c.clone()));
    }
    Poly::from_terms(target, terms)
}

/// Rebuilds a coefficient in the target context; see [`poly_recontext`].
pub fn rf_recontext(c: &RatFun, target: &Vars) -> RatFun {
    RatFun::new(poly_recontext(c.num(), target), poly_recontext(c.den(), target))
        .expect("nonzero denominator survives recontexting")
}
