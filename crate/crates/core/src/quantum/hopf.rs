//! Slot-wise Hopf operations: coproduct, antipode, counit, Cartan
//! projections, evaluation, and slot bookkeeping.
//!
//! Every operation acts on one tensor slot of a [`QElem`] and leaves the
//! others alone.  Results are assembled through the engine's product, so
//! each output is already in normal form.  On generators the coproduct is
//! `e ↦ e⊗k + 1⊗e`, `f ↦ f⊗1 + k⁻¹⊗f`, `k ↦ k⊗k`, with counit
//! `ε(e) = ε(f) = 0`, `ε(k) = 1` and antipode `S(e) = −e k⁻¹`,
//! `S(f) = −k f`, `S(k) = k⁻¹`.

use super::engine::{kvar_name, rf_mono, rf_recontext, Gen, QAlgebra, QElem};
use crate::scalar::{Rat, RatFun, Scalar};
use std::collections::HashMap;

/// Image of one slot's Cartan variables under a slot remap.
enum KImage {
    /// `k_i.s ↦ prod_j k_i.{t_j}^{p_j}` in the target context.
    Mono(Vec<(usize, i64)>),
    /// `k_i.s ↦ value[i]`, a constant per Cartan generator.
    Values(Vec<Rat>),
}

/// Rewrites a coefficient from the `old` slot context into the `new` one.
fn remap_coeff(
    alg: &QAlgebra,
    c: &RatFun,
    old_slots: usize,
    new_slots: usize,
    image: impl Fn(usize) -> KImage,
) -> RatFun {
    let target = alg.coeff_vars(new_slots);
    let mut binds: HashMap<String, RatFun> = HashMap::new();
    for s in 1..=old_slots {
        let img = image(s);
        for i in 0..alg.rank() {
            let old = kvar_name(i, s, old_slots);
            let value = match &img {
                KImage::Mono(pows) => {
                    let named: Vec<(String, i64)> = pows
                        .iter()
                        .map(|&(t, p)| (kvar_name(i, t, new_slots), p))
                        .collect();
                    let borrowed: Vec<(&str, i64)> =
                        named.iter().map(|(n, p)| (n.as_str(), *p)).collect();
                    rf_mono(&target, &borrowed)
                }
                KImage::Values(vals) => RatFun::constant(vals[i].clone()),
            };
            binds.insert(old, value);
        }
    }
    let substituted = c.substitute(&binds).expect("slot remap substitution");
    rf_recontext(&substituted, &target)
}

/// The coproduct of a generator, across target slots (a, b).
fn delta_gen(alg: &QAlgebra, g: Gen, slots: usize, a: usize, b: usize) -> QElem {
    match g {
        Gen::E(i) => alg
            .mul(
                &alg.generator_slot(Gen::E(i), slots, a),
                &alg.generator_slot(Gen::K(i, 1), slots, b),
            )
            .add(&alg.generator_slot(Gen::E(i), slots, b)),
        Gen::F(i) => alg.generator_slot(Gen::F(i), slots, a).add(&alg.mul(
            &alg.generator_slot(Gen::K(i, -1), slots, a),
            &alg.generator_slot(Gen::F(i), slots, b),
        )),
        Gen::K(i, p) => alg.mul(
            &alg.generator_slot(Gen::K(i, p), slots, a),
            &alg.generator_slot(Gen::K(i, p), slots, b),
        ),
    }
}

/// The coproduct of one letter, across target slots (a, b).
fn delta_letter(alg: &QAlgebra, l: u8, lower: bool, slots: usize, a: usize, b: usize) -> QElem {
    let mut out = QElem::zero(slots);
    for (c, qp, w) in alg.expand_letters(&[l]) {
        let mut acc = alg.one(slots).scale(&alg.rf_qpow(slots, qp));
        acc = acc.scale(&RatFun::constant(c));
        for &g in &w {
            let i = alg.letters()[g as usize]
                .simple_index()
                .expect("expanded word has generator letters");
            let gen = if lower { Gen::F(i) } else { Gen::E(i) };
            acc = alg.mul(&acc, &delta_gen(alg, gen, slots, a, b));
        }
        out = out.add(&acc);
    }
    out
}

/// Applies the coproduct to one slot, splitting it into (slot, slot + 1);
/// later slots shift up by one.
pub fn coproduct_slot(alg: &QAlgebra, x: &QElem, slot: usize) -> QElem {
    let n = x.slots();
    assert!((1..=n).contains(&slot), "slot out of range");
    let m = n + 1;
    let mut out = QElem::zero(m);
    for (key, c) in x.terms() {
        let c2 = remap_coeff(alg, c, n, m, |s| {
            if s < slot {
                KImage::Mono(vec![(s, 1)])
            } else if s == slot {
                KImage::Mono(vec![(slot, 1), (slot + 1, 1)])
            } else {
                KImage::Mono(vec![(s + 1, 1)])
            }
        });
        // Factor order: all E-parts, the coefficient, all F-parts.
        let mut acc = alg.one(m);
        for (s0, (ew, _)) in key.iter().enumerate() {
            let sold = s0 + 1;
            for &l in ew {
                let piece = if sold == slot {
                    delta_letter(alg, l, false, m, slot, slot + 1)
                } else {
                    let ns = if sold < slot { sold } else { sold + 1 };
                    alg.letter_elem(l, false, m, ns)
                };
                acc = alg.mul(&acc, &piece);
            }
        }
        acc = acc.scale(&c2);
        for (s0, (_, fw)) in key.iter().enumerate() {
            let sold = s0 + 1;
            for &l in fw {
                let piece = if sold == slot {
                    delta_letter(alg, l, true, m, slot, slot + 1)
                } else {
                    let ns = if sold < slot { sold } else { sold + 1 };
                    alg.letter_elem(l, true, m, ns)
                };
                acc = alg.mul(&acc, &piece);
            }
        }
        out = out.add(&acc);
    }
    out
}

/// The antipode of a generator within one slot.
fn antipode_gen(alg: &QAlgebra, g: Gen, slots: usize, slot: usize) -> QElem {
    match g {
        Gen::E(i) => alg
            .mul(
                &alg.generator_slot(Gen::E(i), slots, slot),
                &alg.generator_slot(Gen::K(i, -1), slots, slot),
            )
            .neg(),
        Gen::F(i) => alg
            .mul(
                &alg.generator_slot(Gen::K(i, 1), slots, slot),
                &alg.generator_slot(Gen::F(i), slots, slot),
            )
            .neg(),
        Gen::K(i, p) => alg.generator_slot(Gen::K(i, -p), slots, slot),
    }
}

/// The antipode of a one-sided letter word (applied in reverse order).
fn antipode_word(alg: &QAlgebra, seq: &[u8], lower: bool, slots: usize, slot: usize) -> QElem {
    let mut out = QElem::zero(slots);
    for (c, qp, w) in alg.expand_letters(seq) {
        let mut acc = alg.one(slots).scale(&alg.rf_qpow(slots, qp));
        acc = acc.scale(&RatFun::constant(c));
        for &g in w.iter().rev() {
            let i = alg.letters()[g as usize]
                .simple_index()
                .expect("expanded word has generator letters");
            let gen = if lower { Gen::F(i) } else { Gen::E(i) };
            acc = alg.mul(&acc, &antipode_gen(alg, gen, slots, slot));
        }
        out = out.add(&acc);
    }
    out
}

/// Applies the antipode to one slot.
pub fn antipode_slot(alg: &QAlgebra, x: &QElem, slot: usize) -> QElem {
    let n = x.slots();
    assert!((1..=n).contains(&slot), "slot out of range");
    let mut out = QElem::zero(n);
    for (key, c) in x.terms() {
        let c2 = remap_coeff(alg, c, n, n, |s| {
            if s == slot {
                KImage::Mono(vec![(slot, -1)])
            } else {
                KImage::Mono(vec![(s, 1)])
            }
        });
        // S reverses the slot's factors: other E-parts, S(F-word), the
        // remapped coefficient, S(E-word), other F-parts.
        let mut acc = alg.one(n);
        for (s0, (ew, _)) in key.iter().enumerate() {
            if s0 + 1 == slot {
                continue;
            }
            for &l in ew {
                acc = alg.mul(&acc, &alg.letter_elem(l, false, n, s0 + 1));
            }
        }
        let (sew, sfw) = &key[slot - 1];
        acc = alg.mul(&acc, &antipode_word(alg, sfw, true, n, slot));
        acc = alg.mul(&acc, &alg.one(n).scale(&c2));
        acc = alg.mul(&acc, &antipode_word(alg, sew, false, n, slot));
        for (s0, (_, fw)) in key.iter().enumerate() {
            if s0 + 1 == slot {
                continue;
            }
            for &l in fw {
                acc = alg.mul(&acc, &alg.letter_elem(l, true, n, s0 + 1));
            }
        }
        out = out.add(&acc);
    }
    out
}

/// Applies the counit to one slot and removes it; terms carrying letters
/// there are annihilated and the slot's `k` variables become 1.
pub fn counit_slot(alg: &QAlgebra, x: &QElem, slot: usize) -> QElem {
    let n = x.slots();
    assert!((1..=n).contains(&slot), "slot out of range");
    let one = vec![Rat::one(); alg.rank()];
    let mut out = QElem::zero(n - 1);
    for (key, c) in x.terms() {
        let (ew, fw) = &key[slot - 1];
        if !ew.is_empty() || !fw.is_empty() {
            continue;
        }
        let c2 = remap_coeff(alg, c, n, n - 1, |s| {
            if s < slot {
                KImage::Mono(vec![(s, 1)])
            } else if s == slot {
                KImage::Values(one.clone())
            } else {
                KImage::Mono(vec![(s - 1, 1)])
            }
        });
        let mut nk = key.clone();
        nk.remove(slot - 1);
        out.add_term(nk, c2);
    }
    out
}

/// Evaluates one slot's Cartan variables at the given values and removes
/// the slot.  Terms must carry no letters there.
pub fn eval_cartan_slot(alg: &QAlgebra, x: &QElem, slot: usize, vals: &[Rat]) -> QElem {
    let n = x.slots();
    assert!((1..=n).contains(&slot), "slot out of range");
    assert_eq!(vals.len(), alg.rank(), "one value per Cartan generator");
    let mut out = QElem::zero(n - 1);
    for (key, c) in x.terms() {
        let (ew, fw) = &key[slot - 1];
        assert!(
            ew.is_empty() && fw.is_empty(),
            "evaluated slot must be letterless"
        );
        let c2 = remap_coeff(alg, c, n, n - 1, |s| {
            if s < slot {
                KImage::Mono(vec![(s, 1)])
            } else if s == slot {
                KImage::Values(vals.to_vec())
            } else {
                KImage::Mono(vec![(s - 1, 1)])
            }
        });
        let mut nk = key.clone();
        nk.remove(slot - 1);
        out.add_term(nk, c2);
    }
    out
}

/// Projection to the terms whose chosen slot carries no strict letters;
/// Levi letters and the Cartan dependence survive.
pub fn hc_slot(alg: &QAlgebra, x: &QElem, slot: usize) -> QElem {
    x.filter_terms(|key| {
        let (ew, fw) = &key[slot - 1];
        alg.strict_count(ew) == 0 && alg.strict_count(fw) == 0
    })
}

/// Projection to the terms whose chosen slot carries no letters at all,
/// keeping only its Cartan part.
pub fn hc_h(_alg: &QAlgebra, x: &QElem, slot: usize) -> QElem {
    x.filter_terms(|key| {
        let (ew, fw) = &key[slot - 1];
        ew.is_empty() && fw.is_empty()
    })
}

/// Embeds an element into a wider slot context; `places[s]` is the target
/// slot (1-based) of source slot `s + 1`, and new slots stay letterless.
pub fn promote(alg: &QAlgebra, x: &QElem, new_slots: usize, places: &[usize]) -> QElem {
    let n = x.slots();
    assert_eq!(places.len(), n, "one target per source slot");
    let mut seen = vec![false; new_slots];
    for &p in places {
        assert!((1..=new_slots).contains(&p), "target slot out of range");
        assert!(!seen[p - 1], "target slots must be distinct");
        seen[p - 1] = true;
    }
    let mut out = QElem::zero(new_slots);
    for (key, c) in x.terms() {
        let c2 = remap_coeff(alg, c, n, new_slots, |s| {
            KImage::Mono(vec![(places[s - 1], 1)])
        });
        let mut nk = vec![(Vec::new(), Vec::new()); new_slots];
        for (s0, part) in key.iter().enumerate() {
            nk[places[s0] - 1] = part.clone();
        }
        out.add_term(nk, c2);
    }
    out
}

/// Multiplies slots (slot, slot + 1) together into one slot.
///
/// A coefficient is split across the two slots monomial by monomial, which
/// requires its denominator's Cartan part to be a single monomial; every
/// coefficient produced by the engine has that shape.
pub fn merge_slots(alg: &QAlgebra, x: &QElem, slot: usize) -> QElem {
    let n = x.slots();
    assert!(slot >= 1 && slot + 1 <= n, "slot pair out of range");
    let m = n - 1;
    let tvars = alg.coeff_vars(m);
    let mut out = QElem::zero(m);
    for (key, c) in x.terms() {
        // Split the denominator into a Cartan monomial and a q-part.
        let den = c.den();
        let dvars = den.vars().clone();
        let mut kexp: Option<Vec<u32>> = None;
        for (mono, _) in den.terms() {
            let ks: Vec<u32> = mono
                .iter()
                .enumerate()
                .map(|(i, &e)| if dvars.names()[i] == "q" { 0 } else { e })
                .collect();
            match &kexp {
                None => kexp = Some(ks),
                Some(prev) => assert_eq!(
                    prev, &ks,
                    "coefficient denominator must have a single Cartan monomial"
                ),
            }
        }
        let kexp = kexp.expect("nonzero denominator");
        // den = kmono * u(q); build u in the target context.
        let mut uq_terms = Vec::new();
        for (mono, r) in den.terms() {
            let mut t = vec![0u32; tvars.len()];
            if let Some(qi_old) = dvars.index_of("q") {
                let qi_new = tvars.index_of("q").unwrap();
                t[qi_new] = mono[qi_old];
            }
            uq_terms.push((t, r.clone()));
        }
        let uq = crate::scalar::Poly::from_terms(&tvars, uq_terms);
        // Denominator Cartan powers per (generator, source slot).
        let mut den_pows: HashMap<(usize, usize), i64> = HashMap::new();
        for (i, &e) in kexp.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = &dvars.names()[i];
            let (gi, s) = parse_kvar(alg, name, n);
            *den_pows.entry((gi, s)).or_insert(0) += e as i64;
        }
        // Per numerator monomial, assemble the merged product.
        let num = c.num();
        let nvars = num.vars().clone();
        for (mono, r) in num.terms() {
            let mut qpow = 0i64;
            let mut pows: HashMap<(usize, usize), i64> = HashMap::new();
            for (i, &e) in mono.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = &nvars.names()[i];
                if name == "q" {
                    qpow = e as i64;
                    continue;
                }
                let (gi, s) = parse_kvar(alg, name, n);
                *pows.entry((gi, s)).or_insert(0) += e as i64;
            }
            for (&k, &v) in &den_pows {
                *pows.entry(k).or_insert(0) -= v;
            }
            // Scalar piece: r q^{qpow} / u(q).
            let scalar = RatFun::new(
                crate::scalar::Poly::constant_in(&tvars, r.clone()),
                uq.clone(),
            )
            .expect("nonzero q-part")
                * rf_mono(&tvars, &[("q", qpow)]);
            let mut acc = alg.one(m).scale(&scalar);
            let kmono_elem = |s_old: usize| -> QElem {
                let s_new = if s_old <= slot + 1 {
                    s_old.min(slot)
                } else {
                    s_old - 1
                };
                let held: Vec<(usize, i64)> = (0..alg.rank())
                    .filter_map(|gi| {
                        let p = pows.get(&(gi, s_old)).copied().unwrap_or(0);
                        (p != 0).then_some((gi, p))
                    })
                    .collect();
                alg.one(m).scale(&alg.rf_kmono(m, s_new, &held))
            };
            for (s0, (ew, fw)) in key.iter().enumerate() {
                let s_old = s0 + 1;
                if s_old == slot || s_old == slot + 1 {
                    continue;
                }
                let s_new = if s_old < slot { s_old } else { s_old - 1 };
                for &l in ew {
                    acc = alg.mul(&acc, &alg.letter_elem(l, false, m, s_new));
                }
                acc = alg.mul(&acc, &kmono_elem(s_old));
                for &l in fw {
                    acc = alg.mul(&acc, &alg.letter_elem(l, true, m, s_new));
                }
            }
            for s_old in [slot, slot + 1] {
                let (ew, fw) = &key[s_old - 1];
                for &l in ew {
                    acc = alg.mul(&acc, &alg.letter_elem(l, false, m, slot));
                }
                acc = alg.mul(&acc, &kmono_elem(s_old));
                for &l in fw {
                    acc = alg.mul(&acc, &alg.letter_elem(l, true, m, slot));
                }
            }
            out = out.add(&acc);
        }
    }
    out
}

/// Parses a `k` variable name back into (generator index, slot).
fn parse_kvar(alg: &QAlgebra, name: &str, slots: usize) -> (usize, usize) {
    for s in 1..=slots {
        for i in 0..alg.rank() {
            if kvar_name(i, s, slots) == name {
                return (i, s);
            }
        }
    }
    panic!("unknown Cartan variable {name}");
}
