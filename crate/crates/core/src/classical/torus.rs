//! Closed torus forms and exact residuals.
//!
//! On the maximal torus the canonical r-matrix of a Levi splitting, the
//! 2-form it inverts, and the translation operator entering the dynamical
//! identity all have closed expressions over rational functions in the torus
//! coordinates `t_1 .. t_rank`, one coordinate per simple root.  Everything
//! in this file is exact.

use std::collections::BTreeMap;

use crate::liealg::{LeviSplitting, LieAlgebra};
use crate::scalar::{Poly, Rat, RatFun, Scalar, ScalarError, Vars, F64};
use crate::tensor::{alt, cyb, slot_bracket, Tensor};

/// Torus coordinate context `t_1 .. t_rank`.
pub fn torus_vars(rank: usize) -> Vars {
    let names: Vec<String> = (1..=rank).map(|i| format!("t{i}")).collect();
    Vars::new(&names)
}

/// Monomial `t^a = prod_i t_i^{a_i}` of a positive root, as a polynomial.
pub fn t_monomial(alg: &LieAlgebra, vars: &Vars, k: usize) -> Poly {
    let root = &alg.roots().positive()[k];
    let mono: Vec<u32> = root.iter().map(|&c| c as u32).collect();
    Poly::from_terms(vars, [(mono, Rat::from_int(1))])
}

fn root_coeff(alg: &LieAlgebra, vars: &Vars, k: usize) -> RatFun {
    // t^a / (t^a - 1): the torus coefficient of the canonical r-matrix.
    let ta = t_monomial(alg, vars, k);
    let den = ta.clone() - Poly::constant_in(vars, Rat::from_int(1));
    RatFun::new(ta, den).expect("t^a - 1 is nonzero")
}

/// Canonical r-matrix of a Levi splitting on the torus:
/// `sum_a t^a/(t^a - 1) e_a ^ f_a` over the complementary positive roots.
pub fn sigma_torus(alg: &LieAlgebra, split: &LeviSplitting) -> Tensor<RatFun> {
    sigma_torus_relative(alg, split.nil_pos())
}

/// Same closed form summed over an explicit set of positive roots; the
/// building block of the restriction chain between nested splittings.
pub fn sigma_torus_relative(alg: &LieAlgebra, roots: &[usize]) -> Tensor<RatFun> {
    let vars = torus_vars(alg.rank());
    let mut out = Tensor::zero(alg.dim(), 2);
    for &k in roots {
        let c = root_coeff(alg, &vars, k);
        out.add_term(vec![alg.e_index(k), alg.f_index(k)], c.clone());
        out.add_term(vec![alg.f_index(k), alg.e_index(k)], -c);
    }
    out
}

/// Nonzero entries of the torus 2-form on the complementary pair basis:
/// `omega(e_a, f_a) = 1 - 1/t^a`, extended antisymmetrically; all other
/// pairs of complementary basis vectors pair to zero.
pub fn omega_torus(
    alg: &LieAlgebra,
    split: &LeviSplitting,
) -> BTreeMap<(usize, usize), RatFun> {
    let vars = torus_vars(alg.rank());
    let mut out = BTreeMap::new();
    for &k in split.nil_pos() {
        let ta = t_monomial(alg, &vars, k);
        let num = ta.clone() - Poly::constant_in(&vars, Rat::from_int(1));
        let w = RatFun::new(num, ta).expect("t^a is nonzero");
        out.insert((alg.e_index(k), alg.f_index(k)), w.clone());
        out.insert((alg.f_index(k), alg.e_index(k)), -w);
    }
    out
}

/// Residual of the inversion identity between the canonical r-matrix and the
/// 2-form: for each complementary basis vector `v`, contracting the second
/// leg of the r-matrix with `omega(v, .)` must reproduce `v`.  Returns one
/// dense residual vector per complementary basis index.
pub fn sigma_omega_residual(
    alg: &LieAlgebra,
    split: &LeviSplitting,
    sigma: &Tensor<RatFun>,
    omega: &BTreeMap<(usize, usize), RatFun>,
) -> Vec<(usize, Vec<RatFun>)> {
    let mut rows = Vec::new();
    let u_indices: Vec<usize> = split
        .nil_pos()
        .iter()
        .flat_map(|&k| [alg.e_index(k), alg.f_index(k)])
        .collect();
    for &v in &u_indices {
        let mut acc = vec![RatFun::zero(); alg.dim()];
        for (idx, c) in sigma.terms() {
            if let Some(w) = omega.get(&(v, idx[1])) {
                acc[idx[0]] = acc[idx[0]].clone() + c.clone() * w.clone();
            }
        }
        acc[v] = acc[v].clone() - RatFun::one();
        rows.push((v, acc));
    }
    rows
}

/// Left-invariant differential of the coefficient functions along the torus:
/// `rho -> sum_j t_{a_j} (third slot) @ t_j d/dt_j rho`, with `t_{a_j}` the
/// form-dual Cartan vector of the j-th simple root.
pub fn dl_torus(alg: &LieAlgebra, rho: &Tensor<RatFun>) -> Tensor<RatFun> {
    let vars = torus_vars(alg.rank());
    let mut out = Tensor::zero(alg.dim(), 3);
    for (idx, c) in rho.terms() {
        for j in 0..alg.rank() {
            let name = vars.names()[j].clone();
            let d = c.derivative(&name) * RatFun::var_in(&vars, &name);
            if d.is_zero() {
                continue;
            }
            let tvec = alg.t_alpha::<RatFun>(j);
            for (h, hv) in tvec.iter().enumerate() {
                if !hv.is_zero() {
                    out.add_term(vec![idx[0], idx[1], h], d.clone() * hv.clone());
                }
            }
        }
    }
    out
}

/// `(delta @ id) rho` for the cobracket `delta(x) = [x @ 1 + 1 @ x, r0]`
/// of a fixed skew 2-tensor `r0`; the first leg of `rho` fans out into the
/// first two slots.
pub fn delta_otimes_id<S: Scalar>(
    alg: &LieAlgebra,
    r0: &Tensor<Rat>,
    rho: &Tensor<S>,
) -> Tensor<S> {
    let r0s: Tensor<S> = r0.map_coeffs(|c| S::from_rat(c));
    let mut cache: BTreeMap<usize, Tensor<S>> = BTreeMap::new();
    let mut out = Tensor::zero(alg.dim(), 3);
    for (idx, c) in rho.terms() {
        let d = cache.entry(idx[0]).or_insert_with(|| {
            let a: Vec<S> = alg.basis_vec(idx[0]);
            crate::tensor::ad_action(alg, &a, &r0s)
        });
        for (didx, dc) in d.terms() {
            out.add_term(vec![didx[0], didx[1], idx[1]], dc.clone() * c.clone());
        }
    }
    out
}

/// The invariant 3-tensor `(1/4) [t12, t23]` of the split Casimir `t`; the
/// obstruction constant attached to the standard skew r-matrix.
pub fn z_r0(alg: &LieAlgebra) -> Tensor<Rat> {
    let t: Tensor<Rat> = crate::liealg::standard_structures::<Rat>(alg).casimir;
    slot_bracket(alg, &t.at_slots(3, &[0, 1]), &t.at_slots(3, &[1, 2]))
        .scale_rat(&Rat::new(1, 4))
}

/// Full left side of the dynamical identity on the torus:
/// `CYB(rho) + Alt(dl rho) + Alt((delta @ id) rho)`.
pub fn pl_lhs_torus(alg: &LieAlgebra, rho: &Tensor<RatFun>) -> Tensor<RatFun> {
    let r0 = crate::liealg::standard_structures::<Rat>(alg).r_skew;
    cyb(alg, rho) + alt(&dl_torus(alg, rho)) + alt(&delta_otimes_id(alg, &r0, rho))
}

/// Residual of the non-dynamical-group form of the identity,
/// `CYB(rho) - Alt(dl rho) - z`, for r-matrices dynamical over the Cartan
/// subalgebra alone.
pub fn usual_residual_torus(
    alg: &LieAlgebra,
    rho: &Tensor<RatFun>,
    z: &Tensor<Rat>,
) -> Tensor<RatFun> {
    let zf: Tensor<RatFun> = z.map_coeffs(|c| RatFun::constant(c.clone()));
    cyb(alg, rho) - alt(&dl_torus(alg, rho)) - zf
}

/// Exact equivariance residuals along the Cartan directions: the dressing
/// term vanishes identically at torus points, leaving `[h_i @ 1 + 1 @ h_i,
/// rho]` for each Cartan basis vector.
pub fn cartan_invariance_residuals(
    alg: &LieAlgebra,
    rho: &Tensor<RatFun>,
) -> Vec<Tensor<RatFun>> {
    (0..alg.rank())
        .map(|i| {
            let a: Vec<RatFun> = alg.basis_vec(alg.h_index(i));
            crate::tensor::ad_action(alg, &a, rho)
        })
        .collect()
}

/// Evaluates a tensor of rational functions at numeric torus coordinates.
pub fn eval_ratfun_tensor(t: &Tensor<RatFun>, vals: &[f64]) -> Result<Tensor<F64>, ScalarError> {
    let fv: Vec<F64> = vals.iter().map(|&v| F64(v)).collect();
    let mut out = Tensor::zero(t.dim(), t.slots());
    for (idx, c) in t.terms() {
        out.add_term(idx.clone(), c.eval_generic::<F64>(&fv)?);
    }
    Ok(out)
}
