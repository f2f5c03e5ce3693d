//! Numeric group points and finite-difference translation operators.
//!
//! A point of the dual group is a pair of opposite-Borel factors, stored
//! through their adjoint matrices on the base algebra.  The pair acts on the
//! double componentwise; one-parameter displacement along a dual-basis
//! direction left- or right-translates the pair, and central differences of
//! the displaced r-matrix coefficients realize the translation operators of
//! the dynamical identity.

use nalgebra::DMatrix;
use rand::Rng;

use crate::liealg::{BasisLabel, LeviSplitting, LieAlgebra};
use crate::scalar::{Scalar, F64};
use crate::tensor::Tensor;

use super::ClassicalError;

/// A dual-group point: adjoint matrices of the raising and lowering factors.
#[derive(Clone, Debug)]
pub struct GroupPoint {
    pub plus: DMatrix<f64>,
    pub minus: DMatrix<f64>,
}

/// Result type of a pointwise r-matrix evaluator.
pub type EvalResult = Result<Tensor<F64>, ClassicalError>;

/// Adjoint matrix of a dense coefficient vector.
pub fn dense_ad(alg: &LieAlgebra, x: &[f64]) -> DMatrix<f64> {
    let xs: Vec<F64> = x.iter().map(|&v| F64(v)).collect();
    let m = alg.ad_matrix::<F64>(&xs);
    DMatrix::from_fn(alg.dim(), alg.dim(), |i, j| m[i][j].0)
}

/// Matrix exponential by scaling and squaring of the plain series.
pub fn exp_matrix(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    let norm = m.iter().map(|v| v.abs()).fold(0.0, f64::max) * n as f64;
    let k = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = m / 2f64.powi(k as i32);
    let mut sum = DMatrix::<f64>::identity(n, n);
    let mut term = DMatrix::<f64>::identity(n, n);
    for j in 1..=30 {
        term = (&term * &scaled) / j as f64;
        sum += &term;
        if term.iter().map(|v| v.abs()).fold(0.0, f64::max) < 1e-18 {
            break;
        }
    }
    for _ in 0..k {
        sum = &sum * &sum;
    }
    sum
}

/// Torus point with coordinates `t_j > 0`: the adjoint matrices are diagonal
/// with entries `t^{-w/2}` and `t^{+w/2}` on a basis vector of weight `w`.
pub fn from_torus(alg: &LieAlgebra, t: &[f64]) -> GroupPoint {
    assert_eq!(t.len(), alg.rank());
    assert!(t.iter().all(|&v| v > 0.0), "torus coordinates must be positive");
    let half_log: Vec<f64> = t.iter().map(|&v| 0.5 * v.ln()).collect();
    let mut plus = DMatrix::<f64>::zeros(alg.dim(), alg.dim());
    let mut minus = DMatrix::<f64>::zeros(alg.dim(), alg.dim());
    for idx in 0..alg.dim() {
        let w = alg.weight_of(idx);
        let s: f64 = w.iter().zip(&half_log).map(|(&wi, &hl)| wi as f64 * hl).sum();
        plus[(idx, idx)] = (-s).exp();
        minus[(idx, idx)] = s.exp();
    }
    GroupPoint { plus, minus }
}

/// Basis of the dual Lagrangian of a Levi subalgebra inside the double,
/// listed against the Levi basis it pairs with.  Each entry is the paired
/// Levi basis index in the base algebra together with the two components of
/// the dual vector.
pub fn lstar_basis(
    alg: &LieAlgebra,
    split: &LeviSplitting,
) -> Vec<(usize, (Vec<f64>, Vec<f64>))> {
    let dim = alg.dim();
    let zero = || vec![0.0; dim];
    let mut out = Vec::new();
    for &k in split.levi_pos() {
        // dual of e_k: (0, -f_k)
        let mut snd = zero();
        snd[alg.f_index(k)] = -1.0;
        out.push((alg.e_index(k), (zero(), snd)));
    }
    let binv = crate::liealg::cartan_block_inverse(alg);
    for i in 0..alg.rank() {
        // dual of h_i: (t^i/2, -t^i/2) with t^i the form-dual Cartan vector.
        let mut fst = zero();
        let mut snd = zero();
        for j in 0..alg.rank() {
            let v = binv[i][j].to_f64() / 2.0;
            fst[alg.h_index(j)] = v;
            snd[alg.h_index(j)] = -v;
        }
        out.push((alg.h_index(i), (fst, snd)));
    }
    for &k in split.levi_pos() {
        // dual of f_k: (e_k, 0)
        let mut fst = zero();
        fst[alg.e_index(k)] = 1.0;
        out.push((alg.f_index(k), (fst, zero())));
    }
    out
}

/// Exponential of a dual-Lagrangian element with the given coefficients over
/// [`lstar_basis`]; every such point satisfies the matching constraint of
/// the dual group.
pub fn from_dual_coords(alg: &LieAlgebra, split: &LeviSplitting, coords: &[f64]) -> GroupPoint {
    let basis = lstar_basis(alg, split);
    assert_eq!(coords.len(), basis.len());
    let dim = alg.dim();
    let mut a_plus = vec![0.0; dim];
    let mut a_minus = vec![0.0; dim];
    for (c, (_, (fst, snd))) in coords.iter().zip(&basis) {
        for i in 0..dim {
            a_plus[i] += c * fst[i];
            a_minus[i] += c * snd[i];
        }
    }
    GroupPoint {
        plus: exp_matrix(&dense_ad(alg, &a_plus)),
        minus: exp_matrix(&dense_ad(alg, &a_minus)),
    }
}

/// Random dual-group point with coordinates uniform in `[-scale, scale]`.
pub fn random_lstar_point(
    alg: &LieAlgebra,
    split: &LeviSplitting,
    rng: &mut impl Rng,
    scale: f64,
) -> GroupPoint {
    let n = lstar_basis(alg, split).len();
    let coords: Vec<f64> = (0..n).map(|_| rng.gen_range(-scale..scale)).collect();
    from_dual_coords(alg, split, &coords)
}

/// Complementary basis indices, raising then lowering.
pub fn u_basis(alg: &LieAlgebra, split: &LeviSplitting) -> Vec<usize> {
    split
        .nil_pos()
        .iter()
        .map(|&k| alg.e_index(k))
        .chain(split.nil_pos().iter().map(|&k| alg.f_index(k)))
        .collect()
}

fn inverse_of(
    m: &DMatrix<f64>,
    what: &str,
) -> Result<DMatrix<f64>, ClassicalError> {
    m.clone()
        .try_inverse()
        .ok_or_else(|| ClassicalError::SingularPoint(format!("{what} is not invertible")))
}

/// Canonical r-matrix of a Levi splitting at a dual-group point:
/// `sum_a (id - Ad)^{-1} e_a ^ f_a` over the complementary positive roots,
/// with `Ad` the adjoint action of the raising factor times the inverse
/// lowering factor.
pub fn sigma_group(
    alg: &LieAlgebra,
    split: &LeviSplitting,
    pt: &GroupPoint,
) -> Result<Tensor<F64>, ClassicalError> {
    let a = &pt.plus * inverse_of(&pt.minus, "lowering factor")?;
    let up: Vec<usize> = split.nil_pos().iter().map(|&k| alg.e_index(k)).collect();
    let n = up.len();
    let m = DMatrix::from_fn(n, n, |r, c| {
        let delta = if r == c { 1.0 } else { 0.0 };
        delta - a[(up[r], up[c])]
    });
    let minv = m.try_inverse().ok_or_else(|| {
        ClassicalError::SingularPoint("id - Ad is singular on the raising complement".into())
    })?;
    let mut out = Tensor::zero(alg.dim(), 2);
    for (c, &k) in split.nil_pos().iter().enumerate() {
        let f = alg.f_index(k);
        for r in 0..n {
            let v = minv[(r, c)];
            if v != 0.0 {
                out.add_term(vec![up[r], f], F64(v));
                out.add_term(vec![f, up[r]], F64(-v));
            }
        }
    }
    Ok(out)
}

fn form_f64(alg: &LieAlgebra, x: &[f64], y: &[f64]) -> f64 {
    let gram = alg.gram();
    let mut s = 0.0;
    for (i, xi) in x.iter().enumerate() {
        if *xi == 0.0 {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if *yj != 0.0 && !gram[i][j].is_zero() {
                s += xi * yj * gram[i][j].to_f64();
            }
        }
    }
    s
}

/// Splits a double vector `(x, y)` into its diagonal and dual-Lagrangian
/// parts; returns the diagonal coefficient vector and the two components of
/// the dual part.
pub fn split_pair(
    alg: &LieAlgebra,
    x: &[f64],
    y: &[f64],
) -> (Vec<f64>, (Vec<f64>, Vec<f64>)) {
    let dim = alg.dim();
    let mut m = vec![0.0; dim];
    let mut fst = vec![0.0; dim];
    let mut snd = vec![0.0; dim];
    for idx in 0..dim {
        let delta = x[idx] - y[idx];
        match alg.label(idx) {
            BasisLabel::E(_) => {
                fst[idx] = delta;
                m[idx] = y[idx];
            }
            BasisLabel::F(_) => {
                snd[idx] = -delta;
                m[idx] = x[idx];
            }
            BasisLabel::H(_) => {
                fst[idx] = delta / 2.0;
                snd[idx] = -delta / 2.0;
                m[idx] = x[idx] - delta / 2.0;
            }
        }
    }
    (m, (fst, snd))
}

/// The 2-form of the splitting at a dual-group point, on the complementary
/// basis of [`u_basis`]: pair the dual-Lagrangian part of one transported
/// basis vector against the diagonal part of the other through the
/// difference form of the double.  The companion scalar of the form is its
/// determinant over that basis; see [`omega_det`].
pub fn omega_group(
    alg: &LieAlgebra,
    split: &LeviSplitting,
    pt: &GroupPoint,
) -> Result<DMatrix<f64>, ClassicalError> {
    let plus_inv = inverse_of(&pt.plus, "raising factor")?;
    let minus_inv = inverse_of(&pt.minus, "lowering factor")?;
    let ub = u_basis(alg, split);
    let n = ub.len();
    let dim = alg.dim();
    let mut diag_parts = Vec::with_capacity(n);
    let mut dual_parts = Vec::with_capacity(n);
    for &i in &ub {
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        let vx = DMatrix::from_fn(dim, 1, |r, _| v[r]);
        let x: Vec<f64> = (&plus_inv * &vx).iter().cloned().collect();
        let y: Vec<f64> = (&minus_inv * &vx).iter().cloned().collect();
        let (m, wp) = split_pair(alg, &x, &y);
        diag_parts.push(m);
        dual_parts.push(wp);
    }
    let mut w = DMatrix::<f64>::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            // <(a,b),(m,m)> = <a,m> - <b,m> under the difference form.
            let (fst, snd) = &dual_parts[r];
            w[(r, c)] = form_f64(alg, fst, &diag_parts[c]) - form_f64(alg, snd, &diag_parts[c]);
        }
    }
    Ok(w)
}

/// Determinant of the 2-form over the complementary basis; vanishes exactly
/// on the singular locus of the splitting (at the identity in particular).
pub fn omega_det(w: &DMatrix<f64>) -> f64 {
    w.clone().determinant()
}

/// Skew 2-tensor on the complementary basis as a matrix over [`u_basis`].
pub fn tensor_as_matrix(
    alg: &LieAlgebra,
    split: &LeviSplitting,
    t: &Tensor<F64>,
) -> DMatrix<f64> {
    let ub = u_basis(alg, split);
    let n = ub.len();
    DMatrix::from_fn(n, n, |r, c| t.coeff(&[ub[r], ub[c]]).0)
}

/// Left displacement `x -> exp(-eps a) x` of the pair along a double vector.
pub fn left_displace(
    alg: &LieAlgebra,
    pt: &GroupPoint,
    dir: &(Vec<f64>, Vec<f64>),
    eps: f64,
) -> GroupPoint {
    let scale = |v: &[f64]| -> Vec<f64> { v.iter().map(|&c| -eps * c).collect() };
    GroupPoint {
        plus: exp_matrix(&dense_ad(alg, &scale(&dir.0))) * &pt.plus,
        minus: exp_matrix(&dense_ad(alg, &scale(&dir.1))) * &pt.minus,
    }
}

/// Right displacement `x -> x exp(eps a)` of the pair along a double vector.
pub fn right_displace(
    alg: &LieAlgebra,
    pt: &GroupPoint,
    dir: &(Vec<f64>, Vec<f64>),
    eps: f64,
) -> GroupPoint {
    let scale = |v: &[f64]| -> Vec<f64> { v.iter().map(|&c| eps * c).collect() };
    GroupPoint {
        plus: &pt.plus * exp_matrix(&dense_ad(alg, &scale(&dir.0))),
        minus: &pt.minus * exp_matrix(&dense_ad(alg, &scale(&dir.1))),
    }
}

fn central_diff(
    alg: &LieAlgebra,
    eval: &dyn Fn(&GroupPoint) -> EvalResult,
    up: &GroupPoint,
    down: &GroupPoint,
    step: f64,
) -> EvalResult {
    let hi = eval(up)?;
    let lo = eval(down)?;
    let _ = alg;
    Ok((hi - lo).map_coeffs(|c| F64(c.0 / (2.0 * step))))
}

/// Finite-difference realization of the coefficient differential: third slot
/// carries the Levi basis vector paired with the left-translation direction
/// used on the first two slots' coefficients.
pub fn dl_numeric(
    alg: &LieAlgebra,
    split: &LeviSplitting,
    eval: &dyn Fn(&GroupPoint) -> EvalResult,
    pt: &GroupPoint,
    step: f64,
) -> Result<Tensor<F64>, ClassicalError> {
    let mut out = Tensor::zero(alg.dim(), 3);
    for (lidx, dual) in lstar_basis(alg, split) {
        let up = left_displace(alg, pt, &dual, step);
        let down = left_displace(alg, pt, &dual, -step);
        let diff = central_diff(alg, eval, &up, &down, step)?;
        for (idx, c) in diff.terms() {
            out.add_term(vec![idx[0], idx[1], lidx], *c);
        }
    }
    Ok(out)
}

/// Dressing derivative along a Levi direction `a`: transport `a` to the
/// point by the inverse adjoint pair, keep the dual-Lagrangian part, and
/// take minus the right-translation derivative of the coefficients along it.
pub fn dress_numeric(
    alg: &LieAlgebra,
    split: &LeviSplitting,
    eval: &dyn Fn(&GroupPoint) -> EvalResult,
    pt: &GroupPoint,
    levi_idx: usize,
    step: f64,
) -> Result<Tensor<F64>, ClassicalError> {
    let dim = alg.dim();
    let plus_inv = inverse_of(&pt.plus, "raising factor")?;
    let minus_inv = inverse_of(&pt.minus, "lowering factor")?;
    let mut v = vec![0.0; dim];
    v[levi_idx] = 1.0;
    let vx = DMatrix::from_fn(dim, 1, |r, _| v[r]);
    let x: Vec<f64> = (&plus_inv * &vx).iter().cloned().collect();
    let y: Vec<f64> = (&minus_inv * &vx).iter().cloned().collect();
    let (_, mut wp) = split_pair(alg, &x, &y);
    let levi_mask = split.levi_mask(alg);
    for i in 0..dim {
        if !levi_mask[i] {
            debug_assert!(
                wp.0[i].abs() + wp.1[i].abs() < 1e-9,
                "transported Levi direction left the Levi double"
            );
            wp.0[i] = 0.0;
            wp.1[i] = 0.0;
        }
    }
    let up = right_displace(alg, pt, &wp, step);
    let down = right_displace(alg, pt, &wp, -step);
    let diff = central_diff(alg, eval, &up, &down, step)?;
    Ok(diff.map_coeffs(|c| F64(-c.0)))
}
