//! Eigenvalue calculus for the one-parameter r-matrix families.
//!
//! Each family applies a scalar function of the adjoint operator of the
//! point to the first leg of the split Casimir.  The operator is
//! diagonalizable with real positive spectrum at every admissible point, so
//! scalar functions act through Lagrange spectral projectors; no matrix
//! logarithm or power is ever formed.

use nalgebra::DMatrix;

use crate::liealg::{LeviSplitting, LieAlgebra};
use crate::scalar::{Rat, F64};
use crate::tensor::Tensor;

use super::group::GroupPoint;
use super::ClassicalError;

/// Distinct real eigenvalues with their spectral projectors.
pub struct Spectrum {
    pub eigs: Vec<f64>,
    pub projectors: Vec<DMatrix<f64>>,
}

impl Spectrum {
    /// Algebraic multiplicity of the eigenvalue nearest `v`, or zero.
    pub fn multiplicity_near(&self, v: f64, tol: f64) -> usize {
        self.eigs
            .iter()
            .zip(&self.projectors)
            .filter(|(&e, _)| (e - v).abs() <= tol * e.abs().max(1.0))
            .map(|(_, p)| p.trace().round() as usize)
            .sum()
    }
}

const CLUSTER_TOL: f64 = 1e-8;

/// Real positive spectrum of a diagonalizable matrix, with projectors.
pub fn real_spectrum(a: &DMatrix<f64>) -> Result<Spectrum, ClassicalError> {
    let n = a.nrows();
    let scale = a.iter().map(|v| v.abs()).fold(1.0, f64::max);
    let complex = a.complex_eigenvalues();
    let mut reals = Vec::with_capacity(n);
    for c in complex.iter() {
        if c.im.abs() > 1e-7 * scale {
            return Err(ClassicalError::NonRealSpectrum(format!(
                "eigenvalue {} + {}i",
                c.re, c.im
            )));
        }
        if c.re <= 1e-12 {
            return Err(ClassicalError::NonRealSpectrum(format!(
                "non-positive eigenvalue {}",
                c.re
            )));
        }
        reals.push(c.re);
    }
    reals.sort_by(|x, y| x.partial_cmp(y).unwrap());
    // Cluster nearby eigenvalues into single spectral points.
    let mut distinct: Vec<f64> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for &v in &reals {
        match distinct.last() {
            Some(&last) if (v - last).abs() <= CLUSTER_TOL * last.abs().max(1.0) => {
                *counts.last_mut().unwrap() += 1;
            }
            _ => {
                distinct.push(v);
                counts.push(1);
            }
        }
    }
    // Snap clusters onto exact unity: the fixed space of an adjoint point.
    for v in &mut distinct {
        if (*v - 1.0).abs() <= 1e-7 {
            *v = 1.0;
        }
    }
    let id = DMatrix::<f64>::identity(n, n);
    let mut projectors = Vec::with_capacity(distinct.len());
    for (i, &lam) in distinct.iter().enumerate() {
        let mut p = id.clone();
        for (j, &mu) in distinct.iter().enumerate() {
            if i != j {
                p = p * (a - &id * mu) / (lam - mu);
            }
        }
        projectors.push(p);
    }
    // Two rounds of Newton idempotency refinement plus partition-of-unity
    // redistribution clean the roundoff the interpolation products leave
    // behind when eigenvalues nearly collide.
    for _ in 0..2 {
        for p in &mut projectors {
            let p2 = &*p * &*p;
            *p = &p2 * 3.0 - &p2 * &*p * 2.0;
        }
        let mut sum = DMatrix::<f64>::zeros(n, n);
        for p in &projectors {
            sum += p;
        }
        let defect = &id - sum;
        for p in &mut projectors {
            let correction = &*p * &defect;
            *p += correction;
        }
    }
    // Diagonalizability check: the projector resolution must rebuild a.
    let mut rebuilt = DMatrix::<f64>::zeros(n, n);
    for (lam, p) in distinct.iter().zip(&projectors) {
        rebuilt += p * *lam;
    }
    if (&rebuilt - a).iter().map(|v| v.abs()).fold(0.0, f64::max) > 1e-6 * scale {
        return Err(ClassicalError::NotRegularSemisimple(
            "adjoint operator is not diagonalizable".into(),
        ));
    }
    Ok(Spectrum { eigs: distinct, projectors })
}

/// Applies a projector to the first leg of a 2-tensor.
pub fn apply_slot1(p: &DMatrix<f64>, t: &Tensor<F64>) -> Tensor<F64> {
    let mut out = Tensor::zero(t.dim(), 2);
    for (idx, c) in t.terms() {
        for r in 0..t.dim() {
            let v = p[(r, idx[0])] * c.0;
            if v != 0.0 {
                out.add_term(vec![r, idx[1]], F64(v));
            }
        }
    }
    out
}

fn coth(x: f64) -> f64 {
    1.0 / x.tanh()
}

/// Casimir 2-tensor over floats.
fn casimir_f64(alg: &LieAlgebra) -> Tensor<F64> {
    crate::liealg::standard_structures::<F64>(alg).casimir
}

fn adjoint_of(pt: &GroupPoint, inverted: bool) -> Result<DMatrix<f64>, ClassicalError> {
    let inv = |m: &DMatrix<f64>, what: &str| {
        m.clone()
            .try_inverse()
            .ok_or_else(|| ClassicalError::SingularPoint(format!("{what} is not invertible")))
    };
    Ok(if inverted {
        &pt.minus * inv(&pt.plus, "raising factor")?
    } else {
        &pt.plus * inv(&pt.minus, "lowering factor")?
    })
}

/// Two-pole family on the full dual group: scalar coefficient
/// `-nu coth(nu log m) + (1/2) coth(log m / 2)` on each eigenspace of the
/// adjoint operator away from its fixed space, applied to the split
/// Casimir; the fixed-space coefficient cancels in the joint limit.
pub fn rho_bfp(
    alg: &LieAlgebra,
    pt: &GroupPoint,
    nu: f64,
) -> Result<Tensor<F64>, ClassicalError> {
    let a = adjoint_of(pt, false)?;
    let spec = real_spectrum(&a)?;
    let mult1 = spec.multiplicity_near(1.0, CLUSTER_TOL);
    if mult1 != alg.rank() {
        return Err(ClassicalError::SpectralPole(format!(
            "fixed space has dimension {mult1}, expected {}",
            alg.rank()
        )));
    }
    let t = casimir_f64(alg);
    let mut out = Tensor::zero(alg.dim(), 2);
    for (m, p) in spec.eigs.iter().zip(&spec.projectors) {
        if *m == 1.0 {
            continue;
        }
        let s = m.ln();
        let coeff = -nu * coth(nu * s) + 0.5 * coth(s / 2.0);
        out = out + apply_slot1(p, &t).map_coeffs(|c| F64(coeff * c.0));
    }
    Ok(out)
}

/// Restricted two-pole family of a Levi splitting: the Levi block of the
/// Casimir carries the same two-pole coefficient, the complementary block
/// only the first pole, plus the constant skew half of the complementary
/// Casimir.
pub fn rho_bfp_levi(
    alg: &LieAlgebra,
    split: &LeviSplitting,
    pt: &GroupPoint,
    nu: f64,
) -> Result<Tensor<F64>, ClassicalError> {
    let a = adjoint_of(pt, false)?;
    let spec = real_spectrum(&a)?;
    let levi_mask = split.levi_mask(alg);
    let t = casimir_f64(alg);
    let mut t_levi = Tensor::zero(alg.dim(), 2);
    for (idx, c) in t.terms() {
        if levi_mask[idx[0]] && levi_mask[idx[1]] {
            t_levi.add_term(idx.clone(), *c);
        }
    }
    let mut s_plus = Tensor::zero(alg.dim(), 2);
    let mut s_sym = Tensor::zero(alg.dim(), 2);
    for &k in split.nil_pos() {
        let (e, f) = (alg.e_index(k), alg.f_index(k));
        s_plus.add_term(vec![e, f], F64(1.0));
        s_sym.add_term(vec![e, f], F64(1.0));
        s_sym.add_term(vec![f, e], F64(1.0));
    }
    let mut out = s_plus.clone() - s_plus.transpose();
    out = out.map_coeffs(|c| F64(0.5 * c.0));
    for (m, p) in spec.eigs.iter().zip(&spec.projectors) {
        if *m == 1.0 {
            // The two-pole coefficient cancels on the fixed space, but the
            // single pole of the complementary block does not.
            let hit = apply_slot1(p, &s_sym);
            if hit.norm_inf() > 1e-9 {
                return Err(ClassicalError::SingularPoint(
                    "adjoint fixed space meets the complementary block".into(),
                ));
            }
            continue;
        }
        let s = m.ln();
        let two_pole = -nu * coth(nu * s) + 0.5 * coth(s / 2.0);
        let one_pole = -nu * coth(nu * s);
        out = out + apply_slot1(p, &t_levi).map_coeffs(|c| F64(two_pole * c.0));
        out = out + apply_slot1(p, &s_sym).map_coeffs(|c| F64(one_pole * c.0));
    }
    Ok(out)
}

/// Step-function family on the regular locus of the full dual group:
/// coefficient `-(1/2) coth(log m / 2) - nu sgn(log m)` on each non-fixed
/// eigenspace of the inverted adjoint operator, applied to the Casimir with
/// its fixed-block part removed.
pub fn rho_nu(
    alg: &LieAlgebra,
    pt: &GroupPoint,
    nu: f64,
) -> Result<Tensor<F64>, ClassicalError> {
    let a = adjoint_of(pt, true)?;
    let spec = real_spectrum(&a)?;
    let mult1 = spec.multiplicity_near(1.0, CLUSTER_TOL);
    if mult1 != alg.rank() {
        return Err(ClassicalError::NotRegularSemisimple(format!(
            "fixed space has dimension {mult1}, expected {}",
            alg.rank()
        )));
    }
    let t = casimir_f64(alg);
    let mut out = Tensor::zero(alg.dim(), 2);
    for (m, p) in spec.eigs.iter().zip(&spec.projectors) {
        if *m == 1.0 {
            continue;
        }
        let s = m.ln();
        let coeff = -(0.5 * coth(s / 2.0) + nu * s.signum());
        out = out + apply_slot1(p, &t).map_coeffs(|c| F64(coeff * c.0));
    }
    Ok(out)
}

/// Obstruction tensor of the two-pole family: `(4 nu^2 - 1)` times the
/// canonical obstruction of the standard skew r-matrix.
pub fn z_bfp(alg: &LieAlgebra, nu: f64) -> Tensor<F64> {
    super::torus::z_r0(alg).map_coeffs(|c: &Rat| F64((4.0 * nu * nu - 1.0) * c.to_f64()))
}
