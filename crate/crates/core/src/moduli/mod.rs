//! Constant invariant solutions transverse to a Levi and their coefficient
//! chart.
//!
//! For a Levi splitting the positive roots outside the Levi fall into classes
//! with a common restriction to the center, and an invariant skew two-tensor
//! supported on the transverse root pairs carries one coefficient per class.
//! A torus point, one coordinate per complementary simple root, determines
//! such a tensor through the half-Cayley map of its class monomials; the
//! resulting coefficient systems are cut out by a quadric relation over
//! composable classes. [`iota`] and [`iota_prime`] convert between the two
//! charts, [`check_dgs`] tests the quadric and the interior condition,
//! [`rho_from_point`] builds the tensor itself, [`r_levi_at_char`] evaluates
//! the interpolating family at a multiplicative character, and
//! [`rigidity_solve`] expresses a transversally-closed deformation in the
//! coordinate directions of the family.

use std::collections::{BTreeMap, BTreeSet};

use crate::liealg::{LeviSplitting, LieAlgebra};
use crate::linalg;
use crate::scalar::{Rat, Scalar, F64};
use crate::tensor::{ad_action, cyb_bilinear, quotient_project, wedge_basis, Tensor};

/// Errors raised on the singular loci of the coefficient chart.
#[derive(Debug, Clone, thiserror::Error)]
pub enum ModuliError {
    /// A class monomial degenerates to 1, where the pair coefficient has a
    /// pole.
    #[error("torus point lies on the kernel locus: {0}")]
    KernelPoint(String),
    /// A coefficient takes one of the boundary values 1/2 or -1/2, outside
    /// the interior chart.
    #[error("coefficient system on the chart boundary: {0}")]
    BoundaryPoint(String),
    /// The input misses a class or sits where the family is undefined.
    #[error("not a regular input: {0}")]
    NotRegular(String),
    /// The pairing of the deformation with the family does not vanish
    /// transversally.
    #[error("deformation is not transversally closed: {0}")]
    NotACocycle(String),
}

/// Coefficient attached to a class monomial value x: (1 + x) / (2 (1 - x)).
pub fn pair_coefficient(x: &Rat) -> Result<Rat, ModuliError> {
    let den = Rat::one() - x.clone();
    let inv = den
        .try_inv()
        .map_err(|_| ModuliError::KernelPoint("class monomial equals 1".into()))?;
    Ok(Rat::new(1, 2) * (Rat::one() + x.clone()) * inv)
}

/// Inverse of [`pair_coefficient`]: c maps back to (2c - 1) / (2c + 1).
pub fn monomial_from_coefficient(c: &Rat) -> Result<Rat, ModuliError> {
    let two_c = Rat::from_int(2) * c.clone();
    let den = two_c.clone() + Rat::one();
    let num = two_c - Rat::one();
    let inv = den
        .try_inv()
        .map_err(|_| ModuliError::BoundaryPoint("coefficient equals -1/2".into()))?;
    let x = num * inv;
    if x.is_zero() {
        return Err(ModuliError::BoundaryPoint("coefficient equals 1/2".into()));
    }
    Ok(x)
}

fn validate_params(split: &LeviSplitting, t: &[Rat]) -> Result<(), ModuliError> {
    assert_eq!(
        t.len(),
        split.complement().len(),
        "one torus coordinate per complementary simple root"
    );
    for (s, v) in t.iter().enumerate() {
        if v.is_zero() {
            return Err(ModuliError::BoundaryPoint(format!(
                "torus coordinate {s} vanishes"
            )));
        }
    }
    Ok(())
}

/// Value of the monomial with the given class key at a torus point.
pub fn class_monomial(t: &[Rat], key: &[i64]) -> Result<Rat, ModuliError> {
    let mut out = Rat::one();
    for (v, &k) in t.iter().zip(key) {
        let p = v
            .pow(k as i32)
            .map_err(|_| ModuliError::BoundaryPoint("torus coordinate vanishes".into()))?;
        out = out * p;
    }
    Ok(out)
}

/// Coefficient system of a torus point, keyed by class coordinates.
pub fn iota(
    split: &LeviSplitting,
    t: &[Rat],
) -> Result<BTreeMap<Vec<i64>, Rat>, ModuliError> {
    validate_params(split, t)?;
    let mut out = BTreeMap::new();
    for q in split.quasi_roots() {
        let x = class_monomial(t, &q.key)?;
        if x.is_one() {
            return Err(ModuliError::KernelPoint(format!(
                "class {:?} has monomial 1",
                q.key
            )));
        }
        out.insert(q.key.clone(), pair_coefficient(&x)?);
    }
    Ok(out)
}

/// Torus point of a coefficient system, read off the classes of the
/// complementary simple roots.
pub fn iota_prime(
    split: &LeviSplitting,
    c: &BTreeMap<Vec<i64>, Rat>,
) -> Result<Vec<Rat>, ModuliError> {
    let n = split.complement().len();
    let mut out = Vec::with_capacity(n);
    for s in 0..n {
        let mut key = vec![0i64; n];
        key[s] = 1;
        let coeff = c.get(&key).ok_or_else(|| {
            ModuliError::NotRegular(format!("coefficient system misses class {key:?}"))
        })?;
        out.push(monomial_from_coefficient(coeff)?);
    }
    Ok(out)
}

/// Outcome of the quadric and interior tests on a coefficient system.
#[derive(Debug, Clone)]
pub struct QuadricReport {
    /// Every composable pair of classes satisfies the quadric relation.
    pub quadric_holds: bool,
    /// Every coefficient avoids the boundary values 1/2 and -1/2.
    pub interior: bool,
    pub violations: Vec<String>,
}

/// Checks the quadric relation c(a+b)(c(a) + c(b)) = c(a) c(b) + 1/4 over
/// all composable class pairs, and the interior condition on each class.
pub fn check_dgs(
    split: &LeviSplitting,
    c: &BTreeMap<Vec<i64>, Rat>,
) -> Result<QuadricReport, ModuliError> {
    let keys: Vec<Vec<i64>> = split.quasi_roots().iter().map(|q| q.key.clone()).collect();
    for key in &keys {
        if !c.contains_key(key) {
            return Err(ModuliError::NotRegular(format!(
                "coefficient system misses class {key:?}"
            )));
        }
    }
    let key_set: BTreeSet<&Vec<i64>> = keys.iter().collect();
    let half = Rat::new(1, 2);
    let quarter = Rat::new(1, 4);
    let mut violations = Vec::new();
    let mut interior = true;
    for key in &keys {
        let v = &c[key];
        if v.abs() == half {
            interior = false;
            violations.push(format!("class {key:?} sits on the boundary"));
        }
    }
    let mut quadric_holds = true;
    for i in 0..keys.len() {
        for j in i..keys.len() {
            let sum: Vec<i64> = keys[i].iter().zip(&keys[j]).map(|(a, b)| a + b).collect();
            if !key_set.contains(&sum) {
                continue;
            }
            let (ca, cb, cab) = (&c[&keys[i]], &c[&keys[j]], &c[&sum]);
            let lhs = cab.clone() * (ca.clone() + cb.clone());
            let rhs = ca.clone() * cb.clone() + quarter.clone();
            if lhs != rhs {
                quadric_holds = false;
                violations.push(format!(
                    "classes {:?} + {:?} break the quadric",
                    keys[i], keys[j]
                ));
            }
        }
    }
    Ok(QuadricReport { quadric_holds, interior, violations })
}

/// The invariant two-tensor of a torus point: each class contributes its pair
/// coefficient on every root pair in its fiber.
pub fn rho_from_point(
    g: &LieAlgebra,
    split: &LeviSplitting,
    t: &[Rat],
) -> Result<Tensor<Rat>, ModuliError> {
    validate_params(split, t)?;
    let mut out = Tensor::zero(g.dim(), 2);
    for q in split.quasi_roots() {
        let x = class_monomial(t, &q.key)?;
        if x.is_one() {
            return Err(ModuliError::KernelPoint(format!(
                "class {:?} has monomial 1",
                q.key
            )));
        }
        let coeff = pair_coefficient(&x)?;
        for &k in &q.fiber {
            let w = wedge_basis::<Rat>(g.dim(), g.e_index(k), g.f_index(k));
            out = out + w.scale_rat(&coeff);
        }
    }
    Ok(out)
}

/// Removable-pole coefficient -coth(x/2)/2 + 1/x of the Levi pairs.
fn levi_pair_coefficient(x: f64) -> f64 {
    if x.abs() < 1e-2 {
        -x / 12.0 + x * x * x / 720.0
    } else {
        1.0 / x - 0.5 / (x / 2.0).tanh()
    }
}

/// Value of the interpolating family at a multiplicative character, one
/// positive coordinate per simple root. Transverse pairs carry the same
/// half-Cayley coefficient as the torus family; Levi pairs carry the
/// pole-free combination of the additive pairing.
pub fn r_levi_at_char(
    g: &LieAlgebra,
    split: &LeviSplitting,
    m: &[f64],
) -> Result<Tensor<F64>, ModuliError> {
    let rank = g.rank();
    assert_eq!(m.len(), rank, "one character coordinate per simple root");
    let rs = g.roots();
    let monomial = |k: usize| -> f64 {
        rs.positive()[k]
            .iter()
            .zip(m)
            .map(|(&n, v)| v.powi(n as i32))
            .product()
    };
    let mut out = Tensor::zero(g.dim(), 2);
    for &k in split.nil_pos() {
        let x = monomial(k);
        if x <= 0.0 {
            return Err(ModuliError::NotRegular(
                "character coordinates must be positive".into(),
            ));
        }
        if (x - 1.0).abs() <= 1e-12 {
            return Err(ModuliError::NotRegular(format!(
                "transverse root {k} pairs to 1 with the character"
            )));
        }
        let coeff = 0.5 * (1.0 + x) / (1.0 - x);
        let w = wedge_basis::<F64>(g.dim(), g.e_index(k), g.f_index(k));
        out = out + w.map_coeffs(|c| F64(c.0 * coeff));
    }
    for &k in split.levi_pos() {
        let x = monomial(k);
        if x <= 0.0 {
            return Err(ModuliError::NotRegular(
                "character coordinates must be positive".into(),
            ));
        }
        let coeff = levi_pair_coefficient(x.ln());
        let w = wedge_basis::<F64>(g.dim(), g.e_index(k), g.f_index(k));
        out = out + w.map_coeffs(|c| F64(c.0 * coeff));
    }
    Ok(out)
}

/// First-order deformation of the torus family along one coordinate
/// direction, indexed like `split.complement()`.
pub fn tangent_direction(
    g: &LieAlgebra,
    split: &LeviSplitting,
    t: &[Rat],
    s: usize,
) -> Result<Tensor<Rat>, ModuliError> {
    validate_params(split, t)?;
    assert!(s < split.complement().len(), "direction index out of range");
    let ts_inv = t[s]
        .clone()
        .try_inv()
        .expect("validated coordinates are nonzero");
    let mut out = Tensor::zero(g.dim(), 2);
    for q in split.quasi_roots() {
        if q.key[s] == 0 {
            continue;
        }
        let x = class_monomial(t, &q.key)?;
        let den = Rat::one() - x.clone();
        let den_inv = den
            .try_inv()
            .map_err(|_| ModuliError::KernelPoint(format!("class {:?} has monomial 1", q.key)))?;
        let coeff =
            Rat::from_int(q.key[s]) * x * ts_inv.clone() * den_inv.clone() * den_inv;
        for &k in &q.fiber {
            let w = wedge_basis::<Rat>(g.dim(), g.e_index(k), g.f_index(k));
            out = out + w.scale_rat(&coeff);
        }
    }
    Ok(out)
}

/// Basis of the invariant skew two-tensors supported on the transverse root
/// spaces.
pub fn invariant_wedges(g: &LieAlgebra, split: &LeviSplitting) -> Vec<Tensor<Rat>> {
    let mut tv = Vec::new();
    for &k in split.nil_pos() {
        tv.push(g.e_index(k));
        tv.push(g.f_index(k));
    }
    let mut pairs = Vec::new();
    for a in 0..tv.len() {
        for b in (a + 1)..tv.len() {
            pairs.push((tv[a], tv[b]));
        }
    }
    let mut generators: Vec<usize> = (0..g.rank()).map(|i| g.h_index(i)).collect();
    for &j in split.levi_pos() {
        generators.push(g.e_index(j));
        generators.push(g.f_index(j));
    }

    let mut rows = Vec::new();
    for &z in &generators {
        let mut unit = vec![Rat::zero(); g.dim()];
        unit[z] = Rat::one();
        let mut images = Vec::with_capacity(pairs.len());
        for &(a, b) in &pairs {
            images.push(ad_action(g, &unit, &wedge_basis::<Rat>(g.dim(), a, b)));
        }
        for &(a, b) in &pairs {
            let row: Vec<Rat> = images.iter().map(|im| im.coeff(&[a, b])).collect();
            rows.push(row);
        }
    }
    linalg::kernel_basis(&rows, pairs.len())
        .into_iter()
        .map(|v| {
            let mut w = Tensor::zero(g.dim(), 2);
            for (coeff, &(a, b)) in v.iter().zip(&pairs) {
                if !coeff.is_zero() {
                    w = w + wedge_basis::<Rat>(g.dim(), a, b).scale_rat(coeff);
                }
            }
            w
        })
        .collect()
}

/// Coordinates of the moduli tangent solve.
#[derive(Debug, Clone)]
pub struct RigidityOutcome {
    /// Components of the deformation along the coordinate directions.
    pub tau: Vec<Rat>,
    /// Dimension of the space of invariant wedges whose pairing with the
    /// family vanishes transversally.
    pub kernel_dim: usize,
}

fn tensor_coordinates(ts: &[&Tensor<Rat>]) -> (Vec<Vec<usize>>, Vec<Vec<Rat>>) {
    let mut keys = BTreeSet::new();
    for t in ts {
        for (k, _) in t.terms() {
            keys.insert(k.clone());
        }
    }
    let keys: Vec<Vec<usize>> = keys.into_iter().collect();
    let cols = ts
        .iter()
        .map(|t| keys.iter().map(|k| t.coeff(k)).collect())
        .collect();
    (keys, cols)
}

/// Expresses a transversally-closed invariant deformation of the family at a
/// torus point in the coordinate directions, and reports the dimension of
/// the transversally-closed subspace of invariant wedges.
pub fn rigidity_solve(
    g: &LieAlgebra,
    split: &LeviSplitting,
    t: &[Rat],
    rho_prime: &Tensor<Rat>,
) -> Result<RigidityOutcome, ModuliError> {
    let rho = rho_from_point(g, split, t)?;
    let keep = split.quotient_mask(g);

    for i in 0..g.dim() {
        let levi = match g.label(i) {
            crate::liealg::BasisLabel::H(_) => true,
            crate::liealg::BasisLabel::E(k) | crate::liealg::BasisLabel::F(k) => {
                split.levi_pos().contains(&k)
            }
        };
        if !levi {
            continue;
        }
        let mut unit = vec![Rat::zero(); g.dim()];
        unit[i] = Rat::one();
        if !ad_action(g, &unit, rho_prime).is_zero() {
            return Err(ModuliError::NotRegular(
                "deformation is not invariant under the Levi".into(),
            ));
        }
    }

    let pairing = quotient_project(&cyb_bilinear(g, &rho, rho_prime), &keep)
        .expect("mask length matches the algebra dimension");
    if !pairing.is_zero() {
        return Err(ModuliError::NotACocycle(format!(
            "pairing has {} transverse terms",
            pairing.terms().count()
        )));
    }

    let wedges = invariant_wedges(g, split);
    let images: Vec<Tensor<Rat>> = wedges
        .iter()
        .map(|w| {
            quotient_project(&cyb_bilinear(g, &rho, w), &keep)
                .expect("mask length matches the algebra dimension")
        })
        .collect();
    let (_, cols) = tensor_coordinates(&images.iter().collect::<Vec<_>>());
    let rows: Vec<Vec<Rat>> = if cols.is_empty() || cols[0].is_empty() {
        Vec::new()
    } else {
        (0..cols[0].len())
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect()
    };
    let kernel_dim = wedges.len() - linalg::rank(&rows);

    let n = split.complement().len();
    let tangents: Vec<Tensor<Rat>> = (0..n)
        .map(|s| tangent_direction(g, split, t, s))
        .collect::<Result<_, _>>()?;
    let mut all: Vec<&Tensor<Rat>> = tangents.iter().collect();
    all.push(rho_prime);
    let (_, mut cols) = tensor_coordinates(&all);
    let rhs = cols.pop().expect("deformation column is present");
    let tau = linalg::solve(&cols, &rhs).ok_or_else(|| {
        ModuliError::NotRegular(
            "coordinate directions do not span the deformation uniquely".into(),
        )
    })?;
    Ok(RigidityOutcome { tau, kernel_dim })
}
