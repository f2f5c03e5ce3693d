//! Contravariant pairing matrices on weight spaces and the factorization
//! of their determinants.
//!
//! For a weight `mu` in the positive root cone, the matrix pairs the PBW
//! monomials of weight `mu` on the lowering side against those on the
//! raising side through the Cartan projection of their product.  Its
//! determinant factors into Cartan binomials `q^{2j} k_beta^2 - 1`, one
//! family per positive root; the observed multiplicities are compared
//! against partition-count predictions under two level conventions.

use super::engine::{poly_mono, QAlgebra, QElem};
use super::hopf::hc_h;
use crate::liealg::RootSystem;
use crate::scalar::{Poly, Rat, RatFun, Scalar};
use std::collections::BTreeMap;

/// A weight-space pairing matrix with its PBW basis and determinant.
#[derive(Clone, Debug)]
pub struct ShapovalovData {
    pub mu: Vec<i64>,
    /// Sorted letter words of total weight `mu`.
    pub basis: Vec<Vec<u8>>,
    pub matrix: Vec<Vec<RatFun>>,
    pub det: RatFun,
}

/// Determinant factorization report.
#[derive(Clone, Debug)]
pub struct DckReport {
    pub mu: Vec<i64>,
    /// Multiplicity of the factor `q^{2j} k_beta^2 - 1` keyed by (beta, j).
    pub factor_counts: BTreeMap<(Vec<i64>, i64), u32>,
    /// Whether the counts match partition predictions with levels n >= 1.
    pub matched_n_ge_1: bool,
    /// Whether the counts match partition predictions with levels n >= 0.
    pub matched_n_ge_0: bool,
    /// After extracting all factors the rest must be a Cartan monomial
    /// times a rational function of q alone.
    pub remainder_is_monomial: bool,
    /// Order in `q - 1` of the remaining scalar, counting the denominator
    /// negatively; with `q = 1 + O(hbar)` this is the leading hbar order.
    pub hbar_order: i64,
}

/// Number of ways to write `mu` as a nonnegative sum of positive roots.
pub fn kostant_partitions(rs: &RootSystem, mu: &[i64]) -> i64 {
    fn rec(roots: &[Vec<i64>], mu: &[i64]) -> i64 {
        if mu.iter().all(|&c| c == 0) {
            return 1;
        }
        if mu.iter().any(|&c| c < 0) || roots.is_empty() {
            return 0;
        }
        let beta = &roots[0];
        let mut total = 0;
        let mut rest = mu.to_vec();
        loop {
            total += rec(&roots[1..], &rest);
            for (r, b) in rest.iter_mut().zip(beta) {
                *r -= b;
            }
            if rest.iter().any(|&c| c < 0) {
                break;
            }
        }
        total
    }
    let roots: Vec<Vec<i64>> = rs.positive().to_vec();
    rec(&roots, mu)
}

/// All weakly increasing letter words of the given total weight.
fn weight_basis(alg: &QAlgebra, mu: &[i64]) -> Vec<Vec<u8>> {
    fn rec(alg: &QAlgebra, next: u8, left: &[i64], word: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if left.iter().all(|&c| c == 0) {
            out.push(word.clone());
            return;
        }
        if left.iter().any(|&c| c < 0) {
            return;
        }
        for l in next..alg.letters().len() as u8 {
            let root = alg.letters()[l as usize].root();
            let rest: Vec<i64> = left.iter().zip(root).map(|(c, r)| c - r).collect();
            word.push(l);
            rec(alg, l, &rest, word, out);
            word.pop();
        }
    }
    let mut out = Vec::new();
    rec(alg, 0, mu, &mut Vec::new(), &mut out);
    out
}

/// The letterless coefficient of a one-slot element.
fn cartan_coeff(alg: &QAlgebra, x: &QElem) -> RatFun {
    x.coeff(&[(Vec::new(), Vec::new())])
        .cloned()
        .unwrap_or_else(|| RatFun::from_poly(Poly::zero_in(&alg.coeff_vars(1))))
}

/// Builds the pairing matrix at weight `mu` and its determinant.
pub fn shapovalov(alg: &QAlgebra, mu: &[i64]) -> ShapovalovData {
    assert_eq!(mu.len(), alg.rank());
    let basis = weight_basis(alg, mu);
    let n = basis.len();
    let mut matrix = vec![vec![RatFun::from_poly(Poly::zero_in(&alg.coeff_vars(1))); n]; n];
    for (r, frow) in basis.iter().enumerate() {
        let mut fel = QElem::zero(1);
        fel.add_term(vec![(Vec::new(), frow.clone())], alg.rf_one(1));
        for (c, ecol) in basis.iter().enumerate() {
            let mut eel = QElem::zero(1);
            eel.add_term(vec![(ecol.clone(), Vec::new())], alg.rf_one(1));
            let prod = alg.mul(&fel, &eel);
            matrix[r][c] = cartan_coeff(alg, &hc_h(alg, &prod, 1));
        }
    }
    let det = determinant(alg, &matrix);
    ShapovalovData {
        mu: mu.to_vec(),
        basis,
        matrix,
        det,
    }
}

/// Determinant by fraction elimination.
fn determinant(alg: &QAlgebra, m: &[Vec<RatFun>]) -> RatFun {
    let n = m.len();
    let one = alg.rf_one(1);
    if n == 0 {
        return one;
    }
    let mut a: Vec<Vec<RatFun>> = m.to_vec();
    let mut det = one;
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !a[r][col].is_zero()) {
            Some(p) => p,
            None => return RatFun::from_poly(Poly::zero_in(&alg.coeff_vars(1))),
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det = det * p.clone();
        let pinv = RatFun::new(p.den().clone(), p.num().clone()).expect("nonzero pivot");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone() * pinv.clone();
            for c in col..n {
                a[r][c] = a[r][c].clone() - factor.clone() * a[col][c].clone();
            }
        }
    }
    det
}

/// The factor polynomial `q^{2j} k_beta^2 - 1`, up to a unit monomial.
fn root_factor(alg: &QAlgebra, beta: &[i64], j: i64) -> Poly {
    let vars = alg.coeff_vars(1);
    let mut kpows: Vec<(String, u32)> = Vec::new();
    for (i, &c) in beta.iter().enumerate() {
        if c != 0 {
            kpows.push((super::engine::kvar_name(i, 1, 1), 2 * c as u32));
        }
    }
    let mut pos: Vec<(&str, u32)> = kpows.iter().map(|(n, p)| (n.as_str(), *p)).collect();
    if j >= 0 {
        pos.push(("q", 2 * j as u32));
        poly_mono(&vars, &pos) - poly_mono(&vars, &[])
    } else {
        poly_mono(&vars, &pos) - poly_mono(&vars, &[("q", 2 * (-j) as u32)])
    }
}

/// Multiplicity of `factor` in `p`, removing it as it is counted.
fn extract_all(p: &mut Poly, factor: &Poly) -> u32 {
    let mut count = 0;
    while let Some(next) = p.div_exact(factor) {
        *p = next;
        count += 1;
    }
    count
}

/// Order of vanishing at q = 1, after stripping Cartan monomial content.
fn q_one_valuation(alg: &QAlgebra, p: &Poly) -> (i64, bool) {
    // Split p = (k-monomial) * u(q); report the (q - 1)-adic order of u and
    // whether the split succeeded.
    let vars = p.vars().clone();
    let mut kexp: Option<Vec<u32>> = None;
    for (mono, _) in p.terms() {
        let ks: Vec<u32> = mono
            .iter()
            .enumerate()
            .map(|(i, &e)| if vars.names()[i] == "q" { 0 } else { e })
            .collect();
        match &kexp {
            None => kexp = Some(ks),
            Some(prev) => {
                if prev != &ks {
                    return (0, false);
                }
            }
        }
    }
    let qm1 = poly_mono(&alg.coeff_vars(1), &[("q", 1)])
        - poly_mono(&alg.coeff_vars(1), &[]);
    let mut u = p.clone();
    let mut val = 0;
    loop {
        match u.div_exact(&qm1) {
            Some(next) => {
                u = next;
                val += 1;
            }
            None => break,
        }
    }
    (val, true)
}

/// Factors the determinant at `mu` and compares the multiplicities with
/// partition-count predictions.
pub fn dck_check(alg: &QAlgebra, mu: &[i64]) -> DckReport {
    let rs = alg.algebra().roots().clone();
    let data = shapovalov(alg, mu);
    let height: i64 = mu.iter().sum();
    let jmax = height + 2;
    let mut num = data.det.num().clone();
    let mut factor_counts: BTreeMap<(Vec<i64>, i64), u32> = BTreeMap::new();
    for beta in rs.positive() {
        for j in -jmax..=jmax {
            let f = root_factor(alg, beta, j);
            let c = extract_all(&mut num, &f);
            if c > 0 {
                factor_counts.insert((beta.clone(), j), c);
            }
        }
    }
    let mut predict = |min_n: i64| -> BTreeMap<(Vec<i64>, i64), u32> {
        let mut out = BTreeMap::new();
        for beta in rs.positive() {
            let h: i64 = beta.iter().sum();
            for n in min_n..=height {
                let shifted: Vec<i64> = mu
                    .iter()
                    .zip(beta)
                    .map(|(m, b)| m - n * b)
                    .collect();
                if shifted.iter().any(|&c| c < 0) {
                    continue;
                }
                let p = kostant_partitions(&rs, &shifted);
                if p > 0 {
                    *out.entry((beta.clone(), h - n)).or_insert(0) += p as u32;
                }
            }
        }
        out
    };
    let matched_n_ge_1 = predict(1) == factor_counts;
    let matched_n_ge_0 = predict(0) == factor_counts;
    let (num_val, num_mono) = q_one_valuation(alg, &num);
    let (den_val, den_mono) = q_one_valuation(alg, data.det.den());
    DckReport {
        mu: mu.to_vec(),
        factor_counts,
        matched_n_ge_1,
        matched_n_ge_0,
        remainder_is_monomial: num_mono && den_mono,
        hbar_order: num_val - den_val,
    }
}
