//! Exact torus checks: closed forms, the inversion identity, the dynamical
//! identity, and the non-dynamical-group variant, all over rational
//! functions.

use std::collections::HashMap;

use dynr::classical::{
    cartan_invariance_residuals, eval_ratfun_tensor, omega_torus, sigma_omega_residual,
    sigma_torus, sigma_torus_relative, t_monomial, torus_vars, usual_residual_torus,
    verify_pl_cdybe_exact, z_r0,
};
use dynr::liealg::{standard_structures, LeviSplitting, LieAlgebra};
use dynr::scalar::{Rat, RatFun, Scalar};
use dynr::tensor::{cyb, Tensor};

fn alg(name: &str) -> LieAlgebra {
    LieAlgebra::by_name(name).unwrap()
}

fn eval_at(f: &RatFun, vals: &[i64]) -> Rat {
    let binds: HashMap<String, Rat> = vals
        .iter()
        .enumerate()
        .map(|(i, &v)| (format!("t{}", i + 1), Rat::from_int(v)))
        .collect();
    f.eval_rat(&binds).unwrap()
}

#[test]
fn sigma_coefficient_rank_one() {
    let g = alg("A1");
    let split = LeviSplitting::new(&g, &[]);
    let s = sigma_torus(&g, &split);
    let c = s.coeff(&[g.e_index(0), g.f_index(0)]);
    assert_eq!(eval_at(&c, &[2]), Rat::from_int(2));
    let copp = s.coeff(&[g.f_index(0), g.e_index(0)]);
    assert_eq!(eval_at(&copp, &[2]), Rat::from_int(-2));
}

#[test]
fn sigma_coefficient_composite_root() {
    let g = alg("A2");
    let split = LeviSplitting::new(&g, &[]);
    let s = sigma_torus(&g, &split);
    let k = g.roots().root_index(&[1, 1]).unwrap();
    let c = s.coeff(&[g.e_index(k), g.f_index(k)]);
    // t1 t2 / (t1 t2 - 1) at (t1, t2) = (2, 3) is 6/5.
    assert_eq!(eval_at(&c, &[2, 3]), Rat::new(6, 5));
}

#[test]
fn omega_entry_rank_one() {
    let g = alg("A1");
    let split = LeviSplitting::new(&g, &[]);
    let w = omega_torus(&g, &split);
    let entry = w.get(&(g.e_index(0), g.f_index(0))).unwrap();
    // 1 - 1/t at t = 2 is 1/2.
    assert_eq!(eval_at(entry, &[2]), Rat::new(1, 2));
}

#[test]
fn sigma_inverts_omega_all_splittings() {
    for (name, subsets) in [
        ("A1", vec![vec![]]),
        ("A2", vec![vec![], vec![0], vec![1]]),
        ("B2", vec![vec![], vec![0], vec![1]]),
    ] {
        let g = alg(name);
        for subset in subsets {
            let split = LeviSplitting::new(&g, &subset);
            let s = sigma_torus(&g, &split);
            let w = omega_torus(&g, &split);
            for (v, row) in sigma_omega_residual(&g, &split, &s, &w) {
                for (i, r) in row.iter().enumerate() {
                    assert!(
                        r.is_zero(),
                        "{name} {subset:?}: residual at ({v}, {i}) = {r:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn sigma_is_skew_exact() {
    for name in ["A1", "A2", "B2"] {
        let g = alg(name);
        let split = LeviSplitting::new(&g, &[]);
        let s = sigma_torus(&g, &split);
        assert!((s.clone() + s.transpose()).is_zero());
    }
}

#[test]
fn dynamical_identity_exact_abelian_levi() {
    for name in ["A1", "A2", "B2"] {
        let g = alg(name);
        let split = LeviSplitting::new(&g, &[]);
        let s = sigma_torus(&g, &split);
        let z = Tensor::<Rat>::zero(g.dim(), 3);
        let out = verify_pl_cdybe_exact(&g, &split, &s, &z).unwrap();
        assert!(!out.transverse_only);
        assert!(out.is_zero(), "{name}: residual {:?}", out.residual);
    }
}

#[test]
fn dynamical_identity_exact_all_levi_choices_rank_two() {
    let g = alg("A2");
    for subset in [vec![0], vec![1], vec![0, 1]] {
        let split = LeviSplitting::new(&g, &subset);
        let s = sigma_torus(&g, &split);
        let z = Tensor::<Rat>::zero(g.dim(), 3);
        let out = verify_pl_cdybe_exact(&g, &split, &s, &z).unwrap();
        assert!(out.is_zero(), "{subset:?}: residual {:?}", out.residual);
        if subset.len() == 2 {
            // Full Levi: the canonical r-matrix is empty.
            assert!(s.is_zero());
        }
    }
}

#[test]
fn cartan_equivariance_exact() {
    let g = alg("A2");
    for subset in [vec![], vec![0]] {
        let split = LeviSplitting::new(&g, &subset);
        let s = sigma_torus(&g, &split);
        for r in cartan_invariance_residuals(&g, &s) {
            assert!(r.is_zero());
        }
    }
}

#[test]
fn obstruction_tensor_matches_yang_baxter_of_skew_half() {
    for name in ["A1", "A2", "B2"] {
        let g = alg(name);
        let r0 = standard_structures::<Rat>(&g).r_skew;
        let lhs = cyb(&g, &r0);
        let rhs = z_r0(&g);
        assert!((lhs - rhs).is_zero(), "{name}");
    }
}

#[test]
fn shifted_skew_half_solves_group_free_identity() {
    for name in ["A1", "A2", "B2"] {
        let g = alg(name);
        let split = LeviSplitting::new(&g, &[]);
        let r0: Tensor<RatFun> = standard_structures::<Rat>(&g)
            .r_skew
            .map_coeffs(|c| RatFun::constant(c.clone()));
        let rho = r0 - sigma_torus(&g, &split);
        let res = usual_residual_torus(&g, &rho, &z_r0(&g));
        assert!(res.is_zero(), "{name}: residual {:?}", res);
    }
}

#[test]
fn cross_terms_cancel_against_cobracket() {
    // The cross part of the Yang-Baxter operator between the skew half and
    // the canonical r-matrix is the negative of the symmetrized cobracket
    // term; this is what lets the shifted skew half solve the group-free
    // identity whenever the canonical r-matrix solves the dynamical one.
    use dynr::classical::delta_otimes_id;
    use dynr::tensor::{alt, cyb_bilinear};
    for name in ["A1", "A2", "B2"] {
        let g = alg(name);
        let split = LeviSplitting::new(&g, &[]);
        let s = sigma_torus(&g, &split);
        let r0 = standard_structures::<Rat>(&g).r_skew;
        let r0f: Tensor<RatFun> = r0.map_coeffs(|c| RatFun::constant(c.clone()));
        let lhs = cyb_bilinear(&g, &r0f, &s);
        let rhs = alt(&delta_otimes_id(&g, &r0, &s));
        assert!((lhs + rhs).is_zero(), "{name}");
    }
}

#[test]
fn zero_matrix_reports_minus_obstruction() {
    let g = alg("A1");
    let split = LeviSplitting::new(&g, &[]);
    let rho = Tensor::<RatFun>::zero(g.dim(), 2);
    let z = z_r0(&g);
    let out = verify_pl_cdybe_exact(&g, &split, &rho, &z).unwrap();
    let minus_z: Tensor<RatFun> =
        z.map_coeffs(|c| RatFun::constant(-c.clone()));
    assert!((out.residual.clone() - minus_z).is_zero());
    assert!(!out.is_zero());
}

#[test]
fn restriction_chain_is_exact() {
    // Restricting the canonical r-matrix of a rank-two splitting down to the
    // abelian one reproduces the abelian canonical r-matrix exactly.
    let g = alg("A2");
    for mid in [vec![0], vec![1]] {
        let split_mid = LeviSplitting::new(&g, &mid);
        let outer = sigma_torus(&g, &split_mid);
        let chained =
            dynr::classical::compose_restrict_torus(&g, split_mid.levi_pos(), &outer);
        let direct = sigma_torus(&g, &LeviSplitting::new(&g, &[]));
        assert!((chained - direct).is_zero(), "{mid:?}");
    }
}

#[test]
fn torus_monomials_respect_composite_roots() {
    let g = alg("B2");
    let vars = torus_vars(2);
    for (k, root) in g.roots().positive().iter().enumerate() {
        let m = t_monomial(&g, &vars, k);
        let mut prod = Rat::from_int(1);
        for (j, &c) in root.iter().enumerate() {
            let base = Rat::from_int([5, 7][j]);
            for _ in 0..c {
                prod = prod * base.clone();
            }
        }
        let binds: HashMap<String, Rat> = [
            ("t1".to_string(), Rat::from_int(5)),
            ("t2".to_string(), Rat::from_int(7)),
        ]
        .into();
        assert_eq!(RatFun::from_poly(m).eval_rat(&binds).unwrap(), prod);
    }
}

#[test]
fn symbolic_and_numeric_evaluation_agree() {
    let g = alg("A2");
    let split = LeviSplitting::new(&g, &[0]);
    let s = sigma_torus(&g, &split);
    let nv = eval_ratfun_tensor(&s, &[0.3, 1.7]).unwrap();
    let k = g.roots().root_index(&[1, 1]).unwrap();
    let t = 0.3 * 1.7;
    let expect = t / (t - 1.0);
    assert!((nv.coeff(&[g.e_index(k), g.f_index(k)]).0 - expect).abs() < 1e-12);
}

#[test]
fn relative_sum_splits_by_root_sets() {
    let g = alg("A2");
    let split = LeviSplitting::new(&g, &[0]);
    let total = sigma_torus_relative(&g, &(0..g.roots().num_positive()).collect::<Vec<_>>());
    let part = sigma_torus(&g, &split);
    let rest = sigma_torus_relative(&g, split.levi_pos());
    assert!((total - part - rest).is_zero());
}
