//! Numeric checks at dual-group points: agreement with the torus closed
//! forms, the 2-form inversion, the finite-difference translation operator,
//! and the dressing equivariance of the canonical r-matrix.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dynr::classical::{
    dl_numeric, dl_torus, eval_ratfun_tensor, from_torus, omega_det, omega_group,
    random_lstar_point, sigma_group, sigma_torus, tensor_as_matrix, u_basis,
    verify_pl_cdybe_numeric, ClassicalError, EvalResult, GroupPoint,
};
use dynr::liealg::{LeviSplitting, LieAlgebra};
use dynr::scalar::F64;
use dynr::tensor::Tensor;

const STEP: f64 = 1e-5;

fn alg(name: &str) -> LieAlgebra {
    LieAlgebra::by_name(name).unwrap()
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0f64, |a, &v| a.max(v.abs()))
}

#[test]
fn group_matches_torus_closed_form() {
    for (name, subset, t) in [
        ("A1", vec![], vec![2.0]),
        ("A2", vec![], vec![0.3, 1.7]),
        ("A2", vec![0], vec![0.3, 1.7]),
        ("B2", vec![1], vec![1.4, 0.6]),
    ] {
        let g = alg(name);
        let split = LeviSplitting::new(&g, &subset);
        let pt = from_torus(&g, &t);
        let got = sigma_group(&g, &split, &pt).unwrap();
        let want = eval_ratfun_tensor(&sigma_torus(&g, &split), &t).unwrap();
        assert!(
            (got - want).norm_inf() < 1e-9,
            "{name} {subset:?} disagrees with the closed form"
        );
    }
}

#[test]
fn identity_is_singular_for_the_r_matrix() {
    let g = alg("A1");
    let split = LeviSplitting::new(&g, &[]);
    let pt = from_torus(&g, &[1.0]);
    match sigma_group(&g, &split, &pt) {
        Err(ClassicalError::SingularPoint(_)) => {}
        other => panic!("expected a singular-point error, got {other:?}"),
    }
}

#[test]
fn two_form_vanishes_at_the_identity() {
    let g = alg("A2");
    let split = LeviSplitting::new(&g, &[0]);
    let pt = from_torus(&g, &[1.0, 1.0]);
    let w = omega_group(&g, &split, &pt).unwrap();
    assert!(max_abs(&w) < 1e-12);
    assert!(omega_det(&w).abs() < 1e-12);
}

#[test]
fn two_form_is_antisymmetric() {
    let g = alg("A2");
    let split = LeviSplitting::new(&g, &[1]);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let pt = random_lstar_point(&g, &split, &mut rng, 0.7);
        let w = omega_group(&g, &split, &pt).unwrap();
        assert!(max_abs(&(w.clone() + w.transpose())) < 1e-9);
    }
}

#[test]
fn r_matrix_inverts_two_form() {
    for (name, subset) in [("A1", vec![]), ("A2", vec![0]), ("B2", vec![1])] {
        let g = alg(name);
        let split = LeviSplitting::new(&g, &subset);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..5 {
            let pt = random_lstar_point(&g, &split, &mut rng, 0.6);
            let w = omega_group(&g, &split, &pt).unwrap();
            let s = sigma_group(&g, &split, &pt).unwrap();
            let m = tensor_as_matrix(&g, &split, &s);
            let n = u_basis(&g, &split).len();
            let prod = m * w.clone() + DMatrix::<f64>::identity(n, n);
            assert!(
                max_abs(&prod) < 1e-9,
                "{name} {subset:?}: inversion defect {}",
                max_abs(&prod)
            );
        }
    }
}

#[test]
fn translation_operator_routes_agree() {
    let g = alg("A1");
    let split = LeviSplitting::new(&g, &[]);
    let eval = |pt: &GroupPoint| -> EvalResult { sigma_group(&g, &split, pt) };
    let pt = from_torus(&g, &[2.0]);
    let got = dl_numeric(&g, &split, &eval, &pt, STEP).unwrap();
    let want = eval_ratfun_tensor(&dl_torus(&g, &sigma_torus(&g, &split)), &[2.0]).unwrap();
    assert!(
        (got.clone() - want.clone()).norm_inf() < 1e-7,
        "numeric {got:?} vs exact {want:?}"
    );
    // The nonzero entry is pinned: the coefficient derivative t d/dt of
    // t/(t-1) at t = 2 is -2, carried on the raising-lowering pair.
    assert!((want.coeff(&[0, 2, 1]).0 + 2.0).abs() < 1e-12);
}

#[test]
fn translation_operator_routes_agree_rank_two() {
    let g = alg("A2");
    let split = LeviSplitting::new(&g, &[]);
    let eval = |pt: &GroupPoint| -> EvalResult { sigma_group(&g, &split, pt) };
    let pt = from_torus(&g, &[0.4, 1.9]);
    let got = dl_numeric(&g, &split, &eval, &pt, STEP).unwrap();
    let want =
        eval_ratfun_tensor(&dl_torus(&g, &sigma_torus(&g, &split)), &[0.4, 1.9]).unwrap();
    assert!((got - want).norm_inf() < 1e-7);
}

#[test]
fn dynamical_identity_and_equivariance_at_group_points() {
    let g = alg("A2");
    let split = LeviSplitting::new(&g, &[0]);
    let eval = |pt: &GroupPoint| -> EvalResult { sigma_group(&g, &split, pt) };
    let z = Tensor::<F64>::zero(g.dim(), 3);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pts: Vec<GroupPoint> = (0..3)
        .map(|_| random_lstar_point(&g, &split, &mut rng, 0.5))
        .collect();
    let outcomes = verify_pl_cdybe_numeric(&g, &split, &eval, &z, &pts, STEP).unwrap();
    for (i, o) in outcomes.iter().enumerate() {
        assert!(
            o.identity_residual < 1e-6,
            "point {i}: identity residual {}",
            o.identity_residual
        );
        assert!(
            o.equivariance_residual < 1e-7,
            "point {i}: equivariance residual {}",
            o.equivariance_residual
        );
    }
}
