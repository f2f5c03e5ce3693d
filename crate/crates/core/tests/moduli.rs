use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

use dynr::classical::{from_torus, rho_nu, sigma_torus, torus_vars, z_r0};
use dynr::liealg::{LeviSplitting, LieAlgebra};
use dynr::moduli::{
    check_dgs, invariant_wedges, iota, iota_prime, r_levi_at_char, rho_from_point,
    rigidity_solve, tangent_direction, ModuliError,
};
use dynr::scalar::{Rat, Scalar};
use dynr::tensor::{cyb, quotient_project, wedge_basis, Tensor};

fn alg(name: &str) -> LieAlgebra {
    LieAlgebra::by_name(name).unwrap()
}

fn q(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

#[test]
fn coefficients_of_small_torus_points() {
    let g = alg("A2");
    let split = LeviSplitting::new(&g, &[]);
    let c = iota(&split, &[Rat::from_int(2), Rat::from_int(3)]).unwrap();
    assert_eq!(c[&vec![1, 0]], q(-3, 2));
    assert_eq!(c[&vec![0, 1]], q(-1, 1));
    assert_eq!(c[&vec![1, 1]], q(-7, 10));
}

#[test]
fn coefficient_chart_round_trips_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for (name, levi) in [
        ("A2", vec![]),
        ("A2", vec![0usize]),
        ("B2", vec![]),
        ("B2", vec![0]),
        ("B2", vec![1]),
    ] {
        let g = alg(name);
        let split = LeviSplitting::new(&g, &levi);
        let n = split.complement().len();
        let mut done = 0;
        while done < 25 {
            let t: Vec<Rat> = (0..n)
                .map(|_| q(rng.gen_range(1..=12), rng.gen_range(1..=12)))
                .collect();
            let Ok(c) = iota(&split, &t) else { continue };
            let report = check_dgs(&split, &c).unwrap();
            assert!(report.quadric_holds, "{name} {levi:?}: {:?}", report.violations);
            assert!(report.interior, "{name} {levi:?}: {:?}", report.violations);
            assert_eq!(iota_prime(&split, &c).unwrap(), t);
            done += 1;
        }
    }
}

#[test]
fn kernel_locus_is_rejected() {
    let g = alg("A2");
    let split = LeviSplitting::new(&g, &[]);
    let err = iota(&split, &[Rat::from_int(1), Rat::from_int(5)]).unwrap_err();
    assert!(matches!(err, ModuliError::KernelPoint(_)));
    // The composite class hits 1 even though both coordinates avoid it.
    let err = rho_from_point(&g, &split, &[Rat::from_int(2), q(1, 2)]).unwrap_err();
    assert!(matches!(err, ModuliError::KernelPoint(_)));
    let err = rho_from_point(&g, &split, &[Rat::zero(), Rat::from_int(5)]).unwrap_err();
    assert!(matches!(err, ModuliError::BoundaryPoint(_)));
}

#[test]
fn constant_half_system_sits_on_the_boundary() {
    let g = alg("A2");
    let split = LeviSplitting::new(&g, &[]);
    let mut c = BTreeMap::new();
    for quasi in split.quasi_roots() {
        c.insert(quasi.key.clone(), q(1, 2));
    }
    let report = check_dgs(&split, &c).unwrap();
    assert!(report.quadric_holds);
    assert!(!report.interior);
    let err = iota_prime(&split, &c).unwrap_err();
    assert!(matches!(err, ModuliError::BoundaryPoint(_)));
}

#[test]
fn transverse_tensor_carries_one_coefficient_per_class() {
    let g = alg("A1");
    let split = LeviSplitting::new(&g, &[]);
    let rho = rho_from_point(&g, &split, &[Rat::from_int(2)]).unwrap();
    assert_eq!(rho.coeff(&[g.e_index(0), g.f_index(0)]), q(-3, 2));
    assert_eq!(rho.coeff(&[g.f_index(0), g.e_index(0)]), q(3, 2));

    // One class with a two-root fiber: both pairs share the coefficient.
    let g = alg("A2");
    let split = LeviSplitting::new(&g, &[0]);
    let rho = rho_from_point(&g, &split, &[Rat::from_int(4)]).unwrap();
    for &k in split.nil_pos() {
        assert_eq!(rho.coeff(&[g.e_index(k), g.f_index(k)]), q(-5, 6));
    }
    for &k in split.levi_pos() {
        assert!(rho.coeff(&[g.e_index(k), g.f_index(k)]).is_zero());
    }
}

#[test]
fn torus_points_solve_the_transverse_closure_equation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, levi) in [
        ("A2", vec![]),
        ("A2", vec![1usize]),
        ("B2", vec![]),
        ("B2", vec![0]),
        ("B2", vec![1]),
    ] {
        let g = alg(name);
        let split = LeviSplitting::new(&g, &levi);
        let keep = split.quotient_mask(&g);
        let z = quotient_project(&z_r0(&g), &keep).unwrap();
        let n = split.complement().len();
        let mut done = 0;
        while done < 5 {
            let t: Vec<Rat> = (0..n)
                .map(|_| q(rng.gen_range(1..=9), rng.gen_range(1..=9)))
                .collect();
            let Ok(rho) = rho_from_point(&g, &split, &t) else { continue };
            let lhs = quotient_project(&cyb(&g, &rho), &keep).unwrap();
            assert!((lhs - z.clone()).is_zero(), "{name} {levi:?} at {t:?}");
            done += 1;
        }
    }
}

#[test]
fn closure_equation_is_nontrivial_on_the_cartan_splitting() {
    let g = alg("A2");
    let split = LeviSplitting::new(&g, &[]);
    let keep = split.quotient_mask(&g);
    let z = quotient_project(&z_r0(&g), &keep).unwrap();
    assert!(!z.is_zero());
    let rho = rho_from_point(&g, &split, &[Rat::from_int(2), Rat::from_int(3)]).unwrap();
    let lhs = quotient_project(&cyb(&g, &rho), &keep).unwrap();
    assert!(!lhs.is_zero());
}

fn half_skew_transverse(g: &LieAlgebra, split: &LeviSplitting) -> Tensor<Rat> {
    let mut out = Tensor::zero(g.dim(), 2);
    for &k in split.nil_pos() {
        out = out + wedge_basis::<Rat>(g.dim(), g.e_index(k), g.f_index(k)).scale_rat(&q(1, 2));
    }
    out
}

#[test]
fn inverse_torus_translate_matches_the_shifted_inverse_form() {
    // Evaluating the inverse-form tensor at a character orthogonal to the
    // Levi and subtracting half the transverse skew pairing lands on the
    // family at the inverse torus point.
    let g = alg("A2");
    let split = LeviSplitting::new(&g, &[0]);
    let vars = torus_vars(g.rank());
    let sigma = sigma_torus(&g, &split);
    for u in [Rat::from_int(3), q(2, 5), Rat::from_int(7)] {
        let mut binds = HashMap::new();
        binds.insert(vars.names()[0].to_string(), Rat::from_int(1));
        binds.insert(vars.names()[1].to_string(), u.clone());
        let sigma_at = sigma.map_coeffs(|rf| rf.eval_rat(&binds).unwrap());
        let shifted = sigma_at - half_skew_transverse(&g, &split);
        let rho = rho_from_point(&g, &split, &[u.try_inv().unwrap()]).unwrap();
        assert!((shifted - rho).is_zero(), "u = {u:?}");
    }

    let g = alg("B2");
    let split = LeviSplitting::new(&g, &[]);
    let vars = torus_vars(g.rank());
    let sigma = sigma_torus(&g, &split);
    let t = [q(2, 1), q(5, 3)];
    let mut binds = HashMap::new();
    binds.insert(vars.names()[0].to_string(), t[0].clone());
    binds.insert(vars.names()[1].to_string(), t[1].clone());
    let sigma_at = sigma.map_coeffs(|rf| rf.eval_rat(&binds).unwrap());
    let shifted = sigma_at - half_skew_transverse(&g, &split);
    let inv = [t[0].try_inv().unwrap(), t[1].try_inv().unwrap()];
    let rho = rho_from_point(&g, &split, &inv).unwrap();
    assert!((shifted - rho).is_zero());
}

#[test]
fn character_family_agrees_with_the_torus_family_at_orthogonal_characters() {
    let g = alg("A2");
    let split = LeviSplitting::new(&g, &[0]);
    let x = 2.5f64;
    let r = r_levi_at_char(&g, &split, &[1.0, x]).unwrap();
    let rho = rho_from_point(&g, &split, &[q(5, 2)])
        .unwrap()
        .map_coeffs(|c| dynr::scalar::F64(c.to_f64()));
    let diff = (r - rho).norm_inf();
    assert!(diff < 1e-12, "diff = {diff:e}");
}

#[test]
fn character_family_matches_the_spectral_family_on_the_cartan_splitting() {
    for (name, t) in [("A1", vec![0.4f64]), ("A2", vec![0.3, 2.0]), ("B2", vec![1.7, 0.25])] {
        let g = alg(name);
        let split = LeviSplitting::new(&g, &[]);
        let r = r_levi_at_char(&g, &split, &t).unwrap();
        let spectral = rho_nu(&g, &from_torus(&g, &t), 0.0).unwrap();
        let diff = (r - spectral).norm_inf();
        assert!(diff < 1e-9, "{name}: diff = {diff:e}");
    }
}

#[test]
fn character_family_values_and_poles() {
    let g = alg("A1");
    let split = LeviSplitting::new(&g, &[]);
    let r = r_levi_at_char(&g, &split, &[2.0]).unwrap();
    assert!((r.coeff(&[g.e_index(0), g.f_index(0)]).0 + 1.5).abs() < 1e-12);

    let err = r_levi_at_char(&g, &split, &[1.0]).unwrap_err();
    assert!(matches!(err, ModuliError::NotRegular(_)));

    // Levi pairs stay finite where the character meets the Levi root, and the
    // coefficient is odd under inverting the character there.
    let g = alg("A2");
    let split = LeviSplitting::new(&g, &[0]);
    let near = r_levi_at_char(&g, &split, &[1.0 + 1e-6, 0.6]).unwrap();
    let k = split.levi_pos()[0];
    assert!(near.coeff(&[g.e_index(k), g.f_index(k)]).0.abs() < 1e-7);
    let plus = r_levi_at_char(&g, &split, &[1.7, 0.6]).unwrap();
    let minus = r_levi_at_char(&g, &split, &[1.0 / 1.7, 0.6]).unwrap();
    let a = plus.coeff(&[g.e_index(k), g.f_index(k)]).0;
    let b = minus.coeff(&[g.e_index(k), g.f_index(k)]).0;
    assert!((a + b).abs() < 1e-12);
    assert!(a.abs() > 1e-4);

    // Away from orthogonal characters the two roots of the single class
    // carry distinct coefficients.
    let nil = split.nil_pos();
    let c0 = plus.coeff(&[g.e_index(nil[0]), g.f_index(nil[0])]).0;
    let c1 = plus.coeff(&[g.e_index(nil[1]), g.f_index(nil[1])]).0;
    assert!((c0 - c1).abs() > 1e-3);
}

#[test]
fn tangent_directions_span_the_closed_deformations() {
    let g = alg("A2");
    let split = LeviSplitting::new(&g, &[]);
    let t = [Rat::from_int(2), Rat::from_int(3)];
    assert_eq!(invariant_wedges(&g, &split).len(), 3);

    let v0 = tangent_direction(&g, &split, &t, 0).unwrap();
    let out = rigidity_solve(&g, &split, &t, &v0).unwrap();
    assert_eq!(out.kernel_dim, 2);
    assert_eq!(out.tau, vec![Rat::from_int(1), Rat::zero()]);

    let v1 = tangent_direction(&g, &split, &t, 1).unwrap();
    let mixed = v0.scale_rat(&Rat::from_int(2)) - v1.scale_rat(&Rat::from_int(3));
    let out = rigidity_solve(&g, &split, &t, &mixed).unwrap();
    assert_eq!(out.tau, vec![Rat::from_int(2), Rat::from_int(-3)]);
}

#[test]
fn deformations_outside_the_tangent_space_are_rejected() {
    let g = alg("A2");
    let split = LeviSplitting::new(&g, &[]);
    let t = [Rat::from_int(2), Rat::from_int(3)];

    // Invariant but not transversally closed.
    let lone = wedge_basis::<Rat>(g.dim(), g.e_index(0), g.f_index(0));
    let err = rigidity_solve(&g, &split, &t, &lone).unwrap_err();
    assert!(matches!(err, ModuliError::NotACocycle(_)));

    // Not even invariant.
    let skew = wedge_basis::<Rat>(g.dim(), g.e_index(0), g.f_index(1));
    let err = rigidity_solve(&g, &split, &t, &skew).unwrap_err();
    assert!(matches!(err, ModuliError::NotRegular(_)));
}

#[test]
fn rigidity_on_a_nonabelian_levi() {
    let g = alg("A2");
    let split = LeviSplitting::new(&g, &[0]);
    let t = [Rat::from_int(2)];
    let wedges = invariant_wedges(&g, &split);
    assert_eq!(wedges.len(), 1);
    let v0 = tangent_direction(&g, &split, &t, 0).unwrap();
    let out = rigidity_solve(&g, &split, &t, &v0).unwrap();
    assert_eq!(out.tau, vec![Rat::from_int(1)]);
    assert_eq!(out.kernel_dim, 1);
}
