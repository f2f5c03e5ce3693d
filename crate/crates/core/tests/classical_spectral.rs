//! Spectral-calculus r-matrices on the dual group: the one-parameter brace
//! family, its Levi restriction, and the interpolation family, checked
//! against closed forms, the restriction functor, and the dynamical
//! identity.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dynr::classical::{
    compose_restrict_group, eval_ratfun_tensor, from_dual_coords, from_torus,
    random_lstar_point, rho_bfp, rho_bfp_levi, rho_nu, sigma_torus, verify_pl_cdybe_numeric,
    z_bfp, ClassicalError, EvalResult, GroupPoint,
};
use dynr::liealg::{standard_structures, LeviSplitting, LieAlgebra};
use dynr::scalar::{Rat, F64};
use dynr::tensor::Tensor;

const STEP: f64 = 1e-5;

fn alg(name: &str) -> LieAlgebra {
    LieAlgebra::by_name(name).unwrap()
}

fn full_split(g: &LieAlgebra) -> LeviSplitting {
    let all: Vec<usize> = (0..g.rank()).collect();
    LeviSplitting::new(g, &all)
}

#[test]
fn brace_family_vanishes_at_half() {
    let g = alg("A1");
    let split = full_split(&g);
    let torus = from_torus(&g, &[0.4]);
    assert!(rho_bfp(&g, &torus, 0.5).unwrap().norm_inf() < 1e-12);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 3 {
        let pt = random_lstar_point(&g, &split, &mut rng, 0.4);
        if let Ok(r) = rho_bfp(&g, &pt, 0.5) {
            assert!(r.norm_inf() < 1e-12);
            checked += 1;
        }
    }
}

#[test]
fn brace_family_rejects_the_identity() {
    let g = alg("A2");
    let pt = from_torus(&g, &[1.0, 1.0]);
    match rho_bfp(&g, &pt, 0.3) {
        Err(ClassicalError::SpectralPole(_)) => {}
        other => panic!("expected a spectral pole, got {other:?}"),
    }
}

#[test]
fn elliptic_point_has_nonreal_spectrum() {
    let g = alg("A1");
    let split = full_split(&g);
    let pt = from_dual_coords(&g, &split, &[1.5, 0.0, -1.5]);
    match rho_bfp(&g, &pt, 0.3) {
        Err(ClassicalError::NonRealSpectrum(_)) => {}
        other => panic!("expected a non-real spectrum error, got {other:?}"),
    }
}

#[test]
fn brace_family_solves_dynamical_identity() {
    let g = alg("A1");
    let split = full_split(&g);
    let nu = 0.3;
    let eval = |pt: &GroupPoint| -> EvalResult { rho_bfp(&g, pt, nu) };
    let z = z_bfp(&g, nu);
    let pts = vec![from_torus(&g, &[0.4]), from_torus(&g, &[2.5])];
    for o in verify_pl_cdybe_numeric(&g, &split, &eval, &z, &pts, STEP).unwrap() {
        assert!(o.identity_residual < 1e-6, "identity {}", o.identity_residual);
        assert!(
            o.equivariance_residual < 1e-7,
            "equivariance {}",
            o.equivariance_residual
        );
    }
}

#[test]
fn restricted_brace_family_matches_closed_form() {
    let g = alg("A1");
    let split = LeviSplitting::new(&g, &[]);
    let nu = 0.3;
    for t in [0.4, 2.0, 5.0] {
        let pt = from_torus(&g, &[t]);
        let r = rho_bfp_levi(&g, &split, &pt, nu).unwrap();
        let want = 0.5 + nu * (nu * t.ln()).tanh().recip();
        let got = r.coeff(&[g.e_index(0), g.f_index(0)]).0;
        assert!((got - want).abs() < 1e-9, "t = {t}: {got} vs {want}");
        assert!((r.clone() + r.transpose()).norm_inf() < 1e-12);
    }
}

#[test]
fn restricted_brace_family_rejects_the_identity() {
    let g = alg("A1");
    let split = LeviSplitting::new(&g, &[]);
    let pt = from_torus(&g, &[1.0]);
    match rho_bfp_levi(&g, &split, &pt, 0.3) {
        Err(ClassicalError::SingularPoint(_)) => {}
        other => panic!("expected a singular-point error, got {other:?}"),
    }
}

#[test]
fn restriction_functor_reproduces_the_restricted_family() {
    let g = alg("A2");
    let split = LeviSplitting::new(&g, &[0]);
    let nu = 0.3;
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut checked = 0;
    while checked < 5 {
        let pt = random_lstar_point(&g, &split, &mut rng, 0.5);
        if !well_separated(&pt) {
            continue;
        }
        let full = match rho_bfp(&g, &pt, nu) {
            Ok(r) => r,
            Err(_) => continue,
        };
        let direct = rho_bfp_levi(&g, &split, &pt, nu).unwrap();
        let chained = compose_restrict_group(&g, &split, &pt, &full).unwrap();
        let defect = (chained - direct).norm_inf();
        assert!(defect < 1e-9, "restriction route disagrees by {defect:e}");
        checked += 1;
    }
}

/// Keeps sample points away from the pole locus of the compared families:
/// every non-fixed adjoint eigenvalue at least 0.05 from 1, pairwise gaps
/// at least 0.02, so a 1e-9 comparison is resolvable in floating point.
fn well_separated(pt: &GroupPoint) -> bool {
    let a = &pt.plus
        * match pt.minus.clone().try_inverse() {
            Some(m) => m,
            None => return false,
        };
    let spec = match dynr::classical::real_spectrum(&a) {
        Ok(s) => s,
        Err(_) => return false,
    };
    let eigs = &spec.eigs;
    for (i, &m) in eigs.iter().enumerate() {
        if m != 1.0 && (m - 1.0).abs() < 0.05 {
            return false;
        }
        for &m2 in &eigs[i + 1..] {
            if (m - m2).abs() < 0.02 {
                return false;
            }
        }
    }
    true
}

#[test]
fn interpolation_family_branch_identity() {
    // With every torus coordinate below one, the interpolation family plus
    // the canonical r-matrix of the abelian splitting collapses to the
    // scaled skew half.
    let nu = 0.3;
    for (name, t) in [("A1", vec![0.4]), ("A2", vec![0.3, 0.5])] {
        let g = alg(name);
        let split = LeviSplitting::new(&g, &[]);
        let pt = from_torus(&g, &t);
        let r = rho_nu(&g, &pt, nu).unwrap();
        let s = eval_ratfun_tensor(&sigma_torus(&g, &split), &t).unwrap();
        let r0: Tensor<F64> = standard_structures::<Rat>(&g)
            .r_skew
            .map_coeffs(|c| F64((1.0 + 2.0 * nu) * c.to_f64()));
        assert!(
            (r + s - r0).norm_inf() < 1e-9,
            "{name}: branch identity fails"
        );
    }
}

#[test]
fn interpolation_family_requires_regular_points() {
    let g = alg("A2");
    let pt = from_torus(&g, &[1.0, 0.5]);
    match rho_nu(&g, &pt, 0.3) {
        Err(ClassicalError::NotRegularSemisimple(_)) => {}
        other => panic!("expected a regularity error, got {other:?}"),
    }
}

#[test]
fn interpolation_family_solves_dynamical_identity_at_half() {
    let g = alg("A1");
    let split = full_split(&g);
    let eval = |pt: &GroupPoint| -> EvalResult { rho_nu(&g, pt, 0.5) };
    let z = Tensor::<F64>::zero(g.dim(), 3);
    let pts = vec![from_torus(&g, &[0.4]), from_torus(&g, &[0.7])];
    for o in verify_pl_cdybe_numeric(&g, &split, &eval, &z, &pts, STEP).unwrap() {
        assert!(o.identity_residual < 1e-6, "identity {}", o.identity_residual);
    }
}
