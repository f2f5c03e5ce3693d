use dynr::liealg::LieAlgebra;
use dynr::quantum::{dck_check, kostant_partitions, shapovalov, QAlgebra, QMode};
use dynr::scalar::{Rat, RatFun, Scalar};

fn a1() -> QAlgebra {
    let g = LieAlgebra::new(&[vec![2]]).unwrap();
    QAlgebra::build(&g, &[], QMode::ExactQ).unwrap()
}

fn a2() -> QAlgebra {
    let g = LieAlgebra::new(&[vec![2, -1], vec![-1, 2]]).unwrap();
    QAlgebra::build(&g, &[], QMode::ExactQ).unwrap()
}

fn bar(alg: &QAlgebra, c: &RatFun) -> RatFun {
    // q and every Cartan variable to its inverse; on the pairing entries the
    // result is again polynomial over a monomial, so substitution stays exact.
    let vars = alg.coeff_vars(1);
    let binds: std::collections::HashMap<String, RatFun> = vars
        .names()
        .iter()
        .map(|n| {
            let mono = dynr::quantum::engine::rf_mono(&vars, &[(n.as_str(), -1)]);
            (n.clone(), mono)
        })
        .collect();
    let flipped = c.substitute(&binds).expect("bar substitution");
    dynr::quantum::engine::rf_recontext(&flipped, &vars)
}

#[test]
fn partition_counts_match_hand_values() {
    let a1g = LieAlgebra::new(&[vec![2]]).unwrap();
    let rs1 = a1g.roots().clone();
    assert_eq!(kostant_partitions(&rs1, &[0]), 1);
    assert_eq!(kostant_partitions(&rs1, &[3]), 1);

    let a2g = LieAlgebra::new(&[vec![2, -1], vec![-1, 2]]).unwrap();
    let rs2 = a2g.roots().clone();
    // (1,1) is a simple sum or the highest root.
    assert_eq!(kostant_partitions(&rs2, &[1, 1]), 2);
    // (2,1): 2a+b, or (a+b)+a.
    assert_eq!(kostant_partitions(&rs2, &[2, 1]), 2);
    assert_eq!(kostant_partitions(&rs2, &[2, 2]), 3);
    assert_eq!(kostant_partitions(&rs2, &[1, 0]), 1);
    assert_eq!(kostant_partitions(&rs2, &[0, 3]), 1);
}

#[test]
fn rank_one_matrix_entry_matches_the_commutator() {
    let a = a1();
    let data = shapovalov(&a, &[1]);
    assert_eq!(data.basis, vec![vec![0u8]]);
    let expected = -a.comm_coeff(1, 1, 0);
    assert_eq!(data.matrix[0][0], expected);
    assert_eq!(data.det, expected);
}

#[test]
fn rank_one_determinants_factor_with_level_offsets() {
    let a = a1();
    for height in 1..=3i64 {
        let report = dck_check(&a, &[height]);
        assert!(report.matched_n_ge_1, "heights {height}: {report:?}");
        assert!(!report.matched_n_ge_0, "heights {height}: {report:?}");
        assert!(report.remainder_is_monomial);
        assert_eq!(report.hbar_order, -height);
        // Factors q^{2(1-n)} k^2 - 1 for n = 1..=height, one each.
        assert_eq!(report.factor_counts.len(), height as usize);
        for n in 1..=height {
            assert_eq!(report.factor_counts.get(&(vec![1], 1 - n)), Some(&1));
        }
    }
}

#[test]
fn rank_two_highest_root_weight_has_three_factors() {
    let a = a2();
    let data = shapovalov(&a, &[1, 1]);
    assert_eq!(data.basis.len(), 2);
    let report = dck_check(&a, &[1, 1]);
    assert!(report.matched_n_ge_1, "{report:?}");
    assert!(!report.matched_n_ge_0, "{report:?}");
    assert!(report.remainder_is_monomial);
    assert_eq!(report.factor_counts.get(&(vec![1, 0], 0)), Some(&1));
    assert_eq!(report.factor_counts.get(&(vec![0, 1], 0)), Some(&1));
    // The long root factor sits at level 1 with height offset +1.
    assert_eq!(report.factor_counts.get(&(vec![1, 1], 1)), Some(&1));
    assert_eq!(report.factor_counts.len(), 3);
}

#[test]
fn rank_two_weights_up_to_height_three_match_one_convention() {
    let a = a2();
    for mu in [[1i64, 0], [1, 1], [2, 0], [2, 1], [3, 0], [1, 2]] {
        let report = dck_check(&a, &mu);
        assert!(report.matched_n_ge_1, "mu {mu:?}: {report:?}");
        assert!(!report.matched_n_ge_0, "mu {mu:?}: {report:?}");
        assert!(report.remainder_is_monomial, "mu {mu:?}");
    }
}

#[test]
fn pairing_matrix_transposes_under_the_bar_flip() {
    let a = a2();
    for mu in [[1i64, 1], [2, 1]] {
        let data = shapovalov(&a, &mu);
        let n = data.basis.len();
        for r in 0..n {
            for c in 0..n {
                assert_eq!(
                    data.matrix[r][c],
                    bar(&a, &data.matrix[c][r]),
                    "mu {mu:?} entry ({r},{c})"
                );
            }
        }
    }
}

#[test]
fn determinant_vanishing_matches_trivial_module_weights() {
    // At k = 1 (weight zero) the module truncates immediately, so every
    // pairing determinant at a nonzero weight must vanish there.
    let a = a1();
    let data = shapovalov(&a, &[2]);
    let vars = a.coeff_vars(1);
    let one = RatFun::constant(Rat::from_int(1));
    let one = dynr::quantum::engine::rf_recontext(&one, &vars);
    let at_one = data.det.substitute(&[("k0", &one)]);
    assert!(at_one.num().is_zero());
}
