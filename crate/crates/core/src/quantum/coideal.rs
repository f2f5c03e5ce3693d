//! The parabolic coideal: projection map, membership defect, and check.
//!
//! Let π be the projection onto the parabolic Hopf subalgebra spanned by
//! Levi letters and Cartan monomials (strict letters are killed).  The map
//! α = (id ⊗ S∘π)∘Δ retracts the algebra onto a right coideal: its images
//! satisfy Δ(α(x)) ∈ U ⊗ C, and π-part factors are collapsed to their
//! counit.  Membership of x in C is equivalent to the vanishing of the
//! defect β(x) = (id ⊗ π)Δ(x) − x ⊗ 1.

use super::engine::{QAlgebra, QElem};
use super::hopf::{antipode_slot, coproduct_slot, hc_slot, merge_slots, promote};
use super::QuantumError;

/// Retraction onto the coideal: α(x) = Σ x⁽¹⁾ · S(π(x⁽²⁾)).
pub fn coideal_alpha(alg: &QAlgebra, x: &QElem) -> QElem {
    assert_eq!(x.slots(), 1, "alpha acts on one-slot elements");
    let dx = coproduct_slot(alg, x, 1);
    let kept = hc_slot(alg, &dx, 2);
    merge_slots(alg, &antipode_slot(alg, &kept, 2), 1)
}

/// Membership defect: β(x) = (id ⊗ π)Δ(x) − x ⊗ 1.
pub fn coideal_beta(alg: &QAlgebra, x: &QElem) -> QElem {
    assert_eq!(x.slots(), 1, "beta acts on one-slot elements");
    let dx = coproduct_slot(alg, x, 1);
    hc_slot(alg, &dx, 2).sub(&promote(alg, x, 2, &[1]))
}

/// Checks coideal membership; a nonzero defect is reported as
/// [`QuantumError::NotInParabolic`].
pub fn coideal_member(alg: &QAlgebra, x: &QElem) -> Result<(), QuantumError> {
    let defect = coideal_beta(alg, x);
    if defect.is_zero() {
        Ok(())
    } else {
        Err(QuantumError::NotInParabolic(format!(
            "membership defect has {} terms",
            defect.num_terms()
        )))
    }
}
