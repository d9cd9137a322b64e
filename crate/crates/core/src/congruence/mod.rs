//! The theorem-verification layer: Sturm bounds, sigma_1 parity dissections
//! and their product series, representation counting for n = x^2 + p y^2,
//! arithmetic-progression congruence checks, the mod-16 overpartition
//! dissection chain, the nu_3 parity reduction, and candidate-progression
//! scanners.

mod chain;
mod dissect;
mod progression;
mod reduction;
mod represent;
mod scan;
mod sturm;

pub use chain::{
    check_lemma_2dissection, check_lemma_3dissection, check_overpartition_chain,
    check_two_adic_reduction, LEMMA_MODULUS_POW2, LEMMA_MODULUS_PRIME,
};
pub use dissect::{
    build_r36, build_t16, fg_theta_parity_check, sigma1_series, sigma_dissection,
    sigma_dissection_with, R36_FULL_TRUNC,
};
pub use progression::{
    verify_kim, verify_progression, ProgressionReport, ProgressionStatus, FOUR_PROGRESSIONS,
};
pub use reduction::{d_sigma2_mod12_check, nu3_reduction_check, Nu3ReductionReport};
pub use represent::{
    count_prime_square_parts, mod36_family_rep_count, rep_count, PartConstraint,
    RepresentationQuery, ValuationParity,
};
pub use scan::{scan_progressions, ScanCandidate, ScanTarget, SCAN_AMAX_CAP, SCAN_BOUND_CAP};
pub use sturm::{sturm_bound, SturmInput};

/// Outcome of one coefficientwise identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    /// Stable identifier, e.g. `lemma-3` or `op-chain/36n+6`.
    pub id: String,
    /// Exponents below this truncation (or values up to this bound) were compared.
    pub checked: u64,
    pub first_mismatch: Option<Mismatch>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mismatch {
    pub exponent: u64,
    pub lhs: u64,
    pub rhs: u64,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }

    pub(crate) fn compare(
        id: impl Into<String>,
        lhs: &crate::qseries::Series,
        rhs: &crate::qseries::Series,
    ) -> Self {
        let n = lhs.trunc().min(rhs.trunc());
        let first_mismatch = (0..n)
            .find(|&e| lhs.coeff(e) != rhs.coeff(e))
            .map(|e| Mismatch {
                exponent: e as u64,
                lhs: lhs.coeff(e),
                rhs: rhs.coeff(e),
            });
        IdentityCheck {
            id: id.into(),
            checked: n as u64,
            first_mismatch,
        }
    }

    pub(crate) fn all_zero(id: impl Into<String>, s: &crate::qseries::Series) -> Self {
        let first_mismatch = s.support().next().map(|(e, v)| Mismatch {
            exponent: e as u64,
            lhs: v,
            rhs: 0,
        });
        IdentityCheck {
            id: id.into(),
            checked: s.trunc() as u64,
            first_mismatch,
        }
    }
}
