//! Eta-quotient dissection identities behind the mod-16 overpartition
//! congruences: the 3-dissection of f_2/f_1^2, the 2-dissection of f_3^3/f_1,
//! the 2-adic power reductions f_i^{2^l} = f_{2i}^{2^{l-1}} (mod 2^l), and
//! the chain of extractions that drives p-bar(A n + B) = 0 (mod 16) for the
//! four progressions.
//!
//! The dissection lemmas are exact integer identities; they are verified at
//! two independent moduli (2^30 and a prime above it) instead of with
//! unbounded integers, which keeps one uniform series type while agreement at
//! both moduli leaves no room for a lucky reduction.

use crate::congruence::IdentityCheck;
use crate::error::Result;
use crate::partitions::overpartition_table;
use crate::qseries::{expand_eta_quotient, EtaQuotientSpec, ExtractMode, Series};

pub const LEMMA_MODULUS_POW2: u64 = 1 << 30;
/// 2^31 - 1, prime, above 2^30.
pub const LEMMA_MODULUS_PRIME: u64 = 2_147_483_647;

fn quotient(
    lead: usize,
    scalar: u64,
    factors: &[(u64, i64)],
    trunc: usize,
    modulus: u64,
) -> Result<Series> {
    let spec = EtaQuotientSpec::new(lead, factors.iter().copied())?;
    Ok(expand_eta_quotient(&spec, trunc, modulus)?.scale(scalar))
}

/// f_2/f_1^2 = f_6^4 f_9^6 / (f_3^8 f_18^3)
///           + 2q f_6^3 f_9^3 / f_3^7
///           + 4q^2 f_6^2 f_18^3 / f_3^6, coefficientwise mod `modulus`.
pub fn check_lemma_3dissection(trunc: usize, modulus: u64) -> Result<IdentityCheck> {
    let lhs = quotient(0, 1, &[(2, 1), (1, -2)], trunc, modulus)?;
    let a = quotient(0, 1, &[(6, 4), (9, 6), (3, -8), (18, -3)], trunc, modulus)?;
    let b = quotient(1, 2, &[(6, 3), (9, 3), (3, -7)], trunc, modulus)?;
    let c = quotient(2, 4, &[(6, 2), (18, 3), (3, -6)], trunc, modulus)?;
    let rhs = a.add(&b)?.add(&c)?;
    Ok(IdentityCheck::compare(
        format!("lemma-3/mod-{modulus}"),
        &lhs,
        &rhs,
    ))
}

/// f_3^3/f_1 = f_4^3 f_6^2 / (f_2^2 f_12) + q f_12^3 / f_4,
/// coefficientwise mod `modulus`.
pub fn check_lemma_2dissection(trunc: usize, modulus: u64) -> Result<IdentityCheck> {
    let lhs = quotient(0, 1, &[(3, 3), (1, -1)], trunc, modulus)?;
    let a = quotient(0, 1, &[(4, 3), (6, 2), (2, -2), (12, -1)], trunc, modulus)?;
    let b = quotient(1, 1, &[(12, 3), (4, -1)], trunc, modulus)?;
    let rhs = a.add(&b)?;
    Ok(IdentityCheck::compare(
        format!("lemma-2/mod-{modulus}"),
        &lhs,
        &rhs,
    ))
}

/// f_i^{2^l} = f_{2i}^{2^{l-1}} (mod 2^l) for i in 1..=3, l in 1..=4.
pub fn check_two_adic_reduction(trunc: usize) -> Result<Vec<IdentityCheck>> {
    let mut out = Vec::new();
    for i in 1..=3u64 {
        for l in 1..=4u32 {
            let m = 1u64 << l;
            let lhs = quotient(0, 1, &[(i, 1 << l)], trunc, m)?;
            let rhs = quotient(0, 1, &[(2 * i, 1 << (l - 1))], trunc, m)?;
            out.push(IdentityCheck::compare(
                format!("two-adic/f{i}^{}", 1u64 << l),
                &lhs,
                &rhs,
            ));
        }
    }
    Ok(out)
}

/// Verify the mod-16 dissection chain for the overpartition function, every
/// congruence coefficientwise to `trunc`:
///
/// 1. sum p-bar(6n) q^n = f_2^4 f_12^15 / (f_1^8 f_6^6 f_24^6)
///    + 12 q^3 f_12^3 f_24^2 / f_6^2;
/// 2. its exponents = 2 (mod 3) equal 24 q^2 f_6^8 f_9^18 f_12^15
///    / (f_3^30 f_18^6 f_24^6) — the surviving fourth-power term;
/// 3. its exponents = 1 (mod 3) equal 8 q f_9^3 / f_3;
/// 4. its exponents = 1 (mod 6) equal 8 q f_24, i.e.
///    sum p-bar(36n+6) q^{6n+1} = 8 q f_24, equivalently
///    sum p-bar(36n+6) q^n = 8 f_4 after compressing;
/// 5. the exponents of f_4 (the doubled pentagonal numbers 2k(3k+1)) land
///    only in classes {0, 1, 4, 6} mod 7, so the class 3 (mod 7) — which is
///    where 252n + 114 sits inside 36m + 6 — carries no nonzero coefficient;
/// 6. consequently p-bar(A n + B) = 0 (mod 16) on all four progressions,
///    checked directly on the p-bar series.
pub fn check_overpartition_chain(trunc: usize) -> Result<Vec<IdentityCheck>> {
    const M: u64 = 16;
    let mut out = Vec::new();

    // p-bar to exponent 6*trunc so the compressed 6n series reaches trunc
    let pbar_trunc = 6 * trunc;
    let pbar = Series::from_coeffs(M, overpartition_table(pbar_trunc as u64 - 1, M)?)?;

    let op6 = pbar.extract_progression(6, 0, ExtractMode::Compress)?;
    let op6 = op6.truncated(trunc)?;

    let rhs1 = quotient(
        0,
        1,
        &[(2, 4), (12, 15), (1, -8), (6, -6), (24, -6)],
        trunc,
        M,
    )?
    .add(&quotient(3, 12, &[(12, 3), (24, 2), (6, -2)], trunc, M)?)?;
    out.push(IdentityCheck::compare("op-chain/6n", &op6, &rhs1));

    let lhs2 = op6.extract_progression(3, 2, ExtractMode::Keep)?;
    let rhs2 = quotient(
        2,
        24,
        &[(6, 8), (9, 18), (12, 15), (3, -30), (18, -6), (24, -6)],
        trunc,
        M,
    )?;
    out.push(IdentityCheck::compare("op-chain/18n+12", &lhs2, &rhs2));

    let lhs3 = op6.extract_progression(3, 1, ExtractMode::Keep)?;
    let rhs3 = quotient(1, 8, &[(9, 3), (3, -1)], trunc, M)?;
    out.push(IdentityCheck::compare("op-chain/18n+6", &lhs3, &rhs3));

    let lhs4 = op6.extract_progression(6, 1, ExtractMode::Keep)?;
    let rhs4 = quotient(1, 8, &[(24, 1)], trunc, M)?;
    out.push(IdentityCheck::compare("op-chain/36n+6", &lhs4, &rhs4));

    let lhs4c = pbar.extract_progression(36, 6, ExtractMode::Compress)?;
    let lhs4c = lhs4c.truncated(trunc.min(lhs4c.trunc()))?;
    let rhs4c = quotient(0, 8, &[(4, 1)], lhs4c.trunc(), M)?;
    out.push(IdentityCheck::compare(
        "op-chain/36n+6-compressed",
        &lhs4c,
        &rhs4c,
    ));

    // pentagonal residue classes mod 7: nothing outside {0, 1, 4, 6}
    let f4 = quotient(0, 1, &[(4, 1)], trunc, M)?;
    let leak = f4
        .support()
        .find(|&(e, _)| ![0, 1, 4, 6].contains(&(e as u64 % 7)));
    out.push(IdentityCheck {
        id: "op-chain/pentagonal-mod-7".into(),
        checked: trunc as u64,
        first_mismatch: leak.map(|(e, v)| super::Mismatch {
            exponent: e as u64,
            lhs: v,
            rhs: 0,
        }),
    });

    for &(a, b) in &super::FOUR_PROGRESSIONS {
        let kept = pbar.extract_progression(a, b, ExtractMode::Keep)?;
        out.push(IdentityCheck::all_zero(
            format!("op-chain/pbar-{a}n+{b}-mod-16"),
            &kept,
        ));
    }

    Ok(out)
}
