//! sigma_1 parity dissections and the two product series whose evenness,
//! checked to a Sturm bound, certifies the progression congruences.
//!
//! A dissection picks the arithmetic progression a j + b out of sigma_1,
//! optionally halves each value (asserting evenness), scales exponents, and
//! reduces mod 2. Products of matched dissections then have coefficient
//! parity equal to a representation count n = x^2 + p y^2, so series evenness
//! and search parity cross-check each other through entirely different code.

use crate::arith::{build_divisor_tables, DivisorTables, PrimeSieve};
use crate::congruence::represent::{count_prime_square_parts, PartConstraint, ValuationParity};
use crate::congruence::IdentityCheck;
use crate::error::{Error, Result};
use crate::qseries::{theta_residue_series, Series};

/// One past the Sturm bound 93312: the truncation that makes the full
/// evenness check of [`build_r36`] a finite certificate.
pub const R36_FULL_TRUNC: usize = 93313;

/// The series sum_j sigma_1(a j + b) q^{scale (a j + b)} reduced mod 2, with
/// each sigma_1 value halved first when `halve` is set (erroring on any odd
/// value — the halving is integer division on the raw table entry, never a
/// ring division, since 2 is not invertible mod 2^e).
pub fn sigma_dissection_with(
    tables: &DivisorTables,
    a: u64,
    b: u64,
    halve: bool,
    scale: u64,
    trunc: usize,
) -> Result<Series> {
    if a == 0 || scale == 0 {
        return Err(Error::domain(
            "sigma_dissection: step and scale must be >= 1",
        ));
    }
    if b >= a {
        return Err(Error::domain(format!(
            "sigma_dissection: residue {b} must be below the step {a}"
        )));
    }
    let needed = (trunc as u64).div_ceil(scale);
    if tables.bound() < needed.saturating_sub(1) {
        return Err(Error::domain(format!(
            "sigma_dissection: tables reach {}, need {needed}",
            tables.bound()
        )));
    }
    let mut coeffs = vec![0u64; trunc];
    let mut j = 0u64;
    loop {
        let n = a * j + b;
        if n == 0 {
            j += 1;
            continue;
        }
        let e = n * scale;
        if e >= trunc as u64 {
            break;
        }
        let mut v = tables.sigma1(n)?;
        if halve {
            if v % 2 != 0 {
                return Err(Error::domain(format!(
                    "sigma_dissection: sigma_1({n}) = {v} is odd and cannot be halved (j = {j})"
                )));
            }
            v /= 2;
        }
        coeffs[e as usize] = v % 2;
        j += 1;
    }
    Series::from_coeffs(2, coeffs)
}

/// [`sigma_dissection_with`] over freshly built divisor tables.
pub fn sigma_dissection(a: u64, b: u64, halve: bool, scale: u64, trunc: usize) -> Result<Series> {
    if scale == 0 {
        return Err(Error::domain("sigma_dissection: scale must be >= 1"));
    }
    let bound = (trunc as u64).div_ceil(scale).max(1);
    let tables = build_divisor_tables(bound)?;
    sigma_dissection_with(&tables, a, b, halve, scale, trunc)
}

/// sum_{n>=1} sigma_1(n) q^n reduced mod `modulus`.
pub fn sigma1_series(tables: &DivisorTables, trunc: usize, modulus: u64) -> Result<Series> {
    if tables.bound() < trunc as u64 - 1 {
        return Err(Error::domain(format!(
            "sigma1_series: tables reach {}, need {}",
            tables.bound(),
            trunc - 1
        )));
    }
    let mut coeffs = vec![0u64; trunc];
    for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
        *c = tables.sigma1(n as u64)? % modulus;
    }
    Series::from_coeffs(modulus, coeffs)
}

/// The six (square-class, cofactor-class) pairs of the mod-36 construction:
/// the x^2 side lives on class i, the p y^2 side on 30 - i.
const MOD36_PAIRS: [(u64, u64); 6] = [(1, 29), (25, 5), (13, 17), (4, 26), (16, 14), (28, 2)];

/// The x^2-side dissection for square class i mod 36. Odd classes come
/// straight from sigma_1 on 36j + i; classes divisible by 4 from sigma_1 on
/// 9j + i/4 with exponents scaled by 4 (the two agree mod 2 since
/// sigma_1(4m) = sigma_1(m) mod 2).
fn square_side(tables: &DivisorTables, class: u64, trunc: usize) -> Result<Series> {
    if class % 4 == 0 {
        sigma_dissection_with(tables, 9, class / 4, false, 4, trunc)
    } else {
        sigma_dissection_with(tables, 36, class, false, 1, trunc)
    }
}

/// The p y^2-side dissection for class g mod 36. Odd classes halve sigma_1
/// on 36j + g; even classes take sigma_1 on 18j + g/2 with exponents doubled.
fn cofactor_side(tables: &DivisorTables, class: u64, trunc: usize) -> Result<Series> {
    if class % 2 == 0 {
        sigma_dissection_with(tables, 18, class / 2, false, 2, trunc)
    } else {
        sigma_dissection_with(tables, 36, class, true, 1, trunc)
    }
}

/// The mod-2 series sum over the six class pairs of
/// (x^2-side dissection) * (p y^2-side dissection) for the progression
/// 36j + 30. Coefficients vanish off exponents = 30 (mod 36) by the class
/// structure, and on them have the parity of the representation count
/// n = x^2 + p y^2 with s_p(y) even. All coefficients up to the Sturm
/// truncation [`R36_FULL_TRUNC`] being zero certifies evenness everywhere.
pub fn build_r36(trunc: usize) -> Result<Series> {
    let tables = build_divisor_tables((trunc as u64).max(2))?;
    let mut acc = Series::zero(2, trunc)?;
    for &(i, g) in &MOD36_PAIRS {
        let f = square_side(&tables, i, trunc)?;
        let gser = cofactor_side(&tables, g, trunc)?;
        acc = acc.add(&f.mul(&gser)?)?;
    }
    Ok(acc)
}

/// The mod-2 series F G + F(q^4) F(q^2), where F is the sigma_1 parity
/// series on odd arguments (equal to the odd-square theta series mod 2) and
/// G halves sigma_1 on 8n + 5. Its coefficients at 16j + 14 have the parity
/// of the representation count of 16j + 14; all coefficients to the Sturm
/// bound 32 — and in fact to any tested truncation — are even.
pub fn build_t16(trunc: usize) -> Result<Series> {
    let tables = build_divisor_tables((trunc as u64).max(2))?;
    let f = sigma_dissection_with(&tables, 2, 1, false, 1, trunc)?;
    let g = sigma_dissection_with(&tables, 8, 5, true, 1, trunc)?;
    let fg = f.mul(&g)?;
    let f4f2 = f.substitute_power(4)?.mul(&f.substitute_power(2)?)?;
    fg.add(&f4f2)
}

/// Coefficientwise parity checks of the two generating identities feeding
/// [`build_t16`]:
///
/// * sigma_1(2n+1) is odd exactly when 2n+1 is an odd square;
/// * sigma_1(8n+5)/2 is odd exactly when 8n+5 has an odd number of
///   factorizations p y^2 with p prime and s_p(y) even (all such exponents
///   force p = 5 mod 8 and y odd, so both sides live on 8n + 5).
pub fn fg_theta_parity_check(bound: u64) -> Result<Vec<IdentityCheck>> {
    let trunc = bound as usize + 1;
    let tables = build_divisor_tables(bound.max(2))?;
    let sieve = PrimeSieve::new(bound.max(2))?;

    let f = sigma_dissection_with(&tables, 2, 1, false, 1, trunc)?;
    let odd_squares = theta_residue_series(2, 1, trunc)?;
    let f_check = IdentityCheck::compare("fg-parity/odd-square-theta", &f, &odd_squares);

    let g = sigma_dissection_with(&tables, 8, 5, true, 1, trunc)?;
    let constraint = PartConstraint {
        residue_modulus: 8,
        p_residues: Some([5u64].into_iter().collect()),
        y_residues: None,
        parity: ValuationParity::Even,
    };
    let mut rep_coeffs = vec![0u64; trunc];
    for (m, c) in rep_coeffs.iter_mut().enumerate().skip(1) {
        if m % 8 == 5 {
            *c = count_prime_square_parts(m as u64, &constraint, &sieve)? % 2;
        }
    }
    let rep_series = Series::from_coeffs(2, rep_coeffs)?;
    let g_check = IdentityCheck::compare("fg-parity/prime-square-count", &g, &rep_series);

    Ok(vec![f_check, g_check])
}
