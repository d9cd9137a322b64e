//! Truncated power-series ring over Z/m with eta-factor expansion,
//! progression extraction, and substitution.
//!
//! The building blocks: [`Series`] arithmetic (with a word-packed fast path
//! at modulus 2), the eta factors f_i = prod_{k>=1}(1 - q^{ik}) expanded
//! through the pentagonal number theorem, [`EtaQuotientSpec`] products
//! q^a * prod f_i^{e_i}, and theta-like square series on residue classes.
//!
//! Multiplying or dividing by a single f_i touches only the O(sqrt(N/i))
//! pentagonal terms per coefficient, so eta quotients expand in
//! O(N sqrt N * sum |e_i|) without any dense products.

mod packed;
mod series;

pub use series::{ExtractMode, Series, SERIES_MODULUS_CAP, SERIES_TRUNC_CAP};

use crate::error::{Error, Result};

/// Exponents and signs of prod_{k>=1}(1 - q^{scale*k}) below `trunc`,
/// ascending; the constant term 1 is implicit. `negated` marks coefficient -1.
fn pentagonal_terms(scale: u64, trunc: usize) -> Vec<PentTerm> {
    let mut terms = Vec::new();
    let mut k = 1u64;
    loop {
        let g1 = k * (3 * k - 1) / 2;
        let g2 = k * (3 * k + 1) / 2;
        let negated = k % 2 == 1;
        let e1 = scale * g1;
        let e2 = scale * g2;
        if e1 >= trunc as u64 {
            break;
        }
        terms.push(PentTerm {
            exponent: e1 as usize,
            negated,
        });
        if e2 < trunc as u64 {
            terms.push(PentTerm {
                exponent: e2 as usize,
                negated,
            });
        }
        k += 1;
    }
    terms
}

#[derive(Clone, Copy)]
struct PentTerm {
    exponent: usize,
    negated: bool,
}

/// The eta factor f_i = prod_{k>=1}(1 - q^{ik}), expanded sparsely via the
/// pentagonal number theorem: f_i = sum_{k in Z} (-1)^k q^{i*k(3k-1)/2}.
pub fn eta_factor(i: u64, trunc: usize, modulus: u64) -> Result<Series> {
    if i == 0 {
        return Err(Error::domain("eta_factor: scale must be >= 1"));
    }
    let one = Series::one(modulus, trunc)?;
    let neg_one = modulus - 1;
    let mut coeffs = one.coeffs().to_vec();
    for t in pentagonal_terms(i, trunc) {
        coeffs[t.exponent] = if t.negated { neg_one } else { 1 };
    }
    Series::from_coeffs(modulus, coeffs)
}

/// A formal product q^{leading_power} * prod f_{scale}^{exponent}.
///
/// Duplicate scales merge by summing exponents; zero net exponents drop out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaQuotientSpec {
    leading_power: usize,
    factors: Vec<(u64, i64)>,
}

impl EtaQuotientSpec {
    pub fn new(
        leading_power: usize,
        factors: impl IntoIterator<Item = (u64, i64)>,
    ) -> Result<Self> {
        let mut merged: Vec<(u64, i64)> = Vec::new();
        for (scale, exp) in factors {
            if scale == 0 {
                return Err(Error::domain("eta quotient: scale must be >= 1"));
            }
            match merged.iter_mut().find(|(s, _)| *s == scale) {
                Some((_, e)) => *e += exp,
                None => merged.push((scale, exp)),
            }
        }
        merged.retain(|&(_, e)| e != 0);
        merged.sort_by_key(|&(s, _)| s);
        Ok(EtaQuotientSpec {
            leading_power,
            factors: merged,
        })
    }

    pub fn leading_power(&self) -> usize {
        self.leading_power
    }

    /// Merged (scale, exponent) pairs, scales ascending.
    pub fn factors(&self) -> &[(u64, i64)] {
        &self.factors
    }
}

/// Multiply `coeffs` in place by prod (1 - q^{scale*k}); one sparse pass.
fn mul_eta_sparse(coeffs: &mut Vec<u64>, terms: &[PentTerm], modulus: u64) {
    let trunc = coeffs.len();
    let mut out = coeffs.clone();
    for t in terms {
        let g = t.exponent;
        for n in 0..trunc - g {
            let v = coeffs[n];
            if v == 0 {
                continue;
            }
            let slot = &mut out[n + g];
            *slot = if t.negated {
                if *slot >= v {
                    *slot - v
                } else {
                    *slot + modulus - v
                }
            } else {
                let s = *slot + v;
                if s >= modulus {
                    s - modulus
                } else {
                    s
                }
            };
        }
    }
    *coeffs = out;
}

/// Divide `coeffs` in place by prod (1 - q^{scale*k}); forward substitution
/// against the unit constant term.
fn div_eta_sparse(coeffs: &mut [u64], terms: &[PentTerm], modulus: u64) {
    let trunc = coeffs.len();
    for n in 0..trunc {
        let mut acc = coeffs[n];
        for t in terms {
            let g = t.exponent;
            if g > n {
                break;
            }
            let v = coeffs[n - g];
            if v == 0 {
                continue;
            }
            acc = if t.negated {
                let s = acc + v;
                if s >= modulus {
                    s - modulus
                } else {
                    s
                }
            } else if acc >= v {
                acc - v
            } else {
                acc + modulus - v
            };
        }
        coeffs[n] = acc;
    }
}

/// Expand q^{leading_power} * prod f_i^{e_i} to the truncation. The factor
/// order never affects the result (the passes commute exactly); an empty
/// support (trunc <= leading_power) logs a warning and yields the zero series.
pub fn expand_eta_quotient(spec: &EtaQuotientSpec, trunc: usize, modulus: u64) -> Result<Series> {
    let lead = spec.leading_power();
    if trunc <= lead {
        log::warn!(
            "eta quotient with leading power {lead} has empty support at truncation {trunc}"
        );
        return Series::zero(modulus, trunc);
    }
    let start = Series::monomial(modulus, trunc, lead, 1)?;
    let mut coeffs = start.coeffs().to_vec();
    for &(scale, exp) in spec.factors() {
        let terms = pentagonal_terms(scale, trunc);
        for _ in 0..exp.unsigned_abs() {
            if exp > 0 {
                mul_eta_sparse(&mut coeffs, &terms, modulus);
            } else {
                div_eta_sparse(&mut coeffs, &terms, modulus);
            }
        }
    }
    Series::from_coeffs(modulus, coeffs)
}

/// The mod-2 theta-like series sum q^{j^2} over positive j = +-eps (mod m).
pub fn theta_residue_series(class_modulus: u64, eps: u64, trunc: usize) -> Result<Series> {
    if eps == 0 || eps >= class_modulus {
        return Err(Error::domain(format!(
            "theta_residue_series: residue {eps} must satisfy 0 < eps < {class_modulus}"
        )));
    }
    let mut coeffs = vec![0u64; trunc];
    let mut j = 1u64;
    while j * j < trunc as u64 {
        let r = j % class_modulus;
        if r == eps || r == class_modulus - eps {
            coeffs[(j * j) as usize] = 1;
        }
        j += 1;
    }
    Series::from_coeffs(2, coeffs)
}
