//! Truncated formal power series over Z/m.
//!
//! A [`Series`] stores residues for exponents 0..trunc-1. Binary operations
//! truncate to the shorter operand and never extend: extending silently would
//! fabricate zero coefficients and falsify congruence scans downstream.

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::qseries::packed;

/// Largest truncation accepted before returning a resource error (8 bytes per
/// coefficient puts this at ~134 MB per series).
pub const SERIES_TRUNC_CAP: usize = 1 << 24;

/// Moduli must fit comfortably below 2^63 so that a single addition of two
/// reduced residues cannot overflow.
pub const SERIES_MODULUS_CAP: u64 = 1 << 62;

/// Which exponents an extraction keeps, and how it reindexes them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtractMode {
    /// Zero all exponents outside the progression, preserve the others in place.
    Keep,
    /// Reindex exponent a*n + b down to n.
    Compress,
}

/// Dense truncated power series with coefficients in Z/m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    modulus: u64,
    coeffs: Vec<u64>,
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + m - b
    }
}

/// Inverse of a mod m via extended Euclid; None when gcd(a, m) > 1.
pub(crate) fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

fn validate(modulus: u64, trunc: usize) -> Result<()> {
    if modulus < 2 {
        return Err(Error::domain("series modulus must be >= 2"));
    }
    if modulus > SERIES_MODULUS_CAP {
        return Err(Error::domain(format!(
            "series modulus {modulus} exceeds {SERIES_MODULUS_CAP}"
        )));
    }
    if trunc == 0 {
        return Err(Error::domain("series truncation must be >= 1"));
    }
    if trunc > SERIES_TRUNC_CAP {
        return Err(Error::resource(format!(
            "series truncation {trunc} exceeds cap {SERIES_TRUNC_CAP}"
        )));
    }
    Ok(())
}

impl Series {
    pub fn zero(modulus: u64, trunc: usize) -> Result<Series> {
        validate(modulus, trunc)?;
        Ok(Series {
            modulus,
            coeffs: vec![0; trunc],
        })
    }

    pub fn one(modulus: u64, trunc: usize) -> Result<Series> {
        Series::monomial(modulus, trunc, 0, 1)
    }

    /// value * q^exponent; the exponent may lie at or beyond trunc, in which
    /// case the series is zero.
    pub fn monomial(modulus: u64, trunc: usize, exponent: usize, value: u64) -> Result<Series> {
        let mut s = Series::zero(modulus, trunc)?;
        if exponent < trunc {
            s.coeffs[exponent] = value % modulus;
        }
        Ok(s)
    }

    /// Wrap raw coefficients (reduced mod modulus); trunc = coeffs.len().
    pub fn from_coeffs(modulus: u64, mut coeffs: Vec<u64>) -> Result<Series> {
        validate(modulus, coeffs.len())?;
        for c in &mut coeffs {
            *c %= modulus;
        }
        Ok(Series { modulus, coeffs })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of q^exponent. Panics past the truncation: reading there
    /// would silently fabricate a zero.
    pub fn coeff(&self, exponent: usize) -> u64 {
        assert!(
            exponent < self.coeffs.len(),
            "coefficient {exponent} is beyond truncation {}",
            self.coeffs.len()
        );
        self.coeffs[exponent]
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// (exponent, coefficient) pairs of the nonzero terms, ascending.
    pub fn support(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(e, &c)| (e, c))
    }

    /// Copy truncated to new_trunc (which must not exceed the current trunc).
    pub fn truncated(&self, new_trunc: usize) -> Result<Series> {
        if new_trunc == 0 || new_trunc > self.trunc() {
            return Err(Error::domain(format!(
                "cannot truncate series of length {} to {new_trunc}",
                self.trunc()
            )));
        }
        Ok(Series {
            modulus: self.modulus,
            coeffs: self.coeffs[..new_trunc].to_vec(),
        })
    }

    fn common(&self, other: &Series, op: &str) -> Result<usize> {
        if self.modulus != other.modulus {
            return Err(Error::domain(format!(
                "{op}: modulus mismatch ({} vs {})",
                self.modulus, other.modulus
            )));
        }
        Ok(self.trunc().min(other.trunc()))
    }

    /// Coefficientwise sum; result truncated to the shorter operand.
    pub fn add(&self, other: &Series) -> Result<Series> {
        let n = self.common(other, "series_add")?;
        let m = self.modulus;
        let coeffs = (0..n)
            .map(|i| add_mod(self.coeffs[i], other.coeffs[i], m))
            .collect();
        Ok(Series { modulus: m, coeffs })
    }

    /// Coefficientwise difference; result truncated to the shorter operand.
    pub fn sub(&self, other: &Series) -> Result<Series> {
        let n = self.common(other, "series_sub")?;
        let m = self.modulus;
        let coeffs = (0..n)
            .map(|i| sub_mod(self.coeffs[i], other.coeffs[i], m))
            .collect();
        Ok(Series { modulus: m, coeffs })
    }

    /// Multiply every coefficient by a scalar.
    pub fn scale(&self, scalar: u64) -> Series {
        let m = self.modulus;
        let s = scalar % m;
        Series {
            modulus: m,
            coeffs: self.coeffs.iter().map(|&c| mul_mod(c, s, m)).collect(),
        }
    }

    /// Additive inverse.
    pub fn neg(&self) -> Series {
        self.scale(self.modulus - 1)
    }

    /// Cauchy product truncated to the shorter operand.
    ///
    /// At modulus 2 this dispatches to the word-packed XOR convolution, which
    /// produces output identical to [`Series::mul_generic`].
    pub fn mul(&self, other: &Series) -> Result<Series> {
        let n = self.common(other, "series_mul")?;
        if self.modulus == 2 {
            let coeffs = packed::convolve_mod2(&self.coeffs, &other.coeffs, n);
            return Ok(Series { modulus: 2, coeffs });
        }
        self.mul_generic(other)
    }

    /// The plain O(N^2) coefficient-loop product, valid at every modulus.
    /// Kept public as the reference path the packed mod-2 routine is checked
    /// against.
    pub fn mul_generic(&self, other: &Series) -> Result<Series> {
        let n = self.common(other, "series_mul")?;
        let m = self.modulus;
        let mut out = vec![0u64; n];
        for (i, &a) in self.coeffs.iter().take(n).enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().take(n - i).enumerate() {
                if b != 0 {
                    out[i + j] = add_mod(out[i + j], mul_mod(a, b, m), m);
                }
            }
        }
        Ok(Series {
            modulus: m,
            coeffs: out,
        })
    }

    /// Multiplicative inverse to the truncation: self * invert(self) = 1.
    /// The constant term must be a unit mod the modulus (odd, when the
    /// modulus is a power of two).
    pub fn invert(&self) -> Result<Series> {
        let m = self.modulus;
        let inv0 = mod_inverse(self.coeffs[0], m).ok_or_else(|| {
            Error::domain(format!(
                "series_invert: constant term {} is not a unit mod {m}",
                self.coeffs[0]
            ))
        })?;
        let n = self.trunc();
        let mut out = vec![0u64; n];
        out[0] = inv0;
        for k in 1..n {
            let mut acc: u64 = 0;
            for j in 1..=k {
                let a = self.coeffs[j];
                if a != 0 && out[k - j] != 0 {
                    acc = add_mod(acc, mul_mod(a, out[k - j], m), m);
                }
            }
            out[k] = mul_mod(sub_mod(0, acc, m), inv0, m);
        }
        Ok(Series {
            modulus: m,
            coeffs: out,
        })
    }

    /// Keep only exponents = b (mod a); `Keep` preserves positions, `Compress`
    /// reindexes a*n + b down to n.
    pub fn extract_progression(&self, a: u64, b: u64, mode: ExtractMode) -> Result<Series> {
        if a == 0 {
            return Err(Error::domain("extract_progression: step must be >= 1"));
        }
        if b >= a {
            return Err(Error::domain(format!(
                "extract_progression: residue {b} must be below the step {a}"
            )));
        }
        let m = self.modulus;
        let trunc = self.trunc();
        match mode {
            ExtractMode::Keep => {
                let coeffs = self
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(e, &c)| if e as u64 % a == b { c } else { 0 })
                    .collect();
                Ok(Series { modulus: m, coeffs })
            }
            ExtractMode::Compress => {
                let count = if (trunc as u64) > b {
                    ((trunc as u64 - 1 - b) / a + 1) as usize
                } else {
                    0
                };
                let mut coeffs = vec![0u64; count.max(1)];
                for (i, c) in coeffs.iter_mut().enumerate().take(count) {
                    *c = self.coeffs[(a * i as u64 + b) as usize];
                }
                Ok(Series { modulus: m, coeffs })
            }
        }
    }

    /// The substitution q -> q^c: coefficient of q^{cn} is this series'
    /// coefficient of q^n; everything else is zero. Result keeps this trunc.
    pub fn substitute_power(&self, c: u64) -> Result<Series> {
        if c == 0 {
            return Err(Error::domain("substitute_power: exponent must be >= 1"));
        }
        let trunc = self.trunc();
        let mut out = vec![0u64; trunc];
        for (n, &v) in self.coeffs.iter().enumerate() {
            match n.checked_mul(c as usize) {
                Some(e) if e < trunc => out[e] = v,
                _ => break,
            }
        }
        Ok(Series {
            modulus: self.modulus,
            coeffs: out,
        })
    }

    /// Debug dump: one `exponent coefficient` line per nonzero term,
    /// exponents ascending.
    pub fn dump<W: Write>(&self, w: &mut W) -> io::Result<()> {
        for (e, c) in self.support() {
            writeln!(w, "{e} {c}")?;
        }
        Ok(())
    }
}
