//! Word-packed GF(2) polynomial multiplication.
//!
//! Coefficients mod 2 are packed 64 to a machine word; the product is
//! accumulated by XORing the denser operand, shifted by each set bit of the
//! sparser operand, into the output words. The mod-2 series that matter here
//! (theta-like sigma dissections) have O(sqrt N) support, so each product
//! costs popcount * words rather than N^2 / 64.

/// Pack 0/1 coefficients little-endian into 64-bit words.
fn pack(coeffs: &[u64], len: usize) -> Vec<u64> {
    let mut words = vec![0u64; len.div_ceil(64)];
    for (e, &c) in coeffs.iter().take(len).enumerate() {
        if c & 1 == 1 {
            words[e / 64] |= 1u64 << (e % 64);
        }
    }
    words
}

/// XOR `src` shifted left by `shift` bits into `dst`, dropping bits past the
/// end of `dst`.
fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let (ws, bs) = (shift / 64, shift % 64);
    let n = dst.len();
    if bs == 0 {
        for (i, &w) in src.iter().enumerate() {
            let j = i + ws;
            if j >= n {
                break;
            }
            dst[j] ^= w;
        }
        return;
    }
    for (i, &w) in src.iter().enumerate() {
        let j = i + ws;
        if j >= n {
            break;
        }
        dst[j] ^= w << bs;
        if j + 1 < n {
            dst[j + 1] ^= w >> (64 - bs);
        }
    }
}

/// GF(2) convolution of two 0/1 coefficient slices, truncated to `out_len`.
pub(crate) fn convolve_mod2(a: &[u64], b: &[u64], out_len: usize) -> Vec<u64> {
    let ones = |s: &[u64]| s.iter().take(out_len).filter(|&&c| c & 1 == 1).count();
    let (sparse, dense) = if ones(a) <= ones(b) { (a, b) } else { (b, a) };
    let dense_words = pack(dense, out_len);
    let mut acc = vec![0u64; out_len.div_ceil(64)];
    for (e, &c) in sparse.iter().take(out_len).enumerate() {
        if c & 1 == 1 {
            xor_shifted(&mut acc, &dense_words, e);
        }
    }
    let mut out = vec![0u64; out_len];
    for (e, slot) in out.iter_mut().enumerate() {
        *slot = (acc[e / 64] >> (e % 64)) & 1;
    }
    out
}
