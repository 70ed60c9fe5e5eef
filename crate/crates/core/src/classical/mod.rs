//! Classical code primitives: derivative, VT and Tenengolts codes, zero-indel
//! codes, GF(p) Hamming codes and fixed-width base conversion.

mod base;
mod hamming;
mod tenengolts;
mod vt;
mod zero_indel;

pub use base::{base_convert, DigitString};
pub use hamming::{hamming_decode, hamming_redundancy, is_prime, HammingCode, HammingParams};
pub use tenengolts::{
    tenengolts_decode, tenengolts_decode_exhaustive, tenengolts_decode_fast, tenengolts_member,
    TenengoltsParams,
};
pub use vt::{vt_codebook, vt_decode_indel, vt_member, vt_syndrome, VtParams};
pub use zero_indel::{
    binary_class_sizes, zero_indel_class_sizes, zero_indel_decode, zero_indel_member,
    zero_indel_union, ZeroIndelParams, ZeroIndelUnion,
};

/// `d(x) = (x_1, x_2 - x_1, .., x_n - x_{n-1}) mod q`.
pub fn derivative(x: &[u8], q: usize) -> Vec<u8> {
    let q = q as i32;
    let mut prev = 0i32;
    x.iter()
        .map(|&s| {
            let d = (s as i32 - prev).rem_euclid(q);
            prev = s as i32;
            d as u8
        })
        .collect()
}

/// Prefix sums mod `q`; inverse of [`derivative`].
pub fn integrate(d: &[u8], q: usize) -> Vec<u8> {
    let mut acc = 0usize;
    d.iter()
        .map(|&s| {
            acc = (acc + s as usize) % q;
            acc as u8
        })
        .collect()
}

/// Binary signature: bit `i` is 1 iff `x_{i+1} >= x_i`. Length `|x| - 1`.
pub fn signature(x: &[u8]) -> Vec<u8> {
    x.windows(2).map(|w| (w[1] >= w[0]) as u8).collect()
}
