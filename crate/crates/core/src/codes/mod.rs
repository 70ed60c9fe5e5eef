//! Labeling code constructions: the systematic encoders E1 and E2, the
//! all-labels single-deletion code and exhaustive searches for labeling codes.

mod all_labels;
mod e1;
mod e2;
mod search;

pub use all_labels::AllLabelsCode;
pub use e1::{e1_decode, e1_decode_exhaustive, e1_decode_fast, e1_encode, E1Layout};
pub use e2::{e2_decode, e2_decode_exhaustive, e2_decode_fast, e2_encode, E2Layout};
pub use search::{
    coset_field_size, lift_code, search_hamming_coset, search_tenengolts_labeling_code,
    smallest_prime_at_least, CosetCode, TenengoltsLabelingCode,
};

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Letters used by the DNA schemes.
pub(crate) const A: u8 = 0;
pub(crate) const G: u8 = 2;
pub(crate) const T: u8 = 3;

/// True if `b` is obtained from `a` by at most one insertion or deletion.
pub(crate) fn within_one_indel(a: &[u8], b: &[u8]) -> bool {
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    match long.len() - short.len() {
        0 => short == long,
        1 => {
            let prefix = short.iter().zip(long).take_while(|(x, y)| x == y).count();
            short[prefix..] == long[prefix + 1..]
        }
        _ => false,
    }
}

pub(crate) fn hamming_distance(a: &[u8], b: &[u8]) -> Option<usize> {
    (a.len() == b.len()).then(|| a.iter().zip(b).filter(|(x, y)| x != y).count())
}

/// Every word at most one insertion or deletion (over `0..sigma`) away from
/// `u` whose length is `target_len`.
pub(crate) fn indel_preimages(u: &[u8], target_len: usize, sigma: usize) -> BTreeSet<Vec<u8>> {
    let mut out = BTreeSet::new();
    if target_len == u.len() {
        out.insert(u.to_vec());
    } else if target_len == u.len() + 1 {
        for pos in 0..=u.len() {
            for v in 0..sigma as u8 {
                let mut w = u.to_vec();
                w.insert(pos, v);
                out.insert(w);
            }
        }
    } else if target_len + 1 == u.len() {
        for pos in 0..u.len() {
            let mut w = u.to_vec();
            w.remove(pos);
            out.insert(w);
        }
    }
    out
}

/// Every word at Hamming distance at most one from `u` over `0..sigma`.
pub(crate) fn substitution_neighbours(u: &[u8], sigma: usize) -> Vec<Vec<u8>> {
    let mut out = vec![u.to_vec()];
    for pos in 0..u.len() {
        for v in 0..sigma as u8 {
            if v != u[pos] {
                let mut w = u.to_vec();
                w[pos] = v;
                out.push(w);
            }
        }
    }
    out
}

pub(crate) fn unique<T: Ord>(survivors: BTreeSet<T>) -> Result<T> {
    let mut it = survivors.into_iter();
    match (it.next(), it.next()) {
        (Some(x), None) => Ok(x),
        (None, _) => Err(Error::NotDecodable),
        _ => Err(Error::AmbiguousDecoding),
    }
}

pub(crate) fn ceil_log4(k: usize) -> usize {
    let mut c = 0;
    let mut p = 1usize;
    while p < k {
        p *= 4;
        c += 1;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indel_distance() {
        assert!(within_one_indel(&[1, 2, 3], &[1, 3]));
        assert!(within_one_indel(&[1, 3], &[1, 2, 3]));
        assert!(within_one_indel(&[1, 3], &[1, 3]));
        assert!(!within_one_indel(&[1, 3], &[3, 1]));
        assert!(!within_one_indel(&[1], &[1, 2, 3]));
        assert!(within_one_indel(&[], &[7]));
    }

    #[test]
    fn log4() {
        let got: Vec<usize> = [1, 2, 4, 5, 16, 17].iter().map(|&k| ceil_log4(k)).collect();
        assert_eq!(got, vec![0, 1, 1, 2, 2, 3]);
    }

    #[test]
    fn neighbour_counts() {
        assert_eq!(substitution_neighbours(&[0, 1, 2], 11).len(), 31);
        assert_eq!(indel_preimages(&[0, 0], 1, 11).len(), 1);
        assert_eq!(indel_preimages(&[0], 2, 2).len(), 3);
    }
}
