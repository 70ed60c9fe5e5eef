//! Enumeration of all words of a given length over a small alphabet.

use crate::error::{Error, Result};

/// Number of words of length `n` over an alphabet of size `q`, if it fits in a `u64`.
pub fn word_count(q: usize, n: usize) -> Option<u64> {
    (q as u64).checked_pow(u32::try_from(n).ok()?)
}

/// Returns `q^n`, or [`Error::BudgetExceeded`] when that exceeds `cap`.
pub fn checked_word_count(q: usize, n: usize, cap: u64) -> Result<u64> {
    match word_count(q, n) {
        Some(count) if count <= cap => Ok(count),
        Some(count) => Err(Error::BudgetExceeded {
            needed: count as u128,
            cap: cap as u128,
        }),
        None => Err(Error::BudgetExceeded {
            needed: u128::MAX,
            cap: cap as u128,
        }),
    }
}

/// The `index`-th word of length `n` in lexicographic order (most significant symbol first).
pub fn nth_word(mut index: u64, q: usize, n: usize) -> Vec<u8> {
    let mut word = vec![0u8; n];
    for slot in word.iter_mut().rev() {
        *slot = (index % q as u64) as u8;
        index /= q as u64;
    }
    word
}

/// Iterator over every word of length `n` over `{0, .., q-1}` in lexicographic order.
pub fn all_words(q: usize, n: usize) -> AllWords {
    AllWords {
        q: q as u8,
        next: Some(vec![0; n]),
    }
}

pub struct AllWords {
    q: u8,
    next: Option<Vec<u8>>,
}

impl Iterator for AllWords {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut carried = true;
        for slot in succ.iter_mut().rev() {
            if *slot + 1 < self.q {
                *slot += 1;
                carried = false;
                break;
            }
            *slot = 0;
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(current)
    }
}
