use std::collections::BTreeSet;

use super::signature;
use super::vt::{vt_decode_indel, vt_syndrome, VtParams};
use crate::error::{Error, Result};

/// Parameters of the Tenengolts code
/// `T_{a,b}(n;q) = {x ∈ Σ_q^n : s(x) ∈ VT_a(n-1), Σ x_i ≡ b (mod q)}`.
///
/// The signature constraint is a VT code of length `n - 1`, so `a` is taken
/// modulo `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TenengoltsParams {
    pub n: usize,
    pub q: usize,
    pub a: usize,
    pub b: usize,
}

impl TenengoltsParams {
    pub fn new(n: usize, q: usize, a: usize, b: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "Tenengolts length must be at least 2, got {n}"
            )));
        }
        if q <= 2 || q > 256 {
            return Err(Error::InvalidParameter(format!(
                "Tenengolts alphabet size must be in 3..=256, got {q}"
            )));
        }
        if a >= n || b >= q {
            return Err(Error::InvalidParameter(format!(
                "residues out of range: a={a} (< {n}), b={b} (< {q})"
            )));
        }
        Ok(Self { n, q, a, b })
    }

    fn signature_code(&self) -> VtParams {
        VtParams {
            n: self.n - 1,
            a: self.a,
        }
    }

    /// `(a, b)` class of an arbitrary length-`n` word.
    pub fn class_of(x: &[u8], q: usize) -> (usize, usize) {
        let n = x.len();
        let a = vt_syndrome(&signature(x)) % n.max(1);
        let b = symbol_sum(x) % q;
        (a, b)
    }
}

fn symbol_sum(x: &[u8]) -> usize {
    x.iter().map(|&s| s as usize).sum()
}

pub fn tenengolts_member(x: &[u8], params: TenengoltsParams) -> bool {
    x.len() == params.n
        && x.iter().all(|&s| (s as usize) < params.q)
        && symbol_sum(x) % params.q == params.b
        && vt_syndrome(&signature(x)) % params.n == params.a
}

fn check_alphabet(y: &[u8], q: usize) -> Result<()> {
    match y.iter().find(|&&s| s as usize >= q) {
        Some(&symbol) => Err(Error::AlphabetMismatch { symbol, size: q }),
        None => Ok(()),
    }
}

/// Corrects at most one deletion or insertion.
///
/// Runs [`tenengolts_decode_fast`] and falls back to
/// [`tenengolts_decode_exhaustive`] if the fast path finds no codeword.
pub fn tenengolts_decode(y: &[u8], params: TenengoltsParams) -> Result<Vec<u8>> {
    match tenengolts_decode_fast(y, params) {
        Ok(x) => Ok(x),
        Err(Error::AlphabetMismatch { symbol, size }) => {
            Err(Error::AlphabetMismatch { symbol, size })
        }
        Err(_) => tenengolts_decode_exhaustive(y, params),
    }
}

/// Two-stage decoding: the symbol sum yields the lost (or extra) value, the
/// signature of `y` is one VT edit away from the codeword's signature, and
/// the value is then placed where it reproduces that signature.
pub fn tenengolts_decode_fast(y: &[u8], params: TenengoltsParams) -> Result<Vec<u8>> {
    check_alphabet(y, params.q)?;
    let n = params.n;
    let q = params.q;
    if y.len() == n {
        return if tenengolts_member(y, params) {
            Ok(y.to_vec())
        } else {
            Err(Error::NoCodeword)
        };
    }
    let mut found: Option<Vec<u8>> = None;
    let mut accept = |x: Vec<u8>| -> Result<()> {
        match &found {
            Some(prev) if *prev != x => Err(Error::MultipleCandidates),
            Some(_) => Ok(()),
            None => {
                found = Some(x);
                Ok(())
            }
        }
    };
    if y.len() + 1 == n {
        let value = ((params.b + q * n - symbol_sum(y) % q) % q) as u8;
        let target = vt_decode_indel(&signature(y), params.signature_code())?;
        for pos in 0..=y.len() {
            let mut x = y.to_vec();
            x.insert(pos, value);
            if signature(&x) == target {
                accept(x)?;
            }
        }
    } else if y.len() == n + 1 {
        let value = ((symbol_sum(y) + q - params.b) % q) as u8;
        let target = vt_decode_indel(&signature(y), params.signature_code())?;
        for pos in 0..y.len() {
            if y[pos] != value {
                continue;
            }
            let mut x = y.to_vec();
            x.remove(pos);
            if signature(&x) == target {
                accept(x)?;
            }
        }
    } else {
        return Err(Error::NoCodeword);
    }
    let x = found.ok_or(Error::NoCodeword)?;
    if tenengolts_member(&x, params) {
        Ok(x)
    } else {
        Err(Error::NoCodeword)
    }
}

/// Tries every single-edit preimage of `y` and keeps the members.
pub fn tenengolts_decode_exhaustive(y: &[u8], params: TenengoltsParams) -> Result<Vec<u8>> {
    check_alphabet(y, params.q)?;
    let n = params.n;
    let mut survivors = BTreeSet::new();
    if y.len() == n {
        if tenengolts_member(y, params) {
            survivors.insert(y.to_vec());
        }
    } else if y.len() + 1 == n {
        for pos in 0..=y.len() {
            for v in 0..params.q as u8 {
                let mut x = y.to_vec();
                x.insert(pos, v);
                if tenengolts_member(&x, params) {
                    survivors.insert(x);
                }
            }
        }
    } else if y.len() == n + 1 {
        for pos in 0..y.len() {
            let mut x = y.to_vec();
            x.remove(pos);
            if tenengolts_member(&x, params) {
                survivors.insert(x);
            }
        }
    }
    let mut it = survivors.into_iter();
    match (it.next(), it.next()) {
        (Some(x), None) => Ok(x),
        (None, _) => Err(Error::NoCodeword),
        _ => Err(Error::MultipleCandidates),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::all_words;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn single_edits(x: &[u8], q: usize) -> BTreeSet<Vec<u8>> {
        let mut out = BTreeSet::new();
        for i in 0..x.len() {
            let mut y = x.to_vec();
            y.remove(i);
            out.insert(y);
        }
        for i in 0..=x.len() {
            for v in 0..q as u8 {
                let mut y = x.to_vec();
                y.insert(i, v);
                out.insert(y);
            }
        }
        out
    }

    #[test]
    fn membership_example() {
        let p = TenengoltsParams::new(4, 3, 1, 1).unwrap();
        assert!(tenengolts_member(&[2, 0, 1, 1], p));
        assert_eq!(TenengoltsParams::class_of(&[2, 0, 1, 1], 3), (1, 1));
    }

    #[test]
    fn decode_example() {
        let p = TenengoltsParams::new(4, 3, 1, 1).unwrap();
        assert_eq!(tenengolts_decode(&[2, 1, 1], p).unwrap(), vec![2, 0, 1, 1]);
        assert_eq!(
            tenengolts_decode(&[2, 0, 1, 1], p).unwrap(),
            vec![2, 0, 1, 1]
        );
        assert_eq!(tenengolts_decode(&[2, 0, 1, 0], p), Err(Error::NoCodeword));
    }

    #[test]
    fn parameter_validation() {
        assert!(TenengoltsParams::new(4, 2, 0, 0).is_err());
        assert!(TenengoltsParams::new(4, 3, 4, 0).is_err());
        assert!(TenengoltsParams::new(1, 3, 0, 0).is_err());
    }

    #[test]
    fn ternary_exhaustive() {
        for n in 2..=6 {
            for x in all_words(3, n) {
                let (a, b) = TenengoltsParams::class_of(&x, 3);
                let p = TenengoltsParams::new(n, 3, a, b).unwrap();
                assert!(tenengolts_member(&x, p));
                for y in single_edits(&x, 3) {
                    let fast = tenengolts_decode_fast(&y, p);
                    let slow = tenengolts_decode_exhaustive(&y, p);
                    assert_eq!(slow.as_ref(), Ok(&x), "x={x:?} y={y:?}");
                    assert_eq!(fast, slow, "x={x:?} y={y:?}");
                }
            }
        }
    }

    #[test]
    fn eleven_ary_sampled() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=8 {
            for _ in 0..200 {
                let x: Vec<u8> = (0..n).map(|_| rng.gen_range(0..11)).collect();
                let (a, b) = TenengoltsParams::class_of(&x, 11);
                let p = TenengoltsParams::new(n, 11, a, b).unwrap();
                for y in single_edits(&x, 11) {
                    assert_eq!(
                        tenengolts_decode_fast(&y, p).as_ref(),
                        Ok(&x),
                        "x={x:?} y={y:?}"
                    );
                }
            }
        }
    }
}
