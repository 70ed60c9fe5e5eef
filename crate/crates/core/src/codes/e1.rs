use std::collections::BTreeSet;

use serde::Serialize;

use super::{ceil_log4, indel_preimages, unique, within_one_indel, A, G, T};
use crate::classical::{
    base_convert, signature, tenengolts_decode, vt_syndrome, DigitString, TenengoltsParams,
};
use crate::error::{Error, Result};
use crate::labeling::{invert_labeling, label_framed, FlankConvention, LabelSet};

/// Labeling alphabet size of the minimal DNA set.
const SIGMA: usize = 11;
/// Labels of the separator pairs GG and TT.
const GG: u8 = 5;
const TT: u8 = 10;
/// Label of TG, the only seam label produced when the separator is G.
const TG: u8 = 9;

/// Field widths of an E1 codeword `x ∥ s s ∥ v`, where `v` is the joint
/// syndrome `β + 11·γ` written in base 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct E1Layout {
    pub k: usize,
    pub separator: usize,
    pub syndrome: usize,
    pub n: usize,
}

impl E1Layout {
    pub fn new(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("E1 needs k >= 2, got {k}")));
        }
        let syndrome = 2 + ceil_log4(k);
        Ok(Self {
            k,
            separator: 2,
            syndrome,
            n: k + 2 + syndrome,
        })
    }

    /// Redundancy in bits.
    pub fn redundancy_bits(&self) -> usize {
        2 * (self.n - self.k)
    }

    /// Length of the framed labeling of a codeword.
    pub fn framed_len(&self) -> usize {
        self.n + 1
    }

    fn tenengolts(&self, beta: usize, gamma: usize) -> Result<TenengoltsParams> {
        TenengoltsParams::new(self.k + 1, SIGMA, gamma, beta)
    }
}

fn separator(last: u8) -> u8 {
    if last == T {
        G
    } else {
        T
    }
}

fn set() -> &'static LabelSet {
    LabelSet::minimal_dna_static()
}

/// Systematic single-indel encoder over the minimal DNA label set.
///
/// The protected word is `z = label_framed(x, S, (A, s))`, which covers the
/// left flank pair and the seam pair `(x_k, s)` as well as the data.
pub fn e1_encode(x: &[u8]) -> Result<Vec<u8>> {
    let layout = E1Layout::new(x.len())?;
    let s = separator(*x.last().unwrap_or(&A));
    let z = label_framed(x, set(), FlankConvention::new(A, s))?;
    let beta = z.iter().map(|&v| v as usize).sum::<usize>() % SIGMA;
    let gamma = vt_syndrome(&signature(&z)) % (layout.k + 1);
    let field = base_convert((beta + SIGMA * gamma) as u64, 4, layout.syndrome)?;
    let mut out = x.to_vec();
    out.extend([s, s]);
    out.extend(field.digits);
    Ok(out)
}

fn check_input(u: &[u8]) -> Result<()> {
    match u.iter().find(|&&v| v as usize >= SIGMA) {
        Some(&symbol) => Err(Error::AlphabetMismatch {
            symbol,
            size: SIGMA,
        }),
        None => Ok(()),
    }
}

/// Decodes a framed labeling carrying at most one insertion or deletion.
///
/// Tries [`e1_decode_fast`] first and falls back to [`e1_decode_exhaustive`].
pub fn e1_decode(u: &[u8], layout: E1Layout) -> Result<Vec<u8>> {
    check_input(u)?;
    e1_decode_fast(u, layout).or_else(|_| e1_decode_exhaustive(u, layout))
}

/// Reads `(β, γ)` from the framed labeling of `v` between flanks `(s, A)`.
fn read_syndrome(tail: &[u8], s: u8, layout: E1Layout) -> Result<(usize, usize)> {
    let digits = invert_labeling(tail, set(), FlankConvention::new(s, A))?;
    if digits.len() != layout.syndrome {
        return Err(Error::NotDecodable);
    }
    let v = DigitString::from_digits(4, &digits)?.value() as usize;
    let (beta, gamma) = (v % SIGMA, v / SIGMA);
    if gamma > layout.k {
        return Err(Error::NotDecodable);
    }
    Ok((beta, gamma))
}

fn separator_of_seam(seam: u8) -> u8 {
    if seam == TG {
        G
    } else {
        T
    }
}

fn separator_of_label(label: u8) -> Option<u8> {
    match label {
        GG => Some(G),
        TT => Some(T),
        _ => None,
    }
}

/// Branch decoder: the label after the seam is always GG or TT and the seam
/// label never is, which locates the error relative to the data region.
pub fn e1_decode_fast(u: &[u8], layout: E1Layout) -> Result<Vec<u8>> {
    check_input(u)?;
    let k = layout.k;
    let full = layout.framed_len();
    let x = if u.len() == full {
        let c = invert_labeling(u, set(), FlankConvention::default())?;
        c[..k].to_vec()
    } else if u.len() + 1 == full {
        match separator_of_label(u[k]) {
            Some(s) => {
                let (beta, gamma) = read_syndrome(&u[k + 1..], s, layout)?;
                let z = tenengolts_decode(&u[..k], layout.tenengolts(beta, gamma)?)?;
                invert_labeling(&z, set(), FlankConvention::new(A, s))?
            }
            None => {
                let z = &u[..=k];
                invert_labeling(z, set(), FlankConvention::new(A, separator_of_seam(z[k])))?
            }
        }
    } else if u.len() == full + 1 {
        if separator_of_label(u[k + 1]).is_some() {
            let z = &u[..=k];
            invert_labeling(z, set(), FlankConvention::new(A, separator_of_seam(z[k])))?
        } else {
            let s = separator_of_label(u[k + 2]).ok_or(Error::NotDecodable)?;
            let (beta, gamma) = read_syndrome(&u[k + 3..], s, layout)?;
            let z = tenengolts_decode(&u[..k + 2], layout.tenengolts(beta, gamma)?)?;
            invert_labeling(&z, set(), FlankConvention::new(A, s))?
        }
    } else {
        return Err(Error::NotDecodable);
    };
    let expected = label_framed(&e1_encode(&x)?, set(), FlankConvention::default())?;
    if within_one_indel(&expected, u) {
        Ok(x)
    } else {
        Err(Error::NotDecodable)
    }
}

/// Tries every single-indel preimage of `u`, keeping those that are framed
/// labelings of codewords.
pub fn e1_decode_exhaustive(u: &[u8], layout: E1Layout) -> Result<Vec<u8>> {
    check_input(u)?;
    let mut survivors = BTreeSet::new();
    let k = layout.k;
    for w in indel_preimages(u, layout.framed_len(), SIGMA) {
        // Codeword labelings have a GG or TT label right after the seam.
        if separator_of_label(w[k + 1]).is_none() {
            continue;
        }
        let Ok(c) = invert_labeling(&w, set(), FlankConvention::default()) else {
            continue;
        };
        if e1_encode(&c[..k])? == c {
            survivors.insert(c[..k].to_vec());
        }
    }
    unique(survivors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::Alphabet;
    use crate::words::all_words;

    fn dna(s: &str) -> Vec<u8> {
        Alphabet::dna().parse(s).unwrap()
    }

    #[test]
    fn layout_widths() {
        for (k, n) in [(2, 7), (4, 9), (5, 11), (16, 22), (17, 24)] {
            let l = E1Layout::new(k).unwrap();
            assert_eq!(l.n, n, "k={k}");
            assert_eq!(l.n, k + 4 + ceil_log4(k));
            assert_eq!(l.redundancy_bits(), 8 + 2 * ceil_log4(k));
        }
        assert!(E1Layout::new(1).is_err());
    }

    #[test]
    fn regression_acgt() {
        let c = e1_encode(&dna("ACGT")).unwrap();
        assert_eq!(Alphabet::dna().render(&c), "ACGTGGGCG");
        let l = label_framed(&c, set(), FlankConvention::default()).unwrap();
        assert_eq!(l, vec![0, 1, 0, 6, 9, 5, 5, 4, 0, 3]);
    }

    #[test]
    fn zero_syndromes() {
        let c = e1_encode(&dna("AAAA")).unwrap();
        // z = (0,0,0,0,0): β = 0 and the signature is all ones, γ = 10 mod 5 = 0.
        assert_eq!(Alphabet::dna().render(&c), "AAAATTAAA");
    }

    #[test]
    fn separator_discrimination() {
        for k in 2..=5 {
            for x in all_words(4, k) {
                let l = label_framed(&e1_encode(&x).unwrap(), set(), FlankConvention::default())
                    .unwrap();
                assert!(l[k + 1] == GG || l[k + 1] == TT);
                assert!([0, 6, 9].contains(&l[k]));
            }
        }
    }

    #[test]
    fn all_indels_small_k() {
        for k in 2..=4 {
            let layout = E1Layout::new(k).unwrap();
            for x in all_words(4, k) {
                let l = label_framed(&e1_encode(&x).unwrap(), set(), FlankConvention::default())
                    .unwrap();
                assert_eq!(e1_decode(&l, layout).unwrap(), x);
                for target in [l.len() - 1, l.len() + 1] {
                    for y in indel_preimages(&l, target, SIGMA) {
                        assert_eq!(
                            e1_decode_fast(&y, layout).as_ref(),
                            Ok(&x),
                            "x={x:?} y={y:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_garbage() {
        let layout = E1Layout::new(4).unwrap();
        assert!(e1_decode(&[0, 1, 2], layout).is_err());
        assert!(e1_decode(&[11; 10], layout).is_err());
    }
}
