use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use serde::Serialize;

use super::{hamming_distance, substitution_neighbours, unique, A, G};
use crate::classical::{HammingCode, HammingParams};
use crate::error::{Error, Result};
use crate::labeling::{invert_labeling, label_framed, FlankConvention, LabelSet};

const SIGMA: usize = 11;
const P: usize = 11;

/// Field widths of an E2 codeword `x ∥ par ∥ G ∥ red`.
///
/// `r` is the number of GF(11) parity digits protecting the `k` data labels
/// together with the seam label; each digit takes two DNA symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct E2Layout {
    pub k: usize,
    pub parity: usize,
    pub separator: usize,
    pub r: usize,
    pub n: usize,
}

impl E2Layout {
    pub fn new(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("E2 needs k >= 2, got {k}")));
        }
        let r = HammingParams::for_message_len(P, k + 1)?.r;
        Ok(Self {
            k,
            parity: 2,
            separator: 1,
            r,
            n: k + 3 + 2 * r,
        })
    }

    pub fn framed_len(&self) -> usize {
        self.n + 1
    }

    pub fn redundancy_bits(&self) -> usize {
        2 * (self.n - self.k)
    }

    fn code(&self) -> Arc<HammingCode> {
        static CODES: OnceLock<RwLock<HashMap<usize, Arc<HammingCode>>>> = OnceLock::new();
        let codes = CODES.get_or_init(Default::default);
        if let Some(code) = codes.read().expect("code cache").get(&self.k) {
            return code.clone();
        }
        let code = Arc::new(
            HammingCode::for_message_len(P, self.k + 1).expect("validated in E2Layout::new"),
        );
        codes
            .write()
            .expect("code cache")
            .insert(self.k, code.clone());
        code
    }
}

fn set() -> &'static LabelSet {
    LabelSet::minimal_dna_static()
}

/// The pair `α_d` for `d >= 1`, and the unlabeled pair AA for `d = 0`, so that
/// the framed labeling shows `d` at the pair's first position.
fn digit_pair(d: u8) -> [u8; 2] {
    match set().label(d as usize) {
        Some(l) if d > 0 => [l[0], l[1]],
        _ => [A, A],
    }
}

fn sum_mod(z: &[u8]) -> u8 {
    (z.iter().map(|&v| v as usize).sum::<usize>() % SIGMA) as u8
}

/// Systematic single-substitution encoder over the minimal DNA label set.
pub fn e2_encode(x: &[u8]) -> Result<Vec<u8>> {
    let layout = E2Layout::new(x.len())?;
    let k = layout.k;
    let s = set();
    let z = label_framed(x, s, FlankConvention::default())?;
    let par = digit_pair(sum_mod(&z[..k]));
    let mut msg = z[..k].to_vec();
    msg.push(s.pair_symbol(x[k - 1], par[0]));
    let red = layout.code().parity(&msg)?;
    let mut out = x.to_vec();
    out.extend(par);
    out.push(G);
    for d in red {
        out.extend(digit_pair(d));
    }
    Ok(out)
}

fn check_input(u: &[u8], layout: E2Layout) -> Result<()> {
    if let Some(&symbol) = u.iter().find(|&&v| v as usize >= SIGMA) {
        return Err(Error::AlphabetMismatch {
            symbol,
            size: SIGMA,
        });
    }
    if u.len() != layout.framed_len() {
        return Err(Error::NotDecodable);
    }
    Ok(())
}

/// Decodes a framed labeling carrying at most one substitution.
pub fn e2_decode(u: &[u8], layout: E2Layout) -> Result<Vec<u8>> {
    check_input(u, layout)?;
    e2_decode_fast(u, layout).or_else(|_| e2_decode_exhaustive(u, layout))
}

fn accept(x: &[u8], u: &[u8]) -> Result<bool> {
    let l = label_framed(&e2_encode(x)?, set(), FlankConvention::default())?;
    Ok(hamming_distance(&l, u).is_some_and(|d| d <= 1))
}

/// Parity-check decoder. The label at `k+1` is the sum of the data labels;
/// when it agrees the data is intact and only the seam may be wrong, otherwise
/// the Hamming digits locate the substituted data label.
pub fn e2_decode_fast(u: &[u8], layout: E2Layout) -> Result<Vec<u8>> {
    check_input(u, layout)?;
    let k = layout.k;
    let s = set();
    let z = &u[..k];
    if u[k + 1] == sum_mod(z) {
        let par = digit_pair(u[k + 1]);
        let mut survivors = BTreeSet::new();
        for seam in 0..SIGMA as u8 {
            let mut w = z.to_vec();
            w.push(seam);
            if let Ok(x) = invert_labeling(&w, s, FlankConvention::new(A, par[0])) {
                if accept(&x, u)? {
                    survivors.insert(x);
                }
            }
        }
        return unique(survivors);
    }
    let code = layout.code();
    let mut word = u[..=k].to_vec();
    word.extend((1..=layout.r).map(|j| u[k + 2 + 2 * j]));
    let (fixed, at) = code.correct(&word)?;
    if at == Some(k) || at.is_some_and(|p| p > k) {
        return Err(Error::NotDecodable);
    }
    let par = digit_pair(sum_mod(&fixed[..k]));
    let x = invert_labeling(&fixed[..=k], s, FlankConvention::new(A, par[0]))?;
    if accept(&x, u)? {
        Ok(x)
    } else {
        Err(Error::NotDecodable)
    }
}

/// Tries every word within one substitution of `u`, keeping framed labelings
/// of codewords.
pub fn e2_decode_exhaustive(u: &[u8], layout: E2Layout) -> Result<Vec<u8>> {
    check_input(u, layout)?;
    let mut survivors = BTreeSet::new();
    let k = layout.k;
    for w in substitution_neighbours(u, SIGMA) {
        // Codeword labelings carry the data sum right after the seam.
        if w[k + 1] != sum_mod(&w[..k]) {
            continue;
        }
        let Ok(c) = invert_labeling(&w, set(), FlankConvention::default()) else {
            continue;
        };
        if e2_encode(&c[..layout.k])? == c {
            survivors.insert(c[..layout.k].to_vec());
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
        assert_eq!(E2Layout::new(4).unwrap().r, 2);
        assert_eq!(E2Layout::new(4).unwrap().n, 11);
        assert_eq!(E2Layout::new(8).unwrap().r, 2);
        assert_eq!(E2Layout::new(9).unwrap().r, 2);
        assert_eq!(E2Layout::new(10).unwrap().r, 3);
        assert!(E2Layout::new(1).is_err());
    }

    #[test]
    fn regression_acgt() {
        let c = e2_encode(&dna("ACGT")).unwrap();
        assert_eq!(Alphabet::dna().render(&c), "ACGTTAGGGAC");
        let l = label_framed(&c, set(), FlankConvention::default()).unwrap();
        assert_eq!(l, vec![0, 1, 0, 6, 10, 7, 0, 5, 5, 3, 1, 2]);
    }

    #[test]
    fn zero_parity_is_aa() {
        let c = e2_encode(&dna("AAAA")).unwrap();
        assert_eq!(Alphabet::dna().render(&c[4..7]), "AAG");
    }

    #[test]
    fn all_substitutions_small_k() {
        for k in 2..=4 {
            let layout = E2Layout::new(k).unwrap();
            for x in all_words(4, k) {
                let l = label_framed(&e2_encode(&x).unwrap(), set(), FlankConvention::default())
                    .unwrap();
                for y in substitution_neighbours(&l, SIGMA) {
                    assert_eq!(
                        e2_decode_fast(&y, layout).as_ref(),
                        Ok(&x),
                        "x={x:?} y={y:?}"
                    );
                }
            }
        }
    }
}
