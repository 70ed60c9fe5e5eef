use crate::error::{Error, Result};
use crate::words::all_words;

/// Parameters of `VT_a(n) = {x ∈ {0,1}^n : Σ i·x_i ≡ a (mod n+1)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VtParams {
    pub n: usize,
    pub a: usize,
}

impl VtParams {
    pub fn new(n: usize, a: usize) -> Result<Self> {
        if a > n {
            return Err(Error::InvalidParameter(format!(
                "VT residue {a} must be at most n = {n}"
            )));
        }
        Ok(Self { n, a })
    }

    fn modulus(&self) -> usize {
        self.n + 1
    }
}

/// Unreduced `Σ i·x_i` with 1-based indices.
pub fn vt_syndrome(x: &[u8]) -> usize {
    x.iter()
        .enumerate()
        .map(|(i, &b)| (i + 1) * b as usize)
        .sum()
}

fn check_binary(x: &[u8]) -> Result<()> {
    match x.iter().find(|&&b| b > 1) {
        Some(&symbol) => Err(Error::AlphabetMismatch { symbol, size: 2 }),
        None => Ok(()),
    }
}

pub fn vt_member(x: &[u8], params: VtParams) -> bool {
    x.len() == params.n
        && x.iter().all(|&b| b <= 1)
        && vt_syndrome(x) % params.modulus() == params.a
}

pub fn vt_codebook(params: VtParams) -> Vec<Vec<u8>> {
    all_words(2, params.n)
        .filter(|x| vt_member(x, params))
        .collect()
}

/// Corrects at most one deletion or insertion.
///
/// A deletion is undone by the weight/deficit rule: with deficit `Δ` and
/// weight `w`, insert a 0 with `Δ` ones to its right when `Δ ≤ w`, otherwise a
/// 1 with `Δ - w - 1` zeros to its left. An insertion is undone by removing the
/// bit whose contribution to the syndrome equals the excess.
pub fn vt_decode_indel(y: &[u8], params: VtParams) -> Result<Vec<u8>> {
    check_binary(y)?;
    let n = params.n;
    let modulus = params.modulus();
    let candidate = if y.len() == n {
        y.to_vec()
    } else if y.len() + 1 == n {
        let weight = y.iter().filter(|&&b| b == 1).count();
        let deficit = (params.a + modulus - vt_syndrome(y) % modulus) % modulus;
        let mut x = y.to_vec();
        if deficit <= weight {
            let mut pos = y.len();
            let mut ones = 0;
            while ones < deficit {
                pos -= 1;
                ones += y[pos] as usize;
            }
            x.insert(pos, 0);
        } else {
            let zeros_needed = deficit - weight - 1;
            let mut pos = 0;
            let mut zeros = 0;
            while zeros < zeros_needed {
                if pos == y.len() {
                    return Err(Error::NoCodeword);
                }
                zeros += (y[pos] == 0) as usize;
                pos += 1;
            }
            x.insert(pos, 1);
        }
        x
    } else if y.len() == n + 1 {
        let weight = y.iter().filter(|&&b| b == 1).count();
        let excess = (vt_syndrome(y) + modulus - params.a % modulus) % modulus;
        let mut ones_right = weight;
        let mut zeros_left = 0;
        let mut found = None;
        for (i, &b) in y.iter().enumerate() {
            if b == 1 {
                ones_right -= 1;
                if (weight + zeros_left) % modulus == excess {
                    found = Some(i);
                    break;
                }
            } else {
                if ones_right % modulus == excess {
                    found = Some(i);
                    break;
                }
                zeros_left += 1;
            }
        }
        let pos = found.ok_or(Error::NoCodeword)?;
        let mut x = y.to_vec();
        x.remove(pos);
        x
    } else {
        return Err(Error::NoCodeword);
    };
    if vt_member(&candidate, params) {
        Ok(candidate)
    } else {
        Err(Error::NoCodeword)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn deletions(x: &[u8]) -> BTreeSet<Vec<u8>> {
        (0..x.len())
            .map(|i| {
                let mut y = x.to_vec();
                y.remove(i);
                y
            })
            .collect()
    }

    fn insertions(x: &[u8]) -> BTreeSet<Vec<u8>> {
        let mut out = BTreeSet::new();
        for i in 0..=x.len() {
            for b in 0..2 {
                let mut y = x.to_vec();
                y.insert(i, b);
                out.insert(y);
            }
        }
        out
    }

    #[test]
    fn vt0_of_length_four() {
        let book = vt_codebook(VtParams::new(4, 0).unwrap());
        assert_eq!(
            book,
            vec![
                vec![0, 0, 0, 0],
                vec![0, 1, 1, 0],
                vec![1, 0, 0, 1],
                vec![1, 1, 1, 1]
            ]
        );
    }

    #[test]
    fn decode_examples() {
        let p = VtParams::new(4, 0).unwrap();
        assert_eq!(vt_decode_indel(&[0, 0, 1], p).unwrap(), vec![1, 0, 0, 1]);
        assert_eq!(vt_decode_indel(&[1, 0, 0, 1], p).unwrap(), vec![1, 0, 0, 1]);
        assert_eq!(vt_decode_indel(&[1, 0, 0, 0], p), Err(Error::NoCodeword));
        assert!(vt_decode_indel(&[2, 0, 0], p).is_err());
    }

    #[test]
    fn corrects_every_single_indel() {
        for n in 1..=8 {
            for a in 0..=n {
                let p = VtParams::new(n, a).unwrap();
                for c in vt_codebook(p) {
                    for y in deletions(&c).into_iter().chain(insertions(&c)) {
                        assert_eq!(
                            vt_decode_indel(&y, p).as_ref(),
                            Ok(&c),
                            "n={n} a={a} y={y:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn residue_bound() {
        assert!(VtParams::new(3, 4).is_err());
    }
}
