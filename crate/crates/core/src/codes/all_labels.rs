use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use super::{indel_preimages, unique, within_one_indel};
use crate::classical::{binary_class_sizes, integrate, zero_indel_union, ZeroIndelUnion};
use crate::error::{Error, Result};
use crate::labeling::{invert_labeling, label_framed, Alphabet, FlankConvention, LabelSet};
use crate::words::{all_words, checked_word_count};

/// Single-deletion code for the all-labels set over `Σ_q`.
///
/// A word `x` belongs to the code when the derivative of `x_0 · x · x_end`
/// (without its first entry) lies in the zero-indel union of length `n + 1`.
/// A deletion inside a run of the framed pair sequence is a zero deletion in
/// that derivative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AllLabelsCode {
    pub q: usize,
    pub n: usize,
    pub flanks: FlankConvention,
    #[serde(skip)]
    pub union: ZeroIndelUnion,
    /// `a*_w` per weight.
    pub residues: Vec<usize>,
    #[serde(serialize_with = "as_string")]
    pub size: BigUint,
}

fn as_string<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Number of `(v_1..v_w) ∈ {1..q-1}^w` with each possible sum mod `q`.
fn nonzero_sum_counts(w: usize, q: usize) -> Vec<BigUint> {
    let mut counts = vec![BigUint::zero(); q];
    counts[0] = BigUint::from(1u32);
    for _ in 0..w {
        let mut next = vec![BigUint::zero(); q];
        for (s, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for v in 1..q {
                next[(s + v) % q] += c;
            }
        }
        counts = next;
    }
    counts
}

impl AllLabelsCode {
    /// Builds the code with left flank `x0`, choosing the right flank that
    /// maximizes the code size (smallest on ties).
    pub fn build(q: usize, n: usize, x0: u8) -> Result<Self> {
        let alphabet = Alphabet::new(q)?;
        alphabet.check_symbol(x0)?;
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        let m = n + 1;
        let union = zero_indel_union(m, q)?;
        // Positions and nonzero values are independent, so each class splits
        // by symbol sum as |S_{w,a}| times the value-sum distribution.
        let mut by_residue = vec![BigUint::zero(); q];
        for w in 0..=m {
            let binary = &binary_class_sizes(m, w)[union.residues[w]];
            for (c, count) in nonzero_sum_counts(w, q).into_iter().enumerate() {
                by_residue[c] += binary * count;
            }
        }
        let mut best_end = 0u8;
        let mut best = BigUint::zero();
        for end in 0..q as u8 {
            let c = (end as usize + q - x0 as usize) % q;
            if by_residue[c] > best {
                best = by_residue[c].clone();
                best_end = end;
            }
        }
        Ok(Self {
            q,
            n,
            flanks: FlankConvention::new(x0, best_end),
            residues: union.residues.clone(),
            union,
            size: best,
        })
    }

    pub fn label_set(&self) -> LabelSet {
        LabelSet::all_labels(Alphabet::new(self.q).expect("validated in build"))
    }

    /// `(x_1 - x_0, .., x_end - x_n) mod q`.
    pub fn derivative_segment(&self, x: &[u8]) -> Vec<u8> {
        let q = self.q;
        let mut out = Vec::with_capacity(x.len() + 1);
        let mut prev = self.flanks.left;
        for &s in x.iter().chain(std::iter::once(&self.flanks.right)) {
            out.push(((s as usize + q - prev as usize) % q) as u8);
            prev = s;
        }
        out
    }

    pub fn contains(&self, x: &[u8]) -> bool {
        x.len() == self.n
            && x.iter().all(|&s| (s as usize) < self.q)
            && self.union.contains(&self.derivative_segment(x))
    }

    pub fn labeling(&self, x: &[u8]) -> Result<Vec<u8>> {
        label_framed(x, &self.label_set(), self.flanks)
    }

    /// Enumerates the codebook, refusing more than `cap` candidate words.
    pub fn codebook(&self, cap: u64) -> Result<Vec<Vec<u8>>> {
        checked_word_count(self.q, self.n, cap)?;
        Ok(all_words(self.q, self.n)
            .filter(|x| self.contains(x))
            .collect())
    }

    fn check_symbols(&self, u: &[u8]) -> Result<()> {
        let sigma = self.q * self.q;
        match u.iter().find(|&&s| s as usize >= sigma) {
            Some(&symbol) => Err(Error::AlphabetMismatch {
                symbol,
                size: sigma,
            }),
            None => Ok(()),
        }
    }

    /// Decodes a framed pair-code labeling with at most one deletion or
    /// insertion, falling back to [`Self::decode_exhaustive`].
    pub fn decode(&self, u: &[u8]) -> Result<Vec<u8>> {
        self.check_symbols(u)?;
        self.decode_fast(u).or_else(|_| self.decode_exhaustive(u))
    }

    fn first(&self, s: u8) -> u8 {
        s / self.q as u8
    }

    fn second(&self, s: u8) -> u8 {
        s % self.q as u8
    }

    /// Boundaries `j` (between pair `j-1` and pair `j`, flanks included)
    /// where consecutive pairs disagree.
    fn breaks(&self, u: &[u8]) -> Vec<usize> {
        (0..=u.len())
            .filter(|&j| {
                let left = if j == 0 {
                    self.flanks.left
                } else {
                    self.second(u[j - 1])
                };
                let right = if j == u.len() {
                    self.flanks.right
                } else {
                    self.first(u[j])
                };
                left != right
            })
            .collect()
    }

    fn finish(&self, x: Vec<u8>, u: &[u8]) -> Result<Vec<u8>> {
        if self.contains(&x) && within_one_indel(&self.labeling(&x)?, u) {
            Ok(x)
        } else {
            Err(Error::NotDecodable)
        }
    }

    /// Chain-consistent input: every pair repeats a symbol of the framed word,
    /// so the indel is a zero indel of the derivative.
    fn decode_run(&self, u: &[u8]) -> Result<Vec<u8>> {
        let mut d: Vec<u8> = u
            .iter()
            .map(|&s| ((self.second(s) as usize + self.q - self.first(s) as usize) % self.q) as u8)
            .collect();
        d = self.union.decode(&d).map_err(|_| Error::NotDecodable)?;
        let mut w = integrate(&d, self.q);
        for s in w.iter_mut() {
            *s = ((*s as usize + self.flanks.left as usize) % self.q) as u8;
        }
        if w.pop() != Some(self.flanks.right) {
            return Err(Error::NotDecodable);
        }
        Ok(w)
    }

    pub fn decode_fast(&self, u: &[u8]) -> Result<Vec<u8>> {
        self.check_symbols(u)?;
        let set = self.label_set();
        let full = self.n + 1;
        let breaks = self.breaks(u);
        let x = if u.len() == full {
            invert_labeling(u, &set, self.flanks)?
        } else if u.len() + 1 == full {
            match breaks.as_slice() {
                [] => self.decode_run(u)?,
                [j] => {
                    let j = *j;
                    let left = if j == 0 {
                        self.flanks.left
                    } else {
                        self.second(u[j - 1])
                    };
                    let right = if j == u.len() {
                        self.flanks.right
                    } else {
                        self.first(u[j])
                    };
                    let mut w = u.to_vec();
                    w.insert(j, set.pair_symbol(left, right));
                    invert_labeling(&w, &set, self.flanks)?
                }
                _ => return Err(Error::NotDecodable),
            }
        } else if u.len() == full + 1 {
            match breaks.first() {
                None => self.decode_run(u)?,
                Some(&j) => {
                    let mut found = BTreeSet::new();
                    for i in [j.wrapping_sub(1), j] {
                        if i >= u.len() {
                            continue;
                        }
                        let mut w = u.to_vec();
                        w.remove(i);
                        if let Ok(x) = invert_labeling(&w, &set, self.flanks) {
                            if self.contains(&x) {
                                found.insert(x);
                            }
                        }
                    }
                    unique(found)?
                }
            }
        } else {
            return Err(Error::NotDecodable);
        };
        self.finish(x, u)
    }

    pub fn decode_exhaustive(&self, u: &[u8]) -> Result<Vec<u8>> {
        self.check_symbols(u)?;
        let set = self.label_set();
        let mut survivors = BTreeSet::new();
        for w in indel_preimages(u, self.n + 1, self.q * self.q) {
            if let Ok(x) = invert_labeling(&w, &set, self.flanks) {
                if self.contains(&x) {
                    survivors.insert(x);
                }
            }
        }
        unique(survivors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::ToPrimitive;

    #[test]
    fn size_matches_enumeration() {
        for q in 2..=4 {
            for n in 1..=5 {
                let code = AllLabelsCode::build(q, n, 0).unwrap();
                let book = code.codebook(1 << 20).unwrap();
                assert_eq!(BigUint::from(book.len()), code.size, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn size_examples() {
        let c7 = AllLabelsCode::build(2, 7, 0).unwrap();
        assert!(c7.size.to_u64().unwrap() >= 29);
        let c2 = AllLabelsCode::build(2, 2, 0).unwrap();
        assert!(c2.size.to_u64().unwrap() >= 2);
        let bound = BigRational::new(BigUint::from(256u32).into(), BigUint::from(9u32).into());
        assert!(BigRational::from_integer(c7.size.clone().into()) >= bound);
    }

    #[test]
    fn telescoping_sum() {
        let code = AllLabelsCode::build(3, 4, 1).unwrap();
        for x in code.codebook(1 << 20).unwrap() {
            let d = code.derivative_segment(&x);
            let sum = d.iter().map(|&v| v as usize).sum::<usize>() % 3;
            assert_eq!(sum, (code.flanks.right as usize + 3 - 1) % 3);
        }
    }

    #[test]
    fn corrects_indels() {
        for q in 2..=3 {
            for n in 1..=5 {
                let code = AllLabelsCode::build(q, n, 0).unwrap();
                for x in code.codebook(1 << 20).unwrap() {
                    let l = code.labeling(&x).unwrap();
                    for target in [l.len() - 1, l.len(), l.len() + 1] {
                        for y in indel_preimages(&l, target, q * q) {
                            assert_eq!(
                                code.decode_fast(&y).as_ref(),
                                Ok(&x),
                                "q={q} x={x:?} y={y:?}"
                            );
                        }
                    }
                }
            }
        }
    }
}
