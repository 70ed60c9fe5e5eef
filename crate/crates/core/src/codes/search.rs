use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::classical::{
    is_prime, signature, tenengolts_decode, vt_syndrome, HammingCode, TenengoltsParams,
};
use crate::error::{Error, Result};
use crate::labeling::{invert_labeling, label_framed, phi, FlankConvention, LabelSet};
use crate::words::{checked_word_count, nth_word};

pub fn smallest_prime_at_least(v: usize) -> usize {
    (v.max(2)..)
        .find(|&p| is_prime(p))
        .expect("primes are unbounded")
}

/// Words whose framed labeling lies in `labelings`. Framed labeling is
/// injective for the supported sets, so each labeling has at most one preimage.
pub fn lift_code(
    labelings: &HashSet<Vec<u8>>,
    set: &LabelSet,
    flanks: FlankConvention,
) -> Vec<Vec<u8>> {
    let mut out: Vec<Vec<u8>> = labelings
        .iter()
        .filter_map(|u| invert_labeling(u, set, flanks).ok())
        .collect();
    out.sort();
    out
}

/// Framed labelings of every word of length `n`, in lexicographic word order.
fn all_framed(n: usize, set: &LabelSet, cap: u64) -> Result<Vec<Vec<u8>>> {
    let q = set.alphabet().size();
    let total = checked_word_count(q, n, cap)?;
    (0..total)
        .into_par_iter()
        .map(|i| label_framed(&nth_word(i, q, n), set, FlankConvention::default()))
        .collect()
}

/// Best Tenengolts class over framed labelings of length `n + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TenengoltsLabelingCode {
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub size: u64,
    /// Number of distinct framed labelings searched.
    pub labelings: u64,
    #[serde(skip)]
    pub params: TenengoltsParams,
    #[serde(skip)]
    pub set: LabelSet,
}

impl TenengoltsLabelingCode {
    pub fn contains(&self, x: &[u8]) -> bool {
        x.len() == self.n
            && label_framed(x, &self.set, FlankConvention::default())
                .is_ok_and(|u| crate::classical::tenengolts_member(&u, self.params))
    }

    /// Pigeonhole floor `labelings / (σ · n)`.
    pub fn floor(&self) -> f64 {
        self.labelings as f64 / (self.params.q * self.n) as f64
    }

    pub fn decode(&self, u: &[u8]) -> Result<Vec<u8>> {
        let z = tenengolts_decode(u, self.params).map_err(|_| Error::NotDecodable)?;
        invert_labeling(&z, &self.set, FlankConvention::default())
    }
}

/// Exhaustive search for the Tenengolts class `T_{a,b}(n+1; σ)` holding the
/// most framed labelings of words of length `n`. Ties go to the smallest `(a, b)`.
pub fn search_tenengolts_labeling_code(
    n: usize,
    set: &LabelSet,
    cap: u64,
) -> Result<TenengoltsLabelingCode> {
    let sigma = set.labeling_alphabet_size();
    let len = n + 1;
    let probe = TenengoltsParams::new(len, sigma, 0, 0)?;
    let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    let labelings = all_framed(n, set, cap)?;
    for u in &labelings {
        let a = vt_syndrome(&signature(u)) % len;
        let b = u.iter().map(|&v| v as usize).sum::<usize>() % sigma;
        *counts.entry((a, b)).or_default() += 1;
    }
    let mut best = ((0, 0), 0u64);
    for (&key, &count) in &counts {
        if count > best.1 {
            best = (key, count);
        }
    }
    let ((a, b), size) = best;
    Ok(TenengoltsLabelingCode {
        n,
        a,
        b,
        size,
        labelings: labelings.len() as u64,
        params: TenengoltsParams { a, b, ..probe },
        set: set.clone(),
    })
}

/// Best coset of the shortened GF(p) Hamming code of length `n + 1` over
/// framed labelings of words of length `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetCode {
    pub n: usize,
    pub p: usize,
    pub r: usize,
    pub syndrome: Vec<u8>,
    pub size: u64,
    pub labelings: u64,
    #[serde(skip)]
    pub code: HammingCode,
    #[serde(skip)]
    pub set: LabelSet,
}

impl CosetCode {
    pub fn contains(&self, x: &[u8]) -> bool {
        x.len() == self.n
            && label_framed(x, &self.set, FlankConvention::default())
                .ok()
                .and_then(|u| self.code.syndrome(&u).ok())
                .is_some_and(|s| s == self.syndrome)
    }

    /// Pigeonhole floor `labelings / (((p-1)(n+1) + 1) · p)`.
    pub fn floor(&self) -> f64 {
        self.labelings as f64 / (((self.p - 1) * (self.n + 1) + 1) * self.p) as f64
    }

    pub fn decode(&self, u: &[u8]) -> Result<Vec<u8>> {
        if u.len() != self.n + 1 {
            return Err(Error::NotDecodable);
        }
        let (fixed, _) = self
            .code
            .correct_in_coset(u, &self.syndrome)
            .map_err(|_| Error::NotDecodable)?;
        invert_labeling(&fixed, &self.set, FlankConvention::default())
    }
}

/// Field size used for a label set: the smallest prime above `φ(q)`, raised
/// if needed to cover the set's labeling alphabet.
pub fn coset_field_size(set: &LabelSet) -> Result<usize> {
    let q = set.alphabet().size();
    Ok(smallest_prime_at_least(
        (phi(q)? + 1).max(set.labeling_alphabet_size()),
    ))
}

pub fn search_hamming_coset(n: usize, set: &LabelSet, p: usize, cap: u64) -> Result<CosetCode> {
    if !is_prime(p) || p < set.labeling_alphabet_size() {
        return Err(Error::InvalidParameter(format!(
            "p = {p} must be a prime of at least {}",
            set.labeling_alphabet_size()
        )));
    }
    let code = HammingCode::for_word_len(p, n + 1)?;
    let labelings = all_framed(n, set, cap)?;
    let syndromes: Vec<Vec<u8>> = labelings
        .par_iter()
        .map(|u| code.syndrome(u))
        .collect::<Result<_>>()?;
    let mut counts: BTreeMap<Vec<u8>, u64> = BTreeMap::new();
    for s in syndromes {
        *counts.entry(s).or_default() += 1;
    }
    let (syndrome, size) =
        counts.into_iter().fold(
            (Vec::new(), 0u64),
            |best, (s, c)| if c > best.1 { (s, c) } else { best },
        );
    Ok(CosetCode {
        n,
        p,
        r: code.params.r,
        syndrome,
        size,
        labelings: labelings.len() as u64,
        code,
        set: set.clone(),
    })
}
