use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Parameters of the zero-indel class `T_{w,a}^{m,w+1}` over `Σ_q`: words of
/// length `m` with exactly `w` nonzero symbols whose indicator satisfies
/// `Σ i·s_i ≡ a (mod w+1)`. For `q = 2` this is the binary class `S_{w,a}^{m,w+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ZeroIndelParams {
    pub m: usize,
    pub w: usize,
    pub a: usize,
    pub q: usize,
}

impl ZeroIndelParams {
    pub fn new(m: usize, w: usize, a: usize, q: usize) -> Result<Self> {
        if !(2..=256).contains(&q) {
            return Err(Error::InvalidParameter(format!(
                "alphabet size must be in 2..=256, got {q}"
            )));
        }
        if w > m || a > w {
            return Err(Error::InvalidParameter(format!(
                "need w <= m and a <= w, got m={m} w={w} a={a}"
            )));
        }
        Ok(Self { m, w, a, q })
    }
}

fn weight(t: &[u8]) -> usize {
    t.iter().filter(|&&s| s != 0).count()
}

/// Unreduced `Σ i·s_i` of the nonzero indicator, 1-based.
fn indicator_syndrome(t: &[u8]) -> usize {
    t.iter()
        .enumerate()
        .filter(|(_, &s)| s != 0)
        .map(|(i, _)| i + 1)
        .sum()
}

pub fn zero_indel_member(t: &[u8], p: ZeroIndelParams) -> bool {
    t.len() == p.m
        && t.iter().all(|&s| (s as usize) < p.q)
        && weight(t) == p.w
        && indicator_syndrome(t) % (p.w + 1) == p.a
}

fn unique(survivors: BTreeSet<Vec<u8>>) -> Result<Vec<u8>> {
    let mut it = survivors.into_iter();
    match (it.next(), it.next()) {
        (Some(x), None) => Ok(x),
        (None, _) => Err(Error::NoCodeword),
        _ => Err(Error::MultipleCandidates),
    }
}

/// Candidates one zero away from `y`, restricted to zero-run boundaries.
fn zero_neighbours(y: &[u8], target_len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if target_len == y.len() + 1 {
        for pos in 0..=y.len() {
            // Inserting anywhere inside a zero run is the same as at its start.
            if pos > 0 && y[pos - 1] == 0 {
                continue;
            }
            let mut x = y.to_vec();
            x.insert(pos, 0);
            out.push(x);
        }
    } else if target_len + 1 == y.len() {
        for pos in 0..y.len() {
            if y[pos] != 0 || (pos > 0 && y[pos - 1] == 0) {
                continue;
            }
            let mut x = y.to_vec();
            x.remove(pos);
            out.push(x);
        }
    }
    out
}

/// Corrects a single inserted or deleted zero.
pub fn zero_indel_decode(y: &[u8], p: ZeroIndelParams) -> Result<Vec<u8>> {
    if let Some(&symbol) = y.iter().find(|&&s| s as usize >= p.q) {
        return Err(Error::AlphabetMismatch { symbol, size: p.q });
    }
    if y.len() == p.m {
        return if zero_indel_member(y, p) {
            Ok(y.to_vec())
        } else {
            Err(Error::NoCodeword)
        };
    }
    unique(
        zero_neighbours(y, p.m)
            .into_iter()
            .filter(|x| zero_indel_member(x, p))
            .collect(),
    )
}

/// `|S_{w,a}^{m,w+1}|` for every `a ∈ 0..=w`, by dynamic programming over
/// positions (weight so far, residue so far).
pub fn binary_class_sizes(m: usize, w: usize) -> Vec<BigUint> {
    let modulus = w + 1;
    // table[j][r]: words over the positions seen so far with weight j and residue r
    let mut table = vec![vec![BigUint::zero(); modulus]; w + 1];
    table[0][0] = BigUint::one();
    for i in 1..=m {
        for j in (1..=w.min(i)).rev() {
            for r in 0..modulus {
                let from = (r + modulus - i % modulus) % modulus;
                let add = table[j - 1][from].clone();
                if !add.is_zero() {
                    table[j][r] += add;
                }
            }
        }
    }
    table.swap_remove(w)
}

/// `|T_{w,a}^{m,w+1}| = (q-1)^w · |S_{w,a}^{m,w+1}|` for every `a ∈ 0..=w`.
pub fn zero_indel_class_sizes(m: usize, w: usize, q: usize) -> Vec<BigUint> {
    let factor = BigUint::from(q - 1).pow(w as u32);
    binary_class_sizes(m, w)
        .into_iter()
        .map(|s| s * &factor)
        .collect()
}

/// The union over all weights `w` of the largest class `T_{w,a*_w}^{m,w+1}`.
/// Distinct weights never collide under a zero indel, so the union is itself
/// a zero-indel code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroIndelUnion {
    pub m: usize,
    pub q: usize,
    /// `a*_w` for `w = 0..=m`.
    pub residues: Vec<usize>,
    /// `|T_{w,a*_w}|` for `w = 0..=m`.
    pub class_sizes: Vec<BigUint>,
}

pub fn zero_indel_union(m: usize, q: usize) -> Result<ZeroIndelUnion> {
    if !(2..=256).contains(&q) {
        return Err(Error::InvalidParameter(format!(
            "alphabet size must be in 2..=256, got {q}"
        )));
    }
    let mut residues = Vec::with_capacity(m + 1);
    let mut class_sizes = Vec::with_capacity(m + 1);
    for w in 0..=m {
        let sizes = zero_indel_class_sizes(m, w, q);
        let mut best = 0;
        for (a, s) in sizes.iter().enumerate() {
            if *s > sizes[best] {
                best = a;
            }
        }
        residues.push(best);
        class_sizes.push(sizes[best].clone());
    }
    Ok(ZeroIndelUnion {
        m,
        q,
        residues,
        class_sizes,
    })
}

impl ZeroIndelUnion {
    pub fn size(&self) -> BigUint {
        self.class_sizes.iter().sum()
    }

    pub fn params_for_weight(&self, w: usize) -> Option<ZeroIndelParams> {
        let a = *self.residues.get(w)?;
        Some(ZeroIndelParams {
            m: self.m,
            w,
            a,
            q: self.q,
        })
    }

    pub fn contains(&self, t: &[u8]) -> bool {
        t.len() == self.m
            && self
                .params_for_weight(weight(t))
                .is_some_and(|p| zero_indel_member(t, p))
    }

    /// A zero indel preserves the weight, so the class is read off `y`.
    pub fn decode(&self, y: &[u8]) -> Result<Vec<u8>> {
        let p = self.params_for_weight(weight(y)).ok_or(Error::NoCodeword)?;
        zero_indel_decode(y, p)
    }
}
