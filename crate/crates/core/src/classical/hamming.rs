use crate::error::{Error, Result};

pub fn is_prime(p: usize) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// Field size and parity digit count of a Hamming code over GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HammingParams {
    pub p: usize,
    pub r: usize,
}

impl HammingParams {
    pub fn new(p: usize, r: usize) -> Result<Self> {
        if !is_prime(p) || p > 251 {
            return Err(Error::InvalidParameter(format!(
                "field size must be a prime below 256, got {p}"
            )));
        }
        if r == 0 || (p as f64).powi(r as i32) > 1e9 {
            return Err(Error::InvalidParameter(format!(
                "parity digit count {r} out of range for p = {p}"
            )));
        }
        Ok(Self { p, r })
    }

    /// Full code length `(p^r - 1)/(p - 1)`.
    pub fn length(&self) -> usize {
        (self.p.pow(self.r as u32) - 1) / (self.p - 1)
    }

    /// Smallest `r` with `(p^r - 1)/(p - 1) >= k + r`.
    pub fn for_message_len(p: usize, k: usize) -> Result<Self> {
        let mut r = 1;
        loop {
            let params = Self::new(p, r)?;
            if params.length() >= k + r {
                return Ok(params);
            }
            r += 1;
        }
    }

    /// Smallest `r` with `(p^r - 1)/(p - 1) >= n`, for word length `n > r`.
    pub fn for_word_len(p: usize, n: usize) -> Result<Self> {
        let mut r = 1;
        loop {
            let params = Self::new(p, r)?;
            if params.length() >= n {
                if n <= r {
                    return Err(Error::InvalidParameter(format!(
                        "word length {n} leaves no message digits"
                    )));
                }
                return Ok(params);
            }
            r += 1;
        }
    }

    /// Canonical parity-check columns: every nonzero r-vector whose topmost
    /// nonzero entry is 1, ascending as base-p numbers (entry 0 most significant).
    pub fn canonical_columns(&self) -> Vec<Vec<u8>> {
        let total = self.p.pow(self.r as u32);
        let mut out = Vec::with_capacity(self.length());
        for v in 1..total {
            let col = crate::words::nth_word(v as u64, self.p, self.r);
            if col.iter().find(|&&e| e != 0) == Some(&1) {
                out.push(col);
            }
        }
        out
    }
}

/// Systematic, possibly shortened, Hamming code over GF(p).
///
/// Words are laid out as `k` message digits followed by `r` parity digits.
/// Message digit `i` sits on the `i`-th non-identity canonical column and
/// parity digit `j` on the unit column `e_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HammingCode {
    pub params: HammingParams,
    pub k: usize,
    columns: Vec<Vec<u8>>,
}

impl HammingCode {
    pub fn new(params: HammingParams, k: usize) -> Result<Self> {
        if k + params.r > params.length() {
            return Err(Error::InvalidParameter(format!(
                "message length {k} too long for r = {}",
                params.r
            )));
        }
        let r = params.r;
        let is_unit = |c: &Vec<u8>| c.iter().filter(|&&e| e != 0).count() == 1;
        let mut columns: Vec<Vec<u8>> = params
            .canonical_columns()
            .into_iter()
            .filter(|c| !is_unit(c))
            .take(k)
            .collect();
        for j in 0..r {
            let mut e = vec![0u8; r];
            e[j] = 1;
            columns.push(e);
        }
        Ok(Self { params, k, columns })
    }

    pub fn for_message_len(p: usize, k: usize) -> Result<Self> {
        Self::new(HammingParams::for_message_len(p, k)?, k)
    }

    pub fn for_word_len(p: usize, n: usize) -> Result<Self> {
        let params = HammingParams::for_word_len(p, n)?;
        Self::new(params, n - params.r)
    }

    pub fn word_len(&self) -> usize {
        self.k + self.params.r
    }

    pub fn columns(&self) -> &[Vec<u8>] {
        &self.columns
    }

    fn check(&self, word: &[u8], len: usize) -> Result<()> {
        if word.len() != len {
            return Err(Error::InvalidParameter(format!(
                "expected {len} digits, got {}",
                word.len()
            )));
        }
        match word.iter().find(|&&d| d as usize >= self.params.p) {
            Some(&symbol) => Err(Error::AlphabetMismatch {
                symbol,
                size: self.params.p,
            }),
            None => Ok(()),
        }
    }

    /// Parity digits making the syndrome of `msg ∥ parity` zero.
    pub fn parity(&self, msg: &[u8]) -> Result<Vec<u8>> {
        self.check(msg, self.k)?;
        let p = self.params.p;
        let acc = self.accumulate(msg.iter().zip(&self.columns));
        Ok(acc.into_iter().map(|s| ((p - s) % p) as u8).collect())
    }

    pub fn encode(&self, msg: &[u8]) -> Result<Vec<u8>> {
        let mut word = msg.to_vec();
        word.extend(self.parity(msg)?);
        Ok(word)
    }

    fn accumulate<'a>(&self, terms: impl Iterator<Item = (&'a u8, &'a Vec<u8>)>) -> Vec<usize> {
        let p = self.params.p;
        let mut acc = vec![0usize; self.params.r];
        for (&d, col) in terms {
            for (a, &c) in acc.iter_mut().zip(col) {
                *a = (*a + d as usize * c as usize) % p;
            }
        }
        acc
    }

    pub fn syndrome(&self, word: &[u8]) -> Result<Vec<u8>> {
        self.check(word, self.word_len())?;
        Ok(self
            .accumulate(word.iter().zip(&self.columns))
            .into_iter()
            .map(|s| s as u8)
            .collect())
    }

    /// Locates a single substitution from a syndrome difference: returns
    /// `(position, error value)`, or `None` for a zero difference.
    pub fn locate(&self, diff: &[u8]) -> Result<Option<(usize, u8)>> {
        let p = self.params.p;
        let Some(&lead) = diff.iter().find(|&&e| e != 0) else {
            return Ok(None);
        };
        let inv = mod_inverse(lead as usize, p);
        let normalized: Vec<u8> = diff.iter().map(|&e| (e as usize * inv % p) as u8).collect();
        self.columns
            .iter()
            .position(|c| *c == normalized)
            .map(|pos| Some((pos, lead)))
            .ok_or(Error::UncorrectableSyndrome)
    }

    /// Corrects at most one substitution relative to the coset with syndrome
    /// `target` (all zeros for the code itself).
    pub fn correct_in_coset(&self, word: &[u8], target: &[u8]) -> Result<(Vec<u8>, Option<usize>)> {
        let p = self.params.p;
        let s = self.syndrome(word)?;
        let diff: Vec<u8> = s
            .iter()
            .zip(target)
            .map(|(&a, &b)| ((a as usize + p - b as usize) % p) as u8)
            .collect();
        let mut out = word.to_vec();
        match self.locate(&diff)? {
            None => Ok((out, None)),
            Some((pos, e)) => {
                out[pos] = ((out[pos] as usize + p - e as usize) % p) as u8;
                Ok((out, Some(pos)))
            }
        }
    }

    pub fn correct(&self, word: &[u8]) -> Result<(Vec<u8>, Option<usize>)> {
        let zero = vec![0u8; self.params.r];
        self.correct_in_coset(word, &zero)
    }
}

fn mod_inverse(a: usize, p: usize) -> usize {
    // p is prime, so a^(p-2) is the inverse.
    let mut result = 1;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Parity digits of `msg` under the canonical code with parameters `hp`.
pub fn hamming_redundancy(msg: &[u8], hp: HammingParams) -> Result<Vec<u8>> {
    HammingCode::new(hp, msg.len())?.parity(msg)
}

/// Corrects a single substitution in `msg ∥ parity`.
pub fn hamming_decode(word: &[u8], hp: HammingParams) -> Result<Vec<u8>> {
    if word.len() <= hp.r {
        return Err(Error::InvalidParameter(format!(
            "word of length {} has no message digits",
            word.len()
        )));
    }
    let code = HammingCode::new(hp, word.len() - hp.r)?;
    Ok(code.correct(word)?.0)
}
