//! Exact size bounds for single zero-deletion codes and all-labels
//! single-deletion labeling codes.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::words::{all_words, checked_word_count};

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Number of maximal runs of zeros in `x`.
pub fn zero_runs(x: &[u8]) -> usize {
    x.iter()
        .enumerate()
        .filter(|&(i, &s)| s == 0 && (i == 0 || x[i - 1] != 0))
        .count()
}

/// Number of words in `Σ_q^L` with exactly `z` runs of zeros.
pub fn count_zero_run_sequences(len: usize, z: usize, q: usize) -> BigUint {
    let nz = BigUint::from(q - 1);
    if z == 0 {
        return nz.pow(len as u32);
    }
    if q == 2 {
        return binomial(len + 1, 2 * z);
    }
    if 2 * z > len + 1 {
        return BigUint::zero();
    }
    // i counts the zeros beyond one per run.
    (0..=len + 1 - 2 * z)
        .map(|i| {
            binomial(i + z - 1, z - 1) * binomial(len + 1 - z - i, z) * nz.pow((len - z - i) as u32)
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroDeletionBound {
    pub m: usize,
    pub q: usize,
    /// `Σ_{z>=1} N(m-1, z, q) / z`.
    pub transversal: BigRational,
    /// `2^{m+2} / (m-2)`, binary only.
    pub closed_form: Option<BigRational>,
}

/// Fractional-transversal upper bound on single zero-deletion codes of length `m`.
pub fn upper_bound_zero_deletion(m: usize, q: usize) -> Result<ZeroDeletionBound> {
    if m < 2 || q < 2 {
        return Err(Error::InvalidParameter(format!(
            "need m >= 2 and q >= 2, got m={m} q={q}"
        )));
    }
    let transversal = (1..=m)
        .map(|z| ratio(count_zero_run_sequences(m - 1, z, q), BigUint::from(z)))
        .fold(BigRational::zero(), |a, b| a + b);
    let closed_form = (q == 2 && m > 2)
        .then(|| ratio(BigUint::from(2u32).pow(m as u32 + 2), BigUint::from(m - 2)));
    Ok(ZeroDeletionBound {
        m,
        q,
        transversal,
        closed_form,
    })
}

/// Upper bound on all-labels single-deletion labeling codes of length `n`.
pub fn upper_bound_labeling(n: usize, q: usize) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    Ok(upper_bound_zero_deletion(n + 1, q)?.transversal)
}

/// `q^{n+1} / ((q-1)(n+2))`, the size guaranteed by the all-labels construction.
pub fn lower_bound_size(n: usize, q: usize) -> Result<BigRational> {
    if n == 0 || q < 2 {
        return Err(Error::InvalidParameter(format!(
            "need n >= 1 and q >= 2, got n={n} q={q}"
        )));
    }
    Ok(ratio(
        BigUint::from(q).pow(n as u32 + 1),
        BigUint::from((q - 1) * (n + 2)),
    ))
}

fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).log2();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().unwrap_or(f64::INFINITY).log2() + shift as f64
}

/// `log_q` of a positive rational.
pub fn log_rational(v: &BigRational, q: usize) -> f64 {
    let num = v.numer().magnitude();
    let den = v.denom().magnitude();
    (log2_big(num) - log2_big(den)) / (q as f64).log2()
}

pub fn render_rational(v: &BigRational) -> String {
    if v.is_integer() {
        format!("{}", v.numer())
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn rational_to_f64(v: &BigRational) -> f64 {
    match (v.numer().to_f64(), v.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => 2f64.powf(log_rational(v, 2)),
    }
}

fn ser_rational<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&render_rational(v))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRow {
    pub q: usize,
    pub n: usize,
    #[serde(serialize_with = "ser_rational")]
    pub lower: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub upper: BigRational,
    /// `log_q(upper) - log_q(lower)`.
    pub gap: f64,
}

pub fn bound_row(q: usize, n: usize) -> Result<BoundRow> {
    let lower = lower_bound_size(n, q)?;
    let upper = upper_bound_labeling(n, q)?;
    let gap = log_rational(&upper, q) - log_rational(&lower, q);
    Ok(BoundRow {
        q,
        n,
        lower,
        upper,
        gap,
    })
}

pub fn redundancy_gap_table(q: usize, ns: &[usize]) -> Result<Vec<BoundRow>> {
    ns.par_iter().map(|&n| bound_row(q, n)).collect()
}

/// Brute-force `Σ_{x ∈ Σ_q^L, z(x) >= 1} 1/z(x)`.
pub fn transversal_sum_brute(len: usize, q: usize, cap: u64) -> Result<BigRational> {
    checked_word_count(q, len, cap)?;
    let mut by_runs = vec![0u64; len + 2];
    for x in all_words(q, len) {
        by_runs[zero_runs(&x)] += 1;
    }
    Ok(by_runs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(z, &c)| ratio(BigUint::from(c), BigUint::from(z)))
        .fold(BigRational::zero(), |a, b| a + b))
}

/// Distinct words obtained by deleting one zero from `x`.
pub fn zero_deletion_ball(x: &[u8]) -> Vec<Vec<u8>> {
    (0..x.len())
        .filter(|&i| x[i] == 0 && (i == 0 || x[i - 1] != 0))
        .map(|i| {
            let mut y = x.to_vec();
            y.remove(i);
            y
        })
        .collect()
}

/// Outcome of checking the weights `w_y = 1/z(y)` against every zero-deletion
/// ball of `Σ_q^m`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransversalCheck {
    pub m: usize,
    pub q: usize,
    pub balls_checked: u64,
    /// Words whose ball size differs from their run count.
    pub size_mismatches: u64,
    /// Ball elements with more zero runs than their source.
    pub monotonicity_violations: u64,
    /// Nonempty balls whose weight is below one when zero-free words get
    /// weight zero.
    pub deficient_balls: u64,
    /// Smallest such word, if any.
    pub first_deficient: Option<Vec<u8>>,
    /// Nonempty balls below one when zero-free words get weight one instead.
    pub deficient_with_unit_weight: u64,
    pub passed: bool,
}

pub fn fractional_transversal_check(m: usize, q: usize, cap: u64) -> Result<TransversalCheck> {
    checked_word_count(q, m, cap)?;
    let mut report = TransversalCheck {
        m,
        q,
        balls_checked: 0,
        size_mismatches: 0,
        monotonicity_violations: 0,
        deficient_balls: 0,
        first_deficient: None,
        deficient_with_unit_weight: 0,
        passed: false,
    };
    for x in all_words(q, m) {
        let zx = zero_runs(&x);
        let ball = zero_deletion_ball(&x);
        if ball.len() != zx {
            report.size_mismatches += 1;
        }
        if ball.is_empty() {
            continue;
        }
        report.balls_checked += 1;
        let mut weight = BigRational::zero();
        let mut unit_weight = BigRational::zero();
        for y in &ball {
            let zy = zero_runs(y);
            if zy > zx {
                report.monotonicity_violations += 1;
            }
            if zy > 0 {
                let w = ratio(BigUint::one(), BigUint::from(zy));
                weight += &w;
                unit_weight += w;
            } else {
                unit_weight += BigRational::one();
            }
        }
        if weight < BigRational::one() {
            report.deficient_balls += 1;
            if report.first_deficient.is_none() {
                report.first_deficient = Some(x.clone());
            }
        }
        if unit_weight < BigRational::one() {
            report.deficient_with_unit_weight += 1;
        }
    }
    report.passed = report.size_mismatches == 0
        && report.monotonicity_violations == 0
        && report.deficient_balls == 0;
    Ok(report)
}
