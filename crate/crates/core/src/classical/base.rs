use crate::error::{Error, Result};

/// Fixed-width, most-significant-first digit string.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitString {
    pub base: u32,
    pub digits: Vec<u8>,
}

impl DigitString {
    pub fn width(&self) -> usize {
        self.digits.len()
    }

    pub fn value(&self) -> u64 {
        self.digits
            .iter()
            .fold(0u64, |acc, &d| acc * self.base as u64 + d as u64)
    }

    /// Parses digits from their values, checking each against `base`.
    pub fn from_digits(base: u32, digits: &[u8]) -> Result<Self> {
        if let Some(&d) = digits.iter().find(|&&d| d as u32 >= base) {
            return Err(Error::AlphabetMismatch {
                symbol: d,
                size: base as usize,
            });
        }
        Ok(Self {
            base,
            digits: digits.to_vec(),
        })
    }
}

/// Writes `v` in base `to_base` using exactly `width` digits.
///
/// The source base only matters for how `v` was written down; the integer
/// itself is what gets converted.
pub fn base_convert(v: u64, to_base: u32, width: usize) -> Result<DigitString> {
    if !(2..=256).contains(&to_base) {
        return Err(Error::InvalidParameter(format!(
            "base must be in 2..=256, got {to_base}"
        )));
    }
    let mut digits = vec![0u8; width];
    let mut rest = v;
    for slot in digits.iter_mut().rev() {
        *slot = (rest % to_base as u64) as u8;
        rest /= to_base as u64;
    }
    if rest != 0 {
        return Err(Error::Overflow {
            value: v,
            base: to_base,
            width,
        });
    }
    Ok(DigitString {
        base: to_base,
        digits,
    })
}
