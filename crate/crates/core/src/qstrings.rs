//! q-decreasing binary strings and strings avoiding a run of ones.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::limits::{CapExceeded, CapKind, DEFAULT_STRING_CAP};
use crate::sequences::Count;
use crate::slope::RationalSlope;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid bit {found:?} at index {index}")]
pub struct BitParseError {
    pub index: usize,
    pub found: char,
}

/// A binary string; orders lexicographically with `0 < 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        BitString { bits }
    }

    /// The `len` low bits of `mask`, most significant first.
    pub fn from_mask(mask: u64, len: usize) -> Self {
        BitString {
            bits: (0..len).rev().map(|i| (mask >> i) & 1 == 1).collect(),
        }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

impl FromStr for BitString {
    type Err = BitParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        text.chars()
            .enumerate()
            .map(|(index, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                found => Err(BitParseError { index, found }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BitString::new)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// `1^{b_0} 0^{a_1} 1^{b_1} 0^{a_2} 1^{b_2} …` with every `a_i ≥ 1`. Only the
/// last factor may have `b_i = 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorDecomposition {
    pub leading_ones: usize,
    pub factors: Vec<(usize, usize)>,
}

pub fn decompose(bits: &BitString) -> FactorDecomposition {
    let mut iter = bits.bits.iter().peekable();
    let mut leading_ones = 0;
    while iter.next_if(|b| **b).is_some() {
        leading_ones += 1;
    }
    let mut factors = Vec::new();
    while iter.peek().is_some() {
        let mut zeros = 0;
        while iter.next_if(|b| !**b).is_some() {
            zeros += 1;
        }
        let mut ones = 0;
        while iter.next_if(|b| **b).is_some() {
            ones += 1;
        }
        factors.push((zeros, ones));
    }
    FactorDecomposition {
        leading_ones,
        factors,
    }
}

/// Every maximal `0^a 1^b` with `a > 0` satisfies `r·a > s·b`.
pub fn is_q_decreasing(bits: &BitString, slope: RationalSlope) -> bool {
    let (r, s) = (u64::from(slope.r()), u64::from(slope.s()));
    decompose(bits)
        .factors
        .iter()
        .all(|&(a, b)| r * a as u64 > s * b as u64)
}

/// `|W_n^{r/s}|` by exhaustive filtering, up to the default string cap.
pub fn count_q_decreasing(n: usize, slope: RationalSlope) -> Result<Count, CapExceeded> {
    count_q_decreasing_with_cap(n, slope, DEFAULT_STRING_CAP)
}

pub fn count_q_decreasing_with_cap(
    n: usize,
    slope: RationalSlope,
    cap: usize,
) -> Result<Count, CapExceeded> {
    CapExceeded::check(CapKind::Strings, n, cap.min(63))?;
    let hits = (0..1u64 << n)
        .filter(|&mask| is_q_decreasing(&BitString::from_mask(mask, n), slope))
        .count();
    Ok(Count::from(hits))
}

/// Sorted members of `W_n^{r/s}`.
pub fn list_q_decreasing(
    n: usize,
    slope: RationalSlope,
    cap: usize,
) -> Result<Vec<BitString>, CapExceeded> {
    CapExceeded::check(CapKind::Strings, n, cap.min(63))?;
    Ok((0..1u64 << n)
        .map(|mask| BitString::from_mask(mask, n))
        .filter(|bits| is_q_decreasing(bits, slope))
        .collect())
}

/// `|W_n^{r/s}|` by dynamic programming over factor lengths; no cap.
///
/// A string is a run of leading ones followed by a chain of factors. With
/// `F(m)` the number of chains of total length `m`, a chain is either a
/// single `0^m` or a factor `0^a 1^b` (`a, b ≥ 1`, `r·a > s·b`) followed by
/// a shorter chain.
pub fn count_q_decreasing_dp(n: usize, slope: RationalSlope) -> Count {
    let (r, s) = (u128::from(slope.r()), u128::from(slope.s()));
    // number of admissible (a, b) with a, b ≥ 1 and a + b = t
    let splits = |t: usize| -> usize {
        let min_a = (s * t as u128) / (r + s) + 1;
        (t as u128 - 1).saturating_sub(min_a - 1) as usize
    };
    let weights: Vec<usize> = (0..=n).map(|t| if t < 2 { 0 } else { splits(t) }).collect();
    let mut chains: Vec<Count> = Vec::with_capacity(n + 1);
    chains.push(Count::one());
    for m in 1..=n {
        let mut acc = Count::one();
        for (t, &w) in weights.iter().enumerate().take(m + 1).skip(2) {
            if w > 0 {
                acc += &chains[m - t] * w;
            }
        }
        chains.push(acc);
    }
    chains.iter().fold(Count::zero(), |acc, c| acc + c)
}

/// `|B_n(1^k)|`: length-`n` strings with no `k` consecutive ones.
pub fn count_avoiding_ones_run(n: usize, k: usize) -> Count {
    assert!(k >= 1, "run length must be positive");
    // by_run[j] = strings ending in exactly j ones
    let mut by_run = vec![Count::zero(); k];
    by_run[0] = Count::one();
    for _ in 0..n {
        let total = by_run.iter().fold(Count::zero(), |acc, c| acc + c);
        by_run.rotate_right(1);
        by_run[0] = total;
    }
    by_run.iter().fold(Count::zero(), |acc, c| acc + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(text: &str) -> BitString {
        text.parse().unwrap()
    }

    fn slope(r: u32, s: u32) -> RationalSlope {
        RationalSlope::new(r, s).unwrap()
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(
            decompose(&bits("110001")),
            FactorDecomposition {
                leading_ones: 2,
                factors: vec![(3, 1)]
            }
        );
        assert_eq!(
            decompose(&bits("0011")),
            FactorDecomposition {
                leading_ones: 0,
                factors: vec![(2, 2)]
            }
        );
        assert_eq!(decompose(&bits("")), FactorDecomposition::default());
        assert_eq!(decompose(&bits("0100")).factors, vec![(1, 1), (2, 0)]);
    }

    #[test]
    fn q_decreasing_examples() {
        assert!(!is_q_decreasing(&bits("01"), slope(1, 1)));
        assert!(is_q_decreasing(&bits("001"), slope(1, 1)));
        for q in [slope(1, 1), slope(4, 5), slope(1, 5)] {
            assert!(is_q_decreasing(&bits("111"), q));
        }
    }

    #[test]
    fn count_examples() {
        assert_eq!(
            count_q_decreasing(2, slope(1, 1)).unwrap(),
            Count::from(3u32)
        );
        assert_eq!(
            count_q_decreasing(3, slope(1, 1)).unwrap(),
            Count::from(5u32)
        );
        assert_eq!(
            count_q_decreasing(2, slope(1, 2)).unwrap(),
            Count::from(3u32)
        );
        assert!(count_q_decreasing(DEFAULT_STRING_CAP + 1, slope(1, 1)).is_err());
    }

    #[test]
    fn listing_examples() {
        let listed: Vec<String> = list_q_decreasing(3, slope(1, 1), DEFAULT_STRING_CAP)
            .unwrap()
            .iter()
            .map(|b| b.to_string())
            .collect();
        assert_eq!(listed, ["000", "001", "100", "110", "111"]);
        let two: Vec<String> = list_q_decreasing(2, slope(1, 1), DEFAULT_STRING_CAP)
            .unwrap()
            .iter()
            .map(|b| b.to_string())
            .collect();
        assert_eq!(two, ["00", "10", "11"]);
    }

    #[test]
    fn avoiding_examples() {
        assert_eq!(count_avoiding_ones_run(2, 2), Count::from(3u32));
        for k in 2..=5 {
            assert_eq!(count_avoiding_ones_run(0, k), Count::one());
        }
        assert_eq!(count_avoiding_ones_run(3, 3), Count::from(7u32));
    }

    #[test]
    fn dp_matches_exhaustive() {
        for q in RationalSlope::grid(5, 5) {
            for n in 0..=12 {
                assert_eq!(
                    count_q_decreasing_dp(n, q),
                    count_q_decreasing(n, q).unwrap(),
                    "n={n} q={q}"
                );
            }
        }
    }

    #[test]
    fn parse_rejects_other_symbols() {
        assert_eq!(
            "01x".parse::<BitString>(),
            Err(BitParseError {
                index: 2,
                found: 'x'
            })
        );
    }
}
