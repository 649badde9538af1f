//! Exact evaluation of the counting recurrences.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::limits::{CapExceeded, CapKind, DEFAULT_TABLE_CAP};
use crate::slope::RationalSlope;
use crate::validity::required_valleys;

/// Nonnegative arbitrary-precision count.
pub type Count = BigUint;

/// In the band `2 ≤ n ≤ r+s` the wrapped-prefix branch contributes exactly
/// one path per level.
pub const PREFIX_BRANCH_PATHS: u32 = 1;

/// Which sequence a table holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recurrence {
    /// `f^{(k)}`: `f_0 = 1`, `f_n = f_{n-1} + … + f_{n-k}`, `k ≥ 2`.
    GeneralizedFibonacci { k: u32 },
    /// `w` for `q = 1/s`: 1, then `n` up to `s+1`, then `w_{n-1} + w_{n-s-1}`.
    UnitFraction { s: u32 },
    /// `w` for `q = r/s`.
    Rational(RationalSlope),
}

impl Recurrence {
    /// Integer slopes map to `f^{(q+1)}`, everything else to the rational `w`.
    pub fn for_slope(slope: RationalSlope) -> Recurrence {
        if slope.is_integer() {
            Recurrence::GeneralizedFibonacci { k: slope.r() + 1 }
        } else {
            Recurrence::Rational(slope)
        }
    }

    /// Column name used in tabular output.
    pub fn symbol(&self) -> &'static str {
        match self {
            Recurrence::GeneralizedFibonacci { .. } => "f",
            _ => "w",
        }
    }

    /// The term at index `prev.len()`, given all earlier terms.
    pub fn next(&self, prev: &[Count]) -> Count {
        let n = prev.len();
        match *self {
            Recurrence::GeneralizedFibonacci { k } => {
                if n == 0 {
                    return Count::one();
                }
                let lo = n.saturating_sub(k as usize);
                prev[lo..n].iter().fold(Count::zero(), |acc, x| acc + x)
            }
            Recurrence::UnitFraction { s } => {
                let s = s as usize;
                match n {
                    0 => Count::one(),
                    _ if n <= s + 1 => Count::from(n),
                    _ => &prev[n - 1] + &prev[n - s - 1],
                }
            }
            Recurrence::Rational(slope) => rational_next(slope, prev),
        }
    }
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recurrence::GeneralizedFibonacci { k } => write!(f, "f^({k})"),
            Recurrence::UnitFraction { s } => write!(f, "w[1/{s}]"),
            Recurrence::Rational(slope) => write!(f, "w[{slope}]"),
        }
    }
}

fn rational_next(slope: RationalSlope, prev: &[Count]) -> Count {
    let n = prev.len();
    if n <= 1 {
        return Count::one();
    }
    let r = u64::from(slope.r());
    let band = (n as u64) <= r + u64::from(slope.s());
    let mut acc = prev[n - 1].clone();
    let top = if band {
        acc += PREFIX_BRANCH_PATHS;
        r - 1
    } else {
        r
    };
    // p + ⌈ps/r⌉ is strictly increasing in p, so stop once it reaches n
    for p in 1..=top {
        let offset = p + required_valleys(p, slope).expect("1 <= p <= r");
        if offset >= n as u64 {
            // in the band this is the χ(n - p - ⌈ps/r⌉ ≥ 1) cutoff; above the
            // band it cannot happen
            debug_assert!(band);
            break;
        }
        acc += &prev[n - offset as usize];
    }
    acc
}

fn terms(rec: Recurrence, upto: usize) -> Vec<Count> {
    let mut values = Vec::with_capacity(upto + 1);
    for _ in 0..=upto {
        let next = rec.next(&values);
        values.push(next);
    }
    values
}

/// `f_n^{(k)}`, zero for negative `n`.
///
/// # Panics
/// If `k < 2`.
pub fn gfib(k: u32, n: i64) -> Count {
    assert!(k >= 2, "generalized Fibonacci order must be at least 2");
    if n < 0 {
        return Count::zero();
    }
    terms(Recurrence::GeneralizedFibonacci { k }, n as usize).swap_remove(n as usize)
}

/// `w_n` for `q = 1/s`.
pub fn w_unit(s: u32, n: usize) -> Count {
    terms(Recurrence::UnitFraction { s }, n).swap_remove(n)
}

/// `w_n` for `q = r/s`.
pub fn w_general(slope: RationalSlope, n: usize) -> Count {
    terms(Recurrence::Rational(slope), n).swap_remove(n)
}

/// Values `0..=n_max` of one recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceTable {
    recurrence: Recurrence,
    values: Vec<Count>,
}

impl SequenceTable {
    pub fn recurrence(&self) -> Recurrence {
        self.recurrence
    }

    pub fn values(&self) -> &[Count] {
        &self.values
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    /// Re-derives entry `n` from entries `0..n`.
    pub fn recompute(&self, n: usize) -> Count {
        self.recurrence.next(&self.values[..n])
    }
}

pub fn seq_table(recurrence: Recurrence, n_max: usize) -> Result<SequenceTable, CapExceeded> {
    seq_table_with_cap(recurrence, n_max, DEFAULT_TABLE_CAP)
}

pub fn seq_table_with_cap(
    recurrence: Recurrence,
    n_max: usize,
    cap: usize,
) -> Result<SequenceTable, CapExceeded> {
    CapExceeded::check(CapKind::Table, n_max, cap)?;
    Ok(SequenceTable {
        recurrence,
        values: terms(recurrence, n_max),
    })
}
