//! Recursive construction of `D_n^q` and the brute-force oracle.
//!
//! Each generator fills a table `D_0, D_1, …, D_n` bottom-up for one fixed
//! parameter. Within a level, every branch is tagged by the 1-peak count of
//! the first hump, so the union is disjoint; a duplicate is reported as
//! [`GenerationError::Duplicate`] rather than silently merged.

use std::fmt;

use crate::limits::{CapExceeded, DEFAULT_ENUM_CAP};
use crate::path::{enumerate_height2_with_cap, DyckPath, Step};
use crate::slope::RationalSlope;
use crate::validity::{is_valid_general, is_valid_integer, is_valid_unit, required_valleys};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GenerationError {
    #[error("branches of D_{n} overlap: {path} generated twice")]
    Duplicate { n: usize, path: String },
    #[error("prefix of semilength {k} requested from a word of {len} steps")]
    PrefixTooLong { k: usize, len: usize },
}

/// The parameter a [`PathSet`] was built for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Integer `q`: at most `q` consecutive 1-peaks.
    Integer(u32),
    /// `q = 1/s`.
    Unit(u32),
    /// `q = r/s`.
    General(RationalSlope),
}

impl Family {
    pub fn accepts(&self, path: &DyckPath) -> bool {
        match *self {
            Family::Integer(q) => is_valid_integer(path, q),
            Family::Unit(s) => is_valid_unit(path, s),
            Family::General(slope) => is_valid_general(path, slope),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Integer(q) => write!(f, "{q}"),
            Family::Unit(s) => write!(f, "1/{s}"),
            Family::General(slope) => write!(f, "{slope}"),
        }
    }
}

/// Sorted, duplicate-free members of `D_n^q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSet {
    n: usize,
    family: Family,
    members: Vec<DyckPath>,
}

impl PathSet {
    pub fn semilength(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn members(&self) -> &[DyckPath] {
        &self.members
    }

    pub fn into_members(self) -> Vec<DyckPath> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, path: &DyckPath) -> bool {
        self.members.binary_search(path).is_ok()
    }
}

/// First `2k` steps of `word`.
pub fn prefix_semilength(word: &[Step], k: usize) -> Result<Vec<Step>, GenerationError> {
    if 2 * k > word.len() {
        return Err(GenerationError::PrefixTooLong { k, len: word.len() });
    }
    Ok(word[..2 * k].to_vec())
}

/// `(UD)^a (DU)^b`.
fn peaks_then_valleys(a: usize, b: usize) -> Vec<Step> {
    let mut w = Vec::with_capacity(2 * (a + b));
    for _ in 0..a {
        w.extend([Step::Up, Step::Down]);
    }
    for _ in 0..b {
        w.extend([Step::Down, Step::Up]);
    }
    w
}

/// `U · w · D`.
fn wrap(word: &[Step]) -> DyckPath {
    let mut steps = Vec::with_capacity(word.len() + 2);
    steps.push(Step::Up);
    steps.extend_from_slice(word);
    steps.push(Step::Down);
    DyckPath::from_steps_unchecked(steps)
}

/// `U (UD)^p (DU)^{v-1} D`: a hump with `p` 1-peaks and `v - 1` trailing
/// `UD` humps.
fn block_factor(p: usize, v: usize) -> DyckPath {
    wrap(&peaks_then_valleys(p, v - 1))
}

fn ud() -> DyckPath {
    DyckPath::from_steps_unchecked(vec![Step::Up, Step::Down])
}

/// Memo table for one generation session.
struct Table {
    levels: Vec<Vec<DyckPath>>,
}

impl Table {
    fn new() -> Self {
        Table { levels: Vec::new() }
    }

    fn level(&self, m: usize) -> &[DyckPath] {
        &self.levels[m]
    }

    /// `factor · D_m`, appended to `acc`.
    fn prepend(&self, acc: &mut Vec<DyckPath>, factor: &DyckPath, m: usize) {
        acc.extend(self.level(m).iter().map(|q| factor.concat(q)));
    }

    fn push_level(&mut self, n: usize, mut members: Vec<DyckPath>) -> Result<(), GenerationError> {
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(GenerationError::Duplicate {
                n,
                path: w[0].to_string(),
            });
        }
        self.levels.push(members);
        Ok(())
    }

    fn finish(mut self, n: usize, family: Family) -> PathSet {
        let members = self.levels.swap_remove(n);
        PathSet { n, family, members }
    }
}

/// `D_n^q = ε` for `n = 0`, else `⋃_{j=0..q} U(UD)^j D · D_{n-1-j}`.
pub fn try_generate_integer(n: usize, q: u32) -> Result<PathSet, GenerationError> {
    let q = q as usize;
    let mut table = Table::new();
    for m in 0..=n {
        let mut level = Vec::new();
        if m == 0 {
            level.push(DyckPath::empty());
        } else {
            for j in 0..=q.min(m - 1) {
                let factor = wrap(&peaks_then_valleys(j, 0));
                table.prepend(&mut level, &factor, m - 1 - j);
            }
        }
        table.push_level(m, level)?;
    }
    Ok(table.finish(n, Family::Integer(q as u32)))
}

/// `D_n^{1/s}` from its four-case decomposition.
pub fn try_generate_unit(n: usize, s: u32) -> Result<PathSet, GenerationError> {
    let s = s as usize;
    // UD (DU)^{s-1}, whose prefixes give the short paths
    let long_word = peaks_then_valleys(1, s - 1);
    let long_factor = block_factor(1, s);
    let mut table = Table::new();
    for m in 0..=n {
        let mut level = Vec::new();
        match m {
            0 => level.push(DyckPath::empty()),
            1 => level.push(ud()),
            _ => {
                table.prepend(&mut level, &ud(), m - 1);
                if m <= s + 1 {
                    level.push(wrap(&prefix_semilength(&long_word, m - 1)?));
                } else {
                    table.prepend(&mut level, &long_factor, m - s - 1);
                }
            }
        }
        table.push_level(m, level)?;
    }
    Ok(table.finish(n, Family::Unit(s as u32)))
}

/// `D_n^{r/s}` from its four-case decomposition.
///
/// For `2 ≤ n ≤ r+s` the level is `UD·D_{n-1}`, the wrapped prefix
/// `U·p_{n-1}((UD)^r (DU)^{s-1})·D`, and the `p < r` block factors whose
/// remainder is nonempty. Above `r+s` it is `UD·D_{n-1}` plus all `p ≤ r`
/// block factors.
pub fn try_generate_general(n: usize, slope: RationalSlope) -> Result<PathSet, GenerationError> {
    let r = slope.r() as usize;
    let s = slope.s() as usize;
    let long_word = peaks_then_valleys(r, s - 1);
    let factors: Vec<(usize, DyckPath)> = (1..=r)
        .map(|p| {
            let v = required_valleys(p as u64, slope).expect("1 <= p <= r") as usize;
            (p + v, block_factor(p, v))
        })
        .collect();
    let mut table = Table::new();
    for m in 0..=n {
        let mut level = Vec::new();
        match m {
            0 => level.push(DyckPath::empty()),
            1 => level.push(ud()),
            _ if m <= r + s => {
                table.prepend(&mut level, &ud(), m - 1);
                level.push(wrap(&prefix_semilength(&long_word, m - 1)?));
                for (size, factor) in &factors[..r - 1] {
                    if m > *size {
                        table.prepend(&mut level, factor, m - size);
                    }
                }
            }
            _ => {
                table.prepend(&mut level, &ud(), m - 1);
                for (size, factor) in &factors {
                    table.prepend(&mut level, factor, m - size);
                }
            }
        }
        table.push_level(m, level)?;
    }
    Ok(table.finish(n, Family::General(slope)))
}

/// Like [`try_generate_integer`]; panics if two branches overlap.
pub fn generate_integer(n: usize, q: u32) -> PathSet {
    try_generate_integer(n, q).unwrap_or_else(|e| panic!("{e}"))
}

/// Like [`try_generate_unit`]; panics if two branches overlap.
pub fn generate_unit(n: usize, s: u32) -> PathSet {
    try_generate_unit(n, s).unwrap_or_else(|e| panic!("{e}"))
}

/// Like [`try_generate_general`]; panics if two branches overlap.
pub fn generate_general(n: usize, slope: RationalSlope) -> PathSet {
    try_generate_general(n, slope).unwrap_or_else(|e| panic!("{e}"))
}

/// All height-≤2 paths of semilength `n` that pass the literal `r/s` test.
pub fn brute_force(n: usize, slope: RationalSlope) -> Result<PathSet, CapExceeded> {
    brute_force_with_cap(n, slope, DEFAULT_ENUM_CAP)
}

pub fn brute_force_with_cap(
    n: usize,
    slope: RationalSlope,
    cap: usize,
) -> Result<PathSet, CapExceeded> {
    brute_force_family(n, Family::General(slope), cap)
}

/// Brute force for an arbitrary family (integer and unit use their own
/// literal predicates).
pub fn brute_force_family(n: usize, family: Family, cap: usize) -> Result<PathSet, CapExceeded> {
    let members = enumerate_height2_with_cap(n, cap)?
        .into_iter()
        .filter(|path| family.accepts(path))
        .collect();
    Ok(PathSet { n, family, members })
}
