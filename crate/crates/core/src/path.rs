//! Dyck paths of height at most two.
//!
//! A path is stored as its step sequence, so the derived ordering is the
//! lexicographic order of the `U`/`D` rendering with `U < D`. Every height-≤2
//! path factors uniquely into ground-to-ground humps `U(UD)^p D`; the list of
//! `p` values is its [`HumpProfile`].

use std::fmt;

use crate::limits::{CapExceeded, CapKind, DEFAULT_ENUM_CAP};

/// Highest ordinate a path may reach.
pub const MAX_HEIGHT: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Up,
    Down,
}

/// Text notation for paths: `U`/`D` letters (canonical) or `(`/`)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Notation {
    #[default]
    Letters,
    Parentheses,
}

impl Notation {
    fn symbols(self) -> (char, char) {
        match self {
            Notation::Letters => ('U', 'D'),
            Notation::Parentheses => ('(', ')'),
        }
    }

    /// Picks parentheses if the text starts with one, letters otherwise.
    pub fn detect(text: &str) -> Notation {
        match text.chars().next() {
            Some('(') | Some(')') => Notation::Parentheses,
            _ => Notation::Letters,
        }
    }
}

/// Parse failures. `index` is the 0-based position of the first offending
/// character; for the end-of-input errors it is the text length.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PathError {
    #[error("invalid character {found:?} at index {index}")]
    InvalidCharacter { index: usize, found: char },
    #[error("step at index {index} goes below the x-axis")]
    NegativeExcursion { index: usize },
    #[error("step at index {index} exceeds height {MAX_HEIGHT}")]
    HeightExceeded { index: usize },
    #[error("odd number of steps ({index})")]
    OddLength { index: usize },
    #[error("path ends at height {height}, not on the x-axis (index {index})")]
    Unbalanced { index: usize, height: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    /// The empty path ε.
    pub fn empty() -> Self {
        DyckPath::default()
    }

    /// Checks the three path invariants and wraps the steps.
    pub fn from_steps(steps: Vec<Step>) -> Result<Self, PathError> {
        let mut height = 0usize;
        for (index, step) in steps.iter().enumerate() {
            height = advance(height, *step, index)?;
        }
        finish(steps.len(), height)?;
        Ok(DyckPath { steps })
    }

    /// Caller guarantees the invariants.
    pub(crate) fn from_steps_unchecked(steps: Vec<Step>) -> Self {
        debug_assert!(DyckPath::from_steps(steps.clone()).is_ok());
        DyckPath { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Ordinate after each step.
    pub fn heights(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().scan(0usize, |h, step| {
            match step {
                Step::Up => *h += 1,
                Step::Down => *h -= 1,
            }
            Some(*h)
        })
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &DyckPath) -> DyckPath {
        let mut steps = Vec::with_capacity(self.steps.len() + other.steps.len());
        steps.extend_from_slice(&self.steps);
        steps.extend_from_slice(&other.steps);
        DyckPath { steps }
    }

    pub fn humps(&self) -> HumpProfile {
        humps_of(self)
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_path(self, Notation::Letters))
    }
}

impl std::str::FromStr for DyckPath {
    type Err = PathError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        parse_path(text, Notation::detect(text))
    }
}

fn advance(height: usize, step: Step, index: usize) -> Result<usize, PathError> {
    match step {
        Step::Up if height == MAX_HEIGHT => Err(PathError::HeightExceeded { index }),
        Step::Up => Ok(height + 1),
        Step::Down if height == 0 => Err(PathError::NegativeExcursion { index }),
        Step::Down => Ok(height - 1),
    }
}

fn finish(len: usize, height: usize) -> Result<(), PathError> {
    if len % 2 == 1 {
        Err(PathError::OddLength { index: len })
    } else if height != 0 {
        Err(PathError::Unbalanced { index: len, height })
    } else {
        Ok(())
    }
}

/// Parses a path in the given notation. Whitespace is not accepted; the
/// empty string is ε.
pub fn parse_path(text: &str, notation: Notation) -> Result<DyckPath, PathError> {
    let (up, down) = notation.symbols();
    let mut steps = Vec::with_capacity(text.len());
    let mut height = 0usize;
    for (index, ch) in text.chars().enumerate() {
        let step = if ch == up {
            Step::Up
        } else if ch == down {
            Step::Down
        } else {
            return Err(PathError::InvalidCharacter { index, found: ch });
        };
        height = advance(height, step, index)?;
        steps.push(step);
    }
    finish(steps.len(), height)?;
    Ok(DyckPath { steps })
}

pub fn render_path(path: &DyckPath, notation: Notation) -> String {
    let (up, down) = notation.symbols();
    path.steps
        .iter()
        .map(|s| match s {
            Step::Up => up,
            Step::Down => down,
        })
        .collect()
}

/// Hump decomposition of a height-≤2 path: entry `i` is the number of
/// 1-peaks inside the `i`-th ground-to-ground factor.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HumpProfile {
    peaks: Vec<usize>,
}

impl HumpProfile {
    pub fn new(peaks: Vec<usize>) -> Self {
        HumpProfile { peaks }
    }

    pub fn peaks(&self) -> &[usize] {
        &self.peaks
    }

    pub fn len(&self) -> usize {
        self.peaks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.peaks.is_empty()
    }

    /// `Σ (p_i + 1)`.
    pub fn semilength(&self) -> usize {
        self.peaks.iter().map(|p| p + 1).sum()
    }

    pub fn to_path(&self) -> DyckPath {
        path_of_humps(self)
    }
}

impl From<Vec<usize>> for HumpProfile {
    fn from(peaks: Vec<usize>) -> Self {
        HumpProfile { peaks }
    }
}

impl fmt::Display for HumpProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.peaks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

pub fn humps_of(path: &DyckPath) -> HumpProfile {
    let mut peaks = Vec::new();
    let mut current = 0usize;
    let mut prev = Step::Down;
    for (step, height) in path.steps.iter().zip(path.heights()) {
        // a 1-peak is a D landing on 1 right after an U
        if *step == Step::Down && prev == Step::Up && height == 1 {
            current += 1;
        }
        if height == 0 {
            peaks.push(current);
            current = 0;
        }
        prev = *step;
    }
    HumpProfile { peaks }
}

pub fn path_of_humps(profile: &HumpProfile) -> DyckPath {
    let mut steps = Vec::with_capacity(2 * profile.semilength());
    for &p in &profile.peaks {
        push_hump(&mut steps, p);
    }
    DyckPath { steps }
}

/// Appends `U(UD)^p D`.
pub(crate) fn push_hump(steps: &mut Vec<Step>, p: usize) {
    steps.push(Step::Up);
    for _ in 0..p {
        steps.push(Step::Up);
        steps.push(Step::Down);
    }
    steps.push(Step::Down);
}

/// Length of the run of 0-valleys that directly follows each hump.
///
/// The run after hump `i` stops at the next hump carrying 1-peaks (the valley
/// in front of that hump still counts) or at the end of the path. The last
/// hump always gets 0.
pub fn zero_valley_runs(profile: &HumpProfile) -> Vec<usize> {
    let peaks = &profile.peaks;
    let m = peaks.len();
    let mut runs = vec![0; m];
    // sweep right to left, tracking the index of the next hump with p > 0
    let mut next_loaded = m;
    for i in (0..m).rev() {
        runs[i] = if next_loaded < m {
            next_loaded - i
        } else {
            m - 1 - i
        };
        if peaks[i] > 0 {
            next_loaded = i;
        }
    }
    runs
}

/// Every height-≤2 Dyck path of semilength `n`, in lexicographic order, with
/// the default cap.
pub fn enumerate_height2(n: usize) -> Result<Vec<DyckPath>, CapExceeded> {
    enumerate_height2_with_cap(n, DEFAULT_ENUM_CAP)
}

/// Depth-first walk over the step lattice, trying `U` before `D`, so output
/// order is lexicographic without sorting.
pub fn enumerate_height2_with_cap(n: usize, cap: usize) -> Result<Vec<DyckPath>, CapExceeded> {
    CapExceeded::check(CapKind::Enumeration, n, cap)?;
    let expected = if n == 0 { 1 } else { 1usize << (n - 1) };
    let mut out = Vec::with_capacity(expected);
    let mut buf = Vec::with_capacity(2 * n);
    walk(&mut buf, 0, 0, n, &mut out);
    Ok(out)
}

fn walk(buf: &mut Vec<Step>, height: usize, ups: usize, n: usize, out: &mut Vec<DyckPath>) {
    let len = buf.len();
    if len == 2 * n {
        assert_eq!(height, 0, "enumeration produced an unbalanced path");
        out.push(DyckPath { steps: buf.clone() });
        return;
    }
    let downs = len - ups;
    if ups < n && height < MAX_HEIGHT {
        buf.push(Step::Up);
        walk(buf, height + 1, ups + 1, n, out);
        buf.pop();
    }
    if height > 0 {
        debug_assert!(downs < ups);
        buf.push(Step::Down);
        walk(buf, height - 1, ups, n, out);
        buf.pop();
    }
}
