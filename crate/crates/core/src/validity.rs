//! Membership tests for `D_n^q`.
//!
//! Two independent routes are provided. The `is_valid_integer`,
//! `is_valid_unit` and `is_valid_general` predicates scan the step sequence
//! for peaks and valleys and apply each definition as written. The
//! [`is_valid_unified`] predicate works on the hump profile instead and
//! covers all three cases with one rule set; [`first_violation`] reports
//! which rule failed.

use std::fmt;

use crate::path::{humps_of, zero_valley_runs, DyckPath, HumpProfile, Step};
use crate::slope::RationalSlope;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ValidityError {
    #[error("block size {p} is outside 1..={r}")]
    OutOfRange { p: u64, r: u32 },
}

/// Peaks and valleys, classified by the ordinate their `D` step reaches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Feature {
    OnePeak,
    ZeroPeak,
    OneValley,
    ZeroValley,
}

fn features(path: &DyckPath) -> Vec<Feature> {
    let steps = path.steps();
    let heights: Vec<usize> = path.heights().collect();
    let mut out = Vec::new();
    for i in 0..steps.len().saturating_sub(1) {
        // the D of a peak is at i+1, the D of a valley at i
        match (steps[i], steps[i + 1]) {
            (Step::Up, Step::Down) => out.push(if heights[i + 1] == 1 {
                Feature::OnePeak
            } else {
                Feature::ZeroPeak
            }),
            (Step::Down, Step::Up) => out.push(if heights[i] == 1 {
                Feature::OneValley
            } else {
                Feature::ZeroValley
            }),
            _ => {}
        }
    }
    out
}

/// Number of consecutive 0-valleys right after feature `at`. 0-peaks sit
/// between consecutive 0-valleys and do not break the run; any height-1
/// feature does.
fn zero_valleys_after(features: &[Feature], at: usize) -> usize {
    let mut count = 0;
    for f in &features[at + 1..] {
        match f {
            Feature::ZeroValley => count += 1,
            Feature::ZeroPeak => {}
            Feature::OnePeak | Feature::OneValley => break,
        }
    }
    count
}

/// Maximal runs of consecutive 1-peaks as `(index of last peak, size)`.
fn one_peak_blocks(features: &[Feature]) -> Vec<(usize, usize)> {
    let mut blocks = Vec::new();
    let mut run: Option<(usize, usize)> = None;
    for (i, f) in features.iter().enumerate() {
        match f {
            Feature::OnePeak => {
                run = Some(match run {
                    Some((_, size)) => (i, size + 1),
                    None => (i, 1),
                })
            }
            Feature::OneValley => {}
            Feature::ZeroPeak | Feature::ZeroValley => {
                if let Some(block) = run.take() {
                    blocks.push(block);
                }
            }
        }
    }
    blocks.extend(run);
    blocks
}

/// Length of the longest run of consecutive 1-peaks.
pub fn max_consecutive_one_peaks(path: &DyckPath) -> usize {
    one_peak_blocks(&features(path))
        .into_iter()
        .map(|(_, size)| size)
        .max()
        .unwrap_or(0)
}

/// Integer `q`: no `q + 1` consecutive 1-peaks.
pub fn is_valid_integer(path: &DyckPath, q: u32) -> bool {
    max_consecutive_one_peaks(path) <= q as usize
}

/// `q = 1/s`: every 1-peak except the last is followed by at least `s`
/// consecutive 0-valleys.
pub fn is_valid_unit(path: &DyckPath, s: u32) -> bool {
    let features = features(path);
    let one_peaks: Vec<usize> = features
        .iter()
        .enumerate()
        .filter(|(_, f)| **f == Feature::OnePeak)
        .map(|(i, _)| i)
        .collect();
    let Some((_, rest)) = one_peaks.split_last() else {
        return true;
    };
    rest.iter()
        .all(|&i| zero_valleys_after(&features, i) >= s as usize)
}

/// `q = r/s`, applied block by block from the step sequence.
///
/// A block of `r` 1-peaks needs `s` trailing 0-valleys unless no 1-peak
/// follows it anywhere. A block of `p < r` needs `⌈p·s/r⌉` unless the path
/// ends right after it with a single `D`. More than `r` consecutive
/// 1-peaks is never allowed.
pub fn is_valid_general(path: &DyckPath, slope: RationalSlope) -> bool {
    let features = features(path);
    let blocks = one_peak_blocks(&features);
    let r = slope.r() as usize;
    let steps = path.steps();
    blocks.iter().enumerate().all(|(k, &(last, p))| {
        if p > r {
            return false;
        }
        let zeros = zero_valleys_after(&features, last);
        if p == r {
            let rightmost = k + 1 == blocks.len();
            return zeros >= slope.s() as usize || rightmost;
        }
        let needed = required_valleys(p as u64, slope).expect("1 <= p < r") as usize;
        if zeros >= needed {
            return true;
        }
        // position of the block's final peak, step-wise
        let peak_down = peak_down_index(steps, &features, last);
        peak_down + 2 == steps.len() && steps[peak_down + 1] == Step::Down
    })
}

/// Step index of the `D` belonging to the peak that is feature number `at`.
fn peak_down_index(steps: &[Step], features: &[Feature], at: usize) -> usize {
    // features are emitted in step order, one per UD / DU adjacency
    let mut seen = 0;
    for i in 0..steps.len() - 1 {
        let is_feature = steps[i] != steps[i + 1];
        if is_feature {
            if seen == at {
                debug_assert!(matches!(features[at], Feature::OnePeak | Feature::ZeroPeak));
                return i + 1;
            }
            seen += 1;
        }
    }
    unreachable!("feature index {at} out of range")
}

/// `⌈p·s/r⌉` in exact integer arithmetic, for `1 ≤ p ≤ r`.
pub fn required_valleys(p: u64, slope: RationalSlope) -> Result<u64, ValidityError> {
    let r = u64::from(slope.r());
    if p < 1 || p > r {
        return Err(ValidityError::OutOfRange { p, r: slope.r() });
    }
    Ok((p * u64::from(slope.s())).div_ceil(r))
}

/// Why a path is outside `D_n^{r/s}`. `hump` is 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TooManyPeaks {
        hump: usize,
        peaks: usize,
        max: u32,
    },
    ShortValleyRun {
        hump: usize,
        peaks: usize,
        required: u64,
        observed: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooManyPeaks { hump, peaks, max } => write!(
                f,
                "block {hump}: p={peaks} consecutive 1-peaks exceeds the maximum {max}"
            ),
            Violation::ShortValleyRun {
                hump,
                peaks,
                required,
                observed,
            } => write!(
                f,
                "block {hump}: p={peaks} needs v>={required} consecutive 0-valleys, observed {observed}"
            ),
        }
    }
}

/// First rule broken by the profile under `slope`, scanning left to right.
pub fn first_violation(profile: &HumpProfile, slope: RationalSlope) -> Option<Violation> {
    let peaks = profile.peaks();
    let runs = zero_valley_runs(profile);
    let r = slope.r() as usize;
    // index of the last hump that carries 1-peaks
    let rightmost = peaks.iter().rposition(|&p| p > 0);
    for (i, (&p, &z)) in peaks.iter().zip(&runs).enumerate() {
        if p == 0 {
            continue;
        }
        if p > r {
            return Some(Violation::TooManyPeaks {
                hump: i + 1,
                peaks: p,
                max: slope.r(),
            });
        }
        let required = required_valleys(p as u64, slope).expect("1 <= p <= r");
        if z as u64 >= required {
            continue;
        }
        let excused = Some(i) == rightmost && (p == r || z == 0);
        if !excused {
            return Some(Violation::ShortValleyRun {
                hump: i + 1,
                peaks: p,
                required,
                observed: z,
            });
        }
    }
    None
}

/// Profile-based membership test for any slope; agrees with
/// [`is_valid_general`], and with [`is_valid_integer`] / [`is_valid_unit`] on
/// `q/1` and `1/s`.
pub fn is_valid_unified(path: &DyckPath, slope: RationalSlope) -> bool {
    first_violation(&humps_of(path), slope).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::path_of_humps;

    fn p(text: &str) -> DyckPath {
        text.parse().unwrap()
    }

    fn slope(r: u32, s: u32) -> RationalSlope {
        RationalSlope::new(r, s).unwrap()
    }

    fn ud(n: usize) -> DyckPath {
        p(&"UD".repeat(n))
    }

    #[test]
    fn max_run_examples() {
        assert_eq!(max_consecutive_one_peaks(&p("UDUDUD")), 0);
        assert_eq!(max_consecutive_one_peaks(&p("UUDUDDUDUD")), 2);
        assert_eq!(
            max_consecutive_one_peaks(&path_of_humps(&HumpProfile::new(vec![1, 3, 0]))),
            3
        );
    }

    #[test]
    fn integer_examples() {
        assert!(is_valid_integer(&p("UUDD"), 1));
        assert!(!is_valid_integer(
            &path_of_humps(&HumpProfile::new(vec![2])),
            1
        ));
        assert!(is_valid_integer(&ud(7), 3));
    }

    #[test]
    fn unit_examples() {
        for s in 1..=5 {
            for n in 0..=6 {
                assert!(is_valid_unit(&ud(n), s));
            }
        }
        assert!(is_valid_unit(&p("UDUUDD"), 2));
        assert!(is_valid_unit(&p("UUDDUDUUDDUD"), 2));
        // two 1-peaks in one hump: the first is followed by a 1-valley
        assert!(!is_valid_unit(&p("UUDUDD"), 3));
        assert!(!is_valid_unit(&p("UUDDUUDD"), 2));
    }

    #[test]
    fn general_worked_examples() {
        let q = slope(4, 5);
        assert!(!is_valid_general(&p("UUDUDDUDUD"), q));
        assert!(is_valid_general(&p("UUDUDUDUDDUDUDUD"), q));
        assert!(is_valid_general(&p("UUDUDD"), q));
        for n in 0..=8 {
            assert!(is_valid_general(&ud(n), q));
            assert!(is_valid_unified(&ud(n), q));
        }
        assert!(!is_valid_unified(&p("UUDUDDUDUD"), q));
        assert!(is_valid_unified(&p("UUDUDUDUDDUDUDUD"), q));
        assert!(is_valid_unified(&p("UUDUDD"), q));
    }

    #[test]
    fn general_edge_cases() {
        let q = slope(4, 5);
        // p < r block followed by a short, nonzero run of 0-valleys
        assert!(!is_valid_general(&p("UDUUDDUD"), q));
        assert!(!is_valid_unified(&p("UDUUDDUD"), q));
        // five consecutive 1-peaks
        let five = path_of_humps(&HumpProfile::new(vec![5]));
        assert!(!is_valid_general(&five, q));
        // deficient r-block that is not rightmost
        let two = path_of_humps(&HumpProfile::new(vec![4, 0, 1]));
        assert!(!is_valid_general(&two, q));
        assert!(!is_valid_unified(&two, q));
        assert!(is_valid_general(&DyckPath::empty(), q));
    }

    #[test]
    fn required_valleys_examples() {
        assert_eq!(required_valleys(2, slope(4, 5)), Ok(3));
        for (r, s) in [(4, 5), (3, 2), (5, 1), (1, 4)] {
            assert_eq!(required_valleys(r as u64, slope(r, s)), Ok(s as u64));
        }
        assert_eq!(required_valleys(1, slope(1, 7)), Ok(7));
        assert_eq!(
            required_valleys(0, slope(4, 5)),
            Err(ValidityError::OutOfRange { p: 0, r: 4 })
        );
        assert_eq!(
            required_valleys(5, slope(4, 5)),
            Err(ValidityError::OutOfRange { p: 5, r: 4 })
        );
    }

    #[test]
    fn violation_report_for_rejected_example() {
        let v = first_violation(&HumpProfile::new(vec![2, 0, 0]), slope(4, 5));
        assert_eq!(
            v,
            Some(Violation::ShortValleyRun {
                hump: 1,
                peaks: 2,
                required: 3,
                observed: 2
            })
        );
        assert_eq!(
            v.unwrap().to_string(),
            "block 1: p=2 needs v>=3 consecutive 0-valleys, observed 2"
        );
        assert_eq!(
            first_violation(&HumpProfile::new(vec![0, 3]), slope(2, 1)),
            Some(Violation::TooManyPeaks {
                hump: 2,
                peaks: 3,
                max: 2
            })
        );
    }
}
