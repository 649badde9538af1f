//! Structural invariants, reduction identities and differential checks
//! against independent oracles written here.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;
use qdyck::crosscheck::{find_shift, run_grid, verify_reductions, MAX_SHIFT, STRING_SHIFT};
use qdyck::generation::{try_generate_general, try_generate_integer, try_generate_unit};
use qdyck::qstrings::{
    count_avoiding_ones_run, count_q_decreasing, count_q_decreasing_dp, decompose, is_q_decreasing,
    list_q_decreasing, BitString,
};
use qdyck::sequences::{seq_table, Recurrence};
use qdyck::*;

fn slope(r: u32, s: u32) -> RationalSlope {
    RationalSlope::new(r, s).unwrap()
}

/// Compositions of `n` as hump profiles (part `k` ↦ hump with `k - 1`
/// 1-peaks), built without touching the path code.
fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first - 1);
            out.push(rest);
        }
    }
    out
}

fn composition_count(n: usize) -> u64 {
    let mut c = vec![0u64; n + 1];
    c[0] = 1;
    for m in 1..=n {
        c[m] = (0..m).map(|j| c[j]).sum();
    }
    c[n]
}

#[test]
fn round_trips_for_every_small_path() {
    for n in 0..=12 {
        for path in enumerate_height2(n).unwrap() {
            assert_eq!(path_of_humps(&humps_of(&path)), path);
            for notation in [Notation::Letters, Notation::Parentheses] {
                assert_eq!(
                    parse_path(&render_path(&path, notation), notation).unwrap(),
                    path
                );
            }
        }
    }
}

#[test]
fn enumeration_is_the_composition_bijection() {
    for n in 0..=18 {
        let expected = composition_count(n);
        assert_eq!(expected, if n == 0 { 1 } else { 1 << (n - 1) });
        assert_eq!(
            enumerate_height2(n).unwrap().len() as u64,
            expected,
            "n={n}"
        );
    }
    for n in 0..=10 {
        let from_paths: BTreeSet<Vec<usize>> = enumerate_height2(n)
            .unwrap()
            .iter()
            .map(|p| humps_of(p).peaks().to_vec())
            .collect();
        let from_compositions: BTreeSet<Vec<usize>> = compositions(n).into_iter().collect();
        assert_eq!(from_paths, from_compositions);
    }
}

/// For each hump carrying 1-peaks: scan the rendered string after its
/// closing `D` and count `DU` pairs at height 0 until a step climbs to
/// height 2.
fn scanned_zero_runs(text: &str) -> Vec<usize> {
    let bytes = text.as_bytes();
    // heights[t] = ordinate after t steps
    let mut heights = vec![0i32];
    for b in bytes {
        let h = heights.last().unwrap() + if *b == b'U' { 1 } else { -1 };
        heights.push(h);
    }
    let mut runs = Vec::new();
    let mut start = 0;
    while start < bytes.len() {
        let mut end = start + 1;
        while heights[end] != 0 {
            end += 1;
        }
        if heights[start..=end].contains(&2) {
            let mut count = 0;
            for t in end..bytes.len() {
                if bytes[t] == b'U' && heights[t] == 0 {
                    count += 1;
                }
                if heights[t + 1] == 2 {
                    break;
                }
            }
            runs.push(count);
        }
        start = end;
    }
    runs
}

#[test]
fn zero_valley_runs_match_string_scan() {
    for n in 0..=12 {
        for path in enumerate_height2(n).unwrap() {
            let profile = humps_of(&path);
            let runs = zero_valley_runs(&profile);
            let loaded: Vec<usize> = profile
                .peaks()
                .iter()
                .zip(&runs)
                .filter(|(p, _)| **p > 0)
                .map(|(_, z)| *z)
                .collect();
            assert_eq!(loaded, scanned_zero_runs(&path.to_string()), "{path}");
        }
    }
}

#[test]
fn predicate_reductions_and_literal_agreement() {
    for n in 0..=12 {
        for path in enumerate_height2(n).unwrap() {
            for q in 1..=4 {
                assert_eq!(
                    is_valid_unified(&path, RationalSlope::integer(q).unwrap()),
                    is_valid_integer(&path, q),
                    "{path} q={q}"
                );
            }
            for s in 1..=5 {
                assert_eq!(
                    is_valid_unified(&path, RationalSlope::unit(s).unwrap()),
                    is_valid_unit(&path, s),
                    "{path} s={s}"
                );
            }
        }
    }
    let grid = RationalSlope::grid(5, 5);
    for n in 0..=14 {
        for path in enumerate_height2(n).unwrap() {
            for &q in &grid {
                let general = is_valid_general(&path, q);
                assert_eq!(is_valid_unified(&path, q), general, "{path} q={q}");
                if general {
                    assert!(max_consecutive_one_peaks(&path) <= q.r() as usize);
                }
            }
        }
    }
}

#[test]
fn pure_zero_peaks_always_valid() {
    for n in 0..=20 {
        let path: DyckPath = "UD".repeat(n).parse().unwrap();
        for q in RationalSlope::grid(7, 7) {
            assert!(is_valid_general(&path, q) && is_valid_unified(&path, q));
        }
    }
}

#[test]
fn generator_consistency() {
    for n in 0..=14 {
        for s in 1..=5 {
            assert_eq!(
                try_generate_general(n, RationalSlope::unit(s).unwrap())
                    .unwrap()
                    .members(),
                try_generate_unit(n, s).unwrap().members()
            );
        }
        for q in 1..=4 {
            assert_eq!(
                try_generate_general(n, RationalSlope::integer(q).unwrap())
                    .unwrap()
                    .members(),
                try_generate_integer(n, q).unwrap().members()
            );
        }
    }
}

#[test]
fn sequence_reductions_monotonicity_and_exactness() {
    for s in 1..=5 {
        let general = seq_table(Recurrence::Rational(slope(1, s)), 50).unwrap();
        let unit = seq_table(Recurrence::UnitFraction { s }, 50).unwrap();
        assert_eq!(general.values(), unit.values());
    }
    for q in 1..=4 {
        let general = seq_table(Recurrence::Rational(slope(q, 1)), 50).unwrap();
        let fib = seq_table(Recurrence::GeneralizedFibonacci { k: q + 1 }, 50).unwrap();
        assert_eq!(general.values(), fib.values());
    }
    for q in RationalSlope::grid(6, 6) {
        let t = seq_table(Recurrence::Rational(q), 300).unwrap();
        assert!(t.values()[1..].windows(2).all(|w| w[0] <= w[1]), "q={q}");
        for n in 0..=300 {
            assert_eq!(t.recompute(n), t.values()[n]);
        }
    }
}

#[test]
fn string_counts_dp_and_exhaustive_agree() {
    for k in 1..=5usize {
        for n in 0..=16usize {
            let brute = (0..1u32 << n)
                .filter(|mask| {
                    let mut run = 0;
                    (0..n).all(|i| {
                        run = if mask >> i & 1 == 1 { run + 1 } else { 0 };
                        run < k
                    })
                })
                .count();
            assert_eq!(
                count_avoiding_ones_run(n, k),
                BigUint::from(brute),
                "n={n} k={k}"
            );
        }
    }
    for q in RationalSlope::grid(5, 5) {
        for n in 0..=16 {
            assert_eq!(
                count_q_decreasing_dp(n, q),
                count_q_decreasing(n, q).unwrap()
            );
        }
    }
}

#[test]
fn integer_bridge_shift() {
    for q in 1..=4u32 {
        let f: Vec<BigUint> = (0..=23).map(|n| gfib(q + 1, n)).collect();
        let b: Vec<BigUint> = (0..=20)
            .map(|n| count_avoiding_ones_run(n, q as usize + 1))
            .collect();
        assert_eq!(find_shift(&f, &b, MAX_SHIFT), Ok(Some(STRING_SHIFT)));
    }
}

#[test]
fn q_decreasing_containment() {
    let grid = RationalSlope::grid(5, 5);
    for n in 0..=12 {
        let sets: Vec<BTreeSet<BitString>> = grid
            .iter()
            .map(|&q| list_q_decreasing(n, q, 24).unwrap().into_iter().collect())
            .collect();
        for (i, small) in grid.iter().enumerate() {
            for (j, large) in grid.iter().enumerate() {
                if small <= large {
                    assert!(
                        sets[i].is_subset(&sets[j]),
                        "W^{small} ⊄ W^{large} at n={n}"
                    );
                }
            }
        }
    }
}

#[test]
fn pinned_shifts_match_golden_file() {
    let golden = include_str!("golden/string_shifts.csv");
    let report = run_grid(&RationalSlope::grid(5, 5), 6, 18, false, &Limits::default()).unwrap();
    let mut expected: Vec<(String, String, String)> = golden
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].to_string(), f[1].to_string(), f[2].to_string())
        })
        .collect();
    let mut observed: Vec<(String, String, String)> = report
        .verdicts()
        .iter()
        .filter(|v| v.check.ends_with("-alignment"))
        .map(|v| {
            assert!(v.pass, "{v:?}");
            let shift = v.detail.split_whitespace().nth(1).unwrap().to_string();
            (v.q.clone(), v.check.clone(), shift)
        })
        .collect();
    expected.sort();
    observed.sort();
    assert_eq!(observed, expected);
}

#[test]
fn reports_are_deterministic() {
    let grid = [slope(4, 5), slope(2, 1)];
    let a = run_grid(&grid, 8, 10, false, &Limits::default()).unwrap();
    let b = run_grid(&grid, 8, 10, false, &Limits::default()).unwrap();
    assert_eq!(a.render_jsonl(), b.render_jsonl());
    assert_eq!(a.render_text(), b.render_text());
    assert!(a.passed());
}

#[test]
fn reduction_report_passes_on_default_grid() {
    let report = verify_reductions(10, &Limits::default()).unwrap();
    assert!(report.passed(), "{}", report.render_text());
}

fn arb_profile(max_humps: usize, max_peaks: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..=max_peaks, 0..=max_humps)
}

fn arb_slope() -> impl Strategy<Value = RationalSlope> {
    (1u32..=9, 1u32..=9).prop_filter_map("coprime", |(r, s)| RationalSlope::new(r, s).ok())
}

proptest! {
    #[test]
    fn profile_round_trip(peaks in arb_profile(20, 6)) {
        let profile = HumpProfile::new(peaks);
        let path = path_of_humps(&profile);
        prop_assert_eq!(path.semilength(), profile.semilength());
        prop_assert_eq!(humps_of(&path), profile);
        let text = path.to_string();
        prop_assert_eq!(text.parse::<DyckPath>().unwrap(), path);
    }

    #[test]
    fn unified_matches_literal_on_long_paths(peaks in arb_profile(25, 10), q in arb_slope()) {
        let path = path_of_humps(&HumpProfile::new(peaks));
        prop_assert_eq!(is_valid_unified(&path, q), is_valid_general(&path, q));
    }

    #[test]
    fn membership_matches_predicate(
        peaks in arb_profile(6, 3).prop_filter("n <= 12", |p| p.iter().map(|x| x + 1).sum::<usize>() <= 12),
        q in arb_slope(),
    ) {
        let path = path_of_humps(&HumpProfile::new(peaks));
        let set = generate_general(path.semilength(), q);
        prop_assert_eq!(set.contains(&path), is_valid_general(&path, q));
    }

    #[test]
    fn decomposition_reconstructs(bits in prop::collection::vec(any::<bool>(), 0..40)) {
        let original = BitString::new(bits);
        let d = decompose(&original);
        let mut rebuilt = vec![true; d.leading_ones];
        for (i, &(a, b)) in d.factors.iter().enumerate() {
            prop_assert!(a >= 1);
            prop_assert!(b >= 1 || i + 1 == d.factors.len());
            rebuilt.extend(std::iter::repeat_n(false, a));
            rebuilt.extend(std::iter::repeat_n(true, b));
        }
        prop_assert_eq!(BitString::new(rebuilt), original);
    }

    #[test]
    fn q_decreasing_is_cross_multiplied(bits in prop::collection::vec(any::<bool>(), 0..30), q in arb_slope()) {
        let original = BitString::new(bits);
        let by_float = decompose(&original)
            .factors
            .iter()
            .all(|&(a, b)| (q.r() as f64 / q.s() as f64) * a as f64 > b as f64 + 1e-9);
        // the float form is only trusted away from ties
        let tie = decompose(&original)
            .factors
            .iter()
            .any(|&(a, b)| q.r() as usize * a == q.s() as usize * b);
        if !tie {
            prop_assert_eq!(is_q_decreasing(&original, q), by_float);
        }
    }
}
