//! Differential checks between the grammar, the brute-force oracle, the
//! recurrences and the string families, collected into [`CheckReport`]s.
//!
//! Every failed comparison leaves a [`Counterexample`] naming the offending
//! path or string and the rule that fired; a report passes iff it holds
//! none.

use std::fmt::Write as _;

use serde::Serialize;

use crate::generation::{
    brute_force_with_cap, try_generate_general, try_generate_integer, try_generate_unit, PathSet,
};
use crate::limits::{CapExceeded, CapKind, Limits};
use crate::path::{enumerate_height2_with_cap, humps_of};
use crate::qstrings::{count_avoiding_ones_run, count_q_decreasing_with_cap};
use crate::sequences::{gfib, seq_table_with_cap, Count, Recurrence};
use crate::slope::RationalSlope;
use crate::validity::{
    first_violation, is_valid_general, is_valid_integer, is_valid_unified, is_valid_unit,
};

/// Index offset between `w_n` and the q-decreasing string counts: the
/// strings of length `n` match `w_{n+1}`. Found with [`find_shift`] and
/// frozen here.
pub const STRING_SHIFT: i64 = 1;

/// Largest shift [`find_shift`] is asked to consider.
pub const MAX_SHIFT: usize = 3;

/// Upper index for the pointwise sequence reductions.
pub const SEQUENCE_REDUCTION_MAX: usize = 50;

/// Set-level grid: integer `q ≤ 4`, unit `1/s` with `s ≤ 5`.
pub const REDUCTION_MAX_Q: u32 = 4;
pub const REDUCTION_MAX_S: u32 = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub q: String,
    pub n: Option<usize>,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub q: String,
    pub n: Option<usize>,
    pub witness: String,
    pub rule: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    grid: Vec<String>,
    verdicts: Vec<Verdict>,
    counterexamples: Vec<Counterexample>,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Record<'a> {
    Verdict(&'a Verdict),
    Counterexample(&'a Counterexample),
    Summary {
        status: &'static str,
        grid: &'a [String],
        verdicts: usize,
        counterexamples: usize,
    },
}

impl CheckReport {
    fn new(grid: impl IntoIterator<Item = String>) -> Self {
        CheckReport {
            grid: grid.into_iter().collect(),
            ..CheckReport::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn status(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn grid(&self) -> &[String] {
        &self.grid
    }

    pub fn verdicts(&self) -> &[Verdict] {
        &self.verdicts
    }

    pub fn counterexamples(&self) -> &[Counterexample] {
        &self.counterexamples
    }

    /// Appends another report; grid entries are kept unique in first-seen
    /// order.
    pub fn merge(&mut self, other: CheckReport) {
        for g in other.grid {
            if !self.grid.contains(&g) {
                self.grid.push(g);
            }
        }
        self.verdicts.extend(other.verdicts);
        self.counterexamples.extend(other.counterexamples);
    }

    fn verdict(&mut self, check: &str, q: &str, n: Option<usize>, pass: bool, detail: String) {
        self.verdicts.push(Verdict {
            check: check.to_string(),
            q: q.to_string(),
            n,
            pass,
            detail,
        });
    }

    fn counterexample(
        &mut self,
        check: &str,
        q: &str,
        n: Option<usize>,
        witness: String,
        rule: String,
    ) {
        self.counterexamples.push(Counterexample {
            check: check.to_string(),
            q: q.to_string(),
            n,
            witness,
            rule,
        });
    }

    /// Human-readable rendering.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "grid: {}", self.grid.join(" "));
        for v in &self.verdicts {
            let n = v.n.map(|n| format!(" n={n}")).unwrap_or_default();
            let mark = if v.pass { "ok  " } else { "FAIL" };
            let _ = writeln!(out, "[{mark}] {} q={}{n}: {}", v.check, v.q, v.detail);
        }
        if !self.counterexamples.is_empty() {
            let _ = writeln!(out, "counterexamples:");
            for c in &self.counterexamples {
                let n = c.n.map(|n| format!(" n={n}")).unwrap_or_default();
                let witness = if c.witness.is_empty() {
                    "ε"
                } else {
                    &c.witness
                };
                let _ = writeln!(out, "  {} q={}{n}: {witness} ({})", c.check, c.q, c.rule);
            }
        }
        let _ = writeln!(
            out,
            "status: {} ({} checks, {} counterexamples)",
            self.status(),
            self.verdicts.len(),
            self.counterexamples.len()
        );
        out
    }

    /// One JSON object per line: verdicts, then counterexamples, then a
    /// summary record.
    pub fn render_jsonl(&self) -> String {
        let mut out = String::new();
        let mut line = |record: Record<'_>| {
            out.push_str(&serde_json::to_string(&record).expect("records serialize"));
            out.push('\n');
        };
        for v in &self.verdicts {
            line(Record::Verdict(v));
        }
        for c in &self.counterexamples {
            line(Record::Counterexample(c));
        }
        line(Record::Summary {
            status: self.status(),
            grid: &self.grid,
            verdicts: self.verdicts.len(),
            counterexamples: self.counterexamples.len(),
        });
        out
    }
}

fn set_difference(
    report: &mut CheckReport,
    check: &str,
    q: &str,
    n: usize,
    grammar: &PathSet,
    oracle: &PathSet,
    slope: RationalSlope,
) {
    let (a, b) = (grammar.members(), oracle.members());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i] < b[j]);
        let take_b = i == a.len() || (j < b.len() && b[j] < a[i]);
        if take_a {
            let why = first_violation(&humps_of(&a[i]), slope)
                .map(|v| v.to_string())
                .unwrap_or_else(|| "rejected by the literal predicate".into());
            report.counterexample(
                check,
                q,
                Some(n),
                a[i].to_string(),
                format!("generated but invalid: {why}"),
            );
            i += 1;
        } else if take_b {
            report.counterexample(
                check,
                q,
                Some(n),
                b[j].to_string(),
                "valid but not generated".into(),
            );
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
}

/// For each `n ≤ n_max`, grammar output equals the brute-force oracle.
pub fn verify_grammar_vs_oracle(
    slope: RationalSlope,
    n_max: usize,
    limits: &Limits,
) -> Result<CheckReport, CapExceeded> {
    const CHECK: &str = "grammar-vs-oracle";
    CapExceeded::check(CapKind::Enumeration, n_max, limits.enum_cap)?;
    let q = slope.to_string();
    let mut report = CheckReport::new([q.clone()]);
    for n in 0..=n_max {
        let oracle = brute_force_with_cap(n, slope, limits.enum_cap)?;
        match try_generate_general(n, slope) {
            Ok(grammar) => {
                let before = report.counterexamples.len();
                set_difference(&mut report, CHECK, &q, n, &grammar, &oracle, slope);
                let pass = report.counterexamples.len() == before;
                report.verdict(
                    CHECK,
                    &q,
                    Some(n),
                    pass,
                    format!("grammar {} / oracle {}", grammar.len(), oracle.len()),
                );
            }
            Err(e) => {
                report.counterexample(CHECK, &q, Some(n), String::new(), e.to_string());
                report.verdict(CHECK, &q, Some(n), false, e.to_string());
            }
        }
    }
    Ok(report)
}

/// `|grammar| = |oracle| = recurrence value` for each `n ≤ n_max`.
/// Integer and unit slopes are also checked against `f^{(q+1)}` and the
/// `1/s` formula.
pub fn verify_counts(
    slope: RationalSlope,
    n_max: usize,
    limits: &Limits,
) -> Result<CheckReport, CapExceeded> {
    const CHECK: &str = "cardinality";
    CapExceeded::check(CapKind::Enumeration, n_max, limits.enum_cap)?;
    let q = slope.to_string();
    let mut report = CheckReport::new([q.clone()]);
    let w = seq_table_with_cap(Recurrence::Rational(slope), n_max, usize::MAX)?;
    let mut extra: Vec<(&str, Vec<Count>)> = Vec::new();
    if slope.is_integer() {
        let f = seq_table_with_cap(
            Recurrence::GeneralizedFibonacci { k: slope.r() + 1 },
            n_max,
            usize::MAX,
        )?;
        extra.push(("f", f.values().to_vec()));
    }
    if slope.r() == 1 {
        let u = seq_table_with_cap(Recurrence::UnitFraction { s: slope.s() }, n_max, usize::MAX)?;
        extra.push(("w_unit", u.values().to_vec()));
    }
    for n in 0..=n_max {
        let oracle = brute_force_with_cap(n, slope, limits.enum_cap)?.len();
        let grammar = match try_generate_general(n, slope) {
            Ok(set) => set.len(),
            Err(e) => {
                report.counterexample(CHECK, &q, Some(n), String::new(), e.to_string());
                report.verdict(CHECK, &q, Some(n), false, e.to_string());
                continue;
            }
        };
        let expected = &w.values()[n];
        let mut pass = Count::from(grammar) == *expected && Count::from(oracle) == *expected;
        let mut detail = format!("grammar {grammar} / oracle {oracle} / w {expected}");
        for (name, values) in &extra {
            pass &= values[n] == *expected;
            let _ = write!(detail, " / {name} {}", values[n]);
        }
        if !pass {
            report.counterexample(CHECK, &q, Some(n), detail.clone(), "cardinality law".into());
        }
        report.verdict(CHECK, &q, Some(n), pass, detail);
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ShiftError {
    #[error("several shifts align the sequences: {candidates:?}")]
    AmbiguousShift { candidates: Vec<i64> },
    #[error("sequences need at least {needed} terms each (got {a} and {b})")]
    TooShort { needed: usize, a: usize, b: usize },
}

/// The unique `d` with `|d| ≤ max_shift` such that `a[n + d] = b[n]` for
/// every `n` where both sides exist. `Ok(None)` if no shift works.
pub fn find_shift<T: PartialEq>(
    a: &[T],
    b: &[T],
    max_shift: usize,
) -> Result<Option<i64>, ShiftError> {
    let needed = max_shift + 4;
    if a.len() < needed || b.len() < needed {
        return Err(ShiftError::TooShort {
            needed,
            a: a.len(),
            b: b.len(),
        });
    }
    let max = max_shift as i64;
    let candidates: Vec<i64> = (-max..=max)
        .filter(|&d| {
            (0..b.len() as i64)
                .filter(|n| (0..a.len() as i64).contains(&(n + d)))
                .all(|n| a[(n + d) as usize] == b[n as usize])
        })
        .collect();
    match candidates.as_slice() {
        [] => Ok(None),
        [d] => Ok(Some(*d)),
        _ => Err(ShiftError::AmbiguousShift { candidates }),
    }
}

fn shift_verdict(report: &mut CheckReport, check: &str, q: &str, a: &[Count], b: &[Count]) {
    match find_shift(a, b, MAX_SHIFT) {
        Ok(Some(d)) if d == STRING_SHIFT => {
            report.verdict(
                check,
                q,
                None,
                true,
                format!("shift {d} over {} terms", b.len()),
            );
        }
        Ok(found) => {
            let what = found.map_or("no constant shift".to_string(), |d| format!("shift {d}"));
            let witness = b
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",");
            report.counterexample(
                check,
                q,
                None,
                witness,
                format!("{what}, expected {STRING_SHIFT}"),
            );
            report.verdict(check, q, None, false, what);
        }
        Err(e) => {
            report.counterexample(check, q, None, String::new(), e.to_string());
            report.verdict(check, q, None, false, e.to_string());
        }
    }
}

/// `w_n` against exhaustive q-decreasing counts for `n ≤ n_max`; integer
/// slopes additionally compare `f^{(q+1)}` with the run-avoiding counts.
pub fn verify_string_alignment(
    slope: RationalSlope,
    n_max: usize,
    limits: &Limits,
) -> Result<CheckReport, CapExceeded> {
    CapExceeded::check(CapKind::Strings, n_max, limits.string_cap)?;
    let q = slope.to_string();
    let mut report = CheckReport::new([q.clone()]);
    let long = n_max + MAX_SHIFT;
    let w = seq_table_with_cap(Recurrence::Rational(slope), long, usize::MAX)?;
    let strings = (0..=n_max)
        .map(|n| count_q_decreasing_with_cap(n, slope, limits.string_cap))
        .collect::<Result<Vec<_>, _>>()?;
    shift_verdict(
        &mut report,
        "q-decreasing-alignment",
        &q,
        w.values(),
        &strings,
    );
    if slope.is_integer() {
        let k = slope.r() + 1;
        let f: Vec<Count> = (0..=long as i64).map(|n| gfib(k, n)).collect();
        let avoiding: Vec<Count> = (0..=n_max)
            .map(|n| count_avoiding_ones_run(n, k as usize))
            .collect();
        shift_verdict(&mut report, "run-avoiding-alignment", &q, &f, &avoiding);
    }
    Ok(report)
}

/// Reduction identities over integer `q ≤ 4` and unit `1/s`, `s ≤ 5`: set
/// and predicate level for `n ≤ n_max`, sequence level up to
/// [`SEQUENCE_REDUCTION_MAX`]. Also checks literal/unified agreement for
/// every coprime `r, s ≤ 5`.
pub fn verify_reductions(n_max: usize, limits: &Limits) -> Result<CheckReport, CapExceeded> {
    CapExceeded::check(CapKind::Enumeration, n_max, limits.enum_cap)?;
    let integers: Vec<RationalSlope> = (1..=REDUCTION_MAX_Q)
        .map(|q| RationalSlope::integer(q).expect("q >= 1"))
        .collect();
    let units: Vec<RationalSlope> = (1..=REDUCTION_MAX_S)
        .map(|s| RationalSlope::unit(s).expect("s >= 1"))
        .collect();
    let grid = RationalSlope::grid(5, 5);
    let mut report = CheckReport::new(grid.iter().map(|q| q.to_string()));

    for n in 0..=n_max {
        let paths = enumerate_height2_with_cap(n, limits.enum_cap)?;
        for &slope in &grid {
            let q = slope.to_string();
            let mut pass = true;
            for path in &paths {
                let unified = is_valid_unified(path, slope);
                let mut rule = None;
                if unified != is_valid_general(path, slope) {
                    rule = Some("unified disagrees with literal r/s predicate");
                } else if slope.is_integer() && unified != is_valid_integer(path, slope.r()) {
                    rule = Some("unified disagrees with integer predicate");
                } else if slope.r() == 1 && unified != is_valid_unit(path, slope.s()) {
                    rule = Some("unified disagrees with 1/s predicate");
                }
                if let Some(rule) = rule {
                    pass = false;
                    report.counterexample(
                        "predicate-reduction",
                        &q,
                        Some(n),
                        path.to_string(),
                        rule.into(),
                    );
                    break;
                }
            }
            report.verdict(
                "predicate-reduction",
                &q,
                Some(n),
                pass,
                format!("{} paths", paths.len()),
            );
        }
        for slope in &integers {
            let q = slope.to_string();
            let general = try_generate_general(n, *slope);
            let integer = try_generate_integer(n, slope.r());
            set_reduction(&mut report, &q, n, general, integer, "integer grammar");
        }
        for slope in &units {
            let q = slope.to_string();
            let general = try_generate_general(n, *slope);
            let unit = try_generate_unit(n, slope.s());
            set_reduction(&mut report, &q, n, general, unit, "1/s grammar");
        }
    }

    let upto = SEQUENCE_REDUCTION_MAX;
    for slope in &units {
        let general = seq_table_with_cap(Recurrence::Rational(*slope), upto, usize::MAX)?;
        let unit = seq_table_with_cap(Recurrence::UnitFraction { s: slope.s() }, upto, usize::MAX)?;
        sequence_reduction(
            &mut report,
            &slope.to_string(),
            general.values(),
            unit.values(),
            "w_unit",
        );
    }
    for slope in &integers {
        let general = seq_table_with_cap(Recurrence::Rational(*slope), upto, usize::MAX)?;
        let fib = seq_table_with_cap(
            Recurrence::GeneralizedFibonacci { k: slope.r() + 1 },
            upto,
            usize::MAX,
        )?;
        sequence_reduction(
            &mut report,
            &slope.to_string(),
            general.values(),
            fib.values(),
            "f",
        );
    }
    let unit_one = seq_table_with_cap(Recurrence::UnitFraction { s: 1 }, upto, usize::MAX)?;
    let fib = seq_table_with_cap(Recurrence::GeneralizedFibonacci { k: 2 }, upto, usize::MAX)?;
    sequence_reduction(
        &mut report,
        "1",
        unit_one.values(),
        fib.values(),
        "w_unit(1) vs f^(2)",
    );

    Ok(report)
}

fn set_reduction<E: std::fmt::Display>(
    report: &mut CheckReport,
    q: &str,
    n: usize,
    general: Result<PathSet, E>,
    special: Result<PathSet, E>,
    against: &str,
) {
    const CHECK: &str = "grammar-reduction";
    let (general, special) = match (general, special) {
        (Ok(g), Ok(s)) => (g, s),
        (Err(e), _) | (_, Err(e)) => {
            report.counterexample(CHECK, q, Some(n), String::new(), e.to_string());
            report.verdict(CHECK, q, Some(n), false, e.to_string());
            return;
        }
    };
    let a = general.members();
    let b = special.members();
    let pass = a == b;
    if !pass {
        let witness = a
            .iter()
            .find(|p| !special.contains(p))
            .or_else(|| b.iter().find(|p| !general.contains(p)))
            .map(|p| p.to_string())
            .unwrap_or_default();
        report.counterexample(
            CHECK,
            q,
            Some(n),
            witness,
            format!("r/s grammar differs from {against}"),
        );
    }
    report.verdict(
        CHECK,
        q,
        Some(n),
        pass,
        format!("vs {against}: {} / {}", a.len(), b.len()),
    );
}

fn sequence_reduction(report: &mut CheckReport, q: &str, a: &[Count], b: &[Count], against: &str) {
    const CHECK: &str = "sequence-reduction";
    let mismatch = a.iter().zip(b).position(|(x, y)| x != y);
    if let Some(n) = mismatch {
        report.counterexample(
            CHECK,
            q,
            Some(n),
            format!("{} vs {}", a[n], b[n]),
            format!("w differs from {against}"),
        );
    }
    report.verdict(
        CHECK,
        q,
        None,
        mismatch.is_none(),
        format!("vs {against} for n <= {}", a.len() - 1),
    );
}

/// Grammar, counts and string alignment for each slope; reductions once.
pub fn run_grid(
    slopes: &[RationalSlope],
    sets_n_max: usize,
    counts_n_max: usize,
    with_reductions: bool,
    limits: &Limits,
) -> Result<CheckReport, CapExceeded> {
    CapExceeded::check(CapKind::Enumeration, sets_n_max, limits.enum_cap)?;
    CapExceeded::check(CapKind::Strings, counts_n_max, limits.string_cap)?;
    // grid points are independent; join in input order so output is stable
    let parts: Vec<Result<CheckReport, CapExceeded>> = std::thread::scope(|scope| {
        let handles: Vec<_> = slopes
            .iter()
            .map(|&slope| {
                scope.spawn(move || {
                    let mut part = verify_grammar_vs_oracle(slope, sets_n_max, limits)?;
                    part.merge(verify_counts(slope, sets_n_max, limits)?);
                    part.merge(verify_string_alignment(slope, counts_n_max, limits)?);
                    Ok(part)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("crosscheck worker panicked"))
            .collect()
    });
    let mut report = CheckReport::new(slopes.iter().map(|q| q.to_string()));
    for part in parts {
        report.merge(part?);
    }
    if with_reductions {
        report.merge(verify_reductions(sets_n_max, limits)?);
    }
    Ok(report)
}
