//! Dyck paths of height at most two whose 1-peak blocks are throttled by a
//! rational slope `q = r/s`, together with the recurrences that count them
//! and the binary-string families they are equinumerous with.
//!
//! The crate is organised bottom-up:
//!
//! - [`path`] represents, parses and renders height-≤2 paths and their hump
//!   decomposition; [`slope`] holds the `r/s` parameter.
//! - [`validity`] decides membership in `D_n^q`, both by literal scans of the
//!   step sequence and by a single algorithm over hump profiles.
//! - [`generation`] builds `D_n^q` from its recursive decomposition and
//!   provides the brute-force oracle.
//! - [`sequences`] evaluates the counting recurrences exactly.
//! - [`qstrings`] implements q-decreasing strings and run-avoiding strings.
//! - [`crosscheck`] ties everything together into differential reports.
//! - [`cli`] is the command-line front end used by the `qdyck` binary.

pub mod cli;
pub mod crosscheck;
pub mod generation;
pub mod limits;
pub mod path;
pub mod qstrings;
pub mod sequences;
pub mod slope;
pub mod validity;

pub use generation::{
    brute_force, generate_general, generate_integer, generate_unit, Family, PathSet,
};
pub use limits::{CapExceeded, Limits};
pub use path::{
    enumerate_height2, humps_of, parse_path, path_of_humps, render_path, zero_valley_runs,
    DyckPath, HumpProfile, Notation, PathError, Step,
};
pub use sequences::{gfib, seq_table, w_general, w_unit, Count, Recurrence, SequenceTable};
pub use slope::{RationalSlope, SlopeError};
pub use validity::{
    is_valid_general, is_valid_integer, is_valid_unified, is_valid_unit, max_consecutive_one_peaks,
    required_valleys,
};
