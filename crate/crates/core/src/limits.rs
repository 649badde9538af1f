//! Size guardrails shared by the exhaustive routines.

use std::fmt;

/// Largest semilength for which height-≤2 paths are enumerated exhaustively.
pub const DEFAULT_ENUM_CAP: usize = 22;
/// Largest index for sequence tables.
pub const DEFAULT_TABLE_CAP: usize = 10_000;
/// Largest length for which binary strings are enumerated exhaustively.
pub const DEFAULT_STRING_CAP: usize = 24;

/// Which guardrail a request ran into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CapKind {
    Enumeration,
    Table,
    Strings,
}

impl fmt::Display for CapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CapKind::Enumeration => "enumeration",
            CapKind::Table => "table",
            CapKind::Strings => "string enumeration",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("requested size {requested} exceeds the {kind} cap of {cap}")]
pub struct CapExceeded {
    pub kind: CapKind,
    pub requested: usize,
    pub cap: usize,
}

impl CapExceeded {
    pub(crate) fn check(kind: CapKind, requested: usize, cap: usize) -> Result<(), CapExceeded> {
        if requested > cap {
            Err(CapExceeded {
                kind,
                requested,
                cap,
            })
        } else {
            Ok(())
        }
    }
}

/// The three caps bundled, for callers that thread configuration around.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub enum_cap: usize,
    pub table_cap: usize,
    pub string_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enum_cap: DEFAULT_ENUM_CAP,
            table_cap: DEFAULT_TABLE_CAP,
            string_cap: DEFAULT_STRING_CAP,
        }
    }
}
