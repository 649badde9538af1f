//! The rational parameter `q = r/s`.

use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SlopeError {
    #[error("numerator and denominator must both be at least 1 (got {r}/{s})")]
    NonPositive { r: u64, s: u64 },
    #[error("{r}/{s} is not in lowest terms")]
    NotCoprime { r: u64, s: u64 },
    #[error("cannot parse {text:?} as a positive rational (expected \"r/s\" or an integer)")]
    Syntax { text: String },
    #[error("{r}/{s} is too large")]
    Overflow { r: u64, s: u64 },
}

/// A positive rational `r/s` in lowest terms.
///
/// Ordering compares the rational values, not the pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RationalSlope {
    r: u32,
    s: u32,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl RationalSlope {
    /// Builds `r/s`, rejecting pairs that are not already coprime.
    pub fn new(r: u32, s: u32) -> Result<Self, SlopeError> {
        let (r64, s64) = (u64::from(r), u64::from(s));
        if r == 0 || s == 0 {
            return Err(SlopeError::NonPositive { r: r64, s: s64 });
        }
        if gcd(r64, s64) != 1 {
            return Err(SlopeError::NotCoprime { r: r64, s: s64 });
        }
        Ok(RationalSlope { r, s })
    }

    /// Builds `r/s` after dividing out the common factor. The flag is true
    /// when a reduction actually happened.
    pub fn reduced(r: u64, s: u64) -> Result<(Self, bool), SlopeError> {
        if r == 0 || s == 0 {
            return Err(SlopeError::NonPositive { r, s });
        }
        let g = gcd(r, s);
        let (rr, ss) = (r / g, s / g);
        let rr32 = u32::try_from(rr).map_err(|_| SlopeError::Overflow { r, s })?;
        let ss32 = u32::try_from(ss).map_err(|_| SlopeError::Overflow { r, s })?;
        Ok((RationalSlope { r: rr32, s: ss32 }, g != 1))
    }

    /// The integer slope `q/1`.
    pub fn integer(q: u32) -> Result<Self, SlopeError> {
        RationalSlope::new(q, 1)
    }

    /// The unit fraction `1/s`.
    pub fn unit(s: u32) -> Result<Self, SlopeError> {
        RationalSlope::new(1, s)
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn is_integer(&self) -> bool {
        self.s == 1
    }

    /// Every coprime `r/s` with `1 ≤ r ≤ max_r` and `1 ≤ s ≤ max_s`, ordered
    /// by `r` then `s`.
    pub fn grid(max_r: u32, max_s: u32) -> Vec<RationalSlope> {
        (1..=max_r)
            .flat_map(|r| (1..=max_s).map(move |s| (r, s)))
            .filter_map(|(r, s)| RationalSlope::new(r, s).ok())
            .collect()
    }
}

impl PartialOrd for RationalSlope {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RationalSlope {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let lhs = u64::from(self.r) * u64::from(other.s);
        let rhs = u64::from(other.r) * u64::from(self.s);
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for RationalSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s == 1 {
            write!(f, "{}", self.r)
        } else {
            write!(f, "{}/{}", self.r, self.s)
        }
    }
}

/// Parses `"r/s"` or `"q"` and reduces to lowest terms. Returns the slope and
/// whether the input was unreduced.
pub fn parse_slope(text: &str) -> Result<(RationalSlope, bool), SlopeError> {
    let syntax = || SlopeError::Syntax {
        text: text.to_string(),
    };
    let parse_part = |part: &str| -> Result<u64, SlopeError> {
        let part = part.trim();
        if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(syntax());
        }
        part.parse::<u64>().map_err(|_| syntax())
    };
    match text.split_once('/') {
        Some((num, den)) => RationalSlope::reduced(parse_part(num)?, parse_part(den)?),
        None => RationalSlope::reduced(parse_part(text)?, 1),
    }
}

impl FromStr for RationalSlope {
    type Err = SlopeError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        parse_slope(text).map(|(slope, _)| slope)
    }
}
