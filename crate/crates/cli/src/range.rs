use std::fmt;
use std::str::FromStr;

use evencubes::identity::IntRange;

/// Inclusive `lo..hi` range as written on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RangeArg(pub IntRange);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RangeError {
    #[error("expected `lo..hi`, got `{0}`")]
    Shape(String),
    #[error("`{0}` is not an integer")]
    Bound(String),
}

impl FromStr for RangeArg {
    type Err = RangeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s
            .split_once("..")
            .ok_or_else(|| RangeError::Shape(s.to_string()))?;
        let num = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| RangeError::Bound(t.to_string()))
        };
        Ok(Self(IntRange::new(num(lo)?, num(hi)?)))
    }
}

impl fmt::Display for RangeArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.0.lo, self.0.hi)
    }
}
