use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

/// A path weight, or `Infinite` when no path exists.
///
/// `Infinite` is a real sentinel rather than a large integer, so sums never
/// overflow into plausible-looking finite values. Ordering puts every finite
/// value below `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Distance {
    Finite(u64),
    Infinite,
}

impl Distance {
    pub const ZERO: Distance = Distance::Finite(0);

    pub fn finite(self) -> Option<u64> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    /// `self - w`, or `None` if that would go negative or `self` is infinite.
    pub fn checked_sub(self, w: u64) -> Option<u64> {
        self.finite().and_then(|d| d.checked_sub(w))
    }

    pub fn unwrap_or_max(self) -> u64 {
        self.finite().unwrap_or(u64::MAX)
    }
}

impl Add for Distance {
    type Output = Distance;

    fn add(self, rhs: Distance) -> Distance {
        match (self, rhs) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a + b),
            _ => Distance::Infinite,
        }
    }
}

impl Add<u64> for Distance {
    type Output = Distance;

    fn add(self, rhs: u64) -> Distance {
        match self {
            Distance::Finite(a) => Distance::Finite(a + rhs),
            Distance::Infinite => Distance::Infinite,
        }
    }
}

impl From<u64> for Distance {
    fn from(d: u64) -> Self {
        Distance::Finite(d)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_absorbs_and_orders_last() {
        assert_eq!(Distance::Finite(3) + Distance::Infinite, Distance::Infinite);
        assert_eq!(Distance::Finite(3) + 4, Distance::Finite(7));
        assert!(Distance::Finite(u64::MAX) < Distance::Infinite);
        assert_eq!(Distance::Infinite.checked_sub(1), None);
        assert_eq!(Distance::Finite(1).checked_sub(2), None);
    }
}
