//! Extended reals for threshold values that can be `+∞`.
//!
//! Several χ₀-thresholds are "understood as +∞" when their denominator
//! vanishes; that case is carried explicitly rather than as a sentinel
//! float.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    PosInf,
}

impl ExtReal {
    /// `x < self`, the strict smallness test used by every χ₀ condition.
    pub fn admits(self, x: f64) -> bool {
        match self {
            ExtReal::Finite(v) => x < v,
            ExtReal::PosInf => true,
        }
    }

    pub fn as_finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(v),
            ExtReal::PosInf => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn min(self, other: ExtReal) -> ExtReal {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a.min(b)),
            (ExtReal::Finite(a), ExtReal::PosInf) => ExtReal::Finite(a),
            (ExtReal::PosInf, x) => x,
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(v) => write!(f, "{v}"),
            ExtReal::PosInf => write!(f, "inf"),
        }
    }
}
