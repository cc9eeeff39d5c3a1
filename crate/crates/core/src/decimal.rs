//! Exact decimal arithmetic for borderline parameter comparisons.
//!
//! The boundedness theorems change form on the exact equalities
//! α = m + γ - 1 and α = 2m + γ - 2, so parameters supplied as decimal
//! strings are kept in exact form and compared rationally. Arithmetic is
//! checked; overflow falls back to `None` and callers revert to a float
//! tolerance.

use std::cmp::Ordering;
use std::fmt;

/// A signed decimal `units / 10^scale`, exact as parsed.
#[derive(Debug, Clone, Copy)]
pub struct Decimal {
    units: i128,
    scale: u32,
}

impl Decimal {
    pub const ZERO: Decimal = Decimal { units: 0, scale: 0 };
    pub const ONE: Decimal = Decimal { units: 1, scale: 0 };
    pub const TWO: Decimal = Decimal { units: 2, scale: 0 };

    pub fn from_int(n: i64) -> Decimal {
        Decimal {
            units: n as i128,
            scale: 0,
        }
    }

    /// Parses a plain decimal literal (`-3`, `0.25`, `1.50`). Exponent
    /// notation is rejected so that exactness is never silently lost.
    pub fn parse(s: &str) -> Option<Decimal> {
        let s = s.trim();
        if s.is_empty() {
            return None;
        }
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return None;
        }
        if int_part.len() + frac_part.len() > 30 {
            return None;
        }
        let mut units: i128 = 0;
        for b in int_part.bytes().chain(frac_part.bytes()) {
            units = units.checked_mul(10)?.checked_add((b - b'0') as i128)?;
        }
        if neg {
            units = -units;
        }
        Some(
            Decimal {
                units,
                scale: frac_part.len() as u32,
            }
            .normalized(),
        )
    }

    fn normalized(mut self) -> Decimal {
        while self.scale > 0 && self.units % 10 == 0 {
            self.units /= 10;
            self.scale -= 1;
        }
        self
    }

    fn pow10(e: u32) -> Option<i128> {
        10i128.checked_pow(e)
    }

    /// Rescales both operands to a common denominator.
    fn aligned(self, other: Decimal) -> Option<(i128, i128)> {
        let scale = self.scale.max(other.scale);
        let a = self.units.checked_mul(Self::pow10(scale - self.scale)?)?;
        let b = other.units.checked_mul(Self::pow10(scale - other.scale)?)?;
        Some((a, b))
    }

    pub fn checked_add(self, other: Decimal) -> Option<Decimal> {
        let scale = self.scale.max(other.scale);
        let (a, b) = self.aligned(other)?;
        Some(
            Decimal {
                units: a.checked_add(b)?,
                scale,
            }
            .normalized(),
        )
    }

    pub fn checked_sub(self, other: Decimal) -> Option<Decimal> {
        let scale = self.scale.max(other.scale);
        let (a, b) = self.aligned(other)?;
        Some(
            Decimal {
                units: a.checked_sub(b)?,
                scale,
            }
            .normalized(),
        )
    }

    pub fn checked_mul_int(self, k: i64) -> Option<Decimal> {
        Some(
            Decimal {
                units: self.units.checked_mul(k as i128)?,
                scale: self.scale,
            }
            .normalized(),
        )
    }

    pub fn cmp_value(self, other: Decimal) -> Option<Ordering> {
        let (a, b) = self.aligned(other)?;
        Some(a.cmp(&b))
    }

    pub fn is_one(self) -> bool {
        self.cmp_value(Decimal::ONE) == Some(Ordering::Equal)
    }

    pub fn to_f64(self) -> f64 {
        self.units as f64 / 10f64.powi(self.scale as i32)
    }
}

impl PartialEq for Decimal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(*other) == Some(Ordering::Equal)
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.normalized();
        if d.scale == 0 {
            return write!(f, "{}", d.units);
        }
        let sign = if d.units < 0 { "-" } else { "" };
        let mag = d.units.unsigned_abs();
        let div = 10u128.pow(d.scale);
        write!(
            f,
            "{sign}{}.{:0width$}",
            mag / div,
            mag % div,
            width = d.scale as usize
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "1", "-3", "0.25", "1.5", "10.125", "-0.001"] {
            let d = Decimal::parse(s).unwrap();
            assert_eq!(Decimal::parse(&d.to_string()).unwrap(), d, "{s}");
        }
        // trailing zeros normalize away but compare equal in value
        assert_eq!(
            Decimal::parse("1.50").unwrap(),
            Decimal::parse("1.5").unwrap()
        );
        assert!(Decimal::parse("1e-3").is_none());
        assert!(Decimal::parse("").is_none());
        assert!(Decimal::parse("two").is_none());
    }

    #[test]
    fn exact_borderline_arithmetic() {
        // alpha = m + gamma - 1 detected exactly where floats would need care
        let m = Decimal::parse("0.1").unwrap();
        let gamma = Decimal::parse("1.2").unwrap();
        let alpha = Decimal::parse("0.3").unwrap();
        let rhs = m
            .checked_add(gamma)
            .unwrap()
            .checked_sub(Decimal::ONE)
            .unwrap();
        assert_eq!(alpha.cmp_value(rhs), Some(Ordering::Equal));
        // while in f64 arithmetic 0.1 + 1.2 - 1.0 != 0.3
        assert_ne!(0.1 + 1.2 - 1.0, 0.3);
    }

    #[test]
    fn comparisons() {
        let a = Decimal::parse("2.5").unwrap();
        let b = Decimal::parse("2.50001").unwrap();
        assert_eq!(a.cmp_value(b), Some(Ordering::Less));
        assert_eq!(a.checked_mul_int(2).unwrap(), Decimal::parse("5").unwrap());
        assert!((a.to_f64() - 2.5).abs() == 0.0);
    }
}
