//! Number types the integer program is evaluated in: `f64` for speed and
//! `Ratio<i64>` when exact comparisons are needed.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::ToPrimitive;

pub trait Field:
    Copy
    + PartialOrd
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
    fn floor_i64(self) -> i64;
    fn ceil_i64(self) -> i64;
    fn to_f64(self) -> f64;
    /// Slack required for a strict inequality to count as satisfied.
    fn margin() -> Self;
    /// Equality used when ranking candidate optima.
    fn same_value(a: Self, b: Self) -> bool;

    fn ratio(n: i64, d: i64) -> Self {
        Self::from_i64(n) / Self::from_i64(d)
    }

    fn zero() -> Self {
        Self::from_i64(0)
    }
}

impl Field for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn floor_i64(self) -> i64 {
        self.floor() as i64
    }
    fn ceil_i64(self) -> i64 {
        self.ceil() as i64
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn margin() -> Self {
        1e-12
    }
    fn same_value(a: Self, b: Self) -> bool {
        (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
    }
}

pub type Rational = Ratio<i64>;

impl Field for Rational {
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(n)
    }
    fn floor_i64(self) -> i64 {
        self.floor().to_integer()
    }
    fn ceil_i64(self) -> i64 {
        self.ceil().to_integer()
    }
    fn to_f64(self) -> f64 {
        ToPrimitive::to_f64(&self).expect("ratio of i64 is finite")
    }
    fn margin() -> Self {
        Self::zero()
    }
    fn same_value(a: Self, b: Self) -> bool {
        a == b
    }
}

/// Smallest integer strictly greater than `x`.
pub fn si<T: Field>(x: T) -> i64 {
    x.floor_i64() + 1
}

/// Largest integer strictly smaller than `x`.
pub fn li<T: Field>(x: T) -> i64 {
    x.ceil_i64() - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!((si(1.2), li(1.2)), (2, 1));
        assert_eq!((si(2.0), li(2.0)), (3, 1));
        assert_eq!((si(-0.5), li(-0.5)), (0, -1));
        let r = Rational::new(7, 3);
        assert_eq!((si(r), li(r)), (3, 2));
        assert_eq!(si(Rational::from_integer(-4)), -3);
    }
}
