//! Nonnegative extended reals used for bound values.
//!
//! Conventions: `0^0 = 1`, `1/0 = inf`, `1^inf = 1`, and `0 * inf = 0`.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul};

use num_traits::Float;

/// A value in `[0, +inf]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    Infinity,
}

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal::Finite(0.0);
    pub const ONE: ExtReal = ExtReal::Finite(1.0);

    /// Wrap a nonnegative float. `+inf` maps to [`ExtReal::Infinity`].
    ///
    /// # Panics
    /// Panics on NaN or negative input.
    pub fn new(value: f64) -> Self {
        assert!(value >= 0.0, "extended real must be nonnegative, got {value}");
        if value.is_infinite() {
            ExtReal::Infinity
        } else {
            ExtReal::Finite(value)
        }
    }

    /// The value as `f64`, with infinity as `f64::INFINITY`.
    pub fn value(self) -> f64 {
        match self {
            ExtReal::Finite(v) => v,
            ExtReal::Infinity => f64::INFINITY,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn recip(self) -> Self {
        match self {
            ExtReal::Finite(0.0) => ExtReal::Infinity,
            ExtReal::Finite(v) => ExtReal::new(1.0 / v),
            ExtReal::Infinity => ExtReal::ZERO,
        }
    }

    pub fn sqrt(self) -> Self {
        match self {
            ExtReal::Finite(v) => ExtReal::Finite(Float::sqrt(v)),
            ExtReal::Infinity => ExtReal::Infinity,
        }
    }

    /// `self^exp` for a finite real exponent.
    pub fn powf(self, exp: f64) -> Self {
        if exp == 0.0 {
            return ExtReal::ONE;
        }
        match self {
            ExtReal::Finite(v) => ExtReal::new(Float::powf(v, exp)),
            ExtReal::Infinity if exp > 0.0 => ExtReal::Infinity,
            ExtReal::Infinity => ExtReal::ZERO,
        }
    }

    /// `self^exp` where the exponent may be infinite.
    pub fn pow_ext(self, exp: ExtReal) -> Self {
        match exp {
            ExtReal::Finite(e) => self.powf(e),
            ExtReal::Infinity => match self.value().partial_cmp(&1.0) {
                Some(Ordering::Less) => ExtReal::ZERO,
                Some(Ordering::Equal) => ExtReal::ONE,
                _ => ExtReal::Infinity,
            },
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// `self <= other + slack`; infinity only sits below infinity.
    pub fn le_with_slack(self, other: Self, slack: f64) -> bool {
        match (self, other) {
            (_, ExtReal::Infinity) => true,
            (ExtReal::Infinity, _) => false,
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a <= b + slack,
        }
    }
}

impl From<f64> for ExtReal {
    fn from(value: f64) -> Self {
        ExtReal::new(value)
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (ExtReal::Infinity, ExtReal::Infinity) => Some(Ordering::Equal),
            (ExtReal::Infinity, _) => Some(Ordering::Greater),
            (_, ExtReal::Infinity) => Some(Ordering::Less),
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a.partial_cmp(b),
        }
    }
}

impl Add for ExtReal {
    type Output = ExtReal;
    fn add(self, rhs: ExtReal) -> ExtReal {
        match (self, rhs) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::new(a + b),
            _ => ExtReal::Infinity,
        }
    }
}

impl Mul for ExtReal {
    type Output = ExtReal;
    fn mul(self, rhs: ExtReal) -> ExtReal {
        match (self, rhs) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::new(a * b),
            (ExtReal::Finite(z), _) | (_, ExtReal::Finite(z)) if z == 0.0 => ExtReal::ZERO,
            _ => ExtReal::Infinity,
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(v) => fmt::Display::fmt(v, f),
            ExtReal::Infinity => f.write_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conventions() {
        assert_eq!(ExtReal::ZERO.powf(0.0), ExtReal::ONE);
        assert_eq!(ExtReal::ZERO.recip(), ExtReal::Infinity);
        assert_eq!(ExtReal::ONE.pow_ext(ExtReal::Infinity), ExtReal::ONE);
        assert_eq!(ExtReal::ZERO * ExtReal::Infinity, ExtReal::ZERO);
        assert_eq!(ExtReal::Infinity * ExtReal::new(2.0), ExtReal::Infinity);
        assert_eq!(ExtReal::Infinity.recip(), ExtReal::ZERO);
        assert_eq!(ExtReal::new(0.5).pow_ext(ExtReal::Infinity), ExtReal::ZERO);
        assert_eq!(ExtReal::new(f64::INFINITY), ExtReal::Infinity);
    }

    #[test]
    fn ordering_and_slack() {
        assert!(ExtReal::new(3.0) < ExtReal::Infinity);
        assert!(ExtReal::new(1.0 + 1e-12).le_with_slack(ExtReal::ONE, 1e-10));
        assert!(!ExtReal::Infinity.le_with_slack(ExtReal::ONE, 1e9));
        assert_eq!(ExtReal::new(2.0).min(ExtReal::Infinity), ExtReal::new(2.0));
    }

    #[test]
    #[should_panic]
    fn rejects_negative() {
        let _ = ExtReal::new(-1.0);
    }
}
