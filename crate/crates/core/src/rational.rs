//! Exact rationals with a machine-word fast path.
//!
//! Values that fit in `i64 / i64` (lowest terms, positive denominator) are
//! kept inline; everything else falls back to [`BigRational`]. The
//! representation is canonical, so derived equality and hashing are exact.

use core::cmp::Ordering;
use core::fmt;
use core::iter::{Product, Sum};
use core::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    // Lowest terms, den >= 1, num != i64::MIN.
    Small { num: i64, den: i64 },
    // Never holds a value representable as `Small`.
    Big(BigRational),
}

#[inline]
fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            core::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            core::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

#[inline]
fn small(num: i64, den: i64) -> Option<Rational> {
    if num == i64::MIN || den <= 0 {
        None
    } else {
        Some(Rational(Repr::Small { num, den }))
    }
}

/// Reduce `num / den` given in i128 with `den > 0`.
fn reduce_i128(num: i128, den: i128) -> Rational {
    debug_assert!(den > 0);
    let g = gcd_u128(num.unsigned_abs(), den as u128) as i128;
    let (n, d) = (num / g, den / g);
    match (i64::try_from(n), i64::try_from(d)) {
        (Ok(n), Ok(d)) if n != i64::MIN => Rational(Repr::Small { num: n, den: d }),
        _ => Rational(Repr::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
    }
}

/// Error returned when a string is not a valid rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseRationalError {
    text: String,
    reason: &'static str,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational {:?}: {}", self.text, self.reason)
    }
}

impl Rational {
    /// The integer `value`.
    pub fn from_integer(value: i64) -> Self {
        small(value, 1).unwrap_or_else(|| Rational(Repr::Big(BigRational::from_integer(value.into()))))
    }

    /// `num / den` in lowest terms.
    ///
    /// # Panics
    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "rational with zero denominator");
        let (n, d) = if den < 0 { (-(num as i128), -(den as i128)) } else { (num as i128, den as i128) };
        reduce_i128(n, d)
    }

    /// Build from arbitrary precision parts. Returns `None` when `den == 0`.
    pub fn from_bigints(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::from_big(BigRational::new(num, den)))
    }

    /// Convert from a [`BigRational`], demoting to the inline form if it fits.
    pub fn from_big(value: BigRational) -> Self {
        if let (Some(n), Some(d)) = (value.numer().to_i64(), value.denom().to_i64()) {
            if let Some(r) = small(n, d) {
                return r;
            }
        }
        Rational(Repr::Big(value))
    }

    /// Convert to a [`BigRational`].
    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(b) => b.clone(),
        }
    }

    /// Numerator in lowest terms (sign carried here).
    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    /// Denominator in lowest terms, always positive.
    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn checked_recip(&self) -> Option<Self> {
        match &self.0 {
            Repr::Small { num, den } => {
                if *num == 0 {
                    None
                } else if *num < 0 {
                    Some(Rational(Repr::Small { num: -*den, den: -*num }))
                } else {
                    Some(Rational(Repr::Small { num: *den, den: *num }))
                }
            }
            Repr::Big(b) => {
                if b.is_zero() {
                    None
                } else {
                    Some(Self::from_big(b.recip()))
                }
            }
        }
    }

    /// Integer power (negative exponents invert).
    ///
    /// # Panics
    /// Panics on a negative power of zero.
    pub fn pow(&self, exp: i32) -> Self {
        let base = if exp < 0 { self.checked_recip().expect("negative power of zero") } else { self.clone() };
        let mut acc = Rational::one();
        for _ in 0..exp.unsigned_abs() {
            acc *= &base;
        }
        acc
    }

    /// Nearest `f64` (not necessarily correctly rounded for huge parts).
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { num, den } => *num as f64 / *den as f64,
            Repr::Big(b) => b.to_f64().unwrap_or_else(|| {
                // Fall back to scaled division when parts overflow f64.
                let n = b.numer();
                let d = b.denom();
                let shift = n.bits().max(d.bits()).saturating_sub(1000);
                let nf = (n >> shift).to_f64().unwrap_or(f64::NAN);
                let df = (d >> shift).to_f64().unwrap_or(f64::NAN);
                nf / df
            }),
        }
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &rhs.0) {
            let (a, b, c, d) = (*a, *b, *c, *d);
            if b == d {
                if let Some(n) = a.checked_add(c) {
                    if b == 1 {
                        if let Some(r) = small(n, 1) {
                            return r;
                        }
                    } else {
                        let g = gcd_u64(n.unsigned_abs(), b as u64) as i64;
                        if let Some(r) = small(n / g, b / g) {
                            return r;
                        }
                    }
                }
            } else {
                return reduce_i128(a as i128 * d as i128 + c as i128 * b as i128, b as i128 * d as i128);
            }
        }
        Self::from_big(self.to_big() + rhs.to_big())
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if let (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) = (&self.0, &rhs.0) {
            let (a, b, c, d) = (*a, *b, *c, *d);
            if a == 0 || c == 0 {
                return Rational::zero();
            }
            let g1 = gcd_u64(a.unsigned_abs(), d as u64) as i64;
            let g2 = gcd_u64(c.unsigned_abs(), b as u64) as i64;
            if let (Some(n), Some(m)) = ((a / g1).checked_mul(c / g2), (b / g2).checked_mul(d / g1)) {
                if let Some(r) = small(n, m) {
                    return r;
                }
            }
        }
        Self::from_big(self.to_big() * rhs.to_big())
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(Repr::Small { num: 0, den: 1 })
    }
    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(Repr::Small { num: 1, den: 1 })
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl From<BigInt> for Rational {
    fn from(value: BigInt) -> Self {
        Rational::from_big(BigRational::from_integer(value))
    }
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Rational::from_big(value)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self.0 {
            Repr::Small { num, den } => Rational(Repr::Small { num: -num, den }),
            Repr::Big(b) => Rational::from_big(-b),
        }
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -self.clone()
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $AssignTrait:ident, $assign:ident, $body:expr) => {
        impl $Trait<&Rational> for &Rational {
            type Output = Rational;
            #[inline]
            fn $method(self, rhs: &Rational) -> Rational {
                let f: fn(&Rational, &Rational) -> Rational = $body;
                f(self, rhs)
            }
        }
        impl $Trait<Rational> for Rational {
            type Output = Rational;
            #[inline]
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl $Trait<&Rational> for Rational {
            type Output = Rational;
            #[inline]
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl $Trait<Rational> for &Rational {
            type Output = Rational;
            #[inline]
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
        impl $AssignTrait<&Rational> for Rational {
            #[inline]
            fn $assign(&mut self, rhs: &Rational) {
                *self = (&*self).$method(rhs);
            }
        }
        impl $AssignTrait<Rational> for Rational {
            #[inline]
            fn $assign(&mut self, rhs: Rational) {
                *self = (&*self).$method(&rhs);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign, |a, b| a.add_ref(b));
forward_binop!(Sub, sub, SubAssign, sub_assign, |a, b| a.add_ref(&-b));
forward_binop!(Mul, mul, MulAssign, mul_assign, |a, b| a.mul_ref(b));
forward_binop!(Div, div, DivAssign, div_assign, |a, b| {
    a.mul_ref(&b.checked_recip().expect("division by zero rational"))
});

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

impl<'a> Product<&'a Rational> for Rational {
    fn product<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `p` or `p/q` with integer `p` and positive integer `q`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason| ParseRationalError { text: s.to_string(), reason };
        let t = s.trim();
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (p.trim(), Some(q.trim())),
            None => (t, None),
        };
        let valid_int = |x: &str, signed: bool| {
            let digits = if signed { x.strip_prefix(['-', '+']).unwrap_or(x) } else { x };
            !digits.is_empty() && digits.bytes().all(|c| c.is_ascii_digit())
        };
        if !valid_int(p, true) {
            return Err(err("numerator is not an integer"));
        }
        let num: BigInt = p.parse().map_err(|_| err("numerator is not an integer"))?;
        let den: BigInt = match q {
            None => BigInt::one(),
            Some(q) => {
                if !valid_int(q, false) {
                    return Err(err("denominator is not a positive integer"));
                }
                q.parse().map_err(|_| err("denominator is not a positive integer"))?
            }
        };
        if den.is_zero() {
            return Err(err("denominator is zero"));
        }
        Ok(Rational::from_big(BigRational::new(num, den)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn big(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn gcd_matches_reference() {
        for a in 0..60u64 {
            for b in 0..60u64 {
                assert_eq!(gcd_u64(a, b), a.gcd(&b), "{a} {b}");
            }
        }
    }

    #[test]
    fn arithmetic_matches_bigrational() {
        let samples = [
            (0, 1),
            (1, 1),
            (-3, 7),
            (22, 7),
            (i64::MAX, 3),
            (-i64::MAX, 5),
            (5, i64::MAX),
            (1 << 40, 3),
            (-(1 << 35), 1),
        ];
        for &(a, b) in &samples {
            for &(c, d) in &samples {
                let x = Rational::new(a, b);
                let y = Rational::new(c, d);
                assert_eq!((&x + &y).to_big(), big(a, b) + big(c, d));
                assert_eq!((&x - &y).to_big(), big(a, b) - big(c, d));
                assert_eq!((&x * &y).to_big(), big(a, b) * big(c, d));
                if c != 0 {
                    assert_eq!((&x / &y).to_big(), big(a, b) / big(c, d));
                }
                assert_eq!(x.cmp(&y), big(a, b).cmp(&big(c, d)));
            }
        }
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let x = Rational::from_integer(i64::MAX);
        let y = &x * &x;
        assert!(matches!(y.0, Repr::Big(_)));
        let back = &y / &x;
        assert_eq!(back, x);
        assert!(matches!(back.0, Repr::Small { .. }));
        let z = &y - &y;
        assert!(z.is_zero());
    }

    #[test]
    fn min_value_is_kept_big() {
        let m = Rational::from_integer(i64::MIN);
        assert!(matches!(m.0, Repr::Big(_)));
        assert_eq!(-(-m.clone()), m);
        assert_eq!(m.to_string(), "-9223372036854775808");
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("6/4".parse::<Rational>().unwrap().to_string(), "3/2");
        assert_eq!("-10/5".parse::<Rational>().unwrap().to_string(), "-2");
        assert_eq!(" 7 ".parse::<Rational>().unwrap(), Rational::from_integer(7));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("a/2".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
        assert!("1.5".parse::<Rational>().is_err());
    }

    #[test]
    fn to_f64_huge_parts() {
        let x = Rational::from(BigInt::from(10).pow(400)) / Rational::from(BigInt::from(10).pow(399));
        assert!((x.to_f64() - 10.0).abs() < 1e-12);
    }
}
