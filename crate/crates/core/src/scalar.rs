//! The two scalar domains: exact rationals and complex doubles.

use core::fmt::Debug;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarDomain {
    ExactRational,
    ComplexFloat64,
}

/// Comparison slack for floating-point domains: `|a-b| <= abs + rel*max(|a|,|b|)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const EXACT: Tolerance = Tolerance { abs: 0.0, rel: 0.0 };

    pub const fn new(abs: f64, rel: f64) -> Self {
        Tolerance { abs, rel }
    }
}

/// Arithmetic needed by every algorithm in the crate.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    const DOMAIN: ScalarDomain;
    /// Tolerance used by identity checks in this domain.
    const DEFAULT_TOLERANCE: Tolerance;

    fn from_i64(value: i64) -> Self;
    /// Embed an exact rational coefficient.
    fn from_rational(value: &Rational) -> Self;
    /// `|z|` as a double.
    fn modulus(&self) -> f64;
    /// `|z|^2`, computed inside the domain (exact for rationals).
    fn abs_sq(&self) -> Self;
    fn to_complex(&self) -> Complex64;
    /// Equality within `tol` (exact comparison for rationals).
    fn close_to(&self, other: &Self, tol: Tolerance) -> bool;
    /// `|z| <= 1`, decided on `|z|^2` (exactly for rationals).
    fn within_unit_disc(&self) -> bool;

    /// Multiply by a rational coefficient.
    fn scale(&self, coeff: &Rational) -> Self {
        self.clone() * Self::from_rational(coeff)
    }
}

impl Scalar for Rational {
    const DOMAIN: ScalarDomain = ScalarDomain::ExactRational;
    const DEFAULT_TOLERANCE: Tolerance = Tolerance::EXACT;

    fn from_i64(value: i64) -> Self {
        Rational::from_integer(value)
    }
    fn from_rational(value: &Rational) -> Self {
        value.clone()
    }
    fn modulus(&self) -> f64 {
        self.to_f64().abs()
    }
    fn abs_sq(&self) -> Self {
        self * self
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64(), 0.0)
    }
    fn close_to(&self, other: &Self, _tol: Tolerance) -> bool {
        self == other
    }
    fn within_unit_disc(&self) -> bool {
        self.abs() <= Rational::one()
    }
    fn scale(&self, coeff: &Rational) -> Self {
        self * coeff
    }
}

impl Scalar for Complex64 {
    const DOMAIN: ScalarDomain = ScalarDomain::ComplexFloat64;
    const DEFAULT_TOLERANCE: Tolerance = Tolerance::new(1e-9, 1e-9);

    fn from_i64(value: i64) -> Self {
        Complex64::new(value as f64, 0.0)
    }
    fn from_rational(value: &Rational) -> Self {
        Complex64::new(value.to_f64(), 0.0)
    }
    fn modulus(&self) -> f64 {
        self.norm()
    }
    fn abs_sq(&self) -> Self {
        Complex64::new(self.norm_sqr(), 0.0)
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn close_to(&self, other: &Self, tol: Tolerance) -> bool {
        let scale = self.norm().max(other.norm());
        (self - other).norm() <= tol.abs + tol.rel * scale
    }
    fn within_unit_disc(&self) -> bool {
        self.norm_sqr() <= 1.0
    }
    fn scale(&self, coeff: &Rational) -> Self {
        self * coeff.to_f64()
    }
}
