//! Product-of-means approximants `H_1`, `H_2` and the general `H_l`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::combinatorics::{check_budget, factorial, falling_factorial, ColSet};
use crate::error::{Error, Result};
use crate::matrix::RectMatrix;
use crate::rational::Rational;
use crate::scalar::Scalar;

/// Largest column count accepted by [`g_m`] and [`h_ell`].
pub const MAX_EXPANSION_COLS: usize = 12;

/// A polynomial in `x_0 .. x_{n-1}` reduced modulo every `x_r^2`.
///
/// Coefficients are indexed by the bitmask of the monomial. Reduction is a ring
/// homomorphism, so products computed here have the same square-free
/// coefficients as the full expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct MultilinearPoly<S> {
    vars: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> MultilinearPoly<S> {
    pub fn zero(vars: usize) -> Self {
        assert!(vars < 32, "too many variables");
        MultilinearPoly { vars, coeffs: vec![S::zero(); 1 << vars] }
    }

    pub fn one(vars: usize) -> Self {
        let mut p = Self::zero(vars);
        p.coeffs[0] = S::one();
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn coeff(&self, monomial: ColSet) -> &S {
        &self.coeffs[monomial.0 as usize]
    }

    pub fn set_coeff(&mut self, monomial: ColSet, value: S) {
        self.coeffs[monomial.0 as usize] = value;
    }

    /// Multiply by `constant + sum_r linear[r] x_r`.
    pub fn mul_affine(&mut self, constant: &S, linear: &[S]) {
        assert_eq!(linear.len(), self.vars, "linear form has wrong arity");
        // Descending masks: every source mask is smaller than its target.
        for mask in (0..self.coeffs.len()).rev() {
            let mut acc = self.coeffs[mask].clone() * constant;
            let mut bits = mask;
            while bits != 0 {
                let r = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                acc += self.coeffs[mask & !(1 << r)].clone() * &linear[r];
            }
            self.coeffs[mask] = acc;
        }
    }

    /// Product in the reduced ring (subset convolution).
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "variable count mismatch");
        let mut out = Self::zero(self.vars);
        for (mask, slot) in out.coeffs.iter_mut().enumerate() {
            let mut sub = mask;
            loop {
                *slot += self.coeffs[sub].clone() * &other.coeffs[mask ^ sub];
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & mask;
            }
        }
        out
    }
}

/// `H_1 = prod_r z~_r`.
pub fn h1<S: Scalar>(z: &RectMatrix<S>) -> S {
    z.column_means().into_iter().fold(S::one(), |acc, m| acc * m)
}

/// `p~^(2) = sum_{|R|=2} p~_{n minus R} sum_j prod_{r in R} a_{j,r}`.
pub fn ptilde2<S: Scalar>(z: &RectMatrix<S>) -> Result<S> {
    let n = z.cols();
    if n < 2 {
        return Err(Error::invalid("second-order correction needs at least two columns"));
    }
    let stats = z.column_stats();
    let a = &stats.residuals;
    let mut total = S::zero();
    for r in 0..n {
        for s in r + 1..n {
            let mut rest = S::one();
            for (t, m) in stats.means.iter().enumerate() {
                if t != r && t != s {
                    rest *= m;
                }
            }
            let mut cov = S::zero();
            for j in 0..z.rows() {
                cov += a.get(j, r).clone() * a.get(j, s);
            }
            total += rest * cov;
        }
    }
    Ok(total)
}

/// `H_2 = H_1 - p~^(2) / (N (N-1))`.
pub fn h2<S: Scalar>(z: &RectMatrix<S>) -> Result<S> {
    let correction = ptilde2(z)?;
    let big_n = z.rows() as i64;
    Ok(h1(z) - correction.scale(&Rational::new(1, big_n * (big_n - 1))))
}

/// `G_m`: the `x_0 .. x_{n-1}` coefficient of
/// `(sum_r z~_r x_r)^(n-m) * prod_j (1 + sum_r a_{j,r} x_r)`,
/// scaled by `(N-m)! / ((n-m)! N!)`.
pub fn g_m<S: Scalar>(z: &RectMatrix<S>, m: usize) -> Result<S> {
    let (big_n, n) = (z.rows(), z.cols());
    if m > n {
        return Err(Error::invalid("approximant order exceeds the column count"));
    }
    check_budget("multilinear expansion columns", n as u128, MAX_EXPANSION_COLS as u128)?;
    let stats = z.column_stats();

    let mut power = MultilinearPoly::one(n);
    for _ in 0..n - m {
        power.mul_affine(&S::zero(), &stats.means);
    }
    let mut rows = MultilinearPoly::one(n);
    for j in 0..big_n {
        rows.mul_affine(&S::one(), stats.residuals.row(j));
    }
    let full = ColSet::full(n);
    let mut coeff = S::zero();
    for s in full.subsets() {
        coeff += power.coeff(s).clone() * rows.coeff(full.difference(s));
    }
    // (N-m)!/N! = 1 / (N (N-1) ... (N-m+1))
    let denom = falling_factorial(big_n as u64, m as u64) * factorial((n - m) as u64);
    let scale = Rational::from_bigints(BigInt::from(1), denom).expect("positive");
    Ok(coeff.scale(&scale))
}

/// `H_l = sum_{m=0}^{l} G_m`.
pub fn h_ell<S: Scalar>(z: &RectMatrix<S>, ell: usize) -> Result<S> {
    if ell == 0 || ell > z.cols() {
        return Err(Error::invalid("approximant order must lie in 1..=n"));
    }
    let mut sum = S::zero();
    for m in 0..=ell {
        sum += g_m(z, m)?;
    }
    Ok(sum)
}
