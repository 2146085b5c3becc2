//! Exact rectangular permanents and elementary symmetric polynomials.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::combinatorics::{
    binomial, binomial_u128, check_budget, falling_factorial, for_each_injection, injection_count,
};
use crate::error::{Error, Result};
use crate::matrix::RectMatrix;
use crate::rational::Rational;
use crate::scalar::Scalar;

/// Default work budget, in enumerated terms.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Naive,
    Ryser,
    /// Whichever of the two enumerates fewer terms.
    Auto,
}

/// Number of row subsets visited by [`permanent_ryser`].
pub fn ryser_terms(rows: usize, cols: usize) -> u128 {
    if rows == cols {
        if rows >= 127 {
            u128::MAX
        } else {
            1u128 << rows
        }
    } else {
        (1..=cols).fold(0u128, |acc, k| acc.saturating_add(binomial_u128(rows, k)))
    }
}

/// Sum over all injections of `prod_r z_{j_r, r}`.
///
/// Fails with [`Error::BudgetExceeded`] when `N!/(N-n)!` exceeds `budget`.
pub fn permanent_naive<S: Scalar>(z: &RectMatrix<S>, budget: u128) -> Result<S> {
    check_budget("naive permanent", injection_count(z.rows(), z.cols()), budget)?;
    let mut sum = S::zero();
    for_each_injection(z.rows(), z.cols(), &[], |j| {
        let mut p = z.get(j[0], 0).clone();
        for (r, &row) in j.iter().enumerate().skip(1) {
            p *= z.get(row, r);
        }
        sum += p;
    });
    Ok(sum)
}

/// Ryser's inclusion-exclusion formula, Gray-code ordered when square.
pub fn permanent_ryser<S: Scalar>(z: &RectMatrix<S>) -> S {
    if z.is_square() {
        ryser_square(z)
    } else {
        ryser_rect(z)
    }
}

fn ryser_square<S: Scalar>(z: &RectMatrix<S>) -> S {
    let n = z.cols();
    assert!(n < 64, "square Ryser limited to 63 rows");
    let mut sums = vec![S::zero(); n];
    let mut total = S::zero();
    let mut gray = 0u64;
    for i in 1u64..(1u64 << n) {
        let bit = i.trailing_zeros() as usize;
        gray ^= 1 << bit;
        let row = z.row(bit);
        if gray >> bit & 1 == 1 {
            for (s, v) in sums.iter_mut().zip(row) {
                *s += v;
            }
        } else {
            for (s, v) in sums.iter_mut().zip(row) {
                *s -= v;
            }
        }
        let mut prod = sums[0].clone();
        for s in &sums[1..] {
            prod *= s;
        }
        // sign (-1)^(n - |J|)
        if (n - gray.count_ones() as usize).is_multiple_of(2) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    total
}

fn ryser_rect<S: Scalar>(z: &RectMatrix<S>) -> S {
    let (big_n, n) = (z.rows(), z.cols());
    // coefficient of a k-subset: (-1)^(n-k) C(N-k, n-k)
    let coeffs: Vec<S> = (0..=n)
        .map(|k| {
            if k == 0 {
                return S::zero();
            }
            let c = binomial((big_n - k) as u64, (n - k) as u64);
            let c = if (n - k) % 2 == 1 { -c } else { c };
            S::from_rational(&Rational::from(c))
        })
        .collect();
    let mut levels: Vec<Vec<S>> = vec![vec![S::zero(); n]; n + 1];
    let mut total = S::zero();
    fn rec<S: Scalar>(
        z: &RectMatrix<S>,
        start: usize,
        depth: usize,
        levels: &mut [Vec<S>],
        coeffs: &[S],
        total: &mut S,
    ) {
        let n = z.cols();
        for j in start..z.rows() {
            let (lo, hi) = levels.split_at_mut(depth + 1);
            for ((dst, src), v) in hi[0].iter_mut().zip(&lo[depth]).zip(z.row(j)) {
                *dst = src.clone() + v;
            }
            let mut prod = hi[0][0].clone();
            for s in &hi[0][1..] {
                prod *= s;
            }
            *total += prod * &coeffs[depth + 1];
            if depth + 1 < n {
                rec(z, j + 1, depth + 1, levels, coeffs, total);
            }
        }
    }
    rec(z, 0, 0, &mut levels, &coeffs, &mut total);
    total
}

/// Permanent by the chosen method; every method honours `budget`.
pub fn permanent<S: Scalar>(z: &RectMatrix<S>, method: Method, budget: u128) -> Result<S> {
    let naive = injection_count(z.rows(), z.cols());
    let ryser = ryser_terms(z.rows(), z.cols());
    match method {
        Method::Naive => permanent_naive(z, budget),
        Method::Ryser => {
            check_budget("Ryser permanent", ryser, budget)?;
            Ok(permanent_ryser(z))
        }
        Method::Auto if naive <= ryser => permanent_naive(z, budget),
        Method::Auto => permanent(z, Method::Ryser, budget),
    }
}

/// `(N-n)!/N! * Per(Z)`.
pub fn normalized_permanent<S: Scalar>(z: &RectMatrix<S>, budget: u128) -> Result<S> {
    let per = permanent(z, Method::Auto, budget)?;
    Ok(per.scale(&injection_weight(z.rows(), z.cols())))
}

/// `(N-n)!/N!`.
pub fn injection_weight(rows: usize, cols: usize) -> Rational {
    Rational::from_bigints(BigInt::from(1), falling_factorial(rows as u64, cols as u64)).expect("cols <= rows")
}

/// `E_k(values)`; zero for `k < 0` or `k > len`.
pub fn esp<S: Scalar>(values: &[S], k: i64) -> S {
    if k < 0 || k as usize > values.len() {
        return S::zero();
    }
    let k = k as usize;
    let mut e = vec![S::zero(); k + 1];
    e[0] = S::one();
    for (i, v) in values.iter().enumerate() {
        for t in (1..=k.min(i + 1)).rev() {
            let add = e[t - 1].clone() * v;
            e[t] += add;
        }
    }
    e.pop().expect("k + 1 >= 1 entries")
}

/// All of `E_0 .. E_len` in one pass.
pub fn esp_all<S: Scalar>(values: &[S]) -> Vec<S> {
    let mut e = vec![S::zero(); values.len() + 1];
    e[0] = S::one();
    for (i, v) in values.iter().enumerate() {
        for t in (1..=i + 1).rev() {
            let add = e[t - 1].clone() * v;
            e[t] += add;
        }
    }
    e
}

/// `E_n(values) / C(N, n)` with `N = values.len()`.
pub fn normalized_esp<S: Scalar>(values: &[S], n: usize) -> Result<S> {
    if n > values.len() {
        return Err(Error::invalid("normalized ESP degree exceeds the number of values"));
    }
    let c = binomial(values.len() as u64, n as u64);
    let inv = Rational::from_bigints(BigInt::from(1), c).expect("binomial is positive");
    Ok(esp(values, n as i64).scale(&inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Subsets;
    use alloc::vec;
    use num_complex::Complex64;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn small_known_values() {
        let z = RectMatrix::from_rows(vec![vec![q(1), q(2)], vec![q(3), q(4)]]).unwrap();
        assert_eq!(permanent_naive(&z, DEFAULT_BUDGET).unwrap(), q(10));
        assert_eq!(permanent_ryser(&z), q(10));
        let ones = RectMatrix::from_fn(4, 2, |_, _| q(1)).unwrap();
        assert_eq!(permanent_ryser(&ones), q(12));
        assert_eq!(normalized_permanent(&ones, DEFAULT_BUDGET).unwrap(), q(1));
    }

    #[test]
    fn ryser_agrees_with_naive() {
        for rows in 1..=6usize {
            for cols in 1..=rows {
                let z = RectMatrix::from_fn(rows, cols, |j, r| {
                    Rational::new(((j * 7 + r * 5 + 3) % 11) as i64 - 5, (1 + (j + r) % 3) as i64)
                })
                .unwrap();
                assert_eq!(permanent_naive(&z, DEFAULT_BUDGET).unwrap(), permanent_ryser(&z), "{rows}x{cols}");
            }
        }
    }

    #[test]
    fn budget_enforced() {
        let z = RectMatrix::from_fn(9, 9, |_, _| q(1)).unwrap();
        assert!(matches!(permanent_naive(&z, 1000), Err(Error::BudgetExceeded { required: 362_880, .. })));
        assert_eq!(permanent(&z, Method::Auto, 1000).unwrap(), q(362_880));
        assert!(permanent(&z, Method::Ryser, 100).is_err());
    }

    #[test]
    fn esp_matches_subset_sums() {
        let vals: Vec<Rational> = (0..6).map(|i| Rational::new(i * 2 - 5, i + 1)).collect();
        let all = esp_all(&vals);
        for (k, from_all) in all.iter().enumerate() {
            let direct: Rational =
                Subsets::new(6, k).map(|s| s.iter().map(|&i| vals[i].clone()).product::<Rational>()).sum();
            assert_eq!(esp(&vals, k as i64), direct);
            assert_eq!(from_all, &direct);
        }
        assert_eq!(esp(&vals, -1), q(0));
        assert_eq!(esp(&vals, 7), q(0));
        assert!(normalized_esp(&vals, 7).is_err());
        let ones = vec![Complex64::new(1.0, 0.0); 5];
        assert!((normalized_esp(&ones, 3).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }
}
