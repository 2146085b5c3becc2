//! Scalar helper functions shared by the bounds.

use num_bigint::BigInt;
use num_traits::Float;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::ext_real::ExtReal;
use crate::rational::Rational;

fn check_args(x1: f64, x2: f64) -> Result<()> {
    if !(x1 >= 0.0 && x2 >= 0.0 && x1.is_finite() && x2.is_finite()) {
        return Err(Error::invalid("shape function arguments must be finite and nonnegative"));
    }
    Ok(())
}

/// `x^e` with `0^0 = 1`.
fn powi(x: f64, e: usize) -> f64 {
    Float::powi(x, e as i32)
}

/// `sum_{k=2}^n (k-1) x1^(n-k) x2^(k-2)`, always evaluated as the sum.
pub fn f_first(n: usize, x1: f64, x2: f64) -> Result<ExtReal> {
    if n < 2 {
        return Err(Error::invalid("f_first needs n >= 2"));
    }
    check_args(x1, x2)?;
    let sum: f64 = (2..=n).map(|k| (k - 1) as f64 * powi(x1, n - k) * powi(x2, k - 2)).sum();
    Ok(ExtReal::new(sum))
}

/// The rational closed form of [`f_first`]; `None` when `x1 == x2`.
pub fn f_first_closed(n: usize, x1: f64, x2: f64) -> Option<f64> {
    if n < 2 || x1 == x2 {
        return None;
    }
    let num = (n - 1) as f64 * powi(x2, n) - n as f64 * x1 * powi(x2, n - 1) + powi(x1, n);
    Some(num / ((x2 - x1) * (x2 - x1)))
}

/// `sum_{k=3}^n (n+k-2)(n-k+1) x1^(n-k) x2^(k-3)`; zero for `n < 3`.
pub fn f_second3(n: usize, x1: f64, x2: f64) -> ExtReal {
    let sum: f64 = (3..=n).map(|k| ((n + k - 2) * (n - k + 1)) as f64 * powi(x1, n - k) * powi(x2, k - 3)).sum();
    ExtReal::new(sum)
}

/// `sum_{k=4}^n (k-3)(n+k-2)(n-k+1) x1^(n-k) x2^(k-4)`; zero for `n < 4`.
pub fn g_second4(n: usize, x1: f64, x2: f64) -> ExtReal {
    let sum: f64 =
        (4..=n).map(|k| ((k - 3) * (n + k - 2) * (n - k + 1)) as f64 * powi(x1, n - k) * powi(x2, k - 4)).sum();
    ExtReal::new(sum)
}

fn h_with(k: usize, n: usize, choose: BigInt) -> Rational {
    let (k, n) = (k as u64, n as u64);
    let num = BigInt::from((n + k - 2) * (n - k + 1));
    let den = BigInt::from(k * (k - 1) * (k - 2)) * choose;
    Rational::from_bigints(num, den).expect("positive denominator")
}

/// `(n+k-2)(n-k+1) / (k(k-1)(k-2) C(n,k))` for `3 <= k <= n`.
pub fn h_kn(k: usize, n: usize) -> Result<Rational> {
    if k < 3 || k > n {
        return Err(Error::invalid("h_kn needs 3 <= k <= n"));
    }
    Ok(h_with(k, n, binomial(n as u64, k as u64)))
}

/// Same as [`h_kn`] with `C(N,k)` in the denominator; `3 <= k <= n <= N`.
pub fn h_tilde_knn(k: usize, n: usize, big_n: usize) -> Result<Rational> {
    if k < 3 || k > n || n > big_n {
        return Err(Error::invalid("h_tilde needs 3 <= k <= n <= N"));
    }
    Ok(h_with(k, n, binomial(big_n as u64, k as u64)))
}

/// `ln(k!)`.
pub fn ln_factorial(k: u64) -> f64 {
    (2..=k).map(|i| Float::ln(i as f64)).sum()
}

/// `zeta(k) = (k!)^(1/k)` with `zeta(0) = 0`.
pub fn zeta(k: u64) -> f64 {
    if k == 0 {
        0.0
    } else {
        Float::exp(ln_factorial(k) / k as f64)
    }
}

/// `C~_l = (e^l l! / l^(l+1/2))^(1/2)`.
pub fn c_tilde(ell: u32) -> f64 {
    let l = ell as f64;
    Float::exp(0.5 * (l + ln_factorial(ell as u64) - (l + 0.5) * Float::ln(l)))
}

/// `(1 - x^(n/2)) / (1 - x)` through `sum_{m<n} x^(m/2) / (1 + sqrt x)`, finite at `x = 1`.
pub fn geometric_ratio(n: usize, x: f64) -> f64 {
    let s = Float::sqrt(x);
    (0..n).map(|m| powi(s, m)).sum::<f64>() / (1.0 + s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn f_first_values() {
        for (x1, x2) in [(0.0, 0.0), (0.3, 0.9), (2.0, 0.5), (1.0, 1.0)] {
            assert_eq!(f_first(2, x1, x2).unwrap(), ExtReal::ONE);
        }
        assert_eq!(f_first(4, 0.0, 1.0).unwrap(), ExtReal::new(3.0));
        assert_eq!(f_first(3, 1.0, 1.0).unwrap(), ExtReal::new(3.0));
        assert!(f_first(1, 0.5, 0.5).is_err());
        assert!(f_first(3, -0.1, 0.5).is_err());
        assert_eq!(f_first_closed(3, 0.5, 0.5), None);
    }

    #[test]
    fn closed_form_matches_sum() {
        for n in 2..=15 {
            for &(x1, x2) in &[(0.1, 0.9), (0.9, 0.1), (0.0, 1.0), (0.5, 0.501), (1.3, 0.2)] {
                let sum = f_first(n, x1, x2).unwrap().value();
                let closed = f_first_closed(n, x1, x2).unwrap();
                assert!(close(sum, closed, 1e-9), "n={n} {x1} {x2}: {sum} vs {closed}");
            }
        }
    }

    #[test]
    fn second_order_shapes() {
        assert_eq!(f_second3(2, 0.4, 0.7), ExtReal::ZERO);
        assert_eq!(g_second4(3, 0.4, 0.7), ExtReal::ZERO);
        assert_eq!(f_second3(3, 0.4, 0.7), ExtReal::new(4.0));
        assert_eq!(g_second4(4, 0.4, 0.7), ExtReal::new(6.0));
        // n = 5, x = (1, 1): 6*3 + 7*2 + 8*1 and 1*7*2 + 2*8*1
        assert_eq!(f_second3(5, 1.0, 1.0), ExtReal::new(40.0));
        assert_eq!(g_second4(5, 1.0, 1.0), ExtReal::new(30.0));
    }

    #[test]
    fn h_values() {
        assert_eq!(h_kn(3, 3).unwrap(), Rational::new(2, 3));
        assert_eq!(h_kn(3, 4).unwrap(), Rational::new(5, 12));
        for n in 3..=12 {
            let expect = Rational::new(2 * n as i64 - 2, (n * (n - 1) * (n - 2)) as i64);
            assert_eq!(h_kn(n, n).unwrap(), expect);
        }
        assert!(h_kn(2, 4).is_err());
        assert!(h_kn(5, 4).is_err());
        assert_eq!(h_tilde_knn(3, 3, 3).unwrap(), h_kn(3, 3).unwrap());
        assert_eq!(h_tilde_knn(3, 3, 5).unwrap(), Rational::new(4, 60));
        assert!(h_tilde_knn(3, 4, 3).is_err());
    }

    #[test]
    fn zeta_and_constants() {
        assert_eq!(zeta(0), 0.0);
        assert!(close(zeta(1), 1.0, 1e-15));
        assert!(close(zeta(3), 6f64.powf(1.0 / 3.0), 1e-14));
        for k in 0..64 {
            assert!(zeta(k) <= zeta(k + 1), "k={k}");
        }
        // C~_1 = sqrt(e)
        assert!(close(c_tilde(1), 1f64.exp().sqrt(), 1e-14));
        assert!(close(c_tilde(3), (3f64.exp() * 6.0 / 3f64.powf(3.5)).sqrt(), 1e-12));
    }

    #[test]
    fn geometric_ratio_limits() {
        for n in 2..10 {
            assert!(close(geometric_ratio(n, 1.0), n as f64 / 2.0, 1e-14));
            let x: f64 = 0.37;
            let direct = (1.0 - x.powf(n as f64 / 2.0)) / (1.0 - x);
            assert!(close(geometric_ratio(n, x), direct, 1e-13));
        }
        assert_eq!(geometric_ratio(3, 0.0), 1.0);
    }
}
