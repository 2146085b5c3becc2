use super::{IdentityId, IdentityReport, Relation};
use crate::combinatorics::{falling_factorial, ColSet};
use crate::error::{Error, Result};
use crate::ext_real::ExtReal;
use crate::matrix::RectMatrix;
use crate::permanent::{permanent_naive, permanent_ryser, DEFAULT_BUDGET};
use crate::products::pbar_table;
use crate::rational::Rational;
use crate::scalar::{Scalar, Tolerance};

/// Rectangular Ryser sum against the injection sum.
pub fn check_ryser_rectangular<S: Scalar>(z: &RectMatrix<S>) -> Result<IdentityReport<S>> {
    let lhs = permanent_ryser(z);
    let rhs = permanent_naive(z, DEFAULT_BUDGET)?;
    Ok(IdentityReport::equality(IdentityId::RyserRectangular, lhs, rhs))
}

/// For a nonnegative matrix with decreasing columns, checks
/// `p-bar_{R+r} <= z~_r p-bar_R` for every `R` and `r` outside it, and
/// `p-bar_n <= N!/(N-n)! p~_n` (the reported sides).
pub fn check_monotone_column_signs(z: &RectMatrix<Rational>) -> Result<IdentityReport<Rational>> {
    let (big_n, n) = (z.rows(), z.cols());
    for r in 0..n {
        for j in 0..big_n {
            if z.get(j, r).is_negative() {
                return Err(Error::invalid("matrix has a negative entry"));
            }
            if j + 1 < big_n && z.get(j, r) < z.get(j + 1, r) {
                return Err(Error::invalid("matrix columns are not decreasing"));
            }
        }
    }
    let pbar = pbar_table(z);
    let means = z.column_means();
    let full = ColSet::full(n);
    let mut holds = true;
    for set in full.subsets() {
        for r in full.difference(set).iter() {
            holds &= pbar[set.with(r).0 as usize] <= means[r].clone() * &pbar[set.0 as usize];
        }
    }
    let lhs = pbar[full.0 as usize].clone();
    let product: Rational = means.iter().product();
    let rhs = Rational::from(falling_factorial(big_n as u64, n as u64)) * product;
    holds &= lhs <= rhs;
    let discrepancy = ExtReal::new((lhs.clone() - &rhs).modulus());
    Ok(IdentityReport {
        id: IdentityId::MonotoneColumnSigns,
        lhs,
        rhs,
        relation: Relation::LessEq,
        holds,
        discrepancy,
        tolerance: Tolerance::EXACT,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn ryser_examples() {
        let z = RectMatrix::from_rows(vec![vec![q(1), q(2)], vec![q(3), q(4)]]).unwrap();
        let rep = check_ryser_rectangular(&z).unwrap();
        assert_eq!((rep.lhs.clone(), rep.rhs.clone()), (q(10), q(10)));
        let d = RectMatrix::from_fn(4, 4, |j, r| q((j != r) as i64)).unwrap();
        let rep = check_ryser_rectangular(&d).unwrap();
        assert_eq!(rep.lhs, q(9));
        assert!(rep.holds);
    }

    #[test]
    fn monotone_examples() {
        let z = RectMatrix::from_rows(vec![vec![q(2), q(2)], vec![q(1), q(1)], vec![q(0), q(0)]]).unwrap();
        let rep = check_monotone_column_signs(&z).unwrap();
        assert_eq!(rep.lhs, q(4));
        assert_eq!(rep.rhs, q(6));
        assert!(rep.holds);
        let flat = RectMatrix::from_fn(3, 2, |_, _| q(2)).unwrap();
        let rep = check_monotone_column_signs(&flat).unwrap();
        assert_eq!(rep.lhs, rep.rhs);
        assert!(rep.holds);
        let bad = RectMatrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]).unwrap();
        assert!(check_monotone_column_signs(&bad).is_err());
        let neg = RectMatrix::from_rows(vec![vec![q(1)], vec![q(-1)]]).unwrap();
        assert!(check_monotone_column_signs(&neg).is_err());
    }
}
