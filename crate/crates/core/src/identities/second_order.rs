use alloc::vec;
use alloc::vec::Vec;

use super::{coeff, IdentityId, IdentityReport, Lab};
use crate::approximants::ptilde2;
use crate::bounds::h_kn;
use crate::combinatorics::{falling_factorial, for_each_injection, ColSet};
use crate::error::{Error, Result};
use crate::matrix::RectMatrix;
use crate::products::{fill_subset_products, picked};
use crate::rational::Rational;
use crate::scalar::Scalar;

fn product<S: Scalar>(z: &RectMatrix<S>, j: &[usize], set: ColSet) -> S {
    let mut p = S::one();
    for r in set.iter() {
        p *= z.get(j[r], r);
    }
    p
}

/// `sum_j y_{j_r j_s r} y_{j_r j_s s} (p_{j,R+t} - z~_t p_{j,R}) = D_1 - D_2`.
pub fn check_difference_lemma<S: Scalar>(
    z: &RectMatrix<S>,
    set_r: ColSet,
    r: usize,
    s: usize,
    t: usize,
) -> Result<IdentityReport<S>> {
    let n = z.cols();
    if n < 3 {
        return Err(Error::invalid("difference lemma needs at least three columns"));
    }
    if set_r.span() > n || set_r.len() + 3 > n {
        return Err(Error::invalid("R must be a subset of the columns with |R| <= n - 3"));
    }
    let distinct = r != s && s != t && r != t;
    if !distinct || [r, s, t].iter().any(|&c| c >= n || set_r.contains(c)) {
        return Err(Error::invalid("r, s, t must be distinct columns outside R"));
    }
    let lab = Lab::new(z)?;
    let mut lhs = S::zero();
    let mut d1 = S::zero();
    let mut d2 = S::zero();
    for_each_injection(lab.rows, n, &[], |j| {
        let w = lab.y(j[r], j[s], r).clone() * lab.y(j[r], j[s], s);
        let p_r = product(z, j, set_r);
        lhs += w.clone() * (product(z, j, set_r.with(t)) - lab.means[t].clone() * &p_r);
        d1 += w.clone() * lab.y(j[t], j[r], t) * &p_r;
        for q in set_r.iter() {
            d2 += w.clone() * lab.y(j[t], j[q], t) * lab.y(j[t], j[q], q) * product(z, j, set_r.without(q));
        }
    });
    let big_n = lab.rows as u64;
    let rhs = d1 * coeff::<S>(2, big_n) - d2 * coeff::<S>(1, 2 * big_n);
    Ok(IdentityReport::equality(IdentityId::DifferenceLemma, lhs, rhs))
}

/// Second-order expansion of `p-bar_n` with triple- and quadruple-difference sums.
pub fn check_second_order<S: Scalar>(z: &RectMatrix<S>) -> Result<IdentityReport<S>> {
    let n = z.cols();
    if n < 2 {
        return Err(Error::invalid("second-order expansion needs at least two columns"));
    }
    let lab = Lab::new(z)?;
    let big_n = lab.rows as u64;
    let lhs = lab.first_order_lhs() + ptilde2(z)?.scale(&Rational::from(falling_factorial(big_n - 2, n as u64 - 2)));

    let size = 1usize << n;
    let full = ColSet::full(n);
    // acc3[R], acc4[R]: the inner sums over ordered tuples in R and injections j
    let mut acc3 = vec![S::zero(); size];
    let mut acc4 = vec![S::zero(); size];
    let mut table = vec![S::one(); size];
    let mut vals = Vec::with_capacity(n);
    let mut pairs = vec![S::zero(); n * n];
    for_each_injection(lab.rows, n, &[], |j| {
        picked(z, j, &mut vals);
        fill_subset_products(&vals, &mut table);
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    pairs[a * n + b] = lab.y(j[a], j[b], a).clone() * lab.y(j[a], j[b], b);
                }
            }
        }
        for r in 0..n {
            for s in (0..n).filter(|&s| s != r) {
                let w_rs = &pairs[r * n + s];
                for t in (0..n).filter(|&t| t != r && t != s) {
                    let base = w_rs.clone() * lab.y(j[r], j[t], t);
                    let core = ColSet::from_indices(&[r, s, t]);
                    for rest in full.difference(core).subsets() {
                        acc3[core.union(rest).0 as usize] += base.clone() * &table[rest.0 as usize];
                    }
                }
            }
        }
        for q in 0..n {
            for r in (0..n).filter(|&r| r != q) {
                let w_qr = &pairs[q * n + r];
                for s in (0..n).filter(|&s| s != q && s != r) {
                    for t in (0..n).filter(|&t| t != q && t != r && t != s) {
                        let base = w_qr.clone() * &pairs[s * n + t];
                        let core = ColSet::from_indices(&[q, r, s, t]);
                        for rest in full.difference(core).subsets() {
                            acc4[core.union(rest).0 as usize] += base.clone() * &table[rest.0 as usize];
                        }
                    }
                }
            }
        }
    });

    let mut m1 = S::zero();
    let mut m2 = S::zero();
    for mask in 0..size {
        let k = ColSet(mask as u64).len();
        let tail = &lab.ptilde[full.difference(ColSet(mask as u64)).0 as usize];
        if k >= 3 {
            let h = S::from_rational(&h_kn(k, n)?);
            m1 += h.clone() * tail * &acc3[mask];
            if k >= 4 {
                m2 += h * tail * &acc4[mask];
            }
        }
    }
    let rhs = m1 * coeff::<S>(1, 2 * big_n * big_n) + m2 * coeff::<S>(1, 8 * big_n * big_n);
    Ok(IdentityReport::equality(IdentityId::SecondOrder, lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn sample(rows: usize, cols: usize, salt: i64) -> RectMatrix<Rational> {
        RectMatrix::from_fn(rows, cols, |j, r| {
            q(((j as i64 * 7 + r as i64 * 4 + salt) % 11) - 5, 1 + (j as i64 + salt) % 4)
        })
        .unwrap()
    }

    #[test]
    fn second_order_on_samples() {
        for rows in 2..=5 {
            for cols in 2..=rows {
                let rep = check_second_order(&sample(rows, cols, 3)).unwrap();
                assert!(rep.holds, "{rows}x{cols}: {:?} vs {:?}", rep.lhs, rep.rhs);
                if cols == 2 {
                    assert_eq!(rep.lhs, q(0, 1));
                }
            }
        }
        let same = RectMatrix::from_fn(4, 3, |_, r| q(r as i64 + 1, 2)).unwrap();
        let rep = check_second_order(&same).unwrap();
        assert_eq!((rep.lhs, rep.rhs), (q(0, 1), q(0, 1)));
    }

    #[test]
    fn difference_lemma_on_samples() {
        assert!(check_difference_lemma(&sample(4, 3, 1), ColSet::EMPTY, 0, 1, 2).unwrap().holds);
        assert!(check_difference_lemma(&sample(5, 4, 2), ColSet::singleton(3), 2, 0, 1).unwrap().holds);
        assert!(check_difference_lemma(&sample(6, 5, 0), ColSet::from_indices(&[0, 4]), 3, 1, 2).unwrap().holds);
    }

    #[test]
    fn preconditions() {
        assert!(check_second_order(&sample(3, 1, 0)).is_err());
        assert!(check_difference_lemma(&sample(3, 2, 0), ColSet::EMPTY, 0, 1, 0).is_err());
        assert!(check_difference_lemma(&sample(4, 3, 0), ColSet::singleton(0), 0, 1, 2).is_err());
        assert!(check_difference_lemma(&sample(4, 3, 0), ColSet::EMPTY, 0, 0, 2).is_err());
    }
}
