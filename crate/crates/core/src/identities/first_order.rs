use alloc::vec;
use alloc::vec::Vec;

use super::{coeff, IdentityId, IdentityReport, Lab};
use crate::combinatorics::{binomial, for_each_injection, ColSet};
use crate::error::{Error, Result};
use crate::matrix::RectMatrix;
use crate::products::{fill_subset_products, pbar, picked};
use crate::scalar::Scalar;

/// Which right-hand side of the first-order expansion to evaluate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FirstOrderVariant {
    /// Sum along the maximal chain `R_k = {order[0], .., order[k-1]}`.
    Chain(Vec<usize>),
    /// Sum over all subsets and ordered pairs inside them.
    Symmetric,
    /// Grouped by the row pair `(u, v)` and column pair `(r, s)`.
    Grouped,
}

fn check_cols(z: &RectMatrix<impl Scalar>, set: ColSet, what: &str) -> Result<()> {
    if set.span() > z.cols() {
        return Err(Error::invalid(alloc::format!("{what} has a column outside 0..{}", z.cols())));
    }
    Ok(())
}

fn product<S: Scalar>(z: &RectMatrix<S>, j: &[usize], set: ColSet) -> S {
    let mut p = S::one();
    for r in set.iter() {
        p *= z.get(j[r], r);
    }
    p
}

/// `p-bar_{R+r} p-bar_S - p-bar_R p-bar_{S+r}` against the half-sum over
/// `s`, row pairs `(u, v)` and injections pinned at `j_r = u, j_s = v`, `k_r = u`.
pub fn check_product_transfer<S: Scalar>(
    z: &RectMatrix<S>,
    set_r: ColSet,
    set_s: ColSet,
    r: usize,
) -> Result<IdentityReport<S>> {
    check_cols(z, set_r, "R")?;
    check_cols(z, set_s, "S")?;
    if r >= z.cols() || set_r.contains(r) || set_s.contains(r) {
        return Err(Error::invalid("r must be a column outside R and S"));
    }
    let lab = Lab::new(z)?;
    let lhs = pbar(z, set_r.with(r))? * pbar(z, set_s)? - pbar(z, set_r)? * pbar(z, set_s.with(r))?;

    let (big_n, n) = (lab.rows, lab.cols);
    let mut rhs = S::zero();
    for s in (0..n).filter(|&s| s != r) {
        let in_s = set_s.contains(s);
        let in_r = set_r.contains(s);
        if !in_s && !in_r {
            continue;
        }
        for u in 0..big_n {
            // products of the k-injections pinned at k_r = u
            let mut k_terms: Vec<(S, S)> = Vec::new();
            for_each_injection(big_n, n, &[(r, u)], |k| {
                k_terms.push((product(z, k, set_r), product(z, k, set_s)));
            });
            for v in (0..big_n).filter(|&v| v != u) {
                let w = lab.y(u, v, r).clone() * lab.y(u, v, s);
                let mut inner = S::zero();
                for_each_injection(big_n, n, &[(r, u), (s, v)], |j| {
                    let j_s = if in_s { product(z, j, set_s.without(s)) } else { S::zero() };
                    let j_r = if in_r { product(z, j, set_r.without(s)) } else { S::zero() };
                    for (k_r, k_s) in &k_terms {
                        if in_s {
                            inner += j_s.clone() * k_r;
                        }
                        if in_r {
                            inner -= j_r.clone() * k_s;
                        }
                    }
                });
                rhs += w * inner;
            }
        }
    }
    rhs *= coeff::<S>(1, 2);
    Ok(IdentityReport::equality(IdentityId::ProductTransfer, lhs, rhs))
}

/// `p-bar_{R+r} - z~_r p-bar_R` against
/// `-(1/2N) sum_{s in R} sum_j y_{j_r j_s r} y_{j_r j_s s} p_{j, R-s}`.
pub fn check_chain_step<S: Scalar>(z: &RectMatrix<S>, set_r: ColSet, r: usize) -> Result<IdentityReport<S>> {
    check_cols(z, set_r, "R")?;
    if r >= z.cols() || set_r.contains(r) {
        return Err(Error::invalid("r must be a column outside R"));
    }
    let lab = Lab::new(z)?;
    let lhs = pbar(z, set_r.with(r))? - lab.means[r].clone() * pbar(z, set_r)?;
    let mut sum = S::zero();
    for s in set_r.iter() {
        for_each_injection(lab.rows, lab.cols, &[], |j| {
            sum += lab.y(j[r], j[s], r).clone() * lab.y(j[r], j[s], s) * product(z, j, set_r.without(s));
        });
    }
    let rhs = -(sum * coeff::<S>(1, 2 * lab.rows as u64));
    Ok(IdentityReport::equality(IdentityId::ChainStep, lhs, rhs))
}

/// `p-bar_n - N!/(N-n)! p~_n` against one of the three first-order expansions.
pub fn check_first_order<S: Scalar>(z: &RectMatrix<S>, variant: &FirstOrderVariant) -> Result<IdentityReport<S>> {
    let lab = Lab::new(z)?;
    let (id, rhs) = match variant {
        FirstOrderVariant::Chain(order) => {
            let mut seen = vec![false; lab.cols];
            if order.len() != lab.cols || order.iter().any(|&r| r >= lab.cols || core::mem::replace(&mut seen[r], true))
            {
                return Err(Error::invalid("chain order must be a permutation of the columns"));
            }
            (IdentityId::FirstOrderChain, chain_rhs(&lab, order))
        }
        FirstOrderVariant::Symmetric => (IdentityId::FirstOrderSymmetric, symmetric_rhs(&lab)),
        FirstOrderVariant::Grouped => (IdentityId::FirstOrderGrouped, grouped_rhs(&lab)),
    };
    Ok(IdentityReport::equality(id, lab.first_order_lhs(), rhs))
}

fn chain_rhs<S: Scalar>(lab: &Lab<'_, S>, order: &[usize]) -> S {
    let n = lab.cols;
    let full = ColSet::full(n);
    let mut total = S::zero();
    for k in 2..=n {
        let rk = order[k - 1];
        let prev = ColSet::from_indices(&order[..k - 1]);
        let tail = &lab.ptilde[full.difference(prev.with(rk)).0 as usize];
        for s in prev.iter() {
            let mut sum = S::zero();
            for_each_injection(lab.rows, n, &[], |j| {
                sum += lab.y(j[rk], j[s], rk).clone() * lab.y(j[rk], j[s], s) * product(lab.z, j, prev.without(s));
            });
            total += sum * tail;
        }
    }
    -(total * coeff::<S>(1, 2 * lab.rows as u64))
}

fn symmetric_rhs<S: Scalar>(lab: &Lab<'_, S>) -> S {
    let n = lab.cols;
    let size = 1usize << n;
    // acc[R] = sum_{(r,s) in R^2, r != s} sum_j y y p_{j, R-{r,s}}
    let mut acc = vec![S::zero(); size];
    let mut table = vec![S::one(); size];
    let mut vals = Vec::with_capacity(n);
    for_each_injection(lab.rows, n, &[], |j| {
        picked(lab.z, j, &mut vals);
        fill_subset_products(&vals, &mut table);
        for (mask, slot) in acc.iter_mut().enumerate() {
            let set = ColSet(mask as u64);
            if set.len() < 2 {
                continue;
            }
            for r in set.iter() {
                for s in set.iter().filter(|&s| s != r) {
                    let rest = set.without(r).without(s).0 as usize;
                    *slot += lab.y(j[r], j[s], r).clone() * lab.y(j[r], j[s], s) * &table[rest];
                }
            }
        }
    });
    let full = ColSet::full(n);
    let mut total = S::zero();
    for (mask, a) in acc.into_iter().enumerate() {
        let k = ColSet(mask as u64).len();
        if k < 2 {
            continue;
        }
        let c = coeff::<S>(1, 2 * lab.rows as u64 * k as u64 * binomial(n as u64, k as u64));
        total += c * a * &lab.ptilde[full.difference(ColSet(mask as u64)).0 as usize];
    }
    -total
}

fn grouped_rhs<S: Scalar>(lab: &Lab<'_, S>) -> S {
    let (big_n, n) = (lab.rows, lab.cols);
    let size = 1usize << n;
    let full = ColSet::full(n);
    let mut table = vec![S::one(); size];
    let mut vals = Vec::with_capacity(n);
    let mut total = S::zero();
    for u in 0..big_n {
        for v in (0..big_n).filter(|&v| v != u) {
            for r in 0..n {
                for s in (0..n).filter(|&s| s != r) {
                    let w = lab.y(u, v, r).clone() * lab.y(u, v, s);
                    let rest = full.without(r).without(s);
                    // sum over injections of n-{r,s} into N-{u,v} of p_{j,R}, for every R in rest
                    let mut pj = vec![S::zero(); size];
                    for_each_injection(big_n, n, &[(r, u), (s, v)], |j| {
                        picked(lab.z, j, &mut vals);
                        fill_subset_products(&vals, &mut table);
                        for sub in rest.subsets() {
                            pj[sub.0 as usize] += &table[sub.0 as usize];
                        }
                    });
                    let mut inner = S::zero();
                    for sub in rest.subsets() {
                        let k = sub.len() + 2;
                        let c = coeff::<S>(1, 2 * big_n as u64 * k as u64 * binomial(n as u64, k as u64));
                        let tail = &lab.ptilde[rest.difference(sub).0 as usize];
                        inner += c * tail * &pj[sub.0 as usize];
                    }
                    total += w * inner;
                }
            }
        }
    }
    -total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;
    use alloc::vec;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn sample(rows: usize, cols: usize, salt: i64) -> RectMatrix<Rational> {
        RectMatrix::from_fn(rows, cols, |j, r| {
            q(((j as i64 * 5 + r as i64 * 3 + salt) % 9) - 4, 1 + (r as i64 + salt) % 3)
        })
        .unwrap()
    }

    #[test]
    fn derangement_two_by_two() {
        let z = RectMatrix::from_rows(vec![vec![q(0, 1), q(1, 1)], vec![q(1, 1), q(0, 1)]]).unwrap();
        for variant in [FirstOrderVariant::Chain(vec![0, 1]), FirstOrderVariant::Symmetric, FirstOrderVariant::Grouped]
        {
            let rep = check_first_order(&z, &variant).unwrap();
            assert_eq!(rep.lhs, q(1, 2));
            assert_eq!(rep.rhs, q(1, 2));
            assert!(rep.equal());
        }
    }

    #[test]
    fn variants_agree_on_samples() {
        for rows in 1..=5 {
            for cols in 1..=rows {
                let z = sample(rows, cols, rows as i64 + cols as i64);
                let sym = check_first_order(&z, &FirstOrderVariant::Symmetric).unwrap();
                let grp = check_first_order(&z, &FirstOrderVariant::Grouped).unwrap();
                let mut order: Vec<usize> = (0..cols).rev().collect();
                order.rotate_left(cols / 2);
                let chain = check_first_order(&z, &FirstOrderVariant::Chain(order)).unwrap();
                assert!(sym.holds && grp.holds && chain.holds, "{rows}x{cols}");
                assert_eq!(sym.rhs, grp.rhs);
                assert_eq!(sym.rhs, chain.rhs);
            }
        }
    }

    #[test]
    fn transfer_and_chain_step() {
        let z = sample(4, 3, 2);
        let rep = check_product_transfer(&z, ColSet::singleton(0), ColSet::singleton(1), 2).unwrap();
        assert!(rep.holds);
        let trivial = check_product_transfer(&z, ColSet::EMPTY, ColSet::EMPTY, 1).unwrap();
        assert_eq!((trivial.lhs, trivial.rhs), (q(0, 1), q(0, 1)));
        let rep = check_chain_step(&z, ColSet::from_indices(&[0, 1]), 2).unwrap();
        assert!(rep.holds);
        let rep = check_chain_step(&z, ColSet::EMPTY, 2).unwrap();
        assert_eq!((rep.lhs, rep.rhs), (q(0, 1), q(0, 1)));
        let overlap =
            check_product_transfer(&sample(5, 4, 1), ColSet::from_indices(&[0, 1]), ColSet::from_indices(&[1, 2]), 3);
        assert!(overlap.unwrap().holds);
    }

    #[test]
    fn precondition_errors() {
        let z = sample(4, 3, 0);
        assert!(check_product_transfer(&z, ColSet::singleton(2), ColSet::EMPTY, 2).is_err());
        assert!(check_chain_step(&z, ColSet::singleton(1), 1).is_err());
        assert!(check_chain_step(&z, ColSet::singleton(5), 1).is_err());
        assert!(check_first_order(&z, &FirstOrderVariant::Chain(vec![0, 0, 1])).is_err());
        assert!(check_first_order(&z, &FirstOrderVariant::Chain(vec![0, 1])).is_err());
    }
}
