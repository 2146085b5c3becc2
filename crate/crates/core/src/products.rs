//! Injection products `p_{j,R}` and their averages.

use alloc::vec;
use alloc::vec::Vec;

use crate::combinatorics::{for_each_injection, ColSet};
use crate::error::{Error, Result};
use crate::matrix::RectMatrix;
use crate::scalar::Scalar;

/// `p_{j,R} = prod_{r in R} z_{j_r, r}`, with `j[r]` the row of column `r`.
pub fn injection_product<S: Scalar>(z: &RectMatrix<S>, j: &[usize], set: ColSet) -> Result<S> {
    if set.span() > j.len() {
        return Err(Error::invalid("column set is not covered by the injection"));
    }
    if set.span() > z.cols() {
        return Err(Error::IndexOutOfRange { what: "column", index: set.span() - 1, bound: z.cols() });
    }
    let mut acc = S::one();
    for r in set.iter() {
        acc *= z.try_get(j[r], r)?;
    }
    Ok(acc)
}

/// `P[mask] = prod_{i in mask} values[i]` for every mask.
pub fn subset_products<S: Scalar>(values: &[S]) -> Vec<S> {
    let mut table = vec![S::one(); 1 << values.len()];
    fill_subset_products(values, &mut table);
    table
}

/// In-place variant of [`subset_products`]; `table.len()` must be `2^values.len()`.
pub(crate) fn fill_subset_products<S: Scalar>(values: &[S], table: &mut [S]) {
    debug_assert_eq!(table.len(), 1 << values.len());
    table[0] = S::one();
    for mask in 1..table.len() {
        let low = mask.trailing_zeros() as usize;
        table[mask] = table[mask & (mask - 1)].clone() * &values[low];
    }
}

/// The entries `z_{j_r, r}` picked out by an injection.
#[inline]
pub(crate) fn picked<S: Scalar>(z: &RectMatrix<S>, j: &[usize], out: &mut Vec<S>) {
    out.clear();
    out.extend(j.iter().enumerate().map(|(r, &row)| z.get(row, r).clone()));
}

fn check_set(z: &RectMatrix<impl Scalar>, set: ColSet) -> Result<()> {
    if set.span() > z.cols() {
        return Err(Error::IndexOutOfRange { what: "column", index: set.span() - 1, bound: z.cols() });
    }
    Ok(())
}

/// `p-bar_R`: sum of `p_{j,R}` over all injections `j`.
pub fn pbar<S: Scalar>(z: &RectMatrix<S>, set: ColSet) -> Result<S> {
    check_set(z, set)?;
    let mut sum = S::zero();
    for_each_injection(z.rows(), z.cols(), &[], |j| {
        let mut p = S::one();
        for r in set.iter() {
            p *= z.get(j[r], r);
        }
        sum += p;
    });
    Ok(sum)
}

/// `p-bar_R` for every `R`, indexed by mask.
pub fn pbar_table<S: Scalar>(z: &RectMatrix<S>) -> Vec<S> {
    let n = z.cols();
    let mut totals = vec![S::zero(); 1 << n];
    let mut table = vec![S::one(); 1 << n];
    let mut vals = Vec::with_capacity(n);
    for_each_injection(z.rows(), n, &[], |j| {
        picked(z, j, &mut vals);
        fill_subset_products(&vals, &mut table);
        for (t, p) in totals.iter_mut().zip(&table) {
            *t += p;
        }
    });
    totals
}

/// `p~_R = prod_{r in R} z~_r` from the column means.
pub fn ptilde<S: Scalar>(means: &[S], set: ColSet) -> Result<S> {
    if set.span() > means.len() {
        return Err(Error::IndexOutOfRange { what: "column", index: set.span() - 1, bound: means.len() });
    }
    let mut acc = S::one();
    for r in set.iter() {
        acc *= &means[r];
    }
    Ok(acc)
}
