//! Injections, subsets and exact counting helpers.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// A set of column indices below 64, stored as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColSet(pub u64);

impl ColSet {
    pub const EMPTY: ColSet = ColSet(0);

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= 64, "column sets hold at most 64 indices");
        if n == 64 {
            ColSet(u64::MAX)
        } else {
            ColSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        ColSet(1u64 << i)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        indices.iter().fold(ColSet::EMPTY, |s, &i| s.with(i))
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        ColSet(self.0 | 1u64 << i)
    }

    #[inline]
    pub fn without(self, i: usize) -> Self {
        ColSet(self.0 & !(1u64 << i))
    }

    pub fn union(self, other: Self) -> Self {
        ColSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ColSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ColSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// One past the largest member, 0 for the empty set.
    pub fn span(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, in increasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = ColSet> {
        let full = self.0;
        let mut next = Some(0u64);
        core::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(ColSet(cur))
        })
    }
}

/// Injections `{0..n} -> {0..N}` in lexicographic order, as `j[r]`.
#[derive(Clone, Debug)]
pub struct Injections {
    rows: usize,
    current: Vec<usize>,
    used: Vec<bool>,
    started: bool,
    done: bool,
}

impl Injections {
    pub fn new(rows: usize, cols: usize) -> Self {
        let done = cols > rows;
        Injections {
            rows,
            current: (0..cols).collect(),
            used: (0..rows).map(|j| j < cols).collect(),
            started: false,
            done,
        }
    }

    /// Advance in place; returns the next injection or `None` when exhausted.
    pub fn next_ref(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.current);
        }
        let n = self.current.len();
        let mut pos = n;
        while pos > 0 {
            pos -= 1;
            let old = self.current[pos];
            self.used[old] = false;
            if let Some(nv) = (old + 1..self.rows).find(|&v| !self.used[v]) {
                self.current[pos] = nv;
                self.used[nv] = true;
                let mut fill = 0;
                for slot in pos + 1..n {
                    while self.used[fill] {
                        fill += 1;
                    }
                    self.current[slot] = fill;
                    self.used[fill] = true;
                }
                return Some(&self.current);
            }
        }
        self.done = true;
        None
    }
}

impl Iterator for Injections {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        self.next_ref().map(<[usize]>::to_vec)
    }
}

/// `k`-subsets of `{0..n}` in lexicographic order.
#[derive(Clone, Debug)]
pub struct Subsets {
    n: usize,
    current: Vec<usize>,
    started: bool,
    done: bool,
}

impl Subsets {
    pub fn new(n: usize, k: usize) -> Self {
        Subsets { n, current: (0..k).collect(), started: false, done: k > n }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.current.clone());
        }
        let k = self.current.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.current[i] < self.n - k + i {
                self.current[i] += 1;
                for t in i + 1..k {
                    self.current[t] = self.current[t - 1] + 1;
                }
                return Some(self.current.clone());
            }
        }
        self.done = true;
        None
    }
}

/// Visit, in lexicographic order, every injection `j: {0..cols} -> {0..rows}`
/// with `j[r] = u` for each `(r, u)` in `fixed`.
pub fn for_each_injection(rows: usize, cols: usize, fixed: &[(usize, usize)], mut f: impl FnMut(&[usize])) {
    assert!(rows <= 64, "at most 64 rows");
    let mut pinned: Vec<Option<usize>> = vec![None; cols];
    let mut used = 0u64;
    for &(r, u) in fixed {
        assert!(r < cols && u < rows, "fixed pair out of range");
        if pinned[r].is_some_and(|p| p != u) || (pinned[r].is_none() && used >> u & 1 == 1) {
            return;
        }
        pinned[r] = Some(u);
        used |= 1 << u;
    }
    let mut current = vec![0usize; cols];
    fn rec(
        pos: usize,
        rows: usize,
        pinned: &[Option<usize>],
        used: u64,
        current: &mut [usize],
        f: &mut dyn FnMut(&[usize]),
    ) {
        if pos == current.len() {
            f(current);
            return;
        }
        if let Some(u) = pinned[pos] {
            current[pos] = u;
            rec(pos + 1, rows, pinned, used, current, f);
            return;
        }
        for u in 0..rows {
            if used >> u & 1 == 0 {
                current[pos] = u;
                rec(pos + 1, rows, pinned, used | 1 << u, current, f);
            }
        }
    }
    rec(0, rows, &pinned, used, &mut current, &mut f);
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `n (n-1) ... (n-k+1)`; zero when `k > n`.
pub fn falling_factorial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    (n - k + 1..=n).fold(BigInt::one(), |acc, v| acc * v)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `N! / (N-n)!` as a saturating `u128`.
pub fn injection_count(rows: usize, cols: usize) -> u128 {
    if cols > rows {
        return 0;
    }
    let mut acc: u128 = 1;
    for v in rows - cols + 1..=rows {
        acc = acc.saturating_mul(v as u128);
    }
    acc
}

/// `C(n, k)` as a saturating `u128`.
pub fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Reject work beyond `budget` terms.
pub(crate) fn check_budget(what: &'static str, required: u128, budget: u128) -> Result<()> {
    if required > budget {
        Err(Error::BudgetExceeded { what, required, budget })
    } else {
        Ok(())
    }
}
