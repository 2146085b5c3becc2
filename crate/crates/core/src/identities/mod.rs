//! Both-sides checkers for the exact expansions of `p-bar` around products of
//! column means.
//!
//! Every checker evaluates the left and right sides independently, the right
//! side as the literal multi-sum over injections. In the rational domain the
//! comparison is exact.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::combinatorics::{check_budget, injection_count};
use crate::error::Result;
use crate::ext_real::ExtReal;
use crate::matrix::{PairDiffs, RectMatrix};
use crate::products::subset_products;
use crate::rational::Rational;
use crate::scalar::{Scalar, Tolerance};

mod classic;
mod esp;
mod first_order;
mod second_order;
pub mod suite;

pub use classic::{check_monotone_column_signs, check_ryser_rectangular};
pub use esp::{check_dougall_esp, check_esp_expansion, check_esp_second_order};
pub use first_order::{check_chain_step, check_first_order, check_product_transfer, FirstOrderVariant};
pub use second_order::{check_difference_lemma, check_second_order};

/// Largest injection count the lab will enumerate.
pub const MAX_INJECTIONS: u128 = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    ProductTransfer,
    DougallEsp,
    ChainStep,
    FirstOrderChain,
    FirstOrderSymmetric,
    FirstOrderGrouped,
    EspExpansion,
    DifferenceLemma,
    SecondOrder,
    EspSecondOrder,
    RyserRectangular,
    MonotoneColumnSigns,
}

impl IdentityId {
    pub const ALL: [IdentityId; 12] = [
        IdentityId::ProductTransfer,
        IdentityId::DougallEsp,
        IdentityId::ChainStep,
        IdentityId::FirstOrderChain,
        IdentityId::FirstOrderSymmetric,
        IdentityId::FirstOrderGrouped,
        IdentityId::EspExpansion,
        IdentityId::DifferenceLemma,
        IdentityId::SecondOrder,
        IdentityId::EspSecondOrder,
        IdentityId::RyserRectangular,
        IdentityId::MonotoneColumnSigns,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::ProductTransfer => "product_transfer",
            IdentityId::DougallEsp => "dougall_esp",
            IdentityId::ChainStep => "chain_step",
            IdentityId::FirstOrderChain => "first_order_chain",
            IdentityId::FirstOrderSymmetric => "first_order_symmetric",
            IdentityId::FirstOrderGrouped => "first_order_grouped",
            IdentityId::EspExpansion => "esp_expansion",
            IdentityId::DifferenceLemma => "difference_lemma",
            IdentityId::SecondOrder => "second_order",
            IdentityId::EspSecondOrder => "esp_second_order",
            IdentityId::RyserRectangular => "ryser_rectangular",
            IdentityId::MonotoneColumnSigns => "monotone_column_signs",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How the two sides are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    /// `lhs <= rhs` (plus every auxiliary inequality the checker tests).
    LessEq,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport<S> {
    pub id: IdentityId,
    pub lhs: S,
    pub rhs: S,
    pub relation: Relation,
    pub holds: bool,
    /// `|lhs - rhs|`.
    pub discrepancy: ExtReal,
    pub tolerance: Tolerance,
}

impl<S: Scalar> IdentityReport<S> {
    pub(crate) fn equality(id: IdentityId, lhs: S, rhs: S) -> Self {
        let tolerance = S::DEFAULT_TOLERANCE;
        let holds = lhs.close_to(&rhs, tolerance);
        let discrepancy = ExtReal::new((lhs.clone() - &rhs).modulus());
        IdentityReport { id, lhs, rhs, relation: Relation::Equal, holds, discrepancy, tolerance }
    }

    /// Whether the identity held; an alias for `holds` on equalities.
    pub fn equal(&self) -> bool {
        self.relation == Relation::Equal && self.holds
    }
}

/// Rational coefficient `num / den` embedded in `S`.
pub(crate) fn coeff<S: Scalar>(num: impl Into<BigInt>, den: impl Into<BigInt>) -> S {
    S::from_rational(&Rational::from_bigints(num.into(), den.into()).expect("nonzero denominator"))
}

/// Per-matrix data shared by the checkers.
pub(crate) struct Lab<'a, S> {
    pub z: &'a RectMatrix<S>,
    pub rows: usize,
    pub cols: usize,
    pub means: Vec<S>,
    /// `p~_R` by mask.
    pub ptilde: Vec<S>,
    pub y: PairDiffs<S>,
}

impl<'a, S: Scalar> Lab<'a, S> {
    pub fn new(z: &'a RectMatrix<S>) -> Result<Self> {
        check_budget("identity enumeration", injection_count(z.rows(), z.cols()), MAX_INJECTIONS)?;
        let means = z.column_means();
        let ptilde = subset_products(&means);
        Ok(Lab { z, rows: z.rows(), cols: z.cols(), means, ptilde, y: PairDiffs::new(z) })
    }

    #[inline]
    pub fn y(&self, u: usize, v: usize, r: usize) -> &S {
        self.y.get(u, v, r)
    }

    /// `p-bar_n - N!/(N-n)! p~_n`.
    pub fn first_order_lhs(&self) -> S {
        let full = (1usize << self.cols) - 1;
        let pbar = crate::products::pbar(self.z, crate::combinatorics::ColSet(full as u64)).expect("full set");
        let count = crate::combinatorics::falling_factorial(self.rows as u64, self.cols as u64);
        pbar - S::from_rational(&Rational::from(count)) * &self.ptilde[full]
    }
}
