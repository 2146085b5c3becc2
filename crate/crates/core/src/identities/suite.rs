//! Randomized driver running every applicable checker on seeded matrices.

use alloc::vec::Vec;

use super::{
    check_chain_step, check_difference_lemma, check_dougall_esp, check_esp_expansion, check_esp_second_order,
    check_first_order, check_monotone_column_signs, check_product_transfer, check_ryser_rectangular,
    check_second_order, FirstOrderVariant, IdentityId, IdentityReport,
};
use crate::combinatorics::ColSet;
use crate::error::{Error, Result};
use crate::ext_real::ExtReal;
use crate::families::{
    decreasing_columns, derive_seed, random_rational, random_unit_disc, SplitMix64, DEFAULT_DENOMINATOR,
};
use crate::matrix::RectMatrix;
use crate::scalar::{Scalar, ScalarDomain};

/// Largest `N` the suite accepts.
pub const MAX_SUITE_ROWS: usize = 7;

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub domain: ScalarDomain,
    pub rows: usize,
    pub cols: usize,
    pub trials: usize,
    pub seed: u64,
    /// Random chain orders per trial, on top of the identity order.
    pub chain_orders: usize,
}

impl SuiteConfig {
    pub fn new(domain: ScalarDomain, rows: usize, cols: usize, trials: usize, seed: u64) -> Self {
        SuiteConfig { domain, rows, cols, trials, seed, chain_orders: 3 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityTally {
    pub id: IdentityId,
    pub passed: usize,
    pub failed: usize,
    pub max_discrepancy: ExtReal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteFailure {
    pub id: IdentityId,
    pub trial: usize,
    /// Seed the failing trial's matrix was drawn from.
    pub seed: u64,
    pub discrepancy: ExtReal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOutcome {
    /// In [`IdentityId::ALL`] order; identities that never ran are absent.
    pub tallies: Vec<IdentityTally>,
    pub failures: Vec<SuiteFailure>,
}

impl SuiteOutcome {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn tally(&self, id: IdentityId) -> Option<&IdentityTally> {
        self.tallies.iter().find(|t| t.id == id)
    }
}

struct Recorder {
    tallies: Vec<IdentityTally>,
    failures: Vec<SuiteFailure>,
    trial: usize,
    seed: u64,
}

impl Recorder {
    fn record<S: Scalar>(&mut self, rep: IdentityReport<S>) {
        let idx = IdentityId::ALL.iter().position(|&id| id == rep.id).expect("known identity");
        let t = &mut self.tallies[idx];
        t.max_discrepancy = t.max_discrepancy.max(rep.discrepancy);
        if rep.holds {
            t.passed += 1;
        } else {
            t.failed += 1;
            self.failures.push(SuiteFailure {
                id: rep.id,
                trial: self.trial,
                seed: self.seed,
                discrepancy: rep.discrepancy,
            });
        }
    }
}

fn random_subset(rng: &mut SplitMix64, pool: ColSet) -> ColSet {
    let mut set = ColSet::EMPTY;
    for c in pool.iter() {
        if rng.next_u64() >> 63 == 1 {
            set = set.with(c);
        }
    }
    set
}

fn shuffled(rng: &mut SplitMix64, n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.below(i as u64 + 1) as usize);
    }
    order
}

fn run_matrix<S: Scalar>(z: &RectMatrix<S>, rng: &mut SplitMix64, chains: usize, rec: &mut Recorder) -> Result<()> {
    let (big_n, n) = (z.rows(), z.cols());
    let full = ColSet::full(n);

    let r = rng.below(n as u64) as usize;
    let rest = full.without(r);
    let (set_r, set_s) = (random_subset(rng, rest), random_subset(rng, rest));
    rec.record(check_product_transfer(z, set_r, set_s, r)?);
    rec.record(check_chain_step(z, set_r, r)?);

    let mut orders = Vec::with_capacity(chains + 1);
    orders.push((0..n).collect::<Vec<_>>());
    for _ in 0..chains {
        orders.push(shuffled(rng, n));
    }
    for order in orders {
        rec.record(check_first_order(z, &FirstOrderVariant::Chain(order))?);
    }
    rec.record(check_first_order(z, &FirstOrderVariant::Symmetric)?);
    rec.record(check_first_order(z, &FirstOrderVariant::Grouped)?);

    let values = z.column(0);
    let a = rng.below(big_n as u64 + 1) as usize;
    let b = rng.below(big_n as u64 + 1) as usize;
    rec.record(check_dougall_esp(&values, a, b)?);
    rec.record(check_esp_expansion(&values, n)?);
    if n >= 2 {
        rec.record(check_esp_second_order(&values, n)?);
        rec.record(check_second_order(z)?);
    }
    if n >= 3 {
        let order = shuffled(rng, n);
        let (r, s, t) = (order[0], order[1], order[2]);
        let set_r = random_subset(rng, full.difference(ColSet::from_indices(&[r, s, t])));
        rec.record(check_difference_lemma(z, set_r, r, s, t)?);
    }
    rec.record(check_ryser_rectangular(z)?);
    Ok(())
}

/// Runs every checker applicable to `N x n` on `trials` seeded matrices.
///
/// Trial `i` draws its matrix from `derive_seed(seed, i)`; the checkers'
/// random choices (column sets, chain orders, ESP degrees) come from a second
/// stream derived from that seed. In the rational domain each trial also checks
/// the sign inequality on a nonnegative matrix with decreasing columns.
pub fn run_identity_suite(config: &SuiteConfig) -> Result<SuiteOutcome> {
    let (big_n, n) = (config.rows, config.cols);
    if n == 0 || n > big_n || big_n > MAX_SUITE_ROWS {
        return Err(Error::invalid(alloc::format!("identity suite needs 1 <= n <= N <= {MAX_SUITE_ROWS}")));
    }
    let tallies = IdentityId::ALL
        .iter()
        .map(|&id| IdentityTally { id, passed: 0, failed: 0, max_discrepancy: ExtReal::ZERO })
        .collect();
    let mut rec = Recorder { tallies, failures: Vec::new(), trial: 0, seed: 0 };
    for trial in 0..config.trials {
        let seed = derive_seed(config.seed, trial as u64);
        rec.trial = trial;
        rec.seed = seed;
        let mut rng = SplitMix64::new(derive_seed(seed, 1));
        match config.domain {
            ScalarDomain::ExactRational => {
                let z = random_rational(big_n, n, seed, DEFAULT_DENOMINATOR)?;
                run_matrix(&z, &mut rng, config.chain_orders, &mut rec)?;
                let mono = decreasing_columns(big_n, n, derive_seed(seed, 2), DEFAULT_DENOMINATOR)?;
                rec.record(check_monotone_column_signs(&mono)?);
            }
            ScalarDomain::ComplexFloat64 => {
                let z = random_unit_disc(big_n, n, seed)?;
                run_matrix(&z, &mut rng, config.chain_orders, &mut rec)?;
            }
        }
    }
    let Recorder { mut tallies, failures, .. } = rec;
    tallies.retain(|t| t.passed + t.failed > 0);
    Ok(SuiteOutcome { tallies, failures })
}
