//! Worked-example matrices, their closed-form counts and statistics, and
//! seeded random test matrices.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Float, One, Zero};

use crate::bounds::ln_factorial;
use crate::combinatorics::{binomial, factorial};
use crate::error::{Error, Result};
use crate::matrix::{AnyMatrix, RectMatrix};
use crate::rational::Rational;

/// Default denominator bound for random rational entries.
pub const DEFAULT_DENOMINATOR: i64 = 10;

/// The SplitMix64 generator.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform on `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `0..bound` by rejection, so no residue is favoured.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    /// Uniform on `lo..=hi`.
    pub fn range_inclusive(&mut self, lo: i64, hi: i64) -> i64 {
        let width = (hi - lo) as u64 + 1;
        lo + self.below(width) as i64
    }
}

/// Seed of matrix `index` in a corpus with master seed `master`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    SplitMix64::new(master ^ index).next_u64()
}

fn int(v: bool) -> Rational {
    Rational::from_integer(v as i64)
}

/// `J - I_n`.
pub fn derangement_matrix(n: usize) -> Result<RectMatrix<Rational>> {
    if n < 2 {
        return Err(Error::invalid("derangement matrix needs n >= 2"));
    }
    RectMatrix::from_fn(n, n, |j, r| int(j != r))
}

/// `n! sum_{j=0}^n (-1)^j / j!`, evaluated in rationals.
pub fn derangement_number(n: u64) -> BigInt {
    let mut sum = Rational::from_integer(0);
    for j in 0..=n {
        let term = Rational::from_bigints(BigInt::one(), factorial(j)).expect("nonzero");
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let value = sum * Rational::from(factorial(n));
    assert!(value.is_integer(), "derangement sum must be integral");
    value.numer()
}

/// `J - I_n - P` with `P` the cyclic shift having ones at `(i, i+1 mod n)`.
pub fn menage_matrix(n: usize) -> Result<RectMatrix<Rational>> {
    if n < 3 {
        return Err(Error::invalid("menage matrix needs n >= 3"));
    }
    RectMatrix::from_fn(n, n, |j, r| int(j != r && r != (j + 1) % n))
}

/// Touchard's `sum_{j=0}^n (-1)^j 2n/(2n-j) C(2n-j, j) (n-j)!`.
pub fn menage_number_touchard(n: u64) -> Result<BigInt> {
    if n < 3 {
        return Err(Error::invalid("Touchard's formula is used for n >= 3"));
    }
    let mut sum = Rational::from_integer(0);
    for j in 0..=n {
        let term = Rational::from_bigints(BigInt::from(2 * n), BigInt::from(2 * n - j)).expect("nonzero")
            * Rational::from(binomial(2 * n - j, j) * factorial(n - j));
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    assert!(sum.is_integer(), "Touchard sum must be integral");
    Ok(sum.numer())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Derangement,
    Menage,
}

/// Closed-form statistics of a worked-example family.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyReference {
    pub theta: f64,
    pub theta_squared: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    /// The closed form is stated for `n >= 4` (derangement) and `n >= 5` (menage).
    pub kappa_tilde: Option<f64>,
    /// Upper bound on `kappa`.
    pub kappa_upper: f64,
}

/// `((k)!)^(2/k)` in log form.
fn ln_root_sq(k: u64) -> f64 {
    2.0 * ln_factorial(k) / k as f64
}

pub fn family_reference_stats(kind: FamilyKind, n: usize) -> Result<FamilyReference> {
    let ni = n as i64;
    let nf = n as f64;
    match kind {
        FamilyKind::Derangement => {
            if n < 2 {
                return Err(Error::invalid("derangement reference values need n >= 2"));
            }
            let theta = Rational::new(2, ni * (ni - 1));
            let kappa_tilde = (n >= 4).then(|| {
                let base = ln_root_sq(n as u64 - 2);
                ((nf - 4.0) * Float::exp(ln_root_sq(n as u64 - 3) - base) + 2.0) / (nf - 2.0)
            });
            let kappa_upper = 1f64.min((nf - 1.0) / nf + 4.0 / (nf * (nf - 2.0) * (nf - 2.0)));
            Ok(FamilyReference {
                theta: theta.to_f64(),
                theta_squared: &theta * &theta,
                beta: Rational::new((ni - 1) * (ni - 1), ni * ni),
                gamma: Rational::new(ni - 1, 2 * ni - 1),
                kappa_tilde,
                kappa_upper,
            })
        }
        FamilyKind::Menage => {
            if n < 3 {
                return Err(Error::invalid("menage reference values need n >= 3"));
            }
            let theta_squared = Rational::new(8 * (ni * ni + 4 * ni - 20), ni * ni * (ni - 1).pow(3));
            let kappa_tilde = (n >= 5).then(|| {
                let base = ln_root_sq(n as u64 - 2);
                ((nf - 5.0) * Float::exp(ln_root_sq(n as u64 - 4) - base)
                    + 2.0 * Float::exp(ln_root_sq(n as u64 - 3) - base)
                    + 1.0)
                    / (nf - 2.0)
            });
            let kappa_upper = 1f64.min((nf - 2.0) / nf + 8.0 / (nf * (nf - 2.0) * (nf - 2.0)));
            Ok(FamilyReference {
                theta: Float::sqrt(8.0 * (nf * nf + 4.0 * nf - 20.0)) / (nf * Float::powf(nf - 1.0, 1.5)),
                theta_squared,
                beta: Rational::new((ni - 2) * (ni - 2), ni * ni),
                gamma: Rational::new(ni - 2, 2 * (ni - 1)),
                kappa_tilde,
                kappa_upper,
            })
        }
    }
}

/// What to generate.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    Derangement {
        n: usize,
    },
    Menage {
        n: usize,
    },
    RandomUnitDisc {
        rows: usize,
        cols: usize,
        seed: u64,
    },
    /// Entries `p/q` with `p` uniform on `-q..=q`.
    RandomRational {
        rows: usize,
        cols: usize,
        seed: u64,
        denominator: i64,
    },
    /// Entries 0 or 1 with equal probability.
    RandomZeroOne {
        rows: usize,
        cols: usize,
        seed: u64,
    },
    IdenticalRows {
        rows: usize,
        row: Vec<Rational>,
    },
    IdenticalColumns {
        cols: usize,
        column: Vec<Rational>,
    },
    /// Entries `p/q` with `p` uniform on `0..=q`, each column sorted decreasingly.
    DecreasingColumns {
        rows: usize,
        cols: usize,
        seed: u64,
        denominator: i64,
    },
}

fn check_denominator(q: i64) -> Result<()> {
    if q < 1 {
        return Err(Error::invalid("denominator bound must be positive"));
    }
    Ok(())
}

pub fn random_unit_disc(rows: usize, cols: usize, seed: u64) -> Result<RectMatrix<Complex64>> {
    let mut rng = SplitMix64::new(seed);
    RectMatrix::from_fn(rows, cols, |_, _| loop {
        let re = 2.0 * rng.next_f64() - 1.0;
        let im = 2.0 * rng.next_f64() - 1.0;
        if re * re + im * im <= 1.0 {
            break Complex64::new(re, im);
        }
    })
}

pub fn random_rational(rows: usize, cols: usize, seed: u64, denominator: i64) -> Result<RectMatrix<Rational>> {
    check_denominator(denominator)?;
    let mut rng = SplitMix64::new(seed);
    RectMatrix::from_fn(rows, cols, |_, _| Rational::new(rng.range_inclusive(-denominator, denominator), denominator))
}

pub fn random_zero_one(rows: usize, cols: usize, seed: u64) -> Result<RectMatrix<Rational>> {
    let mut rng = SplitMix64::new(seed);
    RectMatrix::from_fn(rows, cols, |_, _| int(rng.next_u64() >> 63 == 1))
}

pub fn decreasing_columns(rows: usize, cols: usize, seed: u64, denominator: i64) -> Result<RectMatrix<Rational>> {
    check_denominator(denominator)?;
    let mut rng = SplitMix64::new(seed);
    let mut columns: Vec<Vec<i64>> =
        (0..cols).map(|_| (0..rows).map(|_| rng.range_inclusive(0, denominator)).collect()).collect();
    for c in &mut columns {
        c.sort_unstable_by(|a, b| b.cmp(a));
    }
    RectMatrix::from_fn(rows, cols, |j, r| Rational::new(columns[r][j], denominator))
}

fn build(spec: &FamilySpec) -> Result<AnyMatrix> {
    Ok(match *spec {
        FamilySpec::Derangement { n } => AnyMatrix::Rational(derangement_matrix(n)?),
        FamilySpec::Menage { n } => AnyMatrix::Rational(menage_matrix(n)?),
        FamilySpec::RandomUnitDisc { rows, cols, seed } => AnyMatrix::Complex(random_unit_disc(rows, cols, seed)?),
        FamilySpec::RandomRational { rows, cols, seed, denominator } => {
            AnyMatrix::Rational(random_rational(rows, cols, seed, denominator)?)
        }
        FamilySpec::RandomZeroOne { rows, cols, seed } => AnyMatrix::Rational(random_zero_one(rows, cols, seed)?),
        FamilySpec::IdenticalRows { rows, ref row } => {
            AnyMatrix::Rational(RectMatrix::from_fn(rows, row.len(), |_, r| row[r].clone())?)
        }
        FamilySpec::IdenticalColumns { cols, ref column } => {
            AnyMatrix::Rational(RectMatrix::from_fn(column.len(), cols, |j, _| column[j].clone())?)
        }
        FamilySpec::DecreasingColumns { rows, cols, seed, denominator } => {
            AnyMatrix::Rational(decreasing_columns(rows, cols, seed, denominator)?)
        }
    })
}

/// Whether `m` has the structural property its spec promises.
pub fn satisfies(spec: &FamilySpec, m: &AnyMatrix) -> bool {
    let rational = |m: &AnyMatrix| match m {
        AnyMatrix::Rational(z) => Some(z.clone()),
        AnyMatrix::Complex(_) => None,
    };
    match (spec, m) {
        (FamilySpec::RandomUnitDisc { .. }, AnyMatrix::Complex(z)) => z.entries_in_unit_disc(),
        (FamilySpec::Derangement { n }, _) => rational(m)
            .is_some_and(|z| z.is_zero_one() && (0..*n).all(|j| (0..*n).all(|r| z.get(j, r).is_zero() == (j == r)))),
        (FamilySpec::Menage { n }, _) => rational(m).is_some_and(|z| {
            z.is_zero_one() && (0..*n).all(|j| (0..*n).all(|r| z.get(j, r).is_zero() == (j == r || r == (j + 1) % n)))
        }),
        (FamilySpec::RandomRational { denominator, .. }, _) => rational(m).is_some_and(|z| {
            let bound = Rational::from_integer(1);
            z.entries()
                .iter()
                .all(|e| e.abs() <= bound && (e.clone() * Rational::from_integer(*denominator)).is_integer())
        }),
        (FamilySpec::RandomZeroOne { .. }, _) => rational(m).is_some_and(|z| z.is_zero_one()),
        (FamilySpec::IdenticalRows { .. }, _) => {
            rational(m).is_some_and(|z| (1..z.rows()).all(|j| z.row(j) == z.row(0)))
        }
        (FamilySpec::IdenticalColumns { .. }, _) => {
            rational(m).is_some_and(|z| (1..z.cols()).all(|r| z.column(r) == z.column(0)))
        }
        (FamilySpec::DecreasingColumns { .. }, _) => rational(m).is_some_and(|z| {
            (0..z.cols()).all(|r| {
                let c = z.column(r);
                !c[c.len() - 1].is_negative() && c.windows(2).all(|w| w[0] >= w[1])
            })
        }),
        _ => false,
    }
}

/// Build the matrix described by `spec` and verify its structural property.
pub fn random_matrix(spec: &FamilySpec) -> Result<AnyMatrix> {
    let m = build(spec)?;
    if !satisfies(spec, &m) {
        return Err(Error::invalid("generated matrix violates its family's property"));
    }
    Ok(m)
}
