//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Run with `cargo test -p permlab --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use permlab::commands::{sweep_rows, SweepFamily};
use permlab::format::SweepRow;
use permlab::Context;
use permlab_core::approximants::h_ell;
use permlab_core::bounds::{
    alpha_beta_exact, bound_report, check_aux_inequalities, check_bregman_minc, check_hadamard, BoundReport,
};
use permlab_core::families::{
    derangement_matrix, derive_seed, menage_matrix, random_rational, random_unit_disc, random_zero_one, SplitMix64,
    DEFAULT_DENOMINATOR,
};
use permlab_core::identities::suite::{run_identity_suite, SuiteConfig};
use permlab_core::identities::IdentityId;
use permlab_core::permanent::{normalized_permanent, permanent_naive, permanent_ryser, DEFAULT_BUDGET};
use permlab_core::{Complex64, ExtReal, Rational, RectMatrix, ScalarDomain};

const CORPUS_SEED: u64 = 0x5EED_2024;
const CORPUS_SIZE: u64 = 500;
const BOUND_SLACK: f64 = 1e-10;
const CHAIN_SLACK: f64 = 1e-12;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// The unit-disc corpus shared by criteria 5 to 8.
struct Corpus {
    matrices: Vec<(u64, RectMatrix<Complex64>)>,
    reports: Vec<BoundReport>,
}

fn build_corpus() -> Corpus {
    let mut matrices = Vec::new();
    for i in 0..CORPUS_SIZE {
        let seed = derive_seed(CORPUS_SEED, i);
        let mut rng = SplitMix64::new(seed);
        let big_n = 2 + rng.below(6) as usize;
        let n = 2 + rng.below(big_n as u64 - 1) as usize;
        matrices.push((seed, random_unit_disc(big_n, n, derive_seed(seed, 1)).expect("valid shape")));
    }
    let reports = matrices.iter().map(|(_, z)| bound_report(z, DEFAULT_BUDGET).expect("corpus report")).collect();
    Corpus { matrices, reports }
}

fn shapes(max_rows: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=max_rows).flat_map(|big_n| (1..=big_n).map(move |n| (big_n, n)))
}

fn identity_exactness() -> Outcome {
    let mut runs = 0;
    for (big_n, n) in shapes(6) {
        let out = run_identity_suite(&SuiteConfig::new(ScalarDomain::ExactRational, big_n, n, 50, 1000 + big_n as u64))
            .map_err(|e| e.to_string())?;
        ensure(out.all_passed(), || format!("{big_n}x{n}: {:?}", out.failures.first()))?;
        for t in out.tallies.iter().filter(|t| t.id != IdentityId::MonotoneColumnSigns) {
            ensure(t.max_discrepancy == ExtReal::ZERO, || format!("{big_n}x{n}: {} discrepancy nonzero", t.id))?;
        }
        runs += out.tallies.iter().map(|t| t.passed).sum::<usize>();
    }
    Ok(format!("21 shapes x 50 trials, {runs} exact checks"))
}

fn oracle_equivalence() -> Outcome {
    let mut count = 0;
    for (big_n, n) in shapes(7) {
        for t in 0..4 {
            let z = random_rational(big_n, n, derive_seed(big_n as u64 * 10 + n as u64, t), DEFAULT_DENOMINATOR)
                .map_err(|e| e.to_string())?;
            let naive = permanent_naive(&z, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(permanent_ryser(&z) == naive, || format!("Ryser differs from naive on {big_n}x{n}"))?;
            if big_n <= 5 {
                let top = h_ell(&z, n).map_err(|e| e.to_string())?;
                let np = normalized_permanent(&z, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                ensure(top == np, || format!("h_n differs from the normalized permanent on {big_n}x{n}"))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} matrices, N <= 7"))
}

fn sweep(family: SweepFamily, lo: usize, hi: usize) -> Result<Vec<SweepRow>, String> {
    sweep_rows(&Context { budget: DEFAULT_BUDGET }, family, lo, hi, None, 1, 0).map_err(|e| e.to_string())
}

fn value(row: &SweepRow, col: &str) -> Result<f64, String> {
    row.get(col).ok_or_else(|| format!("n = {}: {col} missing", row.n))
}

fn derangement_table() -> Outcome {
    let rows = sweep(SweepFamily::Derangement, 2, 12)?;
    let mut worst: f64 = 0.0;
    for row in &rows {
        let (err, bound) = (value(row, "err1")?, value(row, "bound_7465284")?);
        let half = 1.0 / (2.0 * row.n as f64);
        ensure(err <= bound + 1e-12 && bound <= half + 1e-12, || {
            format!("n = {}: err {err}, bound {bound}, 1/(2n) {half}", row.n)
        })?;
        worst = worst.max(bound * 2.0 * row.n as f64);
    }
    let err4 = value(&rows[2], "err1")?;
    ensure((err4 - 0.05859375).abs() <= 1e-15, || format!("n = 4 error {err4}"))?;
    Ok(format!("n = 2..12, largest bound/(1/(2n)) = {worst:.4}, n=4 error 0.05859375"))
}

fn menage_closed_bound(n: usize) -> f64 {
    let nf = n as f64;
    (nf * nf + 4.0 * nf - 20.0).sqrt() / ((2.0 * (nf - 1.0)).sqrt() * nf)
}

fn menage_table() -> Outcome {
    let rows = sweep(SweepFamily::Menage, 4, 12)?;
    for row in &rows {
        let (err, bound) = (value(row, "err1")?, value(row, "bound_7465284")?);
        let cap = menage_closed_bound(row.n);
        ensure(err <= bound + 1e-12 && bound <= cap + 1e-12, || {
            format!("n = {}: err {err}, bound {bound}, cap {cap}", row.n)
        })?;
    }
    let err5 = value(&rows[1], "err1")?;
    ensure((err5 - (13.0 / 120.0 - 0.07776)).abs() <= 1e-12, || format!("n = 5 error {err5}"))?;
    Ok(format!("n = 4..12, n=5 error {err5:.6} <= {:.5}", menage_closed_bound(5)))
}

fn bound_validity(corpus: &Corpus) -> Outcome {
    let mut checks = 0;
    for ((seed, _), rep) in corpus.matrices.iter().zip(&corpus.reports) {
        let err1 = rep.actual_error_first.ok_or("missing first-order error")?;
        for (name, b) in rep.first_order.applicable() {
            ensure(err1.value() <= b.value() + BOUND_SLACK, || format!("seed {seed}: err1 {err1:?} > {name} {b:?}"))?;
            checks += 1;
        }
        let err2 = rep.actual_error_second.ok_or("missing second-order error")?;
        let b2 = rep.second_order.second_theta.ok_or_else(|| format!("seed {seed}: second-order bound missing"))?;
        ensure(err2.value() <= b2.value() + BOUND_SLACK, || format!("seed {seed}: err2 {err2:?} > {b2:?}"))?;
        checks += 1;
    }
    Ok(format!("{} matrices, {checks} bound checks, 0 violations", corpus.reports.len()))
}

fn chain_monotonicity(corpus: &Corpus) -> Outcome {
    for ((seed, _), rep) in corpus.matrices.iter().zip(&corpus.reports) {
        let fo = &rep.first_order;
        let chain = [fo.theta_kappa, fo.theta_geometric, fo.alpha_min, fo.crude];
        let chain: Vec<ExtReal> = chain
            .iter()
            .map(|b| b.ok_or_else(|| format!("seed {seed}: chain bound missing")))
            .collect::<Result<_, _>>()?;
        for w in chain.windows(2) {
            let slack = CHAIN_SLACK * w[1].value().max(1.0);
            ensure(w[0].le_with_slack(w[1], slack), || format!("seed {seed}: {:?} > {:?}", w[0], w[1]))?;
        }
    }
    Ok(format!("{} matrices, 3 links each", corpus.reports.len()))
}

fn classical_inequalities(corpus: &Corpus) -> Outcome {
    for (seed, z) in &corpus.matrices {
        let h = check_hadamard(z, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(h.holds, || format!("seed {seed}: Hadamard {h:?}"))?;
    }
    let mut zero_one = Vec::new();
    for i in 0..200 {
        let seed = derive_seed(CORPUS_SEED ^ 0xB4E6, i);
        let mut rng = SplitMix64::new(seed);
        let big_n = 1 + rng.below(10) as usize;
        let n = 1 + rng.below(big_n as u64) as usize;
        zero_one.push(random_zero_one(big_n, n, derive_seed(seed, 1)).map_err(|e| e.to_string())?);
    }
    for n in 2..=10 {
        zero_one.push(derangement_matrix(n).map_err(|e| e.to_string())?);
        if n >= 3 {
            zero_one.push(menage_matrix(n).map_err(|e| e.to_string())?);
        }
    }
    for z in &zero_one {
        let b = check_bregman_minc(z, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(b.holds, || format!("{}x{}: Bregman-Minc {b:?}", z.rows(), z.cols()))?;
    }
    Ok(format!("Hadamard on {} matrices, Bregman-Minc on {}", corpus.matrices.len(), zero_one.len()))
}

fn auxiliary_lemmas(corpus: &Corpus) -> Outcome {
    let mut checks = 0;
    for (seed, z) in &corpus.matrices {
        for c in check_aux_inequalities(z).map_err(|e| e.to_string())? {
            ensure(c.holds, || format!("seed {seed}: {c:?}"))?;
            checks += 1;
        }
    }
    let mut exact = 0;
    for (big_n, n) in shapes(7) {
        for t in 0..10 {
            let z = random_rational(big_n, n, derive_seed(77, (big_n * 8 + n) as u64 * 16 + t), DEFAULT_DENOMINATOR)
                .map_err(|e| e.to_string())?;
            let (alpha, beta, square) = alpha_beta_exact(&z);
            ensure(alpha == square - beta, || format!("{big_n}x{n}: alpha identity fails"))?;
            if n >= 2 {
                for c in check_aux_inequalities(&z).map_err(|e| e.to_string())? {
                    ensure(c.holds, || format!("rational {big_n}x{n}: {c:?}"))?;
                    checks += 1;
                }
            }
            exact += 1;
        }
    }
    Ok(format!("{checks} inequality checks, alpha identity exact on {exact} rational matrices"))
}

/// Direct oracle: `(1/(N(N-1))) sum_{u != v} z_u1 z_v2` against the
/// mean product minus the covariance correction.
fn second_order_two_columns() -> Outcome {
    let mut count = 0;
    for big_n in 2..=9usize {
        for t in 0..20 {
            let z = random_rational(big_n, 2, derive_seed(9_000 + big_n as u64, t), DEFAULT_DENOMINATOR)
                .map_err(|e| e.to_string())?;
            let zero = Rational::from_integer(0);
            let pairs = Rational::from_integer((big_n * (big_n - 1)) as i64);
            let inv = |x: &Rational| x.checked_recip().expect("nonzero");
            let mut lhs = zero.clone();
            for u in 0..big_n {
                for v in (0..big_n).filter(|&v| v != u) {
                    lhs += z.get(u, 0).clone() * z.get(v, 1);
                }
            }
            lhs *= inv(&pairs);
            let nn = Rational::from_integer(big_n as i64);
            let mean = |r: usize| (0..big_n).fold(zero.clone(), |acc, j| acc + z.get(j, r)) * inv(&nn);
            let (m0, m1) = (mean(0), mean(1));
            let cov =
                (0..big_n).fold(zero.clone(), |acc, j| acc + (z.get(j, 0).clone() - &m0) * (z.get(j, 1).clone() - &m1));
            let rhs = m0 * m1 - cov * inv(&pairs);
            ensure(lhs == rhs, || format!("N = {big_n}, trial {t}: {lhs} != {rhs}"))?;
            let np = normalized_permanent(&z, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(np == lhs, || format!("N = {big_n}, trial {t}: engine {np} != {lhs}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} rational N x 2 matrices, N = 2..9"))
}

fn asymptotic_trend() -> Outcome {
    let der = sweep(SweepFamily::Derangement, 2, 12)?;
    let mut worst_der: f64 = 0.0;
    for row in &der {
        let scaled = value(row, "err1")? * row.n as f64;
        ensure(scaled <= 0.5, || format!("derangement n = {}: err1 * n = {scaled}", row.n))?;
        worst_der = worst_der.max(scaled);
    }
    let men = sweep(SweepFamily::Menage, 4, 12)?;
    let mut worst_ratio: f64 = 0.0;
    for row in &men {
        let root = (row.n as f64).sqrt();
        let scaled = value(row, "err1")? * root;
        let ratio = menage_closed_bound(row.n) * root;
        ensure(scaled <= ratio, || format!("menage n = {}: err1 * sqrt n = {scaled} > {ratio}", row.n))?;
        worst_ratio = worst_ratio.max(ratio);
    }
    ensure(worst_ratio <= 1.0, || format!("menage bound * sqrt n reaches {worst_ratio}"))?;
    Ok(format!("max err1*n = {worst_der:.4} (derangement), max bound*sqrt(n) = {worst_ratio:.4} (menage)"))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let corpus = build_corpus();
    let criteria: Vec<Criterion> = vec![
        ("identity exactness", Box::new(identity_exactness)),
        ("oracle equivalence", Box::new(oracle_equivalence)),
        ("derangement table", Box::new(derangement_table)),
        ("menage table", Box::new(menage_table)),
        ("bound validity corpus", Box::new(|| bound_validity(&corpus))),
        ("chain monotonicity", Box::new(|| chain_monotonicity(&corpus))),
        ("classical inequalities", Box::new(|| classical_inequalities(&corpus))),
        ("auxiliary inequalities", Box::new(|| auxiliary_lemmas(&corpus))),
        ("second order at n = 2", Box::new(second_order_two_columns)),
        ("asymptotic trend", Box::new(asymptotic_trend)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass ({:.1}s)",
        criteria.len() - failed,
        criteria.len(),
        started.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
