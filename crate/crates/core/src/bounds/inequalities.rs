//! Classical permanent inequalities and the auxiliary inequalities between the
//! statistics.

use alloc::vec::Vec;

use num_traits::{Float, ToPrimitive, Zero};

use super::functions::{f_first, f_second3, g_second4, geometric_ratio, ln_factorial, zeta};
use super::stats::stats;
use crate::combinatorics::falling_factorial;
use crate::error::{Error, Result};
use crate::ext_real::ExtReal;
use crate::matrix::RectMatrix;
use crate::permanent::{permanent, Method};
use crate::rational::Rational;
use crate::scalar::Scalar;

/// Relative slack allowed on every floating-point inequality.
pub const INEQUALITY_SLACK: f64 = 1e-10;

/// One evaluated inequality `lhs <= rhs` (or an identity, `lhs = rhs`).
#[derive(Clone, Debug, PartialEq)]
pub struct InequalityCheck {
    pub name: &'static str,
    pub lhs: ExtReal,
    pub rhs: ExtReal,
    pub holds: bool,
}

impl InequalityCheck {
    fn le(name: &'static str, lhs: f64, rhs: f64) -> Self {
        let (lhs, rhs) = (ExtReal::new(lhs), ExtReal::new(rhs));
        let slack = INEQUALITY_SLACK * rhs.value().max(1.0);
        InequalityCheck { name, lhs, rhs, holds: lhs.le_with_slack(rhs, slack) }
    }
}

/// `|Per Z| <= N!/(N-n)! prod_r ((1/N) sum_j |z_jr|^2)^(1/2)`.
pub fn check_hadamard<S: Scalar>(z: &RectMatrix<S>, budget: u128) -> Result<InequalityCheck> {
    let per = permanent(z, Method::Auto, budget)?.modulus();
    let big_n = z.rows();
    let mut ln_rhs = ln_falling(big_n, z.cols());
    for r in 0..z.cols() {
        let ms: f64 = (0..big_n).map(|j| Float::powi(z.get(j, r).modulus(), 2)).sum::<f64>() / big_n as f64;
        if ms == 0.0 {
            return Ok(InequalityCheck::le("hadamard", per, 0.0));
        }
        ln_rhs += 0.5 * Float::ln(ms);
    }
    Ok(InequalityCheck::le("hadamard", per, Float::exp(ln_rhs)))
}

fn ln_falling(n: usize, k: usize) -> f64 {
    falling_factorial(n as u64, k as u64).to_f64().map(Float::ln).expect("finite")
}

/// `Per Z <= N!/(N-n)! prod_r zeta(N z~_r) / (N!)^(1/N)` for a 0-1 matrix.
pub fn check_bregman_minc(z: &RectMatrix<Rational>, budget: u128) -> Result<InequalityCheck> {
    if !z.is_zero_one() {
        return Err(Error::invalid("Bregman-Minc needs a 0-1 matrix"));
    }
    let per = permanent(z, Method::Auto, budget)?.to_f64();
    let big_n = z.rows();
    let ln_norm = ln_factorial(big_n as u64) / big_n as f64;
    let mut ln_rhs = ln_falling(big_n, z.cols());
    for r in 0..z.cols() {
        let ones = (0..big_n).filter(|&j| !z.get(j, r).is_zero()).count() as u64;
        if ones == 0 {
            return Ok(InequalityCheck::le("bregman_minc", per, 0.0));
        }
        ln_rhs += Float::ln(zeta(ones)) - ln_norm;
    }
    Ok(InequalityCheck::le("bregman_minc", per, Float::exp(ln_rhs)))
}

/// The auxiliary inequalities between the statistics of `z`, each evaluated at
/// `x = sqrt(beta)` where a free variable appears. Inequalities whose
/// preconditions fail (`n < 4` for the `theta_4` estimate, entries outside the
/// unit disc for `gamma <= n/N`, `beta > 1` for the shape estimates) are left out.
pub fn check_aux_inequalities<S: Scalar>(z: &RectMatrix<S>) -> Result<Vec<InequalityCheck>> {
    let (big_n, n) = (z.rows(), z.cols());
    if n < 2 {
        return Err(Error::invalid("auxiliary inequalities need at least two columns"));
    }
    let st = stats(z)?;
    let mut out = Vec::new();
    out.push(alpha_identity(z));
    let (nf, bf) = (n as f64, big_n as f64);
    out.push(InequalityCheck::le("theta_alpha", st.theta2.value(), 2.0 * bf * st.alpha.value() / (bf - 1.0)));
    let beta = st.beta.value();
    if beta <= 1.0 {
        let x = Float::sqrt(beta);
        let f = f_first(n, x, 1.0)?.value();
        let geometric = (nf - 1.0) * geometric_ratio(n, x);
        let cap = (nf / 2.0).min(1.0 / (1.0 - x));
        out.push(InequalityCheck::le("f_first_geometric", f, geometric));
        out.push(InequalityCheck::le("geometric_min", geometric, (nf - 1.0) * cap));
        let sq = 1.0 / ((1.0 - x) * (1.0 - x));
        out.push(InequalityCheck::le(
            "f_second3_min",
            f_second3(n, x, 1.0).value(),
            2.0 * (nf - 1.0) * (nf * (nf - 2.0) / 3.0).min(sq),
        ));
        out.push(InequalityCheck::le(
            "g_second4_min",
            g_second4(n, x, 1.0).value(),
            2.0 * (nf - 1.0) * (nf - 3.0).max(0.0) * (nf * (nf - 2.0) / 8.0).min(sq),
        ));
    }
    if n >= 3 {
        out.push(InequalityCheck::le("theta3_pairs", st.theta3.value(), theta3_pair_bound(z)));
    }
    if n >= 4 {
        let factor =
            Float::sqrt(nf * (nf - 1.0) / ((nf - 2.0) * (nf - 3.0))) * bf * (bf - 1.0) / ((bf - 2.0) * (bf - 3.0));
        out.push(InequalityCheck::le("theta4_theta2", st.theta4.value(), factor * Float::powi(st.theta2.value(), 2)));
    }
    if st.unit_disc {
        if let Some(gamma) = st.gamma(1.0) {
            out.push(InequalityCheck::le("gamma_n_over_N", gamma.value(), nf / bf));
        }
    }
    Ok(out)
}

/// `alpha = (1/(nN)) sum |z|^2 - beta`, compared in the matrix's own domain.
fn alpha_identity<S: Scalar>(z: &RectMatrix<S>) -> InequalityCheck {
    let (big_n, n) = (z.rows(), z.cols());
    let means = z.column_means();
    let mut resid = S::zero();
    let mut square = S::zero();
    for j in 0..big_n {
        for (r, m) in means.iter().enumerate() {
            resid += (z.get(j, r).clone() - m).abs_sq();
            square += z.get(j, r).abs_sq();
        }
    }
    let mut beta = S::zero();
    for m in &means {
        beta += m.abs_sq();
    }
    let inv_nn = Rational::new(1, (n * big_n) as i64);
    let alpha = resid.scale(&inv_nn);
    let rhs = square.scale(&inv_nn) - beta.scale(&Rational::new(1, n as i64));
    let holds = alpha.close_to(&rhs, S::DEFAULT_TOLERANCE);
    InequalityCheck {
        name: "alpha_identity",
        lhs: ExtReal::new(alpha.modulus()),
        rhs: ExtReal::new(rhs.modulus()),
        holds,
    }
}

/// `(N-2)!/N! sqrt((n-3)!/n!) sum_{(u,v)} (sum_r |y_uvr|^2)^(3/2)`.
fn theta3_pair_bound<S: Scalar>(z: &RectMatrix<S>) -> f64 {
    let (big_n, n) = (z.rows(), z.cols());
    let c = z.to_complex();
    let mut sum = 0.0;
    for u in 0..big_n {
        for v in (0..big_n).filter(|&v| v != u) {
            let sq: f64 = (0..n).map(|r| (c.get(u, r) - c.get(v, r)).norm_sqr()).sum();
            sum += sq * Float::sqrt(sq);
        }
    }
    let (nf, bf) = (n as f64, big_n as f64);
    sum / (bf * (bf - 1.0) * Float::sqrt(nf * (nf - 1.0) * (nf - 2.0)))
}

/// The two bounds on `|E_n / C(N,n) - z~^n|` for values in the unit disc.
pub fn bound_esp<S: Scalar>(values: &[S], n: usize) -> Result<(ExtReal, ExtReal)> {
    let big_n = values.len();
    if n < 2 || n > big_n {
        return Err(Error::invalid("ESP bounds need 2 <= n <= N"));
    }
    if !values.iter().all(Scalar::within_unit_disc) {
        return Err(Error::invalid("ESP bounds need all values in the unit disc"));
    }
    let c: Vec<_> = values.iter().map(Scalar::to_complex).collect();
    let mean = c.iter().sum::<num_complex::Complex64>() / big_n as f64;
    let spread: f64 = c.iter().map(|v| (v - mean).norm_sqr()).sum();
    let kappa = if n >= 3 {
        let mut w: Vec<f64> = c.iter().map(|v| v.norm_sqr()).collect();
        w.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        w[2..].iter().sum::<f64>() / (big_n - 2) as f64
    } else {
        1.0
    };
    let (nf, bf) = (n as f64, big_n as f64);
    let m = mean.norm();
    let first = f_first(n, m, Float::sqrt(kappa))? * ExtReal::new(spread / (bf * (bf - 1.0)));
    let cap = ExtReal::new(0.5).min(ExtReal::new(nf * (1.0 - m)).recip());
    let second = ExtReal::new(nf * (nf - 1.0) / (bf * (bf - 1.0)) * spread) * cap;
    Ok((first, second))
}
