//! Statistics and upper bounds for the first- and second-order approximation
//! errors of the normalized permanent.
//!
//! A bound that does not apply to the input (for example one that needs all
//! entries in the closed unit disc) is `None`. A bound that applies but is
//! vacuous is `Some(ExtReal::Infinity)`.

use num_complex::Complex64;
use num_traits::Float;

use crate::approximants::{h1, h2};
use crate::error::{Error, Result};
use crate::ext_real::ExtReal;
use crate::matrix::RectMatrix;
use crate::permanent::normalized_permanent;
use crate::scalar::Scalar;

mod functions;
mod inequalities;
mod stats;

pub use functions::{
    c_tilde, f_first, f_first_closed, f_second3, g_second4, geometric_ratio, h_kn, h_tilde_knn, ln_factorial, zeta,
};
pub use inequalities::{bound_esp, check_aux_inequalities, check_bregman_minc, check_hadamard, InequalityCheck};
pub use stats::{alpha_beta_exact, stats, theta2_squared_exact, MatrixStats, MAX_STATS_DIM};

/// First-order bounds on `|norm. perm - prod_r z~_r|`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FirstOrderBounds {
    /// `theta/(2N) f_first(sqrt beta, sqrt kappa)`.
    pub theta_kappa: Option<ExtReal>,
    /// Same with `min(kappa, kappa~)`; 0-1 matrices only.
    pub theta_kappa_zero_one: Option<ExtReal>,
    /// `(n-1)/(2N) theta (1 - beta^(n/4)) / (1 - sqrt beta)`.
    pub theta_geometric: Option<ExtReal>,
    /// `(n-1)/(N-1) alpha min{n/2, 1/(1 - sqrt beta)}`.
    pub alpha_min: Option<ExtReal>,
    /// `(1 + sqrt beta)(n-1)/(N-1)`.
    pub crude: Option<ExtReal>,
    /// `16 n / N`.
    pub bobkov: Option<ExtReal>,
    /// `3.57 gamma`.
    pub gamma_linear: Option<ExtReal>,
    /// `gamma(1/2) + 2.12 gamma^(3/2) / (1-gamma)^(3/4)`.
    pub gamma_half: Option<ExtReal>,
}

impl FirstOrderBounds {
    /// Every applicable bound with a short name.
    pub fn applicable(&self) -> impl Iterator<Item = (&'static str, ExtReal)> + '_ {
        [
            ("theta_kappa", self.theta_kappa),
            ("theta_kappa_zero_one", self.theta_kappa_zero_one),
            ("theta_geometric", self.theta_geometric),
            ("alpha_min", self.alpha_min),
            ("crude", self.crude),
            ("bobkov", self.bobkov),
            ("gamma_linear", self.gamma_linear),
            ("gamma_half", self.gamma_half),
        ]
        .into_iter()
        .filter_map(|(name, b)| b.map(|b| (name, b)))
    }
}

/// Second-order bounds on `|norm. perm - H_2|`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SecondOrderBounds {
    /// `theta_3/(2N^2) f_second3(..) + theta_4/(8N^2) g_second4(..)`.
    pub second_theta: Option<ExtReal>,
    /// The `sqrt 3 sum_j (...)^(3/2) + 2.27 gamma^2/(1-gamma)^(3/4)` bound.
    pub second_gamma: Option<ExtReal>,
    /// The general order bound at order two.
    pub gamma_order: Option<ExtReal>,
}

impl SecondOrderBounds {
    pub fn applicable(&self) -> impl Iterator<Item = (&'static str, ExtReal)> + '_ {
        [("second_theta", self.second_theta), ("second_gamma", self.second_gamma), ("gamma_order", self.gamma_order)]
            .into_iter()
            .filter_map(|(name, b)| b.map(|b| (name, b)))
    }
}

/// Statistics, bounds and (when the permanent is affordable) actual errors.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub stats: MatrixStats,
    pub first_order: FirstOrderBounds,
    pub second_order: SecondOrderBounds,
    pub normalized_permanent: Option<Complex64>,
    pub h1: Complex64,
    pub h2: Complex64,
    /// `|norm. perm - H_1|`.
    pub actual_error_first: Option<ExtReal>,
    /// `|norm. perm - H_2|`.
    pub actual_error_second: Option<ExtReal>,
}

fn require_two_columns<S: Scalar>(z: &RectMatrix<S>) -> Result<()> {
    if z.cols() < 2 {
        return Err(Error::invalid("bounds need at least two columns"));
    }
    Ok(())
}

/// Rising-to-infinity factor `1/(1-gamma)^(3/4)`, infinite once `gamma >= 1`.
fn gamma_tail(gamma: ExtReal) -> ExtReal {
    let g = gamma.value();
    if g >= 1.0 {
        ExtReal::Infinity
    } else {
        ExtReal::new(1.0 - g).powf(0.75).recip()
    }
}

/// `(l+1)^(1/4) C~_{l+1} gamma^((l+1)/2) / (1-gamma)^(3/4)`; infinite once `gamma >= 1`.
pub fn gamma_order_bound(gamma: ExtReal, ell: u32) -> ExtReal {
    let tail = gamma_tail(gamma);
    if !tail.is_finite() {
        return ExtReal::Infinity;
    }
    let l1 = ell + 1;
    ExtReal::new(Float::powf(l1 as f64, 0.25) * c_tilde(l1)) * gamma.powf(l1 as f64 / 2.0) * tail
}

pub fn bound_first_order<S: Scalar>(z: &RectMatrix<S>, st: &MatrixStats) -> Result<FirstOrderBounds> {
    require_two_columns(z)?;
    let (big_n, n) = (st.rows as f64, st.cols);
    let nf = n as f64;
    let sqrt_beta = st.beta.sqrt().value();
    let lead = st.theta2 * ExtReal::new(1.0 / (2.0 * big_n));
    let theta_kappa = lead * f_first(n, sqrt_beta, st.kappa(2).sqrt().value())?;
    let theta_kappa_zero_one = match st.kappa_tilde {
        Some(kt) => Some(lead * f_first(n, sqrt_beta, st.kappa(2).min(kt).sqrt().value())?),
        None => None,
    };
    let mut out = FirstOrderBounds { theta_kappa: Some(theta_kappa), theta_kappa_zero_one, ..Default::default() };
    if !st.unit_disc {
        return Ok(out);
    }
    let ratio = (nf - 1.0) / (big_n - 1.0);
    out.theta_geometric = Some(st.theta2 * ExtReal::new((nf - 1.0) / (2.0 * big_n) * geometric_ratio(n, sqrt_beta)));
    let cap = ExtReal::new(nf / 2.0).min(ExtReal::new(1.0 - sqrt_beta).recip());
    out.alpha_min = Some(st.alpha * ExtReal::new(ratio) * cap);
    out.crude = Some(ExtReal::new((1.0 + sqrt_beta) * ratio));
    out.bobkov = Some(ExtReal::new(16.0 * nf / big_n));
    if let (Some(gamma), Some(gamma_half)) = (st.gamma(1.0), st.gamma(0.5)) {
        out.gamma_linear = Some(ExtReal::new(3.57) * gamma);
        let tail = gamma_tail(gamma);
        out.gamma_half = Some(if tail.is_finite() {
            gamma_half + ExtReal::new(2.12) * gamma.powf(1.5) * tail
        } else {
            ExtReal::Infinity
        });
    }
    Ok(out)
}

pub fn bound_second_order<S: Scalar>(z: &RectMatrix<S>, st: &MatrixStats) -> Result<SecondOrderBounds> {
    require_two_columns(z)?;
    let (big_n, n) = (st.rows as f64, st.cols);
    let sqrt_beta = st.beta.sqrt().value();
    let triple =
        st.theta3 * ExtReal::new(1.0 / (2.0 * big_n * big_n)) * f_second3(n, sqrt_beta, st.kappa(3).sqrt().value());
    let quad =
        st.theta4 * ExtReal::new(1.0 / (8.0 * big_n * big_n)) * g_second4(n, sqrt_beta, st.kappa(4).sqrt().value());
    let mut out = SecondOrderBounds { second_theta: Some(triple + quad), ..Default::default() };
    if !st.unit_disc {
        return Ok(out);
    }
    if let Some(gamma) = st.gamma(1.0) {
        let tail = gamma_tail(gamma);
        out.second_gamma = Some(if tail.is_finite() {
            let c = z.to_complex();
            let means = c.column_means();
            let cap = ExtReal::new(n as f64 / 3.0).min(ExtReal::new(1.0 - st.beta.value()).recip());
            let mut sum = ExtReal::ZERO;
            for j in 0..st.rows {
                let row: f64 = (0..n).map(|r| (c.get(j, r) - means[r]).norm_sqr()).sum();
                sum = sum + (ExtReal::new(row / (big_n * big_n)) * cap).powf(1.5);
            }
            ExtReal::new(Float::sqrt(3.0)) * sum + ExtReal::new(2.27) * gamma.powf(2.0) * tail
        } else {
            ExtReal::Infinity
        });
        out.gamma_order = Some(gamma_order_bound(gamma, 2));
    }
    Ok(out)
}

/// Full report. The actual errors are filled in when the normalized permanent
/// fits in `budget` terms; other failures are returned.
pub fn bound_report<S: Scalar>(z: &RectMatrix<S>, budget: u128) -> Result<BoundReport> {
    require_two_columns(z)?;
    let st = stats(z)?;
    let first_order = bound_first_order(z, &st)?;
    let second_order = bound_second_order(z, &st)?;
    let approx1 = h1(z);
    let approx2 = h2(z)?;
    let exact = match normalized_permanent(z, budget) {
        Ok(p) => Some(p),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let actual_error_first = exact.as_ref().map(|p| ExtReal::new((p.clone() - &approx1).modulus()));
    let actual_error_second = exact.as_ref().map(|p| ExtReal::new((p.clone() - &approx2).modulus()));
    Ok(BoundReport {
        stats: st,
        first_order,
        second_order,
        normalized_permanent: exact.map(|p| p.to_complex()),
        h1: approx1.to_complex(),
        h2: approx2.to_complex(),
        actual_error_first,
        actual_error_second,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permanent::DEFAULT_BUDGET;
    use crate::rational::Rational;
    use alloc::vec;

    fn derangement(n: usize) -> RectMatrix<Rational> {
        RectMatrix::from_fn(n, n, |j, r| Rational::from_integer((j != r) as i64)).unwrap()
    }

    #[test]
    fn derangement_four_report() {
        let rep = bound_report(&derangement(4), DEFAULT_BUDGET).unwrap();
        let err = rep.actual_error_first.unwrap().value();
        assert!((err - 0.05859375).abs() < 1e-15);
        let b = rep.first_order.theta_kappa_zero_one.unwrap().value();
        assert!(err <= b && b <= 0.125, "{b}");
        assert!(rep.first_order.theta_kappa.unwrap().value() <= rep.first_order.theta_geometric.unwrap().value());
        assert!(rep.first_order.gamma_half.is_some());
    }

    #[test]
    fn identical_rows_give_zero_bounds() {
        let z = RectMatrix::from_fn(4, 3, |_, r| Complex64::new(0.2 * r as f64, 0.1)).unwrap();
        let rep = bound_report(&z, DEFAULT_BUDGET).unwrap();
        assert_eq!(rep.first_order.theta_kappa, Some(ExtReal::ZERO));
        assert_eq!(rep.first_order.theta_geometric, Some(ExtReal::ZERO));
        assert_eq!(rep.second_order.second_theta, Some(ExtReal::ZERO));
        assert!(rep.actual_error_first.unwrap().value() < 1e-15);
        assert!(rep.actual_error_second.unwrap().value() < 1e-15);
        assert_eq!(rep.first_order.theta_kappa_zero_one, None);
    }

    #[test]
    fn outside_unit_disc_marks_chain_inapplicable() {
        let z = RectMatrix::from_rows(vec![
            vec![Rational::from_integer(1), Rational::from_integer(2)],
            vec![Rational::from_integer(3), Rational::from_integer(4)],
        ])
        .unwrap();
        let rep = bound_report(&z, DEFAULT_BUDGET).unwrap();
        assert!(rep.first_order.theta_kappa.is_some());
        assert_eq!(rep.first_order.theta_geometric, None);
        assert_eq!(rep.first_order.gamma_linear, None);
        assert_eq!(rep.second_order.second_gamma, None);
        // n = 2: the first-order bound is attained
        let err = rep.actual_error_first.unwrap().value();
        assert!((err - rep.first_order.theta_kappa.unwrap().value()).abs() < 1e-12);
        assert_eq!(rep.second_order.second_theta, Some(ExtReal::ZERO));
        assert_eq!(rep.actual_error_second, Some(ExtReal::ZERO));
    }

    #[test]
    fn beta_one_uses_finite_branch() {
        // constant unit columns: beta = 1, so 1/(1 - sqrt beta) is infinite
        let z = RectMatrix::from_fn(3, 2, |_, _| Rational::from_integer(1)).unwrap();
        let st = stats(&z).unwrap();
        assert_eq!(st.beta, ExtReal::ONE);
        let b = bound_first_order(&z, &st).unwrap();
        assert_eq!(b.alpha_min, Some(ExtReal::ZERO));
        assert_eq!(b.theta_geometric, Some(ExtReal::ZERO));
        assert_eq!(st.gamma(1.0), Some(ExtReal::ZERO));
    }

    #[test]
    fn gamma_order_is_infinite_past_one() {
        assert_eq!(gamma_order_bound(ExtReal::ONE, 2), ExtReal::Infinity);
        assert_eq!(gamma_order_bound(ExtReal::ZERO, 2), ExtReal::ZERO);
        assert!(gamma_order_bound(ExtReal::new(0.1), 1) < gamma_order_bound(ExtReal::new(0.2), 1));
    }

    #[test]
    fn one_column_rejected() {
        let z = RectMatrix::from_fn(3, 1, |j, _| Rational::from_integer(j as i64)).unwrap();
        assert!(bound_report(&z, DEFAULT_BUDGET).is_err());
    }
}
