use alloc::vec::Vec;

use super::{coeff, IdentityId, IdentityReport};
use crate::bounds::h_tilde_knn;
use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::ext_real::ExtReal;
use crate::permanent::esp;
use crate::scalar::Scalar;

/// `E_k` over the values whose indices are not in `skip`.
fn esp_without<S: Scalar>(values: &[S], skip: &[usize], k: i64) -> S {
    let kept: Vec<S> = values.iter().enumerate().filter(|(i, _)| !skip.contains(i)).map(|(_, v)| v.clone()).collect();
    esp(&kept, k)
}

fn mean<S: Scalar>(values: &[S]) -> S {
    let mut sum = S::zero();
    for v in values {
        sum += v;
    }
    sum * coeff::<S>(1, values.len() as u64)
}

fn int<S: Scalar>(v: i64) -> S {
    S::from_i64(v)
}

fn pow<S: Scalar>(x: &S, e: usize) -> S {
    (0..e).fold(S::one(), |acc, _| acc * x)
}

/// `(a+1)(N-b) E_{a+1} E_b - (b+1)(N-a) E_a E_{b+1}` against
/// `1/2 sum_{(u,v)} (z_u - z_v)^2 (E'_{b-1} E'_a - E'_{a-1} E'_b)` with `E'` over `N - {u,v}`.
pub fn check_dougall_esp<S: Scalar>(values: &[S], a: usize, b: usize) -> Result<IdentityReport<S>> {
    let big_n = values.len();
    if big_n == 0 || a > big_n || b > big_n {
        return Err(Error::invalid("ESP degrees must lie in 0..=N"));
    }
    let (ai, bi, ni) = (a as i64, b as i64, big_n as i64);
    let lhs = int::<S>((ai + 1) * (ni - bi)) * esp(values, ai + 1) * esp(values, bi)
        - int::<S>((bi + 1) * (ni - ai)) * esp(values, ai) * esp(values, bi + 1);
    let mut sum = S::zero();
    for u in 0..big_n {
        for v in (0..big_n).filter(|&v| v != u) {
            let d = values[u].clone() - &values[v];
            let skip = [u, v];
            let inner = esp_without(values, &skip, bi - 1) * esp_without(values, &skip, ai)
                - esp_without(values, &skip, ai - 1) * esp_without(values, &skip, bi);
            sum += d.clone() * &d * inner;
        }
    }
    let rhs = sum * coeff::<S>(1, 2);
    Ok(IdentityReport::equality(IdentityId::DougallEsp, lhs, rhs))
}

/// `E_n / C(N,n) - z~^n` against
/// `-(1/2N) sum_{(u,v)} (z_u - z_v)^2 sum_{k=2}^n z~^(n-k) / (k C(N,k)) E'_{k-2}`.
///
/// When `n = N` the product form `prod_j z_j - z~^n` is also required to match.
pub fn check_esp_expansion<S: Scalar>(values: &[S], n: usize) -> Result<IdentityReport<S>> {
    let big_n = values.len();
    if n == 0 || n > big_n {
        return Err(Error::invalid("ESP expansion degree must lie in 1..=N"));
    }
    let zbar = mean(values);
    let c = coeff::<S>(1, binomial(big_n as u64, n as u64));
    let lhs = esp(values, n as i64) * c - pow(&zbar, n);
    let mut sum = S::zero();
    for u in 0..big_n {
        for v in (0..big_n).filter(|&v| v != u) {
            let d = values[u].clone() - &values[v];
            let mut inner = S::zero();
            for k in 2..=n {
                let ck = coeff::<S>(1, k as u64 * binomial(big_n as u64, k as u64));
                inner += ck * pow(&zbar, n - k) * esp_without(values, &[u, v], k as i64 - 2);
            }
            sum += d.clone() * &d * inner;
        }
    }
    let rhs = -(sum * coeff::<S>(1, 2 * big_n as u64));
    let mut report = IdentityReport::equality(IdentityId::EspExpansion, lhs, rhs);
    if n == big_n {
        let product = values.iter().fold(S::one(), |acc, v| acc * v) - pow(&zbar, n);
        let product_holds = product.close_to(&report.rhs, report.tolerance);
        let gap = ExtReal::new((product - &report.rhs).modulus());
        report.holds &= product_holds;
        report.discrepancy = report.discrepancy.max(gap);
    }
    Ok(report)
}

/// Second-order expansion of the normalized ESP with triple and quadruple sums.
pub fn check_esp_second_order<S: Scalar>(values: &[S], n: usize) -> Result<IdentityReport<S>> {
    let big_n = values.len();
    if n < 2 || n > big_n {
        return Err(Error::invalid("second-order ESP expansion needs 2 <= n <= N"));
    }
    let zbar = mean(values);
    let mut var = S::zero();
    for v in values {
        let d = v.clone() - &zbar;
        var += d.clone() * &d;
    }
    let (nu, bn) = (n as u64, big_n as u64);
    let lhs = esp(values, n as i64) * coeff::<S>(1, binomial(bn, nu)) - pow(&zbar, n)
        + coeff::<S>(nu * (nu - 1), 2 * bn * (bn - 1)) * var * pow(&zbar, n - 2);

    let h: Vec<S> = (0..=n)
        .map(|k| if k >= 3 { Ok(S::from_rational(&h_tilde_knn(k, n, big_n)?)) } else { Ok(S::zero()) })
        .collect::<Result<_>>()?;
    let mut triple = S::zero();
    for r in 0..big_n {
        for s in (0..big_n).filter(|&s| s != r) {
            for t in (0..big_n).filter(|&t| t != r && t != s) {
                let drs = values[r].clone() - &values[s];
                let w = drs.clone() * &drs * (values[r].clone() - &values[t]);
                let mut inner = S::zero();
                for (k, hk) in h.iter().enumerate().skip(3) {
                    inner += hk.clone() * pow(&zbar, n - k) * esp_without(values, &[r, s, t], k as i64 - 3);
                }
                triple += w * inner;
            }
        }
    }
    let mut quad = S::zero();
    for q in 0..big_n {
        for r in (0..big_n).filter(|&r| r != q) {
            for s in (0..big_n).filter(|&s| s != q && s != r) {
                for t in (0..big_n).filter(|&t| t != q && t != r && t != s) {
                    let dqr = values[q].clone() - &values[r];
                    let dst = values[s].clone() - &values[t];
                    let w = dqr.clone() * &dqr * &dst * &dst;
                    let mut inner = S::zero();
                    for (k, hk) in h.iter().enumerate().skip(4) {
                        inner += hk.clone() * pow(&zbar, n - k) * esp_without(values, &[q, r, s, t], k as i64 - 4);
                    }
                    quad += w * inner;
                }
            }
        }
    }
    let rhs = triple * coeff::<S>(1, 2 * bn * bn) + quad * coeff::<S>(1, 8 * bn * bn);
    Ok(IdentityReport::equality(IdentityId::EspSecondOrder, lhs, rhs))
}
