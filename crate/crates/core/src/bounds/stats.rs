//! Matrix statistics feeding the bounds.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use super::functions::{ln_factorial, zeta};
use crate::combinatorics::Subsets;
use crate::error::{Error, Result};
use crate::ext_real::ExtReal;
use crate::matrix::RectMatrix;
use crate::rational::Rational;
use crate::scalar::Scalar;

/// Largest `N` (and `n`) accepted by [`stats`].
pub const MAX_STATS_DIM: usize = 12;

/// Scalar statistics of an `N x n` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixStats {
    pub rows: usize,
    pub cols: usize,
    pub alpha: ExtReal,
    pub beta: ExtReal,
    pub theta2: ExtReal,
    pub theta3: ExtReal,
    pub theta4: ExtReal,
    /// `kappa^(nu)` for `nu = 2, 3, 4`.
    pub kappa: [ExtReal; 3],
    /// Only for 0-1 matrices.
    pub kappa_tilde: Option<ExtReal>,
    pub unit_disc: bool,
    pub zero_one: bool,
}

impl MatrixStats {
    pub fn kappa(&self, nu: usize) -> ExtReal {
        self.kappa[nu - 2]
    }

    /// `gamma(x) = (n alpha / N) min{x n, 1/(1-beta)}`; `None` when `beta > 1`.
    pub fn gamma(&self, x: f64) -> Option<ExtReal> {
        let beta = self.beta.value();
        if beta > 1.0 {
            return None;
        }
        let (n, big_n) = (self.cols as f64, self.rows as f64);
        let cap = ExtReal::new(1.0 - beta).recip();
        Some(ExtReal::new(n * self.alpha.value() / big_n) * ExtReal::new(x * n).min(cap))
    }
}

/// Table of `|y_uvr|` indexed `((u * N) + v) * n + r`.
struct AbsDiffs {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl AbsDiffs {
    fn new(z: &RectMatrix<Complex64>) -> Self {
        let (rows, cols) = (z.rows(), z.cols());
        let mut values = Vec::with_capacity(rows * rows * cols);
        for u in 0..rows {
            for v in 0..rows {
                for r in 0..cols {
                    values.push((z.get(u, r) - z.get(v, r)).norm());
                }
            }
        }
        AbsDiffs { rows, cols, values }
    }

    #[inline]
    fn get(&self, u: usize, v: usize, r: usize) -> f64 {
        self.values[(u * self.rows + v) * self.cols + r]
    }
}

fn falling(n: usize, k: usize) -> f64 {
    (0..k).map(|i| (n - i) as f64).product()
}

fn theta2(d: &AbsDiffs) -> f64 {
    let (big_n, n) = (d.rows, d.cols);
    if n < 2 {
        return 0.0;
    }
    let mut total = 0.0;
    for r in 0..n {
        for s in (0..n).filter(|&s| s != r) {
            let mut inner = 0.0;
            for u in 0..big_n {
                for v in (0..big_n).filter(|&v| v != u) {
                    inner += d.get(u, v, r) * d.get(u, v, s);
                }
            }
            total += inner * inner;
        }
    }
    Float::sqrt(total) / (falling(big_n, 2) * Float::sqrt(falling(n, 2)))
}

/// Uses `sum_{w != u, v} |y_uwt| = A_u(t) - |y_uvt|` to drop one row loop.
fn theta3(d: &AbsDiffs) -> f64 {
    let (big_n, n) = (d.rows, d.cols);
    if n < 3 {
        return 0.0;
    }
    let mut row_sum = vec![0.0; big_n * n];
    for u in 0..big_n {
        for t in 0..n {
            row_sum[u * n + t] = (0..big_n).map(|w| d.get(u, w, t)).sum();
        }
    }
    let mut total = 0.0;
    for r in 0..n {
        for s in (0..n).filter(|&s| s != r) {
            for t in (0..n).filter(|&t| t != r && t != s) {
                let mut inner = 0.0;
                for u in 0..big_n {
                    for v in (0..big_n).filter(|&v| v != u) {
                        inner += d.get(u, v, r) * d.get(u, v, s) * (row_sum[u * n + t] - d.get(u, v, t));
                    }
                }
                total += inner * inner;
            }
        }
    }
    Float::sqrt(total) / (falling(big_n, 3) * Float::sqrt(falling(n, 3)))
}

/// With `B_wx(s,t) = |y_wxs y_wxt|`, the sum over `(w,x)` disjoint from `{u,v}` is
/// `T - 2 Row_u - 2 Row_v + 2 B_uv`.
fn theta4(d: &AbsDiffs) -> f64 {
    let (big_n, n) = (d.rows, d.cols);
    if n < 4 {
        return 0.0;
    }
    let pairs = n * n;
    let b = |u: usize, v: usize, s: usize, t: usize| d.get(u, v, s) * d.get(u, v, t);
    let mut row = vec![0.0; big_n * pairs];
    let mut all = vec![0.0; pairs];
    for u in 0..big_n {
        for s in 0..n {
            for t in 0..n {
                let sum: f64 = (0..big_n).map(|x| b(u, x, s, t)).sum();
                row[u * pairs + s * n + t] = sum;
                all[s * n + t] += sum;
            }
        }
    }
    let mut total = 0.0;
    for q in 0..n {
        for r in (0..n).filter(|&r| r != q) {
            for s in (0..n).filter(|&s| s != q && s != r) {
                for t in (0..n).filter(|&t| t != q && t != r && t != s) {
                    let st = s * n + t;
                    let mut inner = 0.0;
                    for u in 0..big_n {
                        for v in (0..big_n).filter(|&v| v != u) {
                            let rest =
                                all[st] - 2.0 * row[u * pairs + st] - 2.0 * row[v * pairs + st] + 2.0 * b(u, v, s, t);
                            inner += b(u, v, q, r) * rest;
                        }
                    }
                    total += inner * inner;
                }
            }
        }
    }
    Float::sqrt(total) / (falling(big_n, 4) * Float::sqrt(falling(n, 4)))
}

/// `kappa^(nu)`: the largest `|z|^2` mass outside `nu` rows and `nu` columns, averaged.
fn kappa(w: &[f64], big_n: usize, n: usize, nu: usize) -> f64 {
    if n <= nu {
        return 1.0;
    }
    let row_sum: Vec<f64> = (0..big_n).map(|j| w[j * n..(j + 1) * n].iter().sum()).collect();
    let col_sum: Vec<f64> = (0..n).map(|r| (0..big_n).map(|j| w[j * n + r]).sum()).collect();
    let total: f64 = row_sum.iter().sum();
    let mut best = 0.0f64;
    for rows in Subsets::new(big_n, nu) {
        let without_rows = total - rows.iter().map(|&j| row_sum[j]).sum::<f64>();
        for cols in Subsets::new(n, nu) {
            let block: f64 = rows.iter().flat_map(|&j| cols.iter().map(move |&r| w[j * n + r])).sum();
            let mass = without_rows - cols.iter().map(|&r| col_sum[r]).sum::<f64>() + block;
            best = best.max(mass);
        }
    }
    best / ((n - nu) * (big_n - nu)) as f64
}

/// Two smallest entries of a slice with at least two elements.
fn two_smallest(values: &[f64]) -> f64 {
    let (mut a, mut b) = (f64::INFINITY, f64::INFINITY);
    for &v in values {
        if v < a {
            b = a;
            a = v;
        } else if v < b {
            b = v;
        }
    }
    a + b
}

/// `kappa~` for a 0-1 matrix given its column sums.
fn kappa_tilde(z: &RectMatrix<Complex64>) -> f64 {
    let (big_n, n) = (z.rows(), z.cols());
    if n <= 2 {
        return 1.0;
    }
    let ones: Vec<u64> = z.entries().iter().map(|c| (c.re == 1.0) as u64).collect();
    let col_sum: Vec<u64> = (0..n).map(|r| (0..big_n).map(|j| ones[j * n + r]).sum()).collect();
    let ln_den = 2.0 * ln_factorial(big_n as u64 - 2) / (big_n - 2) as f64;
    let mut per_col = vec![0.0; n];
    let mut best = 0.0f64;
    for u in 0..big_n {
        for v in (0..big_n).filter(|&v| v != u) {
            for (l, slot) in per_col.iter_mut().enumerate() {
                let eta = col_sum[l] - ones[u * n + l] - ones[v * n + l];
                let zeta_eta = zeta(eta);
                *slot = if zeta_eta == 0.0 { 0.0 } else { Float::exp(2.0 * Float::ln(zeta_eta) - ln_den) };
            }
            let sum: f64 = per_col.iter().sum();
            best = best.max(sum - two_smallest(&per_col));
        }
    }
    best / (n - 2) as f64
}

/// All statistics of `z`, evaluated in double precision.
pub fn stats<S: Scalar>(z: &RectMatrix<S>) -> Result<MatrixStats> {
    let (big_n, n) = (z.rows(), z.cols());
    if big_n > MAX_STATS_DIM {
        return Err(Error::BudgetExceeded {
            what: "matrix statistics",
            required: big_n as u128,
            budget: MAX_STATS_DIM as u128,
        });
    }
    let c = z.to_complex();
    let means = c.column_means();
    let beta = means.iter().map(|m| m.norm_sqr()).sum::<f64>() / n as f64;
    let mut resid = 0.0;
    for j in 0..big_n {
        for (r, m) in means.iter().enumerate() {
            resid += (c.get(j, r) - m).norm_sqr();
        }
    }
    let alpha = resid / (n * big_n) as f64;
    let w: Vec<f64> = c.entries().iter().map(|e| e.norm_sqr()).collect();
    let d = AbsDiffs::new(&c);
    let zero_one = z.is_zero_one();
    Ok(MatrixStats {
        rows: big_n,
        cols: n,
        alpha: ExtReal::new(alpha),
        beta: ExtReal::new(beta),
        theta2: ExtReal::new(theta2(&d)),
        theta3: ExtReal::new(theta3(&d)),
        theta4: ExtReal::new(theta4(&d)),
        kappa: [2, 3, 4].map(|nu| ExtReal::new(kappa(&w, big_n, n, nu))),
        kappa_tilde: zero_one.then(|| ExtReal::new(kappa_tilde(&c))),
        unit_disc: z.entries_in_unit_disc(),
        zero_one,
    })
}

/// Exact `(alpha, beta, (1/(nN)) sum |z|^2)` of a rational matrix.
pub fn alpha_beta_exact(z: &RectMatrix<Rational>) -> (Rational, Rational, Rational) {
    let (big_n, n) = (z.rows() as i64, z.cols() as i64);
    let means = z.column_means();
    let beta = means.iter().map(|m| m * m).sum::<Rational>() * Rational::new(1, n);
    let mut resid = Rational::from_integer(0);
    let mut square = Rational::from_integer(0);
    for j in 0..z.rows() {
        for (r, m) in means.iter().enumerate() {
            let a = z.get(j, r) - m;
            resid += &a * &a;
            square += z.get(j, r) * z.get(j, r);
        }
    }
    let scale = Rational::new(1, n * big_n);
    (resid * &scale, beta, square * &scale)
}

/// Exact `theta^2` of a rational matrix; zero for `n < 2`.
pub fn theta2_squared_exact(z: &RectMatrix<Rational>) -> Rational {
    let (big_n, n) = (z.rows(), z.cols());
    let mut total = Rational::from_integer(0);
    if n < 2 {
        return total;
    }
    for r in 0..n {
        for s in (0..n).filter(|&s| s != r) {
            let mut inner = Rational::from_integer(0);
            for u in 0..big_n {
                for v in (0..big_n).filter(|&v| v != u) {
                    inner += ((z.get(u, r) - z.get(v, r)) * (z.get(u, s) - z.get(v, s))).abs();
                }
            }
            total += &inner * &inner;
        }
    }
    let nn = (big_n * (big_n - 1)) as i64;
    total * Rational::new(1, nn * nn * (n * (n - 1)) as i64)
}
