//! Exact and floating-point laboratory for rectangular permanents.
//!
//! The normalized permanent of an `N x n` matrix (`n <= N`) is the average of
//! `prod_r z_{j_r, r}` over injections `j` of columns into rows. This crate
//! computes it exactly, compares it with product-of-means approximants,
//! checks the algebraic identities connecting the two, and evaluates upper
//! bounds on the approximation error.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod approximants;
pub mod bounds;
pub mod combinatorics;
pub mod error;
pub mod ext_real;
pub mod families;
pub mod identities;
pub mod matrix;
pub mod permanent;
pub mod products;
pub mod rational;
pub mod scalar;

pub use error::{Error, Result};
pub use ext_real::ExtReal;
pub use matrix::{AnyMatrix, ColumnStats, RectMatrix};
pub use num_complex::Complex64;
pub use rational::Rational;
pub use scalar::{Scalar, ScalarDomain, Tolerance};
