//! Exact polynomial and rational-function arithmetic: sparse bivariate
//! integer polynomials, univariate integer polynomials with GCD, reduced
//! rational functions and power-series coefficient extraction.

mod bivariate;
mod rational;
mod unipoly;

pub use bivariate::BivariatePolynomial;
pub use rational::{PowerSeries, RationalFunction};
pub use unipoly::UniPoly;
