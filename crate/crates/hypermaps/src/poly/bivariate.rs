use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A sparse polynomial in `u` and `v` with arbitrary-precision integer
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, BigInt::one())
    }

    pub fn monomial(deg_u: u32, deg_v: u32, coeff: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((deg_u, deg_v), coeff);
        }
        BivariatePolynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Term iterator in ascending `(deg_u, deg_v)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, deg_u: u32, deg_v: u32) -> BigInt {
        self.terms
            .get(&(deg_u, deg_v))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(0, 0)
    }

    pub fn add_term(&mut self, deg_u: u32, deg_v: u32, coeff: &BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((deg_u, deg_v))
            .or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(deg_u, deg_v));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut sum = self.clone();
        for (&(a, b), c) in other.terms() {
            sum.add_term(a, b, c);
        }
        sum
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut product = Self::zero();
        for (&(a1, b1), c1) in self.terms() {
            for (&(a2, b2), c2) in other.terms() {
                product.add_term(a1 + a2, b1 + b2, &(c1 * c2));
            }
        }
        product
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        BivariatePolynomial {
            terms: self.terms.iter().map(|(&k, c)| (k, c * factor)).collect(),
        }
    }

    /// Exact evaluation at rational `(u, v)`.
    pub fn evaluate(&self, u: &BigRational, v: &BigRational) -> BigRational {
        let mut value = BigRational::zero();
        for (&(a, b), c) in self.terms() {
            let mut term = BigRational::from(c.clone());
            for _ in 0..a {
                term *= u;
            }
            for _ in 0..b {
                term *= v;
            }
            value += term;
        }
        value
    }

    pub fn evaluate_int(&self, u: &BigInt, v: &BigInt) -> BigInt {
        let mut value = BigInt::zero();
        for (&(a, b), c) in self.terms() {
            value += c * u.pow(a) * v.pow(b);
        }
        value
    }

    /// Maximum degree in `u` and in `v`.
    pub fn degrees(&self) -> (u32, u32) {
        let du = self.terms.keys().map(|&(a, _)| a).max().unwrap_or(0);
        let dv = self.terms.keys().map(|&(_, b)| b).max().unwrap_or(0);
        (du, dv)
    }
}

fn write_monomial(
    f: &mut fmt::Formatter<'_>,
    coeff: &BigInt,
    deg_u: u32,
    deg_v: u32,
    first: bool,
) -> fmt::Result {
    use num_traits::Signed;
    let magnitude = coeff.abs();
    if coeff.is_negative() {
        write!(f, "-")?;
    } else if !first {
        write!(f, "+")?;
    }
    let mut factors: Vec<String> = Vec::new();
    if !magnitude.is_one() || (deg_u == 0 && deg_v == 0) {
        factors.push(magnitude.to_string());
    }
    match deg_u {
        0 => {}
        1 => factors.push("u".to_string()),
        d => factors.push(format!("u^{d}")),
    }
    match deg_v {
        0 => {}
        1 => factors.push("v".to_string()),
        d => factors.push(format!("v^{d}")),
    }
    write!(f, "{}", factors.join("*"))
}

impl fmt::Display for BivariatePolynomial {
    /// Terms sorted by `(deg_u, deg_v)` descending with explicit `*`, e.g.
    /// `u^2+u*v+4*u+v+3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            write_monomial(f, c, a, b, idx == 0)?;
        }
        Ok(())
    }
}
