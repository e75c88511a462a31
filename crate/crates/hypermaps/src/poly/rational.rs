use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::unipoly::UniPoly;
use crate::{Error, Result};

/// A ratio of integer polynomials in `t`, kept in a canonical reduced form:
/// numerator and denominator share no polynomial factor, their joint content
/// is 1 and the denominator has a positive leading coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction {
    num: UniPoly,
    den: UniPoly,
}

impl RationalFunction {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let mut fun = RationalFunction { num, den };
        fun.reduce();
        Ok(fun)
    }

    pub fn from_poly(num: UniPoly) -> Self {
        RationalFunction {
            num,
            den: UniPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = UniPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        self.num = self.num.div_exact(&g).expect("gcd divides numerator");
        self.den = self.den.div_exact(&g).expect("gcd divides denominator");
        let content = self.num.content().gcd(&self.den.content());
        let sign = if self.den.leading().is_negative() {
            -content
        } else {
            content
        };
        let scalar = UniPoly::constant(sign);
        self.num = self.num.div_exact(&scalar).expect("content divides");
        self.den = self.den.div_exact(&scalar).expect("content divides");
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
        .expect("denominators nonzero")
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
        .expect("denominators nonzero")
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den)).expect("denominators nonzero")
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.num.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Self::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Exact evaluation; `None` when the denominator vanishes at `t`.
    pub fn evaluate(&self, t: &BigRational) -> Option<BigRational> {
        let den = self.den.evaluate(t);
        if den.is_zero() {
            return None;
        }
        Some(self.num.evaluate(t) / den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

trait IsOnePoly {
    fn is_one_poly(&self) -> bool;
}

impl IsOnePoly for UniPoly {
    fn is_one_poly(&self) -> bool {
        self.degree() == Some(0) && self.leading().is_one()
    }
}

/// Coefficient extraction for the Taylor expansion of a rational function
/// around 0. Coefficients are produced by the linear recurrence induced by
/// the denominator, never by symbolic division.
#[derive(Clone, Debug)]
pub struct PowerSeries {
    fun: RationalFunction,
}

impl PowerSeries {
    pub fn new(fun: RationalFunction) -> Result<Self> {
        if fun.denominator().coefficient(0).is_zero() {
            return Err(Error::SeriesDenominatorVanishes);
        }
        Ok(PowerSeries { fun })
    }

    pub fn rational(&self) -> &RationalFunction {
        &self.fun
    }

    /// The first `len` coefficients as exact rationals.
    pub fn prefix_rational(&self, len: usize) -> Vec<BigRational> {
        let d0 = BigRational::from(self.fun.denominator().coefficient(0));
        let mut coeffs: Vec<BigRational> = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = BigRational::from(self.fun.numerator().coefficient(k));
            for j in 1..=k {
                let dj = self.fun.denominator().coefficient(j);
                if dj.is_zero() {
                    continue;
                }
                acc -= BigRational::from(dj) * &coeffs[k - j];
            }
            coeffs.push(acc / &d0);
        }
        coeffs
    }

    /// The first `len` coefficients; panics if any is not an integer.
    pub fn prefix(&self, len: usize) -> Vec<BigInt> {
        self.prefix_rational(len)
            .into_iter()
            .map(|c| {
                assert!(c.is_integer(), "series coefficient is not an integer");
                c.to_integer()
            })
            .collect()
    }

    pub fn coefficient(&self, k: usize) -> BigInt {
        self.prefix(k + 1).pop().expect("requested coefficient")
    }
}
