//! Dense univariate polynomials over the rationals and reduced polynomial
//! fractions, the carriers for Hodge-Deligne polynomials and the factors of
//! the stringy E-function.

use crate::error::{Error, Result};
use crate::rational::Rational;
use num::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficients ascending by degree; trailing zeros are trimmed, so the
/// zero polynomial has an empty coefficient list and no degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| crate::rational::rat(c)).collect())
    }

    /// `z^k` with coefficient one.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        UniPoly { coeffs }
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => {
                let inv = l.clone();
                UniPoly::from_coeffs(self.coeffs.iter().map(|c| c / &inv).collect())
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder; panics if `div` is zero.
    pub fn div_rem(&self, div: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dd = div.degree().unwrap();
        let lead_inv = div.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading().unwrap() / &lead_inv;
            let shift = rd - dd;
            quot[shift] = factor.clone();
            for (k, c) in div.coeffs.iter().enumerate() {
                let sub = &factor * c;
                rem.coeffs[shift + k] -= sub;
            }
            rem.trim();
        }
        (UniPoly::from_coeffs(quot), rem)
    }

    /// Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let mut coeffs = vec![Rational::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }
}

/// Quotient of two polynomials. After `reduce` the parts are coprime and
/// the denominator is monic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFraction {
    pub numerator: UniPoly,
    pub denominator: UniPoly,
}

impl PolyFraction {
    pub fn new(numerator: UniPoly, denominator: UniPoly) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(PolyFraction {
            numerator,
            denominator,
        })
    }

    /// Cancels the gcd and normalizes the denominator to be monic.
    pub fn reduce(&self) -> PolyFraction {
        assert!(!self.denominator.is_zero(), "zero denominator");
        if self.numerator.is_zero() {
            return PolyFraction {
                numerator: UniPoly::zero(),
                denominator: UniPoly::one(),
            };
        }
        let g = self.numerator.gcd(&self.denominator);
        let (num, r) = self.numerator.div_rem(&g);
        debug_assert!(r.is_zero());
        let (den, r) = self.denominator.div_rem(&g);
        debug_assert!(r.is_zero());
        let lead = den.leading().unwrap().clone();
        let num = UniPoly::from_coeffs(num.coeffs.iter().map(|c| c / &lead).collect());
        let den = den.monic();
        PolyFraction {
            numerator: num,
            denominator: den,
        }
    }

    /// True when the reduced denominator is the constant one.
    pub fn is_polynomial(&self) -> bool {
        self.denominator.degree() == Some(0)
    }

    /// The numerator, provided the reduced fraction is a polynomial.
    pub fn as_polynomial(&self) -> Option<&UniPoly> {
        if self.is_polynomial() {
            Some(&self.numerator)
        } else {
            None
        }
    }
}
