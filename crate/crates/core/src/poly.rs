//! Dense univariate polynomials with exact big-integer coefficients.
//!
//! These carry independence polynomials: coefficient `k` counts the
//! independent sets of size `k`, so constant terms are 1 and coefficients
//! are non-negative, which `div_exact` exploits (division by a polynomial
//! with constant term 1 runs over the integers, lowest degree first).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficients ascending by degree; no trailing zeros except the zero
/// polynomial, which is an empty list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// The monomial `lambda`.
    pub fn lambda() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the zero polynomial is reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = vec![BigInt::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = vec![BigInt::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        Self::from_coeffs(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Small non-negative integer power by repeated multiplication.
    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient `self / divisor`, requiring a divisor with constant
    /// term 1 (true of every independence polynomial). Returns the quotient
    /// only when the division leaves no remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() || !divisor.coeff(0).is_one() {
            return Err(Error::input("divisor must have constant coefficient 1"));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if self.degree() < divisor.degree() {
            return Err(Error::TheoremViolation(
                "division leaves a remainder (degree too small)".into(),
            ));
        }
        let qdeg = self.degree() - divisor.degree();
        let mut q = vec![BigInt::zero(); qdeg + 1];
        for k in 0..=qdeg {
            // constant coefficient of divisor is 1, so this stays integral
            let mut acc = self.coeff(k);
            for j in 0..k {
                acc -= &q[j] * divisor.coeff(k - j);
            }
            q[k] = acc;
        }
        let quotient = Self::from_coeffs(q);
        if quotient.mul(divisor) == *self {
            Ok(quotient)
        } else {
            Err(Error::TheoremViolation(
                "division leaves a nonzero remainder".into(),
            ))
        }
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + bigint_to_f64(c);
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Truncated formal logarithm: coefficients `1..=order` of `log self`
    /// as exact rationals, requiring constant term 1.
    pub fn log_series(&self, order: usize) -> Result<Vec<BigRational>> {
        if !self.coeff(0).is_one() {
            return Err(Error::input("log series needs constant term 1"));
        }
        let p = |k: usize| BigRational::from_integer(self.coeff(k));
        let mut l: Vec<BigRational> = Vec::with_capacity(order + 1);
        l.push(BigRational::zero());
        for m in 1..=order {
            // n * p_n = sum_{k<=n} k * l_k * p_{n-k}
            let mut acc = p(m) * BigRational::from_integer(BigInt::from(m));
            for k in 1..m {
                acc -= BigRational::from_integer(BigInt::from(k)) * &l[k] * p(m - k);
            }
            l.push(acc / BigRational::from_integer(BigInt::from(m)));
        }
        Ok(l[1..].to_vec())
    }
}

/// Rounds a big integer to the nearest double, saturating on overflow.
pub fn bigint_to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        if c.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Splits a big integer into `mantissa * 2^exp` with a double mantissa of
/// full precision, for scaled evaluation of huge-coefficient polynomials.
pub fn bigint_to_scaled(c: &BigInt) -> (f64, i64) {
    if c.is_zero() {
        return (0.0, 0);
    }
    let bits = c.bits() as i64;
    // keep 64 bits; the f64 conversion rounds them to 53
    let shift = (bits - 64).max(0);
    let top: BigInt = c >> shift;
    (top.to_f64().unwrap(), shift)
}
