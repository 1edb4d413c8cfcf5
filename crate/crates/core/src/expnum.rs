//! Complex numbers carried as `mantissa * 2^exponent` with a double
//! mantissa and a wide integer exponent. Partition functions of deep trees
//! overflow doubles by thousands of orders of magnitude while their
//! arguments and ratios stay perfectly tame; this representation keeps
//! those accessible.

use num_complex::Complex64;

/// Value `m * 2^e`; after normalisation `max(|m.re|, |m.im|)` lies in
/// `[1, 2)`, and zero is `(0, 0)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpComplex {
    pub m: Complex64,
    pub e: i64,
}

/// Exponent gap beyond which the smaller addend cannot influence the sum.
const NEGLIGIBLE_GAP: i64 = 120;

impl ExpComplex {
    pub fn zero() -> Self {
        ExpComplex {
            m: Complex64::ZERO,
            e: 0,
        }
    }

    pub fn one() -> Self {
        ExpComplex {
            m: Complex64::ONE,
            e: 0,
        }
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::renormalize(z, 0)
    }

    /// From `mantissa * 2^exp` with an arbitrary finite double mantissa.
    pub fn from_scaled(m: f64, e: i64) -> Self {
        Self::renormalize(Complex64::new(m, 0.0), e)
    }

    fn renormalize(m: Complex64, e: i64) -> Self {
        let a = m.re.abs().max(m.im.abs());
        if a == 0.0 {
            return Self::zero();
        }
        let shift = a.log2().floor() as i32;
        let scale = (2f64).powi(-shift);
        ExpComplex {
            m: m * scale,
            e: e + shift as i64,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.m == Complex64::ZERO
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::renormalize(self.m * other.m, self.e + other.e)
    }

    pub fn mul_complex(&self, z: Complex64) -> Self {
        Self::renormalize(self.m * z, self.e)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (hi, lo) = if self.e >= other.e {
            (self, other)
        } else {
            (other, self)
        };
        let gap = hi.e - lo.e;
        if gap > NEGLIGIBLE_GAP {
            return *hi;
        }
        let scale = (2f64).powi(-(gap as i32));
        Self::renormalize(hi.m + lo.m * scale, hi.e)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ExpComplex {
            m: -self.m,
            e: self.e,
        }
    }

    pub fn powi(&self, mut k: u32) -> Self {
        let mut base = *self;
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// `self / other` collapsed to a double; saturates far out of range.
    pub fn ratio(&self, other: &Self) -> Complex64 {
        if other.is_zero() {
            return Complex64::new(f64::INFINITY, 0.0);
        }
        let gap = self.e - other.e;
        let q = self.m / other.m;
        if gap > 1000 {
            return q * f64::INFINITY;
        }
        if gap < -1100 {
            return Complex64::ZERO;
        }
        q * (2f64).powi(gap as i32)
    }

    /// Collapses to a double, saturating to infinity when out of range.
    pub fn to_complex(&self) -> Complex64 {
        self.ratio(&Self::one())
    }

    pub fn arg(&self) -> f64 {
        self.m.arg()
    }

    /// Base-2 logarithm of the modulus.
    pub fn log2_norm(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.m.norm().log2() + self.e as f64
        }
    }
}

/// Non-negative real companion scale carried the same way, used for
/// residual thresholds while evaluating polynomials.
#[derive(Clone, Copy, Debug)]
pub struct ExpReal {
    pub m: f64,
    pub e: i64,
}

impl ExpReal {
    pub fn zero() -> Self {
        ExpReal { m: 0.0, e: 0 }
    }

    fn renormalize(m: f64, e: i64) -> Self {
        if m == 0.0 {
            return Self::zero();
        }
        let shift = m.log2().floor() as i32;
        ExpReal {
            m: m * (2f64).powi(-shift),
            e: e + shift as i64,
        }
    }

    pub fn from_scaled(m: f64, e: i64) -> Self {
        Self::renormalize(m, e)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::renormalize(self.m * other.m, self.e + other.e)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.m == 0.0 {
            return *other;
        }
        if other.m == 0.0 {
            return *self;
        }
        let (hi, lo) = if self.e >= other.e {
            (self, other)
        } else {
            (other, self)
        };
        let gap = hi.e - lo.e;
        if gap > NEGLIGIBLE_GAP {
            return *hi;
        }
        Self::renormalize(hi.m + lo.m * (2f64).powi(-(gap as i32)), hi.e)
    }

    pub fn log2(&self) -> f64 {
        if self.m == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.m.log2() + self.e as f64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_products() {
        let a = ExpComplex::from_complex(Complex64::new(3.0, -4.0));
        assert!((a.to_complex() - Complex64::new(3.0, -4.0)).norm() < 1e-15);
        let sq = a.mul(&a);
        assert!((sq.to_complex() - Complex64::new(-7.0, -24.0)).norm() < 1e-12);
        assert!((a.powi(3).to_complex() - Complex64::new(3.0, -4.0).powi(3)).norm() < 1e-10);
    }

    #[test]
    fn huge_products_stay_finite_in_log_scale() {
        let a = ExpComplex::from_complex(Complex64::new(1.5, 0.5));
        let big = a.powi(100_000);
        let expected = 100_000.0 * Complex64::new(1.5, 0.5).norm().log2();
        assert!((big.log2_norm() - expected).abs() < 1e-6 * expected.abs());
        assert!((big.arg() - (100_000.0 * Complex64::new(1.5, 0.5).arg()).rem_euclid(std::f64::consts::TAU))
            .abs()
            .min((big.arg().rem_euclid(std::f64::consts::TAU)
                - (100_000.0 * Complex64::new(1.5, 0.5).arg()).rem_euclid(std::f64::consts::TAU))
            .abs())
            < 1e-5);
    }

    #[test]
    fn addition_aligns_exponents() {
        let a = ExpComplex::from_scaled(1.0, 10);
        let b = ExpComplex::from_scaled(1.0, 0);
        let s = a.add(&b);
        assert!((s.to_complex().re - 1025.0).abs() < 1e-12);
        // negligible addend is dropped, not corrupted
        let tiny = ExpComplex::from_scaled(1.0, -500);
        assert_eq!(a.add(&tiny), a);
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn ratio_collapses_and_saturates() {
        let a = ExpComplex::from_scaled(1.0, 2000);
        let b = ExpComplex::from_scaled(1.0, 1990);
        assert!((a.ratio(&b) - 1024.0).norm() < 1e-12);
        assert!(a.to_complex().re.is_infinite());
        assert_eq!(b.ratio(&a).norm(), 1.0 / 1024.0);
    }

    #[test]
    fn exp_real_accumulates() {
        let mut acc = ExpReal::zero();
        for _ in 0..10 {
            acc = acc.add(&ExpReal::from_scaled(1.0, 0));
        }
        assert!((acc.log2() - 10f64.log2()).abs() < 1e-12);
    }
}
