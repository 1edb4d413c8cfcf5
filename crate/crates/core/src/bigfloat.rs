//! Fixed-precision binary floats on top of `BigInt`, enough to run Newton
//! steps on polynomials whose integer coefficients are far too large for
//! doubles. Truncating arithmetic at 192 mantissa bits leaves dozens of
//! guard digits over the double-precision answers we ultimately report.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

pub const PREC: u64 = 192;

/// Value `m * 2^e`, mantissa capped at [`PREC`] bits.
#[derive(Clone, Debug)]
pub struct BigFloat {
    pub m: BigInt,
    pub e: i64,
}

impl BigFloat {
    pub fn zero() -> Self {
        BigFloat {
            m: BigInt::zero(),
            e: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    fn normalize(mut m: BigInt, mut e: i64) -> Self {
        let bits = m.bits();
        if bits > PREC {
            let shift = bits - PREC;
            m >>= shift;
            e += shift as i64;
        }
        if m.is_zero() {
            e = 0;
        }
        BigFloat { m, e }
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        Self::normalize(v.clone(), 0)
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            return Self::zero();
        }
        assert!(x.is_finite());
        let bits = x.to_bits();
        let neg = bits >> 63 == 1;
        let exp_field = ((bits >> 52) & 0x7ff) as i64;
        let frac = (bits & ((1u64 << 52) - 1)) as i64;
        let (mag, e) = if exp_field == 0 {
            (BigInt::from(frac), -1074)
        } else {
            (BigInt::from(frac + (1 << 52)), exp_field - 1075)
        };
        let m = if neg { -mag } else { mag };
        Self::normalize(m, e)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.m.bits();
        let (top, drop) = if bits > 64 {
            ((&self.m >> (bits - 64)).to_f64().unwrap(), (bits - 64) as i64)
        } else {
            (self.m.to_f64().unwrap(), 0)
        };
        let e = self.e + drop;
        if e > 2000 {
            return if top > 0.0 {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            };
        }
        if e < -2100 {
            return 0.0;
        }
        // split the scaling so each factor stays in range
        top * (2f64).powi((e / 2) as i32) * (2f64).powi((e - e / 2) as i32)
    }

    pub fn neg(&self) -> Self {
        BigFloat {
            m: -&self.m,
            e: self.e,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (hi, lo) = if self.e >= other.e {
            (self, other)
        } else {
            (other, self)
        };
        let gap = (hi.e - lo.e) as u64;
        if gap > PREC + 64 {
            return hi.clone();
        }
        Self::normalize((&hi.m << gap) + &lo.m, lo.e)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::normalize(&self.m * &other.m, self.e + other.e)
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "big float division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        Self::normalize((&self.m << PREC) / &other.m, self.e - other.e - PREC as i64)
    }

    /// Compares |self| against |other|.
    pub fn abs_cmp(&self, other: &Self) -> std::cmp::Ordering {
        let a = self.abs_log2();
        let b = other.abs_log2();
        a.partial_cmp(&b).unwrap()
    }

    fn abs_log2(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.m.bits();
        let top = if bits > 64 {
            (self.m.abs() >> (bits - 64)).to_f64().unwrap()
        } else {
            self.m.abs().to_f64().unwrap()
        };
        top.log2() + (self.e + bits.saturating_sub(64) as i64) as f64
    }
}

/// Complex pair of [`BigFloat`]s.
#[derive(Clone, Debug)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn zero() -> Self {
        BigComplex {
            re: BigFloat::zero(),
            im: BigFloat::zero(),
        }
    }

    pub fn from_complex(z: Complex64) -> Self {
        BigComplex {
            re: BigFloat::from_f64(z.re),
            im: BigFloat::from_f64(z.im),
        }
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        BigComplex {
            re: BigFloat::from_bigint(v),
            im: BigFloat::zero(),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn add(&self, other: &Self) -> Self {
        BigComplex {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        BigComplex {
            re: self.re.sub(&other.re),
            im: self.im.sub(&other.im),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        BigComplex {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        let den = other.re.mul(&other.re).add(&other.im.mul(&other.im));
        let num = self.mul(&BigComplex {
            re: other.re.clone(),
            im: other.im.neg(),
        });
        BigComplex {
            re: num.re.div(&den),
            im: num.im.div(&den),
        }
    }

    pub fn norm_sqr(&self) -> BigFloat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }
}
