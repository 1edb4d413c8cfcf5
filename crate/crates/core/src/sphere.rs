//! Points on the Riemann sphere: a finite complex number or the single
//! point at infinity. Rational maps in this crate legitimately pass
//! through infinity (a pole at `z = -1` is followed by `f(inf) = 0`), so
//! orbits are tracked here instead of letting doubles drift into NaN.

use num_complex::Complex64;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SphereValue {
    Finite(Complex64),
    Infinity,
}

impl SphereValue {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            SphereValue::Finite(z) => Some(z),
            SphereValue::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, SphereValue::Infinity)
    }

    /// Chordal distance on the sphere, in [0, 2]; infinity is at chordal
    /// distance `2 / sqrt(1 + |z|^2)` from a finite point.
    pub fn chordal_distance(self, other: SphereValue) -> f64 {
        let weight = |z: Complex64| (1.0 + z.norm_sqr()).sqrt();
        match (self, other) {
            (SphereValue::Finite(a), SphereValue::Finite(b)) => {
                2.0 * (a - b).norm() / (weight(a) * weight(b))
            }
            (SphereValue::Finite(z), SphereValue::Infinity)
            | (SphereValue::Infinity, SphereValue::Finite(z)) => 2.0 / weight(z),
            (SphereValue::Infinity, SphereValue::Infinity) => 0.0,
        }
    }
}

impl From<Complex64> for SphereValue {
    fn from(z: Complex64) -> Self {
        SphereValue::Finite(z)
    }
}

/// JSON form: `{"re": ..., "im": ...}` or the string `"inf"`.
impl Serialize for SphereValue {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            SphereValue::Finite(z) => {
                use serde::ser::SerializeStruct;
                let mut s = ser.serialize_struct("SphereValue", 2)?;
                s.serialize_field("re", &z.re)?;
                s.serialize_field("im", &z.im)?;
                s.end()
            }
            SphereValue::Infinity => ser.serialize_str("inf"),
        }
    }
}
