use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Num, ToPrimitive};

/// Field-like scalar the closed-form evaluators are written against.
///
/// Exact types ([`crate::Rational`], [`crate::SmallRational`]) reproduce the
/// formulas bit for bit; the float impls exist for display and quick scans.
pub trait Scalar: Num + Clone + PartialOrd + Debug {
    fn from_i128(v: i128) -> Self;

    fn from_bigint(v: &BigInt) -> Self;

    /// `num / den`; `den` must be nonzero.
    fn frac(num: i128, den: i128) -> Self {
        Self::from_i128(num) / Self::from_i128(den)
    }

    fn to_f64(&self) -> f64;
}

impl Scalar for f64 {
    fn from_i128(v: i128) -> Self {
        v as f64
    }

    fn from_bigint(v: &BigInt) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn from_i128(v: i128) -> Self {
        v as f32
    }

    fn from_bigint(v: &BigInt) -> Self {
        v.to_f32().unwrap_or(f32::NAN)
    }

    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }
}

impl Scalar for Ratio<BigInt> {
    fn from_i128(v: i128) -> Self {
        Ratio::from_integer(BigInt::from(v))
    }

    fn from_bigint(v: &BigInt) -> Self {
        Ratio::from_integer(v.clone())
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for Ratio<i128> {
    fn from_i128(v: i128) -> Self {
        Ratio::from_integer(v)
    }

    fn from_bigint(v: &BigInt) -> Self {
        Ratio::from_integer(v.to_i128().expect("integer does not fit in i128"))
    }

    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

/// Renders a scalar with 12 significant digits.
pub fn display12<T: Scalar>(v: &T) -> String {
    let x = v.to_f64();
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let digits = 12 - 1 - x.abs().log10().floor() as i32;
    if digits >= 0 {
        let s = format!("{:.*}", digits as usize, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{:.11e}", x)
    }
}
