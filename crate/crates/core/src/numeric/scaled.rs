use std::ops::{Add, Div, Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// A float with a separately tracked binary exponent: `mant * 2^exp`.
///
/// `mant` is kept in `[0.5, 1)` in magnitude (or exactly zero), so products
/// of thousands of factorials neither overflow nor underflow.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledFloat {
    mant: f64,
    exp: i64,
}

impl ScaledFloat {
    pub const ZERO: ScaledFloat = ScaledFloat { mant: 0.0, exp: 0 };
    pub const ONE: ScaledFloat = ScaledFloat { mant: 0.5, exp: 1 };

    pub fn new(mant: f64, exp: i64) -> Self {
        if mant == 0.0 || !mant.is_finite() {
            return ScaledFloat { mant, exp: 0 };
        }
        let (m, e) = frexp(mant);
        ScaledFloat { mant: m, exp: exp + e }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::new(x, 0)
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        if n.is_zero() {
            return Self::ZERO;
        }
        let bits = n.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = (n.abs() >> shift as usize).to_f64().unwrap_or(0.0);
        let top = if n.is_negative() { -top } else { top };
        Self::new(top, shift)
    }

    pub fn from_rational(r: &BigRational) -> Self {
        let n = Self::from_bigint(r.numer());
        let d = Self::from_bigint(r.denom());
        n / d
    }

    pub fn is_zero(self) -> bool {
        self.mant == 0.0
    }

    pub fn sqrt(self) -> Self {
        assert!(self.mant >= 0.0, "square root of a negative value");
        if self.mant == 0.0 {
            return self;
        }
        if self.exp % 2 == 0 {
            Self::new(self.mant.sqrt(), self.exp / 2)
        } else {
            Self::new((2.0 * self.mant).sqrt(), (self.exp - 1) / 2)
        }
    }

    /// Natural logarithm of the magnitude.
    pub fn ln_abs(self) -> f64 {
        self.mant.abs().ln() + self.exp as f64 * std::f64::consts::LN_2
    }

    pub fn signum(self) -> f64 {
        if self.mant == 0.0 {
            0.0
        } else {
            self.mant.signum()
        }
    }

    /// Nearest `f64`, saturating to `±inf` or flushing to zero.
    pub fn to_f64(self) -> f64 {
        if self.mant == 0.0 {
            return 0.0;
        }
        if self.exp > 1100 {
            return self.mant.signum() * f64::INFINITY;
        }
        if self.exp < -1200 {
            return 0.0;
        }
        // Split the scaling so neither step leaves the representable range.
        let half = self.exp / 2;
        self.mant * 2f64.powi(half as i32) * 2f64.powi((self.exp - half) as i32)
    }
}

fn frexp(x: f64) -> (f64, i64) {
    let bits = x.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    if raw_exp == 0 {
        // Subnormal: renormalize first.
        let (m, e) = frexp(x * 2f64.powi(64));
        return (m, e - 64);
    }
    let e = raw_exp - 1022;
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (m, e)
}

impl Mul for ScaledFloat {
    type Output = ScaledFloat;
    fn mul(self, rhs: ScaledFloat) -> ScaledFloat {
        ScaledFloat::new(self.mant * rhs.mant, self.exp + rhs.exp)
    }
}

impl Div for ScaledFloat {
    type Output = ScaledFloat;
    fn div(self, rhs: ScaledFloat) -> ScaledFloat {
        ScaledFloat::new(self.mant / rhs.mant, self.exp - rhs.exp)
    }
}

impl Neg for ScaledFloat {
    type Output = ScaledFloat;
    fn neg(self) -> ScaledFloat {
        ScaledFloat { mant: -self.mant, exp: self.exp }
    }
}

impl Add for ScaledFloat {
    type Output = ScaledFloat;
    fn add(self, rhs: ScaledFloat) -> ScaledFloat {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (big, small) = if self.exp >= rhs.exp { (self, rhs) } else { (rhs, self) };
        let gap = big.exp - small.exp;
        if gap > 80 {
            return big;
        }
        ScaledFloat::new(big.mant + small.mant * 2f64.powi(-(gap as i32)), big.exp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_ordinary_floats() {
        for x in [1.0, -3.5, 1e-300, 7e300, 0.1, -2.5e-310] {
            assert_eq!(ScaledFloat::from_f64(x).to_f64(), x);
        }
    }

    #[test]
    fn huge_integers_keep_relative_precision() {
        let n: BigInt = BigInt::from(3u8).pow(2000);
        let s = ScaledFloat::from_bigint(&n);
        let expected = 2000.0 * 3f64.ln();
        assert!((s.ln_abs() - expected).abs() < 1e-12 * expected);
        let r = BigRational::new(n.clone() * 5, n);
        assert!((ScaledFloat::from_rational(&r).to_f64() - 5.0).abs() < 1e-15);
    }

    #[test]
    fn arithmetic() {
        let a = ScaledFloat::new(1.5, 3000);
        let b = ScaledFloat::new(2.0, -3000);
        assert!(((a * b).to_f64() - 3.0).abs() < 1e-15);
        assert!((ScaledFloat::from_f64(2.0).sqrt().to_f64() - 2f64.sqrt()).abs() < 1e-15);
        assert!((ScaledFloat::from_f64(8.0).sqrt().to_f64() - 8f64.sqrt()).abs() < 1e-15);
        assert_eq!((ScaledFloat::from_f64(1.25) + ScaledFloat::from_f64(-0.25)).to_f64(), 1.0);
    }
}
