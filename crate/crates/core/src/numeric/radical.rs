use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{FactorialProduct, HalfInt, ScaledFloat};
use crate::Error;

/// `|a-b| <= c <= a+b` with `a+b+c` an integer.
pub fn triangle_ok(a: HalfInt, b: HalfInt, c: HalfInt) -> bool {
    let (a, b, c) = (a.twice(), b.twice(), c.twice());
    a >= 0 && b >= 0 && c >= 0 && (a + b + c) % 2 == 0 && (a - b).abs() <= c && c <= a + b
}

/// An unordered triple of spins, stored sorted ascending.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triad([HalfInt; 3]);

impl Triad {
    pub fn new(a: HalfInt, b: HalfInt, c: HalfInt) -> Self {
        let mut s = [a, b, c];
        s.sort_unstable();
        Triad(s)
    }

    pub fn spins(&self) -> [HalfInt; 3] {
        self.0
    }

    pub fn is_valid(&self) -> bool {
        triangle_ok(self.0[0], self.0[1], self.0[2])
    }

    /// `a+b+c`, an integer for valid triads.
    pub fn perimeter(&self) -> i64 {
        (self.0[0] + self.0[1] + self.0[2]).twice() / 2
    }

    /// `Δ²` in factored form.
    pub fn delta_sq_factored(&self) -> Result<FactorialProduct, Error> {
        if !self.is_valid() {
            let [a, b, c] = self.0;
            return Err(Error::Triangle(a, b, c));
        }
        let [a, b, c] = self.0.map(|j| j.twice());
        let mut f = FactorialProduct::one();
        f.mul_factorial(((a + b - c) / 2) as u64);
        f.mul_factorial(((a - b + c) / 2) as u64);
        f.mul_factorial(((-a + b + c) / 2) as u64);
        f.div_factorial(((a + b + c) / 2 + 1) as u64);
        Ok(f)
    }
}

impl fmt::Display for Triad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// Triangle coefficient `Δ²(a,b,c) = (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!`.
pub fn triangle_coeff_sq(t: &Triad) -> Result<BigRational, Error> {
    Ok(t.delta_sq_factored()?.to_rational())
}

/// `coeff * Π_{t in radicals} √Δ²(t)`.
///
/// Normal form: no triad repeats, and a zero coefficient carries no radicals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadicalValue {
    coeff: BigRational,
    radicals: BTreeSet<Triad>,
}

/// Returned by [`RadicalValue::checked_add`] when the radical parts differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalMismatch;

impl RadicalValue {
    pub fn zero() -> Self {
        RadicalValue { coeff: BigRational::zero(), radicals: BTreeSet::new() }
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(coeff: BigRational) -> Self {
        RadicalValue { coeff, radicals: BTreeSet::new() }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    /// `√Δ²(t)`.
    pub fn sqrt_delta(t: Triad) -> Result<Self, Error> {
        if !t.is_valid() {
            let [a, b, c] = t.spins();
            return Err(Error::Triangle(a, b, c));
        }
        Ok(RadicalValue { coeff: BigRational::one(), radicals: BTreeSet::from([t]) })
    }

    /// Build from a coefficient and an arbitrary list of triads, folding
    /// repeated triads into the coefficient.
    pub fn with_radicals(coeff: BigRational, triads: impl IntoIterator<Item = Triad>) -> Result<Self, Error> {
        let mut v = Self::rational(coeff);
        for t in triads {
            v = v * Self::sqrt_delta(t)?;
        }
        Ok(v)
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn radicals(&self) -> &BTreeSet<Triad> {
        &self.radicals
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.radicals.is_empty()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.coeff.is_zero() {
            0
        } else if self.coeff.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Product of `Δ²` over the radical set.
    pub fn radicand(&self) -> BigRational {
        let mut f = FactorialProduct::one();
        for t in &self.radicals {
            f *= &t.delta_sq_factored().expect("radicals are valid triads");
        }
        f.to_rational()
    }

    /// The exact square of the value.
    pub fn square(&self) -> BigRational {
        &self.coeff * &self.coeff * self.radicand()
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::normalized(&self.coeff * k, self.radicals.clone())
    }

    fn normalized(coeff: BigRational, radicals: BTreeSet<Triad>) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            RadicalValue { coeff, radicals }
        }
    }

    /// Sum of two values with the same radical part. Zero is compatible with
    /// anything.
    pub fn checked_add(&self, other: &Self) -> Result<Self, RadicalMismatch> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.radicals != other.radicals {
            return Err(RadicalMismatch);
        }
        Ok(Self::normalized(&self.coeff + &other.coeff, self.radicals.clone()))
    }

    pub fn to_scaled(&self) -> ScaledFloat {
        if self.is_zero() {
            return ScaledFloat::ZERO;
        }
        ScaledFloat::from_rational(&self.coeff) * ScaledFloat::from_rational(&self.radicand()).sqrt()
    }

    pub fn to_f64(&self) -> f64 {
        self.to_scaled().to_f64()
    }
}

/// Exact equality of the denoted real numbers.
///
/// Shared radicals cancel; what remains must agree in sign and in square.
pub fn radical_eq(u: &RadicalValue, v: &RadicalValue) -> bool {
    if u.signum() != v.signum() {
        return false;
    }
    if u.is_zero() {
        return true;
    }
    let mut lhs = FactorialProduct::one();
    let mut rhs = FactorialProduct::one();
    for t in u.radicals.difference(&v.radicals) {
        lhs *= &t.delta_sq_factored().expect("radicals are valid triads");
    }
    for t in v.radicals.difference(&u.radicals) {
        rhs *= &t.delta_sq_factored().expect("radicals are valid triads");
    }
    // coeff_u² · lhs == coeff_v² · rhs  ⇔  coeff_u² / coeff_v² == rhs / lhs
    let ratio = &u.coeff / &v.coeff;
    let ratio_sq = &ratio * &ratio;
    ratio_sq == (&rhs / &lhs).to_rational()
}

pub fn radical_mul(u: &RadicalValue, v: &RadicalValue) -> RadicalValue {
    if u.is_zero() || v.is_zero() {
        return RadicalValue::zero();
    }
    let mut coeff = &u.coeff * &v.coeff;
    let mut folded = FactorialProduct::one();
    let mut radicals = BTreeSet::new();
    for t in u.radicals.symmetric_difference(&v.radicals) {
        radicals.insert(*t);
    }
    for t in u.radicals.intersection(&v.radicals) {
        folded *= &t.delta_sq_factored().expect("radicals are valid triads");
    }
    if !folded.is_one() {
        coeff *= folded.to_rational();
    }
    RadicalValue::normalized(coeff, radicals)
}

impl Mul for RadicalValue {
    type Output = RadicalValue;
    fn mul(self, rhs: RadicalValue) -> RadicalValue {
        radical_mul(&self, &rhs)
    }
}

impl Mul for &RadicalValue {
    type Output = RadicalValue;
    fn mul(self, rhs: &RadicalValue) -> RadicalValue {
        radical_mul(self, rhs)
    }
}

/// Panics when the radical parts differ: mixing radicals is never silently
/// approximated.
impl Add for &RadicalValue {
    type Output = RadicalValue;
    fn add(self, rhs: &RadicalValue) -> RadicalValue {
        self.checked_add(rhs).unwrap_or_else(|_| panic!("adding values with different radicals: {self} + {rhs}"))
    }
}

impl Add for RadicalValue {
    type Output = RadicalValue;
    fn add(self, rhs: RadicalValue) -> RadicalValue {
        &self + &rhs
    }
}

impl Neg for RadicalValue {
    type Output = RadicalValue;
    fn neg(self) -> RadicalValue {
        RadicalValue { coeff: -self.coeff, radicals: self.radicals }
    }
}

impl From<BigInt> for RadicalValue {
    fn from(n: BigInt) -> Self {
        Self::rational(BigRational::from_integer(n))
    }
}

impl fmt::Display for RadicalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicals.is_empty() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{} * sqrt({})", self.coeff, self.radicand())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn triangle_examples() {
        assert!(triangle_ok(h(1), h(1), h(2)));
        assert!(!triangle_ok(h(1), h(1), h(1)));
        assert!(!triangle_ok(h(2), h(2), h(6)));
        assert!(triangle_ok(h(0), h(3), h(3)));
    }

    #[test]
    fn triangle_coefficients() {
        assert_eq!(triangle_coeff_sq(&Triad::new(h(1), h(1), h(2))).unwrap(), q(1, 6));
        assert_eq!(triangle_coeff_sq(&Triad::new(h(2), h(2), h(2))).unwrap(), q(1, 24));
        assert_eq!(triangle_coeff_sq(&Triad::new(h(0), h(2), h(2))).unwrap(), q(1, 3));
        assert!(matches!(triangle_coeff_sq(&Triad::new(h(2), h(2), h(6))), Err(Error::Triangle(..))));
    }

    #[test]
    fn triads_are_order_independent() {
        assert_eq!(Triad::new(h(3), h(1), h(2)), Triad::new(h(2), h(3), h(1)));
    }

    #[test]
    fn multiplication_folds_repeated_radicals() {
        let t = Triad::new(h(2), h(2), h(2));
        let u = RadicalValue::with_radicals(q(2, 1), [t]).unwrap();
        let v = RadicalValue::with_radicals(q(3, 1), [t]).unwrap();
        let p = &u * &v;
        assert!(p.is_rational());
        assert_eq!(p.coeff(), &(q(6, 1) * q(1, 24)));

        let t2 = Triad::new(h(1), h(1), h(2));
        let w = &RadicalValue::sqrt_delta(t).unwrap() * &RadicalValue::sqrt_delta(t2).unwrap();
        assert_eq!(w.radicals().len(), 2);
        assert_eq!(w.coeff(), &q(1, 1));

        let z = &u * &RadicalValue::zero();
        assert!(z.is_zero() && z.is_rational());
    }

    #[test]
    fn equality_examples() {
        // No single triad has Δ² = 1/4, but √(1/2)·√(1/2) folds to the same thing.
        let t = Triad::new(h(1), h(1), h(0));
        assert_eq!(triangle_coeff_sq(&t).unwrap(), q(1, 2));
        let folded = RadicalValue::with_radicals(q(1, 1), [t, t]).unwrap();
        assert!(radical_eq(&RadicalValue::rational(q(1, 2)), &folded));

        let a = RadicalValue::sqrt_delta(Triad::new(h(1), h(1), h(2))).unwrap();
        assert!(!radical_eq(&a, &RadicalValue::rational(q(1, 6))));
        assert_eq!(a.square(), q(1, 6));
        assert!(!radical_eq(&-a.clone(), &a));
        assert!(radical_eq(&RadicalValue::zero(), &RadicalValue::zero()));
    }

    #[test]
    fn cross_radical_equality() {
        // 2·√Δ²(1,1,1) = 2/√24 = 1/√6 = √Δ²(1/2,1/2,1)
        let a = RadicalValue::with_radicals(q(2, 1), [Triad::new(h(2), h(2), h(2))]).unwrap();
        let b = RadicalValue::sqrt_delta(Triad::new(h(1), h(1), h(2))).unwrap();
        assert!(radical_eq(&a, &b));
        assert!(radical_eq(&b, &a));
    }

    #[test]
    #[should_panic(expected = "different radicals")]
    fn adding_mismatched_radicals_is_a_hard_failure() {
        let a = RadicalValue::sqrt_delta(Triad::new(h(2), h(2), h(2))).unwrap();
        let b = RadicalValue::sqrt_delta(Triad::new(h(1), h(1), h(2))).unwrap();
        let _ = &a + &b;
    }

    #[test]
    fn zero_adds_to_anything() {
        let a = RadicalValue::sqrt_delta(Triad::new(h(2), h(2), h(2))).unwrap();
        assert_eq!(&a + &RadicalValue::zero(), a);
        assert!((&a + &(-a.clone())).is_zero());
    }

    fn valid_triads() -> Vec<Triad> {
        let mut out = Vec::new();
        for a in 0..=4 {
            for b in a..=4 {
                for c in b..=4 {
                    let t = Triad::new(h(a), h(b), h(c));
                    if t.is_valid() {
                        out.push(t);
                    }
                }
            }
        }
        out
    }

    fn arb_value() -> impl Strategy<Value = RadicalValue> {
        let triads = valid_triads();
        (-6i64..=6, 1i64..=6, prop::collection::vec(prop::sample::select(triads), 0..4))
            .prop_map(|(n, d, ts)| RadicalValue::with_radicals(q(n, d), ts).unwrap())
    }

    proptest! {
        #[test]
        fn square_matches_rational_square(u in arb_value()) {
            let sq = &u * &u;
            prop_assert!(sq.is_rational());
            prop_assert!(radical_eq(&sq, &RadicalValue::rational(u.square())));
        }

        #[test]
        fn equality_is_an_equivalence(u in arb_value(), v in arb_value(), k in 1i64..5) {
            prop_assert!(radical_eq(&u, &u));
            prop_assert_eq!(radical_eq(&u, &v), radical_eq(&v, &u));
            // Two different spellings of the same number: u·√Δ²(t)·√Δ²(t) and u·Δ²(t).
            let t = Triad::new(h(2), h(2), h(2));
            let spelled = RadicalValue::with_radicals(u.coeff().clone(), u.radicals().iter().copied().chain([t, t])).unwrap();
            let scaled = u.scale(&triangle_coeff_sq(&t).unwrap());
            prop_assert!(radical_eq(&spelled, &scaled));
            prop_assert!(radical_eq(&scaled, &spelled));
            // transitivity through a third spelling
            let third = scaled.scale(&q(k, 1)).scale(&q(1, k));
            prop_assert!(radical_eq(&spelled, &third));
            if u.square() != v.square() {
                prop_assert!(!radical_eq(&u, &v));
            }
        }
    }
}
